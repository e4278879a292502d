use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use teamgame::analysis::checks::{
    check_lemma2, check_lemma5, check_lemma6, check_theorem1, check_theorem2, check_theorem3, check_theorem4,
    CheckBudget,
};
use teamgame::analysis::suites::{
    default_suite_config, lemma2_suite, lemma5_suite, theorem1_suite, theorem2_suite, theorem3_suite, SuiteConfig,
};
use teamgame::analysis::{abandonment_delta, classify, gamma_game, gamma_value, GammaParams, Report};
use teamgame::evaluate::{evaluate_fixed, DEFAULT_ENUMERATION_BUDGET};
use teamgame::explorer::{sweep, SearchConfig};
use teamgame::io::{parse_spec, spec_to_value};
use teamgame::rational::format_rational;
use teamgame::simulate::simulate;
use teamgame::solver::{solve_with, SolveOptions, DEFAULT_BUDGET};
use teamgame::strategy::{mixture_doc, uniform_strategy};
use teamgame::{fixtures, BehavioralStrategy, GameSpec, HistoryClassKey, PlayerSet, Team, UtilityKind};

use crate::{Command, Common, SpecSource};

pub enum Status {
    Pass,
    CheckFailed,
}

const SUITES: [&str; 7] = ["theorem1", "theorem2", "theorem3", "theorem4", "lemma2", "lemma5", "lemma6"];

fn parse_kind(text: &str) -> Result<UtilityKind> {
    Ok(text.parse::<UtilityKind>()?)
}

fn parse_team(number: u8) -> Result<Team> {
    Ok(Team::from_number(number)?)
}

fn load(source: &SpecSource) -> Result<GameSpec> {
    let kind = source.utility.as_deref().map(parse_kind).transpose()?;
    let spec = match (&source.spec, &source.example) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_spec(&text).with_context(|| format!("in {}", path.display()))?
        }
        (None, Some(name)) => fixtures::named(name, None)?,
        (None, None) => bail!("give a spec file or --example"),
        (Some(_), Some(_)) => unreachable!("clap rejects both"),
    };
    Ok(match kind {
        Some(k) => spec.with_utility(k.table(spec.rounds())?)?,
        None => spec,
    })
}

fn has_source(source: &SpecSource) -> bool {
    source.spec.is_some() || source.example.is_some()
}

fn budget(common: &Common) -> u128 {
    common.budget.unwrap_or(DEFAULT_BUDGET)
}

fn emit(doc: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    if let Some(path) = out {
        fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn mixture_at(strategy: &BehavioralStrategy, key: &HistoryClassKey) -> Value {
    strategy
        .get(key)
        .map(|m| serde_json::to_value(mixture_doc(m)).expect("serializes"))
        .unwrap_or(Value::Null)
}

pub fn run(command: Command) -> Result<Status> {
    match command {
        Command::Solve { source, full, common } => {
            let spec = load(&source)?;
            let flags = spec.validate()?;
            let solved = solve_with(&spec, &SolveOptions { budget: budget(&common) })?;
            let root = HistoryClassKey::ROOT;
            let mut doc = json!({
                "spec": spec_to_value(&spec),
                "utility_flags": flags,
                "root_value": format_rational(&solved.root_value),
                "classes": solved.values.len(),
                "root_strategy1": mixture_at(&solved.strategy1, &root),
                "root_strategy2": mixture_at(&solved.strategy2, &root),
            });
            if full {
                let table: Vec<Value> = solved
                    .values
                    .sorted_entries()
                    .into_iter()
                    .map(|(key, value)| {
                        json!({
                            "class": key.to_string(),
                            "round": key.round(),
                            "value": format_rational(value),
                            "strategy1": mixture_at(&solved.strategy1, key),
                            "strategy2": mixture_at(&solved.strategy2, key),
                        })
                    })
                    .collect();
                doc["value_table"] = Value::Array(table);
            }
            emit(&doc, common.out.as_deref())?;
            Ok(Status::Pass)
        }
        Command::BestResponse { source, team, strategy, common } => {
            let spec = load(&source)?;
            let team = parse_team(team)?;
            let fixed = match strategy.as_str() {
                "uniform" => uniform_strategy(&spec, team),
                "equilibrium" => {
                    let solved = solve_with(&spec, &SolveOptions { budget: budget(&common) })?;
                    match team {
                        Team::One => solved.strategy1,
                        Team::Two => solved.strategy2,
                    }
                }
                other => bail!("unknown strategy {other:?} (expected uniform or equilibrium)"),
            };
            let value = evaluate_fixed(&spec, &fixed)?;
            let doc = json!({
                "spec": spec_to_value(&spec),
                "fixed_team": team.number(),
                "fixed_strategy": strategy,
                "team1_value": format_rational(&value),
            });
            emit(&doc, common.out.as_deref())?;
            Ok(Status::Pass)
        }
        Command::Classify { source, common } => {
            let spec = load(&source)?;
            let c = classify(&spec);
            let one_based = |r: &Option<Vec<usize>>| r.as_ref().map(|v| v.iter().map(|p| p + 1).collect::<Vec<_>>());
            let team_doc = |t: &teamgame::analysis::TeamClassification| {
                json!({
                    "transitive": t.transitive,
                    "ranking_strongest_first": one_based(&t.ranking),
                    "players": t.players.iter().enumerate().map(|(i, f)| json!({
                        "player": i + 1,
                        "weakest": f.weakest,
                        "dominated": f.dominated,
                    })).collect::<Vec<_>>(),
                })
            };
            let doc = json!({
                "spec": spec_to_value(&spec),
                "team1": team_doc(&c.team1),
                "team2": team_doc(&c.team2),
            });
            emit(&doc, common.out.as_deref())?;
            Ok(Status::Pass)
        }
        Command::AbandonDelta { source, team, players, common } => {
            let spec = load(&source)?;
            let team = parse_team(team)?;
            if players.contains(&0) {
                bail!("player numbers are 1-based");
            }
            let set = PlayerSet::from_players(players.iter().map(|p| p - 1));
            let reduced = teamgame::analysis::abandon(&spec, team, set)?;
            let delta = abandonment_delta(&spec, team, set, budget(&common))?;
            let doc = json!({
                "spec": spec_to_value(&spec),
                "team": team.number(),
                "abandoned": players,
                "abandoned_spec": spec_to_value(&reduced),
                "delta": format_rational(&delta),
            });
            emit(&doc, common.out.as_deref())?;
            Ok(Status::Pass)
        }
        Command::Gamma { c, a, b, common } => {
            let params = GammaParams::new(c, a, b)?;
            let value = gamma_value(params, budget(&common))?;
            let spec = if params.rounds() == 0 { Value::Null } else { spec_to_value(&gamma_game(params)?) };
            let doc = json!({
                "C": c,
                "a": a,
                "b": b,
                "rounds": params.rounds(),
                "spec": spec,
                "value": format_rational(&value),
            });
            emit(&doc, common.out.as_deref())?;
            Ok(Status::Pass)
        }
        Command::Verify { suite, source, seed, instances, rounds, c_max, team, enum_budget, common } => {
            let budgets = CheckBudget {
                classes: budget(&common),
                strategies: enum_budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET),
            };
            let opts = VerifyOptions { seed, instances, rounds, c_max, budgets };
            let report = if has_source(&source) {
                let spec = load(&source)?;
                verify_spec(&suite, &spec, parse_team(team)?, budgets)?
            } else if suite == "all" {
                let mut all = Report::new("all");
                for name in SUITES {
                    all.child(name, verify_suite(name, &opts, source.utility.as_deref())?);
                }
                all
            } else {
                verify_suite(&suite, &opts, source.utility.as_deref())?
            };
            emit(&report.to_json(), common.out.as_deref())?;
            Ok(if report.pass { Status::Pass } else { Status::CheckFailed })
        }
        Command::Sweep {
            seed,
            instances,
            utility,
            rounds,
            max_size,
            max_recruits,
            denominator_bound,
            no_witnesses,
            budget,
            out,
            full,
        } => {
            let mut config = SearchConfig::new(seed, instances, parse_kind(&utility)?);
            config.t_range = (2.min(rounds), rounds);
            config.m_range = (2, max_size.max(2));
            config.max_recruits = max_recruits;
            config.denominator_bound = denominator_bound;
            config.include_witnesses = !no_witnesses;
            config.budget = budget.unwrap_or(DEFAULT_BUDGET);
            let result = sweep(&config)?;
            if let Some(path) = &out {
                fs::write(path, result.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut doc = json!({ "summary": result.summary });
            if full {
                doc["records"] = serde_json::to_value(&result.records).expect("serializes");
            }
            emit(&doc, None)?;
            Ok(Status::Pass)
        }
        Command::Simulate { source, samples, seed, common } => {
            let spec = load(&source)?;
            let solved = solve_with(&spec, &SolveOptions { budget: budget(&common) })?;
            let estimate = simulate(&spec, &solved.strategy1, &solved.strategy2, samples, seed)?;
            let doc = json!({
                "spec": spec_to_value(&spec),
                "exact_value": format_rational(&solved.root_value),
                "samples": estimate.samples,
                "seed": estimate.seed,
                "approx_mean": estimate.approx_mean,
                "approx_std_error": estimate.approx_std_error,
                "approx_z_score": estimate.z_score(&solved.root_value),
            });
            emit(&doc, common.out.as_deref())?;
            Ok(Status::Pass)
        }
    }
}

struct VerifyOptions {
    seed: u64,
    instances: Option<usize>,
    rounds: Option<usize>,
    c_max: usize,
    budgets: CheckBudget,
}

fn verify_spec(suite: &str, spec: &GameSpec, team: Team, budgets: CheckBudget) -> Result<Report> {
    Ok(match suite {
        "theorem1" => check_theorem1(spec, budgets)?,
        "theorem2" => check_theorem2(spec, team, budgets)?,
        "theorem3" => check_theorem3(spec, budgets)?,
        "lemma2" => check_lemma2(spec, budgets)?,
        "lemma5" => check_lemma5(spec, budgets)?,
        other => bail!("suite {other:?} does not take a spec (single-instance suites: theorem1, theorem2, theorem3, lemma2, lemma5)"),
    })
}

fn verify_suite(suite: &str, opts: &VerifyOptions, utility: Option<&str>) -> Result<Report> {
    match suite {
        "theorem4" => {
            let rounds = opts.rounds.map_or(vec![2, 3, 4], |t| vec![t]);
            let kinds = match utility {
                Some(u) => vec![parse_kind(u)?],
                None => vec![UtilityKind::ExpectedWins, UtilityKind::Majority],
            };
            let mut report = Report::new("theorem4");
            for kind in kinds {
                for &t in &rounds {
                    report.child(&format!("{}_T{t}", kind.label()), check_theorem4(t, kind, opts.budgets)?);
                }
            }
            Ok(report)
        }
        "lemma6" => Ok(check_lemma6(opts.c_max, opts.budgets)?),
        name => {
            let Some(mut config) = default_suite_config(name, opts.seed) else {
                bail!("unknown suite {name:?} (expected one of {} or all)", SUITES.join(", "));
            };
            if let Some(n) = opts.instances {
                config.instances = n;
            }
            if let Some(t) = opts.rounds {
                config.rounds = vec![t];
            }
            config.budget = opts.budgets;
            run_suite(name, &config)
        }
    }
}

fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report> {
    Ok(match name {
        "theorem1" => theorem1_suite(config)?,
        "theorem2" => theorem2_suite(config)?,
        "theorem3" => theorem3_suite(config)?,
        "lemma2" => lemma2_suite(config)?,
        "lemma5" => lemma5_suite(config)?,
        _ => unreachable!("default_suite_config knows only these"),
    })
}
