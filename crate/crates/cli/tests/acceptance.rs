//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure. Exact criteria compare rationals for equality; each criterion
//! also has a wall-clock limit.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use teamgame::analysis::{
    abandon, abandonment_delta, check_lemma6, check_theorem4, default_suite_config, suites, CheckBudget, Report,
};
use teamgame::evaluate::evaluate_fixed;
use teamgame::explorer::{sweep, SearchConfig};
use teamgame::rational::{format_rational, int, ratio};
use teamgame::simulate::simulate;
use teamgame::{fixtures, solve, uniform_strategy, HistoryClassKey, PlayerSet, Rational, Team, UtilityKind};

type Outcome = Result<String, String>;

const DELTA_BUDGET: u128 = 1 << 24;

fn expect_eq(what: &str, got: &Rational, want: &Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {}, expected {}", format_rational(got), format_rational(want)))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn report_outcome(report: &Report) -> Outcome {
    if report.pass {
        let claims = report.claims.len();
        match report.params.get("passed") {
            Some(p) => Ok(format!("{} passed {p}", report.check)),
            None => Ok(format!("{}: all {claims} claims hold", report.check)),
        }
    } else {
        Err(format!("{} failed claims {:?}", report.check, report.failed_claims()))
    }
}

fn card_game() -> Outcome {
    let v = solve(&fixtures::card_game()).map_err(err)?.root_value;
    expect_eq("root value", &v, &ratio(-1, 3))?;
    Ok(format!("value {}", format_rational(&v)))
}

fn selection_example() -> Outcome {
    let spec = fixtures::selection_example();
    let result = solve(&spec).map_err(err)?;
    let stage = result.stage_matrix(&HistoryClassKey::ROOT).map_err(err)?.to_rows();
    let want: Vec<Vec<Rational>> = [[-1, -1, 1], [0, 0, -1]]
        .iter()
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    if stage != want {
        return Err(format!("root stage matrix {stage:?}"));
    }
    expect_eq("root value", &result.root_value, &ratio(-1, 3))?;
    let uniform = evaluate_fixed(&spec, &uniform_strategy(&spec, Team::One)).map_err(err)?;
    expect_eq("uniform team one", &uniform, &ratio(-1, 2))?;
    Ok("stage [[-1,-1,1],[0,0,-1]], value -1/3, uniform -1/2".into())
}

fn largest_loss() -> Outcome {
    let tail = PlayerSet::from_players([3]);
    let mut parts = Vec::new();
    for (kind, full, reduced, delta) in [
        (UtilityKind::Majority, int(0), ratio(-2, 3), ratio(2, 3)),
        (UtilityKind::ExpectedWins, ratio(-1, 2), ratio(-1, 2), int(0)),
    ] {
        let spec = fixtures::largest_loss(kind);
        let v = solve(&spec).map_err(err)?.root_value;
        let small = abandon(&spec, Team::One, tail).map_err(err)?;
        let w = solve(&small).map_err(err)?.root_value;
        let d = abandonment_delta(&spec, Team::One, tail, DELTA_BUDGET).map_err(err)?;
        expect_eq(&format!("V(P,{})", kind.label()), &v, &full)?;
        expect_eq(&format!("V(P*,{})", kind.label()), &w, &reduced)?;
        expect_eq(&format!("delta {}", kind.label()), &d, &delta)?;
        parts.push(format!("{}: {} / {} delta {}", kind.label(), format_rational(&v), format_rational(&w), format_rational(&d)));
    }
    Ok(parts.join("; "))
}

fn dominated_helps() -> Outcome {
    let spec = fixtures::dominated_helps();
    let v = solve(&spec).map_err(err)?.root_value;
    let reduced = abandon(&spec, Team::One, PlayerSet::from_players([2])).map_err(err)?;
    let w = solve(&reduced).map_err(err)?.root_value;
    expect_eq("V(P*)", &w, &int(-1))?;
    if v <= int(-1) {
        return Err(format!("V(P) = {} is not above -1", format_rational(&v)));
    }
    expect_eq("oracle V(P)", &v, &oracle::spec_tree_value(&spec))?;
    expect_eq("oracle V(P*)", &w, &oracle::spec_tree_value(&reduced))?;
    expect_eq("pinned V(P)", &v, &ratio(-3, 4))?;
    Ok(format!("V(P) {} (oracle agrees), V(P*) -1", format_rational(&v)))
}

fn suite(name: &str, run: fn(&suites::SuiteConfig) -> teamgame::Result<Report>) -> Outcome {
    let config = default_suite_config(name, 1).expect("known suite");
    let report = run(&config).map_err(err)?;
    let mut text = report_outcome(&report)?;
    text.push_str(&format!(" of {} (rounds {:?})", config.instances, config.rounds));
    if let Some(e) = report.params.get("enumerated_instances") {
        text.push_str(&format!(", {e} enumerated exhaustively"));
    }
    if let Some(c) = report.values.get("majority_contrast_value") {
        text.push_str(&format!(
            ", majority contrast {} vs {}",
            c,
            report.values.get("majority_contrast_value_without_tail").map(String::as_str).unwrap_or("?")
        ));
    }
    Ok(text)
}

fn recruiting() -> Outcome {
    let budget = CheckBudget::default();
    for t in 2..=4 {
        for kind in [UtilityKind::ExpectedWins, UtilityKind::Majority] {
            let report = check_theorem4(t, kind, budget).map_err(err)?;
            if !report.pass {
                return Err(format!("T={t} {}: {:?}", kind.label(), report.failed_claims()));
            }
        }
    }
    Ok("T in 2..=4, UE and UM".into())
}

fn threshold_grid() -> Outcome {
    report_outcome(&check_lemma6(4, CheckBudget::default()).map_err(err)?)
}

fn gain_sweeps() -> Outcome {
    let mut parts = Vec::new();
    for kind in [UtilityKind::Majority, UtilityKind::ExpectedWins] {
        let out = sweep(&SearchConfig::new(1, 500, kind)).map_err(err)?;
        let s = &out.summary;
        if s.completed < 500 {
            return Err(format!("{}: only {} of 500 instances completed", kind.label(), s.completed));
        }
        if !s.all_gains_nonnegative {
            return Err(format!("{}: negative gain recorded", kind.label()));
        }
        if kind == UtilityKind::Majority && s.max_gain < ratio(2, 3) {
            return Err(format!("UM max gain {} below 2/3", format_rational(&s.max_gain)));
        }
        parts.push(format!(
            "{} max gain {} ({}, {} candidates)",
            kind.label(),
            format_rational(&s.max_gain),
            s.verdict,
            s.counterexample_candidates.len()
        ));
    }
    Ok(parts.join("; "))
}

fn monte_carlo() -> Outcome {
    let mut parts = Vec::new();
    for (name, spec) in [("card", fixtures::card_game()), ("largest-loss UM", fixtures::largest_loss(UtilityKind::Majority))] {
        let result = solve(&spec).map_err(err)?;
        let estimate = simulate(&spec, &result.strategy1, &result.strategy2, 100_000, 1).map_err(err)?;
        let z = estimate.z_score(&result.root_value);
        if z > 4.0 {
            return Err(format!("{name}: mean {} is {z:.2} standard errors from the exact value", estimate.approx_mean));
        }
        parts.push(format!("{name} z={z:.2}"));
    }
    Ok(parts.join(", "))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_teamgame")).args(args).output().map_err(err)?;
    if !out.status.success() {
        return Err(format!("teamgame {args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("teamgame-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let csv = |k: usize| dir.join(format!("sweep{k}.csv")).to_string_lossy().into_owned();
    let (csv0, csv1) = (csv(0), csv(1));
    let runs: [(&str, Vec<&str>, Option<(&str, &str)>); 3] = [
        ("solve", vec!["solve", "--example", "ex3", "--full"], None),
        ("verify", vec!["verify", "theorem1", "--T", "3", "--instances", "50", "--seed", "7"], None),
        (
            "sweep",
            vec!["sweep", "--seed", "3", "--instances", "40", "--utility", "UM", "--T", "3", "--full"],
            Some((csv0.as_str(), csv1.as_str())),
        ),
    ];
    for (name, args, files) in runs {
        let mut first_args = args.clone();
        let mut second_args = args.clone();
        if let Some((a, b)) = files {
            first_args.extend(["--out", a]);
            second_args.extend(["--out", b]);
        }
        let first = run_cli(&first_args)?;
        let second = run_cli(&second_args)?;
        if first != second || first.is_empty() {
            return Err(format!("{name} output differs between runs"));
        }
        if let Some((a, b)) = files {
            let (x, y) = (std::fs::read(a).map_err(err)?, std::fs::read(b).map_err(err)?);
            if x != y || x.is_empty() {
                return Err(format!("{name} CSV differs between runs"));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok("solve, verify and sweep (JSON and CSV) byte-identical".into())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome>)> = vec![
        ("card game value", 1, Box::new(card_game)),
        ("selection example stage matrix and uniform loss", 60, Box::new(selection_example)),
        ("largest-loss quadruple and abandonment deltas", 60, Box::new(largest_loss)),
        ("dominated player helps, oracle-confirmed", 60, Box::new(dominated_helps)),
        ("uniform play certified on square instances", 120, Box::new(|| suite("theorem1", suites::theorem1_suite))),
        ("uniform team induces uniform matchings", 120, Box::new(|| suite("lemma2", suites::lemma2_suite))),
        ("meeting probabilities bounded by 1/T", 300, Box::new(|| suite("lemma5", suites::lemma5_suite))),
        ("weak redundant players are irrelevant", 120, Box::new(|| suite("theorem2", suites::theorem2_suite))),
        ("weak tail is irrelevant under expected wins", 120, Box::new(|| suite("theorem3", suites::theorem3_suite))),
        ("recruiting dominated players", 180, Box::new(recruiting)),
        ("threshold game grid", 120, Box::new(threshold_grid)),
        ("recruiting gain sweeps", 900, Box::new(gain_sweeps)),
        ("Monte Carlo agreement", 30, Box::new(monte_carlo)),
        ("determinism", 600, Box::new(determinism)),
    ];
    let mut failures = 0;
    for (number, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} [{name}] {:.2}s: {detail}", number + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
