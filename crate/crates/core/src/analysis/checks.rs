//! Mechanical checks of the structural results about selection competitions.
//!
//! Each checker takes one instance (or one parameter set), computes everything
//! exactly, and returns a [`Report`] with one claim per verified statement.

use num_traits::{One, Zero};
use serde_json::json;

use super::abandon::{abandon, add_dominated};
use super::classify::classify;
use super::gamma::{gamma_game, gamma_value, GammaParams};
use super::report::Report;
use crate::error::{Error, Result};
use crate::evaluate::{
    count_pure_strategies, evaluate_fixed, for_each_pure_strategy, matching_distribution,
    max_meeting_probability_vs_uniform, meeting_probabilities,
};
use crate::fixtures;
use crate::io::spec_to_value;
use crate::matrix::{best_col_response_value, best_row_response_value, col_dominates, row_dominates};
use crate::model::{GameSpec, HistoryClassKey, PlayerSet, Team, UtilityKind, UtilityTable};
use crate::rational::{self, Rational};
use crate::solver::{game_value, solve_with, SolveOptions, DEFAULT_BUDGET};
use crate::strategy::{all_decision_classes, uniform_over, uniform_strategy};

/// Budgets shared by all checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckBudget {
    /// Maximum history classes per solve.
    pub classes: u128,
    /// Maximum pure strategies per enumeration.
    pub strategies: u64,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget {
            classes: DEFAULT_BUDGET,
            strategies: crate::evaluate::DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

/// Largest round count and team-one size for which the meeting-probability
/// bound is also checked by enumerating every pure strategy.
pub const LEMMA5_ENUMERATION_CAP: (usize, usize) = (3, 5);

fn require_square(spec: &GameSpec) -> Result<()> {
    if spec.has_redundant_players() {
        return Err(Error::Redundant(format!(
            "needs m = n = T, got m = {}, n = {}, T = {}",
            spec.team1_size(),
            spec.team2_size(),
            spec.rounds()
        )));
    }
    Ok(())
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Uniform play is an equilibrium in every subgame when neither team has
/// redundant players: at every class the uniform row mixture guarantees at
/// least the class value and the uniform column mixture at most.
pub fn check_theorem1(spec: &GameSpec, budget: CheckBudget) -> Result<Report> {
    require_square(spec)?;
    let solved = solve_with(spec, &SolveOptions { budget: budget.classes })?;
    let mut report = Report::new("theorem1");
    report.param("T", spec.rounds());
    let mut violations = 0usize;
    for key in all_decision_classes(spec) {
        let stage = solved.stage_matrix(&key)?;
        let value = solved.value(&key).expect("solved");
        let x = vec![rational::ratio(1, stage.rows() as i64); stage.rows()];
        let y = vec![rational::ratio(1, stage.cols() as i64); stage.cols()];
        let row_guarantee = best_col_response_value(&stage, &x)?;
        let col_guarantee = best_row_response_value(&stage, &y)?;
        if &row_guarantee < value || &col_guarantee > value {
            violations += 1;
            report.witness(json!({
                "class": key.to_string(),
                "value": rational::format_rational(value),
                "uniform_row_guarantee": rational::format_rational(&row_guarantee),
                "uniform_col_guarantee": rational::format_rational(&col_guarantee),
            }));
        }
    }
    report.claim("uniform_certificate_every_class", violations == 0);
    let uniform_value = evaluate_fixed(spec, &uniform_strategy(spec, Team::One))?;
    report.claim("uniform_guarantee_equals_value", uniform_value == solved.root_value);
    report.value("root_value", &solved.root_value);
    report.value("uniform_value", &uniform_value);
    Ok(report)
}

/// Uniform play by one team makes every perfect matching equally likely,
/// whatever pure adaptive strategy the other team uses. Both directions are
/// checked exhaustively.
pub fn check_lemma2(spec: &GameSpec, budget: CheckBudget) -> Result<Report> {
    require_square(spec)?;
    let t = spec.rounds();
    let target = rational::ratio(1, factorial(t));
    let mut report = Report::new("lemma2");
    report.param("T", t);
    for (uniform_team, label) in [(Team::One, "team1_uniform"), (Team::Two, "team2_uniform")] {
        let uniform = uniform_strategy(spec, uniform_team);
        let mut bad = 0u64;
        let mut first_error = None;
        let count = for_each_pure_strategy(spec, uniform_team.other(), budget.strategies, |pure| {
            let dist = match uniform_team {
                Team::One => matching_distribution(spec, &uniform, pure),
                Team::Two => matching_distribution(spec, pure, &uniform),
            };
            match dist {
                Ok(d) => {
                    if d.values().any(|p| p != &target) {
                        bad += 1;
                    }
                }
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        })?;
        if let Some(e) = first_error {
            return Err(e);
        }
        report.param(&format!("{label}_strategies"), count);
        if bad > 0 {
            report.witness(json!({ "uniform": label, "violating_strategies": bad }));
        }
        report.claim(label, bad == 0);
    }
    report.value("matching_probability", &target);
    Ok(report)
}

/// With team two uniform and `n = T`, no team-one strategy makes any pair
/// meet with probability above `1/T`.
pub fn check_lemma5(spec: &GameSpec, budget: CheckBudget) -> Result<Report> {
    let t = spec.rounds();
    if spec.team2_size() != t {
        return Err(Error::Precond(format!("needs n = T, got n = {}", spec.team2_size())));
    }
    let (m, n) = (spec.team1_size(), spec.team2_size());
    let bound = rational::ratio(1, t as i64);
    let mut report = Report::new("lemma5");
    report.param("T", t).param("m", m);

    // Adversarial backward induction: the exact maximum over all adaptive strategies.
    let mut dp_max = vec![vec![Rational::zero(); n]; m];
    for (i, row) in dp_max.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = max_meeting_probability_vs_uniform(spec, i, j);
        }
    }
    let overall = dp_max.iter().flatten().max().cloned().unwrap_or_default();
    report.claim("adversarial_max_within_bound", overall <= bound);
    report.value("max_meeting_probability", &overall);
    report.value("bound", &bound);

    let u2 = uniform_strategy(spec, Team::Two);
    let within_cap = t <= LEMMA5_ENUMERATION_CAP.0 && m <= LEMMA5_ENUMERATION_CAP.1;
    let enumerable = within_cap && count_pure_strategies(spec, Team::One, budget.strategies).is_ok();
    if enumerable {
        let mut enum_max = vec![vec![Rational::zero(); n]; m];
        let mut bad = 0u64;
        let mut first_error = None;
        let count = for_each_pure_strategy(spec, Team::One, budget.strategies, |sigma| {
            match meeting_probabilities(spec, sigma, &u2) {
                Ok(q) => {
                    for i in 0..m {
                        for j in 0..n {
                            if q[i][j] > bound {
                                bad += 1;
                            }
                            if q[i][j] > enum_max[i][j] {
                                enum_max[i][j] = q[i][j].clone();
                            }
                        }
                    }
                }
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        })?;
        if let Some(e) = first_error {
            return Err(e);
        }
        report.param("route", "enumeration+adversarial");
        report.param("pure_strategies", count);
        report.claim("every_pure_strategy_within_bound", bad == 0);
        report.claim("enumeration_matches_adversarial_max", enum_max == dp_max);
    } else {
        report.param("route", "adversarial");
        // Spot checks on the two strategies of most interest.
        let solved = solve_with(spec, &SolveOptions { budget: budget.classes })?;
        for (label, s1) in [
            ("equilibrium_within_bound", solved.strategy1.clone()),
            ("uniform_within_bound", uniform_strategy(spec, Team::One)),
        ] {
            let q = meeting_probabilities(spec, &s1, &u2)?;
            report.claim(label, q.iter().flatten().all(|v| v <= &bound));
        }
    }
    Ok(report)
}

fn ranked_unplayed(ranking: &[usize], played: PlayerSet) -> Vec<usize> {
    ranking.iter().copied().filter(|&p| !played.contains(p)).collect()
}

/// With a monotone utility and a transitive `team`, the team loses nothing by
/// dropping all but its `T` strongest players, and at every class the row
/// (column) of the rank-`(T-k)` unplayed player dominates every unplayed
/// player outside the top `T-k`.
pub fn check_theorem2(spec: &GameSpec, team: Team, budget: CheckBudget) -> Result<Report> {
    if !spec.utility().is_monotone() {
        return Err(Error::Precond("utility is not monotone".into()));
    }
    let classes = classify(spec);
    let ranking = classes
        .team(team)
        .ranking
        .clone()
        .ok_or_else(|| Error::Precond(format!("team {team} is not transitive")))?;
    let t = spec.rounds();
    let size = spec.team_size(team);
    let mut report = Report::new("theorem2");
    report.param("team", team.number()).param("T", t).param("m", spec.team1_size()).param("n", spec.team2_size());

    let solved = solve_with(spec, &SolveOptions { budget: budget.classes })?;
    let weak = PlayerSet::from_players(ranking[t..].iter().copied());
    let reduced = abandon(spec, team, weak)?;
    let reduced_value = game_value(&reduced, budget.classes)?;
    report.claim("value_unchanged_without_weak_players", reduced_value == solved.root_value);
    report.value("value", &solved.root_value);
    report.value("value_top_T_only", &reduced_value);

    let mut violations = 0usize;
    for key in all_decision_classes(spec) {
        let k = key.round();
        let played = key.played(team);
        let ranked = ranked_unplayed(&ranking, played);
        if ranked.len() <= t - k {
            continue;
        }
        let free: Vec<usize> = played.complement(size).iter().collect();
        let position = |p: usize| free.iter().position(|&q| q == p).expect("unplayed");
        let stage = solved.stage_matrix(&key)?;
        let u = ranked[t - k - 1];
        for &v in &ranked[t - k..] {
            let dominates = match team {
                Team::One => row_dominates(&stage, position(u), position(v))?,
                Team::Two => col_dominates(&stage, position(u), position(v))?,
            };
            if !dominates {
                violations += 1;
                if report.witnesses.len() < 10 {
                    report.witness(json!({ "class": key.to_string(), "rank_player": u + 1, "other": v + 1 }));
                }
            }
        }
    }
    report.claim("rank_player_dominates_non_top", violations == 0);

    // Both teams transitive: uniform over the top T is an equilibrium strategy.
    if classes.team1.transitive && classes.team2.transitive {
        let top1 = PlayerSet::from_players(classes.team1.top(t).expect("transitive"));
        let top2 = PlayerSet::from_players(classes.team2.top(t).expect("transitive"));
        let v1 = evaluate_fixed(spec, &uniform_over(spec, Team::One, top1))?;
        let v2 = evaluate_fixed(spec, &uniform_over(spec, Team::Two, top2))?;
        report.claim("top_T_uniform_is_equilibrium", v1 == solved.root_value && v2 == solved.root_value);
        report.value("top_T_uniform_team1_guarantee", &v1);
        report.value("top_T_uniform_team2_guarantee", &v2);
    }
    Ok(report)
}

/// With `n = T < m`, expected-wins utility and a tail `A_{T+1}..A_m` weaker than
/// every `A_1..A_T`, dropping the tail leaves the value unchanged. Also runs
/// the meeting-probability bound the argument relies on.
///
/// The utility is not a precondition: with any other table the equality
/// claim is evaluated and reported as it stands.
pub fn check_theorem3(spec: &GameSpec, budget: CheckBudget) -> Result<Report> {
    let (m, n, t) = (spec.team1_size(), spec.team2_size(), spec.rounds());
    if !(m > t && n == t) {
        return Err(Error::Precond(format!("needs m > n = T, got m = {m}, n = {n}, T = {t}")));
    }
    let p = spec.strength();
    for tail in t..m {
        for top in 0..t {
            if !crate::model::componentwise_le(p.row(tail), p.row(top)) {
                return Err(Error::Precond(format!("A_{} is not weaker than A_{}", tail + 1, top + 1)));
            }
        }
    }
    let mut report = Report::new("theorem3");
    report.param("T", t).param("m", m);
    let is_ue = spec.utility() == &UtilityTable::expected_wins(t)?;
    report.param("utility_is_UE", is_ue);
    let full = game_value(spec, budget.classes)?;
    let reduced = game_value(&abandon(spec, Team::One, PlayerSet::from_players(t..m))?, budget.classes)?;
    report.value("value", &full).value("value_without_tail", &reduced);
    report.claim("value_unchanged_without_tail", full == reduced);
    if full != reduced {
        report.witness(json!({
            "value": rational::format_rational(&full),
            "value_without_tail": rational::format_rational(&reduced),
        }));
    }
    report.child("lemma5", check_lemma5(spec, budget)?);
    Ok(report)
}

/// Recruiting checks on the diagonal families. Under expected wins, `T - 2`
/// dominated recruits leave team one at `-T/2`, `T - 1` do better, and `T`
/// add nothing more. Under majority, `floor(T/2) - 1` recruits leave it at
/// `-1`, `floor(T/2)` do better, and one more adds nothing.
pub fn check_theorem4(rounds: usize, kind: UtilityKind, budget: CheckBudget) -> Result<Report> {
    if rounds < 2 {
        return Err(Error::Precond("needs T >= 2".into()));
    }
    let mut report = Report::new("theorem4");
    report.param("T", rounds).param("utility", kind.label());
    let (base, pivot, floor_value) = match kind {
        UtilityKind::ExpectedWins => (fixtures::recruit_ue_base(rounds)?, rounds - 1, rational::ratio(-(rounds as i64), 2)),
        UtilityKind::Majority => (fixtures::recruit_um_base(rounds)?, rounds / 2, rational::int(-1)),
    };
    let counts = [pivot - 1, pivot, pivot + 1];
    let values = counts
        .iter()
        .map(|&c| game_value(&add_dominated(&base, c)?, budget.classes))
        .collect::<Result<Vec<Rational>>>()?;
    for (c, v) in counts.iter().zip(&values) {
        report.value(&format!("recruits_{c}"), v);
    }
    report.value("floor", &floor_value);
    report.claim("too_few_recruits_floor", values[0] == floor_value);
    report.claim("enough_recruits_improve", values[1] > floor_value);
    report.claim("extra_recruit_adds_nothing", values[2] == values[1]);
    Ok(report)
}

/// Every `Γ^C_{a,b}` with `C <= c_max` is worth more than `-1` to team one,
/// exactly `1` when `a = ceil(C/2)`. At the root of each game, the diagonal
/// cells equal the values of the smaller games the first round leads into.
pub fn check_lemma6(c_max: usize, budget: CheckBudget) -> Result<Report> {
    let mut report = Report::new("lemma6");
    report.param("Cmax", c_max);
    let grid = GammaParams::grid(c_max);
    let values = grid
        .iter()
        .map(|&p| gamma_value(p, budget.classes).map(|v| (p, v)))
        .collect::<Result<Vec<_>>>()?;
    let lookup = |p: GammaParams| values.iter().find(|(q, _)| *q == p).map(|(_, v)| v.clone());
    let minus_one = -Rational::one();
    let mut above = true;
    let mut saturated = true;
    let mut monotone = true;
    for (p, v) in &values {
        report.value(&format!("C{}_a{}_b{}", p.c, p.a, p.b), v);
        if v <= &minus_one {
            above = false;
            report.witness(json!({ "game": p.to_string(), "value": rational::format_rational(v) }));
        }
        if p.a == p.ceil_half() && !v.is_one() {
            saturated = false;
            report.witness(json!({ "game": p.to_string(), "expected": "1" }));
        }
        if let Some(next) = GammaParams::new(p.c, p.a + 1, p.b).ok().and_then(lookup) {
            if &next < v {
                monotone = false;
            }
        }
    }
    report.claim("every_value_above_minus_one", above);
    report.claim("saturated_a_value_one", saturated);
    report.claim("value_monotone_in_a", monotone);

    let mut diagonal_ok = true;
    let mut diagonal_checked = 0usize;
    for &p in &grid {
        if p.rounds() == 0 {
            continue;
        }
        let game = gamma_game(p)?;
        let solved = solve_with(&game, &SolveOptions { budget: budget.classes })?;
        let stage = solved.stage_matrix(&HistoryClassKey::ROOT)?;
        for i in 0..p.team_size() {
            let target = if i < p.strong() {
                GammaParams::new(p.c, p.a + 1, p.b)
            } else {
                GammaParams::new(p.c, p.a, p.b + 1)
            };
            let Ok(target) = target else { continue };
            diagonal_checked += 1;
            let expected = lookup(target).expect("grid contains smaller games");
            if stage.get(i, i) != &expected {
                diagonal_ok = false;
                report.witness(json!({
                    "game": p.to_string(),
                    "diagonal": i + 1,
                    "cell": rational::format_rational(stage.get(i, i)),
                    "subgame": target.to_string(),
                    "subgame_value": rational::format_rational(&expected),
                }));
            }
        }
    }
    report.param("diagonal_cells_checked", diagonal_checked);
    report.claim("diagonal_subgame_identities", diagonal_ok);

    if c_max >= 3 {
        let g = lookup(GammaParams::new(3, 0, 0)?).expect("in grid");
        let recruited = add_dominated(&fixtures::recruit_um_base(3)?, 1)?;
        let e = game_value(&recruited, budget.classes)?;
        report.value("majority_T3_one_recruit", &e);
        report.claim("gamma_3_0_0_matches_majority_recruit_instance", g == e);
    }
    Ok(report)
}

/// Builds a summary report whose claims are the verdicts of `children`.
pub fn aggregate(check: &str, children: Vec<(String, Report)>) -> Report {
    let mut report = Report::new(check);
    report.param("instances", children.len());
    for (name, child) in children {
        if !child.pass {
            report.witness(json!({ "instance": name.clone(), "failed": child.failed_claims() }));
        }
        report.child(&name, child);
    }
    report
}

/// Attaches the instance's spec to a report (used for failing witnesses).
pub fn with_spec(mut report: Report, spec: &GameSpec) -> Report {
    report.params.insert("spec".into(), spec_to_value(spec));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn card_game_theorem1() {
        let r = check_theorem1(&fixtures::card_game(), CheckBudget::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.values["uniform_value"], "-1/3");
    }

    #[test]
    fn theorem1_needs_square() {
        assert!(matches!(
            check_theorem1(&fixtures::selection_example(), CheckBudget::default()),
            Err(Error::Redundant(_))
        ));
    }

    #[test]
    fn theorem2_needs_transitivity() {
        assert!(matches!(
            check_theorem2(&fixtures::dominated_helps(), Team::One, CheckBudget::default()),
            Err(Error::Precond(_))
        ));
    }

    #[test]
    fn theorem3_on_identity_family() {
        let ue = check_theorem3(&fixtures::largest_loss(UtilityKind::ExpectedWins), CheckBudget::default()).unwrap();
        assert!(ue.pass, "{ue:?}");
        assert_eq!(ue.values["value"], "-1/2");
        let um = check_theorem3(&fixtures::largest_loss(UtilityKind::Majority), CheckBudget::default()).unwrap();
        assert!(!um.pass);
        assert_eq!(um.failed_claims(), vec!["value_unchanged_without_tail"]);
        assert_eq!((um.values["value"].as_str(), um.values["value_without_tail"].as_str()), ("0", "-2/3"));
    }

    #[test]
    fn theorem4_small() {
        for kind in [UtilityKind::ExpectedWins, UtilityKind::Majority] {
            let r = check_theorem4(3, kind, CheckBudget::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn lemma6_small_grid() {
        let r = check_lemma6(3, CheckBudget::default()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn lemma2_card_game() {
        let r = check_lemma2(&fixtures::card_game(), CheckBudget::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.params["team1_uniform_strategies"], 192);
    }
}
