//! Seeded randomized sweeps of the per-instance checkers.
//!
//! Instance `i` of a suite is built from its own random stream
//! ([`instance_rng`]`(seed, i)`), uses round count `rounds[i % rounds.len()]`,
//! and is checked independently. Instances may run in parallel; the child
//! reports are always assembled in index order.

use rand::Rng;
use serde_json::json;

use super::checks::{
    check_lemma2, check_lemma5, check_theorem1, check_theorem2, check_theorem3, with_spec, CheckBudget,
};
use super::report::Report;
use crate::error::Result;
use crate::fixtures;
use crate::generate::{instance_rng, square_instance, transitive_instance, weak_tail_instance};
use crate::model::{Team, UtilityKind, MAX_PLAYERS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub rounds: Vec<usize>,
    /// Largest denominator of generated probabilities.
    pub max_den: u32,
    pub budget: CheckBudget,
}

impl SuiteConfig {
    pub fn new(seed: u64, instances: usize, rounds: Vec<usize>) -> SuiteConfig {
        SuiteConfig {
            seed,
            instances,
            rounds,
            max_den: 6,
            budget: CheckBudget::default(),
        }
    }

    fn rounds_for(&self, index: usize) -> usize {
        self.rounds[index % self.rounds.len()]
    }
}

/// Default round counts and instance counts for each randomized suite.
pub fn default_suite_config(suite: &str, seed: u64) -> Option<SuiteConfig> {
    let (instances, rounds) = match suite {
        "theorem1" => (100, vec![2, 3, 4]),
        "lemma2" => (20, vec![2, 3]),
        "lemma5" => (20, vec![2, 3]),
        "theorem2" => (50, vec![2, 3, 4]),
        "theorem3" => (50, vec![2, 3, 4]),
        _ => return None,
    };
    Some(SuiteConfig::new(seed, instances, rounds))
}

fn run_indexed<F>(count: usize, f: F) -> Result<Vec<Report>>
where
    F: Fn(usize) -> Result<Report> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Keeps only failing children in full; passing ones are counted.
fn summarize(check: &str, config: &SuiteConfig, children: Vec<Report>) -> Report {
    let mut report = Report::new(check);
    report
        .param("seed", config.seed)
        .param("instances", config.instances)
        .param("rounds", config.rounds.clone())
        .param("max_den", config.max_den);
    let passed = children.iter().filter(|c| c.pass).count();
    report.param("passed", passed);
    report.claim("every_instance_passes", passed == children.len());
    for (index, child) in children.into_iter().enumerate() {
        if !child.pass {
            report.witness(json!({ "instance": index, "failed": child.failed_claims() }));
            report.reports.push(child);
        }
    }
    report
}

fn validate(config: &SuiteConfig) -> Result<()> {
    if config.rounds.is_empty() || config.rounds.contains(&0) {
        return Err(crate::error::Error::Params("round counts must be nonempty and positive".into()));
    }
    if config.max_den == 0 {
        return Err(crate::error::Error::Params("denominator bound must be at least 1".into()));
    }
    Ok(())
}

/// Random square instances; uniform play certified at every class.
pub fn theorem1_suite(config: &SuiteConfig) -> Result<Report> {
    validate(config)?;
    let children = run_indexed(config.instances, |i| {
        let mut rng = instance_rng(config.seed, i as u64);
        let kind = if rng.gen_bool(0.5) { UtilityKind::ExpectedWins } else { UtilityKind::Majority };
        let spec = square_instance(&mut rng, config.rounds_for(i), config.max_den, kind)?;
        Ok(with_spec(check_theorem1(&spec, config.budget)?, &spec))
    })?;
    Ok(summarize("theorem1", config, children))
}

/// Random square instances; every matching has probability `1/T!` against
/// every pure strategy of the other team.
pub fn lemma2_suite(config: &SuiteConfig) -> Result<Report> {
    validate(config)?;
    let children = run_indexed(config.instances, |i| {
        let mut rng = instance_rng(config.seed, i as u64);
        let spec = square_instance(&mut rng, config.rounds_for(i), config.max_den, UtilityKind::ExpectedWins)?;
        Ok(with_spec(check_lemma2(&spec, config.budget)?, &spec))
    })?;
    Ok(summarize("lemma2", config, children))
}

/// Weak-tail instances with `m` alternating between `T + 1` and `T + 2`.
pub fn lemma5_suite(config: &SuiteConfig) -> Result<Report> {
    validate(config)?;
    let children = run_indexed(config.instances, |i| {
        let t = config.rounds_for(i);
        let m = (t + 1 + (i / config.rounds.len()) % 2).min(MAX_PLAYERS);
        let mut rng = instance_rng(config.seed, i as u64);
        let spec = weak_tail_instance(&mut rng, m, t, config.max_den, UtilityKind::ExpectedWins)?;
        Ok(with_spec(check_lemma5(&spec, config.budget)?, &spec))
    })?;
    let enumerated = children
        .iter()
        .filter(|c| c.params.get("route").and_then(|r| r.as_str()) == Some("enumeration+adversarial"))
        .count();
    let mut report = summarize("lemma5", config, children);
    report.param("enumerated_instances", enumerated);
    Ok(report)
}

/// Both teams transitive with sizes in `T..=min(6, T + 2)`; utilities
/// alternate between expected wins and majority. Each instance is checked
/// from both teams' side.
pub fn theorem2_suite(config: &SuiteConfig) -> Result<Report> {
    validate(config)?;
    let children = run_indexed(config.instances, |i| {
        let t = config.rounds_for(i);
        let mut rng = instance_rng(config.seed, i as u64);
        let cap = (t + 2).clamp(t, 6.max(t));
        let m = rng.gen_range(t..=cap);
        let n = rng.gen_range(t..=cap);
        let kind = if i % 2 == 0 { UtilityKind::ExpectedWins } else { UtilityKind::Majority };
        let spec = transitive_instance(&mut rng, m, n, t, config.max_den, kind)?;
        let mut report = Report::new("theorem2_instance");
        report.child("team1", check_theorem2(&spec, Team::One, config.budget)?);
        report.child("team2", check_theorem2(&spec, Team::Two, config.budget)?);
        Ok(with_spec(report, &spec))
    })?;
    Ok(summarize("theorem2", config, children))
}

/// Weak-tail instances under expected wins with `m` in `T+1..=T+2`, plus
/// the majority-utility contrast on the identity family, where dropping the
/// dominated player does change the value.
pub fn theorem3_suite(config: &SuiteConfig) -> Result<Report> {
    validate(config)?;
    let children = run_indexed(config.instances, |i| {
        let t = config.rounds_for(i);
        let mut rng = instance_rng(config.seed, i as u64);
        let m = (t + rng.gen_range(1..=2)).min(MAX_PLAYERS);
        let spec = weak_tail_instance(&mut rng, m, t, config.max_den, UtilityKind::ExpectedWins)?;
        Ok(with_spec(check_theorem3(&spec, config.budget)?, &spec))
    })?;
    let mut report = summarize("theorem3", config, children);
    let contrast = check_theorem3(&fixtures::largest_loss(UtilityKind::Majority), config.budget)?;
    let differs = contrast.values.get("value") != contrast.values.get("value_without_tail");
    report.claim("majority_contrast_value_changes", differs);
    report.value("majority_contrast_value", &crate::rational::parse_rational(&contrast.values["value"])?);
    report.value(
        "majority_contrast_value_without_tail",
        &crate::rational::parse_rational(&contrast.values["value_without_tail"])?,
    );
    Ok(report)
}
