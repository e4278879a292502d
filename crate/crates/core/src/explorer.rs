//! Seeded search for instances where recruiting dominated players helps most.
//!
//! The sweep treats the conjectured bounds (2/3 extra utility under majority,
//! 1 under expected wins) as a hypothesis: every summary says whether the
//! observations are "consistent with" the bound or contain a "counterexample
//! candidate". Exceeding the bound is never an error.
//!
//! Instance `i` is drawn from `instance_rng(seed, i)` (ChaCha8, key from the
//! seed, stream from the index), so the stream of records is a pure function
//! of the configuration no matter how the instances are scheduled.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::abandon::add_dominated;
use crate::error::{Error, Result};
use crate::generate::{instance_rng, permutation_like_instance, random_matrix};
use crate::io::spec_to_value;
use crate::model::{GameSpec, StrengthMatrix, UtilityKind, MAX_PLAYERS};
use crate::rational::{self, Rational};
use crate::solver::{game_value, DEFAULT_BUDGET};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub seed: u64,
    pub instances: usize,
    /// Inclusive range of round counts.
    pub t_range: (usize, usize),
    /// Inclusive range of team sizes, raised to at least `T` per instance.
    pub m_range: (usize, usize),
    pub denominator_bound: u32,
    pub utility: UtilityKind,
    /// Requested recruit limit; the effective limit is also capped at `T - 1`
    /// (expected wins) or `floor(T/2)` (majority), beyond which recruiting
    /// cannot help.
    pub max_recruits: usize,
    /// Probability that an instance comes from the 0/1 permutation-like family.
    pub structured_fraction: f64,
    /// Prepend the `T x T` identity instance for every `T` in range.
    pub include_witnesses: bool,
    /// Class budget per solve.
    pub budget: u128,
}

impl SearchConfig {
    pub fn new(seed: u64, instances: usize, utility: UtilityKind) -> SearchConfig {
        SearchConfig {
            seed,
            instances,
            t_range: (2, 4),
            m_range: (2, 5),
            denominator_bound: 6,
            utility,
            max_recruits: 4,
            structured_fraction: 0.25,
            include_witnesses: true,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, t1) = self.t_range;
        let (m0, m1) = self.m_range;
        if t0 == 0 || t0 > t1 || m0 > m1 {
            return Err(Error::Params("ranges must be nonempty with T >= 1".into()));
        }
        if t1 > MAX_PLAYERS || m1 > MAX_PLAYERS {
            return Err(Error::Params(format!("sizes are limited to {MAX_PLAYERS}")));
        }
        if self.denominator_bound == 0 {
            return Err(Error::Params("denominator bound must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.structured_fraction) {
            return Err(Error::Params("structured fraction must lie in [0, 1]".into()));
        }
        Ok(())
    }

    /// The conjectured gain bound for the configured utility.
    pub fn conjectured_bound(&self) -> Rational {
        conjectured_bound(self.utility)
    }

    /// Recruit limit applied to an instance with `rounds` rounds and `m` players.
    pub fn recruit_limit(&self, rounds: usize, m: usize) -> usize {
        let cap = match self.utility {
            UtilityKind::ExpectedWins => rounds.saturating_sub(1),
            UtilityKind::Majority => rounds / 2,
        };
        self.max_recruits.min(cap).min(MAX_PLAYERS - m)
    }
}

pub fn conjectured_bound(kind: UtilityKind) -> Rational {
    match kind {
        UtilityKind::Majority => rational::ratio(2, 3),
        UtilityKind::ExpectedWins => rational::int(1),
    }
}

fn identity(rounds: usize, kind: UtilityKind) -> Result<GameSpec> {
    let rows = (0..rounds)
        .map(|i| (0..rounds).map(|j| rational::int(i64::from(i == j))).collect())
        .collect();
    GameSpec::with_kind(rounds, StrengthMatrix::new(rows)?, kind)
}

/// The instance at `index`; a pure function of `(config, index)`.
pub fn generate_instance(config: &SearchConfig, index: usize) -> Result<GameSpec> {
    config.validate()?;
    if index >= config.instances {
        return Err(Error::Index(format!("instance {index} of {}", config.instances)));
    }
    let (t0, t1) = config.t_range;
    if config.include_witnesses && index <= t1 - t0 {
        return identity(t0 + index, config.utility);
    }
    let mut rng = instance_rng(config.seed, index as u64);
    let rounds = rng.gen_range(t0..=t1);
    let lo = config.m_range.0.max(rounds);
    let hi = config.m_range.1.max(rounds);
    let m = rng.gen_range(lo..=hi);
    let n = rng.gen_range(lo..=hi);
    if rng.gen_bool(config.structured_fraction) {
        permutation_like_instance(&mut rng, m, n, rounds, config.utility)
    } else {
        let rows = random_matrix(&mut rng, m, n, config.denominator_bound);
        GameSpec::with_kind(rounds, StrengthMatrix::new(rows)?, config.utility)
    }
}

/// Stable 64-bit FNV-1a hash of the compact spec document.
pub fn spec_digest(spec: &GameSpec) -> String {
    let text = spec_to_value(spec).to_string();
    let hash = text
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3));
    format!("{hash:016x}")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GainRecord {
    pub digest: String,
    /// Smallest recruit count reaching `best_value`.
    pub recruits_used: usize,
    #[serde(with = "rational::serde_str")]
    pub base_value: Rational,
    #[serde(with = "rational::serde_str")]
    pub best_value: Rational,
    #[serde(with = "rational::serde_str")]
    pub gain: Rational,
    /// Value with `0, 1, ..., max_recruits` dominated recruits.
    #[serde(with = "rational::serde_vec")]
    pub values: Vec<Rational>,
}

/// Solves `spec` with `0..=max_recruits` dominated team-one recruits.
pub fn max_gain(spec: &GameSpec, max_recruits: usize, budget: u128) -> Result<GainRecord> {
    if spec.team1_size() + max_recruits > MAX_PLAYERS {
        return Err(Error::Size(format!(
            "{} + {max_recruits} players exceeds the limit of {MAX_PLAYERS}",
            spec.team1_size()
        )));
    }
    let values = (0..=max_recruits)
        .map(|r| game_value(&add_dominated(spec, r)?, budget))
        .collect::<Result<Vec<_>>>()?;
    let base_value = values[0].clone();
    let best_value = values.iter().max().cloned().expect("nonempty");
    let recruits_used = values.iter().position(|v| v == &best_value).expect("present");
    Ok(GainRecord {
        digest: spec_digest(spec),
        recruits_used,
        gain: &best_value - &base_value,
        base_value,
        best_value,
        values,
    })
}

/// One row of the sweep output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub index: usize,
    pub rounds: usize,
    pub m: usize,
    pub n: usize,
    pub utility: &'static str,
    #[serde(flatten)]
    pub gain: GainRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkippedInstance {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub seed: u64,
    pub instances: usize,
    pub completed: usize,
    pub utility: &'static str,
    #[serde(with = "rational::serde_str")]
    pub conjectured_bound: Rational,
    #[serde(with = "rational::serde_str")]
    pub max_gain: Rational,
    pub max_gain_index: Option<usize>,
    pub max_gain_spec: Option<Value>,
    pub all_gains_nonnegative: bool,
    pub exceeds_bound: bool,
    /// "consistent with" or "counterexample candidate".
    pub verdict: &'static str,
    pub counterexample_candidates: Vec<Value>,
    pub skipped: Vec<SkippedInstance>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub summary: SweepSummary,
    pub records: Vec<SweepRecord>,
}

impl SweepOutput {
    /// Row-per-record CSV; rationals as `a/b`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "T", "m", "n", "utility", "recruits_used", "base_value", "best_value", "gain"])
            .expect("in-memory write");
        for r in &self.records {
            w.write_record([
                r.index.to_string(),
                r.rounds.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.utility.to_string(),
                r.gain.recruits_used.to_string(),
                rational::format_rational(&r.gain.base_value),
                rational::format_rational(&r.gain.best_value),
                rational::format_rational(&r.gain.gain),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

fn run_instance(config: &SearchConfig, index: usize) -> Result<(GameSpec, SweepRecord)> {
    let spec = generate_instance(config, index)?;
    let limit = config.recruit_limit(spec.rounds(), spec.team1_size());
    let gain = max_gain(&spec, limit, config.budget)?;
    let record = SweepRecord {
        index,
        rounds: spec.rounds(),
        m: spec.team1_size(),
        n: spec.team2_size(),
        utility: config.utility.label(),
        gain,
    };
    Ok((spec, record))
}

/// Runs [`max_gain`] on every generated instance. Instances that exceed the
/// class budget are listed under `skipped`; other errors abort the sweep.
pub fn sweep(config: &SearchConfig) -> Result<SweepOutput> {
    config.validate()?;
    let run = |i| run_instance(config, i);
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        (0..config.instances).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = (0..config.instances).map(run).collect();

    let bound = config.conjectured_bound();
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut candidates = Vec::new();
    let mut best: Option<(Rational, usize, Value)> = None;
    for (index, result) in results.into_iter().enumerate() {
        match result {
            Ok((spec, record)) => {
                let g = &record.gain.gain;
                if g > &bound {
                    candidates.push(json!({
                        "index": index,
                        "gain": rational::format_rational(g),
                        "recruits_used": record.gain.recruits_used,
                        "spec": spec_to_value(&spec),
                    }));
                }
                if best.as_ref().is_none_or(|(b, _, _)| g > b) {
                    best = Some((g.clone(), index, spec_to_value(&spec)));
                }
                records.push(record);
            }
            Err(e) if e.is_budget() => skipped.push(SkippedInstance { index, reason: e.to_string() }),
            Err(e) => return Err(e),
        }
    }
    let exceeds = !candidates.is_empty();
    let (max_gain, max_gain_index, max_gain_spec) = match best {
        Some((g, i, s)) => (g, Some(i), Some(s)),
        None => (rational::zero(), None, None),
    };
    let summary = SweepSummary {
        seed: config.seed,
        instances: config.instances,
        completed: records.len(),
        utility: config.utility.label(),
        conjectured_bound: bound,
        max_gain,
        max_gain_index,
        max_gain_spec,
        all_gains_nonnegative: records.iter().all(|r| r.gain.gain >= rational::zero()),
        exceeds_bound: exceeds,
        verdict: if exceeds { "counterexample candidate" } else { "consistent with" },
        counterexample_candidates: candidates,
        skipped,
    };
    Ok(SweepOutput { summary, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::abandon::abandon;
    use crate::fixtures;
    use crate::model::{PlayerSet, Team};
    use crate::rational::{int, ratio};

    #[test]
    fn identity_three_gains_two_thirds_under_majority() {
        let base = abandon(&fixtures::largest_loss(UtilityKind::Majority), Team::One, PlayerSet::from_players([3])).unwrap();
        let r = max_gain(&base, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.gain, ratio(2, 3));
        assert_eq!(r.recruits_used, 1);
    }

    #[test]
    fn majority_recruit_family_stops_improving() {
        let r = max_gain(&fixtures::recruit_um_base(3).unwrap(), 2, DEFAULT_BUDGET).unwrap();
        assert!(r.gain > int(0));
        assert_eq!(r.recruits_used, 1);
        assert_eq!(r.values[1], r.values[2]);
    }

    #[test]
    fn zero_recruits_zero_gain() {
        let r = max_gain(&fixtures::card_game(), 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.gain, int(0));
        assert_eq!(r.recruits_used, 0);
    }

    #[test]
    fn generation_is_deterministic_and_valid() {
        let mut c = SearchConfig::new(1, 40, UtilityKind::Majority);
        c.denominator_bound = 1;
        for i in 0..40 {
            let a = generate_instance(&c, i).unwrap();
            assert_eq!(a, generate_instance(&c, i).unwrap());
            assert!(a.validate().is_ok());
            assert!(a.strength().to_rows().iter().flatten().all(|p| p == &int(0) || p == &int(1)));
            assert!(a.team1_size() >= a.rounds() && a.team2_size() >= a.rounds());
        }
        assert!(generate_instance(&c, 40).is_err());
    }

    #[test]
    fn small_sweep() {
        let mut c = SearchConfig::new(5, 12, UtilityKind::Majority);
        c.t_range = (2, 3);
        c.m_range = (2, 4);
        let out = sweep(&c).unwrap();
        assert_eq!(out.records.len(), 12);
        assert!(out.summary.all_gains_nonnegative);
        assert_eq!(out.summary.max_gain, ratio(2, 3));
        assert_eq!(out.summary.verdict, "consistent with");
        assert_eq!(out, sweep(&c).unwrap());
        let csv = out.to_csv();
        assert!(csv.starts_with("index,T,m,n,utility,recruits_used,base_value,best_value,gain\n"));
        assert_eq!(csv.lines().count(), 13);
    }
}
