//! Monte Carlo play-outs for cross-checking exact values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::model::{GameSpec, HistoryClassKey};
use crate::rational::{self, Rational};
use crate::strategy::{lookup, ClassStrategy};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub samples: u64,
    pub seed: u64,
    pub approx_mean: f64,
    pub approx_std_error: f64,
}

impl Estimate {
    /// Distance from `exact` measured in standard errors (0 when both the
    /// error and the difference vanish).
    pub fn z_score(&self, exact: &Rational) -> f64 {
        let diff = (self.approx_mean - rational::to_f64(exact)).abs();
        if self.approx_std_error == 0.0 {
            if diff < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.approx_std_error
        }
    }
}

fn sample_mixture(rng: &mut ChaCha8Rng, mix: &[(usize, Rational)]) -> usize {
    if mix.len() == 1 {
        return mix[0].0;
    }
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (p, w) in mix {
        acc += rational::to_f64(w);
        if u < acc {
            return *p;
        }
    }
    mix.last().expect("nonempty mixture").0
}

/// Plays `samples` independent competitions of `s1` against `s2` and reports
/// the sample mean of team one's utility with its standard error.
pub fn simulate<S1, S2>(spec: &GameSpec, s1: &S1, s2: &S2, samples: u64, seed: u64) -> Result<Estimate>
where
    S1: ClassStrategy + ?Sized,
    S2: ClassStrategy + ?Sized,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..samples {
        let mut key = HistoryClassKey::ROOT;
        for _ in 0..spec.rounds() {
            let a = sample_mixture(&mut rng, &lookup(s1, spec, &key)?);
            let b = sample_mixture(&mut rng, &lookup(s2, spec, &key)?);
            let p = spec.win_prob(a, b);
            let won = if *p == rational::one() {
                true
            } else if *p == rational::zero() {
                false
            } else {
                rng.gen::<f64>() < rational::to_f64(p)
            };
            key = key.advance(a, b, won);
        }
        let u = rational::to_f64(spec.utility().value(key.wins as usize));
        sum += u;
        sum_sq += u * u;
    }
    let n = samples.max(1) as f64;
    let mean = sum / n;
    let variance = if samples > 1 {
        ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(Estimate {
        samples,
        seed,
        approx_mean: mean,
        approx_std_error: (variance / n).sqrt(),
    })
}
