//! Seeded random instance families.
//!
//! Every generator takes its own [`ChaCha8Rng`]. Callers derive one stream per
//! instance with [`instance_rng`]: the seed selects the key and the instance
//! index selects the ChaCha stream, so instance `i` never depends on how many
//! numbers instance `i - 1` consumed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::model::{GameSpec, StrengthMatrix, UtilityKind};
use crate::rational::{self, Rational};

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A probability `k/d` with `d` uniform in `1..=max_den` and `k` uniform in `0..=d`.
pub fn random_probability(rng: &mut ChaCha8Rng, max_den: u32) -> Rational {
    let d = rng.gen_range(1..=max_den.max(1)) as i64;
    let k = rng.gen_range(0..=d);
    rational::ratio(k, d)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, max_den: u32) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|_| (0..n).map(|_| random_probability(rng, max_den)).collect())
        .collect()
}

/// `m = n = T` with independent random entries.
pub fn square_instance(rng: &mut ChaCha8Rng, rounds: usize, max_den: u32, kind: UtilityKind) -> Result<GameSpec> {
    GameSpec::with_kind(rounds, StrengthMatrix::new(random_matrix(rng, rounds, rounds, max_den))?, kind)
}

/// Both teams transitive: `P` is made nonincreasing down the rows and
/// nondecreasing along the columns (so `A_1` and `B_1` are strongest), then
/// rows and columns are shuffled.
pub fn transitive_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    rounds: usize,
    max_den: u32,
    kind: UtilityKind,
) -> Result<GameSpec> {
    let raw = random_matrix(rng, m, n, max_den);
    let mut p = raw.clone();
    // P[i][j] = max over i' >= i, j' <= j of raw[i'][j']
    for i in (0..m).rev() {
        for j in 0..n {
            let mut v = raw[i][j].clone();
            if i + 1 < m && p[i + 1][j] > v {
                v = p[i + 1][j].clone();
            }
            if j > 0 && p[i][j - 1] > v {
                v = p[i][j - 1].clone();
            }
            p[i][j] = v;
        }
    }
    let mut row_order: Vec<usize> = (0..m).collect();
    let mut col_order: Vec<usize> = (0..n).collect();
    row_order.shuffle(rng);
    col_order.shuffle(rng);
    let shuffled = row_order
        .iter()
        .map(|&i| col_order.iter().map(|&j| p[i][j].clone()).collect())
        .collect();
    GameSpec::with_kind(rounds, StrengthMatrix::new(shuffled)?, kind)
}

/// `n = T < m`; rows `T..m` are each componentwise below every row `0..T`.
pub fn weak_tail_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    rounds: usize,
    max_den: u32,
    kind: UtilityKind,
) -> Result<GameSpec> {
    let n = rounds;
    let mut rows = random_matrix(rng, rounds, n, max_den);
    let floor: Vec<Rational> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).min().expect("at least one row"))
        .collect();
    for _ in rounds..m {
        let tail = floor
            .iter()
            .map(|cap| {
                let f = random_probability(rng, max_den);
                cap * f
            })
            .collect();
        rows.push(tail);
    }
    GameSpec::with_kind(rounds, StrengthMatrix::new(rows)?, kind)
}

/// A 0/1 matrix where row `i < r` beats exactly one distinct column chosen by
/// a random injection and all other rows are dominated.
pub fn permutation_like_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    rounds: usize,
    kind: UtilityKind,
) -> Result<GameSpec> {
    let winners = rng.gen_range(1..=m.min(n));
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    let rows = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| rational::int(i64::from(i < winners && cols[i] == j)))
                .collect()
        })
        .collect();
    GameSpec::with_kind(rounds, StrengthMatrix::new(rows)?, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::componentwise_le;

    #[test]
    fn streams_are_reproducible_and_independent() {
        let a = random_matrix(&mut instance_rng(1, 0), 3, 3, 6);
        let b = random_matrix(&mut instance_rng(1, 0), 3, 3, 6);
        let c = random_matrix(&mut instance_rng(1, 1), 3, 3, 6);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn unit_denominator_gives_zero_one() {
        let mut rng = instance_rng(9, 0);
        for _ in 0..100 {
            let p = random_probability(&mut rng, 1);
            assert!(p == rational::zero() || p == rational::one());
        }
    }

    #[test]
    fn weak_tail_rows_are_weaker() {
        for idx in 0..20 {
            let spec = weak_tail_instance(&mut instance_rng(4, idx), 5, 3, 6, UtilityKind::ExpectedWins).unwrap();
            let p = spec.strength();
            for tail in 3..5 {
                for top in 0..3 {
                    assert!(componentwise_le(p.row(tail), p.row(top)));
                }
            }
        }
    }
}
