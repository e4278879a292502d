//! Backward induction over history classes.
//!
//! The value of a class `(X, Y, w)` depends only on the played sets and the
//! win count, so the solver never looks at raw histories. Terminal classes
//! (`|X| = T`) are worth `U(w)`; every other class is worth the value of its
//! stage matrix, whose cell for `(A_i, B_j)` mixes the two successor classes
//! by `P[i][j]`.

use std::collections::HashMap;

use num_traits::One;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{solve_matrix, MatrixGame, MatrixSolution};
use crate::model::{GameSpec, HistoryClassKey, PlayerSet};
use crate::rational::Rational;
use crate::strategy::BehavioralStrategy;
use crate::model::Team;

/// Default cap on the number of history classes a solve may touch.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Abort with [`Error::Budget`] if the class count exceeds this.
    pub budget: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: DEFAULT_BUDGET }
    }
}

type Level = HashMap<HistoryClassKey, Rational>;

/// Values of every history class. Terminal values are derived from the
/// utility table on lookup rather than stored.
#[derive(Clone, Debug)]
pub struct ValueTable {
    spec: GameSpec,
    levels: Vec<Level>,
}

impl ValueTable {
    pub fn get(&self, key: &HistoryClassKey) -> Option<&Rational> {
        let k = key.round();
        if k == self.spec.rounds() {
            return key.is_consistent().then(|| self.spec.utility().value(key.wins as usize));
        }
        self.levels.get(k)?.get(key)
    }

    /// Number of stored (non-terminal) classes.
    pub fn len(&self) -> usize {
        self.levels.iter().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All stored entries ordered by round, then key.
    pub fn sorted_entries(&self) -> Vec<(&HistoryClassKey, &Rational)> {
        let mut out: Vec<_> = self.levels.iter().flat_map(|l| l.iter()).collect();
        out.sort_by_key(|(k, _)| (k.round(), **k));
        out
    }
}

/// Values and one subgame-perfect equilibrium of a competition.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub spec: GameSpec,
    pub values: ValueTable,
    pub strategy1: BehavioralStrategy,
    pub strategy2: BehavioralStrategy,
    pub root_value: Rational,
}

impl SolveResult {
    pub fn value(&self, key: &HistoryClassKey) -> Option<&Rational> {
        self.values.get(key)
    }

    pub fn stage_matrix(&self, key: &HistoryClassKey) -> Result<MatrixGame> {
        stage_matrix(&self.spec, &self.values, key)
    }
}

/// The one-round matrix game at a non-terminal class. Rows are team one's
/// unused players in ascending order, columns team two's.
pub fn stage_matrix(spec: &GameSpec, values: &ValueTable, key: &HistoryClassKey) -> Result<MatrixGame> {
    if key.round() >= spec.rounds() {
        return Err(Error::Terminal);
    }
    let mut missing = None;
    let game = build_stage(spec, key, |next| match values.get(next) {
        Some(v) => v.clone(),
        None => {
            missing.get_or_insert(*next);
            Rational::default()
        }
    });
    match missing {
        Some(k) => Err(Error::Coverage(format!("value table lacks successor class {k}"))),
        None => Ok(game),
    }
}

fn build_stage(
    spec: &GameSpec,
    key: &HistoryClassKey,
    mut next_value: impl FnMut(&HistoryClassKey) -> Rational,
) -> MatrixGame {
    let rows: Vec<usize> = key.played1.complement(spec.team1_size()).iter().collect();
    let cols: Vec<usize> = key.played2.complement(spec.team2_size()).iter().collect();
    let mut cells = Vec::with_capacity(rows.len() * cols.len());
    for &a in &rows {
        for &b in &cols {
            let p = spec.win_prob(a, b);
            let win = next_value(&key.advance(a, b, true));
            let lose = next_value(&key.advance(a, b, false));
            cells.push(&lose + p * (win - &lose));
        }
    }
    MatrixGame::from_flat(rows.len(), cols.len(), cells)
}

fn check_budget(spec: &GameSpec, budget: u128) -> Result<()> {
    let classes = spec.class_count();
    if classes > budget {
        return Err(Error::Budget(format!("{classes} history classes exceed the budget of {budget}")));
    }
    Ok(())
}

fn level_classes(spec: &GameSpec, k: usize) -> Vec<HistoryClassKey> {
    let xs = PlayerSet::subsets_of_size(spec.team1_size(), k);
    let ys = PlayerSet::subsets_of_size(spec.team2_size(), k);
    let mut out = Vec::with_capacity(xs.len() * ys.len() * (k + 1));
    for &x in &xs {
        for &y in &ys {
            for w in 0..=k {
                out.push(HistoryClassKey::new(x, y, w as u8));
            }
        }
    }
    out
}

/// Solves every class of level `k` given the values of level `k + 1`.
fn solve_level(spec: &GameSpec, k: usize, next: &Level) -> Vec<(HistoryClassKey, MatrixSolution)> {
    let terminal_next = k + 1 == spec.rounds();
    let lookup = |key: &HistoryClassKey| -> Rational {
        if terminal_next {
            spec.utility().value(key.wins as usize).clone()
        } else {
            next[key].clone()
        }
    };
    let classes = level_classes(spec, k);
    let work = |key: &HistoryClassKey| (*key, solve_matrix(&build_stage(spec, key, lookup)));
    #[cfg(feature = "parallel")]
    {
        classes.par_iter().map(work).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        classes.iter().map(work).collect()
    }
}

fn mixture_over(free: PlayerSet, weights: &[Rational]) -> Vec<(usize, Rational)> {
    free.iter().zip(weights.iter().cloned()).collect()
}

/// Solves `spec` with the default budget.
pub fn solve(spec: &GameSpec) -> Result<SolveResult> {
    solve_with(spec, &SolveOptions::default())
}

/// Full backward induction, keeping every level's values and the
/// equilibrium mixtures at every non-terminal class.
pub fn solve_with(spec: &GameSpec, options: &SolveOptions) -> Result<SolveResult> {
    check_budget(spec, options.budget)?;
    let t = spec.rounds();
    let mut levels: Vec<Level> = vec![Level::new(); t];
    let mut strategy1 = BehavioralStrategy::new(Team::One);
    let mut strategy2 = BehavioralStrategy::new(Team::Two);
    for k in (0..t).rev() {
        let empty = Level::new();
        let next = if k + 1 < t { &levels[k + 1] } else { &empty };
        let solved = solve_level(spec, k, next);
        let mut level = Level::with_capacity(solved.len());
        for (key, sol) in solved {
            let free1 = key.played1.complement(spec.team1_size());
            let free2 = key.played2.complement(spec.team2_size());
            strategy1.insert(key, mixture_over(free1, &sol.row_strategy));
            strategy2.insert(key, mixture_over(free2, &sol.col_strategy));
            level.insert(key, sol.value);
        }
        levels[k] = level;
    }
    let root_value = levels[0][&HistoryClassKey::ROOT].clone();
    Ok(SolveResult {
        spec: spec.clone(),
        values: ValueTable {
            spec: spec.clone(),
            levels,
        },
        strategy1,
        strategy2,
        root_value,
    })
}

/// Root value only; each level is discarded once the one above it is done.
pub fn game_value(spec: &GameSpec, budget: u128) -> Result<Rational> {
    check_budget(spec, budget)?;
    let mut next = Level::new();
    for k in (0..spec.rounds()).rev() {
        next = solve_level(spec, k, &next)
            .into_iter()
            .map(|(key, sol)| (key, sol.value))
            .collect();
    }
    Ok(next.remove(&HistoryClassKey::ROOT).expect("root solved"))
}

/// Value of the competition with teams swapped, expressed for the original
/// team one. Equals the root value whenever the solver is consistent.
pub fn mirrored_value(spec: &GameSpec, budget: u128) -> Result<Rational> {
    Ok(-game_value(&spec.mirrored(), budget)?)
}

/// Probability weights for a single round: `(team1 wins?, probability)`,
/// skipping zero-probability outcomes.
pub(crate) fn outcomes(p: &Rational) -> impl Iterator<Item = (bool, Rational)> {
    let win = p.clone();
    let lose = Rational::one() - p;
    [(true, win), (false, lose)]
        .into_iter()
        .filter(|(_, q)| q != &Rational::default())
}
