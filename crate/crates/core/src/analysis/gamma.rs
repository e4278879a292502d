//! The threshold games `Γ^C_{a,b}`.
//!
//! Each team has `(C - a) + (floor(C/2) - b)` players and there are
//! `C - a - b` rounds. `A_i` beats `B_i` for `i <= C - a` and every other
//! pairing goes to team two. Team one scores 1 with at least
//! `ceil(C/2) - a` wins and -1 otherwise.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{GameSpec, StrengthMatrix, UtilityTable};
use crate::rational::{self, Rational};
use crate::solver::game_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GammaParams {
    pub c: usize,
    pub a: usize,
    pub b: usize,
}

impl GammaParams {
    /// Requires `C >= 1`, `0 <= a <= ceil(C/2)`, `0 <= b <= floor(C/2)`.
    pub fn new(c: usize, a: usize, b: usize) -> Result<GammaParams> {
        let p = GammaParams { c, a, b };
        if c < 1 || a > p.ceil_half() || b > p.floor_half() {
            return Err(Error::Params(format!(
                "need C >= 1, a <= ceil(C/2), b <= floor(C/2); got C = {c}, a = {a}, b = {b}"
            )));
        }
        Ok(p)
    }

    pub fn ceil_half(&self) -> usize {
        self.c.div_ceil(2)
    }

    pub fn floor_half(&self) -> usize {
        self.c / 2
    }

    pub fn rounds(&self) -> usize {
        self.c - self.a - self.b
    }

    /// Players who can win (the first `C - a`).
    pub fn strong(&self) -> usize {
        self.c - self.a
    }

    pub fn team_size(&self) -> usize {
        self.strong() + self.floor_half() - self.b
    }

    /// Wins team one needs for utility 1.
    pub fn threshold(&self) -> usize {
        self.ceil_half() - self.a
    }

    /// Every parameter triple with `C <= c_max`, ordered by `(C, a, b)`.
    pub fn grid(c_max: usize) -> Vec<GammaParams> {
        let mut out = Vec::new();
        for c in 1..=c_max {
            for a in 0..=c.div_ceil(2) {
                for b in 0..=c / 2 {
                    out.push(GammaParams { c, a, b });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for GammaParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gamma^{}_{{{},{}}}", self.c, self.a, self.b)
    }
}

/// Builds `Γ^C_{a,b}`. Fails with [`Error::Params`] when the game has no
/// rounds (`a = ceil(C/2)` and `b = floor(C/2)`); see [`gamma_value`].
pub fn gamma_game(params: GammaParams) -> Result<GameSpec> {
    let params = GammaParams::new(params.c, params.a, params.b)?;
    let rounds = params.rounds();
    if rounds == 0 {
        return Err(Error::Params(format!("{params} has no rounds")));
    }
    let size = params.team_size();
    let strong = params.strong();
    let rows = (0..size)
        .map(|i| (0..size).map(|j| rational::int(i64::from(i == j && i < strong))).collect())
        .collect();
    GameSpec::new(
        rounds,
        StrengthMatrix::new(rows)?,
        UtilityTable::threshold(rounds, params.threshold()),
    )
}

/// Value of `Γ^C_{a,b}`, including the empty game, whose value is the
/// utility of zero wins.
pub fn gamma_value(params: GammaParams, budget: u128) -> Result<Rational> {
    let params = GammaParams::new(params.c, params.a, params.b)?;
    if params.rounds() == 0 {
        return Ok(UtilityTable::threshold(0, params.threshold()).value(0).clone());
    }
    game_value(&gamma_game(params)?, budget)
}
