//! Exact solver for two-team multi-round selection competitions.
//!
//! Each round both teams simultaneously send out one unused player; team one's
//! player wins with the probability given by the strength matrix. After `T`
//! rounds team one receives `U(t)` for `t` wins and team two receives `-U(t)`.
//! The [`solver`] computes subgame-perfect equilibrium values and strategies by
//! backward induction over history classes `(X, Y, w)`, solving one exact
//! matrix game per class.

pub mod analysis;
pub mod error;
pub mod evaluate;
pub mod explorer;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod matrix;
pub mod model;
pub mod rational;
pub mod simulate;
pub mod solver;
pub mod strategy;

pub use error::{Error, Result};
pub use matrix::{solve_matrix, MatrixGame, MatrixSolution};
pub use model::{GameSpec, HistoryClassKey, PlayerSet, StrengthMatrix, Team, UtilityKind, UtilityTable};
pub use rational::Rational;
pub use solver::{game_value, solve, solve_with, stage_matrix, SolveOptions, SolveResult, ValueTable};
pub use strategy::{uniform_strategy, BehavioralStrategy, ClassStrategy, PureAdaptiveStrategy};
