//! Structural analysis: player classification, abandonment and recruiting,
//! the threshold games, and mechanical checks of the equilibrium results.

pub mod abandon;
pub mod checks;
pub mod classify;
pub mod gamma;
pub mod report;
pub mod suites;

pub use abandon::{abandon, abandonment_delta, add_dominated};
pub use checks::{
    check_lemma2, check_lemma5, check_lemma6, check_theorem1, check_theorem2, check_theorem3, check_theorem4,
    CheckBudget,
};
pub use classify::{classify, PlayerClassification, PlayerFlags, TeamClassification};
pub use gamma::{gamma_game, gamma_value, GammaParams};
pub use report::{Claim, Report};
pub use suites::{default_suite_config, SuiteConfig};
