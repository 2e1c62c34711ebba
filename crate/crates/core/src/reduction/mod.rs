//! Discrete verification of the reduction identities and entropy balances:
//! residual fields, norms, refinement orders and mutation controls.

mod checks;
mod convergence;
mod manufactured;
mod report;
mod suite;

pub use checks::{
    check_dissipation, check_entropy_lemmas, check_kinematic, check_pressure, check_stress, check_w_equiv,
    entropy_reports, EntropyPart, Mutation,
};
pub use convergence::{attach_orders, convergence_order, final_order, refinement_grids};
pub use manufactured::Manufactured;
pub use report::{summary_table, Order, ResidualReport, TermNorm, EXACT_RELATIVE};
pub use suite::{passes, Criterion, Identity, Thresholds};

#[cfg(test)]
mod tests;
