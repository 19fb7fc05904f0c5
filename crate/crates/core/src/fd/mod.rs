//! Finite-domain backend: bounds-consistency propagation over integer
//! intervals, depth-first labeling and branch-and-bound minimization.
//!
//! A [`Model`] is first flattened into primitive propagators (linear
//! relations, binary products, absolute values and reified linear
//! comparisons) over the model variables plus auxiliary variables introduced
//! for nested sub-expressions. Domains are plain intervals; holes are never
//! represented.

mod compile;
mod propagate;
mod search;

pub use compile::FdSolver;
pub use propagate::{PropOutcome, PropState};
pub use search::{BnbOptions, BnbOutcome, BnbStrategy, SearchOutcome, SearchStats};

use thiserror::Error;

use crate::model::{Assignment, Domain, Model, ModelError, VarId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FdError {
    #[error("unsupported model: {0}")]
    Unsupported(String),
    #[error("interval bound of `{0}` exceeds the supported magnitude 2^62")]
    Overflow(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Runs root propagation on `model` and reports the narrowed domains of the
/// model variables.
pub fn propagate(model: &Model) -> Result<PropOutcome, FdError> {
    let solver = FdSolver::new(model)?;
    let mut state = solver.root_state();
    Ok(solver.propagate(&mut state))
}

/// First solution of `model` in depth-first, min-value-first order, labeling
/// `order` first and then the remaining model variables in declaration order.
pub fn label(model: &Model, order: &[VarId]) -> Result<SearchOutcome, FdError> {
    FdSolver::new(model)?.label(order)
}

/// Minimizes `opts.cost_var` over all solutions of `model`.
pub fn bb_minimize(model: &Model, opts: &BnbOptions) -> Result<BnbOutcome, FdError> {
    FdSolver::new(model)?.bb_minimize(opts)
}

/// Narrowed domains of the model variables, in declaration order.
pub fn model_domains(state: &PropState, model: &Model) -> Vec<Domain> {
    model.vars().map(|v| state.domain(v.index())).collect()
}

pub(crate) fn to_assignment(state: &PropState, n: usize) -> Assignment<i64> {
    Assignment::from_values((0..n).map(|i| {
        let d = state.domain(i);
        debug_assert!(d.is_fixed());
        d.lo()
    }))
}
