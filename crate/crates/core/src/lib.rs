//! Declarative optimization with two interchangeable backends.
//!
//! A single [`model::Model`] (integer or continuous variables, expression-tree
//! constraints, optional objective) can be solved by
//!
//! * [`fd`], a bounds-consistency propagation solver with depth-first
//!   labeling and branch-and-bound minimization, or
//! * [`lp`], a simplex solver with branch-and-bound for integer variables,
//!   once the model is linear.
//!
//! [`problems`] contains four classic Code Jam problems modeled for both
//! backends, each paired with a hand-written algorithm and brute-force
//! enumerations that serve as independent oracles. [`gcj`] reads and writes the
//! contest's file formats and generates seeded instances; [`cli`] ties it all
//! together behind the `dualsolve` binary.

pub mod cli;
pub mod fd;
pub mod gcj;
pub mod lp;
pub mod model;
pub mod problems;
