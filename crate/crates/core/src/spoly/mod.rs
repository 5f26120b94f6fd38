//! S-polynomial functions: degree bounds, the solver and its verifiers.

pub mod bound;
pub mod counterexample;
pub mod degree;
pub mod flows;
pub mod problem;
pub mod solver;

pub use bound::{degree_bound, DegreeBoundWitness};
pub use degree::{differential_degree, lcs_invariance, leibman_check, leibman_degree};
pub use problem::{Condition, ConditionSystem, Mode, SPolyProblem};
pub use solver::{spoly_basis, spoly_basis_with_degree, verify_soundness, Certificate, Route, SPolyBasis};
pub use flows::{
    flow_polynomial, restrict_along_flows, taylor_coefficients, taylor_truncate, vandermonde_fit,
    verify_representation, FlowRestriction,
};
pub use counterexample::{verify_builtin_counterexample, CounterexampleReport, IdentityCheck};
