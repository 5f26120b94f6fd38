//! Exact computation of horizontally polynomial functions on simply connected
//! nilpotent Lie groups, read in exponential coordinates.
//!
//! The crate is layered bottom-up:
//! - [`exactalg`]: rationals, sparse Laurent polynomials, derivations and
//!   fraction-free kernels;
//! - [`liecore`]: Lie algebras given by structure constants, lower central
//!   series, `Ad`, Hall-basis free-nilpotent algebras and homomorphisms;
//! - [`groupchart`]: truncated BCH products, exponential charts of the first
//!   and second kind, left-invariant vector fields and dilations;
//! - [`spoly`]: degree bounds, the S-polynomial space solver and the
//!   verifiers built around it.

pub mod builtins;
pub mod error;
pub mod exactalg;
pub mod groupchart;
pub mod liecore;
pub mod spoly;
pub mod suites;

pub use error::{Error, Result};
