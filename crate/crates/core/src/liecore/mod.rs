//! Nilpotent Lie algebras: structure constants, series, free algebras.

pub mod algebra;
pub mod hall;
pub mod hom;
pub mod subspace;

pub use algebra::{
    apply_symbolic_matrix, homogeneous_weight, mul_symbolic_matrices, AlgebraElement, Closure, LcsChain, LieAlgebra, Validation,
};
pub use hall::{witt_dimension, FreeNilpotent, HallNode};
pub use hom::{extend_hom, AlgebraHom};
pub use subspace::Subspace;
