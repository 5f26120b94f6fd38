//! Homomorphisms out of free nilpotent algebras.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::RationalMatrix;
use crate::liecore::algebra::{AlgebraElement, LieAlgebra};
use crate::liecore::hall::{FreeNilpotent, HallNode};
use crate::liecore::subspace::Subspace;

/// Linear map between algebras; column `j` is the image of source basis `j`.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    pub matrix: RationalMatrix,
}

impl AlgebraHom {
    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.matrix.mul_vec(x.coeffs()))
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target_dim()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.source_dim(), self.matrix.kernel_basis())
    }

    /// `phi([e_i, e_j]) == [phi e_i, phi e_j]` for all basis pairs.
    pub fn respects_brackets(&self, source: &LieAlgebra, target: &LieAlgebra) -> Result<bool> {
        let n = source.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&source.bracket(&source.basis_element(i), &source.basis_element(j))?);
                let rhs = target.bracket(
                    &self.apply(&source.basis_element(i)),
                    &self.apply(&source.basis_element(j)),
                )?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Linear right inverse `psi` with `phi psi = id`, supported on a set of
    /// source basis elements whose images form a basis of the target.
    pub fn right_inverse(&self) -> Result<RationalMatrix> {
        let (rref, pivots) = self.matrix.rref();
        let _ = rref;
        let m = self.target_dim();
        if pivots.len() != m {
            return Err(Error::Hypothesis(format!(
                "map has rank {} but target dimension {m}",
                pivots.len()
            )));
        }
        let mut square = RationalMatrix::zeros(m, m);
        for (c, &p) in pivots.iter().enumerate() {
            for r in 0..m {
                square.set(r, c, self.matrix.get(r, p).clone());
            }
        }
        let inv = square
            .inverse()
            .ok_or_else(|| Error::Hypothesis("pivot block is singular".into()))?;
        let mut psi = RationalMatrix::zeros(self.source_dim(), m);
        for (c, &p) in pivots.iter().enumerate() {
            for k in 0..m {
                psi.set(p, k, inv.get(c, k).clone());
            }
        }
        Ok(psi)
    }
}

/// Extends `X_i -> images[i]` on generators of a free nilpotent algebra to a
/// Lie homomorphism into `target`.
pub fn extend_hom(free: &FreeNilpotent, target: &LieAlgebra, images: &[AlgebraElement]) -> Result<AlgebraHom> {
    if images.len() != free.m {
        return Err(Error::DimensionMismatch {
            expected: free.m,
            found: images.len(),
        });
    }
    let step = target.step()?;
    if step > free.s {
        return Err(Error::StepTooLarge {
            target: step,
            free: free.s,
        });
    }
    let mut columns: Vec<AlgebraElement> = Vec::with_capacity(free.dim());
    for node in &free.nodes {
        let img = match *node {
            HallNode::Generator(g) => images[g].clone(),
            HallNode::Bracket(u, v) => target.bracket(&columns[u], &columns[v])?,
        };
        columns.push(img);
    }
    let mut matrix = RationalMatrix::zeros(target.dim(), free.dim());
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col.coeffs().iter().enumerate() {
            if !c.is_zero() {
                matrix.set(k, j, c.clone());
            }
        }
    }
    Ok(AlgebraHom { matrix })
}
