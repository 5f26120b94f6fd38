//! Canonical bases for spans of polynomials.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::matrix::RationalMatrix;
use crate::exactalg::poly::{same_ring, Polynomial};
use crate::exactalg::rational::Rational;
use crate::exactalg::ring::{Monomial, Ring};

/// Reduced echelon basis of `span(polys)`, columns ordered by decreasing
/// graded-lex monomial. Each element is monic in its leading monomial and the
/// leading monomials appear in no other element. The list is returned sorted
/// by increasing leading monomial.
pub fn echelon_polynomials(polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    for p in polys {
        if !same_ring(p.ring(), &ring) {
            return Err(Error::RingMismatch("echelon input spans several rings".into()));
        }
    }
    let monomials: Vec<Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .rev()
        .collect();
    let matrix = coefficient_matrix(polys, &monomials);
    let (reduced, _) = matrix.rref();
    let mut out: Vec<Polynomial> = reduced
        .row_vectors()
        .iter()
        .map(|row| row_to_polynomial(&ring, row, &monomials))
        .collect();
    out.reverse();
    Ok(out)
}

pub(crate) fn coefficient_matrix(polys: &[Polynomial], monomials: &[Monomial]) -> RationalMatrix {
    let rows = polys
        .iter()
        .map(|p| monomials.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    RationalMatrix::from_rows(monomials.len(), rows).expect("consistent widths")
}

pub(crate) fn row_to_polynomial(ring: &Arc<Ring>, row: &[Rational], monomials: &[Monomial]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        row.iter()
            .zip(monomials)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (m.clone(), c.clone())),
    )
    .expect("monomials come from the ring")
}

/// Subspace equality of two spans.
pub fn same_span(a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    Ok(echelon_polynomials(a)? == echelon_polynomials(b)?)
}

/// Whether `p` lies in `span(basis)`.
pub fn in_span(p: &Polynomial, basis: &[Polynomial]) -> Result<bool> {
    let mut all = basis.to_vec();
    let before = echelon_polynomials(&all)?.len();
    all.push(p.clone());
    Ok(echelon_polynomials(&all)?.len() == before)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_ignores_presentation() {
        let r = Ring::new(&["x1", "x2", "x3"]);
        let a: Vec<Polynomial> = ["1", "x1", "x2", "x3 - 1/2*x1*x2"]
            .iter()
            .map(|s| Polynomial::parse(&r, s).unwrap())
            .collect();
        let b: Vec<Polynomial> = ["2*x3 - x1*x2 + 4", "x1 + x2", "x1 - x2", "7"]
            .iter()
            .map(|s| Polynomial::parse(&r, s).unwrap())
            .collect();
        assert!(same_span(&a, &b).unwrap());
        let e = echelon_polynomials(&a).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e[3].to_string(), "x1*x2 - 2*x3");
        assert!(in_span(&Polynomial::parse(&r, "x1 + 3").unwrap(), &a).unwrap());
        assert!(!in_span(&Polynomial::parse(&r, "x3").unwrap(), &a).unwrap());
    }
}
