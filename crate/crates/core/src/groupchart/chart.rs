//! Exponential charts of the first and second kind.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Derivation, Polynomial, Rational, RationalMatrix, Ring};
use crate::groupchart::bch::{bernoulli_series, Bch};
use crate::liecore::{homogeneous_weight, AlgebraElement, LieAlgebra, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub enum ChartKind {
    /// `exp(a1 X1 + ... + an Xn)`.
    First,
    /// `exp(xn Bn) ... exp(x1 B1)` for an ordered basis `B`.
    Second(Vec<AlgebraElement>),
}

/// A coordinate system on the group together with its conversions to first
/// kind and the left-invariant fields written in it.
#[derive(Clone, Debug)]
pub struct Chart {
    algebra: LieAlgebra,
    kind: ChartKind,
    bch: Bch,
    ring: Arc<Ring>,
    first_ring: Arc<Ring>,
    to_first: Vec<Polynomial>,
    from_first: Vec<Polynomial>,
    weights: Option<Vec<u32>>,
    fields: Vec<Derivation>,
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn vars(ring: &Arc<Ring>) -> Vec<Polynomial> {
    (0..ring.len()).map(|i| Polynomial::var(ring, i)).collect()
}

impl Chart {
    pub fn first(algebra: &LieAlgebra) -> Result<Self> {
        Self::build(algebra, ChartKind::First)
    }

    /// Second kind with respect to the algebra's own basis order.
    pub fn second(algebra: &LieAlgebra) -> Result<Self> {
        let basis = (0..algebra.dim()).map(|i| algebra.basis_element(i)).collect();
        Self::build(algebra, ChartKind::Second(basis))
    }

    pub fn second_with_basis(algebra: &LieAlgebra, basis: Vec<AlgebraElement>) -> Result<Self> {
        Self::build(algebra, ChartKind::Second(basis))
    }

    pub fn build(algebra: &LieAlgebra, kind: ChartKind) -> Result<Self> {
        let bch = Bch::new(algebra)?;
        let n = algebra.dim();
        let first_ring = Ring::new(&names("a", n));
        let (ring, to_first, from_first, weights) = match &kind {
            ChartKind::First => {
                let id = vars(&first_ring);
                (first_ring.clone(), id.clone(), id, algebra.weights().map(<[u32]>::to_vec))
            }
            ChartKind::Second(basis) => {
                if basis.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: basis.len(),
                    });
                }
                let span = Subspace::span(n, basis.iter().map(|b| b.coeffs().to_vec()));
                if span.dim() < n {
                    return Err(Error::ChartNotSpanning { rank: span.dim(), dim: n });
                }
                let ring = Ring::new(&names("x", n));
                let to_first = second_to_first(&bch, &ring, basis)?;
                let from_first = first_to_second(&bch, &first_ring, &ring, basis, &to_first)?;
                let weights = algebra.weights().and_then(|w| {
                    basis
                        .iter()
                        .map(|b| homogeneous_weight(w, b))
                        .collect::<Option<Vec<u32>>>()
                });
                (ring, to_first, from_first, weights)
            }
        };
        let mut chart = Chart {
            algebra: algebra.clone(),
            kind,
            bch,
            ring,
            first_ring,
            to_first,
            from_first,
            weights,
            fields: Vec::new(),
        };
        chart.fields = chart.compute_fields()?;
        Ok(chart)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn kind(&self) -> &ChartKind {
        &self.kind
    }

    pub fn is_first_kind(&self) -> bool {
        matches!(self.kind, ChartKind::First)
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            ChartKind::First => "first",
            ChartKind::Second(_) => "second",
        }
    }

    pub fn bch(&self) -> &Bch {
        &self.bch
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Coordinate ring of the chart.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn first_ring(&self) -> &Arc<Ring> {
        &self.first_ring
    }

    /// First-kind coordinates as polynomials in the chart coordinates.
    pub fn to_first(&self) -> &[Polynomial] {
        &self.to_first
    }

    /// Chart coordinates as polynomials in the first-kind coordinates.
    pub fn from_first(&self) -> &[Polynomial] {
        &self.from_first
    }

    /// Weight of each chart coordinate when every chart basis vector is
    /// homogeneous.
    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    /// Left-invariant fields of the algebra basis, in chart coordinates.
    pub fn fields(&self) -> &[Derivation] {
        &self.fields
    }

    /// Left-invariant field of an arbitrary algebra element.
    pub fn field_of(&self, x: &AlgebraElement) -> Derivation {
        let weights: Vec<Polynomial> = x
            .coeffs()
            .iter()
            .map(|c| Polynomial::constant(&self.ring, c.clone()))
            .collect();
        Derivation::combination(&self.ring, &weights, &self.fields)
    }

    /// Rewrites a function of the chart coordinates as a function of the
    /// first-kind coordinates.
    pub fn function_to_first(&self, f: &Polynomial) -> Result<Polynomial> {
        f.compose(&self.first_ring, &self.from_first)
    }

    /// Rewrites a function of the first-kind coordinates in this chart.
    pub fn function_from_first(&self, f: &Polynomial) -> Result<Polynomial> {
        f.compose(&self.ring, &self.to_first)
    }

    /// Chart coordinates of a point given in first-kind coordinates over any ring.
    pub fn point_from_first(&self, a: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let ring = a
            .first()
            .map(|p| p.ring().clone())
            .ok_or(Error::DimensionMismatch { expected: self.dim(), found: 0 })?;
        self.from_first.iter().map(|p| p.compose(&ring, a)).collect()
    }

    /// First-kind coordinates of a point given in chart coordinates over any ring.
    pub fn point_to_first(&self, x: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let ring = x
            .first()
            .map(|p| p.ring().clone())
            .ok_or(Error::DimensionMismatch { expected: self.dim(), found: 0 })?;
        self.to_first.iter().map(|p| p.compose(&ring, x)).collect()
    }

    /// `f` evaluated at a point given in first-kind coordinates; `f` lives in
    /// the chart ring and the result in the ring of `a`.
    pub fn evaluate_at_first(&self, f: &Polynomial, a: &[Polynomial]) -> Result<Polynomial> {
        let x = self.point_from_first(a)?;
        let ring = x[0].ring().clone();
        f.compose(&ring, &x)
    }

    /// Chart coordinates of a rational point given in first-kind coordinates.
    pub fn rational_point(&self, a: &[Rational]) -> Vec<Rational> {
        let values: Vec<(usize, Rational)> = a.iter().cloned().enumerate().collect();
        self.from_first
            .iter()
            .map(|p| p.evaluate_partial(&values).constant_term())
            .collect()
    }

    fn compute_fields(&self) -> Result<Vec<Derivation>> {
        let n = self.dim();
        let series = bernoulli_series(self.bch.step().max(1));
        // d/de log(exp(A) exp(eX)) at e = 0 is sum_m b_m ad_A^m X.
        let a = self.to_first.clone();
        let jacobian: Vec<Vec<Polynomial>> = if self.is_first_kind() {
            Vec::new()
        } else {
            self.from_first
                .iter()
                .map(|p| {
                    (0..n)
                        .map(|j| p.partial(j).compose(&self.ring, &self.to_first))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?
        };
        let mut fields = Vec::with_capacity(n);
        for i in 0..n {
            let mut term: Vec<Polynomial> = self.algebra.basis_element(i).to_symbolic(&self.ring);
            let mut velocity = term.clone();
            for b in series.iter().skip(1) {
                term = self.algebra.bracket_symbolic(&a, &term)?;
                if term.iter().all(Polynomial::is_zero) {
                    break;
                }
                for (v, t) in velocity.iter_mut().zip(&term) {
                    v.add_scaled(t, b);
                }
            }
            let coeffs = if self.is_first_kind() {
                velocity
            } else {
                jacobian
                    .iter()
                    .map(|row| {
                        row.iter().zip(&velocity).fold(Polynomial::zero(&self.ring), |acc, (j, v)| {
                            if j.is_zero() || v.is_zero() {
                                acc
                            } else {
                                &acc + &(j * v)
                            }
                        })
                    })
                    .collect()
            };
            fields.push(Derivation::new(&self.ring, coeffs)?);
        }
        Ok(fields)
    }
}

fn second_to_first(bch: &Bch, ring: &Arc<Ring>, basis: &[AlgebraElement]) -> Result<Vec<Polynomial>> {
    let n = basis.len();
    let scaled = |i: usize| -> Vec<Polynomial> {
        let x = Polynomial::var(ring, i);
        basis[i].coeffs().iter().map(|c| x.scale(c)).collect()
    };
    let mut p = scaled(n - 1);
    for i in (0..n - 1).rev() {
        p = bch.product(&p, &scaled(i))?;
    }
    Ok(p)
}

/// Inverts the second-kind map by Newton-free fixed-point iteration, which
/// terminates exactly when the basis is adapted to the lower central series.
fn first_to_second(
    bch: &Bch,
    first_ring: &Arc<Ring>,
    ring: &Arc<Ring>,
    basis: &[AlgebraElement],
    to_first: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let n = basis.len();
    let mut b = RationalMatrix::zeros(n, n);
    for (j, e) in basis.iter().enumerate() {
        for (i, c) in e.coeffs().iter().enumerate() {
            b.set(i, j, c.clone());
        }
    }
    let b_inv = b.inverse().ok_or(Error::ChartNotSpanning { rank: b.rank(), dim: n })?;
    let apply_inv = |v: &[Polynomial]| -> Vec<Polynomial> {
        (0..n)
            .map(|i| {
                let mut acc = Polynomial::zero(first_ring);
                for (j, vj) in v.iter().enumerate() {
                    let c = b_inv.get(i, j);
                    if !c.is_zero() {
                        acc.add_scaled(vj, c);
                    }
                }
                acc
            })
            .collect()
    };
    let a = vars(first_ring);
    let mut x = apply_inv(&a);
    let _ = ring;
    for _ in 0..=bch.step() + 1 {
        let image: Vec<Polynomial> = to_first
            .iter()
            .map(|p| p.compose(first_ring, &x))
            .collect::<Result<_>>()?;
        let residual: Vec<Polynomial> = a.iter().zip(&image).map(|(u, v)| u - v).collect();
        if residual.iter().all(Polynomial::is_zero) {
            return Ok(x);
        }
        let correction = apply_inv(&residual);
        x = x.iter().zip(&correction).map(|(u, v)| u + v).collect();
    }
    Err(Error::ChartNotAdapted)
}

/// `f(delta_lambda x)`: each chart variable `x_i` becomes `lambda^{w_i} x_i`.
/// `f` and `lambda` share a ring whose leading variables are the chart's.
pub fn dilate(chart: &Chart, lambda: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    if !chart.algebra().is_stratified() {
        return Err(Error::NotStratified(chart.algebra().name().to_string()));
    }
    let weights = chart
        .weights()
        .ok_or_else(|| Error::NotStratified(chart.algebra().name().to_string()))?;
    let ring = f.ring().clone();
    let images: Vec<Polynomial> = (0..ring.len())
        .map(|i| {
            let v = Polynomial::var(&ring, i);
            if i < weights.len() {
                &v * &lambda.pow(weights[i])
            } else {
                v
            }
        })
        .collect();
    f.compose(&ring, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::exactalg::rat;

    fn p(ring: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(ring, s).unwrap()
    }

    #[test]
    fn engel_conversion() {
        let c = Chart::second(&builtins::engel()).unwrap();
        let r = c.first_ring();
        let expected = ["a1", "a2", "a3 + 1/2*a1*a2", "a4 + 1/2*a1*a3 + 1/6*a1^2*a2"];
        for (got, want) in c.from_first().iter().zip(expected) {
            assert_eq!(got, &p(r, want));
        }
    }

    #[test]
    fn heisenberg_fields() {
        let c = Chart::second(&builtins::heisenberg()).unwrap();
        let r = c.ring();
        assert_eq!(c.fields()[0], Derivation::partial(r, 0));
        assert_eq!(c.fields()[1], Derivation::from_strs(r, &[("x2", "1"), ("x3", "x1")]).unwrap());
        assert_eq!(c.fields()[2], Derivation::partial(r, 2));
    }

    #[test]
    fn engel_and_f23_fields() {
        let c = Chart::second(&builtins::engel()).unwrap();
        let r = c.ring();
        assert_eq!(
            c.fields()[1],
            Derivation::from_strs(r, &[("x2", "1"), ("x3", "x1"), ("x4", "x1^2/2")]).unwrap()
        );
        assert_eq!(c.fields()[2], Derivation::from_strs(r, &[("x3", "1"), ("x4", "x1")]).unwrap());
        let c = Chart::second(&builtins::f23()).unwrap();
        let r = c.ring();
        assert_eq!(c.fields()[0], Derivation::partial(r, 0));
        assert_eq!(
            c.fields()[1],
            Derivation::from_strs(r, &[("x2", "1"), ("x3", "-x1"), ("x4", "x1^2/2"), ("x5", "x1*x2")]).unwrap()
        );
        assert_eq!(
            c.fields()[2],
            Derivation::from_strs(r, &[("x3", "1"), ("x4", "-x1"), ("x5", "-x2")]).unwrap()
        );
    }

    #[test]
    fn abelian_is_trivial() {
        let a = LieAlgebra::abelian(3);
        let c = Chart::second(&a).unwrap();
        let first = Ring::new(&["a1", "a2", "a3"]);
        for i in 0..3 {
            assert_eq!(c.from_first()[i], Polynomial::var(&first, i));
            assert_eq!(c.fields()[i], Derivation::partial(c.ring(), i));
        }
    }

    #[test]
    fn non_spanning_basis() {
        let h = builtins::heisenberg();
        let basis = vec![h.basis_element(0), h.basis_element(1), h.basis_element(1)];
        assert_eq!(
            Chart::second_with_basis(&h, basis).unwrap_err(),
            Error::ChartNotSpanning { rank: 2, dim: 3 }
        );
    }

    #[test]
    fn non_adapted_basis_still_converts_or_reports() {
        // X3 first is still adapted (it spans the derived term); reordering
        // generators is harmless.
        let h = builtins::heisenberg();
        let basis = vec![h.basis_element(1), h.basis_element(0), h.basis_element(2)];
        let c = Chart::second_with_basis(&h, basis).unwrap();
        let back: Vec<Polynomial> = c.point_to_first(c.from_first()).unwrap();
        for (i, b) in back.iter().enumerate() {
            assert_eq!(b, &Polynomial::var(c.first_ring(), i));
        }
    }

    #[test]
    fn dilation_on_first_kind() {
        let c = Chart::first(&builtins::engel()).unwrap();
        let ring = c.ring().extended(&["lam"]);
        let f = p(&ring, "6*a4 + a1*a3");
        let lam = p(&ring, "lam");
        // a4 and a1*a3 both have weight 3
        assert_eq!(dilate(&c, &lam, &f).unwrap(), &f * &lam.pow(3));
        let one = Polynomial::constant(&ring, rat(1, 1));
        assert_eq!(dilate(&c, &one, &f).unwrap(), f);
    }
}
