//! Representation formulas along one-parameter subgroups and concatenated
//! flows, and Vandermonde recovery of flow polynomials.

use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::factorial;
use crate::exactalg::{Derivation, Polynomial, Rational, RationalMatrix, Ring};
use crate::groupchart::Chart;
use crate::liecore::{mul_symbolic_matrices, AlgebraElement};
use crate::spoly::bound::{degree_bound, DegreeBoundWitness};

fn power_of(field: &Derivation, f: &Polynomial, k: u32) -> Result<Polynomial> {
    let mut g = f.clone();
    for _ in 0..k {
        if g.is_zero() {
            break;
        }
        g = field.apply(&g)?;
    }
    Ok(g)
}

fn apply_word(word: &[Derivation], f: &Polynomial) -> Result<Polynomial> {
    let mut g = f.clone();
    for d in word.iter().rev() {
        g = d.apply(&g)?;
    }
    Ok(g)
}

/// Scalar multiple `t * x` of an algebra element as symbolic coordinates.
fn scaled(ring: &Arc<Ring>, t: &Polynomial, x: &AlgebraElement) -> Vec<Polynomial> {
    x.coeffs()
        .iter()
        .map(|c| if c.is_zero() { Polynomial::zero(ring) } else { t.scale(c) })
        .collect()
}

/// Field of `sum_k m[k][j] e_j`-style combination: the image of `y` under a
/// symbolic matrix, as a derivation with polynomial coefficients.
fn conjugated_field(chart: &Chart, ring: &Arc<Ring>, m: &[Vec<Polynomial>], y: &AlgebraElement) -> Derivation {
    let n = chart.dim();
    let fields: Vec<Derivation> = chart.fields().iter().map(|d| d.embed_prefix(ring)).collect();
    let weights: Vec<Polynomial> = (0..n)
        .map(|k| {
            let mut acc = Polynomial::zero(ring);
            for (j, c) in y.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc.add_scaled(&m[k][j], c);
                }
            }
            acc
        })
        .collect();
    Derivation::combination(ring, &weights, &fields)
}

/// Checks `(X_1...X_r f)(q exp(tX)) = sum_{i<k} t^i/i! (Ad X_1 ... Ad X_r X^i f)(q)`
/// with `Ad = Ad_{exp(tX)}`, `q` and `t` symbolic.
pub fn verify_representation(
    chart: &Chart,
    f: &Polynomial,
    x: &AlgebraElement,
    word: &[AlgebraElement],
    k: u32,
) -> Result<bool> {
    let x_field = chart.field_of(x);
    if !power_of(&x_field, f, k)?.is_zero() {
        return Err(Error::Hypothesis(format!("X^{k} f is not zero for f = {f}")));
    }
    let n = chart.dim();
    let ring = chart.ring().extended(&["t"]);
    let t = Polynomial::var(&ring, n);
    // Left side.
    let word_fields: Vec<Derivation> = word.iter().map(|y| chart.field_of(y)).collect();
    let g = apply_word(&word_fields, f)?;
    let q: Vec<Polynomial> = chart.to_first().iter().map(|p| p.embed_prefix(&ring)).collect();
    let moved = chart.bch().product(&q, &scaled(&ring, &t, x))?;
    let lhs = chart.evaluate_at_first(&g, &moved)?;
    // Right side.
    let ad = chart.algebra().ad_exp(&scaled(&ring, &t, x))?;
    let conj: Vec<Derivation> = word.iter().map(|y| conjugated_field(chart, &ring, &ad, y)).collect();
    let mut rhs = Polynomial::zero(&ring);
    let mut xf = f.clone();
    for i in 0..k {
        let term = apply_word(&conj, &xf.embed_prefix(&ring))?;
        let coeff = factorial(i).recip();
        rhs = &rhs + &(&term * &t.pow(i)).scale(&coeff);
        xf = x_field.apply(&xf)?;
    }
    Ok(lhs == rhs)
}

/// `P(t_1..t_l) = f(p exp(t_1 Y_1) ... exp(t_l Y_l))` with its checks.
#[derive(Clone, Debug)]
pub struct FlowRestriction {
    pub polynomial: Polynomial,
    pub degree: usize,
    pub witness: DegreeBoundWitness,
}

/// Restricts `f` (a function in `chart`) to concatenated flows from the
/// first-kind point `p`. Fails if some `Y_j^k f` is nonzero, if the degree
/// exceeds the bound, or if the explicit Ad-conjugated sum or its jet
/// truncation disagree with the direct composition.
pub fn restrict_along_flows(
    chart: &Chart,
    f: &Polynomial,
    p: &[Rational],
    ys: &[AlgebraElement],
    k: u32,
) -> Result<FlowRestriction> {
    let n = chart.dim();
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: p.len() });
    }
    if ys.is_empty() {
        return Err(Error::Input("at least one flow direction is required".into()));
    }
    for y in ys {
        if !power_of(&chart.field_of(y), f, k)?.is_zero() {
            return Err(Error::Hypothesis(format!(
                "f is not {k}-polynomial along {}",
                y.format(chart.algebra().basis_names())
            )));
        }
    }
    let l = ys.len();
    let step = chart.bch().step().max(1);
    let witness = degree_bound(k as u64, step as u64, l as u64)?;
    let t_names: Vec<String> = (1..=l).map(|j| format!("t{j}")).collect();
    let t_ring = Ring::new(&t_names);
    let mut point: Vec<Polynomial> = p.iter().map(|c| Polynomial::constant(&t_ring, c.clone())).collect();
    for (j, y) in ys.iter().enumerate() {
        let tj = Polynomial::var(&t_ring, j);
        point = chart.bch().product(&point, &scaled(&t_ring, &tj, y))?;
    }
    let polynomial = chart.evaluate_at_first(f, &point)?;
    let degree = polynomial.total_degree().unwrap_or(0).max(0) as usize;
    if witness.nu.to_usize().is_some_and(|nu| degree > nu) {
        return Err(Error::Violation(format!(
            "flow polynomial has degree {degree} above the bound {}",
            witness.nu
        )));
    }
    let explicit = explicit_flow_sum(chart, f, p, ys, k, &t_ring)?;
    if explicit != polynomial {
        return Err(Error::Violation("explicit flow sum disagrees with composition".into()));
    }
    let jet_order = witness.d.to_usize().unwrap_or(usize::MAX);
    let truncated = taylor_truncate(chart, f, p, jet_order)?;
    if explicit_flow_sum(chart, &truncated, p, ys, k, &t_ring)? != polynomial {
        return Err(Error::Violation(format!(
            "flow polynomial depends on derivatives of order above {jet_order}"
        )));
    }
    Ok(FlowRestriction {
        polynomial,
        degree,
        witness,
    })
}

/// `sum_{i_1..i_l < k} prod t_j^{i_j}/i_j! ((Ad_{g_l} Y_l)^{i_l} ... (Ad_{g_1} Y_1)^{i_1} f)(p)`
/// with `g_j = exp(t_1 Y_1) ... exp(t_{j-1} Y_{j-1})`.
fn explicit_flow_sum(
    chart: &Chart,
    f: &Polynomial,
    p: &[Rational],
    ys: &[AlgebraElement],
    k: u32,
    t_ring: &Arc<Ring>,
) -> Result<Polynomial> {
    let n = chart.dim();
    let l = ys.len();
    let ring = chart.ring().extended(&t_ring.vars().iter().map(|v| v.name.clone()).collect::<Vec<_>>());
    let algebra = chart.algebra();
    let mut ad: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Polynomial::one(&ring) } else { Polynomial::zero(&ring) }).collect())
        .collect();
    let mut acc = f.embed_prefix(&ring);
    for (j, y) in ys.iter().enumerate() {
        let z = conjugated_field(chart, &ring, &ad, y);
        let tj = Polynomial::var(&ring, n + j);
        let mut next = Polynomial::zero(&ring);
        let mut power = acc.clone();
        for i in 0..k {
            next = &next + &(&power * &tj.pow(i)).scale(&factorial(i).recip());
            power = z.apply(&power)?;
        }
        acc = next;
        if j + 1 < l {
            let step = algebra.ad_exp(&scaled(&ring, &tj, y))?;
            ad = mul_symbolic_matrices(&ad, &step);
        }
    }
    let x = chart.rational_point(p);
    let images: Vec<Polynomial> = (0..ring.len())
        .map(|i| {
            if i < n {
                Polynomial::constant(t_ring, x[i].clone())
            } else {
                Polynomial::var(t_ring, i - n)
            }
        })
        .collect();
    acc.compose(t_ring, &images)
}

/// Taylor polynomial of `f` at the first-kind point `p`, in chart
/// coordinates, truncated at total order `order`.
pub fn taylor_truncate(chart: &Chart, f: &Polynomial, p: &[Rational], order: usize) -> Result<Polynomial> {
    let ring = chart.ring();
    let x = chart.rational_point(p);
    let shift = |sign: i64| -> Vec<Polynomial> {
        (0..ring.len())
            .map(|i| {
                let c = Polynomial::constant(ring, &x[i] * Rational::from_integer(sign.into()));
                &Polynomial::var(ring, i) + &c
            })
            .collect()
    };
    let centered = f.compose(ring, &shift(1))?;
    let kept: Vec<_> = centered
        .terms()
        .iter()
        .filter(|(m, _)| m.total_degree() <= order as i64)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    Polynomial::from_terms(ring, kept)?.compose(ring, &shift(-1))
}

/// `f(p exp(tX))` as a polynomial in `t`, for a first-kind rational point `p`.
pub fn flow_polynomial(chart: &Chart, f: &Polynomial, p: &[Rational], x: &AlgebraElement) -> Result<Polynomial> {
    let t_ring = Ring::new(&["t"]);
    let t = Polynomial::var(&t_ring, 0);
    let point: Vec<Polynomial> = p.iter().map(|c| Polynomial::constant(&t_ring, c.clone())).collect();
    let moved = chart.bch().product(&point, &scaled(&t_ring, &t, x))?;
    chart.evaluate_at_first(f, &moved)
}

/// Taylor coefficients `X^j f (p) / j!` for `j < k`.
pub fn taylor_coefficients(
    chart: &Chart,
    f: &Polynomial,
    p: &[Rational],
    x: &AlgebraElement,
    k: u32,
) -> Result<Vec<Rational>> {
    let field = chart.field_of(x);
    let point: Vec<(usize, Rational)> = chart.rational_point(p).into_iter().enumerate().collect();
    let mut g = f.clone();
    let mut out = Vec::with_capacity(k as usize);
    for j in 0..k {
        out.push(g.evaluate_partial(&point).constant_term() * factorial(j).recip());
        g = field.apply(&g)?;
    }
    Ok(out)
}

/// Coefficients `c_0..c_{k-1}` of the degree-`<k` polynomial through `k`
/// samples with distinct times.
pub fn vandermonde_fit(samples: &[(Rational, Rational)], k: usize) -> Result<Vec<Rational>> {
    if samples.len() != k {
        return Err(Error::Input(format!("need exactly {k} samples, got {}", samples.len())));
    }
    for (i, (a, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::RepeatedSample(crate::exactalg::rational::format_rational(a)));
        }
    }
    let rows: Vec<Vec<Rational>> = samples
        .iter()
        .map(|(t, _)| {
            let mut row = Vec::with_capacity(k);
            let mut pw = Rational::from_integer(1.into());
            for _ in 0..k {
                row.push(pw.clone());
                pw *= t;
            }
            row
        })
        .collect();
    let v = RationalMatrix::from_rows(k, rows)?;
    let values: Vec<Rational> = samples.iter().map(|(_, y)| y.clone()).collect();
    v.solve(&values)
        .ok_or_else(|| Error::Violation("Vandermonde matrix is singular".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::exactalg::{int, rat};

    fn heis() -> (Chart, Polynomial) {
        let c = Chart::second(&builtins::heisenberg()).unwrap();
        let f = Polynomial::parse(c.ring(), "x1*x3").unwrap();
        (c, f)
    }

    #[test]
    fn representation_heisenberg() {
        let (c, f) = heis();
        let a = c.algebra().clone();
        assert!(verify_representation(&c, &f, &a.basis_element(0), &[a.basis_element(1)], 2).unwrap());
        assert!(verify_representation(&c, &f, &a.basis_element(0), &[], 2).unwrap());
        assert!(matches!(
            verify_representation(&c, &f, &a.basis_element(1), &[], 1),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn flows_heisenberg() {
        let (c, f) = heis();
        let a = c.algebra().clone();
        let e = vec![int(0); 3];
        let r = restrict_along_flows(&c, &f, &e, &[a.basis_element(0), a.basis_element(1)], 2).unwrap();
        assert!(r.degree <= 3);
        let r = restrict_along_flows(&c, &f, &[int(1), rat(-1, 2), int(3)], &[a.basis_element(0)], 2).unwrap();
        assert!(r.degree <= 1);
        let one = Polynomial::one(c.ring());
        let r = restrict_along_flows(&c, &one, &e, &[a.basis_element(0)], 1).unwrap();
        assert!(r.polynomial.is_constant());
    }

    #[test]
    fn vandermonde_basic() {
        let s: Vec<_> = [1, 2, 3].iter().map(|&t| (int(t), int(1))).collect();
        assert_eq!(vandermonde_fit(&s, 3).unwrap(), vec![int(1), int(0), int(0)]);
        let s: Vec<_> = [1, 2, 3].iter().map(|&t| (int(t), int(t * t))).collect();
        assert_eq!(vandermonde_fit(&s, 3).unwrap(), vec![int(0), int(0), int(1)]);
        let s = vec![(int(1), int(1)), (int(1), int(2))];
        assert!(matches!(vandermonde_fit(&s, 2), Err(Error::RepeatedSample(_))));
    }

    #[test]
    fn vandermonde_against_taylor() {
        let (c, f) = heis();
        let x2 = c.algebra().basis_element(1);
        let e = vec![int(0); 3];
        let poly = flow_polynomial(&c, &f, &e, &x2).unwrap();
        let samples: Vec<_> = [1, 2]
            .iter()
            .map(|&t| (int(t), poly.evaluate_partial(&[(0, int(t))]).constant_term()))
            .collect();
        let fit = vandermonde_fit(&samples, 2).unwrap();
        assert_eq!(fit, taylor_coefficients(&c, &f, &e, &x2, 2).unwrap());
    }
}
