//! Differential and Leibman degrees.

use crate::error::{Error, Result};
use crate::exactalg::{echelon_polynomials, Polynomial};
use crate::groupchart::Chart;
use crate::liecore::AlgebraElement;

/// Guard against runaway iteration on malformed input.
const MAX_DEGREE: usize = 512;

/// Least `d` such that every word of `d + 1` basis fields kills `f`
/// (`0` for `f = 0`).
pub fn differential_degree(chart: &Chart, f: &Polynomial) -> Result<usize> {
    if f.is_zero() {
        return Ok(0);
    }
    let mut layer = vec![f.clone()];
    for j in 1..=MAX_DEGREE {
        let mut next = Vec::new();
        for g in &layer {
            for field in chart.fields() {
                let h = field.apply(g)?;
                if !h.is_zero() {
                    next.push(h);
                }
            }
        }
        layer = echelon_polynomials(&next)?;
        if layer.is_empty() {
            return Ok(j - 1);
        }
    }
    Err(Error::Violation(format!(
        "differential degree of {f} exceeds {MAX_DEGREE}"
    )))
}

/// Iterated right differences `D_{g_j} ... D_{g_1} f` with fresh symbolic
/// `g_j`, in first-kind coordinates. Element `j` of the result is the
/// `j`-fold difference.
struct Differences<'a> {
    chart: &'a Chart,
    current: Polynomial,
    count: usize,
}

impl<'a> Differences<'a> {
    fn new(chart: &'a Chart, f: &Polynomial) -> Result<Self> {
        Ok(Differences {
            chart,
            current: chart.function_to_first(f)?,
            count: 0,
        })
    }

    fn advance(&mut self) -> Result<()> {
        let n = self.chart.dim();
        self.count += 1;
        let old_ring = self.current.ring().clone();
        let fresh: Vec<String> = (1..=n).map(|i| format!("g{}_{}", self.count, i)).collect();
        let ring = old_ring.extended(&fresh);
        let h = self.current.embed_prefix(&ring);
        let base = old_ring.len();
        let x: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, i)).collect();
        let g: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, base + i)).collect();
        let moved = self.chart.bch().product(&x, &g)?;
        let images: Vec<Polynomial> = (0..ring.len())
            .map(|i| if i < n { moved[i].clone() } else { Polynomial::var(&ring, i) })
            .collect();
        let shifted = h.compose(&ring, &images)?;
        self.current = &shifted - &h;
        Ok(())
    }
}

/// True iff `D_{g_1} ... D_{g_{d+1}} f` vanishes identically, with
/// `D_g f = f o R_g - f` expanded symbolically.
pub fn leibman_check(chart: &Chart, f: &Polynomial, d: usize) -> Result<bool> {
    let mut diffs = Differences::new(chart, f)?;
    for _ in 0..=d {
        if diffs.current.is_zero() {
            return Ok(true);
        }
        diffs.advance()?;
    }
    Ok(diffs.current.is_zero())
}

/// Least `d` with [`leibman_check`] true (`0` for `f = 0`).
pub fn leibman_degree(chart: &Chart, f: &Polynomial) -> Result<usize> {
    let mut diffs = Differences::new(chart, f)?;
    for j in 0..=MAX_DEGREE {
        if diffs.current.is_zero() {
            return Ok(j.saturating_sub(1));
        }
        diffs.advance()?;
    }
    Err(Error::Violation(format!("Leibman degree of {f} exceeds {MAX_DEGREE}")))
}

/// `X f = 0` for every basis element `X` of the `d`-th lower central series
/// term.
pub fn lcs_invariance(chart: &Chart, f: &Polynomial, d: usize) -> Result<bool> {
    let lcs = chart.algebra().lower_central_series()?;
    for v in lcs.term(d).basis() {
        let field = chart.field_of(&AlgebraElement::new(v.clone()));
        if !field.apply(f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn heisenberg_x1x3() {
        let c = Chart::second(&builtins::heisenberg()).unwrap();
        let f = Polynomial::parse(c.ring(), "x1*x3").unwrap();
        assert_eq!(differential_degree(&c, &f).unwrap(), 3);
        assert!(!leibman_check(&c, &f, 2).unwrap());
        assert!(leibman_check(&c, &f, 3).unwrap());
        assert_eq!(leibman_degree(&c, &f).unwrap(), 3);
    }

    #[test]
    fn constants_and_coordinates() {
        let c = Chart::first(&builtins::engel()).unwrap();
        let one = Polynomial::one(c.ring());
        assert_eq!(differential_degree(&c, &one).unwrap(), 0);
        assert!(leibman_check(&c, &one, 0).unwrap());
        let a1 = Polynomial::var(c.ring(), 0);
        assert!(leibman_check(&c, &a1, 1).unwrap());
        assert_eq!(leibman_degree(&c, &a1).unwrap(), 1);
        assert_eq!(differential_degree(&c, &Polynomial::zero(c.ring())).unwrap(), 0);
    }

    #[test]
    fn engel_affine_element() {
        let c = Chart::first(&builtins::engel()).unwrap();
        let f = Polynomial::parse(c.ring(), "6*a4 + a1*a3").unwrap();
        // word enumeration oracle: all words of length 4 vanish, some of length 3 do not
        let d = differential_degree(&c, &f).unwrap();
        assert_eq!(d, 3);
        assert_eq!(leibman_degree(&c, &f).unwrap(), d);
        assert!(lcs_invariance(&c, &f, d).unwrap());
    }
}
