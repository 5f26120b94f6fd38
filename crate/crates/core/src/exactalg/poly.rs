//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{abs_is_one, format_rational, Rational};
use crate::exactalg::ring::{Monomial, Ring, TermMap};

pub(crate) fn terms_add(acc: &mut TermMap, other: &TermMap, factor: &Rational) {
    for (m, c) in other {
        let delta = c * factor;
        match acc.get_mut(m) {
            Some(existing) => {
                *existing += delta;
                if existing.is_zero() {
                    acc.remove(m);
                }
            }
            None => {
                if !delta.is_zero() {
                    acc.insert(m.clone(), delta);
                }
            }
        }
    }
}

pub(crate) fn terms_scale(terms: &TermMap, factor: &Rational) -> TermMap {
    if factor.is_zero() {
        return TermMap::new();
    }
    terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect()
}

pub(crate) fn terms_mul(a: &TermMap, b: &TermMap) -> TermMap {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = TermMap::new();
    for (ma, ca) in small {
        for (mb, cb) in large {
            let m = ma.mul(mb);
            let c = ca * cb;
            match out.get_mut(&m) {
                Some(existing) => {
                    *existing += c;
                    if existing.is_zero() {
                        out.remove(&m);
                    }
                }
                None => {
                    out.insert(m, c);
                }
            }
        }
    }
    out
}

/// Element of a ring described by [`Ring`]. Terms are kept in graded-lex
/// order with no zero coefficients, so structural equality is mathematical
/// equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: TermMap,
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: TermMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, value: Rational) -> Self {
        let mut terms = TermMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(ring.len()), value);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), index), Rational::one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::Unknown(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, monomial: Monomial, coefficient: Rational) -> Self {
        let mut terms = TermMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from raw terms, validating exponent vectors and
    /// dropping zero coefficients.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut acc = TermMap::new();
        for (m, c) in terms {
            ring.check_monomial(&m)?;
            let mut single = TermMap::new();
            single.insert(m, c);
            terms_add(&mut acc, &single, &Rational::one());
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: acc,
        })
    }

    pub(crate) fn from_term_map(ring: &Arc<Ring>, terms: TermMap) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Parses an expression like `x2*x4 - 1/2*x3^2` over `ring`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        let terms = crate::exactalg::parse::parse_terms(ring, text)?;
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &TermMap {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ring.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    /// Total degree restricted to a subset of variables.
    pub fn degree_in(&self, vars: &[usize]) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exponent(v) as i64).sum())
            .max()
    }

    fn check_ring(&self, other: &Polynomial, op: &str) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "cannot {op} polynomials over [{}] and [{}]",
                ring_names(&self.ring),
                ring_names(&other.ring)
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other, "add")?;
        let mut terms = self.terms.clone();
        terms_add(&mut terms, &other.terms, &Rational::one());
        Ok(Self::from_term_map(&self.ring, terms))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other, "subtract")?;
        let mut terms = self.terms.clone();
        terms_add(&mut terms, &other.terms, &-Rational::one());
        Ok(Self::from_term_map(&self.ring, terms))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other, "multiply")?;
        Ok(Self::from_term_map(
            &self.ring,
            terms_mul(&self.terms, &other.terms),
        ))
    }

    /// In-place `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, factor: &Rational) {
        self.check_ring(other, "add").unwrap_or_else(|e| panic!("{e}"));
        terms_add(&mut self.terms, &other.terms, factor);
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Self::from_term_map(&self.ring, terms_scale(&self.terms, factor))
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative in variable `index`, treating every other
    /// variable (generators included) as an independent symbol.
    pub fn partial(&self, index: usize) -> Polynomial {
        let mut terms = TermMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e != 0 {
                let m2 = m.shifted(index, -1);
                let c2 = c * Rational::from_integer(e.into());
                terms_add(&mut terms, &TermMap::from([(m2, c2)]), &Rational::one());
            }
        }
        Self::from_term_map(&self.ring, terms)
    }

    /// Sum of the terms whose exponent in `var` equals `power`, with that
    /// exponent reset to zero.
    pub fn coefficient_of(&self, var: usize, power: i32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == power)
            .map(|(m, c)| (m.shifted(var, -power), c.clone()))
            .collect();
        Self::from_term_map(&self.ring, terms)
    }

    /// Substitutes variable `i` of `self` by `images[i]`, producing a
    /// polynomial over `target`. Negative exponents require a single-term
    /// image, which is inverted exactly.
    pub fn compose(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.len(),
                found: images.len(),
            });
        }
        for img in images {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch(
                    "substitution images must live in the target ring".into(),
                ));
            }
        }
        // Images that are bare monomials with coefficient one are handled by
        // exponent arithmetic; the rest go through cached powers.
        let monomial_image: Vec<Option<&Monomial>> = images
            .iter()
            .map(|img| match img.terms.iter().next() {
                Some((m, c)) if img.terms.len() == 1 && c.is_one() => Some(m),
                _ => None,
            })
            .collect();
        let mut pos_cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut neg_cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut out = TermMap::new();
        let n = target.len();
        for (m, c) in &self.terms {
            let mut mono = Monomial::one(n);
            let mut factor = TermMap::from([(Monomial::one(n), c.clone())]);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(mi) = monomial_image[i] {
                    mono = mono.mul(&mi.pow_signed(e));
                    continue;
                }
                let p = if e > 0 {
                    power_cached(&mut pos_cache[i], &images[i], e as usize)
                } else {
                    let inv = invert_single(&images[i], self.ring.name(i))?;
                    power_cached(&mut neg_cache[i], &inv, (-e) as usize)
                };
                factor = terms_mul(&factor, &p.terms);
            }
            if !mono.is_one() {
                factor = factor.into_iter().map(|(fm, fc)| (fm.mul(&mono), fc)).collect();
            }
            terms_add(&mut out, &factor, &Rational::one());
        }
        let result = Self::from_term_map(target, out);
        for m in result.terms.keys() {
            target.check_monomial(m)?;
        }
        Ok(result)
    }

    /// Re-expresses `self` in `target`, sending variable `i` to variable `map[i]`.
    pub fn embed(&self, target: &Arc<Ring>, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.ring.len() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.len(),
                found: map.len(),
            });
        }
        let n = target.len();
        let mut terms = TermMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0i32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            let m2 = Monomial::from_exponents(e);
            target.check_monomial(&m2)?;
            terms_add(&mut terms, &TermMap::from([(m2, c.clone())]), &Rational::one());
        }
        Ok(Self::from_term_map(target, terms))
    }

    /// Embeds into a ring whose first variables coincide with this ring's.
    pub fn embed_prefix(&self, target: &Arc<Ring>) -> Polynomial {
        let map: Vec<usize> = (0..self.ring.len()).collect();
        self.embed(target, &map).expect("prefix embedding")
    }

    /// Evaluates the variables listed in `values` (index, value) and keeps the rest symbolic.
    pub fn evaluate_partial(&self, values: &[(usize, Rational)]) -> Polynomial {
        let mut terms = TermMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = m.clone();
            for (i, v) in values {
                let e = m.exponent(*i);
                if e != 0 {
                    coeff *= num_traits::pow::Pow::pow(v, e);
                    m2 = m2.shifted(*i, -e);
                }
            }
            terms_add(&mut terms, &TermMap::from([(m2, coeff)]), &Rational::one());
        }
        Self::from_term_map(&self.ring, terms)
    }

    /// Splits into components of equal weighted degree.
    pub fn homogeneous_components(&self, weights: &[u32]) -> BTreeMap<i64, Polynomial> {
        let mut out: BTreeMap<i64, TermMap> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weighted_degree(weights))
                .or_default()
                .insert(m.clone(), c.clone());
        }
        out.into_iter()
            .map(|(d, t)| (d, Self::from_term_map(&self.ring, t)))
            .collect()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl Monomial {
    fn pow_signed(&self, k: i32) -> Monomial {
        Monomial::from_exponents(self.exponents().iter().map(|e| e * k).collect())
    }
}

fn invert_single(p: &Polynomial, name: &str) -> Result<Polynomial> {
    if p.terms.len() != 1 {
        return Err(Error::NonInvertibleSubstitution(name.to_string()));
    }
    let (m, c) = p.terms.iter().next().expect("one term");
    let inv = Monomial::from_exponents(m.exponents().iter().map(|e| -e).collect());
    p.ring.check_monomial(&inv)?;
    Ok(Polynomial::monomial(&p.ring, inv, c.recip()))
}

fn power_cached<'a>(cache: &'a mut Vec<Polynomial>, base: &Polynomial, e: usize) -> &'a Polynomial {
    if cache.is_empty() {
        cache.push(base.clone());
    }
    while cache.len() < e {
        let next = &cache[cache.len() - 1] * base;
        cache.push(next);
    }
    &cache[e - 1]
}

fn ring_names(ring: &Ring) -> String {
    ring.vars()
        .iter()
        .map(|v| v.name.as_str())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            } else if abs_is_one(c) {
                write!(f, "{}", m.format(&self.ring))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), m.format(&self.ring))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn ring3() -> Arc<Ring> {
        Ring::new(&["x1", "x2", "x3"])
    }

    #[test]
    fn binomial_identity() {
        let r = ring3();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let lhs = (&x1 + &x2) * (&x1 - &x2);
        assert_eq!(lhs, Polynomial::parse(&r, "x1^2 - x2^2").unwrap());
    }

    #[test]
    fn additive_inverse_is_empty() {
        let r = ring3();
        let f = Polynomial::parse(&r, "3*x1*x2 - 1/7*x3 + 2").unwrap();
        let z = &f + &f.scale(&rat(-1, 1));
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn square_expansion() {
        let r = ring3();
        let f = Polynomial::parse(&r, "x3 - 1/2*x1*x2").unwrap();
        let expected = Polynomial::parse(&r, "x3^2 - x1*x2*x3 + 1/4*x1^2*x2^2").unwrap();
        assert_eq!(f.pow(2), expected);
        assert_eq!(&f * &f, expected);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Polynomial::var(&ring3(), 0);
        let b = Polynomial::var(&Ring::new(&["y"]), 0);
        let err = a.checked_add(&b).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(_)));
        assert!(err.to_string().contains("x1,x2,x3"));
    }

    #[test]
    fn laurent_inverse() {
        let r = Ring::builder().var("x").laurent("y").build().unwrap();
        let y = Polynomial::var(&r, 1);
        let yinv = Polynomial::parse(&r, "y^-1").unwrap();
        assert_eq!(&y * &yinv, Polynomial::one(&r));
        assert!(Polynomial::parse(&r, "x^-1").is_err());
    }

    #[test]
    fn composition_and_display() {
        let r = ring3();
        let f = Polynomial::parse(&r, "x1*x3 + 2").unwrap();
        let t = Ring::new(&["s", "t"]);
        let images = vec![
            Polynomial::parse(&t, "s + t").unwrap(),
            Polynomial::zero(&t),
            Polynomial::parse(&t, "t").unwrap(),
        ];
        let g = f.compose(&t, &images).unwrap();
        assert_eq!(g, Polynomial::parse(&t, "s*t + t^2 + 2").unwrap());
        assert_eq!(g.to_string(), "s*t + t^2 + 2");
        let h = Polynomial::parse(&r, "x3 - 1/2*x1*x2").unwrap();
        assert_eq!(h.to_string(), "-1/2*x1*x2 + x3");
    }

    #[test]
    fn coefficient_extraction() {
        let r = Ring::new(&["x", "e"]);
        let f = Polynomial::parse(&r, "x + e*x^2 + e^2").unwrap();
        assert_eq!(f.coefficient_of(1, 1), Polynomial::parse(&r, "x^2").unwrap());
        assert_eq!(f.coefficient_of(1, 0), Polynomial::parse(&r, "x").unwrap());
    }
}
