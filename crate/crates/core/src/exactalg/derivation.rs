//! First-order differential operators with polynomial coefficients and their
//! compositions.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::poly::{same_ring, Polynomial};
use crate::exactalg::rational::Rational;
use crate::exactalg::ring::Ring;

/// `sum_i coeff[i] * d/dx_i` over the base variables of a ring. Generators
/// carry no coefficient of their own; their derivative follows from the
/// ring's declared table by the chain rule.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    ring: Arc<Ring>,
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Arc<Ring>, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != ring.len() {
            return Err(Error::DimensionMismatch {
                expected: ring.len(),
                found: coeffs.len(),
            });
        }
        for (i, c) in coeffs.iter().enumerate() {
            if !same_ring(c.ring(), ring) {
                return Err(Error::RingMismatch(format!(
                    "coefficient of d/d{} lives in another ring",
                    ring.name(i)
                )));
            }
            if ring.is_generator(i) && !c.is_zero() {
                return Err(Error::Input(format!(
                    "generator `{}` cannot carry an independent coefficient",
                    ring.name(i)
                )));
            }
        }
        Ok(Derivation {
            ring: ring.clone(),
            coeffs,
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Derivation {
            ring: ring.clone(),
            coeffs: vec![Polynomial::zero(ring); ring.len()],
        }
    }

    /// `d/dx_index`.
    pub fn partial(ring: &Arc<Ring>, index: usize) -> Self {
        let mut d = Self::zero(ring);
        d.coeffs[index] = Polynomial::one(ring);
        d
    }

    /// Parses `(variable, coefficient)` pairs, e.g. `[("x2", "1"), ("x3", "x1")]`.
    pub fn from_strs(ring: &Arc<Ring>, parts: &[(&str, &str)]) -> Result<Self> {
        let mut coeffs = vec![Polynomial::zero(ring); ring.len()];
        for (var, coeff) in parts {
            let i = ring
                .index_of(var)
                .ok_or_else(|| Error::Unknown(var.to_string()))?;
            coeffs[i] = &coeffs[i] + &Polynomial::parse(ring, coeff)?;
        }
        Self::new(ring, coeffs)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coefficient(&self, index: usize) -> &Polynomial {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Applies the derivation with the Leibniz rule.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch(
                "derivation and polynomial live in different rings".into(),
            ));
        }
        let mut out = Polynomial::zero(&self.ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || self.ring.is_generator(i) {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        for g in 0..self.ring.len() {
            if !self.ring.is_generator(g) {
                continue;
            }
            let dg_f = f.partial(g);
            if dg_f.is_zero() {
                continue;
            }
            let image = self.on_generator(g)?;
            if !image.is_zero() {
                out = &out + &(&image * &dg_f);
            }
        }
        Ok(out)
    }

    /// Value of the derivation on generator `g`, read off the derivative table.
    fn on_generator(&self, g: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.ring);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || self.ring.is_generator(i) {
                continue;
            }
            let entry = self
                .ring
                .derivative(g, i)
                .ok_or_else(|| Error::MissingDerivative {
                    generator: self.ring.name(g).to_string(),
                    variable: self.ring.name(i).to_string(),
                })?;
            let dg = Polynomial::from_term_map(&self.ring, entry.clone());
            acc = &acc + &(c * &dg);
        }
        Ok(acc)
    }

    pub fn scale(&self, factor: &Rational) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn times(&self, factor: &Polynomial) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `sum_j weights[j] * derivations[j]` with polynomial weights.
    pub fn combination(ring: &Arc<Ring>, weights: &[Polynomial], derivations: &[Derivation]) -> Derivation {
        let mut acc = Derivation::zero(ring);
        for (w, d) in weights.iter().zip(derivations) {
            if !w.is_zero() {
                acc = acc.add(&d.times(w));
            }
        }
        acc
    }

    /// Vector-field commutator `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for i in 0..self.ring.len() {
            if self.ring.is_generator(i) {
                coeffs.push(Polynomial::zero(&self.ring));
                continue;
            }
            let a = self.apply(&other.coeffs[i])?;
            let b = other.apply(&self.coeffs[i])?;
            coeffs.push(&a - &b);
        }
        Derivation::new(&self.ring, coeffs)
    }

    /// Re-expresses the derivation in a ring that extends this one by
    /// trailing variables; the new variables are treated as constants.
    pub fn embed_prefix(&self, target: &Arc<Ring>) -> Derivation {
        let mut coeffs: Vec<Polynomial> = self.coeffs.iter().map(|c| c.embed_prefix(target)).collect();
        coeffs.resize(target.len(), Polynomial::zero(target));
        Derivation {
            ring: target.clone(),
            coeffs,
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_constant() && c.constant_term().is_one() {
                write!(f, "d/d{}", self.ring.name(i))?;
            } else {
                write!(f, "({c})*d/d{}", self.ring.name(i))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Composition `D_1 ∘ D_2 ∘ ... ∘ D_r`; the rightmost derivation acts first
/// and the empty word is the identity.
#[derive(Clone, Debug, Default)]
pub struct OperatorWord {
    pub letters: Vec<Derivation>,
}

impl OperatorWord {
    pub fn new(letters: Vec<Derivation>) -> Self {
        OperatorWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut g = f.clone();
        for d in self.letters.iter().rev() {
            if g.is_zero() {
                break;
            }
            g = d.apply(&g)?;
        }
        Ok(g)
    }
}

/// Rational linear combination of operator words.
#[derive(Clone, Debug, Default)]
pub struct DiffOperator {
    pub terms: Vec<(Rational, OperatorWord)>,
}

impl DiffOperator {
    pub fn word(word: OperatorWord) -> Self {
        DiffOperator {
            terms: vec![(Rational::one(), word)],
        }
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(f.ring());
        for (c, w) in &self.terms {
            if c.is_zero() {
                continue;
            }
            acc.add_scaled(&w.apply(f)?, c);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis() -> Arc<Ring> {
        Ring::new(&["x1", "x2", "x3"])
    }

    #[test]
    fn heisenberg_field_on_coordinate() {
        let r = heis();
        let x2 = Derivation::from_strs(&r, &[("x2", "1"), ("x3", "x1")]).unwrap();
        let x3 = Polynomial::var(&r, 2);
        assert_eq!(x2.apply(&x3).unwrap(), Polynomial::var(&r, 0));
        assert!(x2.apply(&Polynomial::one(&r)).unwrap().is_zero());
    }

    #[test]
    fn generator_chain_rule() {
        let r = Ring::builder()
            .var("x")
            .laurent("y")
            .generator("L")
            .derivative("L", "y", "y^-1")
            .derivative("L", "x", "0")
            .build()
            .unwrap();
        let y_dy = Derivation::from_strs(&r, &[("y", "y")]).unwrap();
        let f = Polynomial::parse(&r, "(x + 1)*L").unwrap();
        assert_eq!(y_dy.apply(&f).unwrap(), Polynomial::parse(&r, "x + 1").unwrap());
    }

    #[test]
    fn missing_table_entry_names_generator() {
        let r = Ring::builder()
            .var("x")
            .laurent("y")
            .generator("L")
            .derivative("L", "y", "y^-1")
            .build()
            .unwrap();
        let dx = Derivation::from_strs(&r, &[("x", "1")]).unwrap();
        let f = Polynomial::parse(&r, "L").unwrap();
        match dx.apply(&f) {
            Err(Error::MissingDerivative { generator, variable }) => {
                assert_eq!(generator, "L");
                assert_eq!(variable, "x");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn words_compose_right_to_left() {
        let r = heis();
        let x1 = Derivation::partial(&r, 0);
        let x2 = Derivation::from_strs(&r, &[("x2", "1"), ("x3", "x1")]).unwrap();
        let f = Polynomial::parse(&r, "x1*x3").unwrap();
        let w = OperatorWord::new(vec![x1.clone(), x2.clone(), x1.clone()]);
        assert_eq!(w.apply(&f).unwrap(), Polynomial::one(&r));
        let w2 = OperatorWord::new(vec![x1.clone(), x1.clone()]);
        assert!(w2.apply(&f).unwrap().is_zero());
        assert_eq!(OperatorWord::default().apply(&f).unwrap(), f);
    }

    #[test]
    fn commutator_of_heisenberg_fields() {
        let r = heis();
        let x1 = Derivation::partial(&r, 0);
        let x2 = Derivation::from_strs(&r, &[("x2", "1"), ("x3", "x1")]).unwrap();
        assert_eq!(x1.commutator(&x2).unwrap(), Derivation::partial(&r, 2));
    }
}
