//! Ring descriptors and monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::rational::Rational;

/// Sparse coefficient table keyed by monomials; zero coefficients are never stored.
pub type TermMap = BTreeMap<Monomial, Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Ordinary polynomial variable, nonnegative exponents only.
    Polynomial,
    /// Variable that may carry negative exponents.
    Laurent,
    /// Transcendental generator (e.g. `log y`) whose derivatives are declared
    /// in the ring's derivative table rather than computed.
    Generator,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

/// Variable list plus the formal derivative table of the transcendental
/// generators. Monomials are compared in graded-lexicographic order on the
/// declared variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Variable>,
    derivatives: BTreeMap<(usize, usize), TermMap>,
}

impl Ring {
    /// A plain polynomial ring over the given variable names.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: names
                .iter()
                .map(|n| Variable {
                    name: n.as_ref().to_string(),
                    kind: VarKind::Polynomial,
                })
                .collect(),
            derivatives: BTreeMap::new(),
        })
    }

    pub fn builder() -> RingBuilder {
        RingBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, index: usize) -> &str {
        &self.vars[index].name
    }

    pub fn kind(&self, index: usize) -> VarKind {
        self.vars[index].kind
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_generator(&self, index: usize) -> bool {
        self.vars[index].kind == VarKind::Generator
    }

    /// Declared derivative of generator `generator` with respect to base
    /// variable `variable`.
    pub fn derivative(&self, generator: usize, variable: usize) -> Option<&TermMap> {
        self.derivatives.get(&(generator, variable))
    }

    /// A new ring with `extra` plain variables appended after the existing ones.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Arc<Ring> {
        let n_extra = extra.len();
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|n| Variable {
            name: n.as_ref().to_string(),
            kind: VarKind::Polynomial,
        }));
        let derivatives = self
            .derivatives
            .iter()
            .map(|(key, terms)| {
                let widened = terms
                    .iter()
                    .map(|(m, c)| (m.widened(n_extra), c.clone()))
                    .collect();
                (*key, widened)
            })
            .collect();
        Arc::new(Ring { vars, derivatives })
    }

    pub(crate) fn check_monomial(&self, monomial: &Monomial) -> Result<()> {
        if monomial.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: monomial.len(),
            });
        }
        for (i, &e) in monomial.exponents().iter().enumerate() {
            if e < 0 && self.vars[i].kind != VarKind::Laurent {
                return Err(Error::NotLaurent(self.vars[i].name.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct RingBuilder {
    vars: Vec<Variable>,
    derivatives: Vec<(String, String, String)>,
}

impl RingBuilder {
    fn push(mut self, name: &str, kind: VarKind) -> Self {
        self.vars.push(Variable {
            name: name.to_string(),
            kind,
        });
        self
    }

    pub fn var(self, name: &str) -> Self {
        self.push(name, VarKind::Polynomial)
    }

    pub fn laurent(self, name: &str) -> Self {
        self.push(name, VarKind::Laurent)
    }

    pub fn generator(self, name: &str) -> Self {
        self.push(name, VarKind::Generator)
    }

    /// Declares `d(generator)/d(variable) = expression`, the expression being
    /// parsed over the ring's own variables.
    pub fn derivative(mut self, generator: &str, variable: &str, expression: &str) -> Self {
        self.derivatives
            .push((generator.into(), variable.into(), expression.into()));
        self
    }

    pub fn build(self) -> Result<Arc<Ring>> {
        let mut ring = Ring {
            vars: self.vars,
            derivatives: BTreeMap::new(),
        };
        for (i, v) in ring.vars.iter().enumerate() {
            if ring.vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Input(format!("duplicate variable `{}`", v.name)));
            }
        }
        let mut table = BTreeMap::new();
        for (g, x, expr) in &self.derivatives {
            let gi = ring
                .index_of(g)
                .filter(|&i| ring.is_generator(i))
                .ok_or_else(|| Error::Unknown(g.clone()))?;
            let xi = ring
                .index_of(x)
                .filter(|&i| !ring.is_generator(i))
                .ok_or_else(|| Error::Unknown(x.clone()))?;
            let terms = crate::exactalg::parse::parse_terms(&ring, expr)?;
            table.insert((gi, xi), terms);
        }
        ring.derivatives = table;
        Ok(Arc::new(ring))
    }
}

/// Exponent vector over a ring's variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exponents: Vec<i32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> i32 {
        self.0[index]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k as i32).collect())
    }

    /// Shifts the exponent of one variable.
    pub fn shifted(&self, index: usize, delta: i32) -> Monomial {
        let mut e = self.0.clone();
        e[index] += delta;
        Monomial(e)
    }

    pub(crate) fn widened(&self, extra: usize) -> Monomial {
        let mut e = self.0.to_vec();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e.into_boxed_slice())
    }

    pub fn format(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    ring.name(i).to_string()
                } else {
                    format!("{}^{}", ring.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1x2 = Monomial::from_exponents(vec![1, 1, 0]);
        let x3 = Monomial::from_exponents(vec![0, 0, 1]);
        let x1 = Monomial::from_exponents(vec![1, 0, 0]);
        let x1sq = Monomial::from_exponents(vec![2, 0, 0]);
        assert!(x1x2 > x3);
        assert!(x1 > x3);
        assert!(x1sq > x1x2);
        assert!(Monomial::one(3) < x3);
    }

    #[test]
    fn laurent_exponents_are_checked() {
        let ring = Ring::builder().var("x").laurent("y").build().unwrap();
        assert!(ring
            .check_monomial(&Monomial::from_exponents(vec![0, -1]))
            .is_ok());
        assert!(matches!(
            ring.check_monomial(&Monomial::from_exponents(vec![-1, 0])),
            Err(Error::NotLaurent(_))
        ));
    }
}
