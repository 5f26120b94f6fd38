//! Lie algebras given by structure constants.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::rational::{factorial, format_rational};
use crate::exactalg::{Polynomial, Rational, RationalMatrix, Ring};
use crate::liecore::subspace::Subspace;

/// Coefficient vector over the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        AlgebraElement { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coeffs: vec![Rational::zero(); dim],
        }
    }

    /// The `index`-th basis vector (0-based).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[index] = Rational::one();
        e
    }

    pub fn from_i64(values: &[i64]) -> Self {
        AlgebraElement {
            coeffs: values.iter().map(|&v| Rational::from_integer(v.into())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        AlgebraElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Lifts to constant polynomials over `ring`.
    pub fn to_symbolic(&self, ring: &Arc<Ring>) -> Vec<Polynomial> {
        self.coeffs
            .iter()
            .map(|c| Polynomial::constant(ring, c.clone()))
            .collect()
    }

    /// `X1 - 1/2*X3` style rendering with the given basis names.
    pub fn format(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&names[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Weight of `x` if all its nonzero coordinates share one weight.
pub fn homogeneous_weight(weights: &[u32], x: &AlgebraElement) -> Option<u32> {
    let mut w = None;
    for (c, &wi) in x.coeffs().iter().zip(weights) {
        if c.is_zero() {
            continue;
        }
        match w {
            None => w = Some(wi),
            Some(v) if v == wi => {}
            Some(_) => return None,
        }
    }
    w
}

/// Output of [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub step: usize,
    pub lcs: LcsChain,
}

/// `g = g_0 ⊇ g_1 ⊇ ... ⊇ g_step = 0` with `g_k = [g, g_{k-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsChain {
    pub terms: Vec<Subspace>,
}

impl LcsChain {
    pub fn step(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// `g_d`, which is zero for every `d >= step`.
    pub fn term(&self, d: usize) -> Subspace {
        match self.terms.get(d) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.terms[0].ambient()),
        }
    }
}

/// Result of closing a set under brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub generates: bool,
    pub span: Subspace,
}

/// Finite-dimensional Lie algebra over Q given by structure constants
/// `[e_i, e_j] = sum_k c_ij^k e_k`, optionally graded by a weight per basis
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    weights: Option<Vec<u32>>,
}

impl LieAlgebra {
    /// Stores the constants exactly as given (0-based `(i, j, k, c)`); no
    /// antisymmetric completion is performed, so [`validate`](Self::validate)
    /// sees the raw table.
    pub fn from_table(
        name: &str,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = basis.len();
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        let mut table = vec![vec![Vec::<(usize, Rational)>::new(); n]; n];
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::Input(format!(
                    "structure constant index ({},{},{}) out of range for dimension {n}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            let slot = &mut table[i][j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, existing)) => *existing += c,
                None => slot.push((k, c)),
            }
        }
        for row in table.iter_mut() {
            for slot in row.iter_mut() {
                slot.retain(|(_, c)| !c.is_zero());
                slot.sort_by_key(|(k, _)| *k);
            }
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            basis,
            table,
            weights,
        })
    }

    /// Builds from bracket relations `[e_i, e_j] = c e_k` (0-based), adding
    /// the antisymmetric partner of every pair whose mirror is not listed.
    pub fn from_brackets(
        name: &str,
        basis: Vec<String>,
        brackets: &[(usize, usize, usize, Rational)],
        weights: Option<Vec<u32>>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, usize, Rational)> = brackets.to_vec();
        for (i, j, k, c) in brackets {
            if !brackets.iter().any(|(a, b, _, _)| a == j && b == i) {
                entries.push((*j, *i, *k, -c.clone()));
            }
        }
        Self::from_table(name, basis, entries, weights)
    }

    /// Default basis names `X1, ..., Xn`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("X{i}")).collect()
    }

    pub fn abelian(n: usize) -> Self {
        Self::from_table(&format!("abelian{n}"), Self::default_names(n), [], Some(vec![1; n]))
            .expect("abelian algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Nonzero constants as 0-based `(i, j, k, c)` records in index order.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, slot) in row.iter().enumerate() {
                for (k, c) in slot {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), i)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, xi) in x.coeffs().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[i][j] {
                    out[k.to_owned()] += xi * yj * c;
                }
            }
        }
        Ok(AlgebraElement::new(out))
    }

    /// Bracket of elements whose coefficients are polynomials over a common ring.
    pub fn bracket_symbolic(&self, x: &[Polynomial], y: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let ring = x
            .first()
            .map(|p| p.ring().clone())
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let mut out = vec![Polynomial::zero(&ring); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.table[i][j].is_empty() {
                    continue;
                }
                let prod = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out[*k].add_scaled(&prod, c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x`, column `j` holding `[x, e_j]`.
    pub fn ad_matrix(&self, x: &AlgebraElement) -> Result<RationalMatrix> {
        self.check_dim(x.dim())?;
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &self.basis_element(j))?;
            for (k, c) in col.coeffs().iter().enumerate() {
                m.set(k, j, c.clone());
            }
        }
        Ok(m)
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = self.structure_constant(i, j, k);
                    let b = self.structure_constant(j, i, k);
                    if a != -b {
                        return Err(Error::Antisymmetry {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let e: Vec<AlgebraElement> = (0..n).map(|i| self.basis_element(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&e[i], &self.bracket(&e[j], &e[k])?)?;
                    let b = self.bracket(&e[j], &self.bracket(&e[k], &e[i])?)?;
                    let c = self.bracket(&e[k], &self.bracket(&e[i], &e[j])?)?;
                    if !a.add(&b).add(&c).is_zero() {
                        return Err(Error::Jacobi {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that brackets respect the declared weights.
    pub fn check_grading(&self) -> Result<()> {
        let Some(w) = &self.weights else {
            return Ok(());
        };
        for (i, j, k, _) in self.constants() {
            if w[k] != w[i] + w[j] {
                return Err(Error::Grading {
                    left: i + 1,
                    right: j + 1,
                    weight: w[i] + w[j],
                });
            }
        }
        Ok(())
    }

    /// Basis indices of weight `w`.
    pub fn layer(&self, w: u32) -> Vec<usize> {
        match &self.weights {
            Some(ws) => (0..self.dim()).filter(|&i| ws[i] == w).collect(),
            None => Vec::new(),
        }
    }

    /// Weights form a stratification: `V_1` nonempty, consecutive layers and
    /// `[V_1, V_w] = V_{w+1}`.
    pub fn is_stratified(&self) -> bool {
        let Some(ws) = &self.weights else {
            return false;
        };
        if self.check_grading().is_err() || ws.contains(&0) {
            return false;
        }
        let top = ws.iter().copied().max().unwrap_or(0);
        let n = self.dim();
        for w in 1..top {
            let v1 = self.layer(1);
            let vw = self.layer(w);
            let brackets: Vec<Vec<Rational>> = v1
                .iter()
                .flat_map(|&a| vw.iter().map(move |&b| (a, b)))
                .map(|(a, b)| {
                    self.bracket(&self.basis_element(a), &self.basis_element(b))
                        .expect("basis elements")
                        .coeffs()
                        .to_vec()
                })
                .collect();
            let next = self.layer(w + 1);
            let target = Subspace::span(n, next.iter().map(|&i| self.basis_element(i).coeffs().to_vec()));
            if Subspace::span(n, brackets) != target || next.is_empty() {
                return false;
            }
        }
        !self.layer(1).is_empty() || n == 0
    }

    /// Lower central series; fails if it stabilizes above zero.
    pub fn lower_central_series(&self) -> Result<LcsChain> {
        let n = self.dim();
        let mut terms = vec![Subspace::full(n)];
        loop {
            let prev = terms.last().expect("nonempty");
            if prev.is_zero() {
                return Ok(LcsChain { terms });
            }
            let mut vectors = Vec::new();
            for i in 0..n {
                let ei = self.basis_element(i);
                for v in prev.basis() {
                    vectors.push(self.bracket(&ei, &AlgebraElement::new(v.clone()))?.coeffs().to_vec());
                }
            }
            let next = Subspace::span(n, vectors);
            if next.dim() == prev.dim() {
                return Err(Error::NotNilpotent {
                    name: self.name.clone(),
                    dim: next.dim(),
                });
            }
            terms.push(next);
        }
    }

    /// Nilpotency step `s` (first index with `g_s = 0`).
    pub fn step(&self) -> Result<usize> {
        Ok(self.lower_central_series()?.step())
    }

    pub fn validate(&self) -> Result<Validation> {
        self.check_antisymmetry()?;
        self.check_jacobi()?;
        self.check_grading()?;
        let lcs = self.lower_central_series()?;
        Ok(Validation {
            step: lcs.step(),
            lcs,
        })
    }

    /// Matrix of `Ad_{exp x} = sum_{j<s} ad_x^j / j!` for symbolic `x`; entry
    /// `[k][j]` is the `e_k` coefficient of `Ad_{exp x} e_j`.
    pub fn ad_exp(&self, x: &[Polynomial]) -> Result<Vec<Vec<Polynomial>>> {
        self.check_dim(x.len())?;
        let step = self.step()?;
        let ring = x
            .first()
            .map(|p| p.ring().clone())
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let n = self.dim();
        let mut m = vec![vec![Polynomial::zero(&ring); n]; n];
        for j in 0..n {
            let mut term: Vec<Polynomial> = (0..n)
                .map(|k| {
                    if k == j {
                        Polynomial::one(&ring)
                    } else {
                        Polynomial::zero(&ring)
                    }
                })
                .collect();
            for (k, p) in term.iter().enumerate() {
                m[k][j] = p.clone();
            }
            for power in 1..step.max(1) as u32 {
                term = self.bracket_symbolic(x, &term)?;
                if term.iter().all(Polynomial::is_zero) {
                    break;
                }
                let inv = factorial(power).recip();
                for (k, p) in term.iter().enumerate() {
                    m[k][j].add_scaled(p, &inv);
                }
            }
        }
        Ok(m)
    }

    /// Closes `span(s)` under brackets.
    pub fn lie_generates(&self, s: &[AlgebraElement]) -> Result<Closure> {
        for x in s {
            self.check_dim(x.dim())?;
        }
        let n = self.dim();
        let mut span = Subspace::span(n, s.iter().map(|x| x.coeffs().to_vec()));
        loop {
            let mut vectors: Vec<Vec<Rational>> = span.basis().to_vec();
            let basis = span.basis().to_vec();
            for a in &basis {
                for b in &basis {
                    let c = self.bracket(&AlgebraElement::new(a.clone()), &AlgebraElement::new(b.clone()))?;
                    vectors.push(c.coeffs().to_vec());
                }
            }
            let next = Subspace::span(n, vectors);
            if next.dim() == span.dim() {
                return Ok(Closure {
                    generates: span.dim() == n,
                    span,
                });
            }
            span = next;
        }
    }

    pub fn format_element(&self, x: &AlgebraElement) -> String {
        x.format(&self.basis)
    }
}

/// Applies a symbolic matrix (as returned by [`LieAlgebra::ad_exp`]) to a
/// symbolic vector.
pub fn apply_symbolic_matrix(m: &[Vec<Polynomial>], v: &[Polynomial]) -> Vec<Polynomial> {
    m.iter()
        .map(|row| {
            let ring = row[0].ring().clone();
            row.iter()
                .zip(v)
                .fold(Polynomial::zero(&ring), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
        })
        .collect()
}

/// Product of two symbolic square matrices.
pub fn mul_symbolic_matrices(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    let mut out = vec![vec![Polynomial::zero(&ring); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())?;
        for (i, j, k, c) in self.constants() {
            if i < j {
                write!(
                    f,
                    "; [{},{}] += {}*{}",
                    self.basis[i],
                    self.basis[j],
                    format_rational(&c),
                    self.basis[k]
                )?;
            }
        }
        Ok(())
    }
}
