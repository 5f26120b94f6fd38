//! Problem statements: a chart, a set of directions and their orders.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{int, Derivation, Monomial, Polynomial, Rational, Ring};
use crate::groupchart::Chart;
use crate::liecore::{AlgebraElement, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `X^{k_X} f = 0` for each listed `X`.
    PerDirection,
    /// `X^k f = 0` for every `X` in the span of the listed elements.
    SubspaceUniform,
}

#[derive(Clone, Debug)]
pub struct SPolyProblem {
    pub chart: Chart,
    pub directions: Vec<AlgebraElement>,
    /// One order per direction; all equal in subspace mode.
    pub orders: Vec<u32>,
    pub mode: Mode,
}

/// A linear combination of words in the problem's letters; a word
/// `[l1, ..., lr]` acts as `l1(l2(...lr f))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub terms: Vec<(Rational, Vec<usize>)>,
}

impl SPolyProblem {
    pub fn per_direction(chart: Chart, directions: Vec<(AlgebraElement, u32)>) -> Result<Self> {
        let (directions, orders) = directions.into_iter().unzip();
        let p = SPolyProblem {
            chart,
            directions,
            orders,
            mode: Mode::PerDirection,
        };
        p.check()?;
        Ok(p)
    }

    pub fn subspace(chart: Chart, directions: Vec<AlgebraElement>, k: u32) -> Result<Self> {
        let orders = vec![k; directions.len()];
        let p = SPolyProblem {
            chart,
            directions,
            orders,
            mode: Mode::SubspaceUniform,
        };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        if self.directions.is_empty() {
            return Err(Error::InvalidProblem("S is empty".into()));
        }
        if self.orders.contains(&0) {
            return Err(Error::InvalidProblem("orders must be at least 1".into()));
        }
        let n = self.chart.dim();
        for d in &self.directions {
            if d.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d.dim(),
                });
            }
        }
        Ok(())
    }

    /// Same directions and mode in another chart.
    pub fn with_chart(&self, chart: Chart) -> Self {
        SPolyProblem {
            chart,
            directions: self.directions.clone(),
            orders: self.orders.clone(),
            mode: self.mode,
        }
    }

    pub fn k_max(&self) -> u32 {
        self.orders.iter().copied().max().unwrap_or(1)
    }

    /// The elements whose fields appear in the conditions: the directions
    /// themselves, or a reduced basis of their span in subspace mode.
    pub fn letters(&self) -> Vec<AlgebraElement> {
        match self.mode {
            Mode::PerDirection => self.directions.clone(),
            Mode::SubspaceUniform => {
                let span = Subspace::span(
                    self.chart.dim(),
                    self.directions.iter().map(|d| d.coeffs().to_vec()),
                );
                span.basis().iter().cloned().map(AlgebraElement::new).collect()
            }
        }
    }

    pub fn conditions(&self) -> Vec<Condition> {
        match self.mode {
            Mode::PerDirection => self
                .orders
                .iter()
                .enumerate()
                .map(|(i, &k)| Condition {
                    terms: vec![(int(1), vec![i; k as usize])],
                })
                .collect(),
            Mode::SubspaceUniform => {
                let m = self.letters().len();
                let k = self.k_max() as usize;
                multisets(m, k)
                    .into_iter()
                    .map(|ms| Condition {
                        terms: distinct_permutations(&ms)
                            .into_iter()
                            .map(|w| (int(1), w))
                            .collect(),
                    })
                    .collect()
            }
        }
    }

    /// `X1:2, X2:2` or `span{X1, X2} k=2`.
    pub fn describe(&self) -> String {
        let names = self.chart.algebra().basis_names();
        match self.mode {
            Mode::PerDirection => self
                .directions
                .iter()
                .zip(&self.orders)
                .map(|(d, k)| format!("{}:{k}", d.format(names)))
                .collect::<Vec<_>>()
                .join(", "),
            Mode::SubspaceUniform => format!(
                "span{{{}}} k={}",
                self.directions
                    .iter()
                    .map(|d| d.format(names))
                    .collect::<Vec<_>>()
                    .join(", "),
                self.k_max()
            ),
        }
    }
}

/// Non-decreasing sequences of length `k` over `0..m`.
pub fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

/// All distinct orderings of a sorted multiset, in lexicographic order.
pub fn distinct_permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Applies conditions to polynomials, caching each letter's action on
/// monomials.
pub struct ConditionSystem {
    ring: Arc<Ring>,
    letters: Vec<Derivation>,
    conditions: Vec<Condition>,
    cache: HashMap<(usize, Monomial), Polynomial>,
}

impl ConditionSystem {
    pub fn new(letters: Vec<Derivation>, conditions: Vec<Condition>) -> Result<Self> {
        let ring = letters
            .first()
            .map(|d| d.ring().clone())
            .ok_or_else(|| Error::InvalidProblem("no letters".into()))?;
        Ok(ConditionSystem {
            ring,
            letters,
            conditions,
            cache: HashMap::new(),
        })
    }

    pub fn for_problem(problem: &SPolyProblem) -> Result<Self> {
        let letters = problem
            .letters()
            .iter()
            .map(|x| problem.chart.field_of(x))
            .collect();
        Self::new(letters, problem.conditions())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    pub fn apply_letter(&mut self, letter: usize, f: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in f.terms() {
            let key = (letter, m.clone());
            if !self.cache.contains_key(&key) {
                let mono = Polynomial::monomial(&self.ring, m.clone(), int(1));
                let image = self.letters[letter].apply(&mono)?;
                self.cache.insert(key.clone(), image);
            }
            out.add_scaled(&self.cache[&key], c);
        }
        Ok(out)
    }

    pub fn apply_word(&mut self, word: &[usize], f: &Polynomial) -> Result<Polynomial> {
        let mut g = f.clone();
        for &l in word.iter().rev() {
            if g.is_zero() {
                break;
            }
            g = self.apply_letter(l, &g)?;
        }
        Ok(g)
    }

    pub fn apply(&mut self, index: usize, f: &Polynomial) -> Result<Polynomial> {
        let terms = self.conditions[index].terms.clone();
        let mut out = Polynomial::zero(&self.ring);
        for (c, w) in &terms {
            let g = self.apply_word(w, f)?;
            out.add_scaled(&g, c);
        }
        Ok(out)
    }

    /// True when every condition annihilates `f`.
    pub fn satisfied_by(&mut self, f: &Polynomial) -> Result<bool> {
        for i in 0..self.conditions.len() {
            if !self.apply(i, f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(multisets(3, 2).len(), 6);
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(&[0, 1]), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(distinct_permutations(&[0, 0, 1]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 1]), vec![vec![1, 1]]);
    }
}
