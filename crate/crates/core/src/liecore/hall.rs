//! Free nilpotent Lie algebras in a Hall basis.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{int, Rational};
use crate::liecore::algebra::LieAlgebra;

/// How a Hall basis element is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HallNode {
    Generator(usize),
    Bracket(usize, usize),
}

/// Free `m`-generated step-`s` nilpotent algebra with its Hall basis.
///
/// Basis elements are ordered by weight, then by generation order; the first
/// `m` are the generators.
#[derive(Clone, Debug)]
pub struct FreeNilpotent {
    pub m: usize,
    pub s: usize,
    pub nodes: Vec<HallNode>,
    pub algebra: LieAlgebra,
}

type Combo = Vec<(usize, Rational)>;

struct Builder {
    nodes: Vec<HallNode>,
    weights: Vec<u32>,
    index: HashMap<(usize, usize), usize>,
    s: u32,
    memo: HashMap<(usize, usize), Combo>,
}

fn add_into(acc: &mut Combo, other: &Combo, factor: &Rational) {
    for (k, c) in other {
        match acc.iter_mut().find(|(kk, _)| kk == k) {
            Some((_, v)) => *v += c * factor,
            None => acc.push((*k, c * factor)),
        }
    }
    acc.retain(|(_, c)| !c.is_zero());
}

impl Builder {
    fn bracket(&mut self, a: usize, b: usize) -> Combo {
        if a == b || self.weights[a] + self.weights[b] > self.s {
            return Vec::new();
        }
        if a < b {
            let r = self.bracket(b, a);
            return r.into_iter().map(|(k, c)| (k, -c)).collect();
        }
        if let Some(hit) = self.memo.get(&(a, b)) {
            return hit.clone();
        }
        let result = match self.nodes[a] {
            HallNode::Generator(_) => vec![(self.index[&(a, b)], int(1))],
            HallNode::Bracket(_, y) if y <= b => vec![(self.index[&(a, b)], int(1))],
            HallNode::Bracket(x, y) => {
                // [[x,y],b] = [[x,b],y] + [x,[y,b]]
                let mut acc = Vec::new();
                for (k, c) in self.bracket(x, b) {
                    let part = self.bracket(k, y);
                    add_into(&mut acc, &part, &c);
                }
                for (k, c) in self.bracket(y, b) {
                    let part = self.bracket(x, k);
                    add_into(&mut acc, &part, &c);
                }
                acc.sort_by_key(|(k, _)| *k);
                acc
            }
        };
        self.memo.insert((a, b), result.clone());
        result
    }
}

impl FreeNilpotent {
    pub fn new(m: usize, s: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewGenerators(m));
        }
        if s == 0 {
            return Err(Error::Input("step must be at least 1".into()));
        }
        let mut b = Builder {
            nodes: (0..m).map(HallNode::Generator).collect(),
            weights: vec![1; m],
            index: HashMap::new(),
            s: s as u32,
            memo: HashMap::new(),
        };
        for w in 2..=s as u32 {
            let current = b.nodes.len();
            for u in 0..current {
                for v in 0..current {
                    if b.weights[u] + b.weights[v] != w || u <= v {
                        continue;
                    }
                    if let HallNode::Bracket(_, y) = b.nodes[u] {
                        if y > v {
                            continue;
                        }
                    }
                    b.index.insert((u, v), b.nodes.len());
                    b.nodes.push(HallNode::Bracket(u, v));
                    b.weights.push(w);
                }
            }
        }
        let n = b.nodes.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in b.bracket(i, j) {
                    entries.push((i, j, k, c));
                }
            }
        }
        let algebra = LieAlgebra::from_table(
            &format!("free({m},{s})"),
            LieAlgebra::default_names(n),
            entries,
            Some(b.weights.clone()),
        )?;
        Ok(FreeNilpotent {
            m,
            s,
            nodes: b.nodes,
            algebra,
        })
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    /// Bracket expression of basis element `i` in terms of generators,
    /// e.g. `[[X2,X1],X1]`.
    pub fn expression(&self, i: usize) -> String {
        match self.nodes[i] {
            HallNode::Generator(g) => format!("X{}", g + 1),
            HallNode::Bracket(u, v) => format!("[{},{}]", self.expression(u), self.expression(v)),
        }
    }
}

/// Dimension of the free nilpotent algebra from Witt's formula.
pub fn witt_dimension(m: usize, s: usize) -> usize {
    fn mobius(n: usize) -> i64 {
        let mut n = n;
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let mut total = 0i64;
    for w in 1..=s {
        let mut sum = 0i64;
        for d in 1..=w {
            if w % d == 0 {
                sum += mobius(d) * (m as i64).pow((w / d) as u32);
            }
        }
        total += sum / w as i64;
    }
    total as usize
}
