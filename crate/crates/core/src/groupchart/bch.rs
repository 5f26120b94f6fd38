//! Truncated Baker-Campbell-Hausdorff products in Dynkin's form.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::rational::factorial;
use crate::exactalg::{int, Polynomial, Rational};
use crate::liecore::LieAlgebra;

/// Point of the group in exponential coordinates of the first kind; entries
/// may be symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPoint {
    pub coords: Vec<Polynomial>,
}

impl GroupPoint {
    pub fn new(coords: Vec<Polynomial>) -> Self {
        GroupPoint { coords }
    }

    pub fn identity(ring: &std::sync::Arc<crate::exactalg::Ring>, n: usize) -> Self {
        GroupPoint {
            coords: vec![Polynomial::zero(ring); n],
        }
    }

    pub fn inverse(&self) -> Self {
        GroupPoint {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }
}

/// Dynkin coefficient of the right-nested bracket of `word` (`false` = X,
/// `true` = Y) in `log(exp X exp Y)`.
pub fn dynkin_coefficient(word: &[bool]) -> Rational {
    let len = word.len();
    if len == 0 {
        return Rational::zero();
    }
    // ways[i][n]: weighted count of splittings of word[..i] into n blocks
    // of shape X^p Y^q with p + q > 0.
    let mut ways: Vec<Vec<Rational>> = vec![vec![Rational::zero(); len + 1]; len + 1];
    ways[0][0] = int(1);
    for start in 0..len {
        let mut xs = 0;
        while start + xs < len && !word[start + xs] {
            xs += 1;
        }
        let mut ys = 0;
        while start + xs + ys < len && word[start + xs + ys] {
            ys += 1;
        }
        let mut blocks: Vec<(usize, usize)> = (1..=xs).map(|p| (p, 0)).collect();
        blocks.extend((1..=ys).map(|q| (xs, q)));
        for n in 0..len {
            if ways[start][n].is_zero() {
                continue;
            }
            for &(p, q) in &blocks {
                let w = &ways[start][n] / (factorial(p as u32) * factorial(q as u32));
                ways[start + p + q][n + 1] += w;
            }
        }
    }
    let mut total = Rational::zero();
    for n in 1..=len {
        let sign = if n % 2 == 1 { int(1) } else { int(-1) };
        total += sign * &ways[len][n] / int(n as i64);
    }
    total / int(len as i64)
}

/// Group law of a nilpotent algebra in first-kind coordinates.
#[derive(Clone, Debug)]
pub struct Bch {
    algebra: LieAlgebra,
    step: usize,
    coefficients: HashMap<Vec<bool>, Rational>,
}

impl Bch {
    pub fn new(algebra: &LieAlgebra) -> Result<Self> {
        let step = algebra.step()?;
        let mut coefficients = HashMap::new();
        let mut frontier: Vec<Vec<bool>> = vec![vec![false], vec![true]];
        while let Some(w) = frontier.pop() {
            let c = dynkin_coefficient(&w);
            if !c.is_zero() {
                coefficients.insert(w.clone(), c);
            }
            if w.len() < step {
                for letter in [false, true] {
                    let mut longer = vec![letter];
                    longer.extend_from_slice(&w);
                    frontier.push(longer);
                }
            }
        }
        Ok(Bch {
            algebra: algebra.clone(),
            step,
            coefficients,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn step(&self) -> usize {
        self.step
    }

    /// `log(exp a exp b)`; brackets longer than the step are never formed.
    pub fn product(&self, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let n = self.algebra.dim();
        if a.len() != n || b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if a.len() != n { a.len() } else { b.len() },
            });
        }
        if a.iter().all(Polynomial::is_zero) {
            return Ok(b.to_vec());
        }
        if b.iter().all(Polynomial::is_zero) {
            return Ok(a.to_vec());
        }
        let mut out: Vec<Polynomial> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        // Depth-first over suffixes: each node carries the nested bracket
        // of its word.
        let mut stack: Vec<(Vec<bool>, Vec<Polynomial>)> = Vec::new();
        if self.step > 1 {
            stack.push((vec![false], a.to_vec()));
            stack.push((vec![true], b.to_vec()));
        }
        while let Some((word, value)) = stack.pop() {
            if word.len() >= 2 {
                if let Some(c) = self.coefficients.get(&word) {
                    for (o, v) in out.iter_mut().zip(&value) {
                        o.add_scaled(v, c);
                    }
                }
            }
            if word.len() == self.step {
                continue;
            }
            for letter in [false, true] {
                let left = if letter { b } else { a };
                let next = self.algebra.bracket_symbolic(left, &value)?;
                if next.iter().all(Polynomial::is_zero) {
                    continue;
                }
                let mut longer = vec![letter];
                longer.extend_from_slice(&word);
                stack.push((longer, next));
            }
        }
        Ok(out)
    }

    pub fn product_points(&self, a: &GroupPoint, b: &GroupPoint) -> Result<GroupPoint> {
        Ok(GroupPoint::new(self.product(&a.coords, &b.coords)?))
    }
}

/// `a * b` in first-kind coordinates.
pub fn bch_product(algebra: &LieAlgebra, a: &GroupPoint, b: &GroupPoint) -> Result<GroupPoint> {
    Bch::new(algebra)?.product_points(a, b)
}

/// Coefficients `B_m^+ / m!` of `z / (1 - e^{-z})` for `m < count`.
pub fn bernoulli_series(count: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(int(1));
            continue;
        }
        // sum_{j<=m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = int(1);
        for (j, bj) in b.iter().enumerate() {
            acc += &binom * bj;
            binom = binom * int((m + 1 - j) as i64) / int((j + 1) as i64);
        }
        b.push(-acc / int((m + 1) as i64));
    }
    if count > 1 {
        b[1] = -b[1].clone();
    }
    b.into_iter()
        .enumerate()
        .map(|(m, v)| v / factorial(m as u32))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::exactalg::{rat, Ring};

    #[test]
    fn dynkin_low_order() {
        assert_eq!(dynkin_coefficient(&[false]), int(1));
        assert_eq!(dynkin_coefficient(&[false, true]), rat(1, 4));
        assert_eq!(dynkin_coefficient(&[true, false]), rat(-1, 4));
        // 1/12 [X,[X,Y]] arises from XXY and XYX words combined
        let xxy = dynkin_coefficient(&[false, false, true]);
        let xyx = dynkin_coefficient(&[false, true, false]);
        let yxx = dynkin_coefficient(&[true, false, false]);
        // [X,[X,Y]] = XXY-word nest; [X,[Y,X]] = -[X,[X,Y]]; [Y,[X,X]] = 0
        assert_eq!(xxy - xyx, rat(1, 12));
        let _ = yxx;
    }

    #[test]
    fn heisenberg_product() {
        let h = builtins::heisenberg();
        let ring = Ring::new(&["a1", "a2", "a3", "b1", "b2", "b3"]);
        let v = |i| Polynomial::var(&ring, i);
        let p = Bch::new(&h)
            .unwrap()
            .product(&[v(0), v(1), v(2)], &[v(3), v(4), v(5)])
            .unwrap();
        assert_eq!(p[2], Polynomial::parse(&ring, "a3 + b3 + 1/2*a1*b2 - 1/2*a2*b1").unwrap());
    }

    #[test]
    fn inverse_and_identity() {
        let e = builtins::engel();
        let ring = Ring::new(&["a1", "a2", "a3", "a4"]);
        let a: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(&ring, i)).collect();
        let bch = Bch::new(&e).unwrap();
        let neg: Vec<Polynomial> = a.iter().map(|x| -x).collect();
        assert!(bch.product(&a, &neg).unwrap().iter().all(Polynomial::is_zero));
        let zero = vec![Polynomial::zero(&ring); 4];
        assert_eq!(bch.product(&a, &zero).unwrap(), a);
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_series(5);
        assert_eq!(b, vec![int(1), rat(1, 2), rat(1, 12), int(0), rat(-1, 720)]);
    }
}
