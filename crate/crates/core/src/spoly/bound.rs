//! The degree bound for k-polynomial functions along concatenated flows.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Full trace of the bound recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundWitness {
    pub k: u64,
    pub s: u64,
    pub l: u64,
    /// `a_0, ..., a_{l-1}`.
    pub a: Vec<BigUint>,
    /// `nu_1, ..., nu_{l-1}`.
    pub nu_seq: Vec<BigUint>,
    pub nu: BigUint,
    pub d: BigUint,
}

impl DegreeBoundWitness {
    /// `nu` as a machine integer, `None` when it does not fit.
    pub fn nu_usize(&self) -> Option<usize> {
        self.nu.to_usize()
    }
}

pub fn degree_bound(k: u64, s: u64, l: u64) -> Result<DegreeBoundWitness> {
    if k == 0 || s == 0 || l == 0 {
        return Err(Error::Input(format!(
            "degree bound needs positive k, s, l (got {k}, {s}, {l})"
        )));
    }
    let len = usize::try_from(l).map_err(|_| Error::Input("l is too large".into()))?;
    let km1 = BigUint::from(k - 1);
    let sb = BigUint::from(s);
    let mut a = vec![BigUint::zero(); len];
    a[len - 1] = km1.clone();
    for j in (1..len).rev() {
        a[j - 1] = &sb * &a[j] + &km1;
    }
    if len == 1 {
        return Ok(DegreeBoundWitness {
            k,
            s,
            l,
            nu: km1.clone(),
            d: km1,
            a,
            nu_seq: Vec::new(),
        });
    }
    let sm1 = BigUint::from(s - 1);
    let mut nu_seq = Vec::with_capacity(len - 1);
    nu_seq.push(&km1 + &a[1] * &sm1);
    for j in 1..len - 1 {
        let next = &nu_seq[j - 1] + &km1 + &a[j + 1] * &sm1;
        nu_seq.push(next);
    }
    let nu = nu_seq[len - 2].clone() + &km1;
    Ok(DegreeBoundWitness {
        k,
        s,
        l,
        d: a[0].clone(),
        a,
        nu_seq,
        nu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn small_cases() {
        let w = degree_bound(2, 2, 2).unwrap();
        assert_eq!(w.a, vec![b(3), b(1)]);
        assert_eq!(w.nu_seq, vec![b(2)]);
        assert_eq!((w.nu.clone(), w.d.clone()), (b(3), b(3)));
        let w = degree_bound(2, 3, 2).unwrap();
        assert_eq!((w.a[1].clone(), w.a[0].clone(), w.nu_seq[0].clone()), (b(1), b(4), b(3)));
        assert_eq!((w.nu, w.d), (b(4), b(4)));
        let w = degree_bound(1, 5, 9).unwrap();
        assert_eq!((w.nu, w.d), (b(0), b(0)));
        let w = degree_bound(4, 3, 1).unwrap();
        assert_eq!((w.nu, w.d), (b(3), b(3)));
    }

    #[test]
    fn rejects_zero() {
        assert!(degree_bound(0, 1, 1).is_err());
        assert!(degree_bound(1, 0, 1).is_err());
        assert!(degree_bound(1, 1, 0).is_err());
    }

    #[test]
    fn large_values_do_not_overflow() {
        let w = degree_bound(5, 7, 60).unwrap();
        assert!(w.nu_usize().is_none());
    }
}
