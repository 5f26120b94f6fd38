//! Exact identity checks for the two non-nilpotent built-in examples.

use crate::builtins;
use crate::error::{Error, Result};
use crate::exactalg::{Derivation, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub name: String,
    pub checks: Vec<IdentityCheck>,
    pub conclusion: String,
}

impl CounterexampleReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn iterate(d: &Derivation, f: &Polynomial, times: u32) -> Result<Polynomial> {
    let mut g = f.clone();
    for _ in 0..times {
        g = d.apply(&g)?;
    }
    Ok(g)
}

struct Checker {
    checks: Vec<IdentityCheck>,
}

impl Checker {
    fn expect(&mut self, label: String, lhs: &Polynomial, rhs: &Polynomial) {
        self.checks.push(IdentityCheck {
            label,
            holds: lhs == rhs,
        });
    }
}

pub fn verify_builtin_counterexample(name: &str) -> Result<CounterexampleReport> {
    match name {
        "aff_plus" => aff_plus_report(),
        "sl2r" => sl2r_report(),
        other => Err(Error::Unknown(format!("counterexample {other:?}"))),
    }
}

fn aff_plus_report() -> Result<CounterexampleReport> {
    let a = builtins::aff_plus();
    let p = |s: &str| Polynomial::parse(&a.ring, s);
    let zero = Polynomial::zero(&a.ring);
    let mut c = Checker { checks: Vec::new() };
    c.expect("X^2 f = 0".into(), &iterate(&a.x_field, &a.f, 2)?, &zero);
    c.expect("Y^2 f = 0".into(), &iterate(&a.y_field, &a.f, 2)?, &zero);
    let xf = a.x_field.apply(&a.f)?;
    for alpha in 0..=5u32 {
        c.expect(
            format!("Y^{alpha} X f = y*L + {alpha}*y"),
            &iterate(&a.y_field, &xf, alpha)?,
            &p(&format!("y*L + {alpha}*y"))?,
        );
    }
    let sum = a.x_field.add(&a.y_field);
    c.expect("(X+Y) f = y*L + x + 1".into(), &sum.apply(&a.f)?, &p("y*L + x + 1")?);
    for n in 2..=5u32 {
        c.expect(
            format!("(X+Y)^{n} f = y*L + {n}*y"),
            &iterate(&sum, &a.f, n)?,
            &p(&format!("y*L + {n}*y"))?,
        );
    }
    Ok(CounterexampleReport {
        name: "aff_plus".into(),
        checks: c.checks,
        conclusion: "S-polynomial but not 𝔤-polynomial".into(),
    })
}

fn sl2r_report() -> Result<CounterexampleReport> {
    let s = builtins::sl2r();
    let x3 = Polynomial::parse(&s.ring, "x3")?;
    let zero = Polynomial::zero(&s.ring);
    let mut c = Checker { checks: Vec::new() };
    c.expect("X2 x3 = 0".into(), &s.fields[1].apply(&x3)?, &zero);
    c.expect("X3^2 x3 = 0".into(), &iterate(&s.fields[2], &x3, 2)?, &zero);
    for k in 1..=4u32 {
        c.expect(format!("X1^{k} x3 = x3"), &iterate(&s.fields[0], &x3, k)?, &x3);
    }
    Ok(CounterexampleReport {
        name: "sl2r".into(),
        checks: c.checks,
        conclusion: "x3 not polynomial à la Leibman".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_reports_hold() {
        let r = verify_builtin_counterexample("aff_plus").unwrap();
        assert!(r.all_hold(), "{:?}", r.checks);
        assert_eq!(r.checks.len(), 2 + 6 + 1 + 4);
        assert_eq!(r.conclusion, "S-polynomial but not 𝔤-polynomial");
        let r = verify_builtin_counterexample("sl2r").unwrap();
        assert!(r.all_hold(), "{:?}", r.checks);
        assert_eq!(r.conclusion, "x3 not polynomial à la Leibman");
        assert!(verify_builtin_counterexample("heisenberg").is_err());
    }

    #[test]
    fn x_f_is_y_log_y() {
        let a = builtins::aff_plus();
        let xf = a.x_field.apply(&a.f).unwrap();
        assert_eq!(xf, Polynomial::parse(&a.ring, "y*L").unwrap());
    }
}
