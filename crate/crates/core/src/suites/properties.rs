//! Seeded and exhaustive property suites.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::worked::CaseOutcome;
use super::{worked_cases, Check, SuiteReport};
use crate::builtins;
use crate::error::Result;
use crate::exactalg::{int, Polynomial, Ring};
use crate::groupchart::Chart;
use crate::liecore::{AlgebraElement, LieAlgebra};
use crate::spoly::{
    differential_degree, lcs_invariance, leibman_degree, spoly_basis, spoly_basis_with_degree,
    verify_builtin_counterexample, verify_representation, Mode,
};

fn report(suite: &str, checks: Vec<Check>, start: Instant) -> SuiteReport {
    SuiteReport {
        suite: suite.into(),
        checks,
        elapsed: start.elapsed(),
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> AlgebraElement {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().any(|&c| c != 0) {
            return AlgebraElement::from_i64(&v);
        }
    }
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Polynomial]) -> Polynomial {
    let ring = basis[0].ring().clone();
    loop {
        let mut f = Polynomial::zero(&ring);
        let count = rng.gen_range(1..=3.min(basis.len()));
        for p in basis.choose_multiple(rng, count) {
            let c: i64 = rng.gen_range(-3..=3);
            f.add_scaled(p, &int(c));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// `instances` random checks of the representation formula along a
/// one-parameter subgroup, for each Carnot built-in. Functions come from the
/// solved spaces of the worked examples; half of the instances are run in
/// first-kind coordinates.
pub fn representation_suite(seed: u64, instances: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = worked_cases()?;
    let mut checks = Vec::new();
    for name in builtins::NILPOTENT {
        let solved: Vec<_> = cases
            .iter()
            .filter(|c| c.problem.chart.algebra().name() == name)
            .map(|c| spoly_basis(&c.problem))
            .collect::<Result<_>>()?;
        let first = Chart::first(solved[0].problem.chart.algebra())?;
        let mut passed = 0usize;
        let mut failures = Vec::new();
        for n in 0..instances {
            let sol = &solved[rng.gen_range(0..solved.len())];
            let problem = &sol.problem;
            let dim = problem.chart.dim();
            let (x, k) = match problem.mode {
                Mode::PerDirection => {
                    let j = rng.gen_range(0..problem.directions.len());
                    (problem.directions[j].clone(), problem.orders[j])
                }
                Mode::SubspaceUniform => {
                    let c = random_element(&mut rng, problem.directions.len());
                    let mut x = AlgebraElement::zero(dim);
                    for (d, coeff) in problem.directions.iter().zip(c.coeffs()) {
                        x = x.add(&d.scale(coeff));
                    }
                    (x, problem.k_max())
                }
            };
            let r = rng.gen_range(0..=3);
            let word: Vec<AlgebraElement> = (0..r).map(|_| random_element(&mut rng, dim)).collect();
            let f = random_combination(&mut rng, &sol.basis);
            let ok = if n % 2 == 0 {
                verify_representation(&problem.chart, &f, &x, &word, k)?
            } else {
                verify_representation(&first, &problem.chart.function_to_first(&f)?, &x, &word, k)?
            };
            if ok {
                passed += 1;
            } else {
                failures.push(format!("instance {n}: f = {f}"));
            }
        }
        checks.push(Check::new(
            format!("{name}: representation formula"),
            failures.is_empty(),
            if failures.is_empty() {
                format!("{passed}/{instances} instances")
            } else {
                failures.join("; ")
            },
        ));
    }
    Ok(report("representation", checks, start))
}

/// Leibman degree against differential degree, and invariance under the
/// matching lower central series term, for every basis element.
pub fn leibman_suite(outcomes: &[CaseOutcome]) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for out in outcomes {
        let chart = &out.solution.problem.chart;
        let mut bad = Vec::new();
        let mut degrees = Vec::new();
        for f in &out.solution.basis {
            let d = differential_degree(chart, f)?;
            let l = leibman_degree(chart, f)?;
            let inv = lcs_invariance(chart, f, d)?;
            degrees.push(d.to_string());
            if d != l || !inv {
                bad.push(format!("{f}: differential {d}, Leibman {l}, lcs invariant {inv}"));
            }
        }
        checks.push(Check::new(
            format!("{}: Leibman = differential degree", out.case.label),
            bad.is_empty(),
            if bad.is_empty() {
                format!("degrees [{}]", degrees.join(", "))
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(report("leibman", checks, start))
}

/// Re-solving at the solve degree plus one and plus two returns the same space.
pub fn degree_stability_suite(outcomes: &[CaseOutcome]) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for out in outcomes {
        let sol = &out.solution;
        let mut same = true;
        for extra in 1..=2 {
            let again = spoly_basis_with_degree(&sol.problem, sol.solve_degree + extra)?;
            same &= again.basis == sol.basis;
        }
        checks.push(Check::new(
            format!("{}: stable at degree +1, +2", out.case.label),
            same,
            format!("solve degree {}, {}", sol.solve_degree, sol.certificate),
        ));
    }
    Ok(report("stability", checks, start))
}

fn symbolic_vectors(n: usize, prefixes: &[&str]) -> (std::sync::Arc<Ring>, Vec<Vec<Polynomial>>) {
    let names: Vec<String> = prefixes
        .iter()
        .flat_map(|p| (1..=n).map(move |i| format!("{p}{i}")))
        .collect();
    let ring = Ring::new(&names);
    let vectors = (0..prefixes.len())
        .map(|b| (0..n).map(|i| Polynomial::var(&ring, b * n + i)).collect())
        .collect();
    (ring, vectors)
}

fn bch_associative(a: &LieAlgebra) -> Result<bool> {
    let chart = Chart::first(a)?;
    let bch = chart.bch();
    let (_, v) = symbolic_vectors(a.dim(), &["p", "q", "r"]);
    let left = bch.product(&bch.product(&v[0], &v[1])?, &v[2])?;
    let right = bch.product(&v[0], &bch.product(&v[1], &v[2])?)?;
    Ok(left == right)
}

fn fields_realize_constants(chart: &Chart) -> Result<bool> {
    let a = chart.algebra();
    let n = a.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = chart.fields()[i].commutator(&chart.fields()[j])?;
            let rhs = chart.field_of(&a.bracket(&a.basis_element(i), &a.basis_element(j))?);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn ad_is_automorphism(a: &LieAlgebra) -> Result<bool> {
    let n = a.dim();
    let (ring, v) = symbolic_vectors(n, &["s"]);
    let m = a.ad_exp(&v[0])?;
    let image = |x: &AlgebraElement| crate::liecore::apply_symbolic_matrix(&m, &x.to_symbolic(&ring));
    for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (a.basis_element(i), a.basis_element(j));
            let lhs = image(&a.bracket(&ei, &ej)?);
            let rhs = a.bracket_symbolic(&image(&ei), &image(&ej))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// BCH associativity, left-invariant fields realizing the structure
/// constants in both charts, and `Ad_{exp X}` preserving brackets, on every
/// nilpotent built-in.
pub fn structural_suite() -> Result<SuiteReport> {
    let start = Instant::now();
    let mut algebras: Vec<LieAlgebra> = builtins::NILPOTENT
        .iter()
        .map(|n| builtins::by_name(n))
        .collect::<Result<_>>()?;
    algebras.push(builtins::f23_from_hall()?.with_name("f23 (Hall)"));
    let mut checks = Vec::new();
    for a in &algebras {
        let name = a.name();
        checks.push(Check::new(format!("{name}: Jacobi"), a.check_jacobi().is_ok(), ""));
        checks.push(Check::new(format!("{name}: BCH associativity"), bch_associative(a)?, "symbolic triple"));
        for chart in [Chart::first(a)?, Chart::second(a)?] {
            checks.push(Check::new(
                format!("{name}: {} fields realize constants", chart.label()),
                fields_realize_constants(&chart)?,
                "",
            ));
        }
        checks.push(Check::new(
            format!("{name}: Ad_exp is an automorphism"),
            ad_is_automorphism(a)?,
            "symbolic parameter",
        ));
    }
    Ok(report("structural", checks, start))
}

pub fn counterexample_suite() -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in ["aff_plus", "sl2r"] {
        let r = verify_builtin_counterexample(name)?;
        for c in &r.checks {
            checks.push(Check::new(format!("{name}: {}", c.label), c.holds, ""));
        }
        checks.push(Check::new(format!("{name}: conclusion"), r.all_hold(), r.conclusion.clone()));
    }
    Ok(report("counterexamples", checks, start))
}
