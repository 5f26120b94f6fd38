//! The worked examples on the Heisenberg, Engel and free step-3 algebras.

use std::time::Instant;

use super::{Check, SuiteReport};
use crate::builtins;
use crate::error::Result;
use crate::exactalg::{echelon_polynomials, in_span, same_span, Polynomial};
use crate::groupchart::Chart;
use crate::liecore::LieAlgebra;
use crate::spoly::{spoly_basis, SPolyBasis, SPolyProblem};

/// A problem with its expected solution space, written in the problem's
/// chart, and optionally the same space in first-kind coordinates.
#[derive(Clone, Debug)]
pub struct WorkedCase {
    pub label: String,
    pub problem: SPolyProblem,
    pub expected: Vec<String>,
    pub expected_first: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct CaseOutcome {
    pub case: WorkedCase,
    pub solution: SPolyBasis,
    pub matches: bool,
    /// `None` when no first-kind form is expected.
    pub first_kind_matches: Option<bool>,
    /// Computed elements outside the expected span.
    pub unexpected: Vec<Polynomial>,
    /// Expected elements missing from the computed span.
    pub missing: Vec<Polynomial>,
}

fn per_direction(a: &LieAlgebra, s: &[(usize, u32)]) -> Result<SPolyProblem> {
    SPolyProblem::per_direction(
        Chart::second(a)?,
        s.iter().map(|&(i, k)| (a.basis_element(i), k)).collect(),
    )
}

fn horizontal(a: &LieAlgebra) -> Result<SPolyProblem> {
    let v1 = a.layer(1).into_iter().map(|i| a.basis_element(i)).collect();
    SPolyProblem::subspace(Chart::second(a)?, v1, 2)
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The five reproductions, with the free step-3 case built both from literal
/// constants and from the Hall basis.
pub fn worked_cases() -> Result<Vec<WorkedCase>> {
    let h = builtins::heisenberg();
    let e = builtins::engel();
    let f23_expected = strings(&["1", "x2", "x3", "x4", "x2*x4 - x3^2/2", "x5 + x2*x3/2"]);
    Ok(vec![
        WorkedCase {
            label: "heisenberg X1:2, X2:2".into(),
            problem: per_direction(&h, &[(0, 2), (1, 2)])?,
            expected: strings(&["1", "x1", "x2", "x3", "x1*x2", "x1*x3"]),
            expected_first: None,
        },
        WorkedCase {
            label: "heisenberg horizontally affine".into(),
            problem: horizontal(&h)?,
            expected: strings(&["1", "x1", "x2", "x3 - 1/2*x1*x2"]),
            expected_first: Some(strings(&["1", "a1", "a2", "a3"])),
        },
        WorkedCase {
            label: "engel horizontally affine".into(),
            problem: horizontal(&e)?,
            expected: strings(&["1", "x1", "x2", "2*x3 - x1*x2", "3*x4 - x1*x3"]),
            expected_first: Some(strings(&["1", "a1", "a2", "a3", "6*a4 + a1*a3"])),
        },
        WorkedCase {
            label: "engel X1:1, X2:2".into(),
            problem: per_direction(&e, &[(0, 1), (1, 2)])?,
            expected: strings(&["1", "x2", "x3", "x4", "x2*x4 - x3^2/2"]),
            expected_first: None,
        },
        WorkedCase {
            label: "f23 X1:1, X2:2 (literal constants)".into(),
            problem: per_direction(&builtins::f23(), &[(0, 1), (1, 2)])?,
            expected: f23_expected.clone(),
            expected_first: None,
        },
        WorkedCase {
            label: "f23 X1:1, X2:2 (Hall basis)".into(),
            problem: per_direction(&builtins::f23_from_hall()?, &[(0, 1), (1, 2)])?,
            expected: f23_expected,
            expected_first: None,
        },
    ])
}

fn parse_all(chart: &Chart, items: &[String], first: bool) -> Result<Vec<Polynomial>> {
    let ring = if first { chart.first_ring() } else { chart.ring() };
    items.iter().map(|s| Polynomial::parse(ring, s)).collect()
}

fn outside(items: &[Polynomial], span: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for p in items {
        if !in_span(p, span)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

pub fn solve_case(case: &WorkedCase) -> Result<CaseOutcome> {
    let chart = &case.problem.chart;
    let solution = spoly_basis(&case.problem)?;
    let expected = parse_all(chart, &case.expected, false)?;
    let matches = same_span(&solution.basis, &expected)?;
    let first_kind_matches = match &case.expected_first {
        None => None,
        Some(items) => {
            let want = parse_all(chart, items, true)?;
            let got = solution
                .basis
                .iter()
                .map(|p| chart.function_to_first(p))
                .collect::<Result<Vec<_>>>()?;
            Some(same_span(&got, &want)?)
        }
    };
    let unexpected = echelon_polynomials(&outside(&solution.basis, &expected)?)?;
    let missing = outside(&expected, &solution.basis)?;
    Ok(CaseOutcome {
        case: case.clone(),
        solution,
        matches,
        first_kind_matches,
        unexpected,
        missing,
    })
}

/// Solves every case and reports one check per case.
pub fn run_worked_examples() -> Result<(SuiteReport, Vec<CaseOutcome>)> {
    let start = Instant::now();
    let mut outcomes = Vec::new();
    let mut checks = Vec::new();
    for case in worked_cases()? {
        let out = solve_case(&case)?;
        let mut detail = format!("dim {} (expected {})", out.solution.dim(), case.expected.len());
        if !out.unexpected.is_empty() {
            let extra: Vec<String> = out.unexpected.iter().map(|p| p.to_string()).collect();
            detail.push_str(&format!("; outside expected span: {}", extra.join(", ")));
        }
        if !out.missing.is_empty() {
            let gone: Vec<String> = out.missing.iter().map(|p| p.to_string()).collect();
            detail.push_str(&format!("; missing: {}", gone.join(", ")));
        }
        if let Some(ok) = out.first_kind_matches {
            detail.push_str(if ok { "; first kind matches" } else { "; first kind differs" });
        }
        let passed = out.matches && out.first_kind_matches != Some(false);
        checks.push(Check::new(case.label.clone(), passed, detail));
        outcomes.push(out);
    }
    Ok((
        SuiteReport {
            suite: "worked examples".into(),
            checks,
            elapsed: start.elapsed(),
        },
        outcomes,
    ))
}
