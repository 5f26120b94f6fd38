//! The S-polynomial space solver.
//!
//! Graded route: when the algebra carries a positive grading and every
//! letter is homogeneous, each condition maps weighted-degree `d`
//! polynomials to degree `d - k w`, so the kernel splits into blocks that
//! are solved one degree at a time. The solution space is invariant under
//! right-invariant fields, which commute with the conditions and lower the
//! degree by the weight of their generator. Hence once the blocks vanish on
//! `window` consecutive positive degrees they vanish forever, where
//! `window` is 1 if the weight-1 layer generates and the top weight
//! otherwise. The solver stops there or at the bound `nu`, whichever comes
//! first.
//!
//! Free-lift route: otherwise the problem is lifted to the free nilpotent
//! algebra on `|S|` generators, solved there, restricted to functions
//! killed by the kernel of the lift, and pulled back through a right
//! inverse.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{echelon_polynomials, int, Monomial, Polynomial, Rational, RationalMatrix};
use crate::groupchart::Chart;
use crate::liecore::{
    extend_hom, homogeneous_weight, AlgebraElement, FreeNilpotent, LieAlgebra, Subspace,
};
use crate::spoly::bound::{degree_bound, DegreeBoundWitness};
use crate::spoly::problem::{ConditionSystem, Mode, SPolyProblem};

/// Why the returned space is complete, or how far it was checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every degree up to the bound `nu` was solved.
    PaperBound { nu: usize },
    /// Blocks vanished on `window` consecutive degrees ending at `last_degree`.
    RightTranslationStability { window: usize, last_degree: usize },
    /// User-chosen degree whose next `window` blocks were checked to vanish.
    StabilizationChecked { degree: usize, window: usize },
    /// User-chosen degree below the true top degree.
    Incomplete { degree: usize },
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::PaperBound { .. } => "certified (degree bound)",
            Certificate::RightTranslationStability { .. } => "certified (right-translation stability)",
            Certificate::StabilizationChecked { .. } => "stabilization-checked",
            Certificate::Incomplete { .. } => "incomplete",
        }
    }

    pub fn is_complete(&self) -> bool {
        !matches!(self, Certificate::Incomplete { .. })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::PaperBound { nu } => write!(f, "{} at nu = {nu}", self.tag()),
            Certificate::RightTranslationStability { window, last_degree } => write!(
                f,
                "{}: zero blocks on a window of {window} ending at degree {last_degree}",
                self.tag()
            ),
            Certificate::StabilizationChecked { degree, window } => {
                write!(f, "{}: degree {degree}, next {window} block(s) zero", self.tag())
            }
            Certificate::Incomplete { degree } => {
                write!(f, "{}: nonzero solutions above degree {degree}", self.tag())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    /// Solved block by block; `native` is false when the chart basis is not
    /// homogeneous and the blocks were solved in first kind.
    Graded { native: bool, window: usize },
    FreeLift { free_dim: usize, kernel_dim: usize },
}

#[derive(Clone, Debug)]
pub struct SPolyBasis {
    pub problem: SPolyProblem,
    pub witness: DegreeBoundWitness,
    pub certificate: Certificate,
    pub route: Route,
    /// Highest block degree that was solved.
    pub solve_degree: usize,
    /// Reduced echelon basis in the problem's chart, ascending.
    pub basis: Vec<Polynomial>,
}

impl SPolyBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest total degree among basis elements.
    pub fn max_total_degree(&self) -> i64 {
        self.basis.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// Largest weighted degree, when the chart coordinates carry weights.
    pub fn max_weighted_degree(&self) -> Option<i64> {
        let w = self.problem.chart.weights()?;
        Some(
            self.basis
                .iter()
                .filter_map(|p| p.weighted_degree(w))
                .max()
                .unwrap_or(0),
        )
    }
}

#[derive(Clone, Copy, Debug)]
enum Stop {
    Auto { cap: Option<usize> },
    Fixed { degree: usize },
}

/// Solves the problem with the automatic stopping rule.
pub fn spoly_basis(problem: &SPolyProblem) -> Result<SPolyBasis> {
    solve(problem, Stop::Auto { cap: None })
}

/// Solves every block up to `degree` and reports whether the next blocks
/// vanish.
pub fn spoly_basis_with_degree(problem: &SPolyProblem, degree: usize) -> Result<SPolyBasis> {
    solve(problem, Stop::Fixed { degree })
}

/// Weights usable for block solving: declared ones, or all ones for an
/// abelian algebra.
fn effective_weights(algebra: &LieAlgebra) -> Option<Vec<u32>> {
    match algebra.weights() {
        Some(w) if w.iter().all(|&x| x >= 1) && algebra.check_grading().is_ok() => Some(w.to_vec()),
        Some(_) => None,
        None if algebra.is_abelian() => Some(vec![1; algebra.dim()]),
        None => None,
    }
}

fn stability_window(algebra: &LieAlgebra, weights: &[u32]) -> Result<usize> {
    let layer: Vec<AlgebraElement> = (0..algebra.dim())
        .filter(|&i| weights[i] == 1)
        .map(|i| algebra.basis_element(i))
        .collect();
    if algebra.lie_generates(&layer)?.generates {
        Ok(1)
    } else {
        Ok(weights.iter().copied().max().unwrap_or(1) as usize)
    }
}

fn check_hypotheses(problem: &SPolyProblem) -> Result<usize> {
    let algebra = problem.chart.algebra();
    let validation = algebra.validate()?;
    let closure = algebra.lie_generates(&problem.directions)?;
    if !closure.generates {
        let names = algebra.basis_names();
        let spanned = closure
            .span
            .basis()
            .iter()
            .map(|v| AlgebraElement::new(v.clone()).format(names))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::NotLieGenerating {
            closure_dim: closure.span.dim(),
            dim: algebra.dim(),
            closure: format!("span{{{spanned}}}"),
        });
    }
    Ok(validation.step)
}

fn solve(problem: &SPolyProblem, stop: Stop) -> Result<SPolyBasis> {
    let step = check_hypotheses(problem)?;
    let algebra = problem.chart.algebra().clone();
    let n = algebra.dim();
    let k = problem.k_max() as u64;
    let letters = problem.letters();
    let weights = effective_weights(&algebra);
    let graded = weights
        .as_ref()
        .map(|w| letters.iter().all(|x| homogeneous_weight(w, x).is_some()))
        .unwrap_or(false);

    if graded {
        let weights = weights.expect("graded");
        let horizontal_spanning = algebra.is_stratified()
            && letters.iter().all(|x| homogeneous_weight(&weights, x) == Some(1))
            && Subspace::span(n, letters.iter().map(|x| x.coeffs().to_vec())).dim()
                == weights.iter().filter(|&&w| w == 1).count();
        let l = if horizontal_spanning { 2 * n } else { 2 * free_dim_estimate(&letters, step)? };
        let witness = degree_bound(k, step.max(1) as u64, l as u64)?;
        let window = stability_window(&algebra, &weights)?;
        let chart_weights: Option<Vec<u32>> = problem
            .chart
            .weights()
            .map(<[u32]>::to_vec)
            .or_else(|| algebra.is_abelian().then(|| vec![1; n]));
        let stop = match stop {
            Stop::Auto { .. } => Stop::Auto { cap: witness.nu_usize() },
            other => other,
        };
        let (basis, solve_degree, certificate, native) = match chart_weights {
            Some(cw) => {
                let mut system = ConditionSystem::for_problem(problem)?;
                let (b, d, c) = graded_solve(&mut system, &cw, window, stop, witness.nu_usize())?;
                (b, d, c, true)
            }
            None => {
                let first = Chart::first(&algebra)?;
                let lifted = problem.with_chart(first.clone());
                let mut system = ConditionSystem::for_problem(&lifted)?;
                let (b, d, c) = graded_solve(&mut system, &weights, window, stop, witness.nu_usize())?;
                let converted = b
                    .iter()
                    .map(|f| problem.chart.function_from_first(f))
                    .collect::<Result<Vec<_>>>()?;
                (converted, d, c, false)
            }
        };
        let basis = echelon_polynomials(&basis)?;
        verify_soundness(problem, &basis)?;
        return Ok(SPolyBasis {
            problem: problem.clone(),
            witness,
            certificate,
            route: Route::Graded { native, window },
            solve_degree,
            basis,
        });
    }
    free_lift(problem, stop, step)
}

fn free_dim_estimate(letters: &[AlgebraElement], step: usize) -> Result<usize> {
    if letters.len() < 2 {
        return Ok(letters.len().max(1));
    }
    Ok(crate::liecore::witt_dimension(letters.len(), step.max(1)))
}

/// All monomials of weighted degree `d`.
pub fn monomials_of_weight(weights: &[u32], d: usize) -> Vec<Monomial> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut exps = vec![0i32; n];
    fn rec(weights: &[u32], i: usize, left: usize, exps: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let w = weights[i] as usize;
        let mut e = 0;
        while e * w <= left {
            exps[i] = e as i32;
            rec(weights, i + 1, left - e * w, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    rec(weights, 0, d, &mut exps, &mut out);
    out.sort();
    out
}

/// Kernel of the stacked conditions restricted to the span of `columns`.
fn block_kernel(system: &mut ConditionSystem, columns: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if columns.is_empty() {
        return Ok(Vec::new());
    }
    let ring = system.ring().clone();
    let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for c in 0..system.conditions().len() {
            let image = system.apply(c, col)?;
            for (m, v) in image.terms() {
                let next = row_index.len();
                let r = *row_index.entry((c, m.clone())).or_insert(next);
                entries.push((r, j, v.clone()));
            }
        }
    }
    let mut matrix = RationalMatrix::zeros(row_index.len(), columns.len());
    for (r, j, v) in entries {
        matrix.set(r, j, v);
    }
    let kernel = if row_index.is_empty() {
        (0..columns.len())
            .map(|j| {
                let mut v = vec![Rational::zero(); columns.len()];
                v[j] = int(1);
                v
            })
            .collect()
    } else {
        matrix.kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero(&ring);
            for (c, col) in v.iter().zip(columns) {
                if !c.is_zero() {
                    p.add_scaled(col, c);
                }
            }
            p
        })
        .collect())
}

fn graded_solve(
    system: &mut ConditionSystem,
    weights: &[u32],
    window: usize,
    stop: Stop,
    nu: Option<usize>,
) -> Result<(Vec<Polynomial>, usize, Certificate)> {
    let ring = system.ring().clone();
    let block = |system: &mut ConditionSystem, d: usize| -> Result<Vec<Polynomial>> {
        let cols: Vec<Polynomial> = monomials_of_weight(weights, d)
            .into_iter()
            .map(|m| Polynomial::monomial(&ring, m, int(1)))
            .collect();
        block_kernel(system, &cols)
    };
    let mut basis = Vec::new();
    match stop {
        Stop::Auto { cap } => {
            let mut zero_run = 0;
            let mut d = 0;
            loop {
                let b = block(system, d)?;
                if d >= 1 && b.is_empty() {
                    zero_run += 1;
                } else {
                    zero_run = 0;
                }
                basis.extend(b);
                if zero_run == window {
                    return Ok((
                        basis,
                        d,
                        Certificate::RightTranslationStability { window, last_degree: d },
                    ));
                }
                if cap == Some(d) {
                    return Ok((basis, d, Certificate::PaperBound { nu: d }));
                }
                d += 1;
            }
        }
        Stop::Fixed { degree } => {
            for d in 0..=degree {
                basis.extend(block(system, d)?);
            }
            let certificate = if nu.is_some_and(|nu| degree >= nu) {
                Certificate::PaperBound { nu: nu.expect("checked") }
            } else {
                let mut clean = true;
                for d in degree + 1..=degree + window {
                    if !block(system, d)?.is_empty() {
                        clean = false;
                        break;
                    }
                }
                if clean {
                    Certificate::StabilizationChecked { degree, window }
                } else {
                    Certificate::Incomplete { degree }
                }
            };
            Ok((basis, degree, certificate))
        }
    }
}

/// Checks every element against every condition in the problem's chart.
pub fn verify_soundness(problem: &SPolyProblem, basis: &[Polynomial]) -> Result<()> {
    let mut system = ConditionSystem::for_problem(problem)?;
    for f in basis {
        if !system.satisfied_by(f)? {
            return Err(Error::Violation(format!(
                "basis element {f} does not satisfy the conditions"
            )));
        }
    }
    Ok(())
}

fn free_lift(problem: &SPolyProblem, stop: Stop, step: usize) -> Result<SPolyBasis> {
    let algebra = problem.chart.algebra();
    let letters = problem.letters();
    let m = letters.len();
    let free = FreeNilpotent::new(m, step.max(1))?;
    let phi = extend_hom(&free, algebra, &letters)?;
    if !phi.is_surjective() {
        return Err(Error::Hypothesis("lift is not surjective".into()));
    }
    let free_chart = Chart::first(&free.algebra)?;
    let generators: Vec<AlgebraElement> = (0..m).map(|i| free.algebra.basis_element(i)).collect();
    let lifted = match problem.mode {
        Mode::PerDirection => SPolyProblem::per_direction(
            free_chart.clone(),
            generators.into_iter().zip(problem.orders.iter().copied()).collect(),
        )?,
        Mode::SubspaceUniform => SPolyProblem::subspace(free_chart.clone(), generators, problem.k_max())?,
    };
    let upstairs = solve(&lifted, stop)?;
    // Keep the combinations killed by the kernel fields.
    let kernel = phi.kernel();
    let h = if kernel.is_zero() || upstairs.basis.is_empty() {
        upstairs.basis.clone()
    } else {
        let ring = free_chart.ring().clone();
        let fields: Vec<_> = kernel
            .basis()
            .iter()
            .map(|v| free_chart.field_of(&AlgebraElement::new(v.clone())))
            .collect();
        let mut row_index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut entries = Vec::new();
        for (j, g) in upstairs.basis.iter().enumerate() {
            for (c, field) in fields.iter().enumerate() {
                for (mono, v) in field.apply(g)?.terms() {
                    let next = row_index.len();
                    let r = *row_index.entry((c, mono.clone())).or_insert(next);
                    entries.push((r, j, v.clone()));
                }
            }
        }
        let mut matrix = RationalMatrix::zeros(row_index.len().max(1), upstairs.basis.len());
        for (r, j, v) in entries {
            matrix.set(r, j, v);
        }
        matrix
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let mut p = Polynomial::zero(&ring);
                for (c, g) in v.iter().zip(&upstairs.basis) {
                    if !c.is_zero() {
                        p.add_scaled(g, c);
                    }
                }
                p
            })
            .collect()
    };
    // f(a) = h(psi a)
    let psi = phi.right_inverse()?;
    let target_first = problem.chart.first_ring().clone();
    let images: Vec<Polynomial> = (0..free.dim())
        .map(|i| {
            let mut p = Polynomial::zero(&target_first);
            for kk in 0..algebra.dim() {
                let c = psi.get(i, kk);
                if !c.is_zero() {
                    p.add_scaled(&Polynomial::var(&target_first, kk), c);
                }
            }
            p
        })
        .collect();
    let mut pulled = Vec::with_capacity(h.len());
    for g in &h {
        let f_first = g.compose(&target_first, &images)?;
        pulled.push(problem.chart.function_from_first(&f_first)?);
    }
    let basis = echelon_polynomials(&pulled)?;
    if basis.len() != h.len() {
        return Err(Error::Violation("pullback lost linear independence".into()));
    }
    verify_soundness(problem, &basis)?;
    let n = algebra.dim();
    let l = if letters.len() >= 2 { 2 * free.dim() } else { 2 * n };
    let witness = degree_bound(problem.k_max() as u64, step.max(1) as u64, l as u64)?;
    Ok(SPolyBasis {
        problem: problem.clone(),
        witness,
        certificate: upstairs.certificate,
        route: Route::FreeLift {
            free_dim: free.dim(),
            kernel_dim: kernel.dim(),
        },
        solve_degree: upstairs.solve_degree,
        basis,
    })
}
