//! One function per verb. Each returns a serializable report and its plain
//! text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use nilpoly_core::builtins;
use nilpoly_core::exactalg::{same_span, Polynomial};
use nilpoly_core::groupchart::Chart;
use nilpoly_core::spoly::{
    degree_bound, spoly_basis, spoly_basis_with_degree, verify_soundness, DegreeBoundWitness, Route, SPolyBasis, SPolyProblem,
};
use nilpoly_core::suites::{self, SuiteReport};
use nilpoly_core::{Error, Result};

use crate::document::{self, Loaded};

pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    /// False when a mathematical check failed.
    pub ok: bool,
}

fn output<T: Serialize>(report: &T, text: String, ok: bool) -> Output {
    Output {
        json: serde_json::to_value(report).expect("reports serialize"),
        text,
        ok,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ChartChoice {
    First,
    Second,
}

/// Second kind when the algebra carries layer weights or the document
/// declares an ordered basis, first kind otherwise.
pub fn make_chart(loaded: &Loaded, choice: Option<ChartChoice>) -> Result<Chart> {
    let a = &loaded.algebra;
    let choice = choice.unwrap_or(if a.weights().is_some() || loaded.second_basis.is_some() {
        ChartChoice::Second
    } else {
        ChartChoice::First
    });
    match (choice, &loaded.second_basis) {
        (ChartChoice::First, _) => Chart::first(a),
        (ChartChoice::Second, Some(basis)) => Chart::second_with_basis(a, basis.clone()),
        (ChartChoice::Second, None) => Chart::second(a),
    }
}

#[derive(Serialize)]
struct ValidateReport {
    algebra: String,
    dimension: usize,
    basis: Vec<String>,
    step: usize,
    lcs_dimensions: Vec<usize>,
    weights: Option<Vec<u32>>,
    stratified: bool,
}

pub fn validate(input: &str) -> Result<Output> {
    let a = document::load(input)?.algebra;
    let v = a.validate()?;
    let r = ValidateReport {
        algebra: a.name().to_string(),
        dimension: a.dim(),
        basis: a.basis_names().to_vec(),
        step: v.step,
        lcs_dimensions: v.lcs.dims(),
        weights: a.weights().map(<[u32]>::to_vec),
        stratified: a.is_stratified(),
    };
    let mut text = String::new();
    writeln!(text, "algebra {} (dimension {}): valid", r.algebra, r.dimension).unwrap();
    writeln!(text, "step {}", r.step).unwrap();
    writeln!(text, "lower central series dimensions {:?}", r.lcs_dimensions).unwrap();
    match &r.weights {
        Some(w) => writeln!(text, "weights {w:?}, stratified: {}", r.stratified).unwrap(),
        None => writeln!(text, "no layer weights declared").unwrap(),
    }
    Ok(output(&r, text, true))
}

#[derive(Serialize)]
struct WitnessReport {
    k: u64,
    s: u64,
    l: u64,
    a: Vec<String>,
    nu_sequence: Vec<String>,
    nu: String,
    jet_order: String,
}

impl From<&DegreeBoundWitness> for WitnessReport {
    fn from(w: &DegreeBoundWitness) -> Self {
        WitnessReport {
            k: w.k,
            s: w.s,
            l: w.l,
            a: w.a.iter().map(ToString::to_string).collect(),
            nu_sequence: w.nu_seq.iter().map(ToString::to_string).collect(),
            nu: w.nu.to_string(),
            jet_order: w.d.to_string(),
        }
    }
}

fn witness_text(w: &WitnessReport) -> String {
    let mut t = format!("degree bound for k={}, s={}, l={}\n", w.k, w.s, w.l);
    for (j, a) in w.a.iter().enumerate() {
        writeln!(t, "  a_{j} = {a}").unwrap();
    }
    for (j, nu) in w.nu_sequence.iter().enumerate() {
        writeln!(t, "  nu_{} = {nu}", j + 1).unwrap();
    }
    writeln!(t, "  nu = {}", w.nu).unwrap();
    writeln!(t, "  D = {}", w.jet_order).unwrap();
    t
}

pub fn bound(k: u64, s: u64, l: u64) -> Result<Output> {
    let w = WitnessReport::from(&degree_bound(k, s, l)?);
    let text = witness_text(&w);
    Ok(output(&w, text, true))
}

pub enum Directions {
    PerDirection(String),
    Subspace { spec: String, k: u32 },
}

#[derive(Serialize)]
struct SolveReport {
    algebra: String,
    chart: String,
    problem: String,
    route: String,
    witness: WitnessReport,
    certificate: String,
    complete: bool,
    solve_degree: usize,
    dimension: usize,
    basis: Vec<String>,
    first_kind_basis: Option<Vec<String>>,
    max_total_degree: i64,
    max_weighted_degree: Option<i64>,
    sound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    worked_example: Option<WorkedExample>,
}

/// Display form of a built-in worked example with the same problem.
#[derive(Serialize)]
struct WorkedExample {
    label: String,
    presentation: Vec<String>,
    same_space: bool,
}

fn worked_example(loaded: &Loaded, sol: &SPolyBasis) -> Result<Option<WorkedExample>> {
    if loaded.second_basis.is_some() {
        return Ok(None);
    }
    let chart = &sol.problem.chart;
    for case in suites::worked_cases()? {
        let c = &case.problem.chart;
        if c.label() == chart.label()
            && c.algebra().constants() == chart.algebra().constants()
            && c.algebra().basis_names() == chart.algebra().basis_names()
            && case.problem.describe() == sol.problem.describe()
        {
            let expected = case
                .expected
                .iter()
                .map(|e| Polynomial::parse(chart.ring(), e))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(WorkedExample {
                label: case.label,
                same_space: same_span(&expected, &sol.basis)?,
                presentation: case.expected,
            }));
        }
    }
    Ok(None)
}

pub fn solve(input: &str, dirs: Directions, chart: Option<ChartChoice>, degree: Option<usize>) -> Result<Output> {
    let loaded = document::load(input)?;
    let a = &loaded.algebra;
    a.validate()?;
    let chart = make_chart(&loaded, chart)?;
    let problem = match dirs {
        Directions::PerDirection(spec) => SPolyProblem::per_direction(chart, document::parse_directions(a, &spec)?)?,
        Directions::Subspace { spec, k } => {
            if k == 0 {
                return Err(Error::Input("--k must be positive".into()));
            }
            SPolyProblem::subspace(chart, document::parse_subspace(a, &spec)?, k)?
        }
    };
    let sol = match degree {
        Some(n) => spoly_basis_with_degree(&problem, n)?,
        None => spoly_basis(&problem)?,
    };
    let chart = &sol.problem.chart;
    let sound = verify_soundness(&sol.problem, &sol.basis).is_ok();
    let first_kind_basis = if chart.is_first_kind() {
        None
    } else {
        Some(
            sol.basis
                .iter()
                .map(|p| chart.function_to_first(p).map(|q| q.to_string()))
                .collect::<Result<_>>()?,
        )
    };
    let r = SolveReport {
        algebra: a.name().to_string(),
        chart: chart.label().to_string(),
        problem: sol.problem.describe(),
        route: match sol.route {
            Route::Graded { native: true, .. } => "graded".into(),
            Route::Graded { native: false, .. } => "graded (first-kind blocks)".into(),
            Route::FreeLift { free_dim, kernel_dim } => {
                format!("free lift (free dimension {free_dim}, kernel dimension {kernel_dim})")
            }
        },
        witness: WitnessReport::from(&sol.witness),
        certificate: sol.certificate.to_string(),
        complete: sol.certificate.is_complete(),
        solve_degree: sol.solve_degree,
        dimension: sol.dim(),
        basis: sol.basis.iter().map(Polynomial::to_string).collect(),
        first_kind_basis,
        max_total_degree: sol.max_total_degree(),
        max_weighted_degree: sol.max_weighted_degree(),
        sound,
        worked_example: worked_example(&loaded, &sol)?,
    };
    let mut text = String::new();
    writeln!(text, "algebra {}, {} chart", r.algebra, r.chart).unwrap();
    writeln!(text, "S = {}", r.problem).unwrap();
    writeln!(text, "route: {}", r.route).unwrap();
    writeln!(text, "bound: nu = {}, D = {} (l = {})", r.witness.nu, r.witness.jet_order, r.witness.l).unwrap();
    writeln!(text, "completeness: {}", r.certificate).unwrap();
    writeln!(text, "dimension {}", r.dimension).unwrap();
    for (i, p) in r.basis.iter().enumerate() {
        match &r.first_kind_basis {
            Some(first) => writeln!(text, "  {p}    [first kind: {}]", first[i]).unwrap(),
            None => writeln!(text, "  {p}").unwrap(),
        }
    }
    if let Some(w) = &r.worked_example {
        writeln!(
            text,
            "worked example `{}`: {{{}}} ({})",
            w.label,
            w.presentation.join(", "),
            if w.same_space { "same space" } else { "DIFFERENT space" }
        )
        .unwrap();
    }
    writeln!(text, "soundness: {}", if sound { "all conditions vanish" } else { "FAILED" }).unwrap();
    Ok(output(&r, text, sound))
}

#[derive(Serialize)]
struct FieldsReport {
    algebra: String,
    chart: String,
    fields: Vec<FieldEntry>,
}

#[derive(Serialize)]
struct FieldEntry {
    element: String,
    components: Vec<String>,
}

pub fn fields(input: &str, chart: Option<ChartChoice>) -> Result<Output> {
    let loaded = document::load(input)?;
    let chart = make_chart(&loaded, chart)?;
    let names = chart.algebra().basis_names();
    let r = FieldsReport {
        algebra: chart.algebra().name().to_string(),
        chart: chart.label().to_string(),
        fields: chart
            .fields()
            .iter()
            .zip(names)
            .map(|(d, n)| FieldEntry {
                element: n.clone(),
                components: d.coefficients().iter().map(Polynomial::to_string).collect(),
            })
            .collect(),
    };
    let mut text = format!("left-invariant fields of {} in {} coordinates\n", r.algebra, r.chart);
    for (d, n) in chart.fields().iter().zip(names) {
        writeln!(text, "  {n} = {d}").unwrap();
    }
    Ok(output(&r, text, true))
}

#[derive(Serialize)]
struct ConvertReport {
    algebra: String,
    from: String,
    to: String,
    input: String,
    output: String,
}

pub fn convert(input: &str, from: ChartChoice, to: ChartChoice, expr: &str) -> Result<Output> {
    let loaded = document::load(input)?;
    let second = make_chart(&loaded, Some(ChartChoice::Second))?;
    let result = match (from, to) {
        (ChartChoice::Second, ChartChoice::First) => second.function_to_first(&Polynomial::parse(second.ring(), expr)?)?,
        (ChartChoice::First, ChartChoice::Second) => {
            second.function_from_first(&Polynomial::parse(second.first_ring(), expr)?)?
        }
        (ChartChoice::First, ChartChoice::First) => Polynomial::parse(second.first_ring(), expr)?,
        (ChartChoice::Second, ChartChoice::Second) => Polynomial::parse(second.ring(), expr)?,
    };
    let label = |c: ChartChoice| if c == ChartChoice::First { "first" } else { "second" };
    let r = ConvertReport {
        algebra: loaded.algebra.name().to_string(),
        from: label(from).into(),
        to: label(to).into(),
        input: expr.to_string(),
        output: result.to_string(),
    };
    let text = format!("{}\n", r.output);
    Ok(output(&r, text, true))
}

#[derive(Serialize)]
struct ExampleEntry {
    name: &'static str,
    description: &'static str,
}

pub fn examples() -> Output {
    let list: Vec<ExampleEntry> = builtins::catalogue()
        .into_iter()
        .map(|(name, description)| ExampleEntry { name, description })
        .collect();
    let mut text = String::new();
    for e in &list {
        writeln!(text, "{:<12} {}", e.name, e.description).unwrap();
    }
    output(&list, text, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Representation,
    Leibman,
    Counterexamples,
    /// The worked example reproductions.
    Appendix,
    Structural,
    Stability,
}

#[derive(Serialize)]
struct CheckEntry {
    label: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SuiteEntry {
    suite: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
    checks: Vec<CheckEntry>,
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    passed: bool,
    suites: Vec<SuiteEntry>,
}

pub fn verify(suite: Suite, seed: u64, instances: usize, timing: bool) -> Result<Output> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut reports: Vec<SuiteReport> = Vec::new();
    let needs_cases = wants(Suite::Appendix) || wants(Suite::Leibman) || wants(Suite::Stability);
    let cases = if needs_cases { Some(suites::run_worked_examples()?) } else { None };
    if let Some((report, outcomes)) = &cases {
        if wants(Suite::Appendix) {
            reports.push(report.clone());
        }
        if wants(Suite::Leibman) {
            reports.push(suites::leibman_suite(outcomes)?);
        }
        if wants(Suite::Stability) {
            reports.push(suites::degree_stability_suite(outcomes)?);
        }
    }
    if wants(Suite::Representation) {
        reports.push(suites::representation_suite(seed, instances)?);
    }
    if wants(Suite::Structural) {
        reports.push(suites::structural_suite()?);
    }
    if wants(Suite::Counterexamples) {
        reports.push(suites::counterexample_suite()?);
    }
    let r = VerifyReport {
        seed,
        passed: reports.iter().all(SuiteReport::passed),
        suites: reports
            .iter()
            .map(|s| SuiteEntry {
                suite: s.suite.clone(),
                passed: s.passed(),
                elapsed_ms: timing.then_some(s.elapsed.as_millis() as u64),
                checks: s
                    .checks
                    .iter()
                    .map(|c| CheckEntry {
                        label: c.label.clone(),
                        passed: c.passed,
                        detail: c.detail.clone(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut text = String::new();
    for s in &r.suites {
        let time = s.elapsed_ms.map(|ms| format!(" [{ms} ms]")).unwrap_or_default();
        writeln!(text, "suite {}: {}{time}", s.suite, if s.passed { "pass" } else { "FAIL" }).unwrap();
        for c in &s.checks {
            let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
            writeln!(text, "  {} {}{detail}", if c.passed { "ok  " } else { "FAIL" }, c.label).unwrap();
        }
    }
    let ok = r.passed;
    Ok(output(&r, text, ok))
}

/// Exit code for an error: 2 for malformed input, 1 for mathematical
/// failures such as violated axioms or hypotheses.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Input(_) | Error::Unknown(_) | Error::DimensionMismatch { .. } => 2,
        _ => 1,
    }
}

