//! JSON algebra documents and `builtin:NAME` references.

use std::fs;

use serde::Deserialize;

use nilpoly_core::builtins;
use nilpoly_core::exactalg::{parse_rational, Polynomial, Ring};
use nilpoly_core::liecore::{AlgebraElement, LieAlgebra};
use nilpoly_core::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
    #[serde(default)]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub charts: Option<ChartDeclarations>,
}

/// `[X_i, X_j] = c X_k` with 1-based indices; the mirrored bracket is implied
/// unless listed explicitly.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDeclarations {
    /// Ordered basis for second-kind coordinates, as linear combinations of
    /// basis names.
    #[serde(default)]
    pub second: Option<Vec<String>>,
}

/// A loaded algebra plus an optional declared second-kind basis.
pub struct Loaded {
    pub algebra: LieAlgebra,
    pub second_basis: Option<Vec<AlgebraElement>>,
}

pub fn load(input: &str) -> Result<Loaded> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return Ok(Loaded {
            algebra: builtins::by_name(name)?,
            second_basis: None,
        });
    }
    let text = fs::read_to_string(input).map_err(|e| Error::Input(format!("{input}: {e}")))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{input}: {m}")),
        other => other,
    })
}

pub fn parse_document(text: &str) -> Result<Loaded> {
    let doc: AlgebraDocument = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let n = doc.dimension;
    if doc.basis.len() != n {
        return Err(Error::Parse(format!(
            "basis: {} names for dimension {n}",
            doc.basis.len()
        )));
    }
    let mut brackets = Vec::with_capacity(doc.brackets.len());
    for (idx, b) in doc.brackets.iter().enumerate() {
        for (field, v) in [("i", b.i), ("j", b.j), ("k", b.k)] {
            if v == 0 || v > n {
                return Err(Error::Parse(format!(
                    "brackets[{idx}].{field}: index {v} outside 1..={n}"
                )));
            }
        }
        let c = parse_rational(&b.c).map_err(|e| Error::Parse(format!("brackets[{idx}].c: {e}")))?;
        brackets.push((b.i - 1, b.j - 1, b.k - 1, c));
    }
    if let Some(w) = &doc.weights {
        if w.len() != n {
            return Err(Error::Parse(format!("weights: {} entries for dimension {n}", w.len())));
        }
    }
    let algebra = LieAlgebra::from_brackets(&doc.name, doc.basis.clone(), &brackets, doc.weights.clone())?;
    let second_basis = match doc.charts.and_then(|c| c.second) {
        None => None,
        Some(items) => Some(
            items
                .iter()
                .enumerate()
                .map(|(idx, s)| {
                    parse_element(&algebra, s).map_err(|e| Error::Parse(format!("charts.second[{idx}]: {e}")))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(Loaded { algebra, second_basis })
}

/// Parses a linear combination of basis names such as `X2 + 1/2*X3`.
pub fn parse_element(algebra: &LieAlgebra, text: &str) -> Result<AlgebraElement> {
    let ring = Ring::new(algebra.basis_names());
    let p = Polynomial::parse(&ring, text)?;
    let mut coeffs = vec![nilpoly_core::exactalg::int(0); algebra.dim()];
    for (m, c) in p.terms().iter() {
        let e = m.exponents();
        match e.iter().position(|&x| x != 0) {
            Some(i) if e[i] == 1 && m.total_degree() == 1 => coeffs[i] = c.clone(),
            _ => {
                return Err(Error::Parse(format!(
                    "`{text}` is not a linear combination of {}",
                    algebra.basis_names().join(", ")
                )))
            }
        }
    }
    let x = AlgebraElement::new(coeffs);
    if x.is_zero() {
        return Err(Error::Parse(format!("`{text}` is the zero element")));
    }
    Ok(x)
}

/// `X1:1,X2:2` into directions with orders.
pub fn parse_directions(algebra: &LieAlgebra, text: &str) -> Result<Vec<(AlgebraElement, u32)>> {
    text.split(',')
        .map(|item| {
            let (name, order) = item
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("`{item}`: expected NAME:ORDER")))?;
            let k: u32 = order
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{item}`: order must be a positive integer")))?;
            if k == 0 {
                return Err(Error::Parse(format!("`{item}`: order must be positive")));
            }
            Ok((parse_element(algebra, name)?, k))
        })
        .collect()
}

/// `V1` (the weight-one layer) or a comma-separated list of elements.
pub fn parse_subspace(algebra: &LieAlgebra, text: &str) -> Result<Vec<AlgebraElement>> {
    if text.trim() == "V1" {
        let layer = algebra.layer(1);
        if layer.is_empty() || algebra.weights().is_none() {
            return Err(Error::Input(format!(
                "`V1` needs layer weights; algebra `{}` declares none",
                algebra.name()
            )));
        }
        return Ok(layer.into_iter().map(|i| algebra.basis_element(i)).collect());
    }
    text.split(',').map(|s| parse_element(algebra, s)).collect()
}
