//! The group through exponential coordinates.

pub mod bch;
pub mod chart;

pub use bch::{bch_product, dynkin_coefficient, Bch, GroupPoint};
pub use chart::{dilate, Chart, ChartKind};

use crate::error::Result;
use crate::exactalg::Derivation;
use crate::liecore::LieAlgebra;

/// Left-invariant fields of the basis of `algebra` in `chart`.
pub fn left_invariant_fields(chart: &Chart) -> Vec<Derivation> {
    chart.fields().to_vec()
}

/// Converts chart coordinates of the second kind (standard basis order) to
/// first kind, as polynomial maps.
pub fn second_to_first_map(algebra: &LieAlgebra) -> Result<Chart> {
    Chart::second(algebra)
}
