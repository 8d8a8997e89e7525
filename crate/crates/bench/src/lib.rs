//! Benchmark workloads.

use atlas_core::factory::{default_window, quadruple_line, triple_line, TripleData};
use atlas_core::invariants::{is_cdl, min_surface_degree};
use atlas_core::{GradedIdeal, MultiLineCurve, PrimeField, Result};

pub fn good_data(a: u32, b: u32) -> TripleData {
    TripleData::good(PrimeField::default(), a, b)
}

/// Hilbert function of `I_L^d` up to its default window, slice by slice.
pub fn neighbourhood_slices(d: u32) -> usize {
    let ideal = GradedIdeal::line_power(PrimeField::default(), d);
    ideal.hilbert_values(default_window(d, 0, 0)).iter().sum()
}

pub fn triple(data: &TripleData) -> Result<MultiLineCurve> {
    triple_line(data)
}

pub fn quadruple(data: &TripleData, seed: u64) -> Result<MultiLineCurve> {
    quadruple_line(data, seed)
}

/// `s(C)` and the `C_{d,l}` criteria at level `l`.
pub fn certify(curve: &MultiLineCurve, d: u32, l: u32) -> Result<(u32, bool)> {
    Ok((min_surface_degree(curve)?, is_cdl(curve, d, l, 0)?.holds()))
}
