use num_complex::Complex64;

use super::{partition, Limits, Method};
use crate::code::CodeOverZq;
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::scaled::ScaledValue;

fn check_point(q: u32, x: &[Complex64]) -> Result<()> {
    if x.len() != q as usize {
        return Err(Error::DimensionMismatch(format!("{} enumerator variables, q = {q}", x.len())));
    }
    Ok(())
}

/// Complete weight enumerator `Σ_{v ∈ C} Π_i x(v_i)`, by listing codewords.
pub fn weight_enumerator(code: &CodeOverZq, x: &[Complex64], limits: &Limits) -> Result<ScaledValue> {
    check_point(code.q(), x)?;
    limits.check_enumeration(code.log2_cardinality())?;
    let mut total = ScaledValue::ZERO;
    for word in code.codewords() {
        let mut p = ScaledValue::ONE;
        for &d in word.entries() {
            p = p.scale(x[d as usize]);
        }
        total = total + p;
    }
    Ok(total)
}

/// Enumerator of the cut code of `g` at `x`, through the partition engines:
/// with `x` on every edge, `Z = q^c · W(x)` for `c` connected components.
pub fn cut_weight_enumerator(g: &OrientedGraph, q: u32, x: &[Complex64], limits: &Limits) -> Result<ScaledValue> {
    check_point(q, x)?;
    let w = WeightTable::uniform(q, g.edge_count(), x)?;
    let z = partition(g, &w, Method::Auto, limits)?.value;
    let c = g.components().len() as i64;
    Ok(z * ScaledValue::from_f64(q as f64).powi(-c))
}
