use super::{check_weights, EvalReport, Engine, Limits, NormalizedWeights};
use crate::code::{cut_code, enumerate_codewords};
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::scaled::ScaledValue;

/// `Z = q · Σ_{v ∈ C} Π_e w_e(v_e)` over the cut code `C`, i.e. `q` times the
/// overlap of the code state with the product of the weight vectors. Each
/// codeword stands for the `q` spin assignments that differ by a global shift.
pub fn codeword_overlap_partition(g: &OrientedGraph, w: &WeightTable, limits: &Limits) -> Result<EvalReport> {
    check_weights(g, w)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let q = w.q();
    limits.check_enumeration((g.vertex_count() - 1) as f64 * (q as f64).log2())?;

    let code = cut_code(g, q)?;
    let norm = NormalizedWeights::new(w);
    let mut total = ScaledValue::ZERO;
    let mut count = 0u64;
    for word in enumerate_codewords(&code, g)? {
        total = total + norm.product(|e| word.get(e) as usize);
        count += 1;
    }
    let value = total.scale((q as f64).into()).mul_pow2(norm.shift);
    Ok(EvalReport { value, method: Engine::Overlap, cost: count, width: None })
}
