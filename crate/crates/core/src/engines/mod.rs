//! Partition-function evaluators and the dispatcher that routes between them.
//!
//! All evaluators compute `Z = Σ_s Π_e w_e((s_head - s_tail) mod q)` for a
//! [`WeightTable`]; real models go through
//! [`InteractionTable::boltzmann_weights`](crate::InteractionTable::boltzmann_weights) first.

mod brute;
mod closed;
mod contract;
mod enumerator;
mod overlap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use brute::brute_force_partition;
pub use closed::{cycle_closed_form, is_coherent_cycle, tree_closed_form};
pub use contract::treewidth_contract;
pub use enumerator::{cut_weight_enumerator, weight_enumerator};
pub use overlap::codeword_overlap_partition;

use crate::error::{Error, Result};
use crate::graph::decomposition::{tree_decomposition, DecompositionStrategy};
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::scaled::ScaledValue;

/// Engine selection for [`partition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Brute,
    Overlap,
    Contract,
    Closed,
}

/// Which engine produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Overlap,
    Contract,
    Closed,
    /// Components of a disconnected graph went to different engines.
    Mixed,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Overlap => "overlap",
            Engine::Contract => "contract",
            Engine::Closed => "closed",
            Engine::Mixed => "mixed",
        }
    }
}

/// Feasibility guards shared by the engines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    /// Enumerations of more than `2^enumeration_log2` terms are refused.
    pub enumeration_log2: f64,
    /// Largest bag table, in entries, the contraction may allocate.
    pub memory_budget: u64,
    /// Decomposition heuristic used when the dispatcher contracts.
    pub strategy: DecompositionStrategy,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumeration_log2: 40.0, memory_budget: 1 << 28, strategy: DecompositionStrategy::MinFill }
    }
}

impl Limits {
    pub(crate) fn check_enumeration(&self, log2_work: f64) -> Result<()> {
        if log2_work > self.enumeration_log2 {
            return Err(Error::TooLarge { log2_work, limit: self.enumeration_log2 });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub value: ScaledValue,
    pub method: Engine,
    /// Configurations or codewords enumerated, or bag-table entries touched.
    pub cost: u64,
    /// Decomposition width, for contractions.
    pub width: Option<usize>,
}

pub(crate) fn check_weights(g: &OrientedGraph, w: &WeightTable) -> Result<()> {
    if w.edge_count() != g.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} weight rows for {} edges",
            w.edge_count(),
            g.edge_count()
        )));
    }
    Ok(())
}

/// Weight rows rescaled by powers of two so every entry has modulus at most
/// one; `w_e(j) = rows[e][j] · 2^{shift_e}`.
pub(crate) struct NormalizedWeights {
    pub rows: Vec<Vec<Complex64>>,
    pub shift: i64,
}

impl NormalizedWeights {
    pub fn new(w: &WeightTable) -> Self {
        let mut shift = 0;
        let rows = w
            .rows()
            .iter()
            .map(|row| {
                let max = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if max == 0.0 {
                    return row.clone();
                }
                let k = ScaledValue::from_f64(max).exponent() + 1;
                shift += k;
                row.iter().map(|z| ScaledValue::from_complex(*z).mul_pow2(-k).to_complex()).collect()
            })
            .collect();
        NormalizedWeights { rows, shift }
    }

    /// Product of `rows[e][label(e)]` over all edges, kept clear of underflow.
    pub fn product(&self, label: impl Fn(usize) -> usize) -> ScaledValue {
        const RESCUE: f64 = 1.0 / (1u128 << 100) as f64;
        let mut p = Complex64::new(1.0, 0.0);
        let mut extra = 0i64;
        for (e, row) in self.rows.iter().enumerate() {
            p *= row[label(e)];
            if p.norm_sqr() < RESCUE * RESCUE {
                if p.re == 0.0 && p.im == 0.0 {
                    return ScaledValue::ZERO;
                }
                let s = ScaledValue::from_complex(p);
                p = s.mantissa();
                extra += s.exponent();
            }
        }
        ScaledValue::new(p, extra)
    }
}

/// Evaluates `Z`, factorizing over connected components and multiplying the
/// per-component values.
///
/// `Method::Auto` uses a closed form for trees and coherent cycles, contracts
/// when the min-fill decomposition has a bag smaller than the whole component,
/// and enumerates otherwise.
pub fn partition(g: &OrientedGraph, w: &WeightTable, method: Method, limits: &Limits) -> Result<EvalReport> {
    check_weights(g, w)?;
    let mut value = ScaledValue::ONE;
    let mut cost = 0u64;
    let mut width: Option<usize> = None;
    let mut engines = Vec::new();
    for comp in g.components() {
        let wc = w.select(&comp.edges);
        let report = partition_connected(&comp.graph, &wc, method, limits)?;
        value = value * report.value;
        cost = cost.saturating_add(report.cost);
        width = match (width, report.width) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        engines.push(report.method);
    }
    let method = match engines.split_first() {
        Some((first, rest)) if rest.iter().all(|e| e == first) => *first,
        _ => Engine::Mixed,
    };
    Ok(EvalReport { value, method, cost, width })
}

fn partition_connected(g: &OrientedGraph, w: &WeightTable, method: Method, limits: &Limits) -> Result<EvalReport> {
    let closed = |value: ScaledValue| EvalReport { value, method: Engine::Closed, cost: g.edge_count() as u64 * w.q() as u64, width: None };
    match method {
        Method::Brute => brute_force_partition(g, w, limits),
        Method::Overlap => codeword_overlap_partition(g, w, limits),
        Method::Contract => {
            let td = tree_decomposition(g, limits.strategy)?;
            treewidth_contract(g, w, &td, limits)
        }
        Method::Closed => {
            if g.is_tree() {
                tree_closed_form(g, w).map(closed)
            } else if is_coherent_cycle(g) {
                cycle_closed_form(g, w).map(closed)
            } else {
                Err(Error::NotATree)
            }
        }
        Method::Auto => {
            if g.is_tree() {
                return tree_closed_form(g, w).map(closed);
            }
            if is_coherent_cycle(g) {
                return cycle_closed_form(g, w).map(closed);
            }
            let td = tree_decomposition(g, limits.strategy)?;
            let n = g.vertex_count();
            let log2_q = (w.q() as f64).log2();
            let fits = (td.width() + 1) as f64 * log2_q <= (limits.memory_budget as f64).log2();
            let enumerable = n as f64 * log2_q <= limits.enumeration_log2;
            if fits && (td.width() + 1 < n || !enumerable) {
                treewidth_contract(g, w, &td, limits)
            } else {
                brute_force_partition(g, w, limits)
            }
        }
    }
}
