//! Sum-product over a rooted tree decomposition.
//!
//! Each bag holds a table over the `q^{|bag|}` assignments of its vertices.
//! An edge factor is multiplied in at the highest bag holding both endpoints,
//! child messages are multiplied in, and vertices absent from the parent bag
//! are summed out before the message moves up. Messages are rescaled to unit
//! maximum with the scale kept as a power-of-two exponent.

use num_complex::Complex64;

use super::{check_weights, EvalReport, Engine, Limits, NormalizedWeights};
use crate::error::{Error, Result};
use crate::graph::decomposition::TreeDecomposition;
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::scaled::ScaledValue;

struct Message {
    /// Positions of the separator vertices inside the parent bag.
    parent_positions: Vec<usize>,
    table: Vec<Complex64>,
    exponent: i64,
}

pub fn treewidth_contract(
    g: &OrientedGraph,
    w: &WeightTable,
    td: &TreeDecomposition,
    limits: &Limits,
) -> Result<EvalReport> {
    check_weights(g, w)?;
    td.validate(g)?;
    let q = w.q() as usize;
    let bags = td.bags();

    for bag in bags {
        let entries = (q as u128).checked_pow(bag.len() as u32).unwrap_or(u128::MAX);
        if entries > limits.memory_budget as u128 {
            return Err(Error::WidthTooLarge { entries, budget: limits.memory_budget });
        }
    }

    let order = td.post_order();
    let mut depth = vec![0usize; bags.len()];
    for &node in order.iter().rev() {
        if let Some(p) = td.parent(node) {
            depth[node] = depth[p] + 1;
        }
    }

    // Edge ids per node, at the shallowest bag holding both endpoints.
    let mut factors: Vec<Vec<usize>> = vec![Vec::new(); bags.len()];
    for (id, e) in g.edges().iter().enumerate() {
        let home = (0..bags.len())
            .filter(|&i| bags[i].binary_search(&e.head).is_ok() && bags[i].binary_search(&e.tail).is_ok())
            .min_by_key(|&i| (depth[i], i))
            .expect("validated decomposition covers every edge");
        factors[home].push(id);
    }

    let norm = NormalizedWeights::new(w);
    let children = td.children();
    let mut messages: Vec<Option<Message>> = (0..bags.len()).map(|_| None).collect();
    let mut cost = 0u64;
    let mut root_value = ScaledValue::ZERO;

    for &node in &order {
        let bag = &bags[node];
        let k = bag.len();
        let size = q.pow(k as u32);
        let position = |v: usize| bag.binary_search(&v).expect("vertex in bag");
        let local: Vec<(usize, usize, &[Complex64])> = factors[node]
            .iter()
            .map(|&id| {
                let e = g.edge(id);
                (position(e.head), position(e.tail), norm.rows[id].as_slice())
            })
            .collect();
        let incoming: Vec<Message> = children[node]
            .iter()
            .map(|&c| messages[c].take().expect("children are processed first"))
            .collect();
        let mut exponent: i64 = incoming.iter().map(|m| m.exponent).sum();

        let mut table = vec![Complex64::new(0.0, 0.0); size];
        let mut digits = vec![0usize; k];
        for entry in table.iter_mut() {
            let mut value = Complex64::new(1.0, 0.0);
            for &(h, t, row) in &local {
                value *= row[(digits[h] + q - digits[t]) % q];
            }
            for m in &incoming {
                let mut idx = 0;
                for &p in m.parent_positions.iter().rev() {
                    idx = idx * q + digits[p];
                }
                value *= m.table[idx];
            }
            *entry = value;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        cost = cost.saturating_add((size * (1 + local.len() + incoming.len())) as u64);

        // Sum out the vertices not shared with the parent.
        let parent_bag: &[usize] = td.parent(node).map_or(&[], |p| &bags[p]);
        let kept: Vec<usize> = (0..k).filter(|&i| parent_bag.binary_search(&bag[i]).is_ok()).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); q.pow(kept.len() as u32)];
        let mut digits = vec![0usize; k];
        for value in &table {
            let mut idx = 0;
            for &i in kept.iter().rev() {
                idx = idx * q + digits[i];
            }
            out[idx] += value;
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        cost = cost.saturating_add(size as u64);

        let max = out.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max > 0.0 && max.is_finite() {
            let shift = ScaledValue::from_f64(max).exponent();
            for z in out.iter_mut() {
                *z = ScaledValue::from_complex(*z).mul_pow2(-shift).to_complex();
            }
            exponent += shift;
        }

        match td.parent(node) {
            Some(_) => {
                let parent_positions = kept.iter().map(|&i| parent_bag.binary_search(&bag[i]).expect("shared vertex")).collect();
                messages[node] = Some(Message { parent_positions, table: out, exponent });
            }
            None => root_value = ScaledValue::new(out[0], exponent),
        }
    }

    Ok(EvalReport {
        value: root_value.mul_pow2(norm.shift),
        method: Engine::Contract,
        cost,
        width: Some(td.width()),
    })
}
