use num_complex::Complex64;

use super::{check_weights, NormalizedWeights};
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::phase::root_of_unity;
use crate::scaled::ScaledValue;

/// `Z = q · Π_e Σ_j w_e(j)`: on a tree the edge differences are independent.
pub fn tree_closed_form(g: &OrientedGraph, w: &WeightTable) -> Result<ScaledValue> {
    check_weights(g, w)?;
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let norm = NormalizedWeights::new(w);
    let product: ScaledValue = norm
        .rows
        .iter()
        .map(|row| ScaledValue::from_complex(row.iter().sum::<Complex64>()))
        .product();
    Ok(product.scale((w.q() as f64).into()).mul_pow2(norm.shift))
}

/// A single directed cycle: connected, and every vertex is the head of
/// exactly one edge and the tail of exactly one edge. A lone self-loop counts.
pub fn is_coherent_cycle(g: &OrientedGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() != n || !g.is_connected() {
        return false;
    }
    let mut heads = vec![0usize; n];
    let mut tails = vec![0usize; n];
    for e in g.edges() {
        heads[e.head] += 1;
        tails[e.tail] += 1;
    }
    heads.iter().chain(&tails).all(|&c| c == 1)
}

/// `Z = Σ_k Π_e λ_e(k)` with `λ_e(k) = Σ_j ω^{kj} w_e(j)`. Around a coherent
/// cycle the differences sum to zero mod `q`, and the Fourier sum over `k`
/// projects onto that constraint. For `q = 2` this is the two-term
/// `Π(w_0 + w_1) + Π(w_0 - w_1)`, computed without phase rounding.
pub fn cycle_closed_form(g: &OrientedGraph, w: &WeightTable) -> Result<ScaledValue> {
    check_weights(g, w)?;
    if !is_coherent_cycle(g) {
        return Err(Error::NotACoherentCycle);
    }
    let q = w.q();
    let norm = NormalizedWeights::new(w);
    let total: ScaledValue = (0..q as i64)
        .map(|k| {
            norm.rows
                .iter()
                .map(|row| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (j, x) in row.iter().enumerate() {
                        acc += root_of_unity(q, k * j as i64) * x;
                    }
                    ScaledValue::from_complex(acc)
                })
                .product::<ScaledValue>()
        })
        .sum();
    Ok(total.mul_pow2(norm.shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{brute_force_partition, Limits};
    use crate::graph::families;
    use crate::model::InteractionTable;

    fn oracle(g: &OrientedGraph, w: &WeightTable) -> ScaledValue {
        brute_force_partition(g, w, &Limits::default()).unwrap().value
    }

    #[test]
    fn triangle_ising() {
        let w = InteractionTable::ising(1.0, &[1.0; 3]).unwrap().boltzmann_weights();
        let z = cycle_closed_form(&families::cycle(3), &w).unwrap();
        let (c, s) = (2.0 * 1f64.cosh(), 2.0 * 1f64.sinh());
        let expected = c.powi(3) + s.powi(3);
        assert!((z.to_complex().re - expected).abs() < 1e-13 * expected);
        // brute force by hand: 2e^3 from the aligned states, 6/e from the rest
        let e = std::f64::consts::E;
        assert!((expected - (2.0 * e.powi(3) + 6.0 / e)).abs() < 1e-13 * expected);
    }

    #[test]
    fn two_cycle_and_loop() {
        let w = InteractionTable::potts(3, 0.8, &[1.0, -0.7]).unwrap().boltzmann_weights();
        let g = families::cycle(2);
        assert!(cycle_closed_form(&g, &w).unwrap().relative_error(&oracle(&g, &w)) < 1e-14);

        let g = OrientedGraph::new(1, &[(0, 0)]).unwrap();
        let w = WeightTable::from_real(4, vec![vec![0.3, 1.0, 2.0, 5.0]]).unwrap();
        assert!(cycle_closed_form(&g, &w).unwrap().relative_error(&ScaledValue::from_f64(1.2)) < 1e-15);
    }

    #[test]
    fn generic_cycles_match_enumeration() {
        for q in 2..6u32 {
            for n in 1..7usize {
                let g = families::cycle(n);
                let rows = (0..n)
                    .map(|e| (0..q).map(|j| ((e * 7 + j as usize * 3) % 5) as f64 * 0.3 - 0.4).collect())
                    .collect();
                let w = InteractionTable::new(q, 0.9, rows).unwrap().boltzmann_weights();
                let z = cycle_closed_form(&g, &w).unwrap();
                assert!(z.relative_error(&oracle(&g, &w)) < 1e-12, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn ghz_two_term_exact() {
        let w = WeightTable::from_real(2, vec![vec![1.7, 0.2], vec![0.4, 3.1], vec![2.5, 0.9], vec![1.0, 1.0]]).unwrap();
        let z = cycle_closed_form(&families::cycle(4), &w).unwrap();
        // Same normalization as the engine, so the comparison is bitwise.
        let norm = NormalizedWeights::new(&w);
        let plus: ScaledValue = norm.rows.iter().map(|r| ScaledValue::from_complex(r[0] + r[1])).product();
        let minus: ScaledValue = norm.rows.iter().map(|r| ScaledValue::from_complex(r[0] - r[1])).product();
        assert_eq!(z, (plus + minus).mul_pow2(norm.shift));
    }

    #[test]
    fn star_potts() {
        let g = families::star(5);
        let w = InteractionTable::potts(4, 0.6, &[1.0, 0.5, -1.0, 2.0, 0.0]).unwrap().boltzmann_weights();
        let err = tree_closed_form(&g, &w).unwrap().relative_error(&oracle(&g, &w));
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn path_by_hand() {
        // Two-edge Ising path, J = 1 and 2 at β = 1: 2 · (2cosh 1)(2cosh 2).
        let w = InteractionTable::ising(1.0, &[1.0, 2.0]).unwrap().boltzmann_weights();
        let z = tree_closed_form(&families::path(3), &w).unwrap().to_complex().re;
        let expected = 2.0 * (2.0 * 1f64.cosh()) * (2.0 * 2f64.cosh());
        assert!((z - expected).abs() < 1e-13 * expected);
    }

    #[test]
    fn shape_checks() {
        let w = InteractionTable::ising(1.0, &[1.0; 3]).unwrap().boltzmann_weights();
        assert_eq!(tree_closed_form(&families::cycle(3), &w), Err(Error::NotATree));
        let incoherent = families::cycle(3).with_edge_reversed(1);
        assert!(!is_coherent_cycle(&incoherent));
        assert_eq!(cycle_closed_form(&incoherent, &w), Err(Error::NotACoherentCycle));
        assert!(!is_coherent_cycle(&families::path(3)));
        let single = OrientedGraph::new(1, &[]).unwrap();
        let w0 = WeightTable::new(3, vec![]).unwrap();
        assert_eq!(tree_closed_form(&single, &w0).unwrap(), ScaledValue::from_f64(3.0));
    }
}
