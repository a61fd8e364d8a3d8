use super::{check_weights, EvalReport, Engine, Limits, NormalizedWeights};
use crate::error::Result;
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::scaled::ScaledValue;

/// Direct sum over all `q^n` spin assignments. The reference every other
/// engine is tested against. Terms are added in a `q`-ary tree following the
/// odometer, which keeps the rounding error logarithmic in the term count.
pub fn brute_force_partition(g: &OrientedGraph, w: &WeightTable, limits: &Limits) -> Result<EvalReport> {
    check_weights(g, w)?;
    let q = w.q();
    let n = g.vertex_count();
    limits.check_enumeration(n as f64 * (q as f64).log2())?;

    let norm = NormalizedWeights::new(w);
    let edges = g.edges();
    let mut spins = vec![0u32; n];
    // partial[i] holds the sum over spins 0..=i with the higher spins fixed,
    // so every addition combines at most q comparable terms
    let mut partial = vec![ScaledValue::ZERO; n + 1];
    let mut count = 0u64;
    loop {
        partial[0] = partial[0]
            + norm.product(|e| {
                let edge = edges[e];
                ((spins[edge.head] + q - spins[edge.tail]) % q) as usize
            });
        count += 1;
        // odometer, vertex 0 fastest
        let mut i = 0;
        while i < n {
            spins[i] += 1;
            if spins[i] < q {
                break;
            }
            spins[i] = 0;
            partial[i + 1] = partial[i + 1] + partial[i];
            partial[i] = ScaledValue::ZERO;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    Ok(EvalReport { value: partial[n].mul_pow2(norm.shift), method: Engine::Brute, cost: count, width: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;
    use crate::model::InteractionTable;
    use std::f64::consts::E;

    #[test]
    fn single_edge_ising() {
        let w = InteractionTable::ising(1.0, &[1.0]).unwrap().boltzmann_weights();
        let z = brute_force_partition(&families::path(2), &w, &Limits::default()).unwrap();
        let expected = 2.0 * E + 2.0 / E;
        assert!((z.value.to_complex().re - expected).abs() < 1e-14 * expected);
        assert!((z.value.to_complex().re - 6.1723225).abs() < 1e-7);
        assert_eq!(z.cost, 4);
    }

    #[test]
    fn isolated_vertex() {
        let g = OrientedGraph::new(1, &[]).unwrap();
        let w = WeightTable::new(3, vec![]).unwrap();
        let z = brute_force_partition(&g, &w, &Limits::default()).unwrap();
        assert_eq!(z.value, ScaledValue::from_f64(3.0));
    }

    #[test]
    fn triangle_potts_fixture() {
        // q = 3 Potts on a triangle at βJ = 1: configurations with all spins
        // equal give e^3 (3 of them), exactly two equal give e (18), all
        // distinct give 1 (6).
        let w = InteractionTable::potts(3, 1.0, &[1.0; 3]).unwrap().boltzmann_weights();
        let z = brute_force_partition(&families::cycle(3), &w, &Limits::default()).unwrap();
        let expected = 3.0 * E.powi(3) + 18.0 * E + 6.0;
        assert!((z.value.to_complex().re - expected).abs() < 1e-13 * expected);
    }

    #[test]
    fn guard() {
        let g = families::path(41);
        let w = InteractionTable::ising(1.0, &[0.0; 40]).unwrap().boltzmann_weights();
        assert!(matches!(
            brute_force_partition(&g, &w, &Limits::default()),
            Err(crate::Error::TooLarge { .. })
        ));
    }

    #[test]
    fn extreme_couplings_stay_finite() {
        let g = families::cycle(6);
        let t = InteractionTable::ising(1.0, &[400.0; 6]).unwrap().boltzmann_weights();
        let z = brute_force_partition(&g, &t, &Limits::default()).unwrap();
        // dominated by the two uniform configurations: 2 e^{2400}
        let log2_expected = 1.0 + 2400.0 / std::f64::consts::LN_2;
        assert!((z.value.log2_abs() - log2_expected).abs() < 1e-9);
    }
}
