use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zqspin::code::{cut_code, cycle_code};
use zqspin::engines::{brute_force_partition, codeword_overlap_partition, partition, treewidth_contract};
use zqspin::graph::decomposition::tree_decomposition;
use zqspin::graph::families;
use zqspin::transforms::dual_model;
use zqspin::{
    DecompositionStrategy, InteractionTable, Limits, Method, OrientedGraph, ScaledValue, WeightTable, ZqVector,
};

fn random_graph(seed: u64, max_n: usize, max_edges: usize) -> OrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_n);
    let extra = rng.gen_range(0..=max_edges.saturating_sub(n - 1));
    families::random_connected_multigraph(&mut rng, n, extra)
}

fn random_energies(seed: u64, q: u32, edges: usize) -> InteractionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let rows = (0..edges).map(|_| (0..q).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    InteractionTable::new(q, rng.gen_range(0.1..1.0), rows).unwrap()
}

fn z(g: &OrientedGraph, w: &WeightTable) -> ScaledValue {
    brute_force_partition(g, w, &Limits::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cut_and_cycle_codes_annihilate(seed in any::<u64>(), q in prop::sample::select(vec![2u32, 3, 4, 6])) {
        let g = random_graph(seed, 6, 7);
        let cut = cut_code(&g, q).unwrap();
        let cycle = cycle_code(&g, q).unwrap();
        let (n, edges) = (g.vertex_count(), g.edge_count());
        prop_assert_eq!(cut.dimension(), n - 1);
        prop_assert_eq!(cycle.dimension(), edges + 1 - n);
        for u in cut.generators() {
            for v in cycle.generators() {
                prop_assert_eq!(u.dot(v).unwrap(), 0);
            }
        }
        // Exhaustive over Z_q^N when small: the annihilator of the cycle
        // code has exactly q^{n-1} elements, all of them in the cut code.
        if (q as f64).powi(edges as i32) <= 5e4 {
            let mut count = 0u64;
            let mut digits = vec![0u32; edges];
            loop {
                let x = ZqVector::new(q, digits.clone()).unwrap();
                if cycle.generators().iter().all(|v| x.dot(v).unwrap() == 0) {
                    prop_assert!(cut.contains(&x).unwrap());
                    count += 1;
                }
                let mut i = 0;
                while i < edges {
                    digits[i] += 1;
                    if digits[i] < q { break; }
                    digits[i] = 0;
                    i += 1;
                }
                if i == edges { break; }
            }
            prop_assert_eq!(count as u128, cut.cardinality().unwrap());
        }
    }

    #[test]
    fn engines_agree(seed in any::<u64>(), q in 2u32..=4) {
        let g = random_graph(seed, 6, 9);
        let w = random_energies(seed, q, g.edge_count()).boltzmann_weights();
        let oracle = z(&g, &w);
        let limits = Limits::default();
        let overlap = codeword_overlap_partition(&g, &w, &limits).unwrap().value;
        prop_assert!(overlap.relative_error(&oracle) < 1e-12);
        for s in [DecompositionStrategy::MinFill, DecompositionStrategy::MinDegree, DecompositionStrategy::ExactSmall] {
            let td = tree_decomposition(&g, s).unwrap();
            let c = treewidth_contract(&g, &w, &td, &limits).unwrap().value;
            prop_assert!(c.relative_error(&oracle) < 1e-12);
        }
    }

    #[test]
    fn reversing_an_edge_with_its_row(seed in any::<u64>(), q in 2u32..=5, pick in any::<prop::sample::Index>()) {
        let g = random_graph(seed, 6, 8);
        prop_assume!(g.edge_count() > 0);
        let w = random_energies(seed, q, g.edge_count()).boltzmann_weights();
        let e = pick.index(g.edge_count());
        let flipped = z(&g.with_edge_reversed(e), &w.with_edge_reversed(e));
        prop_assert!(flipped.relative_error(&z(&g, &w)) < 1e-12);
    }

    #[test]
    fn symmetric_energies_ignore_orientation(seed in any::<u64>(), q in 2u32..=6, mask in any::<u32>()) {
        let g = random_graph(seed, 6, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let j: Vec<f64> = (0..g.edge_count()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let w = InteractionTable::clock(q, 0.7, &j).unwrap().boltzmann_weights();
        let mut h = g.clone();
        for e in 0..g.edge_count() {
            if mask >> (e % 32) & 1 == 1 {
                h = h.with_edge_reversed(e);
            }
        }
        prop_assert!(z(&h, &w).relative_error(&z(&g, &w)) < 1e-12);
    }

    #[test]
    fn real_tables_give_positive_z(seed in any::<u64>(), q in 2u32..=5) {
        let g = random_graph(seed, 7, 10);
        let w = random_energies(seed, q, g.edge_count()).boltzmann_weights();
        let r = partition(&g, &w, Method::Auto, &Limits::default()).unwrap().value;
        prop_assert!(r.to_complex().re > 0.0 || r.exponent() > 1000);
        prop_assert!(r.arg().abs() < 1e-12);
    }

    #[test]
    fn ising_is_two_state_potts(seed in any::<u64>()) {
        let g = random_graph(seed, 7, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta = rng.gen_range(0.1..1.5);
        let j: Vec<f64> = (0..g.edge_count()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let twice: Vec<f64> = j.iter().map(|x| 2.0 * x).collect();
        let ising = z(&g, &InteractionTable::ising(beta, &j).unwrap().boltzmann_weights());
        let potts = z(&g, &InteractionTable::potts(2, beta, &twice).unwrap().boltzmann_weights());
        let shift = ScaledValue::from_f64((-beta * j.iter().sum::<f64>()).exp());
        prop_assert!(ising.relative_error(&(potts * shift)) < 1e-12);
    }

    #[test]
    fn disjoint_union_factorizes(a in any::<u64>(), b in any::<u64>(), q in 2u32..=4) {
        let (g1, g2) = (random_graph(a, 4, 6), random_graph(b, 4, 6));
        let shift = g1.vertex_count();
        let mut pairs: Vec<(usize, usize)> = g1.edges().iter().map(|e| (e.head, e.tail)).collect();
        pairs.extend(g2.edges().iter().map(|e| (e.head + shift, e.tail + shift)));
        let union = OrientedGraph::new(shift + g2.vertex_count(), &pairs).unwrap();
        let w1 = random_energies(a, q, g1.edge_count()).boltzmann_weights();
        let w2 = random_energies(b, q, g2.edge_count()).boltzmann_weights();
        let mut rows = w1.rows().to_vec();
        rows.extend(w2.rows().iter().cloned());
        let w = WeightTable::new(q, rows).unwrap();
        let product = z(&g1, &w1) * z(&g2, &w2);
        prop_assert!(z(&union, &w).relative_error(&product) < 1e-12);
        for m in [Method::Auto, Method::Contract, Method::Overlap] {
            prop_assert!(partition(&union, &w, m, &Limits::default()).unwrap().value.relative_error(&product) < 1e-12);
        }
    }

    #[test]
    fn grid_duality_with_complex_weights(seed in any::<u64>(), q in 2u32..=4, rows in 1usize..=3, cols in 1usize..=3) {
        let g = families::grid(rows, cols);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = (0..g.edge_count())
            .map(|_| (0..q).map(|_| Complex64::new(rng.gen_range(-1.0..2.0), rng.gen_range(-1.0..1.0))).collect())
            .collect();
        let w = WeightTable::new(q, table).unwrap();
        let (d, wd, cert) = dual_model(&g, &w).unwrap();
        let lhs = z(&d, &wd);
        let rhs = z(&g, &w) * cert.scalar();
        // complex weights can cancel, so compare against the scale of the terms
        let scale = z(&g, &WeightTable::new(q, w.rows().iter().map(|r| r.iter().map(|x| Complex64::new(x.norm(), 0.0)).collect()).collect()).unwrap());
        let diff = (lhs - rhs).to_complex().norm() / (scale * cert.scalar()).to_complex().norm();
        prop_assert!(diff < 1e-10, "{}", diff);
    }
}

#[test]
fn concurrent_evaluation_is_bitwise_sequential() {
    let jobs: Vec<(OrientedGraph, WeightTable)> = (0..24u64)
        .map(|seed| {
            let g = random_graph(seed, 8, 12);
            let w = random_energies(seed, 2 + (seed % 4) as u32, g.edge_count()).boltzmann_weights();
            (g, w)
        })
        .collect();
    let run = |(g, w): &(OrientedGraph, WeightTable)| partition(g, w, Method::Auto, &Limits::default()).unwrap();
    let sequential: Vec<_> = jobs.iter().map(run).collect();
    let parallel: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|job| s.spawn(move || run(job))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(sequential, parallel);
}

#[test]
fn overlap_prefactor_counts_global_shifts() {
    // Every codeword stands for exactly q spin assignments: with unit weights
    // the configuration sum is q^n and the codeword sum q^{n-1}.
    for (g, q) in [(families::grid(2, 3), 3u32), (families::complete(4), 4), (families::cycle(5), 2)] {
        let w = WeightTable::uniform(q, g.edge_count(), &vec![Complex64::new(1.0, 0.0); q as usize]).unwrap();
        let limits = Limits::default();
        let brute = brute_force_partition(&g, &w, &limits).unwrap();
        let overlap = codeword_overlap_partition(&g, &w, &limits).unwrap();
        assert_eq!(brute.value, overlap.value);
        assert_eq!(brute.cost, overlap.cost * q as u64);
    }
}

#[test]
fn report_round_trips_through_json() {
    let g = families::grid(3, 3);
    let w = InteractionTable::potts(3, 0.5, &[1.0; 12]).unwrap().boltzmann_weights();
    let r = partition(&g, &w, Method::Auto, &Limits::default()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: zqspin::EvalReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
