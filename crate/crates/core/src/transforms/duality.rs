use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::planar::planar_dual;
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::phase::root_of_unity;
use crate::scaled::ScaledValue;

/// `ŵ(j) = q^{-1/2} Σ_k ω^{-kj} w(k)` on every edge.
pub fn fourier_dual_weights(w: &WeightTable) -> WeightTable {
    let q = w.q();
    let norm = 1.0 / (q as f64).sqrt();
    let rows = w
        .rows()
        .iter()
        .map(|row| {
            (0..q as i64)
                .map(|j| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k, x) in row.iter().enumerate() {
                        acc += root_of_unity(q, -(k as i64) * j) * x;
                    }
                    acc * norm
                })
                .collect()
        })
        .collect();
    WeightTable::new(q, rows).expect("transform of a valid table is valid")
}

/// A half-integer `numerator / denominator` in lowest terms, denominator 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub numerator: i64,
    pub denominator: i64,
}

impl Exponent {
    fn halves(twice: i64) -> Self {
        if twice % 2 == 0 {
            Exponent { numerator: twice / 2, denominator: 1 }
        } else {
            Exponent { numerator: twice, denominator: 2 }
        }
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSize {
    pub vertices: usize,
    pub edges: usize,
}

/// `Z_D(ŵ) = q^r · Z_G(w)` with `r = N/2 - n + 1`.
///
/// Summing over the cycle code instead of the cut code, with
/// `|C^⊥| = q^{N-n+1}` and the `q^{-N/2}` from the transform normalization,
/// gives exactly this factor; it is absent only when `N = 2(n - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCertificate {
    pub q: u32,
    pub primal: GraphSize,
    pub dual: GraphSize,
    pub r: Exponent,
}

impl DualityCertificate {
    pub fn new(q: u32, primal: &OrientedGraph, dual: &OrientedGraph) -> Self {
        let (n, edges) = (primal.vertex_count() as i64, primal.edge_count() as i64);
        DualityCertificate {
            q,
            primal: GraphSize { vertices: primal.vertex_count(), edges: primal.edge_count() },
            dual: GraphSize { vertices: dual.vertex_count(), edges: dual.edge_count() },
            r: Exponent::halves(edges - 2 * n + 2),
        }
    }

    /// `q^r`.
    pub fn scalar(&self) -> ScaledValue {
        let q = self.q as f64;
        match self.r.denominator {
            1 => ScaledValue::from_f64(q).powi(self.r.numerator),
            _ => ScaledValue::from_f64(q.sqrt()).powi(self.r.numerator),
        }
    }

    /// Euler's formula on the recorded sizes: `r = n_D - 1 - N/2`.
    pub fn is_consistent(&self) -> bool {
        let twice = 2 * self.dual.vertices as i64 - 2 - self.primal.edges as i64;
        self.primal.edges == self.dual.edges && Exponent::halves(twice) == self.r
    }
}

/// Dual graph, Fourier-transformed weights, and the scalar relating the two
/// partition functions.
pub fn dual_model(g: &OrientedGraph, w: &WeightTable) -> Result<(OrientedGraph, WeightTable, DualityCertificate)> {
    if w.edge_count() != g.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} weight rows for {} edges",
            w.edge_count(),
            g.edge_count()
        )));
    }
    let dual = planar_dual(g)?;
    let cert = DualityCertificate::new(w.q(), g, &dual);
    Ok((dual, fourier_dual_weights(w), cert))
}

/// Potts coupling on the dual: `(e^{βJ'} - 1)(e^{βJ} - 1) = q`.
pub fn potts_dual_coupling(coupling: f64, q: u32, beta: f64) -> Result<f64> {
    let x = (beta * coupling).exp_m1();
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonFerromagnetic(coupling));
    }
    Ok((q as f64 / x).ln_1p() / beta)
}
