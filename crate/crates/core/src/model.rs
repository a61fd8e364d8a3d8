//! Edge Hamiltonians `h_e(j)`, `j = (s_head - s_tail) mod q`, and the
//! Boltzmann weight rows `w_e(j) = exp(-β h_e(j))` built from them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::root_of_unity;

#[derive(Clone, Debug, PartialEq)]
pub struct InteractionTable {
    q: u32,
    beta: f64,
    rows: Vec<Vec<f64>>,
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidModel(format!("q = {q} must be at least 2")));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidModel(format!("beta = {beta} must be finite and positive")));
    }
    Ok(())
}

impl InteractionTable {
    /// General inhomogeneous model: one energy row of length `q` per edge.
    pub fn new(q: u32, beta: f64, rows: Vec<Vec<f64>>) -> Result<Self> {
        check_q(q)?;
        check_beta(beta)?;
        for (e, row) in rows.iter().enumerate() {
            if row.len() != q as usize {
                return Err(Error::InvalidModel(format!("edge {e} has {} energies, q = {q}", row.len())));
            }
            if row.iter().any(|h| !h.is_finite()) {
                return Err(Error::InvalidModel(format!("edge {e} has a non-finite energy")));
            }
        }
        Ok(InteractionTable { q, beta, rows })
    }

    /// Potts: `h_e(0) = -J_e`, zero otherwise.
    pub fn potts(q: u32, beta: f64, couplings: &[f64]) -> Result<Self> {
        check_q(q)?;
        Self::new(q, beta, couplings.iter().map(|&j| potts_row(q, j)).collect())
    }

    /// Ising in the `±J` convention: `h_e = (-J_e, +J_e)`.
    pub fn ising(beta: f64, couplings: &[f64]) -> Result<Self> {
        Self::new(2, beta, couplings.iter().map(|&j| ising_row(j)).collect())
    }

    /// Clock: `h_e(j) = -J_e cos(2πj/q)`.
    pub fn clock(q: u32, beta: f64, couplings: &[f64]) -> Result<Self> {
        check_q(q)?;
        Self::new(q, beta, couplings.iter().map(|&j| clock_row(q, j)).collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn edge_count(&self) -> usize {
        self.rows.len()
    }

    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        Ok(InteractionTable { q: self.q, beta, rows: self.rows.clone() })
    }

    /// Row for the same physical interaction after flipping edge `e`:
    /// `h_e(j) → h_e(-j mod q)`.
    pub fn with_edge_reversed(&self, e: usize) -> Self {
        let mut out = self.clone();
        out.rows[e] = reflect(&self.rows[e]);
        out
    }

    pub fn boltzmann_weights(&self) -> WeightTable {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&h| Complex64::new((-self.beta * h).exp(), 0.0)).collect())
            .collect();
        WeightTable { q: self.q, rows }
    }
}

pub fn potts_row(q: u32, coupling: f64) -> Vec<f64> {
    let mut row = vec![0.0; q as usize];
    row[0] = -coupling;
    row
}

pub fn ising_row(coupling: f64) -> Vec<f64> {
    vec![-coupling, coupling]
}

pub fn clock_row(q: u32, coupling: f64) -> Vec<f64> {
    (0..q).map(|j| -coupling * root_of_unity(q, j as i64).re).collect()
}

fn reflect<T: Copy>(row: &[T]) -> Vec<T> {
    let q = row.len();
    (0..q).map(|j| row[(q - j) % q]).collect()
}

/// Per-edge weight rows `w_e(0..q)`; complex after Fourier or symmetry
/// transforms.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    q: u32,
    rows: Vec<Vec<Complex64>>,
}

impl WeightTable {
    pub fn new(q: u32, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        check_q(q)?;
        for (e, row) in rows.iter().enumerate() {
            if row.len() != q as usize {
                return Err(Error::InvalidModel(format!("edge {e} has {} weights, q = {q}", row.len())));
            }
            if row.iter().any(|w| !(w.re.is_finite() && w.im.is_finite())) {
                return Err(Error::InvalidModel(format!("edge {e} has a non-finite weight")));
            }
        }
        Ok(WeightTable { q, rows })
    }

    pub fn from_real(q: u32, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(q, rows.into_iter().map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect()).collect())
    }

    /// The same row on every one of `edges` edges.
    pub fn uniform(q: u32, edges: usize, row: &[Complex64]) -> Result<Self> {
        Self::new(q, vec![row.to_vec(); edges])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn row(&self, e: usize) -> &[Complex64] {
        &self.rows[e]
    }

    pub fn edge_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_real_positive(&self) -> bool {
        self.rows.iter().flatten().all(|w| w.im == 0.0 && w.re > 0.0)
    }

    /// Rows for a subset of edges, in the given order.
    pub fn select(&self, edges: &[usize]) -> WeightTable {
        WeightTable { q: self.q, rows: edges.iter().map(|&e| self.rows[e].clone()).collect() }
    }

    pub fn with_edge_reversed(&self, e: usize) -> Self {
        let mut out = self.clone();
        out.rows[e] = reflect(&self.rows[e]);
        out
    }
}

impl From<&InteractionTable> for WeightTable {
    fn from(t: &InteractionTable) -> Self {
        t.boltzmann_weights()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn zero_energy_gives_unit_weights() {
        let w = InteractionTable::new(3, 0.7, vec![vec![0.0; 3]; 2]).unwrap().boltzmann_weights();
        assert!(w.rows().iter().flatten().all(|x| *x == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn potts_weights() {
        let w = InteractionTable::potts(4, 1.0, &[1.0]).unwrap().boltzmann_weights();
        assert_eq!(w.row(0)[0].re, E);
        assert!(w.row(0)[1..].iter().all(|x| x.re == 1.0));
    }

    #[test]
    fn ising_weights() {
        let w = InteractionTable::ising(1.0, &[1.0]).unwrap().boltzmann_weights();
        assert_eq!(w.row(0), &[Complex64::new(E, 0.0), Complex64::new((-1f64).exp(), 0.0)]);
    }

    #[test]
    fn builder_rows() {
        assert_eq!(InteractionTable::potts(2, 1.0, &[1.0]).unwrap().rows()[0], vec![-1.0, 0.0]);
        assert_eq!(InteractionTable::potts(3, 1.0, &[0.0]).unwrap().rows()[0], vec![-0.0, 0.0, 0.0]);
        assert_eq!(InteractionTable::potts(5, 1.0, &[-2.0]).unwrap().rows()[0], vec![2.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(InteractionTable::ising(1.0, &[1.0]).unwrap().rows()[0], vec![-1.0, 1.0]);
        assert_eq!(InteractionTable::ising(1.0, &[0.0]).unwrap().rows()[0], vec![-0.0, 0.0]);
        assert_eq!(clock_row(2, 1.0), vec![-1.0, 1.0]);
        assert_eq!(clock_row(4, 1.0), vec![-1.0, 0.0, 1.0, 0.0]);
        let c3 = clock_row(3, 1.0);
        assert_eq!(c3[0], -1.0);
        assert!((c3[1] - 0.5).abs() < 1e-15 && (c3[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn builders_are_reflection_symmetric() {
        for q in 2..8 {
            for row in [potts_row(q, 1.3), clock_row(q, -0.4)] {
                for j in 0..q as usize {
                    assert_eq!(row[j], row[(q as usize - j) % q as usize]);
                }
            }
        }
    }

    #[test]
    fn validation() {
        assert!(InteractionTable::new(1, 1.0, vec![]).is_err());
        assert!(InteractionTable::new(2, 0.0, vec![]).is_err());
        assert!(InteractionTable::new(2, 1.0, vec![vec![0.0; 3]]).is_err());
        assert!(InteractionTable::new(2, 1.0, vec![vec![f64::INFINITY, 0.0]]).is_err());
    }

    #[test]
    fn reversal_reflects_row() {
        let t = InteractionTable::new(3, 1.0, vec![vec![1.0, 2.0, 3.0]]).unwrap();
        assert_eq!(t.with_edge_reversed(0).rows()[0], vec![1.0, 3.0, 2.0]);
    }
}
