//! The cut code of an oriented graph over `Z_q` and its annihilator, the
//! cycle code.
//!
//! The cut code is the additive span of the incidence rows mod `q`; its words
//! are exactly the edge-difference vectors `s_head - s_tail` of vertex
//! potentials `s`. Both codes are free `Z_q`-modules because the incidence
//! matrix is totally unimodular, so composite `q` needs no special casing:
//! the rows of all vertices but one, and the fundamental cycles of any
//! spanning tree, are bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZqVector {
    q: u32,
    entries: Vec<u32>,
}

impl ZqVector {
    pub fn new(q: u32, entries: Vec<u32>) -> Result<Self> {
        check_modulus(q)?;
        if let Some(x) = entries.iter().find(|&&x| x >= q) {
            return Err(Error::DimensionMismatch(format!("entry {x} not reduced mod {q}")));
        }
        Ok(ZqVector { q, entries })
    }

    /// Reduces arbitrary integers into `0..q`.
    pub fn from_integers(q: u32, values: &[i64]) -> Self {
        let entries = values.iter().map(|&x| x.rem_euclid(q as i64) as u32).collect();
        ZqVector { q, entries }
    }

    pub fn zero(q: u32, len: usize) -> Self {
        ZqVector { q, entries: vec![0; len] }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    fn check_compatible(&self, other: &ZqVector) -> Result<()> {
        if self.q != other.q || self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "Z_{}^{} vs Z_{}^{}",
                self.q,
                self.len(),
                other.q,
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &ZqVector, k: u32) {
        debug_assert!(self.q == other.q && self.len() == other.len());
        let q = self.q as u64;
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = ((*a as u64 + b as u64 * k as u64) % q) as u32;
        }
    }

    pub fn checked_add(&self, other: &ZqVector) -> Result<ZqVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, 1);
        Ok(out)
    }

    pub fn negated(&self) -> ZqVector {
        let entries = self.entries.iter().map(|&x| (self.q - x) % self.q).collect();
        ZqVector { q: self.q, entries }
    }

    /// Standard inner product mod `q`.
    pub fn dot(&self, other: &ZqVector) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(self.dot_unchecked(other))
    }

    fn dot_unchecked(&self, other: &ZqVector) -> u32 {
        let q = self.q as u64;
        let s = self.entries.iter().zip(&other.entries).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q);
        s as u32
    }
}

/// Base-`q` digits, `.`-separated when `q > 10`.
impl fmt::Display for ZqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 10 {
            for x in &self.entries {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
            f.write_str(&parts.join("."))
        }
    }
}

fn check_modulus(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidModel(format!("modulus q = {q} must be at least 2")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    /// Row space of the incidence matrix.
    Cut,
    /// Its annihilator, spanned by fundamental cycles.
    Cycle,
}

#[derive(Clone, Debug)]
pub struct CodeOverZq {
    q: u32,
    len: usize,
    kind: CodeKind,
    generators: Vec<ZqVector>,
    basis: Vec<ZqVector>,
    checks: Vec<ZqVector>,
}

impl CodeOverZq {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Codeword length, the number of edges.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// The defining generators: all incidence rows for a cut code, the
    /// fundamental cycles for a cycle code.
    pub fn generators(&self) -> &[ZqVector] {
        &self.generators
    }

    /// A free basis: `|C| = q^{basis.len()}`.
    pub fn basis(&self) -> &[ZqVector] {
        &self.basis
    }

    /// Generators of the complementary code, i.e. the parity checks.
    pub fn checks(&self) -> &[ZqVector] {
        &self.checks
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `q^dimension`, if it fits.
    pub fn cardinality(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.dimension() as u32)
    }

    pub fn log2_cardinality(&self) -> f64 {
        self.dimension() as f64 * (self.q as f64).log2()
    }

    /// Membership by orthogonality to every check vector. Valid because the
    /// cut and cycle codes are exact annihilators of each other.
    pub fn contains(&self, v: &ZqVector) -> Result<bool> {
        if v.q() != self.q || v.len() != self.len {
            return Err(Error::DimensionMismatch(format!(
                "vector in Z_{}^{}, code in Z_{}^{}",
                v.q(),
                v.len(),
                self.q,
                self.len
            )));
        }
        Ok(self.checks.iter().all(|c| c.dot_unchecked(v) == 0))
    }

    /// Every codeword once, as base-`q` combinations of the basis with the
    /// first basis vector varying fastest.
    pub fn codewords(&self) -> Codewords {
        Codewords::new(self.q, self.len, self.basis.clone())
    }

    /// The dual code: same graph, roles of generators and checks swapped.
    pub fn annihilator(&self, g: &OrientedGraph) -> Result<CodeOverZq> {
        match self.kind {
            CodeKind::Cut => cycle_code(g, self.q),
            CodeKind::Cycle => cut_code(g, self.q),
        }
    }
}

fn incidence_rows(g: &OrientedGraph, q: u32) -> Vec<ZqVector> {
    let b = g.incidence_matrix();
    (0..b.rows())
        .map(|a| {
            let row: Vec<i64> = b.row(a).iter().map(|&x| x as i64).collect();
            ZqVector::from_integers(q, &row)
        })
        .collect()
}

fn cycle_vectors(g: &OrientedGraph, q: u32) -> Result<Vec<ZqVector>> {
    let tree = g.spanning_tree()?;
    Ok(g.fundamental_cycles(&tree)?
        .iter()
        .map(|c| ZqVector::from_integers(q, c))
        .collect())
}

/// `C_G(q, σ)`: the `Z_q`-span of the oriented incidence rows.
pub fn cut_code(g: &OrientedGraph, q: u32) -> Result<CodeOverZq> {
    check_modulus(q)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let rows = incidence_rows(g, q);
    Ok(CodeOverZq {
        q,
        len: g.edge_count(),
        kind: CodeKind::Cut,
        basis: rows[1..].to_vec(),
        generators: rows,
        checks: cycle_vectors(g, q)?,
    })
}

/// The annihilator of the cut code, spanned by fundamental cycles of the
/// lowest-id spanning tree (self-loops contribute unit vectors).
pub fn cycle_code(g: &OrientedGraph, q: u32) -> Result<CodeOverZq> {
    check_modulus(q)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let cycles = cycle_vectors(g, q)?;
    Ok(CodeOverZq {
        q,
        len: g.edge_count(),
        kind: CodeKind::Cycle,
        generators: cycles.clone(),
        basis: cycles,
        checks: incidence_rows(g, q),
    })
}

/// Cut-code words as edge differences of vertex potentials, vertex 0 pinned
/// to 0 and vertex 1 varying fastest. Yields `q^{n-1}` words.
pub fn enumerate_codewords(code: &CodeOverZq, g: &OrientedGraph) -> Result<Codewords> {
    if code.kind() != CodeKind::Cut {
        return Err(Error::DimensionMismatch("potential enumeration needs a cut code".into()));
    }
    if code.len() != g.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "code length {} vs {} edges",
            code.len(),
            g.edge_count()
        )));
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    // Raising s_v by one adds row v of B mod q, with or without wrap-around.
    let rows = incidence_rows(g, code.q());
    Ok(Codewords::new(code.q(), g.edge_count(), rows[1..].to_vec()))
}

/// `X(u)Z(v)` generators: `(row_a, 0)` for every vertex `a`, then
/// `(0, cycle_j)` for every fundamental cycle.
pub fn stabilizer_generators(g: &OrientedGraph, q: u32) -> Result<Vec<StabilizerPair>> {
    let cut = cut_code(g, q)?;
    let zero = ZqVector::zero(q, g.edge_count());
    let mut out: Vec<StabilizerPair> = cut
        .generators()
        .iter()
        .map(|u| StabilizerPair { x: u.clone(), z: zero.clone() })
        .collect();
    out.extend(cut.checks().iter().map(|v| StabilizerPair { x: zero.clone(), z: v.clone() }));
    Ok(out)
}

/// Exponents of a Pauli product `X(x) Z(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerPair {
    pub x: ZqVector,
    pub z: ZqVector,
}

/// Odometer over `Z_q`-combinations of a free basis.
#[derive(Clone, Debug)]
pub struct Codewords {
    q: u32,
    basis: Vec<ZqVector>,
    digits: Vec<u32>,
    current: ZqVector,
    done: bool,
}

impl Codewords {
    fn new(q: u32, len: usize, basis: Vec<ZqVector>) -> Self {
        let digits = vec![0; basis.len()];
        Codewords { q, basis, digits, current: ZqVector::zero(q, len), done: false }
    }
}

impl Iterator for Codewords {
    type Item = ZqVector;

    fn next(&mut self) -> Option<ZqVector> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = true;
        for (d, b) in self.digits.iter_mut().zip(&self.basis) {
            *d += 1;
            self.current.add_scaled(b, 1);
            if *d < self.q {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}
