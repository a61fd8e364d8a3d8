use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{cut_code, stabilizer_generators, CodeKind, ZqVector};
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;
use crate::model::WeightTable;
use crate::phase::root_of_unity;

/// The operator `X(u) Z(v)` with `u` in the cut code and `v` in the cycle
/// code. It fixes the code state with eigenvalue exactly 1, since `u · v = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryElement {
    u: ZqVector,
    v: ZqVector,
    eigenvalue: Complex64,
}

impl SymmetryElement {
    pub fn new(g: &OrientedGraph, u: ZqVector, v: ZqVector) -> Result<Self> {
        let s = Self::new_unchecked(u, v);
        s.validate(g)?;
        Ok(s)
    }

    /// Skips membership checks. Only meaningful for building negative
    /// controls; applying an invalid element changes `Z`.
    pub fn new_unchecked(u: ZqVector, v: ZqVector) -> Self {
        SymmetryElement { u, v, eigenvalue: Complex64::new(1.0, 0.0) }
    }

    pub fn identity(q: u32, len: usize) -> Self {
        Self::new_unchecked(ZqVector::zero(q, len), ZqVector::zero(q, len))
    }

    pub fn u(&self) -> &ZqVector {
        &self.u
    }

    pub fn v(&self) -> &ZqVector {
        &self.v
    }

    pub fn eigenvalue(&self) -> Complex64 {
        self.eigenvalue
    }

    pub fn q(&self) -> u32 {
        self.u.q()
    }

    /// Checks `u ∈ C`, `v ∈ C^⊥` and `u · v = 0` for the codes of `g`.
    pub fn validate(&self, g: &OrientedGraph) -> Result<()> {
        if self.u.q() != self.v.q() || self.u.len() != self.v.len() {
            return Err(Error::DimensionMismatch("u and v have different shapes".into()));
        }
        let cut = cut_code(g, self.q())?;
        debug_assert_eq!(cut.kind(), CodeKind::Cut);
        if !cut.contains(&self.u)? {
            return Err(Error::InvalidSymmetry(format!("u = {} is not in the cut code", self.u)));
        }
        let cycle = cut.annihilator(g)?;
        if !cycle.contains(&self.v)? {
            return Err(Error::InvalidSymmetry(format!("v = {} is not in the cycle code", self.v)));
        }
        if self.u.dot(&self.v)? != 0 {
            return Err(Error::InvalidSymmetry("u · v is not 0 mod q".into()));
        }
        Ok(())
    }

    /// The group product `(u₁ + u₂, v₁ + v₂)`.
    pub fn compose(&self, other: &SymmetryElement) -> Result<SymmetryElement> {
        Ok(Self::new_unchecked(self.u.checked_add(&other.u)?, self.v.checked_add(&other.v)?))
    }
}

/// `w'_e(j) = ω^{v_e (j - u_e)} · w_e((j - u_e) mod q)`.
pub fn apply_symmetry(s: &SymmetryElement, w: &WeightTable) -> Result<WeightTable> {
    let q = w.q();
    if s.q() != q || s.u.len() != w.edge_count() || s.v.len() != w.edge_count() {
        return Err(Error::DimensionMismatch(format!(
            "symmetry over Z_{}^{} applied to {} rows with q = {q}",
            s.q(),
            s.u.len(),
            w.edge_count()
        )));
    }
    let rows = w
        .rows()
        .iter()
        .enumerate()
        .map(|(e, row)| {
            let (u, v) = (s.u.get(e), s.v.get(e) as i64);
            (0..q)
                .map(|j| {
                    let shifted = (j + q - u) % q;
                    let x = row[shifted as usize];
                    if v == 0 {
                        x
                    } else {
                        root_of_unity(q, v * shifted as i64) * x
                    }
                })
                .collect()
        })
        .collect();
    WeightTable::new(q, rows)
}

/// `X[a]`: shift every spin-difference through vertex `a` by its incidence.
/// For `q = 2` this swaps the two entries of each row on a non-loop edge at
/// `a`.
pub fn vertex_flip(g: &OrientedGraph, a: usize, q: u32) -> Result<SymmetryElement> {
    if a >= g.vertex_count() {
        return Err(Error::InvalidGraph(format!("vertex {a} out of range")));
    }
    let row: Vec<i64> = g.incidence_matrix().row(a).iter().map(|&x| x as i64).collect();
    SymmetryElement::new(g, ZqVector::from_integers(q, &row), ZqVector::zero(q, g.edge_count()))
}

/// `count` group elements, each a uniformly random `Z_q`-combination of the
/// stabilizer generators. The same seed gives the same list.
pub fn symmetry_group_sample(g: &OrientedGraph, q: u32, count: usize, seed: u64) -> Result<Vec<SymmetryElement>> {
    let gens = stabilizer_generators(g, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = g.edge_count();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut u = ZqVector::zero(q, len);
        let mut v = ZqVector::zero(q, len);
        for pair in &gens {
            let k = rng.gen_range(0..q);
            u.add_scaled(&pair.x, k);
            v.add_scaled(&pair.z, k);
        }
        out.push(SymmetryElement::new_unchecked(u, v));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{brute_force_partition, Limits};
    use crate::graph::families;
    use crate::model::InteractionTable;
    use crate::scaled::ScaledValue;

    fn z(g: &OrientedGraph, w: &WeightTable) -> ScaledValue {
        brute_force_partition(g, w, &Limits::default()).unwrap().value
    }

    #[test]
    fn identity_is_identity() {
        let w = InteractionTable::clock(4, 0.4, &[1.0, -2.0, 0.5]).unwrap().boltzmann_weights();
        assert_eq!(apply_symmetry(&SymmetryElement::identity(4, 3), &w).unwrap(), w);
    }

    #[test]
    fn ising_vertex_flip_negates_couplings() {
        let g = families::star(3);
        let j = [1.0, -0.4, 2.0];
        let t = InteractionTable::ising(0.7, &j).unwrap();
        let s = vertex_flip(&g, 0, 2).unwrap();
        let flipped = apply_symmetry(&s, &t.boltzmann_weights()).unwrap();
        let negated: Vec<f64> = j.iter().map(|x| -x).collect();
        assert_eq!(flipped, InteractionTable::ising(0.7, &negated).unwrap().boltzmann_weights());
        // the closed form sums each row in index order, and w0 + w1 = w1 + w0
        let closed = |w: &WeightTable| crate::engines::tree_closed_form(&g, w).unwrap();
        assert_eq!(closed(&flipped), closed(&t.boltzmann_weights()));
        assert!(z(&g, &flipped).relative_error(&z(&g, &t.boltzmann_weights())) < 1e-14);

        // a leaf only touches its own edge
        let s = vertex_flip(&g, 2, 2).unwrap();
        let flipped = apply_symmetry(&s, &t.boltzmann_weights()).unwrap();
        assert_eq!(flipped.row(0), t.boltzmann_weights().row(0));
        assert_ne!(flipped.row(1), t.boltzmann_weights().row(1));
    }

    #[test]
    fn random_elements_preserve_z() {
        let g = families::triangle();
        let w = InteractionTable::new(3, 0.9, vec![vec![0.1, -0.5, 1.0], vec![0.0, 0.3, 0.3], vec![-1.0, 0.2, 0.0]])
            .unwrap()
            .boltzmann_weights();
        let base = z(&g, &w);
        for s in symmetry_group_sample(&g, 3, 30, 7).unwrap() {
            s.validate(&g).unwrap();
            let ws = apply_symmetry(&s, &w).unwrap();
            assert!(z(&g, &ws).relative_error(&base) < 1e-12);
        }
    }

    #[test]
    fn sampling_is_deterministic_and_closed() {
        let g = families::grid(2, 3);
        assert!(symmetry_group_sample(&g, 4, 0, 1).unwrap().is_empty());
        let a = symmetry_group_sample(&g, 4, 10, 99).unwrap();
        assert_eq!(a, symmetry_group_sample(&g, 4, 10, 99).unwrap());
        assert_ne!(a, symmetry_group_sample(&g, 4, 10, 100).unwrap());
        for pair in a.windows(2) {
            pair[0].compose(&pair[1]).unwrap().validate(&g).unwrap();
        }
    }

    #[test]
    fn rejects_invalid_elements() {
        let g = families::triangle();
        let bad_u = ZqVector::new(3, vec![1, 0, 0]).unwrap();
        let zero = ZqVector::zero(3, 3);
        assert!(matches!(SymmetryElement::new(&g, bad_u.clone(), zero.clone()), Err(Error::InvalidSymmetry(_))));
        assert!(matches!(SymmetryElement::new(&g, zero.clone(), bad_u.clone()), Err(Error::InvalidSymmetry(_))));

        // applied anyway, the bogus shift changes Z
        let w = InteractionTable::potts(3, 1.0, &[1.0, 2.0, 0.5]).unwrap().boltzmann_weights();
        let ws = apply_symmetry(&SymmetryElement::new_unchecked(bad_u, zero), &w).unwrap();
        assert!(z(&g, &ws).relative_error(&z(&g, &w)) > 1e-3);

        let wrong = SymmetryElement::identity(3, 4);
        assert!(matches!(apply_symmetry(&wrong, &w), Err(Error::DimensionMismatch(_))));
    }
}
