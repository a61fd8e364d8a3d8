//! Faces of a rotation system and the oriented planar dual.
//!
//! A dart is an [`EdgeEnd`] viewed as leaving the vertex it sits at. Faces
//! are the orbits of `d ↦ succ(twin(d))`, where `succ` is the cyclic
//! successor in the rotation at the dart's vertex. Dual edge `e` has its head
//! at the face of dart `(e, head)` and its tail at the face of dart
//! `(e, tail)`, i.e. it crosses `e` between the two faces on either side. With
//! this convention `B(G) · B(D)ᵀ = 0`, which [`planar_dual`] checks before
//! returning, and the dual of the dual has the original orientation.

use std::collections::HashMap;

use super::{EdgeEnd, End, OrientedGraph};
use crate::error::{Error, Result};

/// Faces as cyclic dart sequences, plus the face index of every dart.
#[derive(Clone, Debug)]
pub struct Faces {
    pub boundaries: Vec<Vec<EdgeEnd>>,
    pub face_of: HashMap<EdgeEnd, usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }
}

/// Traces the faces of an embedded graph. Faces are numbered in order of
/// first appearance when scanning vertices by id and each rotation in order.
pub fn faces(g: &OrientedGraph) -> Result<Faces> {
    let rotation = g.rotation().ok_or(Error::MissingEmbedding)?;
    let mut succ: HashMap<EdgeEnd, EdgeEnd> = HashMap::new();
    for ends in rotation {
        for (i, &d) in ends.iter().enumerate() {
            succ.insert(d, ends[(i + 1) % ends.len()]);
        }
    }
    let mut boundaries = Vec::new();
    let mut face_of = HashMap::new();
    if g.edge_count() == 0 {
        // An isolated vertex still bounds one face.
        boundaries.push(Vec::new());
    }
    for ends in rotation {
        for &start in ends {
            if face_of.contains_key(&start) {
                continue;
            }
            let face = boundaries.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                face_of.insert(d, face);
                boundary.push(d);
                d = succ[&d.twin()];
                if d == start {
                    break;
                }
            }
            boundaries.push(boundary);
        }
    }
    Ok(Faces { boundaries, face_of })
}

/// The planar dual with its induced orientation and rotation system. Edge
/// ids carry over unchanged; dual vertices are the faces of `g`.
pub fn planar_dual(g: &OrientedGraph) -> Result<OrientedGraph> {
    if g.rotation().is_none() {
        return Err(Error::MissingEmbedding);
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let faces = faces(g)?;
    let (n, edges, f) = (g.vertex_count(), g.edge_count(), faces.len());
    if n + f != edges + 2 {
        return Err(Error::EulerViolation { n, edges, faces: f });
    }

    let pairs: Vec<(usize, usize)> = (0..edges)
        .map(|e| {
            (
                faces.face_of[&EdgeEnd::new(e, End::Head)],
                faces.face_of[&EdgeEnd::new(e, End::Tail)],
            )
        })
        .collect();
    // Dart (e, end) on a face boundary becomes the dual end sitting at that
    // face, which is the dual's end of the same name.
    let rotation = faces.boundaries.clone();
    let dual = OrientedGraph::new(f, &pairs)?.with_rotation(rotation)?;

    let product = g.incidence_matrix().times_transpose(&dual.incidence_matrix());
    if product.iter().flatten().any(|&x| x != 0) {
        return Err(Error::InvalidEmbedding(
            "incidence matrices of primal and dual are not orthogonal".into(),
        ));
    }
    Ok(dual)
}
