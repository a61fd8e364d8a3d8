//! Oriented multigraphs, their incidence structure and spanning trees.
//!
//! Every edge has a head and a tail (possibly equal, for self-loops); parallel
//! edges are allowed. An optional rotation system lists, for each vertex, the
//! cyclic order of the edge-ends sitting at that vertex.

pub mod decomposition;
pub mod families;
pub mod planar;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Head,
    Tail,
}

impl End {
    pub fn opposite(self) -> End {
        match self {
            End::Head => End::Tail,
            End::Tail => End::Head,
        }
    }
}

/// One end of an edge; a dart in the rotation system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: End,
}

impl EdgeEnd {
    pub fn new(edge: usize, end: End) -> Self {
        EdgeEnd { edge, end }
    }

    pub fn twin(self) -> Self {
        EdgeEnd { edge: self.edge, end: self.end.opposite() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub head: usize,
    pub tail: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.head == self.tail
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    edges: Vec<Edge>,
    rotation: Option<Vec<Vec<EdgeEnd>>>,
}

/// A connected component extracted as a standalone graph, with the maps back
/// to the parent's vertex and edge ids.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: OrientedGraph,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl OrientedGraph {
    /// Builds a graph from `(head, tail)` pairs; edge ids follow slice order.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut out = Vec::with_capacity(edges.len());
        for (id, &(head, tail)) in edges.iter().enumerate() {
            if head >= n || tail >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {id} ({head} <- {tail}) references a vertex outside 0..{n}"
                )));
            }
            out.push(Edge { head, tail });
        }
        Ok(OrientedGraph { n, edges: out, rotation: None })
    }

    /// Attaches a rotation system. Each edge-end must appear exactly once, at
    /// the vertex it belongs to.
    pub fn with_rotation(mut self, rotation: Vec<Vec<EdgeEnd>>) -> Result<Self> {
        if rotation.len() != self.n {
            return Err(Error::InvalidEmbedding(format!(
                "rotation lists {} vertices, graph has {}",
                rotation.len(),
                self.n
            )));
        }
        let mut seen = vec![[false; 2]; self.edges.len()];
        for (v, ends) in rotation.iter().enumerate() {
            for de in ends {
                if de.edge >= self.edges.len() {
                    return Err(Error::InvalidEmbedding(format!("unknown edge {}", de.edge)));
                }
                if self.endpoint(*de) != v {
                    return Err(Error::InvalidEmbedding(format!(
                        "end {:?} of edge {} listed at vertex {v}",
                        de.end, de.edge
                    )));
                }
                let slot = &mut seen[de.edge][de.end as usize];
                if *slot {
                    return Err(Error::InvalidEmbedding(format!(
                        "end {:?} of edge {} listed twice",
                        de.end, de.edge
                    )));
                }
                *slot = true;
            }
        }
        if let Some(e) = seen.iter().position(|s| !(s[0] && s[1])) {
            return Err(Error::InvalidEmbedding(format!("edge {e} is missing an end")));
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    /// Derives a rotation system from a straight-line drawing by sorting the
    /// edge-ends at each vertex by angle. Only meaningful for simple graphs
    /// drawn without crossings.
    pub fn with_straight_line_embedding(self, coords: &[(f64, f64)]) -> Result<Self> {
        if coords.len() != self.n {
            return Err(Error::InvalidEmbedding("one coordinate per vertex required".into()));
        }
        let mut rotation: Vec<Vec<(f64, EdgeEnd)>> = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                return Err(Error::InvalidEmbedding(
                    "self-loops have no straight-line drawing".into(),
                ));
            }
            for (at, other, end) in [(e.head, e.tail, End::Head), (e.tail, e.head, End::Tail)] {
                let (x0, y0) = coords[at];
                let (x1, y1) = coords[other];
                rotation[at].push(((y1 - y0).atan2(x1 - x0), EdgeEnd::new(id, end)));
            }
        }
        let rotation = rotation
            .into_iter()
            .map(|mut ends| {
                ends.sort_by(|a, b| a.0.total_cmp(&b.0));
                ends.into_iter().map(|(_, de)| de).collect()
            })
            .collect();
        self.with_rotation(rotation)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn rotation(&self) -> Option<&[Vec<EdgeEnd>]> {
        self.rotation.as_deref()
    }

    /// The vertex an edge-end is attached to.
    pub fn endpoint(&self, de: EdgeEnd) -> usize {
        let e = self.edges[de.edge];
        match de.end {
            End::Head => e.head,
            End::Tail => e.tail,
        }
    }

    /// Edge ids with `a` as head or tail, self-loops included, ascending.
    pub fn incident_edges(&self, a: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].head == a || self.edges[e].tail == a)
            .collect()
    }

    /// Underlying simple graph: neighbour sets with loops and multi-edges dropped.
    pub fn simple_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for e in &self.edges {
            if !e.is_loop() {
                adj[e.head].insert(e.tail);
                adj[e.tail].insert(e.head);
            }
        }
        adj
    }

    /// Component label per vertex, labels numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.head, e.tail);
        }
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut out = vec![0; self.n];
        for v in 0..self.n {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().all(|&c| c == 0)
    }

    /// Connected and acyclic; multi-edges and loops disqualify.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Splits into connected components, ordered by smallest vertex. Vertex
    /// and edge ids keep their relative order inside each component.
    pub fn components(&self) -> Vec<Component> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut vertices = vec![Vec::new(); count];
        let mut local = vec![0; self.n];
        for v in 0..self.n {
            local[v] = vertices[labels[v]].len();
            vertices[labels[v]].push(v);
        }
        let mut edges = vec![Vec::new(); count];
        let mut local_edge = vec![0; self.edges.len()];
        for (id, e) in self.edges.iter().enumerate() {
            let c = labels[e.head];
            local_edge[id] = edges[c].len();
            edges[c].push(id);
        }
        (0..count)
            .map(|c| {
                let pairs: Vec<(usize, usize)> = edges[c]
                    .iter()
                    .map(|&id| (local[self.edges[id].head], local[self.edges[id].tail]))
                    .collect();
                let mut graph = OrientedGraph::new(vertices[c].len(), &pairs)
                    .expect("component edges stay in range");
                if let Some(rot) = &self.rotation {
                    graph.rotation = Some(
                        vertices[c]
                            .iter()
                            .map(|&v| {
                                rot[v]
                                    .iter()
                                    .map(|de| EdgeEnd::new(local_edge[de.edge], de.end))
                                    .collect()
                            })
                            .collect(),
                    );
                }
                Component { graph, vertices: vertices[c].clone(), edges: edges[c].clone() }
            })
            .collect()
    }

    /// Same graph with edge `e` reversed. The rotation system keeps its
    /// geometry: the two ends of `e` swap labels.
    pub fn with_edge_reversed(&self, e: usize) -> OrientedGraph {
        let mut g = self.clone();
        let edge = &mut g.edges[e];
        std::mem::swap(&mut edge.head, &mut edge.tail);
        if let Some(rot) = &mut g.rotation {
            for de in rot.iter_mut().flatten() {
                if de.edge == e {
                    de.end = de.end.opposite();
                }
            }
        }
        g
    }

    /// Drops the rotation system.
    pub fn without_rotation(&self) -> OrientedGraph {
        OrientedGraph { n: self.n, edges: self.edges.clone(), rotation: None }
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let cols = self.edges.len();
        let mut data = vec![0i8; self.n * cols];
        for (e, edge) in self.edges.iter().enumerate() {
            if !edge.is_loop() {
                data[edge.head * cols + e] = 1;
                data[edge.tail * cols + e] = -1;
            }
        }
        IncidenceMatrix { rows: self.n, cols, data }
    }

    /// Spanning tree by scanning edges in id order and keeping each edge that
    /// joins two different trees of the forest built so far.
    pub fn spanning_tree(&self) -> Result<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        let mut tree = Vec::with_capacity(self.n - 1);
        for (id, e) in self.edges.iter().enumerate() {
            if uf.union(e.head, e.tail) {
                tree.push(id);
            }
        }
        if tree.len() + 1 != self.n {
            return Err(Error::DisconnectedGraph);
        }
        Ok(tree)
    }

    /// One signed cycle vector per non-tree edge, in edge-id order. Each
    /// vector has `+1` at its non-tree edge and lies in the integer kernel of
    /// the incidence matrix; a self-loop yields its unit vector.
    pub fn fundamental_cycles(&self, tree: &[usize]) -> Result<Vec<Vec<i64>>> {
        let in_tree = self.check_spanning_tree(tree)?;

        // Root the tree at vertex 0: parent vertex, parent edge, depth.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for &id in tree {
            let e = self.edges[id];
            adj[e.head].push((e.tail, id));
            adj[e.tail].push((e.head, id));
        }
        let mut parent = vec![(usize::MAX, usize::MAX); self.n];
        let mut depth = vec![0usize; self.n];
        let mut stack = vec![0];
        let mut visited = vec![false; self.n];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, id) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = (v, id);
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }

        let mut cycles = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if in_tree[id] {
                continue;
            }
            let mut v = vec![0i64; self.edges.len()];
            v[id] = 1;
            // Close the cycle with the tree path head(e) -> tail(e). Stepping
            // along tree edge f from x to y must add -1 at x and +1 at y.
            let (mut a, mut b) = (e.head, e.tail);
            let mut tail_side = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, f) = parent[a];
                    v[f] += self.step_sign(f, a, p);
                    a = p;
                } else {
                    let (p, f) = parent[b];
                    tail_side.push((f, p, b));
                    b = p;
                }
            }
            for (f, x, y) in tail_side {
                v[f] += self.step_sign(f, x, y);
            }
            cycles.push(v);
        }
        Ok(cycles)
    }

    /// Coefficient of edge `f` when traversed from `x` to `y`.
    fn step_sign(&self, f: usize, x: usize, y: usize) -> i64 {
        let e = self.edges[f];
        debug_assert!((e.head == y && e.tail == x) || (e.head == x && e.tail == y));
        if e.head == y && e.tail == x {
            1
        } else {
            -1
        }
    }

    fn check_spanning_tree(&self, tree: &[usize]) -> Result<Vec<bool>> {
        if tree.len() + 1 != self.n {
            return Err(Error::NotASpanningTree(format!(
                "{} edges given, {} needed",
                tree.len(),
                self.n - 1
            )));
        }
        let mut in_tree = vec![false; self.edges.len()];
        let mut uf = UnionFind::new(self.n);
        for &id in tree {
            if id >= self.edges.len() || in_tree[id] {
                return Err(Error::NotASpanningTree(format!("bad or repeated edge id {id}")));
            }
            in_tree[id] = true;
            let e = self.edges[id];
            if !uf.union(e.head, e.tail) {
                return Err(Error::NotASpanningTree(format!("edge {id} closes a cycle")));
            }
        }
        Ok(in_tree)
    }
}

/// Dense `n × N` signed incidence matrix: `+1` at the head row, `-1` at the
/// tail row, zero columns for self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, vertex: usize, edge: usize) -> i8 {
        self.data[vertex * self.cols + edge]
    }

    pub fn row(&self, vertex: usize) -> &[i8] {
        &self.data[vertex * self.cols..(vertex + 1) * self.cols]
    }

    pub fn column(&self, edge: usize) -> Vec<i8> {
        (0..self.rows).map(|a| self.get(a, edge)).collect()
    }

    /// `B · v` over the integers.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|a| self.row(a).iter().zip(v).map(|(&b, &x)| b as i64 * x).sum())
            .collect()
    }

    /// `self · otherᵀ` over the integers; both matrices must share a column set.
    pub fn times_transpose(&self, other: &IncidenceMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, other.cols);
        (0..self.rows)
            .map(|a| {
                (0..other.rows)
                    .map(|b| {
                        self.row(a)
                            .iter()
                            .zip(other.row(b))
                            .map(|(&x, &y)| x as i64 * y as i64)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> OrientedGraph {
        // 0→1, 1→2, 2→0 written as (head, tail)
        OrientedGraph::new(3, &[(1, 0), (2, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn single_edge_column() {
        let g = OrientedGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(g.incidence_matrix().column(0), vec![1, -1]);
    }

    #[test]
    fn directed_triangle_rows() {
        let b = triangle().incidence_matrix();
        for a in 0..3 {
            let row = b.row(a);
            assert_eq!(row.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(row.iter().filter(|&&x| x == -1).count(), 1);
        }
    }

    #[test]
    fn self_loop_column_is_zero() {
        let g = OrientedGraph::new(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.incidence_matrix().column(0), vec![0, 0]);
    }

    #[test]
    fn columns_sum_to_zero() {
        let g = OrientedGraph::new(4, &[(0, 1), (1, 2), (2, 2), (3, 0), (0, 3), (2, 0)]).unwrap();
        let b = g.incidence_matrix();
        for e in 0..b.cols() {
            assert_eq!(b.column(e).iter().map(|&x| x as i64).sum::<i64>(), 0);
        }
    }

    #[test]
    fn spanning_tree_lowest_ids() {
        assert_eq!(triangle().spanning_tree().unwrap(), vec![0, 1]);
        let path = OrientedGraph::new(4, &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(path.spanning_tree().unwrap(), vec![0, 1, 2]);
        let parallel = OrientedGraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(parallel.spanning_tree().unwrap(), vec![0]);
    }

    #[test]
    fn spanning_tree_disconnected() {
        let g = OrientedGraph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(g.spanning_tree(), Err(Error::DisconnectedGraph));
    }

    #[test]
    fn triangle_cycle_in_kernel() {
        let g = triangle();
        let cycles = g.fundamental_cycles(&[0, 1]).unwrap();
        assert_eq!(cycles, vec![vec![1, 1, 1]]);
        assert_eq!(g.incidence_matrix().apply(&cycles[0]), vec![0, 0, 0]);
    }

    #[test]
    fn tree_has_no_cycles() {
        let g = OrientedGraph::new(4, &[(0, 1), (2, 1), (3, 1)]).unwrap();
        let t = g.spanning_tree().unwrap();
        assert!(g.fundamental_cycles(&t).unwrap().is_empty());
    }

    #[test]
    fn square_with_chord_has_two_cycles() {
        let g = OrientedGraph::new(4, &[(1, 0), (2, 1), (3, 2), (0, 3), (2, 0)]).unwrap();
        let t = g.spanning_tree().unwrap();
        let cycles = g.fundamental_cycles(&t).unwrap();
        assert_eq!(cycles.len(), 2);
        let b = g.incidence_matrix();
        for c in &cycles {
            assert!(b.apply(c).iter().all(|&x| x == 0));
            assert!(c.iter().all(|x| (-1..=1).contains(x)));
        }
    }

    #[test]
    fn self_loop_cycle_is_unit_vector() {
        let g = OrientedGraph::new(2, &[(0, 1), (1, 1)]).unwrap();
        let cycles = g.fundamental_cycles(&[0]).unwrap();
        assert_eq!(cycles, vec![vec![0, 1]]);
    }

    #[test]
    fn rejects_non_spanning_tree() {
        let g = triangle();
        assert!(matches!(g.fundamental_cycles(&[0]), Err(Error::NotASpanningTree(_))));
        let square = OrientedGraph::new(3, &[(1, 0), (0, 1), (2, 1)]).unwrap();
        assert!(matches!(square.fundamental_cycles(&[0, 1]), Err(Error::NotASpanningTree(_))));
    }

    #[test]
    fn components_keep_order() {
        let g = OrientedGraph::new(5, &[(3, 4), (0, 2), (2, 2)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].vertices, vec![0, 2]);
        assert_eq!(comps[0].edges, vec![1, 2]);
        assert_eq!(comps[1].vertices, vec![1]);
        assert_eq!(comps[2].edges, vec![0]);
        assert_eq!(comps[2].graph.edge(0), Edge { head: 0, tail: 1 });
    }

    #[test]
    fn rotation_validation() {
        let g = OrientedGraph::new(2, &[(0, 1)]).unwrap();
        let bad = vec![vec![EdgeEnd::new(0, End::Tail)], vec![EdgeEnd::new(0, End::Head)]];
        assert!(g.clone().with_rotation(bad).is_err());
        let good = vec![vec![EdgeEnd::new(0, End::Head)], vec![EdgeEnd::new(0, End::Tail)]];
        assert!(g.with_rotation(good).is_ok());
    }
}
