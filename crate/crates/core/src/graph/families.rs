//! Standard graph families, with planar embeddings where one is natural.

use rand::Rng;

use super::OrientedGraph;

/// Path `0 → 1 → … → n-1`.
pub fn path(n: usize) -> OrientedGraph {
    let edges: Vec<_> = (1..n).map(|v| (v, v - 1)).collect();
    OrientedGraph::new(n, &edges).expect("path edges in range")
}

/// Coherently oriented cycle `0 → 1 → … → n-1 → 0`. `n = 1` is a self-loop,
/// `n = 2` a pair of opposite parallel edges.
pub fn cycle(n: usize) -> OrientedGraph {
    let edges: Vec<_> = (0..n).map(|v| ((v + 1) % n, v)).collect();
    OrientedGraph::new(n, &edges).expect("cycle edges in range")
}

/// Star with centre 0, edges pointing from the centre to each leaf.
pub fn star(leaves: usize) -> OrientedGraph {
    let edges: Vec<_> = (1..=leaves).map(|v| (v, 0)).collect();
    OrientedGraph::new(leaves + 1, &edges).expect("star edges in range")
}

/// Complete graph, edge `i → j` for every `i < j`.
pub fn complete(n: usize) -> OrientedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((j, i));
        }
    }
    OrientedGraph::new(n, &edges).expect("complete graph edges in range")
}

/// Triangle `0 → 1 → 2 → 0` with its planar embedding.
pub fn triangle() -> OrientedGraph {
    cycle(3)
        .with_straight_line_embedding(&[(0.0, 0.0), (1.0, 0.0), (0.5, 1.0)])
        .expect("triangle drawing is planar")
}

/// Single edge `0 → 1` with its (trivial) embedding.
pub fn single_edge() -> OrientedGraph {
    path(2)
        .with_straight_line_embedding(&[(0.0, 0.0), (1.0, 0.0)])
        .expect("segment drawing is planar")
}

/// `rows × cols` open-boundary grid of vertices, embedded in the plane.
/// Vertex `(r, c)` is `r * cols + c`; for each vertex in that order the edge
/// to the right neighbour comes first, then the edge downwards. Edges point
/// towards increasing row or column.
pub fn grid(rows: usize, cols: usize) -> OrientedGraph {
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((idx(r, c + 1), idx(r, c)));
            }
            if r + 1 < rows {
                edges.push((idx(r + 1, c), idx(r, c)));
            }
        }
    }
    let coords: Vec<_> = (0..rows * cols)
        .map(|v| ((v % cols) as f64, (v / cols) as f64))
        .collect();
    OrientedGraph::new(rows * cols, &edges)
        .and_then(|g| g.with_straight_line_embedding(&coords))
        .expect("grid drawing is planar")
}

/// The 3-cube drawn as two nested squares joined by spokes.
pub fn cube() -> OrientedGraph {
    let edges = [
        (1, 0),
        (2, 1),
        (3, 2),
        (0, 3),
        (5, 4),
        (6, 5),
        (7, 6),
        (4, 7),
        (4, 0),
        (5, 1),
        (6, 2),
        (7, 3),
    ];
    let coords = [
        (-2.0, -2.0),
        (2.0, -2.0),
        (2.0, 2.0),
        (-2.0, 2.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (1.0, 1.0),
        (-1.0, 1.0),
    ];
    OrientedGraph::new(8, &edges)
        .and_then(|g| g.with_straight_line_embedding(&coords))
        .expect("cube drawing is planar")
}

/// Uniformly random labelled tree shape grown by attaching each new vertex to
/// an earlier one, with random orientations.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> OrientedGraph {
    let edges: Vec<_> = (1..n)
        .map(|v| {
            let u = rng.gen_range(0..v);
            if rng.gen_bool(0.5) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    OrientedGraph::new(n, &edges).expect("tree edges in range")
}

/// Random connected multigraph: a random tree plus `extra` edges whose
/// endpoints are drawn uniformly, so parallel edges and self-loops occur.
/// Edge ids are shuffled so tree edges are not always the lowest.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> OrientedGraph {
    let tree = random_tree(rng, n);
    let mut edges: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.head, e.tail)).collect();
    for _ in 0..extra {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for i in (1..edges.len()).rev() {
        let j = rng.gen_range(0..=i);
        edges.swap(i, j);
    }
    OrientedGraph::new(n, &edges).expect("random edges in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let g = grid(3, 4);
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 3 * 3 + 2 * 4);
        assert!(g.rotation().is_some());
    }

    #[test]
    fn cycle_small_cases() {
        assert!(cycle(1).edge(0).is_loop());
        let two = cycle(2);
        assert_eq!(two.edge(0).head, two.edge(1).tail);
    }

    #[test]
    fn random_multigraph_connected() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..8 {
            let g = random_connected_multigraph(&mut rng, n, 5);
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), n - 1 + 5);
        }
    }
}
