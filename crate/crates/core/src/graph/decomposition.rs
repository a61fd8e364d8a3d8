//! Tree decompositions built from vertex elimination orderings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::OrientedGraph;
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`DecompositionStrategy::ExactSmall`].
pub const EXACT_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionStrategy {
    #[default]
    MinFill,
    MinDegree,
    /// Optimal width by dynamic programming over vertex subsets.
    ExactSmall,
}

/// Rooted tree of vertex bags. Node `i` has bag `bags[i]` (sorted) and parent
/// `parent[i]`, with `None` only at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl TreeDecomposition {
    /// Assembles a decomposition, checking only that `parent` describes a
    /// single rooted tree. Use [`TreeDecomposition::validate`] against a graph
    /// for the covering axioms.
    pub fn from_parts(mut bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Result<Self> {
        if bags.is_empty() || bags.len() != parent.len() {
            return Err(Error::InvalidDecomposition("bag and parent counts differ".into()));
        }
        let roots: Vec<usize> = (0..parent.len()).filter(|&i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidDecomposition(format!("{} roots", roots.len())));
        }
        let root = roots[0];
        for start in 0..parent.len() {
            let mut node = start;
            let mut steps = 0;
            while let Some(p) = parent[node] {
                if p >= parent.len() {
                    return Err(Error::InvalidDecomposition(format!("parent {p} out of range")));
                }
                node = p;
                steps += 1;
                if steps > parent.len() {
                    return Err(Error::InvalidDecomposition("parent links contain a cycle".into()));
                }
            }
        }
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        Ok(TreeDecomposition { bags, parent, root })
    }

    /// Decomposition induced by eliminating vertices in `order`: each vertex
    /// gets the bag of itself and its neighbours at elimination time, hung
    /// below the bag of the first of those neighbours to be eliminated.
    pub fn from_elimination_order(g: &OrientedGraph, order: &[usize]) -> Result<Self> {
        let n = g.vertex_count();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidDecomposition(format!("order is not a permutation at {v}")));
            }
            pos[v] = i;
        }
        if order.len() != n {
            return Err(Error::InvalidDecomposition("order is not a permutation".into()));
        }
        let mut adj = g.simple_adjacency();
        let mut bags = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        for (i, &v) in order.iter().enumerate() {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            eliminate(&mut adj, v);
            parent[i] = nbrs.iter().map(|&w| pos[w]).min();
            let mut bag = nbrs;
            bag.push(v);
            bags.push(bag);
        }
        // Components end in parentless bags; hang them all under the last one.
        let root = n - 1;
        for (i, p) in parent.iter_mut().enumerate() {
            if p.is_none() && i != root {
                *p = Some(root);
            }
        }
        Self::from_parts(bags, parent)
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(i);
            }
        }
        children
    }

    /// Nodes with every child before its parent; the root comes last.
    pub fn post_order(&self) -> Vec<usize> {
        let children = self.children();
        let mut out = Vec::with_capacity(self.bags.len());
        let mut stack = vec![(self.root, false)];
        while let Some((node, expanded)) = stack.pop() {
            if expanded {
                out.push(node);
            } else {
                stack.push((node, true));
                for &c in children[node].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Checks vertex coverage, edge coverage and the running-intersection
    /// property against `g`.
    pub fn validate(&self, g: &OrientedGraph) -> Result<()> {
        let n = g.vertex_count();
        let mut holders = vec![Vec::new(); n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(Error::InvalidDecomposition(format!("bag {i} holds unknown vertex {v}")));
                }
                holders[v].push(i);
            }
        }
        for (v, nodes) in holders.iter().enumerate() {
            if nodes.is_empty() {
                return Err(Error::InvalidDecomposition(format!("vertex {v} is in no bag")));
            }
            let linked = nodes
                .iter()
                .filter(|&&i| self.parent[i].is_some_and(|p| self.bags[p].binary_search(&v).is_ok()))
                .count();
            if linked + 1 != nodes.len() {
                return Err(Error::InvalidDecomposition(format!(
                    "bags holding vertex {v} are not connected"
                )));
            }
        }
        for (id, e) in g.edges().iter().enumerate() {
            let covered = self.bags.iter().any(|bag| {
                bag.binary_search(&e.head).is_ok() && bag.binary_search(&e.tail).is_ok()
            });
            if !covered {
                return Err(Error::InvalidDecomposition(format!("edge {id} is in no bag")));
            }
        }
        Ok(())
    }
}

pub fn tree_decomposition(g: &OrientedGraph, strategy: DecompositionStrategy) -> Result<TreeDecomposition> {
    let order = elimination_order(g, strategy)?;
    TreeDecomposition::from_elimination_order(g, &order)
}

pub fn elimination_order(g: &OrientedGraph, strategy: DecompositionStrategy) -> Result<Vec<usize>> {
    match strategy {
        DecompositionStrategy::MinFill => Ok(greedy_order(g, |adj, v| (fill_in(adj, v), adj[v].len()))),
        DecompositionStrategy::MinDegree => Ok(greedy_order(g, |adj, v| (adj[v].len(), 0))),
        DecompositionStrategy::ExactSmall => {
            let n = g.vertex_count();
            if n > EXACT_LIMIT {
                return Err(Error::ExactTooLarge { n, limit: EXACT_LIMIT });
            }
            Ok(exact_order(g))
        }
    }
}

fn eliminate(adj: &mut [BTreeSet<usize>], v: usize) {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    for (i, &a) in nbrs.iter().enumerate() {
        adj[a].remove(&v);
        for &b in &nbrs[i + 1..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    adj[v].clear();
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Repeatedly eliminates the vertex with the smallest score; ties go to the
/// lowest vertex id.
fn greedy_order<F>(g: &OrientedGraph, score: F) -> Vec<usize>
where
    F: Fn(&[BTreeSet<usize>], usize) -> (usize, usize),
{
    let n = g.vertex_count();
    let mut adj = g.simple_adjacency();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (score(&adj, v), v))
            .expect("a live vertex remains");
        eliminate(&mut adj, v);
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Optimal elimination ordering via the subset recursion
/// `tw(S) = min_{v ∈ S} max(tw(S \ v), |Q(S \ v, v)|)`, where `Q(S, v)` are the
/// vertices outside `S ∪ {v}` reachable from `v` through `S`.
/// No size check here; memory is `5 · 2^n` bytes.
pub(crate) fn exact_order(g: &OrientedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    assert!(n <= 24, "subset recursion over {n} vertices");
    let adj: Vec<u32> = g
        .simple_adjacency()
        .iter()
        .map(|nbrs| nbrs.iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let reach_outside = |set: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[w];
            }
            next &= !seen;
            seen |= next;
            frontier = next & set;
        }
        (seen & !set & !(1 << v)).count_ones()
    };

    let full = (1u32 << n) - 1;
    let mut best = vec![u32::MAX; 1 << n];
    let mut choice = vec![0u8; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = set & !(1 << v);
            let cost = best[rest as usize].max(reach_outside(rest, v));
            if cost < best[set as usize] {
                best[set as usize] = cost;
                choice[set as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = choice[set as usize] as usize;
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    order
}
