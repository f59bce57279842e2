//! Connectivity and degree statistics of sampled graphs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph_models::Edge;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grandparent = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grandparent;
            x = grandparent;
        }
        x
    }

    /// Merge the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Summary of one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    pub isolated_count: usize,
    pub min_degree: usize,
    pub is_connected: bool,
}

/// Incrementally maintained [`GraphStats`] under edge insertion.
#[derive(Debug, Clone)]
pub struct ConnectivityTracker {
    sets: DisjointSets,
    degree: Vec<u32>,
    edges: usize,
    isolated: usize,
}

impl ConnectivityTracker {
    pub fn new(n: usize) -> Self {
        ConnectivityTracker {
            sets: DisjointSets::new(n),
            degree: vec![0; n],
            edges: 0,
            isolated: n,
        }
    }

    pub fn add_edge(&mut self, (a, b): Edge) {
        for v in [a, b] {
            if self.degree[v as usize] == 0 {
                self.isolated -= 1;
            }
            self.degree[v as usize] += 1;
        }
        self.edges += 1;
        self.sets.union(a, b);
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.degree.len();
        let components = self.sets.set_count();
        GraphStats {
            node_count: n,
            edge_count: self.edges,
            component_count: components,
            isolated_count: self.isolated,
            min_degree: self.degree.iter().min().map_or(0, |&d| d as usize),
            is_connected: components <= 1,
        }
    }
}

/// Exact statistics of the graph on `nodes` vertices with the given edges.
///
/// A single vertex counts as connected and isolated at once; the empty graph
/// is connected with no isolated vertex.
pub fn analyze(nodes: usize, edges: &[Edge]) -> Result<GraphStats> {
    let mut tracker = ConnectivityTracker::new(nodes);
    for &(a, b) in edges {
        if a as usize >= nodes || b as usize >= nodes {
            return Err(Error::domain(
                "graph analysis",
                format!("edge ({a}, {b}) has an endpoint outside 0..{nodes}"),
            ));
        }
        tracker.add_edge((a, b));
    }
    Ok(tracker.stats())
}

fn normalized((a, b): Edge) -> Edge {
    (a.min(b), a.max(b))
}

/// True iff every edge of `a` is an edge of `b` (orientation ignored).
pub fn is_subgraph(a: &[Edge], b: &[Edge]) -> bool {
    if a.is_empty() {
        return true;
    }
    let b: HashSet<Edge> = b.iter().copied().map(normalized).collect();
    a.iter().all(|&e| b.contains(&normalized(e)))
}

#[cfg(test)]
mod tests {
    use std::collections::VecDeque;

    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    /// Breadth-first reference for every field of [`GraphStats`].
    fn bfs_stats(n: usize, edges: &[Edge]) -> GraphStats {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            adjacency[a as usize].push(b as usize);
            adjacency[b as usize].push(a as usize);
        }
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        GraphStats {
            node_count: n,
            edge_count: edges.len(),
            component_count: components,
            isolated_count: adjacency.iter().filter(|a| a.is_empty()).count(),
            min_degree: adjacency.iter().map(Vec::len).min().unwrap_or(0),
            is_connected: components <= 1,
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Edge> {
        (0..m)
            .map(|_| {
                let a = rng.random_range(0..n as u32);
                let mut b = rng.random_range(0..n as u32 - 1);
                if b >= a {
                    b += 1;
                }
                (a.min(b), a.max(b))
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn small_examples() {
        let path = analyze(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_connected);
        assert_eq!(path.isolated_count, 0);
        let split = analyze(3, &[(0, 1)]).unwrap();
        assert_eq!(split.component_count, 2);
        assert_eq!(split.isolated_count, 1);
        assert!(!split.is_connected);
        let single = analyze(1, &[]).unwrap();
        assert!(single.is_connected);
        assert_eq!(single.isolated_count, 1);
        let empty = analyze(0, &[]).unwrap();
        assert!(empty.is_connected);
        assert_eq!(empty.isolated_count, 0);
        assert!(analyze(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn subgraph_examples() {
        assert!(is_subgraph(&[], &[(1, 2)]));
        assert!(is_subgraph(&[(0, 1), (2, 3)], &[(0, 1), (2, 3)]));
        assert!(!is_subgraph(&[(0, 1)], &[(1, 2)]));
        assert!(is_subgraph(&[(1, 0)], &[(0, 1)]));
    }

    #[test]
    fn matches_breadth_first_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=500);
            let m = rng.random_range(0..=2 * n);
            let edges = random_graph(&mut rng, n.max(2), m);
            let n = n.max(2);
            assert_eq!(analyze(n, &edges).unwrap(), bfs_stats(n, &edges));
        }
    }

    proptest! {
        #[test]
        fn adding_edges_is_monotone(seed in any::<u64>(), n in 2usize..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges = random_graph(&mut rng, n, 3 * n);
            let mut tracker = ConnectivityTracker::new(n);
            let mut before = tracker.stats();
            for &e in &edges {
                tracker.add_edge(e);
                let after = tracker.stats();
                prop_assert!(after.component_count <= before.component_count);
                prop_assert!(after.isolated_count <= before.isolated_count);
                prop_assert!(!before.is_connected || after.is_connected);
                prop_assert!(!after.is_connected || n < 2 || after.isolated_count == 0);
                before = after;
            }
        }
    }
}
