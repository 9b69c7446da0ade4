//! Finite simple graphs and rooted trees.

mod enumerate;
mod iso;
mod metrics;
mod rooted;

pub use enumerate::{enumerate_graphs, enumerate_graphs_brute};
pub use iso::{invariant_key, isomorphic};
pub use metrics::{Distance, Metrics};
pub use rooted::{odot, tree_canonical_code, RootedTree, RootedTreeJson};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const MAX_VERTICES: usize = 128;

/// A finite simple graph on vertices `0..n`, adjacency kept as bit rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u128>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("within cap");
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("within cap")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("within cap")
    }

    /// Disjoint union.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        for u in 0..other.n {
            for v in u + 1..other.n {
                if other.adjacent(u, v) {
                    g.add_edge(self.n + u, self.n + v)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({u},{v}) out of range for order {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at {u}")));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        assert!(u != v);
        self.rows[u] ^= 1 << v;
        self.rows[v] ^= 1 << u;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.rows[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.rows[u];
        (0..self.n).filter(move |v| row >> v & 1 == 1)
    }

    pub fn neighbor_mask(&self, u: usize) -> u128 {
        self.rows[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertex partition into connected components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = vec![s];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.size() == self.n - 1
    }

    /// Induced subgraph on `keep` (ascending vertex list); returns the
    /// subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut g = Graph::empty(keep.len()).expect("within cap");
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        (g, keep.to_vec())
    }

    pub fn relabel(&self, perm: &[usize]) -> Graph {
        // perm[old] = new
        let mut g = Graph::empty(self.n).expect("within cap");
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).unwrap();
        }
        g
    }
}

/// Wire format: `{"n": int, "edges": [[i, j], ...]}` with `i < j` normalized
/// on output.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        Graph::from_edges(j.n, &j.edges)
    }

    pub fn parse_json(text: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad graph JSON: {e}")))?;
        Graph::from_json(&j)
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_is_not_a_tree() {
        assert!(!Graph::cycle(3).is_tree());
        assert!(Graph::path(4).is_tree());
    }

    #[test]
    fn two_isolated_vertices_have_two_components() {
        let g = Graph::empty(2).unwrap();
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn json_round_trip_normalizes_edges() {
        let g = Graph::from_edges(3, &[(2, 0), (1, 2)]).unwrap();
        let j = g.render_json();
        assert_eq!(j, r#"{"n":3,"edges":[[0,2],[1,2]]}"#);
        assert_eq!(Graph::parse_json(&j).unwrap(), g);
    }
}
