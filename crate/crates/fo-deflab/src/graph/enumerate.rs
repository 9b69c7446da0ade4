//! Exhaustive enumeration of graphs, one representative per isomorphism
//! class, by extending smaller representatives with every possible
//! neighborhood and deduplicating within invariant buckets.

use super::{invariant_key, isomorphic, Graph};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// One representative per isomorphism class of graphs of order `n`.
/// Deterministic output order.
pub fn enumerate_graphs(n: usize, cap: usize) -> Result<Vec<Graph>> {
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "enumeration capped at order {cap}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    let mut reps = vec![Graph::empty(1)?];
    for order in 2..=n {
        let mut buckets: HashMap<Vec<u64>, Vec<Graph>> = HashMap::new();
        let mut next: Vec<Graph> = Vec::new();
        for base in &reps {
            for mask in 0u64..1 << (order - 1) {
                let mut g = Graph::empty(order)?;
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                for v in 0..order - 1 {
                    if mask >> v & 1 == 1 {
                        g.add_edge(order - 1, v)?;
                    }
                }
                let key = invariant_key(&g);
                let bucket = buckets.entry(key).or_default();
                if !bucket.iter().any(|h| isomorphic(h, &g)) {
                    bucket.push(g.clone());
                    next.push(g);
                }
            }
        }
        reps = next;
    }
    Ok(reps)
}

/// Independent oracle: enumerate every labeled graph on `n` vertices and
/// deduplicate by the minimum edge set over all vertex permutations.
/// Exponential; for cross-checking small `n` only.
pub fn enumerate_graphs_brute(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "brute-force enumeration is for n <= 6");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut perms = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permutations(&mut idx, 0, &mut perms);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let canon = perms
            .iter()
            .map(|p| {
                let mut es: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                es.sort_unstable();
                es
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, out);
        idx.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_graphs(n, 9).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn counts_match_independent_brute_force() {
        for n in 1..=5 {
            assert_eq!(
                enumerate_graphs(n, 9).unwrap().len(),
                enumerate_graphs_brute(n).len(),
                "order {n}"
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_graphs(10, 9).is_err());
    }
}
