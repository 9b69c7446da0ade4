//! Rooted trees: parent arrays, canonical codes, automorphism counting.

use super::Graph;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// A rooted tree on vertices `0..n` with `parent[root] == root`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    parent: Vec<usize>,
    root: usize,
}

impl RootedTree {
    pub fn leaf() -> RootedTree {
        RootedTree {
            parent: vec![0],
            root: 0,
        }
    }

    pub fn new(parent: Vec<usize>, root: usize) -> Result<RootedTree> {
        let n = parent.len();
        if n == 0 || root >= n || parent[root] != root {
            return Err(Error::InvalidInput(
                "rooted tree needs parent[root] == root".into(),
            ));
        }
        // every vertex must reach the root without cycles
        for mut v in 0..n {
            let mut steps = 0;
            while v != root {
                if parent[v] >= n || steps > n {
                    return Err(Error::InvalidInput("parent array is not a tree".into()));
                }
                v = parent[v];
                steps += 1;
            }
        }
        Ok(RootedTree { parent, root })
    }

    /// Path on `n` vertices rooted at one end.
    pub fn path(n: usize) -> RootedTree {
        assert!(n >= 1);
        let parent = (0..n).map(|v| v.saturating_sub(1)).collect();
        RootedTree { parent, root: 0 }
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        (v != self.root).then(|| self.parent[v])
    }

    pub fn parent_array(&self) -> &[usize] {
        &self.parent
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.order()];
        for v in 0..self.order() {
            if v != self.root {
                out[self.parent[v]].push(v);
            }
        }
        out
    }

    pub fn depth_of(&self, mut v: usize) -> usize {
        let mut d = 0;
        while v != self.root {
            v = self.parent[v];
            d += 1;
        }
        d
    }

    pub fn depth(&self) -> usize {
        (0..self.order()).map(|v| self.depth_of(v)).max().unwrap()
    }

    /// Vertices of the subtree rooted at `v`, ascending.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let children = self.children();
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(children[u].iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// The subtree rooted at `v` as its own rooted tree (vertices relabeled
    /// ascending); also returns the new-id → old-id map.
    pub fn subtree(&self, v: usize) -> (RootedTree, Vec<usize>) {
        let verts = self.subtree_vertices(v);
        let index = |u: usize| verts.binary_search(&u).unwrap();
        let parent = verts
            .iter()
            .map(|&u| if u == v { index(v) } else { index(self.parent[u]) })
            .collect();
        (
            RootedTree {
                parent,
                root: index(v),
            },
            verts,
        )
    }

    /// Branches of the root (subtrees at the root's children).
    pub fn branches(&self) -> Vec<RootedTree> {
        self.children()[self.root]
            .iter()
            .map(|&c| self.subtree(c).0)
            .collect()
    }

    pub fn to_graph(&self) -> Graph {
        let edges: Vec<_> = (0..self.order())
            .filter(|&v| v != self.root)
            .map(|v| (v.min(self.parent[v]), v.max(self.parent[v])))
            .collect();
        Graph::from_edges(self.order(), &edges).expect("within cap")
    }

    /// Root a tree graph at `root`.
    pub fn from_graph(g: &Graph, root: usize) -> Result<RootedTree> {
        if !g.is_tree() {
            return Err(Error::Precondition("graph is not a tree".into()));
        }
        let mut parent = vec![usize::MAX; g.order()];
        parent[root] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        Ok(RootedTree { parent, root })
    }

    /// AHU canonical code; equal codes characterize rooted isomorphism.
    pub fn canonical_code(&self) -> Vec<u8> {
        fn code(t: &RootedTree, children: &[Vec<usize>], v: usize) -> Vec<u8> {
            let mut child_codes: Vec<Vec<u8>> = children[v]
                .iter()
                .map(|&c| code(t, children, c))
                .collect();
            child_codes.sort();
            let mut out = vec![b'('];
            for c in child_codes {
                out.extend(c);
            }
            out.push(b')');
            out
        }
        let children = self.children();
        code(self, &children, self.root)
    }

    /// Number of automorphisms: the product over vertices of the factorials
    /// of child-code multiplicities.
    pub fn automorphism_count(&self) -> BigUint {
        fn go(t: &RootedTree, children: &[Vec<usize>], v: usize, acc: &mut BigUint) -> Vec<u8> {
            let mut child_codes: Vec<Vec<u8>> = children[v]
                .iter()
                .map(|&c| go(t, children, c, acc))
                .collect();
            child_codes.sort();
            let mut run = 1u32;
            for i in 1..=child_codes.len() {
                if i < child_codes.len() && child_codes[i] == child_codes[i - 1] {
                    run += 1;
                } else {
                    for m in 2..=run {
                        *acc *= m;
                    }
                    run = 1;
                }
            }
            let mut out = vec![b'('];
            for c in child_codes {
                out.extend(c);
            }
            out.push(b')');
            out
        }
        let children = self.children();
        let mut acc = BigUint::from(1u32);
        go(self, &children, self.root, &mut acc);
        acc
    }

    pub fn isomorphic_to(&self, other: &RootedTree) -> bool {
        self.order() == other.order() && self.canonical_code() == other.canonical_code()
    }
}

/// Canonical code of an unrooted tree: the code rooted at its center, or the
/// smaller of the two codes when the diameter is odd.
pub fn tree_canonical_code(g: &Graph) -> Result<Vec<u8>> {
    if !g.is_tree() {
        return Err(Error::Precondition("not a tree".into()));
    }
    let centers = g.metrics().centers;
    let codes: Vec<Vec<u8>> = centers
        .iter()
        .map(|&c| RootedTree::from_graph(g, c).unwrap().canonical_code())
        .collect();
    Ok(codes.into_iter().min().unwrap())
}

/// Join rooted trees under a fresh root; the inputs become the branches.
pub fn odot(trees: &[RootedTree]) -> Result<RootedTree> {
    if trees.is_empty() {
        return Err(Error::Precondition("odot requires at least one tree".into()));
    }
    let total: usize = 1 + trees.iter().map(|t| t.order()).sum::<usize>();
    let mut parent = vec![0usize; total];
    let mut offset = 1;
    for t in trees {
        for v in 0..t.order() {
            parent[offset + v] = match t.parent_of(v) {
                Some(p) => offset + p,
                None => 0,
            };
        }
        offset += t.order();
    }
    RootedTree::new(parent, 0)
}

/// Wire format: `{"parent": [...], "root": int}` with `parent[root] == root`.
#[derive(Debug, Serialize, Deserialize)]
pub struct RootedTreeJson {
    pub parent: Vec<usize>,
    pub root: usize,
}

impl RootedTree {
    pub fn parse_json(text: &str) -> Result<RootedTree> {
        let j: RootedTreeJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad rooted-tree JSON: {e}")))?;
        RootedTree::new(j.parent, j.root)
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(&RootedTreeJson {
            parent: self.parent.clone(),
            root: self.root,
        })
        .expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_rooted_at_center_has_two_automorphisms() {
        // center 1 with leaves 0, 2
        let t = RootedTree::new(vec![1, 1, 1], 1).unwrap();
        assert_eq!(t.automorphism_count(), BigUint::from(2u32));
    }

    #[test]
    fn path_is_asymmetric_as_rooted_tree() {
        let t = RootedTree::path(4);
        assert_eq!(t.automorphism_count(), BigUint::from(1u32));
        assert_eq!(t.depth(), 3);
    }

    #[test]
    fn odot_of_leaf_is_a_two_path() {
        let t = odot(&[RootedTree::leaf()]).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn odot_depth_law() {
        let a = RootedTree::path(5); // depth 4
        let b = RootedTree::path(3); // depth 2
        let t = odot(&[a, b]).unwrap();
        assert_eq!(t.depth(), 5);
        assert_eq!(t.branches().len(), 2);
    }

    #[test]
    fn subtree_extraction() {
        // root 0 with chain 0-1-2 and leaf 3
        let t = RootedTree::new(vec![0, 0, 1, 0], 0).unwrap();
        let (s, map) = t.subtree(1);
        assert_eq!(s.order(), 2);
        assert_eq!(map, vec![1, 2]);
        assert_eq!(s.depth(), 1);
    }

    #[test]
    fn unrooted_code_distinguishes_k3_from_p3() {
        assert!(tree_canonical_code(&Graph::cycle(3)).is_err());
        let a = tree_canonical_code(&Graph::path(3)).unwrap();
        let b = tree_canonical_code(&Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
