//! Diverging rooted trees: recognition, exhaustive catalogs by depth, and
//! the deterministic generators for prescribed depth/order and radius/order.

use crate::error::{Error, Result};
use crate::graph::{odot, Graph, RootedTree};

/// Every vertex has pairwise non-isomorphic branches. Equivalent to having
/// no non-trivial automorphism.
pub fn is_diverging(t: &RootedTree) -> bool {
    fn codes(t: &RootedTree, children: &[Vec<usize>], v: usize, ok: &mut bool) -> Vec<u8> {
        let mut child_codes: Vec<Vec<u8>> = children[v]
            .iter()
            .map(|&c| codes(t, children, c, ok))
            .collect();
        child_codes.sort();
        for w in child_codes.windows(2) {
            if w[0] == w[1] {
                *ok = false;
            }
        }
        let mut out = vec![b'('];
        for c in child_codes {
            out.extend(c);
        }
        out.push(b')');
        out
    }
    let children = t.children();
    let mut ok = true;
    codes(t, &children, t.root(), &mut ok);
    ok
}

/// A tree is diverging if it is diverging when rooted at a central vertex
/// (for odd diameters the two centers agree).
pub fn is_diverging_tree(g: &Graph) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::Precondition("not a tree".into()));
    }
    let centers = g.metrics().centers;
    let c = centers[0];
    Ok(is_diverging(&RootedTree::from_graph(g, c)?))
}

/// All diverging rooted trees of depth at most a bound, grouped by exact
/// depth.
#[derive(Debug)]
pub struct DivergingCatalog {
    pub depth_bound: usize,
    /// `levels[d]` lists the diverging rooted trees of depth exactly `d`,
    /// sorted by canonical code.
    pub levels: Vec<Vec<RootedTree>>,
}

impl DivergingCatalog {
    /// `m_d`: trees of depth exactly `d`.
    pub fn count_at(&self, d: usize) -> usize {
        self.levels[d].len()
    }

    /// `M_i`: trees of depth at most `i`.
    pub fn count_up_to(&self, i: usize) -> usize {
        self.levels[..=i].iter().map(Vec::len).sum()
    }

    /// `N_i`: maximum order among trees of depth exactly `i`.
    pub fn max_order(&self, i: usize) -> usize {
        self.levels[i].iter().map(RootedTree::order).max().unwrap()
    }

    pub fn all(&self) -> impl Iterator<Item = &RootedTree> {
        self.levels.iter().flatten()
    }
}

/// Enumerate every diverging rooted tree of depth at most `i`. A tree of
/// depth `d + 1` is exactly a set of pairwise distinct diverging trees of
/// depth at most `d` joined under a fresh root, at least one of depth `d`.
pub fn enumerate_diverging(i: usize, cap: usize) -> Result<DivergingCatalog> {
    if i > cap || i > 4 {
        return Err(Error::CapExceeded(format!(
            "diverging catalogs materialize up to depth 4 (cap {cap}), got {i}"
        )));
    }
    let mut levels: Vec<Vec<RootedTree>> = vec![vec![RootedTree::leaf()]];
    for depth in 1..=i {
        let prev: Vec<&RootedTree> = levels.iter().flatten().collect();
        let deepest_start = prev.len() - levels[depth - 1].len();
        let mut out = Vec::new();
        for mask in 1u32..1 << prev.len() {
            // require at least one branch of the deepest previous level
            if mask >> deepest_start == 0 {
                continue;
            }
            let branches: Vec<RootedTree> = (0..prev.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| prev[b].clone())
                .collect();
            out.push(odot(&branches)?);
        }
        out.sort_by_key(|t| t.canonical_code());
        levels.push(out);
    }
    Ok(DivergingCatalog {
        depth_bound: i,
        levels,
    })
}

/// Maximum order of a diverging rooted tree of depth `i`: the tree whose
/// branches are every diverging tree of depth less than `i`.
pub fn max_diverging_order(i: usize) -> Result<usize> {
    if i == 0 {
        return Ok(1);
    }
    let catalog = enumerate_diverging(i - 1, 4)?;
    Ok(1 + catalog.all().map(RootedTree::order).sum::<usize>())
}

/// Deterministic generator: a diverging rooted tree of depth exactly `i` and
/// order exactly `n`, shrunk step by step from the maximal tree. Each step
/// removes one vertex from a minimum-depth, minimum-order branch, so the
/// tree stays diverging of the same depth.
pub fn gen_diverging_rooted(i: usize, n: usize) -> Result<RootedTree> {
    let max = max_diverging_order(i)?;
    if n < i + 1 || n > max {
        return Err(Error::OutOfRange(format!(
            "depth-{i} diverging rooted trees have orders {}..={max}, got {n}",
            i + 1
        )));
    }
    let mut node = if i == 0 {
        Node { children: vec![] }
    } else {
        let catalog = enumerate_diverging(i - 1, 4)?;
        let mut branches: Vec<Node> = catalog.all().map(node_of).collect();
        branches.sort();
        Node { children: branches }
    };
    while node.order() > n {
        shrink(&mut node);
    }
    let t = node.to_rooted();
    debug_assert!(is_diverging(&t));
    debug_assert_eq!(t.depth(), i);
    Ok(t)
}

/// Internal recursive representation, children kept sorted by code.
#[derive(Clone, PartialEq, Eq)]
struct Node {
    children: Vec<Node>,
}

impl Node {
    fn order(&self) -> usize {
        1 + self.children.iter().map(Node::order).sum::<usize>()
    }

    fn depth(&self) -> usize {
        self.children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    fn is_path(&self) -> bool {
        match self.children.len() {
            0 => true,
            1 => self.children[0].is_path(),
            _ => false,
        }
    }

    fn code(&self) -> Vec<u8> {
        let mut child_codes: Vec<Vec<u8>> = self.children.iter().map(Node::code).collect();
        child_codes.sort();
        let mut out = vec![b'('];
        for c in child_codes {
            out.extend(c);
        }
        out.push(b')');
        out
    }

    fn to_rooted(&self) -> RootedTree {
        fn write(n: &Node, parent: usize, out: &mut Vec<usize>) {
            let me = out.len();
            out.push(parent);
            for c in &n.children {
                write(c, me, out);
            }
        }
        let mut parents = Vec::new();
        write(self, 0, &mut parents);
        RootedTree::new(parents, 0).expect("well-formed")
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code().cmp(&other.code())
    }
}

fn node_of(t: &RootedTree) -> Node {
    fn build(t: &RootedTree, children: &[Vec<usize>], v: usize) -> Node {
        let mut ch: Vec<Node> = children[v].iter().map(|&c| build(t, children, c)).collect();
        ch.sort();
        Node { children: ch }
    }
    let children = t.children();
    build(t, &children, t.root())
}

/// Remove one vertex: recurse into the minimum-depth, minimum-order branch
/// (ties by code); a path branch loses its leaf.
fn shrink(node: &mut Node) {
    debug_assert!(!node.children.is_empty(), "cannot shrink a single vertex");
    let idx = (0..node.children.len())
        .min_by_key(|&b| {
            let c = &node.children[b];
            (c.depth(), c.order(), c.code())
        })
        .unwrap();
    let branch = &mut node.children[idx];
    if branch.is_path() {
        if branch.children.is_empty() {
            node.children.remove(idx);
        } else {
            // drop the leaf at the end of the path
            let mut cur = branch;
            while !cur.children[0].children.is_empty() {
                cur = &mut cur.children[0];
            }
            cur.children.clear();
        }
    } else {
        shrink(branch);
    }
    node.children.sort();
}

/// A diverging (unrooted) tree of order `n` and radius `i + 1`: two deep
/// branches of orders about `n/2` under a root, plus a pendant vertex when
/// `n` is odd.
pub fn gen_diverging_tree(n: usize, i: usize) -> Result<Graph> {
    if i < 2 {
        return Err(Error::OutOfRange("radius parameter needs i >= 2".into()));
    }
    let max = 2 * max_diverging_order(i)?;
    if n < 2 * i + 2 || n > max {
        return Err(Error::OutOfRange(format!(
            "radius-{} diverging trees have orders {}..={max}, got {n}",
            i + 1,
            2 * i + 2
        )));
    }
    let m = n / 2;
    let mut branches = Vec::new();
    if n % 2 == 0 {
        if n == 2 * i + 2 {
            branches.push(gen_diverging_rooted(i, i + 1)?);
            branches.push(gen_diverging_rooted(i - 1, i)?);
        } else {
            branches.push(gen_diverging_rooted(i, m)?);
            branches.push(gen_diverging_rooted(i, m - 1)?);
        }
    } else {
        if n == 2 * i + 3 {
            branches.push(gen_diverging_rooted(i, i + 1)?);
            branches.push(gen_diverging_rooted(i - 1, i)?);
        } else {
            branches.push(gen_diverging_rooted(i, m)?);
            branches.push(gen_diverging_rooted(i, m - 1)?);
        }
        branches.push(RootedTree::leaf());
    }
    let rooted = odot(&branches)?;
    let g = rooted.to_graph();
    debug_assert!(is_diverging_tree(&g)?);
    debug_assert_eq!(g.order(), n);
    debug_assert_eq!(
        g.metrics().radius,
        crate::graph::Distance::Finite(i as u32 + 1)
    );
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Distance;
    use num_bigint::BigUint;

    #[test]
    fn singleton_and_cherry() {
        assert!(is_diverging(&RootedTree::leaf()));
        // root with two leaf children: isomorphic branches
        let cherry = RootedTree::new(vec![0, 0, 0], 0).unwrap();
        assert!(!is_diverging(&cherry));
    }

    #[test]
    fn catalog_counts_match_towers() {
        let catalog = enumerate_diverging(3, 4).unwrap();
        assert_eq!(catalog.count_up_to(0), 1);
        assert_eq!(catalog.count_up_to(1), 2);
        assert_eq!(catalog.count_up_to(2), 4);
        assert_eq!(catalog.count_up_to(3), 16);
        assert_eq!(catalog.max_order(3), 11);
        for t in catalog.all() {
            assert!(is_diverging(t));
            assert_eq!(t.automorphism_count(), BigUint::from(1u32));
        }
    }

    #[test]
    fn generator_covers_the_full_range() {
        for n in 4..=11 {
            let t = gen_diverging_rooted(3, n).unwrap();
            assert_eq!(t.order(), n);
            assert_eq!(t.depth(), 3);
            assert!(is_diverging(&t));
        }
        assert!(gen_diverging_rooted(3, 3).is_err());
        assert!(gen_diverging_rooted(3, 12).is_err());
        // (i, i+1) is the path
        let p = gen_diverging_rooted(3, 4).unwrap();
        assert_eq!(p.canonical_code(), RootedTree::path(4).canonical_code());
    }

    #[test]
    fn unrooted_generator_ranges() {
        // i = 2: orders 6..=8
        for n in 6..=8 {
            let g = gen_diverging_tree(n, 2).unwrap();
            assert_eq!(g.order(), n);
            assert_eq!(g.metrics().radius, Distance::Finite(3));
            assert!(is_diverging_tree(&g).unwrap());
        }
        assert!(gen_diverging_tree(5, 2).is_err());
        assert!(gen_diverging_tree(9, 2).is_err());
        // i = 3: odd order adds the pendant branch
        let g = gen_diverging_tree(9, 3).unwrap();
        assert_eq!(g.metrics().radius, Distance::Finite(4));
        assert!(is_diverging_tree(&g).unwrap());
    }
}
