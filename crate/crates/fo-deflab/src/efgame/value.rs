//! Game values: the equivalence class of a graph with pebbled vertices under
//! the k-round Ehrenfeucht game, as a hash-consed recursive descriptor.
//!
//! The value of rank 0 is the atomic type of the pebbles (equality pattern
//! plus induced adjacency); the value of remaining rank r > 0 is the atomic
//! type together with the set of values obtained by pebbling each vertex at
//! remaining rank r − 1. Two graphs have equal rank-k values with no pebbles
//! iff Duplicator wins the k-round game on them.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{BTreeSet, HashMap};

/// Handle of a graph registered in a [`ValueCtx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphId(usize);

/// Interned value id; equal ids mean equal values within one context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueId(pub u32);

/// Equality pattern and induced adjacency of a pebble tuple.
///
/// `first[i]` is the least `j ≤ i` with `u_j = u_i`; `adj` packs the
/// adjacency bits of the pairs `i < j` in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicType {
    pub first: Vec<u8>,
    pub adj: u128,
}

pub fn atomic_type(g: &Graph, pebbles: &[usize]) -> AtomicType {
    let s = pebbles.len();
    assert!(s * (s.saturating_sub(1)) / 2 <= 128, "tuple too long");
    let mut first = vec![0u8; s];
    for i in 0..s {
        first[i] = (0..=i).find(|&j| pebbles[j] == pebbles[i]).unwrap() as u8;
    }
    let mut adj = 0u128;
    let mut bit = 0;
    for i in 0..s {
        for j in i + 1..s {
            if g.adjacent(pebbles[i], pebbles[j]) {
                adj |= 1 << bit;
            }
            bit += 1;
        }
    }
    AtomicType { first, adj }
}

/// Interned value payload.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValueData {
    /// Remaining rank 0: the atomic type alone.
    Leaf(AtomicType),
    /// Remaining rank > 0: atomic type plus the set of one-extension values.
    Node(AtomicType, BTreeSet<ValueId>),
}

/// Hash-consing table and memo for game values. One context per worker;
/// values from different contexts are not comparable.
#[derive(Debug, Default)]
pub struct ValueCtx {
    graphs: Vec<Graph>,
    intern: HashMap<ValueData, ValueId>,
    data: Vec<ValueData>,
    memo: HashMap<(usize, Vec<u8>, u32), ValueId>,
    pub max_k: u32,
    pub max_order: usize,
}

impl ValueCtx {
    pub fn new() -> ValueCtx {
        ValueCtx {
            max_k: crate::Config::default().max_k,
            max_order: crate::Config::default().max_order,
            ..ValueCtx::default()
        }
    }

    pub fn with_caps(max_k: u32, max_order: usize) -> ValueCtx {
        ValueCtx {
            max_k,
            max_order,
            ..ValueCtx::default()
        }
    }

    pub fn register(&mut self, g: &Graph) -> GraphId {
        self.graphs.push(g.clone());
        GraphId(self.graphs.len() - 1)
    }

    pub fn graph(&self, id: GraphId) -> &Graph {
        &self.graphs[id.0]
    }

    pub fn data(&self, id: ValueId) -> &ValueData {
        &self.data[id.0 as usize]
    }

    fn intern(&mut self, d: ValueData) -> ValueId {
        if let Some(&id) = self.intern.get(&d) {
            return id;
        }
        let id = ValueId(self.data.len() as u32);
        self.intern.insert(d.clone(), id);
        self.data.push(d);
        id
    }

    /// The k-game value of `g` with `pebbles` placed.
    pub fn value(&mut self, gid: GraphId, pebbles: &[usize], k: u32) -> Result<ValueId> {
        if pebbles.len() as u32 > k {
            return Err(Error::Precondition(format!(
                "{} pebbles exceed rank {k}",
                pebbles.len()
            )));
        }
        if k > self.max_k {
            return Err(Error::CapExceeded(format!(
                "rank {k} exceeds cap {}",
                self.max_k
            )));
        }
        if self.graphs[gid.0].order() > self.max_order {
            return Err(Error::CapExceeded(format!(
                "order {} exceeds cap {}",
                self.graphs[gid.0].order(),
                self.max_order
            )));
        }
        Ok(self.value_unchecked(gid, pebbles, k))
    }

    fn value_unchecked(&mut self, gid: GraphId, pebbles: &[usize], k: u32) -> ValueId {
        let key = (
            gid.0,
            pebbles.iter().map(|&p| p as u8).collect::<Vec<u8>>(),
            k,
        );
        if let Some(&id) = self.memo.get(&key) {
            return id;
        }
        let atomic = atomic_type(&self.graphs[gid.0], pebbles);
        let data = if pebbles.len() as u32 == k {
            ValueData::Leaf(atomic)
        } else {
            let n = self.graphs[gid.0].order();
            let mut children = BTreeSet::new();
            let mut extended = pebbles.to_vec();
            extended.push(0);
            for u in 0..n {
                *extended.last_mut().unwrap() = u;
                children.insert(self.value_unchecked(gid, &extended, k));
            }
            ValueData::Node(atomic, children)
        };
        let id = self.intern(data);
        self.memo.insert(key, id);
        id
    }

    /// All distinct values realized with `s` pebbles at rank `k` over the
    /// given graphs.
    pub fn realized_values(&mut self, gids: &[GraphId], s: usize, k: u32) -> Result<BTreeSet<ValueId>> {
        let mut out = BTreeSet::new();
        for &gid in gids {
            let n = self.graphs[gid.0].order();
            let mut tuple = vec![0usize; s];
            collect_tuples(n, &mut tuple, 0, &mut |t: &[usize]| {
                out.insert(self.value(gid, t, k)?);
                Ok(())
            })?;
        }
        Ok(out)
    }
}

fn collect_tuples(
    n: usize,
    tuple: &mut Vec<usize>,
    at: usize,
    f: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if at == tuple.len() {
        return f(tuple);
    }
    for u in 0..n {
        tuple[at] = u;
        collect_tuples(n, tuple, at + 1, f)?;
    }
    Ok(())
}

/// Minimum k such that the two graphs have different k-game values.
/// Errors on isomorphic inputs; otherwise bounded by `max(|g|, |h|) + 1`.
pub fn distinguishing_rank(g: &Graph, h: &Graph, max_k: u32) -> Result<u32> {
    if crate::graph::isomorphic(g, h) {
        return Err(Error::IsomorphicInputs);
    }
    let mut ctx = ValueCtx::with_caps(max_k, g.order().max(h.order()));
    let gid = ctx.register(g);
    let hid = ctx.register(h);
    let bound = (g.order().max(h.order()) + 1) as u32;
    for k in 1..=bound.min(max_k) {
        if ctx.value(gid, &[], k)? != ctx.value(hid, &[], k)? {
            return Ok(k);
        }
    }
    Err(Error::CapExceeded(format!(
        "no distinguishing rank up to {}",
        bound.min(max_k)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_graphs_share_values() {
        let a = Graph::empty(1).unwrap();
        let b = Graph::empty(1).unwrap();
        let mut ctx = ValueCtx::new();
        let (ia, ib) = (ctx.register(&a), ctx.register(&b));
        assert_eq!(ctx.value(ia, &[], 1).unwrap(), ctx.value(ib, &[], 1).unwrap());
    }

    #[test]
    fn k1_vs_k2_differ_at_rank_two() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut ctx = ValueCtx::new();
        let (a, b) = (ctx.register(&k1), ctx.register(&k2));
        assert_eq!(ctx.value(a, &[], 1).unwrap(), ctx.value(b, &[], 1).unwrap());
        assert_ne!(ctx.value(a, &[], 2).unwrap(), ctx.value(b, &[], 2).unwrap());
        assert_eq!(distinguishing_rank(&k1, &k2, 7).unwrap(), 2);
    }

    #[test]
    fn three_atomic_types_of_pebble_pairs() {
        // equal; distinct adjacent; distinct non-adjacent — within the 4^1 bound
        let mut ctx = ValueCtx::new();
        let mut types = BTreeSet::new();
        for g in crate::graph::enumerate_graphs(3, 9).unwrap() {
            let gid = ctx.register(&g);
            for u in 0..3 {
                for v in 0..3 {
                    types.insert(ctx.value(gid, &[u, v], 2).unwrap());
                }
            }
        }
        assert_eq!(types.len(), 3);
    }

    #[test]
    fn isomorphic_inputs_are_rejected() {
        let a = Graph::path(3);
        let b = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(matches!(
            distinguishing_rank(&a, &b, 7),
            Err(Error::IsomorphicInputs)
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::path(3);
        let mut ctx = ValueCtx::with_caps(2, 10);
        let gid = ctx.register(&g);
        assert!(ctx.value(gid, &[], 3).is_err());
    }
}
