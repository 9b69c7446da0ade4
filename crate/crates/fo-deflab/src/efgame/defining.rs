//! Synthesis of formulas defining game values, and from them sentences that
//! define a graph among all graphs up to a stated order bound.
//!
//! The formula for a value with `s` pebbles at rank `k` quantifies its
//! negative conjuncts over a *realized* value universe: the values actually
//! attained by graphs up to the order bound. The resulting sentence is
//! guaranteed to define the graph among graphs of order at most that bound,
//! and the certificate records the bound.

use super::value::{GraphId, ValueCtx, ValueData, ValueId};
use crate::error::{Error, Result};
use crate::formula::{graph_axioms, Formula, Var};
use crate::graph::{enumerate_graphs, isomorphic, Graph};
use std::collections::{BTreeSet, HashMap};

/// Realized values with `s + 1` pebbles, per level `s = 0 .. k`.
#[derive(Debug, Clone)]
pub struct ValueUniverse {
    pub k: u32,
    pub order_bound: usize,
    /// `levels[s]` holds the realized values with `s` pebbles.
    pub levels: Vec<BTreeSet<ValueId>>,
}

impl ValueUniverse {
    /// Realized values over every isomorphism class of order `1..=bound`
    /// plus the listed extra graphs.
    pub fn realized(
        ctx: &mut ValueCtx,
        k: u32,
        order_bound: usize,
        extra: &[GraphId],
        enumeration_cap: usize,
    ) -> Result<ValueUniverse> {
        let mut gids: Vec<GraphId> = extra.to_vec();
        for n in 1..=order_bound {
            for g in enumerate_graphs(n, enumeration_cap)? {
                gids.push(ctx.register(&g));
            }
        }
        let mut levels = Vec::new();
        for s in 0..=k as usize {
            levels.push(ctx.realized_values(&gids, s, k)?);
        }
        Ok(ValueUniverse {
            k,
            order_bound,
            levels,
        })
    }
}

/// Open formula with `pebbles.len()` free variables defining the value of
/// `(g, pebbles)` at rank `k` relative to the realized universe: true on
/// exactly the pebbled graphs within the universe that share the value.
/// Quantifier rank is `k − pebbles.len()`.
pub fn value_formula(
    ctx: &mut ValueCtx,
    gid: GraphId,
    pebbles: &[usize],
    k: u32,
    universe: &ValueUniverse,
) -> Result<Formula> {
    if k == 0 {
        return Err(Error::Precondition("value formulas need rank k >= 1".into()));
    }
    let alpha = ctx.value(gid, pebbles, k)?;
    let mut memo = HashMap::new();
    value_formula_for_value(ctx, alpha, pebbles.len(), k, universe, &mut memo)
}

/// As [`value_formula`], but from an already-computed value id at level `s`.
pub fn value_formula_for_value(
    ctx: &ValueCtx,
    alpha: ValueId,
    s: usize,
    k: u32,
    universe: &ValueUniverse,
    memo: &mut HashMap<ValueId, Formula>,
) -> Result<Formula> {
    if let Some(f) = memo.get(&alpha) {
        return Ok(f.clone());
    }
    let formula = match ctx.data(alpha).clone() {
        ValueData::Leaf(atomic) => {
            debug_assert_eq!(s as u32, k);
            let mut literals = Vec::new();
            let mut bit = 0;
            for i in 0..s {
                for j in i + 1..s {
                    let eq = Formula::eq(Var(i as u32), Var(j as u32));
                    literals.push(if atomic.first[i] == atomic.first[j] {
                        eq
                    } else {
                        Formula::not(eq)
                    });
                    let adj = Formula::adj(Var(i as u32), Var(j as u32));
                    literals.push(if atomic.adj >> bit & 1 == 1 {
                        adj
                    } else {
                        Formula::not(adj)
                    });
                    bit += 1;
                }
            }
            if literals.is_empty() {
                Formula::eq(Var(0), Var(0))
            } else {
                Formula::and(literals)
            }
        }
        ValueData::Node(_, children) => {
            let x = Var(s as u32);
            let mut conjuncts = Vec::new();
            for beta in universe.levels[s + 1].iter() {
                let sub = value_formula_for_value(ctx, *beta, s + 1, k, universe, memo)?;
                let quantified = Formula::exists(x, sub);
                conjuncts.push(if children.contains(beta) {
                    quantified
                } else {
                    Formula::not(quantified)
                });
            }
            // every child of a realized value is realized, so the positive
            // conjuncts cover all of them
            debug_assert!(children.iter().all(|b| universe.levels[s + 1].contains(b)));
            Formula::and(conjuncts)
        }
    };
    memo.insert(alpha, formula.clone());
    Ok(formula)
}

/// What a defining sentence was checked against.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DefiningCertificate {
    pub rank: u32,
    pub order_bound: usize,
    pub classes_checked: usize,
}

/// Least k such that no non-isomorphic graph of order at most `order_bound`
/// shares the k-game value of `g`.
pub fn bounded_definability_rank(g: &Graph, order_bound: usize, max_k: u32) -> Result<u32> {
    let (k, _, _) = search_rank(g, order_bound, max_k)?;
    Ok(k)
}

fn search_rank(
    g: &Graph,
    order_bound: usize,
    max_k: u32,
) -> Result<(u32, ValueCtx, Vec<GraphId>)> {
    if g.order() > order_bound {
        return Err(Error::Precondition(format!(
            "graph order {} exceeds the order bound {order_bound}",
            g.order()
        )));
    }
    let mut ctx = ValueCtx::with_caps(max_k.max(order_bound as u32 + 1), order_bound.max(g.order()));
    let gid = ctx.register(g);
    let mut others = Vec::new();
    for n in 1..=order_bound {
        for h in enumerate_graphs(n, order_bound.max(9))? {
            if !isomorphic(g, &h) {
                others.push(ctx.register(&h));
            }
        }
    }
    let bound = (order_bound + 1) as u32;
    for k in 1..=bound {
        let vg = ctx.value(gid, &[], k)?;
        let mut unique = true;
        for &hid in &others {
            if ctx.value(hid, &[], k)? == vg {
                unique = false;
                break;
            }
        }
        if unique {
            return Ok((k, ctx, others));
        }
    }
    Err(Error::CapExceeded(format!(
        "no defining rank up to {bound}"
    )))
}

/// A sentence defining `g` among all graphs of order at most `order_bound`:
/// the graph axioms conjoined with the rank-k value formula of `g`, for the
/// least k that separates `g` from every non-isomorphic graph within the
/// bound.
pub fn defining_formula(
    g: &Graph,
    order_bound: usize,
    max_k: u32,
) -> Result<(Formula, u32, DefiningCertificate)> {
    let (k, mut ctx, others) = search_rank(g, order_bound, max_k)?;
    let gid = ctx.register(g);
    let mut gids = others.clone();
    gids.push(gid);
    let mut levels = Vec::new();
    for s in 0..=k as usize {
        levels.push(ctx.realized_values(&gids, s, k)?);
    }
    let universe = ValueUniverse {
        k,
        order_bound,
        levels,
    };
    let body = value_formula(&mut ctx, gid, &[], k, &universe)?;
    let formula = Formula::and(vec![graph_axioms(), body]);
    let certificate = DefiningCertificate {
        rank: k,
        order_bound,
        classes_checked: others.len() + 1,
    };
    Ok((formula, k, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::quantifier_rank;
    use crate::semantics::holds;

    #[test]
    fn bounded_rank_of_k1_and_k2() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(bounded_definability_rank(&k1, 5, 7).unwrap(), 2);
        assert_eq!(bounded_definability_rank(&k2, 5, 7).unwrap(), 3);
    }

    #[test]
    fn p3_is_definable_at_rank_at_most_three() {
        let p3 = Graph::path(3);
        let k = bounded_definability_rank(&p3, 5, 7).unwrap();
        assert!(k <= 3, "non-complete non-empty graphs need at most n, got {k}");
    }

    #[test]
    fn value_formula_rank_contract() {
        let g = Graph::path(3);
        let mut ctx = ValueCtx::new();
        let gid = ctx.register(&g);
        let universe = ValueUniverse::realized(&mut ctx, 3, 3, &[], 9).unwrap();
        for pebbles in [vec![], vec![0], vec![0, 2]] {
            let f = value_formula(&mut ctx, gid, &pebbles, 3, &universe).unwrap();
            assert_eq!(quantifier_rank(&f), 3 - pebbles.len() as u32);
        }
    }

    #[test]
    fn k2_defining_sentence_separates_k2_from_2k1() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let e2 = Graph::empty(2).unwrap();
        let (f, k, cert) = defining_formula(&k2, 5, 7).unwrap();
        assert_eq!(k, 3);
        assert_eq!(cert.order_bound, 5);
        assert!(holds(&f, &k2).unwrap());
        assert!(!holds(&f, &e2).unwrap());
    }
}
