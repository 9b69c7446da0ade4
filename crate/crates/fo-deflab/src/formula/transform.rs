//! Negation normal form, bound-variable renaming, prenex normal form.
//!
//! Prenexization merges the quantifier prefixes of sibling subformulas block
//! by block, so a conjunction of formulas whose prefixes fit a Σ_m shape
//! stays Σ_m, and a formula with alternation number m and ∃-leading maximal
//! sequences lands in Σ_{m+1} (dually Π_{m+1}); when both targets are
//! reachable the ∃-leading shape is preferred.

use super::{Formula, Quant, Var};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Negation normal form: `¬` only in front of atoms. Preserves truth on
/// every graph as well as quantifier rank and alternation number.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    match (f, positive) {
        (Formula::Adj(..) | Formula::Eq(..), true) => f.clone(),
        (Formula::Adj(..) | Formula::Eq(..), false) => Formula::not(f.clone()),
        (Formula::Not(g), _) => nnf(g, !positive),
        (Formula::And(gs), true) => Formula::And(gs.iter().map(|g| nnf(g, true)).collect()),
        (Formula::And(gs), false) => Formula::Or(gs.iter().map(|g| nnf(g, false)).collect()),
        (Formula::Or(gs), true) => Formula::Or(gs.iter().map(|g| nnf(g, true)).collect()),
        (Formula::Or(gs), false) => Formula::And(gs.iter().map(|g| nnf(g, false)).collect()),
        (Formula::Exists(v, g), true) => Formula::exists(*v, nnf(g, true)),
        (Formula::Exists(v, g), false) => Formula::forall(*v, nnf(g, false)),
        (Formula::Forall(v, g), true) => Formula::forall(*v, nnf(g, true)),
        (Formula::Forall(v, g), false) => Formula::exists(*v, nnf(g, false)),
    }
}

/// Rename bound variables apart. Fresh indices are the lowest indices not
/// used by free variables, assigned in depth-first order.
pub fn rename_apart(f: &Formula) -> Formula {
    let free: Vec<u32> = f.free_vars().iter().map(|v| v.0).collect();
    let mut next = 0u32;
    let mut alloc = move || {
        while free.contains(&next) {
            next += 1;
        }
        let v = Var(next);
        next += 1;
        v
    };
    let mut map: HashMap<Var, Vec<Var>> = HashMap::new();
    rename_rec(f, &mut alloc, &mut map)
}

fn rename_rec(
    f: &Formula,
    alloc: &mut impl FnMut() -> Var,
    map: &mut HashMap<Var, Vec<Var>>,
) -> Formula {
    let lookup = |map: &HashMap<Var, Vec<Var>>, v: Var| -> Var {
        map.get(&v).and_then(|s| s.last().copied()).unwrap_or(v)
    };
    match f {
        Formula::Adj(u, v) => Formula::Adj(lookup(map, *u), lookup(map, *v)),
        Formula::Eq(u, v) => Formula::Eq(lookup(map, *u), lookup(map, *v)),
        Formula::Not(g) => Formula::not(rename_rec(g, alloc, map)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rename_rec(g, alloc, map)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rename_rec(g, alloc, map)).collect()),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let fresh = alloc();
            map.entry(*v).or_default().push(fresh);
            let body = rename_rec(g, alloc, map);
            map.get_mut(v).unwrap().pop();
            match f {
                Formula::Exists(..) => Formula::exists(fresh, body),
                _ => Formula::forall(fresh, body),
            }
        }
    }
}

type Block = (Quant, Vec<Var>);

/// Prenex normal form of a closed formula.
pub fn to_prenex(f: &Formula) -> Result<Formula> {
    if !f.is_closed() {
        return Err(Error::OpenFormula(
            f.free_vars().iter().map(|v| v.to_string()).collect(),
        ));
    }
    let g = rename_apart(&to_nnf(f));
    let (blocks, matrix) = prenex_rec(&g);
    let mut out = matrix;
    for (q, vars) in blocks.into_iter().rev() {
        for v in vars.into_iter().rev() {
            out = Formula::quantify(q, v, out);
        }
    }
    Ok(out)
}

fn prenex_rec(f: &Formula) -> (Vec<Block>, Formula) {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => (Vec::new(), f.clone()),
        Formula::Not(g) => {
            debug_assert!(g.is_atom(), "input must be in negation normal form");
            (Vec::new(), f.clone())
        }
        Formula::Exists(v, g) => prepend(Quant::Exists, *v, prenex_rec(g)),
        Formula::Forall(v, g) => prepend(Quant::Forall, *v, prenex_rec(g)),
        Formula::And(gs) | Formula::Or(gs) => {
            let children: Vec<(Vec<Block>, Formula)> = gs.iter().map(prenex_rec).collect();
            merge(children, matches!(f, Formula::And(_)))
        }
    }
}

fn prepend(q: Quant, v: Var, (mut blocks, matrix): (Vec<Block>, Formula)) -> (Vec<Block>, Formula) {
    if let Some((q0, vars)) = blocks.first_mut() {
        if *q0 == q {
            vars.insert(0, v);
            return (blocks, matrix);
        }
    }
    blocks.insert(0, (q, vec![v]));
    (blocks, matrix)
}

/// Interleave sibling prefixes into the fewest alternating blocks. Sibling
/// subformulas have disjoint bound variables (renamed apart), so pulling
/// their quantifiers into shared blocks preserves equivalence.
fn merge(children: Vec<(Vec<Block>, Formula)>, is_and: bool) -> (Vec<Block>, Formula) {
    let width = |q: Quant| -> usize {
        children
            .iter()
            .filter(|(b, _)| !b.is_empty())
            .map(|(b, _)| b.len() + usize::from(b[0].0 != q))
            .max()
            .unwrap_or(0)
    };
    let we = width(Quant::Exists);
    let wa = width(Quant::Forall);
    let (start, count) = if we <= wa {
        (Quant::Exists, we)
    } else {
        (Quant::Forall, wa)
    };
    let mut blocks: Vec<Block> = (0..count)
        .map(|i| {
            let q = if i % 2 == 0 { start } else { start.dual() };
            (q, Vec::new())
        })
        .collect();
    let mut matrices = Vec::with_capacity(children.len());
    for (child_blocks, matrix) in children {
        let offset = match child_blocks.first() {
            Some((q0, _)) if *q0 != start => 1,
            _ => 0,
        };
        for (j, (q, vars)) in child_blocks.into_iter().enumerate() {
            debug_assert_eq!(blocks[j + offset].0, q);
            blocks[j + offset].1.extend(vars);
        }
        matrices.push(matrix);
    }
    let matrix = if is_and {
        Formula::and(matrices)
    } else {
        Formula::or(matrices)
    };
    (blocks, matrix)
}

#[cfg(test)]
mod tests {
    use super::super::{
        alternation_number, classify, parse, quantifier_rank, PrefixClass,
    };
    use super::*;

    #[test]
    fn nnf_pushes_negations_to_atoms() {
        let f = parse("(not (and (exists x (adj x x)) (forall y (= y y))))").unwrap();
        let g = to_nnf(&f);
        assert_eq!(
            g,
            parse("(or (forall x (not (adj x x))) (exists y (not (= y y))))").unwrap()
        );
        assert_eq!(quantifier_rank(&f), quantifier_rank(&g));
        assert_eq!(alternation_number(&f), alternation_number(&g));
    }

    #[test]
    fn nnf_eliminates_double_negation() {
        let f = parse_open_atom();
        let g = Formula::not(Formula::not(f.clone()));
        assert_eq!(to_nnf(&g), f);
    }

    fn parse_open_atom() -> Formula {
        super::super::parse_open("(adj x y)").unwrap()
    }

    #[test]
    fn standard_pullout() {
        // ∃xA ∧ ∃yB → ∃x∃y(A∧B)
        let f = parse("(and (exists x (adj x x)) (exists y (= y y)))").unwrap();
        let p = to_prenex(&f).unwrap();
        assert_eq!(p, parse("(exists x0 (exists x1 (and (adj x0 x0) (= x1 x1))))").unwrap());
    }

    #[test]
    fn sigma2_conjunction_stays_sigma2() {
        let s2 = "(exists x (forall y (adj x y)))";
        let f = parse(&format!("(and {s2} {s2})")).unwrap();
        let p = to_prenex(&f).unwrap();
        assert!(classify(&p).contains(&PrefixClass::SigmaM(2)));
    }

    #[test]
    fn alternation_zero_disjunction_stays_sigma1() {
        let f = parse("(or (exists x (adj x x)) (exists y (= y y)))").unwrap();
        let p = to_prenex(&f).unwrap();
        assert!(classify(&p).contains(&PrefixClass::SigmaM(1)));
    }

    #[test]
    fn open_formula_is_rejected() {
        let f = super::super::parse_open("(exists x (adj x y))").unwrap();
        assert!(matches!(to_prenex(&f), Err(Error::OpenFormula(_))));
    }

    #[test]
    fn renaming_is_deterministic_and_apart() {
        let f = parse("(and (exists x (adj x x)) (exists x (not (adj x x))))").unwrap();
        let g = rename_apart(&f);
        assert_eq!(
            g,
            parse("(and (exists x0 (adj x0 x0)) (exists x1 (not (adj x1 x1))))").unwrap()
        );
    }
}
