//! Perfect disjunctive normal form for quantifier-free formulas.

use super::{Formula, Var};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum AtomKind {
    Eq,
    Adj,
}

type Atom = (AtomKind, Var, Var);

fn atom_of(f: &Formula) -> Option<Atom> {
    match f {
        Formula::Eq(u, v) => Some((AtomKind::Eq, *u.min(v), *u.max(v))),
        Formula::Adj(u, v) => Some((AtomKind::Adj, *u.min(v), *u.max(v))),
        _ => None,
    }
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<Atom>) {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => {
            out.insert(atom_of(f).unwrap());
        }
        Formula::Not(g) => collect_atoms(g, out),
        Formula::And(gs) | Formula::Or(gs) => {
            for g in gs {
                collect_atoms(g, out);
            }
        }
        _ => {}
    }
}

fn eval_under(f: &Formula, atoms: &[Atom], bits: u64) -> bool {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => {
            let a = atom_of(f).unwrap();
            let i = atoms.iter().position(|&b| b == a).unwrap();
            bits >> i & 1 == 1
        }
        Formula::Not(g) => !eval_under(g, atoms, bits),
        Formula::And(gs) => gs.iter().all(|g| eval_under(g, atoms, bits)),
        Formula::Or(gs) => gs.iter().any(|g| eval_under(g, atoms, bits)),
        _ => unreachable!("quantifier-free input"),
    }
}

fn atom_formula(a: Atom) -> Formula {
    match a.0 {
        AtomKind::Eq => Formula::eq(a.1, a.2),
        AtomKind::Adj => Formula::adj(a.1, a.2),
    }
}

/// Rewrite a quantifier-free formula as its perfect DNF over the occurring
/// atoms (atoms keyed up to argument order, both relations being symmetric).
/// A contradiction becomes the fixed false form `v = v ∧ ¬(v = v)` on the
/// lowest occurring variable.
pub fn qf_to_dnf(f: &Formula) -> Result<Formula> {
    if !f.is_quantifier_free() {
        return Err(Error::Precondition(
            "qf_to_dnf requires a quantifier-free formula".into(),
        ));
    }
    let mut set = BTreeSet::new();
    collect_atoms(f, &mut set);
    let atoms: Vec<Atom> = set.into_iter().collect();
    assert!(atoms.len() <= 32, "too many atoms for perfect DNF");
    let mut rows = Vec::new();
    for bits in 0u64..1 << atoms.len() {
        if eval_under(f, &atoms, bits) {
            let lits = atoms
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    if bits >> i & 1 == 1 {
                        atom_formula(a)
                    } else {
                        Formula::not(atom_formula(a))
                    }
                })
                .collect::<Vec<_>>();
            rows.push(Formula::and(lits));
        }
    }
    if rows.is_empty() {
        let v = atoms.first().map(|a| a.1).unwrap_or(Var(0));
        return Ok(Formula::and(vec![
            Formula::eq(v, v),
            Formula::not(Formula::eq(v, v)),
        ]));
    }
    Ok(Formula::or(rows))
}

#[cfg(test)]
mod tests {
    use super::super::{parse_open, render};
    use super::*;

    #[test]
    fn distributes_conjunction() {
        // x=y ∧ (a ∨ b) with a = x~y, b = x~z
        let f = parse_open("(and (= x y) (or (adj x y) (adj x z)))").unwrap();
        let d = qf_to_dnf(&f).unwrap();
        // atoms sorted: (= x y)=(Eq,0,1), (adj x y)=(Adj,0,1), (adj x z)=(Adj,0,2)
        // satisfying rows: eq ∧ (adj_xy ∨ adj_xz)
        match &d {
            Formula::Or(rows) => assert_eq!(rows.len(), 3),
            other => panic!("expected DNF, got {other:?}"),
        }
    }

    #[test]
    fn contradiction_uses_fixed_false_form() {
        let f = parse_open("(and (adj x y) (not (adj y x)))").unwrap();
        let d = qf_to_dnf(&f).unwrap();
        assert_eq!(render(&d), "(and (= x0 x0) (not (= x0 x0)))");
    }

    #[test]
    fn tautology_over_one_atom() {
        let f = parse_open("(or (adj x y) (not (adj x y)))").unwrap();
        let d = qf_to_dnf(&f).unwrap();
        assert_eq!(render(&d), "(or (adj x0 x1) (not (adj x0 x1)))");
    }

    #[test]
    fn rejects_quantified_input() {
        let f = super::super::parse("(exists x (adj x x))").unwrap();
        assert!(qf_to_dnf(&f).is_err());
    }
}
