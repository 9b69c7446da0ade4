//! The wasteful defining sentence that names every vertex.

use super::{Formula, Var};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `∀x(x≁x ∧ ∀y(x∼y → y∼x))` — true exactly on the structures that are
/// graphs. Conjoined to every defining sentence the library emits.
pub fn graph_axioms() -> Formula {
    let x = Var(0);
    let y = Var(1);
    Formula::forall(
        x,
        Formula::and(vec![
            Formula::not(Formula::adj(x, x)),
            Formula::forall(y, Formula::implies(Formula::adj(x, y), Formula::adj(y, x))),
        ]),
    )
}

/// The sentence that defines `g` by listing its vertices and adjacencies:
/// `∃x_1..∃x_n ∀x_{n+1}` over pairwise distinctness, a covering disjunction
/// and the full (non-)adjacency table, conjoined with the graph axioms.
/// Quantifier rank `|g| + 1`, alternation number 1.
pub fn naive_definition(g: &Graph) -> Result<Formula> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Precondition(
            "naive_definition requires a non-empty graph".into(),
        ));
    }
    let var = |i: usize| Var(i as u32);
    let last = var(n);
    let mut parts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            parts.push(Formula::not(Formula::eq(var(i), var(j))));
        }
    }
    parts.push(Formula::or(
        (0..n).map(|i| Formula::eq(last, var(i))).collect(),
    ));
    for i in 0..n {
        for j in i + 1..n {
            if g.adjacent(i, j) {
                parts.push(Formula::adj(var(i), var(j)));
            } else {
                parts.push(Formula::not(Formula::adj(var(i), var(j))));
            }
        }
    }
    let mut body = Formula::forall(last, Formula::and(parts));
    for i in (0..n).rev() {
        body = Formula::exists(var(i), body);
    }
    Ok(Formula::and(vec![graph_axioms(), body]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{
        alternation_number, classify, length, quantifier_rank, PrefixClass,
    };
    use crate::graph::Graph;

    #[test]
    fn rank_is_order_plus_one() {
        let k1 = Graph::from_edges(1, &[]).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(quantifier_rank(&naive_definition(&k1).unwrap()), 2);
        assert_eq!(quantifier_rank(&naive_definition(&k2).unwrap()), 3);
    }

    #[test]
    fn alternation_is_one_and_class_is_exists() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f = naive_definition(&k2).unwrap();
        assert_eq!(alternation_number(&f), 1);
        assert!(classify(&f).contains(&PrefixClass::AltSetExists(1)));
    }

    #[test]
    fn empty_graph_is_rejected() {
        let g = Graph::from_edges(0, &[]).unwrap();
        assert!(naive_definition(&g).is_err());
    }

    #[test]
    fn single_vertex_length_regression() {
        // Direct symbol count on the emitted AST, frozen.
        let k1 = Graph::from_edges(1, &[]).unwrap();
        let f = naive_definition(&k1).unwrap();
        assert_eq!(length(&f), 25);
    }
}
