//! Tarski semantics of formulas on finite graphs.
//!
//! The evaluator is pure and deterministic. Three semantics-preserving
//! devices keep wide existential prefixes tractable:
//!
//! * miniscoping — quantifiers are pushed toward the subformulas that
//!   actually use their variable (exact on all domains, including empty);
//! * block scheduling — inside a quantifier block over a conjunction
//!   (dually, disjunction) each member is decided at the first depth where
//!   its variables are assigned, pruning the search;
//! * range narrowing — a quantifier whose body has the relativized shape
//!   `∃x(x∼t ∧ …)` or `∀x(x∼t → …)` with `t` already assigned ranges over
//!   the neighborhood of `t` only.

use crate::error::{Error, Result};
use crate::formula::{Formula, Var};
use crate::graph::Graph;
use std::collections::BTreeMap;

/// A partial map from variables to vertices.
pub type Assignment = BTreeMap<Var, usize>;

/// Evaluate `f` on `g` under `a`; every free variable must be assigned.
pub fn eval(f: &Formula, g: &Graph, a: &Assignment) -> Result<bool> {
    for v in f.free_vars() {
        match a.get(&v) {
            None => return Err(Error::UnassignedVariable(v.0)),
            Some(&x) if x >= g.order() => {
                return Err(Error::InvalidInput(format!(
                    "assignment maps {v} to vertex {x} outside the graph"
                )))
            }
            _ => {}
        }
    }
    let prepared = miniscope(f);
    let mut env = Env::from_assignment(a);
    Ok(eval_rec(&prepared, g, &mut env))
}

/// Evaluate a sentence on `g`.
pub fn holds(f: &Formula, g: &Graph) -> Result<bool> {
    eval(f, g, &Assignment::new())
}

/// Evaluate a formula with a leading existential block, instantiating the
/// named block variables with the given witnesses. The remaining block
/// variables stay quantified. Errors if a witness names a variable outside
/// the leading block.
pub fn eval_with_witnesses(
    f: &Formula,
    g: &Graph,
    prefix_witnesses: &Assignment,
) -> Result<bool> {
    let mut block = Vec::new();
    let mut cur = f;
    while let Formula::Exists(v, body) = cur {
        block.push(*v);
        cur = body;
    }
    for v in prefix_witnesses.keys() {
        if !block.contains(v) {
            return Err(Error::Precondition(format!(
                "witness variable {v} is not in the leading existential block"
            )));
        }
    }
    let mut rebuilt = cur.clone();
    for v in block.into_iter().rev() {
        if !prefix_witnesses.contains_key(&v) {
            rebuilt = Formula::exists(v, rebuilt);
        }
    }
    eval(&rebuilt, g, prefix_witnesses)
}

#[derive(Debug)]
struct Env {
    stack: Vec<(Var, usize)>,
}

impl Env {
    fn from_assignment(a: &Assignment) -> Env {
        Env {
            stack: a.iter().map(|(&v, &x)| (v, x)).collect(),
        }
    }

    fn get(&self, v: Var) -> Option<usize> {
        self.stack
            .iter()
            .rev()
            .find(|(w, _)| *w == v)
            .map(|&(_, x)| x)
    }

    fn push(&mut self, v: Var, x: usize) {
        self.stack.push((v, x));
    }

    fn pop(&mut self) {
        self.stack.pop();
    }
}

fn eval_rec(f: &Formula, g: &Graph, env: &mut Env) -> bool {
    match f {
        Formula::Adj(u, v) => {
            let (a, b) = (lookup(env, *u), lookup(env, *v));
            g.adjacent(a, b)
        }
        Formula::Eq(u, v) => lookup(env, *u) == lookup(env, *v),
        Formula::Not(q) => !eval_rec(q, g, env),
        Formula::And(qs) => qs.iter().all(|q| eval_rec(q, g, env)),
        Formula::Or(qs) => qs.iter().any(|q| eval_rec(q, g, env)),
        Formula::Exists(..) => eval_block(f, g, env, true),
        Formula::Forall(..) => eval_block(f, g, env, false),
    }
}

fn lookup(env: &Env, v: Var) -> usize {
    env.get(v).expect("free variable checked before evaluation")
}

/// Evaluate a maximal same-quantifier block. For an existential block over a
/// conjunction, members are checked at the first depth where their variables
/// are assigned; dually for a universal block over a disjunction.
fn eval_block(f: &Formula, g: &Graph, env: &mut Env, existential: bool) -> bool {
    let mut vars = Vec::new();
    let mut cur = f;
    loop {
        match (cur, existential) {
            (Formula::Exists(v, body), true) | (Formula::Forall(v, body), false) => {
                vars.push(*v);
                cur = body;
            }
            _ => break,
        }
    }
    let members: Vec<&Formula> = match (cur, existential) {
        (Formula::And(qs), true) => qs.iter().collect(),
        (Formula::Or(qs), false) => qs.iter().collect(),
        _ => vec![cur],
    };
    // members decided at the first depth where their block variables are set
    let depth_of = |m: &Formula| -> usize {
        let free = m.free_vars();
        vars.iter()
            .enumerate()
            .filter(|(_, v)| free.contains(v))
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0)
    };
    let mut schedule: Vec<Vec<&Formula>> = vec![Vec::new(); vars.len() + 1];
    for m in members {
        schedule[depth_of(m)].push(m);
    }
    // members independent of the block short-circuit the whole block
    for m in &schedule[0] {
        if eval_rec(m, g, env) != existential {
            return !existential;
        }
    }
    search(&vars, &schedule, 0, g, env, existential)
}

fn search(
    vars: &[Var],
    schedule: &[Vec<&Formula>],
    depth: usize,
    g: &Graph,
    env: &mut Env,
    existential: bool,
) -> bool {
    if depth == vars.len() {
        return existential;
    }
    let x = vars[depth];
    let range = narrowed_range(x, vars, depth, &schedule[depth + 1], g, env, existential);
    for cand in range {
        env.push(x, cand);
        let mut decided = false;
        for m in &schedule[depth + 1] {
            if eval_rec(m, g, env) != existential {
                decided = true;
                break;
            }
        }
        let sub = if decided {
            !existential
        } else {
            search(vars, schedule, depth + 1, g, env, existential)
        };
        env.pop();
        if sub == existential {
            return existential;
        }
    }
    !existential
}

/// Candidate vertices for a block variable. If some member scheduled at this
/// depth relativizes `x` to the neighborhood of an assigned vertex (an
/// `x ∼ t` conjunct, respectively a `¬(x ∼ t)` disjunct), only that
/// neighborhood is searched; every vertex outside it settles the member the
/// short way.
fn narrowed_range(
    x: Var,
    vars: &[Var],
    depth: usize,
    members: &[&Formula],
    g: &Graph,
    env: &Env,
    existential: bool,
) -> Vec<usize> {
    // a guard variable rebound deeper in the block would not yet hold its
    // final value, so it cannot be used for narrowing
    let usable = |t: Var| !vars[depth + 1..].contains(&t);
    for m in members {
        let guard = match (m, existential) {
            (Formula::And(qs), true) => qs.iter().find_map(|q| adj_guard(q, x, env, &usable)),
            (Formula::Or(qs), false) => qs.iter().find_map(|q| match q {
                Formula::Not(inner) => adj_guard(inner, x, env, &usable),
                _ => None,
            }),
            (Formula::Adj(..), true) => adj_guard(m, x, env, &usable),
            (Formula::Not(inner), false) => adj_guard(inner, x, env, &usable),
            _ => None,
        };
        if let Some(t) = guard {
            return g.neighbors(t).collect();
        }
    }
    (0..g.order()).collect()
}

fn adj_guard(f: &Formula, x: Var, env: &Env, usable: &impl Fn(Var) -> bool) -> Option<usize> {
    match f {
        Formula::Adj(a, b) if *a == x && *b != x && usable(*b) => env.get(*b),
        Formula::Adj(a, b) if *b == x && *a != x && usable(*a) => env.get(*a),
        _ => None,
    }
}

/// Push quantifiers toward the subformulas using their variable. Exact on
/// every domain: a quantifier is never dropped, only moved.
pub fn miniscope(f: &Formula) -> Formula {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => f.clone(),
        Formula::Not(g) => Formula::not(miniscope(g)),
        Formula::And(gs) => Formula::And(gs.iter().map(miniscope).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(miniscope).collect()),
        Formula::Exists(v, g) => scope_quant(true, *v, miniscope(g)),
        Formula::Forall(v, g) => scope_quant(false, *v, miniscope(g)),
    }
}

fn scope_quant(existential: bool, v: Var, body: Formula) -> Formula {
    let rebuild = |b: Formula| {
        if existential {
            Formula::exists(v, b)
        } else {
            Formula::forall(v, b)
        }
    };
    match (body, existential) {
        // ∃ distributes over ∨, ∀ over ∧
        (Formula::Or(cs), true) => Formula::Or(cs.into_iter().map(rebuild).collect()),
        (Formula::And(cs), false) => Formula::And(cs.into_iter().map(rebuild).collect()),
        // split a conjunction under ∃ (dually a disjunction under ∀) into
        // the members that use the variable and the rest
        (Formula::And(cs), true) | (Formula::Or(cs), false) => {
            let (with, out): (Vec<Formula>, Vec<Formula>) =
                cs.into_iter().partition(|c| c.free_vars().contains(&v));
            let connect = |fs: Vec<Formula>| {
                if existential {
                    Formula::and(fs)
                } else {
                    Formula::or(fs)
                }
            };
            if out.is_empty() {
                rebuild(connect(with))
            } else if with.is_empty() {
                // keep the quantifier on one member so truth on the empty
                // domain is unchanged
                let mut parts = out;
                let first = rebuild(parts.remove(0));
                parts.insert(0, first);
                connect(parts)
            } else {
                let mut parts = vec![rebuild(connect(with))];
                parts.extend(out);
                connect(parts)
            }
        }
        (b, _) => rebuild(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{graph_axioms, naive_definition, parse, parse_open};

    #[test]
    fn k2_has_an_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f = parse("(exists x (exists y (adj x y)))").unwrap();
        assert!(holds(&f, &g).unwrap());
        let h = Graph::empty(2).unwrap();
        assert!(!holds(&f, &h).unwrap());
    }

    #[test]
    fn graph_axioms_hold_on_every_graph_value() {
        let ax = graph_axioms();
        for n in 0..=4 {
            for g in crate::graph::enumerate_graphs(n, 9).unwrap() {
                assert!(holds(&ax, &g).unwrap());
            }
        }
    }

    #[test]
    fn unassigned_free_variable_is_an_error() {
        let f = parse_open("(adj x y)").unwrap();
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut a = Assignment::new();
        a.insert(Var(0), 0);
        assert!(matches!(
            eval(&f, &g, &a),
            Err(Error::UnassignedVariable(1))
        ));
    }

    #[test]
    fn naive_definition_of_k2_recognizes_k2_only() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let f = naive_definition(&k2).unwrap();
        assert!(holds(&f, &k2).unwrap());
        for n in 1..=4 {
            for g in crate::graph::enumerate_graphs(n, 9).unwrap() {
                if !crate::graph::isomorphic(&g, &k2) {
                    assert!(!holds(&f, &g).unwrap());
                }
            }
        }
    }

    #[test]
    fn witnesses_agree_with_plain_eval() {
        let f = parse("(exists x (exists y (and (adj x y) (not (= x y)))))").unwrap();
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        // empty witness map behaves exactly like eval
        assert!(eval_with_witnesses(&f, &g, &Assignment::new()).unwrap());
        let mut w = Assignment::new();
        w.insert(Var(0), 0);
        assert!(eval_with_witnesses(&f, &g, &w).unwrap());
        w.insert(Var(0), 2);
        assert!(!eval_with_witnesses(&f, &g, &w).unwrap());
    }

    #[test]
    fn witness_outside_block_is_an_error() {
        let f = parse("(exists x (forall y (exists z (= z x))))").unwrap();
        let g = Graph::empty(1).unwrap();
        let mut w = Assignment::new();
        w.insert(Var(2), 0);
        assert!(matches!(
            eval_with_witnesses(&f, &g, &w),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn miniscope_preserves_truth() {
        let fs = [
            "(exists x (and (adj x x) (exists y (= y y))))",
            "(forall x (or (not (adj x x)) (forall y (= x y))))",
            "(exists x (forall y (or (not (adj x y)) (exists z (and (adj z y) (not (= z x)))))))",
        ];
        for text in fs {
            let f = parse(text).unwrap();
            let m = miniscope(&f);
            for n in 0..=4 {
                for g in crate::graph::enumerate_graphs(n, 9).unwrap() {
                    let mut env_a = Env::from_assignment(&Assignment::new());
                    let mut env_b = Env::from_assignment(&Assignment::new());
                    assert_eq!(
                        eval_rec(&f, &g, &mut env_a),
                        eval_rec(&m, &g, &mut env_b),
                        "{text} on {g:?}"
                    );
                }
            }
        }
    }
}
