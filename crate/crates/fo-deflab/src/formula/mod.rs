//! First-order formulas over the vocabulary `{~, =}`.
//!
//! Formulas are immutable trees; `And`/`Or` are n-ary. Connectives are
//! `{not, and, or}` plus the two quantifiers; implication, equivalence, the
//! uniqueness quantifier and relativized quantifiers exist only in the text
//! format and are expanded by the parser.

mod classify;
mod dnf;
mod measures;
mod naive;
mod parse;
mod print;
mod transform;

pub use classify::{classify, is_prenex, prefix_pattern, PrefixClass};
pub use dnf::qf_to_dnf;
pub use measures::{alternation_number, length, nest_info, quantifier_rank, NestInfo};
pub use naive::{graph_axioms, naive_definition};
pub use parse::{parse, parse_open};
pub use print::render;
pub use transform::{rename_apart, to_nnf, to_prenex};

use std::collections::BTreeSet;
use std::fmt;

/// A first-order variable, identified by a small index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Abstract syntax of first-order formulas about graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Adjacency atom `u ~ v`.
    Adj(Var, Var),
    /// Equality atom `u = v`.
    Eq(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

/// The two quantifiers, as data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    pub fn dual(self) -> Quant {
        match self {
            Quant::Exists => Quant::Forall,
            Quant::Forall => Quant::Exists,
        }
    }
}

impl Formula {
    pub fn adj(u: Var, v: Var) -> Formula {
        Formula::Adj(u, v)
    }

    pub fn eq(u: Var, v: Var) -> Formula {
        Formula::Eq(u, v)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// n-ary conjunction; a singleton collapses to its only member.
    ///
    /// Panics on an empty list: the AST has no nullary truth constants.
    pub fn and(mut fs: Vec<Formula>) -> Formula {
        assert!(!fs.is_empty(), "empty conjunction");
        if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            Formula::And(fs)
        }
    }

    /// n-ary disjunction; a singleton collapses to its only member.
    pub fn or(mut fs: Vec<Formula>) -> Formula {
        assert!(!fs.is_empty(), "empty disjunction");
        if fs.len() == 1 {
            fs.pop().unwrap()
        } else {
            Formula::Or(fs)
        }
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    pub fn quantify(q: Quant, v: Var, f: Formula) -> Formula {
        match q {
            Quant::Exists => Formula::exists(v, f),
            Quant::Forall => Formula::forall(v, f),
        }
    }

    /// `a -> b` as `¬a ∨ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(vec![Formula::not(a), b])
    }

    /// `∃v(guard ∧ f)`.
    pub fn exists_in(v: Var, guard: Formula, f: Formula) -> Formula {
        Formula::exists(v, Formula::and(vec![guard, f]))
    }

    /// `∀v(guard → f)`.
    pub fn forall_in(v: Var, guard: Formula, f: Formula) -> Formula {
        Formula::forall(v, Formula::implies(guard, f))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Adj(..) | Formula::Eq(..))
    }

    /// Atom or negated atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Adj(..) | Formula::Eq(..) => true,
            Formula::Not(g) => g.is_atom(),
            _ => false,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Adj(..) | Formula::Eq(..) => true,
            Formula::Not(g) => g.is_quantifier_free(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(|g| g.is_quantifier_free()),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        fn walk(f: &Formula, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
            match f {
                Formula::Adj(u, v) | Formula::Eq(u, v) => {
                    for w in [u, v] {
                        if !bound.contains(w) {
                            out.insert(*w);
                        }
                    }
                }
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        walk(g, bound, out);
                    }
                }
                Formula::Exists(v, g) | Formula::Forall(v, g) => {
                    bound.push(*v);
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All variable indices occurring anywhere (free or bound).
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Adj(u, v) | Formula::Eq(u, v) => {
                out.insert(*u);
                out.insert(*v);
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(*v);
            }
            _ => {}
        });
        out
    }

    /// Variables bound by some quantifier in the formula.
    pub fn bound_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Exists(v, _) | Formula::Forall(v, _) = f {
                out.insert(*v);
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(g) => g.visit(f),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.visit(f);
                }
            }
            Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            _ => {}
        }
    }

    /// Capture-avoiding only in the sense needed internally: `to` must not be
    /// bound anywhere in `self`.
    pub(crate) fn rename_free(&self, from: Var, to: Var) -> Formula {
        debug_assert!(!self.bound_vars().contains(&to));
        let r = |v: Var| if v == from { to } else { v };
        match self {
            Formula::Adj(u, v) => Formula::Adj(r(*u), r(*v)),
            Formula::Eq(u, v) => Formula::Eq(r(*u), r(*v)),
            Formula::Not(g) => Formula::not(g.rename_free(from, to)),
            Formula::And(gs) => {
                Formula::And(gs.iter().map(|g| g.rename_free(from, to)).collect())
            }
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.rename_free(from, to)).collect()),
            Formula::Exists(v, g) if *v == from => Formula::Exists(*v, g.clone()),
            Formula::Forall(v, g) if *v == from => Formula::Forall(*v, g.clone()),
            Formula::Exists(v, g) => Formula::exists(*v, g.rename_free(from, to)),
            Formula::Forall(v, g) => Formula::forall(*v, g.rename_free(from, to)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}
