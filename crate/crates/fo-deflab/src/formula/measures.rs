//! Syntactic measures: quantifier rank, alternation number, symbol length.
//!
//! The alternation number follows the nested-quantifier-sequence semantics:
//! negation flips every quantifier along a sequence, conjunction and
//! disjunction take unions, and a quantifier prefixes every sequence of its
//! body. The measures therefore agree before and after negation normal form.

use super::{Formula, Quant};

/// Quantifier rank: maximum number of nested quantifiers.
pub fn quantifier_rank(f: &Formula) -> u32 {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => 0,
        Formula::Not(g) => quantifier_rank(g),
        Formula::And(gs) | Formula::Or(gs) => {
            gs.iter().map(quantifier_rank).max().unwrap_or(0)
        }
        Formula::Exists(_, g) | Formula::Forall(_, g) => 1 + quantifier_rank(g),
    }
}

/// Summary of a formula's nested-quantifier sequences: whether the empty
/// sequence occurs, and the maximum alternation count among sequences
/// starting with each quantifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NestInfo {
    pub has_empty: bool,
    pub max_alt_exists: Option<u32>,
    pub max_alt_forall: Option<u32>,
}

impl NestInfo {
    fn empty() -> NestInfo {
        NestInfo {
            has_empty: true,
            max_alt_exists: None,
            max_alt_forall: None,
        }
    }

    fn merge(self, other: NestInfo) -> NestInfo {
        NestInfo {
            has_empty: self.has_empty || other.has_empty,
            max_alt_exists: max_opt(self.max_alt_exists, other.max_alt_exists),
            max_alt_forall: max_opt(self.max_alt_forall, other.max_alt_forall),
        }
    }

    /// Maximum alternation count over every sequence.
    pub fn alt(&self) -> u32 {
        let mut m = 0;
        if let Some(x) = self.max_alt_exists {
            m = m.max(x);
        }
        if let Some(x) = self.max_alt_forall {
            m = m.max(x);
        }
        m
    }

    /// Every sequence with the maximum alternation count starts with `∃`
    /// (the empty sequence is compatible with both).
    pub fn is_exists_formula(&self) -> bool {
        self.max_alt_forall.map_or(true, |x| x < self.alt())
    }

    /// Dual of [`NestInfo::is_exists_formula`].
    pub fn is_forall_formula(&self) -> bool {
        self.max_alt_exists.map_or(true, |x| x < self.alt())
    }
}

fn max_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Compute the sequence summary, flipping quantifiers below negations.
pub fn nest_info(f: &Formula) -> NestInfo {
    info(f, false)
}

fn info(f: &Formula, flipped: bool) -> NestInfo {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => NestInfo::empty(),
        Formula::Not(g) => info(g, !flipped),
        Formula::And(gs) | Formula::Or(gs) => gs
            .iter()
            .map(|g| info(g, flipped))
            .fold(
                NestInfo {
                    has_empty: false,
                    max_alt_exists: None,
                    max_alt_forall: None,
                },
                NestInfo::merge,
            ),
        Formula::Exists(_, g) | Formula::Forall(_, g) => {
            let q = match (f, flipped) {
                (Formula::Exists(..), false) | (Formula::Forall(..), true) => Quant::Exists,
                _ => Quant::Forall,
            };
            let inner = info(g, flipped);
            let mut best: Option<u32> = None;
            if inner.has_empty {
                best = max_opt(best, Some(0));
            }
            if let Some(x) = inner.max_alt_exists {
                best = max_opt(best, Some(x + u32::from(q == Quant::Forall)));
            }
            if let Some(x) = inner.max_alt_forall {
                best = max_opt(best, Some(x + u32::from(q == Quant::Exists)));
            }
            NestInfo {
                has_empty: false,
                max_alt_exists: if q == Quant::Exists { best } else { None },
                max_alt_forall: if q == Quant::Forall { best } else { None },
            }
        }
    }
}

/// Alternation number: maximum number of `∃∀`/`∀∃` switches along any
/// nested-quantifier sequence, with negations flipping quantifiers.
pub fn alternation_number(f: &Formula) -> u32 {
    nest_info(f).alt()
}

/// Symbol length. Each variable occurrence, relation symbol, connective and
/// quantifier counts 1; parentheses and commas are not counted. An n-ary
/// conjunction or disjunction counts n−1 connective symbols.
pub fn length(f: &Formula) -> u64 {
    match f {
        Formula::Adj(..) | Formula::Eq(..) => 3,
        Formula::Not(g) => 1 + length(g),
        Formula::And(gs) | Formula::Or(gs) => {
            (gs.len() as u64 - 1) + gs.iter().map(length).sum::<u64>()
        }
        Formula::Exists(_, g) | Formula::Forall(_, g) => 2 + length(g),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::formula::Var;

    fn v(i: u32) -> Var {
        Var(i)
    }

    #[test]
    fn rank_of_atoms_is_zero() {
        assert_eq!(quantifier_rank(&Formula::adj(v(0), v(0))), 0);
        assert_eq!(alternation_number(&Formula::eq(v(0), v(1))), 0);
    }

    #[test]
    fn rank_counts_nesting_not_quantifier_count() {
        // ∃x(x~x ∧ ∀y y=x)
        let f = Formula::exists(
            v(0),
            Formula::and(vec![
                Formula::adj(v(0), v(0)),
                Formula::forall(v(1), Formula::eq(v(1), v(0))),
            ]),
        );
        assert_eq!(quantifier_rank(&f), 2);
        assert_eq!(alternation_number(&f), 1);
    }

    #[test]
    fn negation_flips_alternation_sequences() {
        // ¬∃x∀y∃z(...) counts like ∀x∃y∀z(...)
        let body = Formula::adj(v(0), v(2));
        let f = Formula::not(Formula::exists(
            v(0),
            Formula::forall(v(1), Formula::exists(v(2), body.clone())),
        ));
        let g = Formula::forall(
            v(0),
            Formula::exists(v(1), Formula::forall(v(2), body)),
        );
        assert_eq!(alternation_number(&f), 2);
        assert_eq!(alternation_number(&f), alternation_number(&g));
        let info = nest_info(&f);
        assert!(info.is_forall_formula());
        assert!(!info.is_exists_formula());
    }

    #[test]
    fn simple_alternation() {
        let f = parse("(exists x (forall y (= x y)))").unwrap();
        assert_eq!(alternation_number(&f), 1);
        assert_eq!(quantifier_rank(&f), 2);
    }

    #[test]
    fn length_convention() {
        assert_eq!(length(&Formula::eq(v(0), v(1))), 3);
        assert_eq!(length(&Formula::not(Formula::adj(v(0), v(1)))), 4);
        // ∃x(x=y ∧ x~y): 2 + (3 + 1 + 3)
        let f = Formula::exists(
            v(0),
            Formula::and(vec![Formula::eq(v(0), v(1)), Formula::adj(v(0), v(1))]),
        );
        assert_eq!(length(&f), 9);
    }

    #[test]
    fn uniqueness_quantifier_accounting() {
        // In an existential context, treating ∃! as a single quantifier gives
        // qr 2 / alt 0; the expansion gives qr 3 / alt 1.
        let single = parse("(exists x (exists y (adj y x)))").unwrap();
        assert_eq!(quantifier_rank(&single), 2);
        assert_eq!(alternation_number(&single), 0);
        let expanded = parse("(exists x (existsU y (adj y x)))").unwrap();
        assert_eq!(quantifier_rank(&expanded), 3);
        assert_eq!(alternation_number(&expanded), 1);
        // Standalone: the quantifier contributes 2 to the rank of its body.
        let inner = parse("(existsU y (adj y y))").unwrap();
        assert_eq!(quantifier_rank(&inner), 2);
    }

    #[test]
    fn mixed_top_level_sequences_are_neither_kind() {
        // nest = {∃, ∀}: alt 0, but not an ∃-formula nor a ∀-formula.
        let f = Formula::and(vec![
            Formula::exists(v(0), Formula::adj(v(0), v(0))),
            Formula::forall(v(1), Formula::eq(v(1), v(1))),
        ]);
        let info = nest_info(&f);
        assert_eq!(info.alt(), 0);
        assert!(!info.is_exists_formula());
        assert!(!info.is_forall_formula());
    }
}
