//! Parser for the parenthesized prefix text format.
//!
//! Grammar:
//!
//! ```text
//! F ::= (adj v v) | (= v v) | (not F) | (and F...) | (or F...)
//!     | (exists v F) | (forall v F)
//!     | (implies F G) | (iff F G) | (existsU v F)
//!     | (existsIn v Guard F) | (forallIn v Guard F)
//! ```
//!
//! Sugar is expanded at parse time; the returned AST contains only the core
//! connectives. Variable names of the form `xN` map to index `N`; any other
//! name gets the smallest unused index, in order of first occurrence.

use super::{Formula, Var};
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Debug)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(String, usize)>> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut cur_start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push((std::mem::take(&mut cur), cur_start));
                }
                tokens.push((c.to_string(), i));
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push((std::mem::take(&mut cur), cur_start));
                }
            }
            _ => {
                if cur.is_empty() {
                    cur_start = i;
                }
                cur.push(c);
            }
        }
    }
    if !cur.is_empty() {
        tokens.push((cur, cur_start));
    }
    Ok(tokens)
}

fn parse_sexp(tokens: &[(String, usize)], at: &mut usize, end: usize) -> Result<Sexp> {
    if *at >= tokens.len() {
        return Err(Error::Syntax {
            pos: end,
            msg: "unexpected end of input".into(),
        });
    }
    let (tok, pos) = &tokens[*at];
    *at += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                if *at >= tokens.len() {
                    return Err(Error::Syntax {
                        pos: end,
                        msg: "unexpected end of input: missing ')'".into(),
                    });
                }
                if tokens[*at].0 == ")" {
                    *at += 1;
                    return Ok(Sexp::List(items, *pos));
                }
                items.push(parse_sexp(tokens, at, end)?);
            }
        }
        ")" => Err(Error::Syntax {
            pos: *pos,
            msg: "unexpected ')'".into(),
        }),
        _ => Ok(Sexp::Atom(tok.clone(), *pos)),
    }
}

struct Builder {
    names: HashMap<String, Var>,
    /// First index beyond every assigned or explicit index; fresh variables
    /// for sugar expansion are drawn from here.
    fresh: u32,
}

impl Builder {
    /// Assign indices: explicit `xN` names claim index `N`; all other names
    /// get the smallest free indices in order of first occurrence.
    fn new(root: &Sexp) -> Result<Builder> {
        let mut order: Vec<String> = Vec::new();
        collect_var_names(root, &mut order)?;
        let mut names: HashMap<String, Var> = HashMap::new();
        let mut claimed: Vec<u32> = Vec::new();
        for name in &order {
            if names.contains_key(name) {
                continue;
            }
            if let Some(n) = explicit_index(name) {
                names.insert(name.clone(), Var(n));
                claimed.push(n);
            }
        }
        let mut next = 0u32;
        for name in &order {
            if names.contains_key(name) {
                continue;
            }
            while claimed.contains(&next) {
                next += 1;
            }
            names.insert(name.clone(), Var(next));
            claimed.push(next);
        }
        let fresh = claimed.iter().copied().max().map_or(0, |m| m + 1);
        Ok(Builder { names, fresh })
    }

    fn var(&self, name: &str, pos: usize) -> Result<Var> {
        self.names.get(name).copied().ok_or(Error::Syntax {
            pos,
            msg: format!("unknown variable {name}"),
        })
    }

    fn fresh(&mut self) -> Var {
        let v = Var(self.fresh);
        self.fresh += 1;
        v
    }

    fn build(&mut self, sexp: &Sexp) -> Result<Formula> {
        let (items, pos) = match sexp {
            Sexp::List(items, pos) => (items, *pos),
            Sexp::Atom(name, pos) => {
                return Err(Error::Syntax {
                    pos: *pos,
                    msg: format!("expected a formula, found bare symbol {name}"),
                })
            }
        };
        let head = match items.first() {
            Some(Sexp::Atom(h, _)) => h.as_str(),
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: "expected an operator".into(),
                })
            }
        };
        let args = &items[1..];
        let arity = |want: usize| -> Result<()> {
            if args.len() == want {
                Ok(())
            } else {
                Err(Error::Arity(format!(
                    "{head} expects {want} argument(s), got {}",
                    args.len()
                )))
            }
        };
        match head {
            "adj" | "=" => {
                arity(2)?;
                let u = self.atom_var(&args[0])?;
                let v = self.atom_var(&args[1])?;
                Ok(if head == "adj" {
                    Formula::adj(u, v)
                } else {
                    Formula::eq(u, v)
                })
            }
            "not" => {
                arity(1)?;
                Ok(Formula::not(self.build(&args[0])?))
            }
            "and" | "or" => {
                if args.is_empty() {
                    return Err(Error::Arity(format!("{head} expects at least 1 argument")));
                }
                let fs = args.iter().map(|a| self.build(a)).collect::<Result<_>>()?;
                Ok(if head == "and" {
                    Formula::and(fs)
                } else {
                    Formula::or(fs)
                })
            }
            "exists" | "forall" => {
                arity(2)?;
                let v = self.atom_var(&args[0])?;
                let body = self.build(&args[1])?;
                Ok(if head == "exists" {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                })
            }
            "implies" => {
                arity(2)?;
                let a = self.build(&args[0])?;
                let b = self.build(&args[1])?;
                Ok(Formula::implies(a, b))
            }
            "iff" => {
                arity(2)?;
                let a = self.build(&args[0])?;
                let b = self.build(&args[1])?;
                Ok(Formula::and(vec![
                    Formula::implies(a.clone(), b.clone()),
                    Formula::implies(b, a),
                ]))
            }
            "existsU" => {
                arity(2)?;
                let v = self.atom_var(&args[0])?;
                let body = self.build(&args[1])?;
                Ok(self.expand_unique(v, body))
            }
            "existsIn" | "forallIn" => {
                arity(3)?;
                let v = self.atom_var(&args[0])?;
                let guard = self.build(&args[1])?;
                let body = self.build(&args[2])?;
                Ok(if head == "existsIn" {
                    Formula::exists_in(v, guard, body)
                } else {
                    Formula::forall_in(v, guard, body)
                })
            }
            other => Err(Error::Syntax {
                pos,
                msg: format!("unknown operator {other}"),
            }),
        }
    }

    /// `∃!v F  ≐  ∃v F ∧ ∀v∀w(F(v) ∧ F(w) → v = w)` with `w` fresh.
    fn expand_unique(&mut self, v: Var, body: Formula) -> Formula {
        let w = self.fresh();
        let body_w = body.rename_free(v, w);
        Formula::and(vec![
            Formula::exists(v, body.clone()),
            Formula::forall(
                v,
                Formula::forall(
                    w,
                    Formula::implies(Formula::and(vec![body, body_w]), Formula::eq(v, w)),
                ),
            ),
        ])
    }

    fn atom_var(&self, sexp: &Sexp) -> Result<Var> {
        match sexp {
            Sexp::Atom(name, pos) => self.var(name, *pos),
            Sexp::List(_, pos) => Err(Error::Syntax {
                pos: *pos,
                msg: "expected a variable".into(),
            }),
        }
    }
}

fn explicit_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Walk the grammar and record variable-name tokens in occurrence order.
fn collect_var_names(sexp: &Sexp, out: &mut Vec<String>) -> Result<()> {
    let items = match sexp {
        Sexp::List(items, _) => items,
        Sexp::Atom(..) => return Ok(()),
    };
    let head = match items.first() {
        Some(Sexp::Atom(h, _)) => h.as_str(),
        _ => return Ok(()),
    };
    let var_positions: &[usize] = match head {
        "adj" | "=" => &[1, 2],
        "exists" | "forall" | "existsU" | "existsIn" | "forallIn" => &[1],
        _ => &[],
    };
    for (i, item) in items.iter().enumerate().skip(1) {
        if var_positions.contains(&i) {
            if let Sexp::Atom(name, _) = item {
                out.push(name.clone());
            }
        } else {
            collect_var_names(item, out)?;
        }
    }
    Ok(())
}

fn parse_impl(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut at = 0;
    let root = parse_sexp(&tokens, &mut at, text.len())?;
    if at != tokens.len() {
        return Err(Error::Syntax {
            pos: tokens[at].1,
            msg: "trailing input after formula".into(),
        });
    }
    let mut builder = Builder::new(&root)?;
    builder.build(&root)
}

/// Parse a sentence. Free variables are rejected.
pub fn parse(text: &str) -> Result<Formula> {
    let f = parse_impl(text)?;
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(Error::UnboundVariable(
            free.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        ));
    }
    Ok(f)
}

/// Parse a formula that may have free variables.
pub fn parse_open(text: &str) -> Result<Formula> {
    parse_impl(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{alternation_number, quantifier_rank, render};

    #[test]
    fn parses_basic_sentence() {
        let f = parse("(exists x (forall y (= y x)))").unwrap();
        assert_eq!(
            f,
            Formula::exists(
                Var(0),
                Formula::forall(Var(1), Formula::eq(Var(1), Var(0)))
            )
        );
    }

    #[test]
    fn explicit_indices_win() {
        let f = parse_open("(adj x3 y)").unwrap();
        assert_eq!(f, Formula::adj(Var(3), Var(0)));
    }

    #[test]
    fn uniqueness_expansion_shape() {
        let f = parse("(existsU x (adj x x))").unwrap();
        // ∃x(x~x) ∧ ∀x∀w((x~x ∧ w~w) → x=w)
        assert_eq!(quantifier_rank(&f), 2);
        assert_eq!(alternation_number(&f), 0);
        match &f {
            Formula::And(gs) => {
                assert!(matches!(gs[0], Formula::Exists(..)));
                assert!(matches!(gs[1], Formula::Forall(..)));
            }
            other => panic!("expected conjunction, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse("(exists x") {
            Err(Error::Syntax { msg, .. }) => assert!(msg.contains("end of input")),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse("(adj x y z)"),
            Err(Error::Arity(_))
        ));
        assert!(matches!(
            parse("(adj x y)"),
            Err(Error::UnboundVariable(_))
        ));
    }

    #[test]
    fn sugar_expands_before_measurement() {
        let f = parse("(forall x (implies (adj x x) (= x x)))").unwrap();
        assert_eq!(
            render(&f),
            "(forall x0 (or (not (adj x0 x0)) (= x0 x0)))"
        );
        let g = parse("(existsIn x (adj x x) (= x x))").unwrap();
        assert_eq!(render(&g), "(exists x0 (and (adj x0 x0) (= x0 x0)))");
    }
}
