//! Canonical text rendering; `parse(render(f)) == f` for every AST.

use super::Formula;

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Adj(u, v) => {
            out.push_str(&format!("(adj {u} {v})"));
        }
        Formula::Eq(u, v) => {
            out.push_str(&format!("(= {u} {v})"));
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            write(g, out);
            out.push(')');
        }
        Formula::And(gs) | Formula::Or(gs) => {
            out.push_str(if matches!(f, Formula::And(_)) {
                "(and"
            } else {
                "(or"
            });
            for g in gs {
                out.push(' ');
                write(g, out);
            }
            out.push(')');
        }
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            out.push_str(if matches!(f, Formula::Exists(..)) {
                "(exists "
            } else {
                "(forall "
            });
            out.push_str(&v.to_string());
            out.push(' ');
            write(g, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, parse_open};
    use super::*;
    use crate::formula::Var;

    #[test]
    fn round_trips_ast() {
        let f = Formula::exists(
            Var(2),
            Formula::or(vec![
                Formula::not(Formula::adj(Var(2), Var(5))),
                Formula::eq(Var(2), Var(2)),
            ]),
        );
        assert_eq!(parse_open(&render(&f)).unwrap(), f);
    }

    #[test]
    fn canonical_text_round_trips_up_to_whitespace() {
        let text = "(exists x0 (forall x1 (or (not (adj x0 x1)) (= x0 x1))))";
        let f = parse(text).unwrap();
        assert_eq!(render(&f), text);
        let spaced = "(exists x0\n  (forall x1 (or (not (adj x0 x1)) (= x0 x1))))";
        assert_eq!(parse(spaced).unwrap(), f);
    }
}
