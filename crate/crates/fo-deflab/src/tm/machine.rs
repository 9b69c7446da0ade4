//! Turing machines with a one-way infinite tape over `{L, a, b, B}`.
//!
//! States are `s1..sk` with `s1` initial and `sk` final. The tape starts as
//! the left-end marker `L` followed by the input word and blanks; on the
//! empty input the head starts at cell 2, the first blank.
//!
//! Text format, one instruction per line, `#` comments:
//!
//! ```text
//! s1 B write a s2
//! s2 a right s3
//! s3 b left s1
//! ```

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    L,
    A,
    B,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::L, Symbol::A, Symbol::B, Symbol::Blank];

    fn parse(s: &str) -> Result<Symbol> {
        match s {
            "L" => Ok(Symbol::L),
            "a" => Ok(Symbol::A),
            "b" => Ok(Symbol::B),
            "B" => Ok(Symbol::Blank),
            other => Err(Error::InvalidMachine(format!("unknown symbol {other}"))),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::L => "L",
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::Blank => "B",
        })
    }
}

/// What an instruction does after reading its symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Write(Symbol),
    Right,
    Left,
}

/// `(state, symbol) → action, next state`. States are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instruction {
    pub state: usize,
    pub read: Symbol,
    pub action: Action,
    pub next: usize,
}

#[derive(Debug, Clone)]
pub struct TuringMachine {
    /// Number of states; `states` is the k of every metric contract.
    pub states: usize,
    pub instructions: Vec<Instruction>,
}

impl TuringMachine {
    pub fn new(states: usize, instructions: Vec<Instruction>) -> Result<TuringMachine> {
        let m = TuringMachine {
            states,
            instructions,
        };
        m.validate()?;
        Ok(m)
    }

    /// The unique instruction for a (state, symbol) pair, if any.
    pub fn instruction(&self, state: usize, read: Symbol) -> Option<&Instruction> {
        self.instructions
            .iter()
            .find(|i| i.state == state && i.read == read)
    }

    fn validate(&self) -> Result<()> {
        let k = self.states;
        if k < 2 {
            return Err(Error::InvalidMachine(
                "need at least an initial and a final state".into(),
            ));
        }
        for i in &self.instructions {
            if i.state == 0 || i.state > k || i.next == 0 || i.next > k {
                return Err(Error::InvalidMachine(format!(
                    "instruction references state outside s1..s{k}"
                )));
            }
            if i.state == k {
                return Err(Error::InvalidMachine(
                    "the final state has no instructions".into(),
                ));
            }
            match (i.read, i.action) {
                (Symbol::L, Action::Left) => {
                    return Err(Error::InvalidMachine(
                        "cannot move left from the left-end marker".into(),
                    ))
                }
                (Symbol::L, Action::Write(b)) if b != Symbol::L => {
                    return Err(Error::InvalidMachine(
                        "the left-end marker can only be overwritten by itself".into(),
                    ))
                }
                (r, Action::Write(Symbol::L)) if r != Symbol::L => {
                    return Err(Error::InvalidMachine(
                        "only the left-end marker may be written over the left-end marker".into(),
                    ))
                }
                _ => {}
            }
        }
        for state in 1..k {
            for sym in Symbol::ALL {
                let count = self
                    .instructions
                    .iter()
                    .filter(|i| i.state == state && i.read == sym)
                    .count();
                if count != 1 {
                    return Err(Error::InvalidMachine(format!(
                        "state s{state} reading {sym} needs exactly one instruction, found {count}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<TuringMachine> {
        let mut instructions = Vec::new();
        let mut max_state = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: &str| {
                Error::InvalidMachine(format!("line {}: {msg}: {raw}", lineno + 1))
            };
            let state = parse_state(toks.first().copied().ok_or_else(|| bad("missing state"))?)?;
            let read = Symbol::parse(toks.get(1).copied().ok_or_else(|| bad("missing symbol"))?)?;
            let (action, next_tok) = match toks.get(2).copied() {
                Some("write") => {
                    let sym =
                        Symbol::parse(toks.get(3).copied().ok_or_else(|| bad("missing symbol"))?)?;
                    (Action::Write(sym), toks.get(4))
                }
                Some("right") => (Action::Right, toks.get(3)),
                Some("left") => (Action::Left, toks.get(3)),
                _ => return Err(bad("expected write/right/left")),
            };
            let next = parse_state(next_tok.copied().ok_or_else(|| bad("missing next state"))?)?;
            max_state = max_state.max(state).max(next);
            instructions.push(Instruction {
                state,
                read,
                action,
                next,
            });
        }
        TuringMachine::new(max_state, instructions)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.instructions {
            let action = match i.action {
                Action::Write(s) => format!("write {s}"),
                Action::Right => "right".into(),
                Action::Left => "left".into(),
            };
            out.push_str(&format!("s{} {} {} s{}\n", i.state, i.read, action, i.next));
        }
        out
    }
}

fn parse_state(tok: &str) -> Result<usize> {
    let digits = tok
        .strip_prefix('s')
        .ok_or_else(|| Error::InvalidMachine(format!("expected sN, found {tok}")))?;
    let n: usize = digits
        .parse()
        .map_err(|_| Error::InvalidMachine(format!("expected sN, found {tok}")))?;
    if n == 0 {
        return Err(Error::InvalidMachine("states are numbered from s1".into()));
    }
    Ok(n)
}

/// The fixed machine corpus used by tests and examples: complete tables for
/// k = 2..6 states, every one halting on the empty input.
pub fn corpus_machine(k: usize) -> TuringMachine {
    let text = match k {
        2 => {
            "s1 B write a s2\n\
             s1 L write L s2\n\
             s1 a write a s2\n\
             s1 b write b s2\n"
        }
        3 => {
            "s1 B write a s2\n\
             s2 a right s3\n\
             s1 L write L s3\n\
             s1 a write a s3\n\
             s1 b write b s3\n\
             s2 L write L s3\n\
             s2 b write b s3\n\
             s2 B write B s3\n"
        }
        4 => {
            "s1 B write a s2\n\
             s2 a right s3\n\
             s3 B write b s4\n\
             s1 L write L s4\n\
             s1 a write a s4\n\
             s1 b write b s4\n\
             s2 L write L s4\n\
             s2 b write b s4\n\
             s2 B write B s4\n\
             s3 L write L s4\n\
             s3 a write a s4\n\
             s3 b write b s4\n"
        }
        5 => {
            "s1 B write a s2\n\
             s2 a right s3\n\
             s3 B write b s4\n\
             s4 b left s5\n\
             s1 L write L s5\n\
             s1 a write a s5\n\
             s1 b write b s5\n\
             s2 L write L s5\n\
             s2 b write b s5\n\
             s2 B write B s5\n\
             s3 L write L s5\n\
             s3 a write a s5\n\
             s3 b write b s5\n\
             s4 L write L s5\n\
             s4 a write a s5\n\
             s4 B write B s5\n"
        }
        6 => {
            "s1 B write a s2\n\
             s2 a write b s3\n\
             s3 b right s4\n\
             s4 B write a s5\n\
             s5 a left s6\n\
             s1 L write L s6\n\
             s1 a write a s6\n\
             s1 b write b s6\n\
             s2 L write L s6\n\
             s2 b write b s6\n\
             s2 B write B s6\n\
             s3 L write L s6\n\
             s3 a write a s6\n\
             s3 B write B s6\n\
             s4 L write L s6\n\
             s4 a write a s6\n\
             s4 b write b s6\n\
             s5 L write L s6\n\
             s5 b write b s6\n\
             s5 B write B s6\n"
        }
        other => panic!("corpus machines have 2..=6 states, asked for {other}"),
    };
    TuringMachine::parse(text).expect("corpus machines are valid")
}

/// A two-state machine that loops forever on the empty input.
pub fn looping_machine() -> TuringMachine {
    TuringMachine::parse(
        "s1 B write B s1\n\
         s1 L write L s1\n\
         s1 a write a s1\n\
         s1 b write b s1\n",
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_machines_validate() {
        for k in 2..=6 {
            let m = corpus_machine(k);
            assert_eq!(m.states, k);
        }
    }

    #[test]
    fn parse_rejects_left_on_marker() {
        let text = "s1 L left s2\ns1 B write a s2\ns1 a write a s2\ns1 b write b s2\n";
        assert!(matches!(
            TuringMachine::parse(text),
            Err(Error::InvalidMachine(_))
        ));
    }

    #[test]
    fn parse_rejects_incomplete_tables() {
        assert!(matches!(
            TuringMachine::parse("s1 B write a s2\n"),
            Err(Error::InvalidMachine(_))
        ));
    }

    #[test]
    fn parse_rejects_writing_marker_elsewhere() {
        let text = "s1 B write L s2\ns1 L write L s2\ns1 a write a s2\ns1 b write b s2\n";
        assert!(matches!(
            TuringMachine::parse(text),
            Err(Error::InvalidMachine(_))
        ));
    }

    #[test]
    fn render_round_trips() {
        let m = corpus_machine(3);
        let again = TuringMachine::parse(&m.render()).unwrap();
        assert_eq!(again.states, m.states);
        assert_eq!(again.instructions.len(), m.instructions.len());
    }
}
