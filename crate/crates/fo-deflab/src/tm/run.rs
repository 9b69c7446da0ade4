//! Exact simulation on the empty input word.

use super::machine::{Action, Symbol, TuringMachine};
use crate::error::{Error, Result};

/// One configuration per time step, from the start configuration to the
/// halting one.
#[derive(Debug, Clone)]
pub struct ComputationTrace {
    /// `states[t]` is the state at time t; `states[m] = k` (final).
    pub states: Vec<usize>,
    /// `heads[t]` is the 1-based head cell at time t.
    pub heads: Vec<usize>,
    /// `tapes[t][c]` is the symbol in cell c+1 at time t; rows share length.
    pub tapes: Vec<Vec<Symbol>>,
    /// Running time: number of instructions executed.
    pub steps: usize,
}

impl ComputationTrace {
    /// Rightmost cell that is ever non-blank (cell 1 holds `L`).
    pub fn rightmost_used(&self) -> usize {
        let mut best = 1;
        for tape in &self.tapes {
            for (c, &sym) in tape.iter().enumerate() {
                if sym != Symbol::Blank {
                    best = best.max(c + 1);
                }
            }
        }
        best
    }

    pub fn max_head(&self) -> usize {
        *self.heads.iter().max().unwrap()
    }
}

#[derive(Debug, Clone)]
pub enum RunOutcome {
    Halted(ComputationTrace),
    Timeout(usize),
}

impl RunOutcome {
    pub fn trace(&self) -> Option<&ComputationTrace> {
        match self {
            RunOutcome::Halted(t) => Some(t),
            RunOutcome::Timeout(_) => None,
        }
    }
}

/// Run the machine on the empty input word for at most `max_steps`
/// instructions.
pub fn run_tm(m: &TuringMachine, max_steps: usize) -> Result<RunOutcome> {
    let mut tape = vec![Symbol::L, Symbol::Blank];
    let mut head = 2usize; // the first blank
    let mut state = 1usize;
    let mut states = vec![state];
    let mut heads = vec![head];
    let mut tapes = vec![tape.clone()];
    let mut steps = 0;
    while state != m.states {
        if steps >= max_steps {
            return Ok(RunOutcome::Timeout(max_steps));
        }
        let read = tape[head - 1];
        let instr = m
            .instruction(state, read)
            .ok_or_else(|| Error::InvalidMachine(format!("no instruction for s{state} {read}")))?;
        match instr.action {
            Action::Write(sym) => tape[head - 1] = sym,
            Action::Right => {
                head += 1;
                if head > tape.len() {
                    tape.push(Symbol::Blank);
                }
            }
            Action::Left => {
                debug_assert!(head > 1, "left moves on the marker are rejected upfront");
                head -= 1;
            }
        }
        state = instr.next;
        steps += 1;
        states.push(state);
        heads.push(head);
        tapes.push(tape.clone());
    }
    // pad rows to a common width
    let width = tapes.iter().map(Vec::len).max().unwrap();
    for row in &mut tapes {
        row.resize(width, Symbol::Blank);
    }
    Ok(RunOutcome::Halted(ComputationTrace {
        states,
        heads,
        tapes,
        steps,
    }))
}

#[cfg(test)]
mod tests {
    use super::super::machine::{corpus_machine, looping_machine};
    use super::*;

    #[test]
    fn two_state_writer_halts_in_one_step() {
        let out = run_tm(&corpus_machine(2), 100).unwrap();
        let t = out.trace().expect("halts");
        assert_eq!(t.steps, 1);
        assert_eq!(t.states, vec![1, 2]);
        assert_eq!(t.heads, vec![2, 2]);
        assert_eq!(t.tapes[1][1], Symbol::A);
    }

    #[test]
    fn looping_machine_times_out() {
        for cap in [1, 10, 1000] {
            assert!(matches!(
                run_tm(&looping_machine(), cap).unwrap(),
                RunOutcome::Timeout(_)
            ));
        }
    }

    #[test]
    fn three_state_machine_head_pattern() {
        // write at 2, move right, halt: heads 2, 2, 3
        let out = run_tm(&corpus_machine(3), 100).unwrap();
        let t = out.trace().expect("halts");
        assert_eq!(t.heads, vec![2, 2, 3]);
        assert_eq!(t.steps, 2);
    }

    #[test]
    fn corpus_runs_are_short_and_bounded() {
        for k in 2..=6 {
            let out = run_tm(&corpus_machine(k), 10_000).unwrap();
            let t = out.trace().expect("halts");
            assert_eq!(t.steps, k - 1, "k = {k}");
        }
    }
}
