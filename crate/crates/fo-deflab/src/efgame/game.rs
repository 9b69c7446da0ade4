//! The Ehrenfeucht game played directly: exhaustive minimax search, with an
//! optional cap on the number of times Spoiler may switch graphs, plus the
//! machinery for playing a fixed Spoiler strategy against an exhaustive
//! Duplicator.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::Serialize;
use std::collections::HashMap;

/// Which of the two boards a move is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    G,
    H,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::G => Side::H,
            Side::H => Side::G,
        }
    }
}

/// The two graphs of a game.
#[derive(Debug, Clone, Copy)]
pub struct GamePair<'a> {
    pub g: &'a Graph,
    pub h: &'a Graph,
}

impl<'a> GamePair<'a> {
    pub fn new(g: &'a Graph, h: &'a Graph) -> GamePair<'a> {
        GamePair { g, h }
    }

    pub fn board(&self, side: Side) -> &'a Graph {
        match side {
            Side::G => self.g,
            Side::H => self.h,
        }
    }
}

/// A game position: pebbled tuples on both boards. The first `pre` pairs are
/// pre-pebbled setup; `moves[i]` records the side Spoiler chose in round `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub pre: usize,
    pub gu: Vec<usize>,
    pub hv: Vec<usize>,
    pub moves: Vec<Side>,
}

impl Position {
    pub fn empty() -> Position {
        Position {
            pre: 0,
            gu: Vec::new(),
            hv: Vec::new(),
            moves: Vec::new(),
        }
    }

    pub fn with_setup(pairs: &[(usize, usize)]) -> Position {
        Position {
            pre: pairs.len(),
            gu: pairs.iter().map(|&(u, _)| u).collect(),
            hv: pairs.iter().map(|&(_, v)| v).collect(),
            moves: Vec::new(),
        }
    }

    pub fn rounds_played(&self) -> usize {
        self.moves.len()
    }

    pub fn last_side(&self) -> Option<Side> {
        self.moves.last().copied()
    }

    pub fn switches(&self) -> u32 {
        self.moves
            .windows(2)
            .filter(|w| w[0] != w[1])
            .count() as u32
    }

    /// Does placing `(a, b)` keep the pebbled map a partial isomorphism?
    pub fn extension_consistent(&self, pair: &GamePair, a: usize, b: usize) -> bool {
        for i in 0..self.gu.len() {
            if (self.gu[i] == a) != (self.hv[i] == b) {
                return false;
            }
            if pair.g.adjacent(self.gu[i], a) != pair.h.adjacent(self.hv[i], b) {
                return false;
            }
        }
        true
    }

    pub fn is_partial_iso(&self, pair: &GamePair) -> bool {
        for i in 0..self.gu.len() {
            for j in i + 1..self.gu.len() {
                if (self.gu[i] == self.gu[j]) != (self.hv[i] == self.hv[j]) {
                    return false;
                }
                if pair.g.adjacent(self.gu[i], self.gu[j])
                    != pair.h.adjacent(self.hv[i], self.hv[j])
                {
                    return false;
                }
            }
        }
        true
    }

    fn push(&self, side: Side, spoiler: usize, duplicator: usize) -> Position {
        let mut next = self.clone();
        let (a, b) = match side {
            Side::G => (spoiler, duplicator),
            Side::H => (duplicator, spoiler),
        };
        next.gu.push(a);
        next.hv.push(b);
        next.moves.push(side);
        next
    }

    /// The pair pebbled in a given round (setup excluded).
    pub fn round_pair(&self, round: usize) -> (usize, usize) {
        (self.gu[self.pre + round], self.hv[self.pre + round])
    }
}

/// A Spoiler move: board and vertex.
pub type Move = (Side, usize);

/// A deterministic Spoiler move-selector.
pub trait SpoilerStrategy {
    fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move>;
}

struct Searcher<'a> {
    pair: GamePair<'a>,
    budget: Option<u32>,
    memo: HashMap<(Vec<u8>, Vec<u8>, u32, Option<Side>, u32), bool>,
}

impl<'a> Searcher<'a> {
    /// Does Spoiler win within `rounds` more rounds from a consistent
    /// position? `switch_used` counts switches made so far.
    fn wins(
        &mut self,
        gu: &mut Vec<usize>,
        hv: &mut Vec<usize>,
        rounds: u32,
        last: Option<Side>,
        switches_used: u32,
    ) -> bool {
        if rounds == 0 {
            return false;
        }
        let key = (
            gu.iter().map(|&x| x as u8).collect(),
            hv.iter().map(|&x| x as u8).collect(),
            rounds,
            if self.budget.is_some() { last } else { None },
            if self.budget.is_some() { switches_used } else { 0 },
        );
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let mut result = false;
        'sides: for side in [Side::G, Side::H] {
            let switching = last.is_some() && last != Some(side);
            let used = switches_used + u32::from(switching);
            if let Some(b) = self.budget {
                if used > b {
                    continue;
                }
            }
            let (board, other) = (self.pair.board(side), self.pair.board(side.other()));
            for v in 0..board.order() {
                let mut all_replies_lose = true;
                for w in 0..other.order() {
                    let (a, b) = match side {
                        Side::G => (v, w),
                        Side::H => (w, v),
                    };
                    let consistent = (0..gu.len()).all(|i| {
                        (gu[i] == a) == (hv[i] == b)
                            && self.pair.g.adjacent(gu[i], a) == self.pair.h.adjacent(hv[i], b)
                    });
                    if !consistent {
                        continue; // this reply loses immediately
                    }
                    gu.push(a);
                    hv.push(b);
                    let survives = !self.wins(gu, hv, rounds - 1, Some(side), used);
                    gu.pop();
                    hv.pop();
                    if survives {
                        all_replies_lose = false;
                        break;
                    }
                }
                if all_replies_lose {
                    result = true;
                    break 'sides;
                }
            }
        }
        self.memo.insert(key, result);
        result
    }
}

fn minimax_rank(
    g: &Graph,
    h: &Graph,
    budget: Option<u32>,
    setup: &[(usize, usize)],
    extra_rounds_cap: u32,
) -> Result<u32> {
    if crate::graph::isomorphic(g, h) {
        return Err(Error::IsomorphicInputs);
    }
    let pair = GamePair::new(g, h);
    let pos = Position::with_setup(setup);
    if !pos.is_partial_iso(&pair) {
        return Ok(0);
    }
    for k in 1..=extra_rounds_cap {
        let mut s = Searcher {
            pair,
            budget,
            memo: HashMap::new(),
        };
        let mut gu = pos.gu.clone();
        let mut hv = pos.hv.clone();
        if s.wins(&mut gu, &mut hv, k, None, 0) {
            return Ok(k);
        }
    }
    Err(Error::CapExceeded(format!(
        "Spoiler does not win within {extra_rounds_cap} rounds"
    )))
}

/// Minimum k such that Spoiler wins the k-round game, by direct search.
/// Independent of the value-based computation.
pub fn distinguishing_rank_minimax(g: &Graph, h: &Graph) -> Result<u32> {
    let cap = (g.order().max(h.order()) + 1) as u32;
    minimax_rank(g, h, None, &[], cap)
}

/// Minimum k such that Spoiler wins the k-round game switching boards at
/// most `a` times.
pub fn distinguishing_rank_alt_minimax(g: &Graph, h: &Graph, a: u32) -> Result<u32> {
    // with at most a switches Spoiler may need more rounds than D(G, H),
    // but never more than with pebbling one board exhaustively
    let cap = (g.order() + h.order() + 2) as u32;
    minimax_rank(g, h, Some(a), &[], cap)
}

/// One round of a replayed game.
#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub round: usize,
    pub side: Side,
    pub spoiler: usize,
    pub duplicator: usize,
}

/// An optimal-play trace of the k-round game won by Spoiler: Spoiler plays a
/// minimax-optimal move (lowest board G first, then lowest vertex);
/// Duplicator replies with the most resilient consistent answer.
pub fn game_trace(g: &Graph, h: &Graph, k: u32, budget: Option<u32>) -> Result<Vec<TraceEntry>> {
    let pair = GamePair::new(g, h);
    let mut s = Searcher {
        pair,
        budget,
        memo: HashMap::new(),
    };
    let mut gu: Vec<usize> = Vec::new();
    let mut hv: Vec<usize> = Vec::new();
    if !s.wins(&mut gu, &mut hv, k, None, 0) {
        return Err(Error::Precondition(format!(
            "Spoiler does not win within {k} rounds"
        )));
    }
    let mut trace = Vec::new();
    let mut last: Option<Side> = None;
    let mut used = 0u32;
    let mut rounds = k;
    while rounds > 0 {
        // find a winning Spoiler move
        let mut chosen: Option<(Side, usize)> = None;
        'outer: for side in [Side::G, Side::H] {
            let switching = last.is_some() && last != Some(side);
            let u2 = used + u32::from(switching);
            if let Some(b) = budget {
                if u2 > b {
                    continue;
                }
            }
            let (board, other) = (pair.board(side), pair.board(side.other()));
            for v in 0..board.order() {
                let mut wins = true;
                for w in 0..other.order() {
                    let (a, b) = match side {
                        Side::G => (v, w),
                        Side::H => (w, v),
                    };
                    let consistent = (0..gu.len()).all(|i| {
                        (gu[i] == a) == (hv[i] == b)
                            && pair.g.adjacent(gu[i], a) == pair.h.adjacent(hv[i], b)
                    });
                    if !consistent {
                        continue;
                    }
                    gu.push(a);
                    hv.push(b);
                    let w_wins = s.wins(&mut gu, &mut hv, rounds - 1, Some(side), u2);
                    gu.pop();
                    hv.pop();
                    if !w_wins {
                        wins = false;
                        break;
                    }
                }
                if wins {
                    chosen = Some((side, v));
                    break 'outer;
                }
            }
        }
        let (side, v) =
            chosen.ok_or_else(|| Error::Precondition("no winning move in trace".into()))?;
        let switching = last.is_some() && last != Some(side);
        used += u32::from(switching);
        // Duplicator: pick the consistent reply that survives the longest
        let other = pair.board(side.other());
        let mut best: Option<(u32, usize)> = None;
        for w in 0..other.order() {
            let (a, b) = match side {
                Side::G => (v, w),
                Side::H => (w, v),
            };
            let consistent = (0..gu.len()).all(|i| {
                (gu[i] == a) == (hv[i] == b)
                    && pair.g.adjacent(gu[i], a) == pair.h.adjacent(hv[i], b)
            });
            if !consistent {
                continue;
            }
            gu.push(a);
            hv.push(b);
            let mut resist = 0;
            for r in 1..rounds {
                if !s.wins(&mut gu, &mut hv, r, Some(side), used) {
                    resist = r;
                } else {
                    break;
                }
            }
            gu.pop();
            hv.pop();
            if best.map_or(true, |(br, _)| resist > br) {
                best = Some((resist, w));
            }
        }
        let w = best.map(|(_, w)| w).unwrap_or(0);
        let (a, b) = match side {
            Side::G => (v, w),
            Side::H => (w, v),
        };
        trace.push(TraceEntry {
            round: trace.len() + 1,
            side,
            spoiler: v,
            duplicator: w,
        });
        if best.is_none() {
            break; // every reply loses immediately
        }
        gu.push(a);
        hv.push(b);
        last = Some(side);
        rounds -= 1;
    }
    Ok(trace)
}

/// Play a Spoiler strategy against an exhaustive Duplicator. Returns true if
/// Spoiler wins within `rounds` rounds against every Duplicator reply,
/// respecting the switch budget when given. The strategy is called on every
/// reachable position; an out-of-range or budget-violating move is an error.
pub fn verify_strategy(
    strategy: &dyn SpoilerStrategy,
    g: &Graph,
    h: &Graph,
    rounds: u32,
    budget: Option<u32>,
    initial: &Position,
) -> Result<bool> {
    let pair = GamePair::new(g, h);
    if !initial.is_partial_iso(&pair) {
        return Ok(true);
    }
    run(strategy, &pair, initial, rounds, budget)
}

fn run(
    strategy: &dyn SpoilerStrategy,
    pair: &GamePair,
    pos: &Position,
    rounds: u32,
    budget: Option<u32>,
) -> Result<bool> {
    if rounds == 0 {
        return Ok(false);
    }
    let (side, v) = strategy.choose(pair, pos)?;
    if v >= pair.board(side).order() {
        return Err(Error::IllegalMove(format!(
            "vertex {v} out of range on {side:?}"
        )));
    }
    if let Some(b) = budget {
        let switching = pos.last_side().is_some() && pos.last_side() != Some(side);
        if pos.switches() + u32::from(switching) > b {
            return Err(Error::IllegalMove(format!(
                "switch to {side:?} exceeds alternation budget {b}"
            )));
        }
    }
    let other = pair.board(side.other());
    for w in 0..other.order() {
        let (a, b) = match side {
            Side::G => (v, w),
            Side::H => (w, v),
        };
        if !pos.extension_consistent(pair, a, b) {
            continue; // Spoiler wins this line outright
        }
        let next = pos.push(side, v, w);
        if !run(strategy, pair, &next, rounds - 1, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct PebbleAll;

    impl SpoilerStrategy for PebbleAll {
        fn choose(&self, pair: &GamePair, pos: &Position) -> Result<Move> {
            // pebble every vertex of the larger board in order
            let side = if pair.g.order() >= pair.h.order() {
                Side::G
            } else {
                Side::H
            };
            Ok((side, pos.rounds_played()))
        }
    }

    #[test]
    fn minimax_matches_known_small_ranks() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p3 = Graph::path(3);
        let k3 = Graph::cycle(3);
        assert_eq!(distinguishing_rank_minimax(&k1, &k2).unwrap(), 2);
        assert_eq!(distinguishing_rank_minimax(&k3, &p3).unwrap(), 2);
    }

    #[test]
    fn zero_alternation_ranks() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let e2 = Graph::empty(2).unwrap();
        assert_eq!(distinguishing_rank_alt_minimax(&k1, &k2, 0).unwrap(), 2);
        assert_eq!(distinguishing_rank_alt_minimax(&k2, &e2, 0).unwrap(), 2);
    }

    #[test]
    fn cycles_five_and_six_need_more_than_two() {
        let r = distinguishing_rank_minimax(&Graph::cycle(5), &Graph::cycle(6)).unwrap();
        assert!(r > 2, "Duplicator survives more than log 2 + 1 rounds, got {r}");
    }

    #[test]
    fn naive_strategy_wins_on_k1_k2() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(verify_strategy(&PebbleAll, &k1, &k2, 2, None, &Position::empty()).unwrap());
    }

    #[test]
    fn no_strategy_beats_isomorphic_graphs() {
        let a = Graph::path(3);
        let b = Graph::path(3);
        for k in 1..=3 {
            assert!(!verify_strategy(&PebbleAll, &a, &b, k, None, &Position::empty()).unwrap());
        }
    }

    #[test]
    fn trace_is_a_winning_play() {
        let k1 = Graph::empty(1).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let t = game_trace(&k1, &k2, 2, None).unwrap();
        assert!(!t.is_empty());
        assert!(t.len() <= 2);
    }
}
