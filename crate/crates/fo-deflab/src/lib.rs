//! A workbench for first-order definability of finite graphs.
//!
//! The library works with sentences over the vocabulary `{~, =}` (adjacency
//! and equality) and measures how succinctly such sentences can pin down a
//! finite graph up to isomorphism. It provides:
//!
//! * [`formula`] — a first-order AST with parsing, printing, quantifier rank,
//!   alternation number, length, negation normal form, prenex normal form and
//!   prefix-class analysis;
//! * [`graph`] — finite graphs and rooted trees, metric computations,
//!   isomorphism and automorphism machinery, and exhaustive enumeration;
//! * [`semantics`] — a model checker for formulas on finite graphs;
//! * [`efgame`] — Ehrenfeucht game values, distinguishing ranks, synthesis of
//!   defining sentences, and strategy verification against an exhaustive
//!   Duplicator;
//! * [`trees`] — diverging and ranked tree families, executable Spoiler
//!   strategies, and rooted-tree minimization up to game equivalence;
//! * [`tm`] — one-way-tape Turing machines and the compiler that turns a
//!   machine into a sentence whose finite models encode its halting
//!   computation;
//! * [`succinct`] — tower/log* arithmetic, bound recurrences, and brute-force
//!   succinctness tables;
//! * [`universal`] — universal sets of low-alternation sentences of bounded
//!   quantifier rank.

pub mod error;
pub mod formula;
pub mod graph;
pub mod semantics;
pub mod efgame;
pub mod trees;
pub mod tm;
pub mod succinct;
pub mod universal;

pub use error::{Error, Result};

/// Resource caps and reproducibility knobs shared by the library and the CLI.
#[derive(Debug, Clone)]
pub struct Config {
    /// Maximum number of rounds / quantifier rank for game-value recursion.
    pub max_k: u32,
    /// Maximum graph order accepted by the game-value recursion.
    pub max_order: usize,
    /// Maximum order for exhaustive graph enumeration.
    pub max_enumeration: usize,
    /// Decimal-digit cap before big-integer results turn symbolic.
    pub digit_cap: usize,
    /// Seed for all sampled checks.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_k: 7,
            max_order: 10,
            max_enumeration: 9,
            digit_cap: 40_000,
            seed: 0,
        }
    }
}

/// Number of worker threads honoring the `FO_DEFLAB_THREADS` cap.
pub fn worker_threads() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("FO_DEFLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(n) if n >= 1 => available.min(n),
        _ => available,
    }
}
