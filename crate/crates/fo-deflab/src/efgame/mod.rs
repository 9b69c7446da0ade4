//! Ehrenfeucht game machinery: game values, distinguishing ranks, synthesis
//! of defining formulas, and verification of Spoiler strategies against an
//! exhaustive Duplicator.

mod defining;
mod game;
mod value;

pub use defining::{
    bounded_definability_rank, defining_formula, value_formula, value_formula_for_value,
    DefiningCertificate, ValueUniverse,
};
pub use game::{
    distinguishing_rank_alt_minimax, distinguishing_rank_minimax, game_trace, verify_strategy,
    GamePair, Move, Position, Side, SpoilerStrategy, TraceEntry,
};
pub use value::{distinguishing_rank, AtomicType, GraphId, ValueCtx, ValueData, ValueId};
