//! One-way-tape Turing machines, their simulator, and the compiler into
//! first-order sentences about graphs.

pub mod compile;
pub mod machine;
pub mod model;
pub mod run;

pub use compile::{
    compile, compile_prenex, prefix_block_sizes, prefix_of, CompiledSentence, DesignatedVars,
};
pub use machine::{
    corpus_machine, looping_machine, Action, Instruction, Symbol, TuringMachine,
};
pub use model::{
    build_model, canonical_coordinatized, canonical_ladder, verify_built, verify_model, Model,
    ModelLayout, ModelReport,
};
pub use run::{run_tm, ComputationTrace, RunOutcome};
