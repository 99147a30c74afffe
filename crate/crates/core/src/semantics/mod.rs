//! Finite set-theoretic semantics: hereditarily finite objects (sets plus
//! optional atoms), bounded universes, formula evaluation, and the coding
//! functions that pack an assignment into a single set.

mod coding;
mod eval;
mod hf;
mod naive;
mod universe;

pub use coding::{
    build_coding_function, decode_wiener, peel_singletons, rank_bound, CodingItem, WienerParts,
};
pub use eval::Evaluator;
pub use hf::{HfId, HfPool};
pub use naive::naive_eval;
pub use universe::{
    closure_universe, hf_universe, hf_universe_bounded_card, Universe, UniverseError,
    DEFAULT_CAP,
};
