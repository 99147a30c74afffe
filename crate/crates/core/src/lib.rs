//! Acyclify rewrites stratified first-order formulas over `in`/`=` into
//! equivalent formulas whose variable graph is a forest, and checks the
//! equivalence over finite universes of hereditarily finite sets.
//!
//! The pipeline: parse a formula, stratify it (assign integer levels so that
//! membership raises the level by one and equality preserves it), then
//! replace every atom by a gadget that reads the variable's value out of a
//! single coding function. The coding function maps the i-th iterated
//! singleton of the empty set to an iterated singleton of the i-th
//! variable's value, so distinct variables never meet in an atom and the
//! output's variable graph is a tree rooted at the coding variable.
//!
//! The [`harness`] module validates the construction at desk scale: it
//! enumerates every assignment over a small transitively closed universe,
//! evaluates input and output, and reports disagreements. Universes may
//! contain atoms (distinct empty objects), which is exactly the regime where
//! the empty-set reading of the coding apparatus starts to matter.

pub mod analysis;
pub mod formula;
pub mod par;
pub mod semantics;

pub use formula::{Const, Formula, FreshSupply, ParseError, ParseOptions, Var};
