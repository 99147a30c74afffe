//! Formula syntax: AST, concrete grammar, renderer, alpha-renaming.

mod ast;
mod json;
mod parse;
mod print;
mod rectify;

pub use ast::{
    and, and_all, eq, eq_zero, exists, exists_many, forall, implies, mem, not, or, or_all,
    quantify, Const, Formula, FreshSupply, Quant, Var,
};
pub use json::{formula_from_json, formula_to_json, JsonError};
pub use parse::{parse, parse_with, ParseError, ParseOptions};
pub use print::render;
pub use rectify::{is_rectified, rectify};
