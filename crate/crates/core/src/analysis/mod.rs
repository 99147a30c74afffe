//! Static analysis of formulas: level assignment, the variable graph with
//! forest certificates and cycle witnesses, prenex normal form, and the
//! identity indices that fix each variable's slot in a coding function.

mod graph;
mod prenex;
mod stratify;

pub use graph::{check_acyclic, CycleWitness, Forest, GraphEdge, VariableGraph, Vertex};
pub use prenex::{to_prenex, PrenexForm};
pub use stratify::{stratify, AtomOcc, StratFailure, Stratification, WitnessStep};

use crate::formula::{Formula, Var};

/// Number each variable by first occurrence in a left-to-right scan of the
/// rendered text, 1-based. Binder occurrences count, so in
/// `E w. w in y` the index of `w` is 1 and of `y` is 2.
pub fn identity_indices(f: &Formula) -> Vec<(Var, usize)> {
    f.all_vars()
        .into_iter()
        .zip(1..)
        .map(|(v, i)| (v, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn indices_follow_first_occurrence() {
        let f = parse("x in y & z in y").unwrap();
        let idx = identity_indices(&f);
        assert_eq!(
            idx.iter()
                .map(|(v, i)| (v.as_str().to_string(), *i))
                .collect::<Vec<_>>(),
            vec![("x".into(), 1), ("y".into(), 2), ("z".into(), 3)]
        );
    }

    #[test]
    fn binders_count_as_occurrences() {
        let f = parse("E w. w in y").unwrap();
        let idx = identity_indices(&f);
        assert_eq!(idx[0].0.as_str(), "w");
        assert_eq!(idx[1], ("y".into(), 2));
    }
}
