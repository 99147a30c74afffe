use super::hf::{HfId, HfPool};

/// One variable's entry in a coding function: its 1-based index in the
/// identity ordering, its (negative) level, and its assigned value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodingItem {
    pub index: usize,
    pub level: i64,
    pub value: HfId,
}

/// The intended witness for the translation's function variable: one pair
/// per item, whose first component is the index-fold singleton of the empty
/// representative and whose second is the (-level)-fold singleton of the
/// value. `empty_rep` is substituted for the empty set throughout, in the
/// iterated singletons and in the pair scaffolds alike, so a universe with
/// atoms can exercise every reading of "empty".
pub fn build_coding_function(pool: &mut HfPool, items: &[CodingItem], empty_rep: HfId) -> HfId {
    debug_assert!(pool.is_memberless(empty_rep));
    let mut pairs = Vec::with_capacity(items.len());
    for item in items {
        debug_assert!(item.index >= 1);
        debug_assert!(item.level <= -1);
        let first = pool.iter_singleton(empty_rep, item.index as u32);
        let second = pool.iter_singleton(item.value, (-item.level) as u32);
        pairs.push(pool.pair(first, second, empty_rep));
    }
    pool.set_of(pairs)
}

/// Upper bound on the rank of the coding function for any assignment built
/// from `items`, where indices in `1..=n` missing from `items` carry no
/// pair. For an item at index i with level d the pair's rank is
/// 4 + max(i+1, rank(value) - d) when the empty representative is the
/// canonical empty set; an atom representative only lowers it.
pub fn rank_bound(pool: &HfPool, n: usize, items: &[CodingItem]) -> u32 {
    let mut best: i64 = 0;
    for i in 1..=n {
        let term = match items.iter().find(|it| it.index == i) {
            Some(it) => (i as i64 + 1).max(pool.rank(it.value) as i64 - it.level),
            None => i as i64,
        };
        best = best.max(term);
    }
    (best + 4) as u32
}

/// The components recovered from a well-formed pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WienerParts {
    pub first: HfId,
    pub second: HfId,
    /// The memberless object used in the pair's scaffold.
    pub empty_rep: HfId,
}

/// Structural pair recognizer, written directly from the shape
/// {{{a}}, {{b}, e}} rather than through any formula machinery, so it can
/// serve as an independent oracle for the gadget that tests the same shape.
/// The two elements can never be confused: one has a single element, the
/// other two, and e (memberless) can never equal {b}.
pub fn decode_wiener(pool: &HfPool, candidate: HfId) -> Option<WienerParts> {
    if !pool.is_set(candidate) {
        return None;
    }
    let outer = pool.elems(candidate);
    if outer.len() != 2 {
        return None;
    }
    let sos = |id: HfId| {
        // {{a}}: a singleton whose element is a singleton.
        let e = pool.elems(id);
        if e.len() == 1 && pool.is_set(e[0]) && pool.elems(e[0]).len() == 1 {
            Some(pool.elems(e[0])[0])
        } else {
            None
        }
    };
    let (first, rest) = match (sos(outer[0]), sos(outer[1])) {
        (Some(a), None) => (a, outer[1]),
        (None, Some(a)) => (a, outer[0]),
        // Both or neither shaped like a first component: not a pair. Both
        // cannot in fact decode ambiguously (the second slot must have two
        // elements), so this also covers malformed candidates.
        _ => return None,
    };
    if !pool.is_set(rest) {
        return None;
    }
    let inner = pool.elems(rest);
    if inner.len() != 2 {
        return None;
    }
    let singleton = |id: HfId| pool.is_set(id) && pool.elems(id).len() == 1;
    let (b_wrap, e) = if singleton(inner[0]) && pool.is_memberless(inner[1]) {
        (inner[0], inner[1])
    } else if singleton(inner[1]) && pool.is_memberless(inner[0]) {
        (inner[1], inner[0])
    } else {
        return None;
    };
    Some(WienerParts {
        first,
        second: pool.elems(b_wrap)[0],
        empty_rep: e,
    })
}

/// Peel `depth` singleton layers; None if any layer is not a singleton set.
pub fn peel_singletons(pool: &HfPool, id: HfId, depth: u32) -> Option<HfId> {
    let mut cur = id;
    for _ in 0..depth {
        if !pool.is_set(cur) {
            return None;
        }
        let e = pool.elems(cur);
        if e.len() != 1 {
            return None;
        }
        cur = e[0];
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(index: usize, level: i64, value: HfId) -> CodingItem {
        CodingItem { index, level, value }
    }

    #[test]
    fn three_variable_function_decodes_back() {
        // Levels -2, -1, -2 at indices 1, 2, 3: second components are the
        // 2-, 1-, and 2-fold singletons of the values.
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let xv = p.singleton(zero); // {0}
        let yv = zero;
        let zv = p.set_of(vec![zero, xv]); // {0, {0}}
        let items = [item(1, -2, xv), item(2, -1, yv), item(3, -2, zv)];
        let f = build_coding_function(&mut p, &items, zero);
        assert_eq!(p.elems(f).len(), 3);
        for it in &items {
            let found = p
                .elems(f)
                .iter()
                .filter_map(|&pr| decode_wiener(&p, pr))
                .find(|w| peel_singletons(&p, w.first, it.index as u32) == Some(zero))
                .expect("pair for index present");
            assert_eq!(
                peel_singletons(&p, found.second, (-it.level) as u32),
                Some(it.value)
            );
            assert_eq!(found.empty_rep, zero);
        }
    }

    #[test]
    fn four_variable_function_has_expected_depths() {
        // Levels -2, -1, -2, -3.
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let v = p.singleton(zero);
        let items = [
            item(1, -2, v),
            item(2, -1, v),
            item(3, -2, zero),
            item(4, -3, v),
        ];
        let f = build_coding_function(&mut p, &items, zero);
        assert_eq!(p.elems(f).len(), 4);
        // Depth of the second component: rank(second) = rank(value) - level.
        for it in &items {
            let w = p
                .elems(f)
                .iter()
                .filter_map(|&pr| decode_wiener(&p, pr))
                .find(|w| peel_singletons(&p, w.first, it.index as u32) == Some(zero))
                .unwrap();
            assert_eq!(p.rank(w.second) as i64, p.rank(it.value) as i64 - it.level);
        }
    }

    #[test]
    fn single_variable_function() {
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let xv = p.singleton(zero);
        let f = build_coding_function(&mut p, &[item(1, -1, xv)], zero);
        assert_eq!(p.elems(f).len(), 1);
        let w = decode_wiener(&p, p.elems(f)[0]).unwrap();
        assert_eq!(w.first, p.singleton(zero));
        assert_eq!(w.second, p.singleton(xv));
    }

    #[test]
    fn atom_representative_threads_through_scaffold() {
        let mut p = HfPool::new();
        let a = p.atom(0);
        let zero = p.empty_set();
        let f = build_coding_function(&mut p, &[item(1, -1, zero)], a);
        let w = decode_wiener(&p, p.elems(f)[0]).unwrap();
        // First component iterates the atom, and the scaffold's memberless
        // slot is the atom too.
        assert_eq!(w.first, p.singleton(a));
        assert_eq!(w.empty_rep, a);
        assert_eq!(w.second, p.singleton(zero));
    }

    #[test]
    fn non_pairs_do_not_decode() {
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let s1 = p.singleton(zero);
        let s2 = p.singleton(s1);
        assert!(decode_wiener(&p, zero).is_none());
        assert!(decode_wiener(&p, s1).is_none());
        // Two elements but both first-component shaped.
        let s3 = p.singleton(s2);
        let twin = p.set_of(vec![s2, s3]);
        assert!(decode_wiener(&p, twin).is_none());
        // {{b}, e} alone is not a pair.
        let half = p.set_of(vec![s1, zero]);
        assert!(decode_wiener(&p, half).is_none());
        let a = p.atom(1);
        assert!(decode_wiener(&p, a).is_none());
    }

    #[test]
    fn decode_inverts_build_even_with_tricky_values() {
        // A value that is itself pair-shaped must not confuse the decoder.
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let inner_pair = p.pair(zero, zero, zero);
        let f = build_coding_function(&mut p, &[item(1, -1, inner_pair)], zero);
        let w = decode_wiener(&p, p.elems(f)[0]).unwrap();
        assert_eq!(w.second, p.singleton(inner_pair));
        assert_eq!(peel_singletons(&p, w.second, 1), Some(inner_pair));
    }

    #[test]
    fn bound_dominates_built_rank() {
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let one = p.singleton(zero);
        let a = p.atom(0);
        let cases: Vec<Vec<CodingItem>> = vec![
            vec![item(1, -2, one), item(2, -1, one)],
            vec![item(1, -2, a), item(2, -1, a)],
            vec![item(1, -1, zero)],
            vec![item(1, -3, one), item(2, -2, zero), item(3, -1, a)],
        ];
        for items in &cases {
            let f = build_coding_function(&mut p, items, zero);
            let bound = rank_bound(&p, items.len(), items);
            assert!(
                p.rank(f) <= bound,
                "rank {} exceeds bound {bound}",
                p.rank(f)
            );
        }
    }

    #[test]
    fn bound_values_are_pinned() {
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let a = p.atom(0);
        // Two variables at levels -2 and -1 with rank-1 values.
        assert_eq!(
            rank_bound(&p, 2, &[item(1, -2, zero), item(2, -1, zero)]),
            7
        );
        // Atom values keep the same bound: the index term dominates.
        assert_eq!(rank_bound(&p, 2, &[item(1, -2, a), item(2, -1, a)]), 7);
        // No assignment at all: each missing index contributes itself.
        assert_eq!(rank_bound(&p, 1, &[]), 5);
    }

    #[test]
    fn peeling_stops_on_non_singletons() {
        let mut p = HfPool::new();
        let zero = p.empty_set();
        let one = p.singleton(zero);
        let two = p.set_of(vec![zero, one]);
        assert_eq!(peel_singletons(&p, one, 1), Some(zero));
        assert_eq!(peel_singletons(&p, one, 0), Some(one));
        assert_eq!(peel_singletons(&p, two, 1), None);
        assert_eq!(peel_singletons(&p, zero, 1), None);
        let a = p.atom(0);
        assert_eq!(peel_singletons(&p, a, 1), None);
        assert_eq!(peel_singletons(&p, a, 0), Some(a));
    }
}