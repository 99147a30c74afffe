use std::collections::HashMap;

use thiserror::Error;

use super::hf::{HfId, HfPool};

/// Default ceiling on universe size. Enumeration cost is checked with
/// arithmetic before any layer is materialized, so asking for an
/// astronomically large universe fails fast instead of thrashing.
pub const DEFAULT_CAP: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error(
        "universe would contain {required} objects at rank {rank} (cap {cap}); \
         lower the rank or atom count, or raise the cap"
    )]
    CapExceeded { rank: u32, required: String, cap: u64 },
}

/// A finite quantification domain: a set of interned objects closed under
/// membership (every element of an element is in the universe), with a
/// reverse-membership index for the evaluator.
#[derive(Debug, Clone)]
pub struct Universe {
    /// Canonically sorted, duplicate-free.
    pub elements: Vec<HfId>,
    /// Same contents as `elements`, for O(1) membership tests.
    pub contains: std::collections::HashSet<HfId>,
    /// containers[&x] = every universe element with x as a member.
    pub containers: HashMap<HfId, Vec<HfId>>,
    pub atom_count: u32,
}

impl Universe {
    pub fn from_elements(pool: &HfPool, mut elements: Vec<HfId>, atom_count: u32) -> Universe {
        elements.sort_by(|&a, &b| pool.cmp(a, b));
        elements.dedup();
        let contains: std::collections::HashSet<HfId> = elements.iter().copied().collect();
        let mut containers: HashMap<HfId, Vec<HfId>> = HashMap::new();
        for &u in &elements {
            for &x in pool.elems(u) {
                debug_assert!(
                    contains.contains(&x),
                    "universe not transitively closed at {}",
                    pool.render(u)
                );
                containers.entry(x).or_default().push(u);
            }
        }
        Universe {
            elements,
            contains,
            containers,
            atom_count,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Universes without atoms are extensional: distinct objects differ in
    /// their members. Atoms break that, which is the interesting regime for
    /// anything that tries to name "the" empty set.
    pub fn is_extensional(&self) -> bool {
        self.atom_count == 0
    }

    pub fn containers_of(&self, x: HfId) -> &[HfId] {
        self.containers.get(&x).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Count of rank <= r objects over `atoms` atoms: atoms plus all subsets of
/// the previous layer. Returns None once the count leaves u64 range.
fn layer_size(prev: u64, atoms: u64) -> Option<u64> {
    if prev >= 63 {
        return None;
    }
    1u64.checked_shl(prev as u32)?.checked_add(atoms)
}

/// Every object of rank at most `max_rank` built from `atom_count` atoms.
/// Rank 0 holds the atoms, rank 1 adds the empty set and sets of atoms, and
/// each further rank adds all sets over the layer below. Fails before
/// allocating anything when the final layer would exceed `cap`.
pub fn hf_universe(
    pool: &mut HfPool,
    max_rank: u32,
    atom_count: u32,
    cap: u64,
) -> Result<Universe, UniverseError> {
    // Arithmetic pre-check across all layers.
    let mut size = atom_count as u64;
    for rank in 1..=max_rank {
        match layer_size(size, atom_count as u64) {
            Some(next) if next <= cap => size = next,
            bigger => {
                let required = match bigger {
                    Some(n) => n.to_string(),
                    None => format!("more than 2^{size}"),
                };
                return Err(UniverseError::CapExceeded {
                    rank,
                    required,
                    cap,
                });
            }
        }
    }

    let mut layer: Vec<HfId> = (0..atom_count).map(|i| pool.atom(i)).collect();
    for _ in 1..=max_rank {
        let prev = layer.clone();
        let n = prev.len();
        // All subsets of the previous layer, plus the atoms again.
        let mut next: Vec<HfId> = (0..atom_count).map(|i| pool.atom(i)).collect();
        for mask in 0u64..(1u64 << n) {
            let elems: Vec<HfId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| prev[i]).collect();
            next.push(pool.set_of(elems));
        }
        next.sort_by(|&a, &b| pool.cmp(a, b));
        next.dedup();
        layer = next;
    }
    Ok(Universe::from_elements(pool, layer, atom_count))
}

/// C(n, 0) + ... + C(n, k), saturating into None beyond u64.
fn subsets_up_to(n: u64, k: u64) -> Option<u64> {
    let mut total: u64 = 0;
    let mut choose: u64 = 1;
    for i in 0..=k.min(n) {
        total = total.checked_add(choose)?;
        // choose = C(n, i+1) from C(n, i)
        if i < n {
            choose = choose.checked_mul(n - i)?.checked_div(i + 1)?;
        }
    }
    Some(total)
}

/// Like [`hf_universe`] but every set along the way has at most `max_card`
/// members. Keeps rank-4 universes at desk scale where the unrestricted
/// power-set tower explodes.
pub fn hf_universe_bounded_card(
    pool: &mut HfPool,
    max_rank: u32,
    atom_count: u32,
    max_card: u32,
    cap: u64,
) -> Result<Universe, UniverseError> {
    let mut size = atom_count as u64;
    for rank in 1..=max_rank {
        match subsets_up_to(size, max_card as u64)
            .and_then(|s| s.checked_add(atom_count as u64))
        {
            Some(next) if next <= cap => size = next,
            bigger => {
                let required = match bigger {
                    Some(n) => n.to_string(),
                    None => "more than 2^64".into(),
                };
                return Err(UniverseError::CapExceeded {
                    rank,
                    required,
                    cap,
                });
            }
        }
    }

    let mut layer: Vec<HfId> = (0..atom_count).map(|i| pool.atom(i)).collect();
    for _ in 1..=max_rank {
        let prev = layer.clone();
        let mut next: Vec<HfId> = (0..atom_count).map(|i| pool.atom(i)).collect();
        // Enumerate subsets of size <= max_card by recursive choice.
        let mut chosen: Vec<HfId> = Vec::new();
        fn rec(
            pool: &mut HfPool,
            prev: &[HfId],
            start: usize,
            left: u32,
            chosen: &mut Vec<HfId>,
            out: &mut Vec<HfId>,
        ) {
            out.push(pool.set_of(chosen.clone()));
            if left == 0 {
                return;
            }
            for i in start..prev.len() {
                chosen.push(prev[i]);
                rec(pool, prev, i + 1, left - 1, chosen, out);
                chosen.pop();
            }
        }
        rec(pool, &prev, 0, max_card, &mut chosen, &mut next);
        next.sort_by(|&a, &b| pool.cmp(a, b));
        next.dedup();
        layer = next;
    }
    Ok(Universe::from_elements(pool, layer, atom_count))
}

/// Transitive closure of a seed list: the seeds plus everything
/// hereditarily inside them, canonically sorted.
pub fn closure_universe(pool: &HfPool, seeds: &[HfId]) -> Vec<HfId> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack: Vec<HfId> = seeds.to_vec();
    while let Some(x) = stack.pop() {
        if seen.insert(x) {
            out.push(x);
            stack.extend(pool.elems(x).iter().copied());
        }
    }
    out.sort_by(|&a, &b| pool.cmp(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_three_no_atoms_has_four_objects() {
        let mut pool = HfPool::new();
        let u = hf_universe(&mut pool, 3, 0, DEFAULT_CAP).unwrap();
        let shown: Vec<String> = u.elements.iter().map(|&x| pool.render(x)).collect();
        assert_eq!(shown, vec!["0", "{0}", "{0, {0}}", "{{0}}"]);
    }

    #[test]
    fn rank_four_no_atoms_has_sixteen_objects() {
        let mut pool = HfPool::new();
        let u = hf_universe(&mut pool, 4, 0, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 16);
        assert!(u.is_extensional());
    }

    #[test]
    fn rank_one_with_two_atoms() {
        let mut pool = HfPool::new();
        let u = hf_universe(&mut pool, 1, 2, DEFAULT_CAP).unwrap();
        // a0, a1, 0, {a0}, {a1}, {a0, a1}
        assert_eq!(u.len(), 6);
        assert!(!u.is_extensional());
        let memberless = u
            .elements
            .iter()
            .filter(|&&x| pool.is_memberless(x))
            .count();
        assert_eq!(memberless, 3);
    }

    #[test]
    fn deep_towers_fail_by_arithmetic() {
        let mut pool = HfPool::new();
        let before = pool.len();
        let err = hf_universe(&mut pool, 4, 2, DEFAULT_CAP).unwrap_err();
        match err {
            UniverseError::CapExceeded { rank, required, .. } => {
                assert_eq!(rank, 3);
                assert_eq!(required, "more than 2^66");
            }
        }
        // Nothing was interned on the failing path.
        assert_eq!(pool.len(), before);
    }

    #[test]
    fn universes_are_transitively_closed_with_container_index() {
        let mut pool = HfPool::new();
        let u = hf_universe(&mut pool, 4, 0, DEFAULT_CAP).unwrap();
        for &x in &u.elements {
            for &m in pool.elems(x) {
                assert!(u.contains.contains(&m));
                assert!(u.containers_of(m).contains(&x));
            }
        }
    }

    #[test]
    fn bounded_card_universe_counts() {
        let mut pool = HfPool::new();
        // Rank 2, two atoms, sets of at most 2 elements:
        // layer 1: a0 a1 0 {a0} {a1} {a0,a1}  -> 6 objects
        // layer 2: atoms + C(6,0)+C(6,1)+C(6,2) = 2 + 1 + 6 + 15 = 24
        let u = hf_universe_bounded_card(&mut pool, 2, 2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 24);
        for &x in &u.elements {
            assert!(pool.elems(x).len() <= 2);
        }
    }

    #[test]
    fn bounded_card_matches_full_universe_when_card_is_loose() {
        let mut p1 = HfPool::new();
        let full = hf_universe(&mut p1, 3, 0, DEFAULT_CAP).unwrap();
        let mut p2 = HfPool::new();
        let bounded = hf_universe_bounded_card(&mut p2, 3, 0, 64, DEFAULT_CAP).unwrap();
        assert_eq!(full.len(), bounded.len());
    }

    #[test]
    fn closure_universe_pulls_in_members() {
        let mut pool = HfPool::new();
        let e = pool.empty_set();
        let s2 = pool.iter_singleton(e, 2);
        let c = closure_universe(&pool, &[s2]);
        let shown: Vec<String> = c.iter().map(|&x| pool.render(x)).collect();
        assert_eq!(shown, vec!["0", "{0}", "{{0}}"]);
    }
}
