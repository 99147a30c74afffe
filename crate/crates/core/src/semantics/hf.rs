use std::cmp::Ordering;
use std::collections::HashMap;

/// Handle to an interned hereditarily finite object. Equal ids mean equal
/// objects and vice versa, so equality tests never recurse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HfId(u32);

impl HfId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An atom (an urelement: memberless but distinct from the empty set and
/// from every other atom), or a set of previously interned objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Atom(u32),
    /// Sorted by [`HfPool::cmp`] and deduplicated.
    Set(Vec<HfId>),
}

/// Hash-consing pool. Sets are stored with canonically sorted element lists,
/// so structurally equal objects always intern to the same id.
#[derive(Debug, Default)]
pub struct HfPool {
    nodes: Vec<Node>,
    ranks: Vec<u32>,
    index: HashMap<Node, HfId>,
}

impl HfPool {
    pub fn new() -> HfPool {
        HfPool::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn intern(&mut self, node: Node) -> HfId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let rank = match &node {
            Node::Atom(_) => 0,
            Node::Set(elems) => {
                1 + elems
                    .iter()
                    .map(|e| self.ranks[e.index()])
                    .max()
                    .unwrap_or(0)
            }
        };
        let id = HfId(u32::try_from(self.nodes.len()).expect("pool overflow"));
        self.nodes.push(node.clone());
        self.ranks.push(rank);
        self.index.insert(node, id);
        id
    }

    pub fn atom(&mut self, i: u32) -> HfId {
        self.intern(Node::Atom(i))
    }

    pub fn empty_set(&mut self) -> HfId {
        self.intern(Node::Set(Vec::new()))
    }

    /// Intern a set given its elements in any order, with duplicates.
    pub fn set_of(&mut self, mut elems: Vec<HfId>) -> HfId {
        elems.sort_by(|&a, &b| self.cmp(a, b));
        elems.dedup();
        self.intern(Node::Set(elems))
    }

    pub fn singleton(&mut self, x: HfId) -> HfId {
        self.intern(Node::Set(vec![x]))
    }

    /// `n`-fold singleton: `iter_singleton(x, 0) = x`,
    /// `iter_singleton(x, 2) = {{x}}`.
    pub fn iter_singleton(&mut self, x: HfId, n: u32) -> HfId {
        let mut acc = x;
        for _ in 0..n {
            acc = self.singleton(acc);
        }
        acc
    }

    /// The pair `<a, b> = {{{a}}, {{b}, e}}` where `e` is the empty-set
    /// representative (canonically the empty set; an atom when probing
    /// universes with several memberless objects).
    pub fn pair(&mut self, a: HfId, b: HfId, empty_rep: HfId) -> HfId {
        let fst = self.iter_singleton(a, 2);
        let sb = self.singleton(b);
        let snd = self.set_of(vec![sb, empty_rep]);
        self.set_of(vec![fst, snd])
    }

    pub fn is_atom(&self, id: HfId) -> bool {
        matches!(self.nodes[id.index()], Node::Atom(_))
    }

    pub fn is_set(&self, id: HfId) -> bool {
        !self.is_atom(id)
    }

    /// True for the canonical empty set only, not for atoms.
    pub fn is_empty_set(&self, id: HfId) -> bool {
        matches!(&self.nodes[id.index()], Node::Set(e) if e.is_empty())
    }

    /// True for anything with no members: the empty set or any atom.
    pub fn is_memberless(&self, id: HfId) -> bool {
        match &self.nodes[id.index()] {
            Node::Atom(_) => true,
            Node::Set(e) => e.is_empty(),
        }
    }

    /// Elements in canonical order; empty for atoms.
    pub fn elems(&self, id: HfId) -> &[HfId] {
        match &self.nodes[id.index()] {
            Node::Atom(_) => &[],
            Node::Set(e) => e,
        }
    }

    pub fn contains(&self, container: HfId, x: HfId) -> bool {
        self.elems(container).contains(&x)
    }

    /// Atoms have rank 0, the empty set rank 1, other sets one more than
    /// their highest-ranked element.
    pub fn rank(&self, id: HfId) -> u32 {
        self.ranks[id.index()]
    }

    /// Total order: by rank, then atoms by index, then sets lexicographically
    /// over their (already canonically sorted) elements.
    pub fn cmp(&self, a: HfId, b: HfId) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (ra, rb) = (self.ranks[a.index()], self.ranks[b.index()]);
        if ra != rb {
            return ra.cmp(&rb);
        }
        match (&self.nodes[a.index()], &self.nodes[b.index()]) {
            (Node::Atom(i), Node::Atom(j)) => i.cmp(j),
            (Node::Atom(_), Node::Set(_)) => Ordering::Less,
            (Node::Set(_), Node::Atom(_)) => Ordering::Greater,
            (Node::Set(ea), Node::Set(eb)) => {
                for (&x, &y) in ea.iter().zip(eb.iter()) {
                    match self.cmp(x, y) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                ea.len().cmp(&eb.len())
            }
        }
    }

    /// The object and everything hereditarily inside it.
    pub fn closure_with(&self, id: HfId) -> Vec<HfId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        let mut seen = std::collections::HashSet::new();
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                out.push(x);
                stack.extend(self.elems(x).iter().copied());
            }
        }
        out.sort_by(|&a, &b| self.cmp(a, b));
        out
    }

    /// Braces notation: `0` for the empty set, `a<i>` for atoms, elements in
    /// canonical order.
    pub fn render(&self, id: HfId) -> String {
        match &self.nodes[id.index()] {
            Node::Atom(i) => format!("a{i}"),
            Node::Set(e) if e.is_empty() => "0".into(),
            Node::Set(e) => {
                let inner: Vec<String> = e.iter().map(|&x| self.render(x)).collect();
                format!("{{{}}}", inner.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_canonical() {
        let mut p = HfPool::new();
        let e = p.empty_set();
        let se = p.singleton(e);
        let a = p.set_of(vec![se, e]);
        let b = p.set_of(vec![e, se, e]);
        assert_eq!(a, b);
        assert_eq!(p.render(a), "{0, {0}}");
    }

    #[test]
    fn ranks() {
        let mut p = HfPool::new();
        let at = p.atom(0);
        let e = p.empty_set();
        let se = p.singleton(e);
        let sse = p.singleton(se);
        assert_eq!(p.rank(at), 0);
        assert_eq!(p.rank(e), 1);
        assert_eq!(p.rank(se), 2);
        assert_eq!(p.rank(sse), 3);
        let mixed = p.set_of(vec![e, se]);
        assert_eq!(p.rank(mixed), 3);
        let sa = p.singleton(at);
        assert_eq!(p.rank(sa), 1);
    }

    #[test]
    fn atoms_are_memberless_but_not_the_empty_set() {
        let mut p = HfPool::new();
        let at = p.atom(3);
        let e = p.empty_set();
        assert_ne!(at, e);
        assert!(p.is_memberless(at));
        assert!(!p.is_empty_set(at));
        assert!(p.is_empty_set(e));
        assert!(p.elems(at).is_empty());
    }

    #[test]
    fn pair_shape() {
        let mut p = HfPool::new();
        let e = p.empty_set();
        let x = p.singleton(e);
        let pr = p.pair(x, e, e);
        // <{0}, 0> = {{{{0}}}, {{0}, 0}}
        assert_eq!(p.render(pr), "{{0, {0}}, {{{0}}}}");
        let fst = p.iter_singleton(x, 2);
        let sb = p.singleton(e);
        let snd = p.set_of(vec![sb, e]);
        assert_eq!(p.elems(pr).len(), 2);
        assert!(p.contains(pr, fst));
        assert!(p.contains(pr, snd));
    }

    #[test]
    fn pair_is_injective_at_desk_scale() {
        let mut p = HfPool::new();
        let e = p.empty_set();
        let objs = [e, p.singleton(e), p.atom(0), p.iter_singleton(e, 2)];
        let mut seen = HashMap::new();
        for &a in &objs {
            for &b in &objs {
                let pr = p.pair(a, b, e);
                assert!(seen.insert(pr, (a, b)).is_none(), "pair collision");
            }
        }
    }

    #[test]
    fn total_order_sorts_by_rank_first() {
        let mut p = HfPool::new();
        let at = p.atom(0);
        let e = p.empty_set();
        let se = p.singleton(e);
        assert_eq!(p.cmp(at, e), Ordering::Less);
        assert_eq!(p.cmp(e, se), Ordering::Less);
        assert_eq!(p.cmp(se, se), Ordering::Equal);
        let sat = p.singleton(at);
        // rank(sat) = 1 = rank(e); sets compare lexicographically; the empty
        // list is a proper prefix.
        assert_eq!(p.cmp(e, sat), Ordering::Less);
    }

    #[test]
    fn closure_contains_hereditary_members() {
        let mut p = HfPool::new();
        let e = p.empty_set();
        let se = p.singleton(e);
        let x = p.set_of(vec![se]);
        let c = p.closure_with(x);
        assert_eq!(c, vec![e, se, x]);
    }
}
