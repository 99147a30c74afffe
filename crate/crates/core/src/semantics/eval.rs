use std::collections::{HashMap, HashSet};

use crate::formula::{Formula, Var};

use super::hf::{HfId, HfPool};
use super::universe::Universe;

/// Optimized evaluator. The formula compiles once into an IR with integer
/// variable slots, flattened and cost-ordered connectives, and desugared
/// implication. Evaluation then prunes quantifier ranges through sound
/// candidate analysis and memoizes quantified subformulas, which is what
/// makes translated formulas (one big existential over a coding function,
/// guarded chains below it) tractable over universes of a few thousand
/// objects. Results are checked against [`super::naive_eval`] in tests; the
/// two must agree everywhere.
///
/// An evaluator may carry an alternative domain for a named set of
/// variables: quantifiers binding those variables range over the alternative
/// element list instead of the full universe. The equivalence harness uses
/// this to keep a translated formula's original variables on the small base
/// universe while its coding apparatus quantifies over the enriched one.
pub struct Evaluator<'p> {
    pool: &'p HfPool,
    universe: &'p Universe,
    empty_id: Option<HfId>,
    alt: Option<AltDomain>,
    root: Ir,
    slots: HashMap<Var, Slot>,
    nslots: usize,
    memo: HashMap<(u32, Box<[HfId]>), bool>,
}

struct AltDomain {
    elems: Vec<HfId>,
    set: HashSet<HfId>,
}

type Slot = usize;

#[derive(Debug)]
enum Ir {
    Mem(Slot, Slot),
    Eq(Slot, Slot),
    EqZero(Slot),
    Not(Box<Ir>),
    And(Vec<Ir>),
    Or(Vec<Ir>),
    Exists(Slot, Box<Ir>, Meta),
    Forall(Slot, Box<Ir>, Meta),
}

#[derive(Debug)]
struct Meta {
    id: u32,
    /// Slots free in this node (binder excluded), sorted; the memo key.
    free: Vec<Slot>,
    /// Whether the binder quantifies over the alternative domain.
    alt: bool,
    /// Whether the binder occurs in the body at all.
    used: bool,
}

impl<'p> Evaluator<'p> {
    pub fn new(pool: &'p HfPool, universe: &'p Universe, f: &Formula) -> Evaluator<'p> {
        Evaluator::build(pool, universe, f, None)
    }

    /// Variables in `alt_vars` quantify over `alt_elems`; everything else
    /// over the universe.
    pub fn with_alt_domain(
        pool: &'p HfPool,
        universe: &'p Universe,
        f: &Formula,
        alt_vars: &HashSet<Var>,
        alt_elems: Vec<HfId>,
    ) -> Evaluator<'p> {
        Evaluator::build(pool, universe, f, Some((alt_vars, alt_elems)))
    }

    fn build(
        pool: &'p HfPool,
        universe: &'p Universe,
        f: &Formula,
        alt: Option<(&HashSet<Var>, Vec<HfId>)>,
    ) -> Evaluator<'p> {
        let mut slots = HashMap::new();
        let mut names = Vec::new();
        let mut next_id = 0;
        let alt_names = alt.as_ref().map(|(vs, _)| *vs);
        let (root, _) = compile(f, &mut slots, &mut names, &mut next_id, alt_names);
        let empty_id = universe
            .elements
            .iter()
            .copied()
            .find(|&x| pool.is_empty_set(x));
        Evaluator {
            pool,
            universe,
            empty_id,
            alt: alt.map(|(_, elems)| AltDomain {
                set: elems.iter().copied().collect(),
                elems,
            }),
            root,
            slots,
            nslots: names.len(),
            memo: HashMap::new(),
        }
    }

    /// Evaluate under the given assignment of free variables. Entries for
    /// variables the formula never mentions are ignored. The memo persists
    /// across calls, so reusing one evaluator for many assignments is much
    /// cheaper than rebuilding it.
    pub fn eval(&mut self, assignment: &[(Var, HfId)]) -> bool {
        let mut env: Vec<Option<HfId>> = vec![None; self.nslots];
        for (v, val) in assignment {
            if let Some(&s) = self.slots.get(v) {
                env[s] = Some(*val);
            }
        }
        let sh = Shared {
            pool: self.pool,
            universe: self.universe,
            empty_id: self.empty_id,
            alt: self.alt.as_ref(),
        };
        go(&self.root, &mut env, sh, &mut self.memo)
    }
}

#[derive(Clone, Copy)]
struct Shared<'a> {
    pool: &'a HfPool,
    universe: &'a Universe,
    empty_id: Option<HfId>,
    alt: Option<&'a AltDomain>,
}

impl<'a> Shared<'a> {
    fn domain(&self, alt: bool) -> &'a [HfId] {
        match (alt, self.alt) {
            (true, Some(d)) => &d.elems,
            _ => &self.universe.elements,
        }
    }

    fn in_domain(&self, alt: bool, x: HfId) -> bool {
        match (alt, self.alt) {
            (true, Some(d)) => d.set.contains(&x),
            _ => self.universe.contains.contains(&x),
        }
    }
}

// ---------------------------------------------------------------------------
// Compilation

fn compile(
    f: &Formula,
    slots: &mut HashMap<Var, Slot>,
    names: &mut Vec<Var>,
    next_id: &mut u32,
    alt_names: Option<&HashSet<Var>>,
) -> (Ir, Vec<Slot>) {
    fn slot_of(v: &Var, slots: &mut HashMap<Var, Slot>, names: &mut Vec<Var>) -> Slot {
        if let Some(&s) = slots.get(v) {
            return s;
        }
        let s = names.len();
        names.push(v.clone());
        slots.insert(v.clone(), s);
        s
    }
    match f {
        Formula::Mem(a, b) => {
            let (sa, sb) = (slot_of(a, slots, names), slot_of(b, slots, names));
            (Ir::Mem(sa, sb), norm(vec![sa, sb]))
        }
        Formula::Eq(a, b) => {
            let (sa, sb) = (slot_of(a, slots, names), slot_of(b, slots, names));
            (Ir::Eq(sa, sb), norm(vec![sa, sb]))
        }
        Formula::EqConst(a, _) => {
            let sa = slot_of(a, slots, names);
            (Ir::EqZero(sa), vec![sa])
        }
        Formula::Not(x) => {
            let (ir, free) = compile(x, slots, names, next_id, alt_names);
            (Ir::Not(Box::new(ir)), free)
        }
        Formula::And(..) | Formula::Or(..) | Formula::Implies(..) => {
            // Flatten chains of the same connective; implication desugars to
            // a disjunction so only And/Or/Not remain.
            let is_and = matches!(f, Formula::And(..));
            let mut parts = Vec::new();
            let mut free = Vec::new();
            collect(f, is_and, slots, names, next_id, alt_names, &mut parts, &mut free);
            // Cheap conjuncts first: evaluation short-circuits, and the
            // reordering is sound in a two-valued total semantics.
            parts.sort_by_key(|ir| static_cost(ir));
            let node = if is_and { Ir::And(parts) } else { Ir::Or(parts) };
            (node, norm(free))
        }
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let sv = slot_of(v, slots, names);
            let (ir, bfree) = compile(body, slots, names, next_id, alt_names);
            let free: Vec<Slot> = bfree.iter().copied().filter(|&s| s != sv).collect();
            let meta = Meta {
                id: {
                    let id = *next_id;
                    *next_id += 1;
                    id
                },
                free: free.clone(),
                alt: alt_names.is_some_and(|set| set.contains(v)),
                used: occurs(sv, &ir),
            };
            let node = match f {
                Formula::Exists(..) => Ir::Exists(sv, Box::new(ir), meta),
                _ => Ir::Forall(sv, Box::new(ir), meta),
            };
            (node, free)
        }
    }
}

/// Accumulate the operands of a flattened And (`conj` true) or Or chain.
/// Inside an Or, `a -> b` contributes `Not(a)` and `b`.
#[allow(clippy::too_many_arguments)]
fn collect(
    f: &Formula,
    conj: bool,
    slots: &mut HashMap<Var, Slot>,
    names: &mut Vec<Var>,
    next_id: &mut u32,
    alt_names: Option<&HashSet<Var>>,
    parts: &mut Vec<Ir>,
    free: &mut Vec<Slot>,
) {
    match f {
        Formula::And(a, b) if conj => {
            collect(a, conj, slots, names, next_id, alt_names, parts, free);
            collect(b, conj, slots, names, next_id, alt_names, parts, free);
        }
        Formula::Or(a, b) if !conj => {
            collect(a, conj, slots, names, next_id, alt_names, parts, free);
            collect(b, conj, slots, names, next_id, alt_names, parts, free);
        }
        Formula::Implies(a, b) if !conj => {
            let (ia, fa) = compile(a, slots, names, next_id, alt_names);
            parts.push(Ir::Not(Box::new(ia)));
            free.extend(fa);
            collect(b, conj, slots, names, next_id, alt_names, parts, free);
        }
        Formula::Implies(a, b) if conj => {
            // A lone implication conjunct becomes a nested Or node.
            let g = Formula::Implies(a.clone(), b.clone());
            let mut sub = Vec::new();
            collect(&g, false, slots, names, next_id, alt_names, &mut sub, free);
            sub.sort_by_key(static_cost);
            parts.push(Ir::Or(sub));
        }
        other => {
            let (ir, f2) = compile(other, slots, names, next_id, alt_names);
            parts.push(ir);
            free.extend(f2);
        }
    }
}

fn norm<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v.dedup();
    v
}

fn occurs(slot: Slot, ir: &Ir) -> bool {
    match ir {
        Ir::Mem(a, b) | Ir::Eq(a, b) => *a == slot || *b == slot,
        Ir::EqZero(a) => *a == slot,
        Ir::Not(x) => occurs(slot, x),
        Ir::And(l) | Ir::Or(l) => l.iter().any(|n| occurs(slot, n)),
        Ir::Exists(v, body, _) | Ir::Forall(v, body, _) => *v == slot || occurs(slot, body),
    }
}

/// Rough evaluation cost: quantifiers whose binder is membership-guarded
/// multiply by a small factor (their range shrinks to a candidate set),
/// unguarded ones by a large factor (they may scan the whole universe).
/// Only the relative order matters, for conjunct scheduling.
fn static_cost(ir: &Ir) -> u64 {
    match ir {
        Ir::Mem(..) | Ir::Eq(..) | Ir::EqZero(..) => 1,
        Ir::Not(x) => 1 + static_cost(x),
        Ir::And(l) | Ir::Or(l) => 1 + l.iter().map(static_cost).sum::<u64>(),
        Ir::Exists(v, body, _) => factor(guarded_exists(*v, body), body),
        Ir::Forall(v, body, _) => factor(guarded_forall(*v, body), body),
    }
}

fn factor(guarded: bool, body: &Ir) -> u64 {
    let f: u64 = if guarded { 4 } else { 64 };
    f.saturating_mul(1 + static_cost(body))
}

fn guarded_exists(v: Slot, body: &Ir) -> bool {
    let is_guard = |n: &Ir| matches!(n, Ir::Mem(a, b) | Ir::Eq(a, b) if (*a == v) != (*b == v))
        || matches!(n, Ir::EqZero(a) if *a == v);
    match body {
        Ir::And(l) => l.iter().any(is_guard),
        other => is_guard(other),
    }
}

fn guarded_forall(v: Slot, body: &Ir) -> bool {
    let is_guard = |n: &Ir| {
        matches!(n, Ir::Not(x) if matches!(&**x, Ir::Mem(a, _) if *a == v))
    };
    match body {
        Ir::Or(l) => l.iter().any(is_guard),
        other => is_guard(other),
    }
}

// ---------------------------------------------------------------------------
// Evaluation

fn go(
    node: &Ir,
    env: &mut [Option<HfId>],
    sh: Shared<'_>,
    memo: &mut HashMap<(u32, Box<[HfId]>), bool>,
) -> bool {
    match node {
        Ir::Mem(a, b) => sh.pool.contains(env[*b].unwrap(), env[*a].unwrap()),
        Ir::Eq(a, b) => env[*a] == env[*b],
        Ir::EqZero(a) => sh.pool.is_empty_set(env[*a].unwrap()),
        Ir::Not(x) => !go(x, env, sh, memo),
        Ir::And(l) => {
            for n in l {
                if !go(n, env, sh, memo) {
                    return false;
                }
            }
            true
        }
        Ir::Or(l) => {
            for n in l {
                if go(n, env, sh, memo) {
                    return true;
                }
            }
            false
        }
        Ir::Exists(v, body, meta) => quantifier(*v, body, meta, false, env, sh, memo),
        Ir::Forall(v, body, meta) => quantifier(*v, body, meta, true, env, sh, memo),
    }
}

fn quantifier(
    v: Slot,
    body: &Ir,
    meta: &Meta,
    is_forall: bool,
    env: &mut [Option<HfId>],
    sh: Shared<'_>,
    memo: &mut HashMap<(u32, Box<[HfId]>), bool>,
) -> bool {
    let key: Box<[HfId]> = meta
        .free
        .iter()
        .map(|&s| env[s].expect("free slot unset at quantifier"))
        .collect();
    if let Some(&r) = memo.get(&(meta.id, key.clone())) {
        return r;
    }

    let saved = env[v];
    env[v] = None;
    let cands: Option<Vec<HfId>> = if !meta.used {
        // The binder never occurs: one probe decides the truth value.
        Some(sh.domain(meta.alt).first().copied().into_iter().collect())
    } else if is_forall {
        restrict_neg(v, body, env, sh, &CandMap::default())
    } else {
        restrict_pos(v, body, env, sh, &CandMap::default())
            .or_else(|| witness_cover(v, body, env, sh))
    };

    // Forall stays true until a counterexample, exists false until a witness.
    let mut result = is_forall;
    match cands {
        Some(cs) => {
            for c in norm(cs) {
                if !sh.in_domain(meta.alt, c) {
                    continue;
                }
                env[v] = Some(c);
                let r = go(body, env, sh, memo);
                if r != is_forall {
                    result = r;
                    break;
                }
            }
        }
        None => {
            let dom = sh.domain(meta.alt);
            for i in 0..dom.len() {
                env[v] = Some(dom[i]);
                let r = go(body, env, sh, memo);
                if r != is_forall {
                    result = r;
                    break;
                }
            }
        }
    }
    env[v] = saved;
    memo.insert((meta.id, key), result);
    result
}

// ---------------------------------------------------------------------------
// Candidate analysis
//
// restrict_pos(v, B) returns Some(S) only when it can prove: whenever B is
// true (under the current partial environment, any values for unset
// variables), v's value lies in S. restrict_neg is the dual for falsity.
// None always means "no information". Both thread a CandMap of sound value
// sets for variables bound by existentials between the target's binder and
// the atom that pins it, which is how membership chains (p in f, c in p,
// s in c, w = target) resolve.

#[derive(Default, Clone)]
struct CandMap {
    m: Vec<(Slot, Vec<HfId>)>,
}

impl CandMap {
    fn get(&self, s: Slot) -> Option<&[HfId]> {
        self.m
            .iter()
            .find(|(slot, _)| *slot == s)
            .map(|(_, v)| v.as_slice())
    }

    fn set(&mut self, s: Slot, vals: Vec<HfId>) {
        if let Some(entry) = self.m.iter_mut().find(|(slot, _)| *slot == s) {
            entry.1 = vals;
        } else {
            self.m.push((s, vals));
        }
    }
}

/// Possible values of `slot`: its bound value, or its tracked candidates.
fn vals(slot: Slot, env: &[Option<HfId>], cand: &CandMap) -> Option<Vec<HfId>> {
    if let Some(v) = env[slot] {
        return Some(vec![v]);
    }
    cand.get(slot).map(<[HfId]>::to_vec)
}

fn restrict_pos(
    target: Slot,
    node: &Ir,
    env: &[Option<HfId>],
    sh: Shared<'_>,
    cand: &CandMap,
) -> Option<Vec<HfId>> {
    match node {
        Ir::Mem(a, b) => {
            if *a == target && *b == target {
                // Well-founded universe: nothing contains itself.
                return Some(Vec::new());
            }
            if *a == target {
                let ts = vals(*b, env, cand)?;
                let mut out = Vec::new();
                for t in ts {
                    out.extend_from_slice(sh.pool.elems(t));
                }
                Some(norm(out))
            } else if *b == target {
                let xs = vals(*a, env, cand)?;
                let mut out = Vec::new();
                for x in xs {
                    out.extend_from_slice(sh.universe.containers_of(x));
                }
                Some(norm(out))
            } else {
                None
            }
        }
        Ir::Eq(a, b) => {
            if *a == target && *b == target {
                None
            } else if *a == target {
                vals(*b, env, cand).map(norm)
            } else if *b == target {
                vals(*a, env, cand).map(norm)
            } else {
                None
            }
        }
        Ir::EqZero(a) => {
            if *a == target {
                Some(sh.empty_id.into_iter().collect())
            } else {
                None
            }
        }
        Ir::Not(x) => restrict_neg(target, x, env, sh, cand),
        Ir::And(l) => {
            let refined = refine(l, env, sh, cand);
            let mut acc: Option<Vec<HfId>> = None;
            for n in l {
                if let Some(s) = restrict_pos(target, n, env, sh, &refined) {
                    acc = Some(match acc {
                        None => s,
                        Some(prev) => intersect(&prev, &s),
                    });
                    if acc.as_ref().is_some_and(Vec::is_empty) {
                        break;
                    }
                }
            }
            acc
        }
        Ir::Or(l) => {
            let mut out = Vec::new();
            for n in l {
                out.extend(restrict_pos(target, n, env, sh, cand)?);
            }
            Some(norm(out))
        }
        Ir::Exists(w, body, _) => {
            if *w == target {
                return None;
            }
            let mut cand2 = cand.clone();
            if let Some(cw) = restrict_pos(*w, body, env, sh, cand) {
                cand2.set(*w, cw);
            }
            restrict_pos(target, body, env, sh, &cand2)
        }
        Ir::Forall(w, body, _) => {
            if *w == target {
                return None;
            }
            if let Some(s) = unique_member_rule(target, *w, body, env, sh, cand) {
                return Some(s);
            }
            if matches_memberless(target, *w, body) {
                return Some(memberless_set(sh));
            }
            restrict_pos(target, body, env, sh, cand)
        }
    }
}

/// `A w. w in t -> w = target` with t nonempty pins target to t's members.
fn unique_member_rule(
    target: Slot,
    w: Slot,
    body: &Ir,
    env: &[Option<HfId>],
    sh: Shared<'_>,
    cand: &CandMap,
) -> Option<Vec<HfId>> {
    let Ir::Or(l) = body else { return None };
    if l.len() != 2 {
        return None;
    }
    let mut t_slot = None;
    let mut eq_ok = false;
    for n in l {
        match n {
            Ir::Not(x) => {
                if let Ir::Mem(a, b) = &**x {
                    if *a == w && *b != w {
                        t_slot = Some(*b);
                    }
                }
            }
            Ir::Eq(a, b) => {
                if (*a == w && *b == target) || (*b == w && *a == target) {
                    eq_ok = true;
                }
            }
            _ => {}
        }
    }
    let t = t_slot?;
    if !eq_ok || t == target || t == w {
        return None;
    }
    let ts = vals(t, env, cand)?;
    if ts.iter().any(|&x| sh.pool.is_memberless(x)) {
        // A memberless t makes the description vacuous: no restriction.
        return None;
    }
    let mut out = Vec::new();
    for t2 in ts {
        out.extend_from_slice(sh.pool.elems(t2));
    }
    Some(norm(out))
}

/// `A w. ~(w in target)` pins target to the memberless objects.
fn matches_memberless(target: Slot, w: Slot, body: &Ir) -> bool {
    match body {
        Ir::Not(x) => matches!(&**x, Ir::Mem(a, b) if *a == w && *b == target),
        _ => false,
    }
}

fn memberless_set(sh: Shared<'_>) -> Vec<HfId> {
    sh.universe
        .elements
        .iter()
        .copied()
        .filter(|&x| sh.pool.is_memberless(x))
        .collect()
}

fn restrict_neg(
    target: Slot,
    node: &Ir,
    env: &[Option<HfId>],
    sh: Shared<'_>,
    cand: &CandMap,
) -> Option<Vec<HfId>> {
    match node {
        Ir::Mem(..) | Ir::Eq(..) | Ir::EqZero(..) => None,
        Ir::Not(x) => restrict_pos(target, x, env, sh, cand),
        Ir::And(l) => {
            // False conjunction: some conjunct is false, so the union of all
            // falsity supports covers it; every conjunct must contribute.
            let mut out = Vec::new();
            for n in l {
                out.extend(restrict_neg(target, n, env, sh, cand)?);
            }
            Some(norm(out))
        }
        Ir::Or(l) => {
            // False disjunction: every disjunct false; intersect available.
            let mut acc: Option<Vec<HfId>> = None;
            for n in l {
                if let Some(s) = restrict_neg(target, n, env, sh, cand) {
                    acc = Some(match acc {
                        None => s,
                        Some(prev) => intersect(&prev, &s),
                    });
                }
            }
            acc
        }
        Ir::Exists(w, body, _) | Ir::Forall(w, body, _) => {
            if *w == target {
                None
            } else {
                restrict_neg(target, body, env, sh, cand)
            }
        }
    }
}

/// Refine tracked candidate sets against conjuncts: strong per-slot
/// restrictions intersect in, and `E u. u in s` conjuncts drop memberless
/// values from s's candidates (unblocking the unique-member rule, whose
/// soundness needs s nonempty).
fn refine(l: &[Ir], env: &[Option<HfId>], sh: Shared<'_>, cand: &CandMap) -> CandMap {
    let mut cur = cand.clone();
    if cur.m.is_empty() {
        return cur;
    }
    for n in l {
        if let Ir::Exists(u, body, _) = n {
            for s in nonempty_witnessed(*u, body) {
                if let Some(c) = cur.get(s) {
                    let filtered: Vec<HfId> = c
                        .iter()
                        .copied()
                        .filter(|&x| !sh.pool.is_memberless(x))
                        .collect();
                    cur.set(s, filtered);
                }
            }
        }
        let slots: Vec<Slot> = cur.m.iter().map(|(s, _)| *s).collect();
        for s in slots {
            if let Some(r) = restrict_pos(s, n, env, sh, &cur) {
                let merged = intersect(cur.get(s).unwrap(), &r);
                cur.set(s, merged);
            }
        }
    }
    cur
}

/// Containers s for which `E u. <body>` forces s nonempty via a `u in s`
/// conjunct.
fn nonempty_witnessed(u: Slot, body: &Ir) -> Vec<Slot> {
    let pick = |n: &Ir| match n {
        Ir::Mem(a, b) if *a == u && *b != u => Some(*b),
        _ => None,
    };
    match body {
        Ir::And(l) => l.iter().filter_map(pick).collect(),
        other => pick(other).into_iter().collect(),
    }
}

// ---------------------------------------------------------------------------
// Witness cover
//
// A weaker analysis used only to pick existential candidates when the strong
// one fails. If the target occurs solely on one side of equality disjuncts
// inside patterns `A w. w in t -> (w = m1 | ... | w = mk)` with t's value
// known, then exchanging the target's value for any fixed probe preserves
// truth whenever the old value was outside t's members (its disjunct was
// dead, and disjunctions only gain from the swap). So t's members plus one
// probe cover some witness whenever any witness exists. Sets from this
// analysis never feed intersections; they only bound one existential's scan.

fn witness_cover(
    v: Slot,
    body: &Ir,
    env: &[Option<HfId>],
    sh: Shared<'_>,
) -> Option<Vec<HfId>> {
    let mut out = Vec::new();
    if cover_scan(v, body, env, sh, &mut out) {
        Some(out)
    } else {
        None
    }
}

fn cover_scan(
    v: Slot,
    node: &Ir,
    env: &[Option<HfId>],
    sh: Shared<'_>,
    out: &mut Vec<HfId>,
) -> bool {
    match node {
        Ir::Mem(..) | Ir::Eq(..) | Ir::EqZero(..) | Ir::Not(..) => !occurs(v, node),
        Ir::And(l) => l.iter().all(|n| cover_scan(v, n, env, sh, out)),
        Ir::Or(_) => !occurs(v, node),
        Ir::Exists(w, inner, _) => {
            // A binder shadowing v means the outer v no longer occurs below.
            *w == v || cover_scan(v, inner, env, sh, out)
        }
        Ir::Forall(w, inner, _) => {
            *w == v
                || cover_pattern(v, *w, inner, env, sh, out)
                || cover_scan(v, inner, env, sh, out)
        }
    }
}

/// `A w. w in t -> (w = m1 | ...)`: every disjunct is the guard or an
/// equality with w; contributes t's members when v sits in one of the
/// equalities.
fn cover_pattern(
    v: Slot,
    w: Slot,
    body: &Ir,
    env: &[Option<HfId>],
    sh: Shared<'_>,
    out: &mut Vec<HfId>,
) -> bool {
    let Ir::Or(l) = body else { return false };
    let mut t_slot = None;
    let mut v_in_eq = false;
    for n in l {
        match n {
            Ir::Not(x) => match &**x {
                Ir::Mem(a, b) if *a == w && *b != w && *b != v => {
                    if t_slot.is_some() {
                        return false;
                    }
                    t_slot = Some(*b);
                }
                _ => return false,
            },
            Ir::Eq(a, b) => {
                if !(*a == w || *b == w) {
                    return false;
                }
                let other = if *a == w { *b } else { *a };
                if other == v {
                    v_in_eq = true;
                }
            }
            _ => return false,
        }
    }
    let Some(t) = t_slot else { return false };
    let Some(tv) = env[t] else { return false };
    if v_in_eq {
        out.extend_from_slice(sh.pool.elems(tv));
        if let Some(probe) = sh.universe.elements.first() {
            out.push(*probe);
        }
    }
    true
}

fn intersect(a: &[HfId], b: &[HfId]) -> Vec<HfId> {
    // Both inputs are sorted and deduplicated.
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
