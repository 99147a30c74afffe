use std::collections::HashMap;

use crate::formula::{render, Formula, Var};

/// One atomic subformula, numbered by position in a left-to-right scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomOcc {
    pub id: usize,
    pub atom: Formula,
}

/// An integer level per variable (free and bound alike), in first-occurrence
/// order. Membership `x in y` forces `level(y) = level(x) + 1`, equality
/// forces equal levels, and `x = 0` forces nothing. Levels are normalized so
/// that each connected component of the constraint graph tops out at -1;
/// variables under no constraint sit at -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    pub types: Vec<(Var, i64)>,
    index: HashMap<Var, usize>,
}

impl Stratification {
    pub fn get(&self, v: &Var) -> Option<i64> {
        self.index.get(v).map(|&i| self.types[i].1)
    }

    /// Panics when `v` does not occur in the analyzed formula.
    pub fn level(&self, v: &Var) -> i64 {
        self.get(v)
            .unwrap_or_else(|| panic!("no level for variable {v}"))
    }
}

/// One hop of a stratification-failure walk: `atom` forces
/// `level(to) = level(from) + delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStep {
    pub atom: AtomOcc,
    pub from: Var,
    pub to: Var,
    pub delta: i64,
}

/// Proof that no level assignment exists: a chain of forced level steps from
/// `conflict_from` to `conflict_to` whose total differs from what the
/// conflicting atom demands. Replay it with [`StratFailure::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratFailure {
    pub steps: Vec<WitnessStep>,
    pub conflict: AtomOcc,
    pub conflict_from: Var,
    pub conflict_to: Var,
    pub conflict_delta: i64,
}

impl std::fmt::Display for StratFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "no level assignment exists; walking from {}:",
            self.conflict_from
        )?;
        let mut total = 0i64;
        for s in &self.steps {
            total += s.delta;
            writeln!(
                f,
                "  {} forces level({}) = level({}) {} {}",
                render(&s.atom.atom),
                s.to,
                s.from,
                if s.delta >= 0 { "+" } else { "-" },
                s.delta.abs()
            )?;
        }
        write!(
            f,
            "  so level({}) = level({}) + {}, but {} forces level({}) = level({}) + {}",
            self.conflict_to,
            self.conflict_from,
            total,
            render(&self.conflict.atom),
            self.conflict_to,
            self.conflict_from,
            self.conflict_delta
        )
    }
}

impl StratFailure {
    /// Check the witness against the formula it came from: every cited atom
    /// occurs at its claimed position, every hop matches its atom, the hops
    /// chain, and the accumulated offset contradicts the conflict atom.
    pub fn verify(&self, f: &Formula) -> bool {
        let atoms = collect_atoms(f);
        let occurs = |occ: &AtomOcc| atoms.get(occ.id).is_some_and(|a| a.atom == occ.atom);
        let legal_hop = |atom: &Formula, from: &Var, to: &Var, delta: i64| match atom {
            Formula::Mem(a, b) => (from == a && to == b && delta == 1) || (from == b && to == a && delta == -1),
            Formula::Eq(a, b) => {
                delta == 0 && ((from == a && to == b) || (from == b && to == a))
            }
            _ => false,
        };
        if !occurs(&self.conflict)
            || !legal_hop(
                &self.conflict.atom,
                &self.conflict_from,
                &self.conflict_to,
                self.conflict_delta,
            )
        {
            return false;
        }
        let mut at = self.conflict_from.clone();
        let mut total = 0i64;
        for s in &self.steps {
            if !occurs(&s.atom) || s.from != at || !legal_hop(&s.atom.atom, &s.from, &s.to, s.delta)
            {
                return false;
            }
            total += s.delta;
            at = s.to.clone();
        }
        at == self.conflict_to && total != self.conflict_delta
    }
}

fn collect_atoms(f: &Formula) -> Vec<AtomOcc> {
    let mut out = Vec::new();
    f.walk_atoms(&mut |a| {
        out.push(AtomOcc {
            id: out.len(),
            atom: a.clone(),
        })
    });
    out
}

/// Constraint edge: `level(to) = level(from) + delta`, induced by atom `id`.
struct Constraint {
    from: usize,
    to: usize,
    delta: i64,
    atom: usize,
}

/// Assign levels, or produce a replayable failure witness. The formula is
/// read up to variable names, so rectify first if binders shadow.
pub fn stratify(f: &Formula) -> Result<Stratification, StratFailure> {
    let vars = f.all_vars();
    let vid: HashMap<Var, usize> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let atoms = collect_atoms(f);
    let mut constraints = Vec::new();
    for occ in &atoms {
        match &occ.atom {
            Formula::Mem(a, b) => constraints.push(Constraint {
                from: vid[a],
                to: vid[b],
                delta: 1,
                atom: occ.id,
            }),
            Formula::Eq(a, b) => constraints.push(Constraint {
                from: vid[a],
                to: vid[b],
                delta: 0,
                atom: occ.id,
            }),
            Formula::EqConst(..) => {}
            _ => unreachable!("walk_atoms yields atoms only"),
        }
    }

    // Union-find with level offsets: offset[v] = level(v) - level(parent(v)).
    let n = vars.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut offset: Vec<i64> = vec![0; n];

    fn find(parent: &mut Vec<usize>, offset: &mut Vec<i64>, v: usize) -> (usize, i64) {
        if parent[v] == v {
            return (v, 0);
        }
        let (root, parent_off) = find(parent, offset, parent[v]);
        parent[v] = root;
        offset[v] += parent_off;
        (root, offset[v])
    }

    for (k, c) in constraints.iter().enumerate() {
        let (ra, da) = find(&mut parent, &mut offset, c.from);
        let (rb, db) = find(&mut parent, &mut offset, c.to);
        if ra == rb {
            if db - da != c.delta {
                return Err(build_failure(&vars, &atoms, &constraints, k));
            }
        } else {
            // level(to) = level(from) + delta, so rb's offset below ra is
            // chosen to make that hold.
            parent[rb] = ra;
            offset[rb] = da + c.delta - db;
        }
    }

    // Normalize: each root's component shifted so its maximum level is -1.
    let mut level: Vec<i64> = vec![0; n];
    let mut max_of_root: HashMap<usize, i64> = HashMap::new();
    for v in 0..n {
        let (root, off) = find(&mut parent, &mut offset, v);
        level[v] = off;
        let entry = max_of_root.entry(root).or_insert(i64::MIN);
        *entry = (*entry).max(off);
    }
    let types: Vec<(Var, i64)> = vars
        .iter()
        .enumerate()
        .map(|(v, name)| {
            let (root, _) = find(&mut parent, &mut offset, v);
            (name.clone(), level[v] - 1 - max_of_root[&root])
        })
        .collect();
    let index = types
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (v.clone(), i))
        .collect();
    Ok(Stratification { types, index })
}

/// Rebuild an explicit path between the conflicting constraint's endpoints
/// using only constraints processed before it, by breadth-first search.
fn build_failure(
    vars: &[Var],
    atoms: &[AtomOcc],
    constraints: &[Constraint],
    bad: usize,
) -> StratFailure {
    let c = &constraints[bad];
    let n = vars.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, constraint id)
    for (k, e) in constraints.iter().enumerate().take(bad) {
        adj[e.from].push((e.to, k));
        adj[e.to].push((e.from, k));
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[c.from] = true;
    queue.push_back(c.from);
    while let Some(u) = queue.pop_front() {
        if u == c.to {
            break;
        }
        for &(w, k) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, k));
                queue.push_back(w);
            }
        }
    }
    // The earlier union made from and to share a root, so a path exists;
    // c.from == c.to gives the empty path.
    let mut steps_rev = Vec::new();
    let mut at = c.to;
    while at != c.from {
        let (u, k) = prev[at].expect("conflict endpoints are connected");
        let e = &constraints[k];
        let (from, to, delta) = if e.from == u {
            (u, at, e.delta)
        } else {
            (u, at, -e.delta)
        };
        steps_rev.push(WitnessStep {
            atom: atoms[e.atom].clone(),
            from: vars[from].clone(),
            to: vars[to].clone(),
            delta,
        });
        at = u;
    }
    steps_rev.reverse();
    StratFailure {
        steps: steps_rev,
        conflict: atoms[c.atom].clone(),
        conflict_from: vars[c.from].clone(),
        conflict_to: vars[c.to].clone(),
        conflict_delta: c.delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn levels(src: &str) -> Vec<(String, i64)> {
        stratify(&parse(src).unwrap())
            .unwrap()
            .types
            .into_iter()
            .map(|(v, t)| (v.as_str().to_string(), t))
            .collect()
    }

    #[test]
    fn two_members_one_container() {
        assert_eq!(
            levels("x in y & z in y"),
            vec![("x".into(), -2), ("y".into(), -1), ("z".into(), -2)]
        );
    }

    #[test]
    fn three_tier_diamond() {
        assert_eq!(
            levels("x in y & z in y & w in x & w in z"),
            vec![
                ("x".into(), -2),
                ("y".into(), -1),
                ("z".into(), -2),
                ("w".into(), -3)
            ]
        );
    }

    #[test]
    fn isolated_and_const_variables_sit_at_minus_one() {
        assert_eq!(levels("x = 0"), vec![("x".into(), -1)]);
        assert_eq!(
            levels("x in y & z = 0"),
            vec![("x".into(), -2), ("y".into(), -1), ("z".into(), -1)]
        );
    }

    #[test]
    fn components_normalize_independently() {
        assert_eq!(
            levels("x in y & u in v"),
            vec![
                ("x".into(), -2),
                ("y".into(), -1),
                ("u".into(), -2),
                ("v".into(), -1)
            ]
        );
    }

    #[test]
    fn equality_keeps_levels_flat() {
        assert_eq!(
            levels("x = y & y in z"),
            vec![("x".into(), -2), ("y".into(), -2), ("z".into(), -1)]
        );
    }

    #[test]
    fn bound_variables_get_levels_too() {
        assert_eq!(
            levels("E w. w in y & x in y"),
            vec![("w".into(), -2), ("y".into(), -1), ("x".into(), -2)]
        );
    }

    #[test]
    fn self_membership_fails_with_verifiable_witness() {
        let f = parse("x in x").unwrap();
        let err = stratify(&f).unwrap_err();
        assert!(err.steps.is_empty());
        assert_eq!(err.conflict_delta, 1);
        assert!(err.verify(&f));
    }

    #[test]
    fn two_cycle_fails_with_verifiable_witness() {
        let f = parse("x in y & y in x").unwrap();
        let err = stratify(&f).unwrap_err();
        assert_eq!(err.steps.len(), 1);
        assert!(err.verify(&f));
        // The witness must not verify against an unrelated formula.
        assert!(!err.verify(&parse("x in y").unwrap()));
    }

    #[test]
    fn longer_odd_cycle_fails() {
        let f = parse("x in y & y in z & z in x").unwrap();
        let err = stratify(&f).unwrap_err();
        assert!(err.verify(&f));
    }

    #[test]
    fn equality_collapse_fails() {
        // x = y with y in x forces level(x) = level(x) + 1.
        let f = parse("x = y & y in x").unwrap();
        let err = stratify(&f).unwrap_err();
        assert!(err.verify(&f));
    }
}
