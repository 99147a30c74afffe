use std::fmt;

/// A variable name. Names are letters, digits, underscore, apostrophe, and
/// must not start with a digit. Names starting with `_g` are reserved for
/// the fresh supply.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Var {
        let name = name.into();
        debug_assert!(is_valid_name(&name), "invalid variable name: {name:?}");
        Var(name)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True for names drawn from a [`FreshSupply`].
    pub fn is_generated(&self) -> bool {
        self.0.starts_with("_g")
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Var({})", self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var::new(s)
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if first.is_ascii_digit() {
        return false;
    }
    let ok = |c: char| c.is_alphanumeric() || c == '_' || c == '\'';
    if !ok(first) || !name.chars().all(ok) {
        return false;
    }
    !matches!(name, "E" | "A" | "in")
}

/// The sole constant symbol: the canonical empty set, written `0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Const {
    Zero,
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Quant {
    Exists,
    Forall,
}

/// First-order formulas over membership and equality.
///
/// Plain tree, no sharing: callers may pattern match and rebuild freely.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Mem(Var, Var),
    Eq(Var, Var),
    EqConst(Var, Const),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

pub fn mem(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
    Formula::Mem(x.into(), y.into())
}

pub fn eq(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
    Formula::Eq(x.into(), y.into())
}

pub fn eq_zero(x: impl Into<Var>) -> Formula {
    Formula::EqConst(x.into(), Const::Zero)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn exists(v: impl Into<Var>, body: Formula) -> Formula {
    Formula::Exists(v.into(), Box::new(body))
}

pub fn forall(v: impl Into<Var>, body: Formula) -> Formula {
    Formula::Forall(v.into(), Box::new(body))
}

pub fn quantify(q: Quant, v: Var, body: Formula) -> Formula {
    match q {
        Quant::Exists => exists(v, body),
        Quant::Forall => forall(v, body),
    }
}

/// Left-fold a nonempty list into a conjunction, so the rendered text is the
/// flat `a & b & c` form.
pub fn and_all(mut parts: Vec<Formula>) -> Formula {
    assert!(!parts.is_empty(), "and_all of empty list");
    let mut acc = parts.remove(0);
    for p in parts {
        acc = and(acc, p);
    }
    acc
}

/// Left-fold a nonempty list into a disjunction.
pub fn or_all(mut parts: Vec<Formula>) -> Formula {
    assert!(!parts.is_empty(), "or_all of empty list");
    let mut acc = parts.remove(0);
    for p in parts {
        acc = or(acc, p);
    }
    acc
}

/// Wrap `body` in existentials, first var outermost.
pub fn exists_many(vars: Vec<Var>, body: Formula) -> Formula {
    let mut acc = body;
    for v in vars.into_iter().rev() {
        acc = exists(v, acc);
    }
    acc
}

impl Formula {
    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.walk_free(&mut bound, &mut out);
        out
    }

    fn walk_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        let visit = |v: &Var, bound: &Vec<Var>, out: &mut Vec<Var>| {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Formula::Mem(a, b) | Formula::Eq(a, b) => {
                visit(a, bound, out);
                visit(b, bound, out);
            }
            Formula::EqConst(a, _) => visit(a, bound, out),
            Formula::Not(f) => f.walk_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk_free(bound, out);
                b.walk_free(bound, out);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.walk_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable occurring anywhere (binders included), in the order a
    /// left-to-right scan of the rendered text meets them.
    pub fn all_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.walk_all(&mut |v| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        });
        out
    }

    /// Visit variable occurrences in rendered-text order, binders included.
    pub fn walk_all(&self, visit: &mut impl FnMut(&Var)) {
        match self {
            Formula::Mem(a, b) | Formula::Eq(a, b) => {
                visit(a);
                visit(b);
            }
            Formula::EqConst(a, _) => visit(a),
            Formula::Not(f) => f.walk_all(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk_all(visit);
                b.walk_all(visit);
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                visit(v);
                f.walk_all(visit);
            }
        }
    }

    /// Visit atomic subformulas in rendered-text order.
    pub fn walk_atoms(&self, visit: &mut impl FnMut(&Formula)) {
        match self {
            Formula::Mem(..) | Formula::Eq(..) | Formula::EqConst(..) => visit(self),
            Formula::Not(f) => f.walk_atoms(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk_atoms(visit);
                b.walk_atoms(visit);
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => f.walk_atoms(visit),
        }
    }

    pub fn atom_count(&self) -> usize {
        let mut n = 0;
        self.walk_atoms(&mut |_| n += 1);
        n
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Mem(..) | Formula::Eq(..) | Formula::EqConst(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// Node count, used as a cheap cost estimate.
    pub fn size(&self) -> usize {
        match self {
            Formula::Mem(..) | Formula::Eq(..) | Formula::EqConst(..) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.size(),
        }
    }
}

/// Source of fresh variable names `_g1`, `_g2`, ... The counter is strictly
/// increasing within one run, which keeps outputs reproducible.
#[derive(Debug, Default, Clone)]
pub struct FreshSupply {
    counter: u64,
}

impl FreshSupply {
    pub fn new() -> FreshSupply {
        FreshSupply { counter: 0 }
    }

    pub fn fresh(&mut self) -> Var {
        self.counter += 1;
        Var(format!("_g{}", self.counter))
    }

    pub fn consumed(&self) -> u64 {
        self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_vars_in_first_occurrence_order() {
        // A y. x in y -> w = x
        let f = forall("y", implies(mem("x", "y"), eq("w", "x")));
        assert_eq!(f.free_vars(), vec![Var::new("x"), Var::new("w")]);
    }

    #[test]
    fn bound_occurrences_are_not_free() {
        let f = exists("x", mem("x", "y"));
        assert_eq!(f.free_vars(), vec![Var::new("y")]);
    }

    #[test]
    fn all_vars_counts_binders() {
        let f = exists("x", mem("y", "x"));
        assert_eq!(f.all_vars(), vec![Var::new("x"), Var::new("y")]);
    }

    #[test]
    fn fresh_names_are_reserved() {
        let mut supply = FreshSupply::new();
        let v = supply.fresh();
        assert_eq!(v.as_str(), "_g1");
        assert!(v.is_generated());
        assert!(!Var::new("x").is_generated());
    }

    #[test]
    fn reserved_words_are_invalid_names() {
        assert!(!is_valid_name("E"));
        assert!(!is_valid_name("A"));
        assert!(!is_valid_name("in"));
        assert!(!is_valid_name("0x"));
        assert!(is_valid_name("x'"));
        assert!(is_valid_name("_g1"));
    }
}
