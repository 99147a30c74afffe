use std::collections::HashMap;

use crate::formula::{Formula, Var};

use super::hf::{HfId, HfPool};

/// Reference evaluator: direct structural recursion over the syntax tree,
/// quantifiers as plain loops over the whole domain, no indexing, no
/// memoization, no candidate pruning. Exponential in quantifier depth, but
/// simple enough to trust; the optimized [`super::Evaluator`] is checked
/// against this one.
///
/// `x = 0` holds exactly when x is the canonical empty set; atoms are
/// memberless but are not `0`.
pub fn naive_eval(
    pool: &HfPool,
    domain: &[HfId],
    f: &Formula,
    env: &mut HashMap<Var, HfId>,
) -> bool {
    match f {
        Formula::Mem(x, y) => pool.contains(env[y], env[x]),
        Formula::Eq(x, y) => env[x] == env[y],
        Formula::EqConst(x, _) => pool.is_empty_set(env[x]),
        Formula::Not(a) => !naive_eval(pool, domain, a, env),
        Formula::And(a, b) => {
            naive_eval(pool, domain, a, env) && naive_eval(pool, domain, b, env)
        }
        Formula::Or(a, b) => {
            naive_eval(pool, domain, a, env) || naive_eval(pool, domain, b, env)
        }
        Formula::Implies(a, b) => {
            !naive_eval(pool, domain, a, env) || naive_eval(pool, domain, b, env)
        }
        Formula::Exists(v, body) => {
            let saved = env.get(v).copied();
            let mut found = false;
            for &d in domain {
                env.insert(v.clone(), d);
                if naive_eval(pool, domain, body, env) {
                    found = true;
                    break;
                }
            }
            restore(env, v, saved);
            found
        }
        Formula::Forall(v, body) => {
            let saved = env.get(v).copied();
            let mut holds = true;
            for &d in domain {
                env.insert(v.clone(), d);
                if !naive_eval(pool, domain, body, env) {
                    holds = false;
                    break;
                }
            }
            restore(env, v, saved);
            holds
        }
    }
}

fn restore(env: &mut HashMap<Var, HfId>, v: &Var, saved: Option<HfId>) {
    match saved {
        Some(x) => {
            env.insert(v.clone(), x);
        }
        None => {
            env.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::semantics::universe::{hf_universe, DEFAULT_CAP};

    fn check(src: &str, env_pairs: &[(&str, &str)], expect: bool) {
        let mut pool = HfPool::new();
        let u = hf_universe(&mut pool, 3, 0, DEFAULT_CAP).unwrap();
        let by_name: HashMap<String, HfId> = u
            .elements
            .iter()
            .map(|&x| (pool.render(x), x))
            .collect();
        let mut env: HashMap<Var, HfId> = env_pairs
            .iter()
            .map(|&(v, obj)| (Var::new(v), by_name[obj]))
            .collect();
        let f = parse(src).unwrap();
        assert_eq!(
            naive_eval(&pool, &u.elements, &f, &mut env),
            expect,
            "{src} under {env_pairs:?}"
        );
    }

    #[test]
    fn membership_and_equality() {
        check("x in y", &[("x", "0"), ("y", "{0}")], true);
        check("x in y", &[("x", "{0}"), ("y", "{0}")], false);
        check("x = y", &[("x", "{0}"), ("y", "{0}")], true);
        check("x = 0", &[("x", "0")], true);
        check("x = 0", &[("x", "{0}")], false);
    }

    #[test]
    fn quantifiers() {
        // Every object with a member contains something.
        check("A z. z in x -> (E w. w in x)", &[("x", "{0, {0}}")], true);
        // Nothing is a member of the empty set.
        check("~(E z. z in x)", &[("x", "0")], true);
        check("E z. z in x & z = 0", &[("x", "{0, {0}}")], true);
        check("E z. z in x & z = 0", &[("x", "{{0}}")], false);
    }

    #[test]
    fn singleton_description() {
        // x is a singleton of y: something is in x and everything in x is y.
        let f = "(E w. w in x) & (A z. z in x -> z = y)";
        check(f, &[("x", "{0}"), ("y", "0")], true);
        check(f, &[("x", "{0}"), ("y", "{0}")], false);
        check(f, &[("x", "{0, {0}}"), ("y", "0")], false);
        check(f, &[("x", "0"), ("y", "0")], false);
    }

    #[test]
    fn atoms_are_not_the_constant_zero() {
        let mut pool = HfPool::new();
        let u = hf_universe(&mut pool, 1, 1, DEFAULT_CAP).unwrap();
        let atom = u.elements.iter().copied().find(|&x| pool.is_atom(x)).unwrap();
        let f = parse("x = 0").unwrap();
        let mut env = HashMap::from([(Var::new("x"), atom)]);
        assert!(!naive_eval(&pool, &u.elements, &f, &mut env));
        // But an atom is memberless, just like 0.
        let g = parse("~(E z. z in x)").unwrap();
        assert!(naive_eval(&pool, &u.elements, &g, &mut env));
    }
}
