use std::collections::HashSet;

use super::ast::{Formula, FreshSupply, Var};

/// True when every binder introduces a distinct variable that also differs
/// from every free variable. Everything downstream (stratification types
/// keyed by name, the variable graph, the evaluator's flat environment)
/// assumes this shape.
pub fn is_rectified(f: &Formula) -> bool {
    let free: HashSet<Var> = f.free_vars().into_iter().collect();
    let mut seen: HashSet<Var> = HashSet::new();
    fn walk(f: &Formula, free: &HashSet<Var>, seen: &mut HashSet<Var>) -> bool {
        match f {
            Formula::Mem(..) | Formula::Eq(..) | Formula::EqConst(..) => true,
            Formula::Not(a) => walk(a, free, seen),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                walk(a, free, seen) && walk(b, free, seen)
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                if free.contains(v) || !seen.insert(v.clone()) {
                    return false;
                }
                walk(body, free, seen)
            }
        }
    }
    walk(f, &free, &mut seen)
}

/// Alpha-rename binders until [`is_rectified`] holds. Only clashing binders
/// are renamed, and they draw from `supply` so later passes over the same
/// formula keep generating non-colliding names.
pub fn rectify(f: &Formula, supply: &mut FreshSupply) -> Formula {
    let mut used: HashSet<Var> = f.free_vars().into_iter().collect();
    let mut env: Vec<(Var, Var)> = Vec::new();
    go(f, &mut used, &mut env, supply)
}

fn go(
    f: &Formula,
    used: &mut HashSet<Var>,
    env: &mut Vec<(Var, Var)>,
    supply: &mut FreshSupply,
) -> Formula {
    let subst = |v: &Var, env: &Vec<(Var, Var)>| -> Var {
        // Innermost binding wins, so scan from the back.
        env.iter()
            .rev()
            .find(|(from, _)| from == v)
            .map(|(_, to)| to.clone())
            .unwrap_or_else(|| v.clone())
    };
    match f {
        Formula::Mem(a, b) => Formula::Mem(subst(a, env), subst(b, env)),
        Formula::Eq(a, b) => Formula::Eq(subst(a, env), subst(b, env)),
        Formula::EqConst(a, c) => Formula::EqConst(subst(a, env), *c),
        Formula::Not(a) => Formula::Not(Box::new(go(a, used, env, supply))),
        Formula::And(a, b) => Formula::And(
            Box::new(go(a, used, env, supply)),
            Box::new(go(b, used, env, supply)),
        ),
        Formula::Or(a, b) => Formula::Or(
            Box::new(go(a, used, env, supply)),
            Box::new(go(b, used, env, supply)),
        ),
        Formula::Implies(a, b) => Formula::Implies(
            Box::new(go(a, used, env, supply)),
            Box::new(go(b, used, env, supply)),
        ),
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let fresh = if used.contains(v) {
                supply.fresh()
            } else {
                v.clone()
            };
            used.insert(fresh.clone());
            env.push((v.clone(), fresh.clone()));
            let new_body = go(body, used, env, supply);
            env.pop();
            match f {
                Formula::Exists(..) => Formula::Exists(fresh, Box::new(new_body)),
                _ => Formula::Forall(fresh, Box::new(new_body)),
            }
        }
    }
}
