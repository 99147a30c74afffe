use crate::formula::{quantify, Formula, Quant, Var};

/// Quantifier prefix plus quantifier-free matrix. `prefix[0]` is outermost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrenexForm {
    pub prefix: Vec<(Quant, Var)>,
    pub matrix: Formula,
}

impl PrenexForm {
    pub fn to_formula(&self) -> Formula {
        let mut acc = self.matrix.clone();
        for (q, v) in self.prefix.iter().rev() {
            acc = quantify(*q, v.clone(), acc);
        }
        acc
    }
}

fn flip(q: Quant) -> Quant {
    match q {
        Quant::Exists => Quant::Forall,
        Quant::Forall => Quant::Exists,
    }
}

/// Pull all quantifiers to the front by the classical rules: binders hoist
/// out of conjunction and disjunction unchanged, flip under negation and on
/// the left of implication. The input must be rectified; hoisting then
/// cannot capture anything. Left subformula binders end up outermost.
pub fn to_prenex(f: &Formula) -> PrenexForm {
    match f {
        Formula::Mem(..) | Formula::Eq(..) | Formula::EqConst(..) => PrenexForm {
            prefix: Vec::new(),
            matrix: f.clone(),
        },
        Formula::Not(a) => {
            let inner = to_prenex(a);
            PrenexForm {
                prefix: inner.prefix.into_iter().map(|(q, v)| (flip(q), v)).collect(),
                matrix: Formula::Not(Box::new(inner.matrix)),
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let pa = to_prenex(a);
            let pb = to_prenex(b);
            let mut prefix = pa.prefix;
            prefix.extend(pb.prefix);
            let matrix = match f {
                Formula::And(..) => Formula::And(Box::new(pa.matrix), Box::new(pb.matrix)),
                _ => Formula::Or(Box::new(pa.matrix), Box::new(pb.matrix)),
            };
            PrenexForm { prefix, matrix }
        }
        Formula::Implies(a, b) => {
            let pa = to_prenex(a);
            let pb = to_prenex(b);
            let mut prefix: Vec<(Quant, Var)> = pa
                .prefix
                .into_iter()
                .map(|(q, v)| (flip(q), v))
                .collect();
            prefix.extend(pb.prefix);
            PrenexForm {
                prefix,
                matrix: Formula::Implies(Box::new(pa.matrix), Box::new(pb.matrix)),
            }
        }
        Formula::Exists(v, body) => {
            let mut inner = to_prenex(body);
            inner.prefix.insert(0, (Quant::Exists, v.clone()));
            inner
        }
        Formula::Forall(v, body) => {
            let mut inner = to_prenex(body);
            inner.prefix.insert(0, (Quant::Forall, v.clone()));
            inner
        }
    }
}
