use std::fmt::Write;

use super::ast::Formula;

/// Binding strength. A child is parenthesized when its own level is below
/// what its position requires, so rendered text re-parses to the same tree.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Mem(..) | Formula::Eq(..) | Formula::EqConst(..) => 5,
    }
}

/// Render to the concrete syntax accepted by [`super::parse`]. Conjunction
/// and disjunction chains stay flat (`a & b & c`); negation always
/// parenthesizes its operand.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_at(f, 0, &mut out);
    out
}

fn write_at(f: &Formula, min: u8, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write_at(f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Mem(a, b) => {
            let _ = write!(out, "{a} in {b}");
        }
        Formula::Eq(a, b) => {
            let _ = write!(out, "{a} = {b}");
        }
        Formula::EqConst(a, c) => {
            let _ = write!(out, "{a} = {c}");
        }
        Formula::Not(inner) => {
            out.push_str("~(");
            write_at(inner, 0, out);
            out.push(')');
        }
        Formula::And(a, b) => {
            write_at(a, 3, out);
            out.push_str(" & ");
            write_at(b, 4, out);
        }
        Formula::Or(a, b) => {
            write_at(a, 2, out);
            out.push_str(" | ");
            write_at(b, 3, out);
        }
        Formula::Implies(a, b) => {
            write_at(a, 2, out);
            out.push_str(" -> ");
            // The grammar allows a full formula after ->, quantifiers included.
            write_at(b, 0, out);
        }
        Formula::Exists(v, body) => {
            let _ = write!(out, "E {v}. ");
            write_at(body, 0, out);
        }
        Formula::Forall(v, body) => {
            let _ = write!(out, "A {v}. ");
            write_at(body, 0, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::ast::{and, eq, eq_zero, exists, forall, implies, mem, not, or};
    use crate::formula::parse::parse;

    fn roundtrips(f: &Formula) {
        let text = render(f);
        let reparsed = parse(&text).unwrap_or_else(|e| panic!("{text:?}: {e}"));
        assert_eq!(&reparsed, f, "render produced {text:?}");
    }

    #[test]
    fn flat_chains() {
        let f = and(and(mem("a", "b"), mem("c", "b")), eq("a", "c"));
        assert_eq!(render(&f), "a in b & c in b & a = c");
        roundtrips(&f);
    }

    #[test]
    fn negation_always_parenthesized() {
        let f = not(mem("x", "y"));
        assert_eq!(render(&f), "~(x in y)");
        roundtrips(&f);
        let g = and(not(eq_zero("x")), mem("x", "y"));
        assert_eq!(render(&g), "~(x = 0) & x in y");
        roundtrips(&g);
    }

    #[test]
    fn quantifiers_and_implication() {
        let f = forall("z", implies(mem("z", "y"), eq("z", "x")));
        assert_eq!(render(&f), "A z. z in y -> z = x");
        roundtrips(&f);
        let g = and(exists("w", mem("w", "y")), mem("x", "y"));
        assert_eq!(render(&g), "(E w. w in y) & x in y");
        roundtrips(&g);
    }

    #[test]
    fn grouping_against_precedence() {
        let f = and(or(mem("a", "b"), mem("c", "d")), mem("e", "f"));
        assert_eq!(render(&f), "(a in b | c in d) & e in f");
        roundtrips(&f);
        let g = or(mem("a", "b"), or(mem("c", "d"), mem("e", "f")));
        assert_eq!(render(&g), "a in b | (c in d | e in f)");
        roundtrips(&g);
        let h = implies(implies(mem("a", "b"), mem("c", "d")), mem("e", "f"));
        assert_eq!(render(&h), "(a in b -> c in d) -> e in f");
        roundtrips(&h);
    }
}
