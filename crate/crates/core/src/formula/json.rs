use serde_json::{json, Value};
use thiserror::Error;

use super::ast::{self, Const, Formula};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid formula JSON: {0}")]
pub struct JsonError(String);

/// Encode as a tree of `{"op": ..., ...}` objects. Atoms carry `lhs`/`rhs`
/// (with `"0"` as the eqconst right side), quantifiers carry `var`/`body`,
/// negation carries `body`, the other connectives carry `lhs`/`rhs`.
pub fn formula_to_json(f: &Formula) -> Value {
    match f {
        Formula::Mem(a, b) => json!({"op": "mem", "lhs": a.as_str(), "rhs": b.as_str()}),
        Formula::Eq(a, b) => json!({"op": "eq", "lhs": a.as_str(), "rhs": b.as_str()}),
        Formula::EqConst(a, _) => json!({"op": "eqconst", "lhs": a.as_str(), "rhs": "0"}),
        Formula::Not(body) => json!({"op": "not", "body": formula_to_json(body)}),
        Formula::And(a, b) => {
            json!({"op": "and", "lhs": formula_to_json(a), "rhs": formula_to_json(b)})
        }
        Formula::Or(a, b) => {
            json!({"op": "or", "lhs": formula_to_json(a), "rhs": formula_to_json(b)})
        }
        Formula::Implies(a, b) => {
            json!({"op": "implies", "lhs": formula_to_json(a), "rhs": formula_to_json(b)})
        }
        Formula::Exists(v, body) => {
            json!({"op": "exists", "var": v.as_str(), "body": formula_to_json(body)})
        }
        Formula::Forall(v, body) => {
            json!({"op": "forall", "var": v.as_str(), "body": formula_to_json(body)})
        }
    }
}

pub fn formula_from_json(v: &Value) -> Result<Formula, JsonError> {
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError(format!("expected an object, got {v}")))?;
    let op = obj
        .get("op")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError("missing string field \"op\"".into()))?;
    let var_field = |name: &str| -> Result<ast::Var, JsonError> {
        let s = obj
            .get(name)
            .and_then(Value::as_str)
            .ok_or_else(|| JsonError(format!("op {op:?} needs string field {name:?}")))?;
        if !ast::is_valid_name(s) {
            return Err(JsonError(format!("invalid variable name {s:?}")));
        }
        Ok(ast::Var::new(s))
    };
    let sub = |name: &str| -> Result<Formula, JsonError> {
        let child = obj
            .get(name)
            .ok_or_else(|| JsonError(format!("op {op:?} needs field {name:?}")))?;
        formula_from_json(child)
    };
    match op {
        "mem" => Ok(Formula::Mem(var_field("lhs")?, var_field("rhs")?)),
        "eq" => Ok(Formula::Eq(var_field("lhs")?, var_field("rhs")?)),
        "eqconst" => {
            match obj.get("rhs").and_then(Value::as_str) {
                Some("0") => {}
                other => return Err(JsonError(format!("eqconst rhs must be \"0\", got {other:?}"))),
            }
            Ok(Formula::EqConst(var_field("lhs")?, Const::Zero))
        }
        "not" => Ok(ast::not(sub("body")?)),
        "and" => Ok(ast::and(sub("lhs")?, sub("rhs")?)),
        "or" => Ok(ast::or(sub("lhs")?, sub("rhs")?)),
        "implies" => Ok(ast::implies(sub("lhs")?, sub("rhs")?)),
        "exists" => Ok(ast::exists(var_field("var")?, sub("body")?)),
        "forall" => Ok(ast::forall(var_field("var")?, sub("body")?)),
        other => Err(JsonError(format!("unknown op {other:?}"))),
    }
}
