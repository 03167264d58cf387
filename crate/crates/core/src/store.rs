//! Hook for persisting expensive intermediates (power sums, AT polynomials).
//!
//! The library never touches the filesystem itself; a front end supplies a
//! `Store` and the evaluators consult it before computing.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::scalar::{BiPoly, Field, Poly, RatFunc, Var};

pub trait Store: Send + Sync {
    /// Payload stored under (kind, key), if any.
    fn load(&self, kind: &str, key: &str) -> Option<Value>;
    /// Records a payload; failures are the store's business.
    fn save(&self, kind: &str, key: &str, payload: &Value);
}

/// Field part of every cache key: q together with the defining polynomial.
pub fn field_key(field: &Field) -> String {
    let m: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
    format!("q={};f={}", field.q(), m.join(","))
}

#[derive(Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<u32>,
    pub den: Vec<u32>,
}

pub fn ratfunc_to_json(r: &RatFunc) -> Value {
    serde_json::to_value(RatFuncJson {
        num: r.num().coeffs().to_vec(),
        den: r.den().coeffs().to_vec(),
    })
    .expect("plain data")
}

pub fn ratfunc_from_json(field: &Field, v: &Value) -> Result<RatFunc> {
    let j: RatFuncJson = serde_json::from_value(v.clone())
        .map_err(|e| crate::Error::Parse(format!("rational function payload: {e}")))?;
    RatFunc::new(
        Poly::try_new(field, Var::Theta, j.num)?,
        Poly::try_new(field, Var::Theta, j.den)?,
    )
}

pub fn bipoly_to_json(b: &BiPoly) -> Value {
    serde_json::to_value(b.to_table()).expect("plain data")
}

pub fn bipoly_from_json(field: &Field, v: &Value) -> Result<BiPoly> {
    let table: Vec<Vec<u32>> = serde_json::from_value(v.clone())
        .map_err(|e| crate::Error::Parse(format!("polynomial table payload: {e}")))?;
    BiPoly::from_table(field, table)
}
