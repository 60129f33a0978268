//! JSON shapes. Rationals are strings `"p/q"`, small integers are numbers
//! and integers that overflow `i64` fall back to strings.

use birdeg_core::exactnum::{format_rational, QPoly, RationalInterval};
use birdeg_core::mapcore::MapParams;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

pub fn rational(q: &BigRational) -> String {
    format_rational(q)
}

pub fn integer(z: &BigInt) -> Value {
    match i64::try_from(z) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(z.to_string()),
    }
}

/// Coefficients lowest first; rational coefficients become strings.
pub fn poly(p: &QPoly) -> Vec<Value> {
    p.coeffs()
        .iter()
        .map(|c| if c.is_integer() { integer(&c.to_integer()) } else { Value::from(rational(c)) })
        .collect()
}

pub fn interval(i: &RationalInterval) -> [String; 2] {
    [rational(&i.lo), rational(&i.hi)]
}

#[derive(Serialize)]
pub struct Header {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl Header {
    pub fn new(name: &Option<String>, p: &MapParams) -> Self {
        Header { name: name.clone(), n: p.n(), coeffs: p.coeffs().iter().map(rational).collect() }
    }
}
