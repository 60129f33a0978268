//! Parameter files: one JSON object `{"n": 3, "coeffs": ["2", "1", "1", "1"]}`
//! or an array of them.

use std::fmt;
use std::path::Path;

use birdeg_core::exactnum::parse_rational;
use birdeg_core::mapcore::MapParams;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

/// Rejected input; reported with exit code 2.
#[derive(Debug)]
pub struct InvalidInput(pub String);

impl fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid input: {}", self.0)
    }
}

impl std::error::Error for InvalidInput {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    n: Option<usize>,
    coeffs: Vec<String>,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawInput {
    One(RawParams),
    Many(Vec<RawParams>),
}

/// A validated parameter set.
#[derive(Clone, Debug)]
pub struct ParamSet {
    pub name: Option<String>,
    pub params: MapParams,
}

fn validate(raw: RawParams) -> Result<ParamSet, InvalidInput> {
    let coeffs = raw
        .coeffs
        .iter()
        .map(|s| parse_rational(s).map_err(|e| InvalidInput(e.to_string())))
        .collect::<Result<Vec<BigRational>, _>>()?;
    if coeffs.len() < 3 {
        return Err(InvalidInput(format!("need n >= 2, got {} coefficients", coeffs.len())));
    }
    let n = coeffs.len() - 1;
    if let Some(m) = raw.n {
        if m != n {
            return Err(InvalidInput(format!("n = {m} but {} coefficients were given", coeffs.len())));
        }
    }
    if coeffs[n].is_zero() {
        return Err(InvalidInput("leading coefficient a_n is zero".into()));
    }
    let params = MapParams::new(coeffs).map_err(|e| InvalidInput(e.to_string()))?;
    Ok(ParamSet { name: raw.name, params })
}

/// Parses a single object or an array of objects.
pub fn parse_params(text: &str) -> Result<Vec<ParamSet>, InvalidInput> {
    let raw: RawInput = serde_json::from_str(text).map_err(|e| InvalidInput(e.to_string()))?;
    let list = match raw {
        RawInput::One(p) => vec![p],
        RawInput::Many(v) if v.is_empty() => return Err(InvalidInput("empty batch".into())),
        RawInput::Many(v) => v,
    };
    list.into_iter().map(validate).collect()
}

pub fn read_params(path: &Path) -> Result<Vec<ParamSet>, InvalidInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InvalidInput(format!("{}: {e}", path.display())))?;
    parse_params(&text)
}

/// `"5,0,1"` as `a_0, a_1, a_2`.
pub fn params_from_list(list: &str) -> Result<ParamSet, InvalidInput> {
    let coeffs = list.split(',').map(|s| s.trim().to_string()).collect();
    validate(RawParams { n: None, coeffs, name: None })
}
