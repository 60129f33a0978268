//! Degrees of iterates, measured on pushforwards of random lines.
//!
//! A line through two random integer points is generic with overwhelming
//! probability: it fails only by passing through one of the finitely many
//! rational points of indeterminacy of the iterates, or, modulo `p`, by an
//! accidental common factor whose chance is about `d_N / p` per step.
//! Every request runs two independent lines (different primes in prime
//! mode) and accepts the componentwise maximum once two runs reach it. A
//! degenerate run can only lower degrees, so the maximum is the generic
//! value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{Field, PrimeField, Rationals, NTT_PRIMES};

use super::{push_arc, MapError, MapParams, ParamArc};

/// Arithmetic used for pushforwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithMode {
    /// Exact rationals; coefficient growth limits this to short sequences.
    Exact,
    /// Reduction modulo primes just below `2^61`.
    Prime,
}

impl FromStr for ArithMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(ArithMode::Exact),
            "prime" => Ok(ArithMode::Prime),
            _ => Err(format!("unknown mode {s:?}, expected exact or prime")),
        }
    }
}

/// Longest sequence for which exact mode is the default.
pub const EXACT_DEFAULT_MAX_ITERS: usize = 5;

/// Number of line pairs tried before giving up.
pub const MAX_ATTEMPTS: usize = 5;

/// Exact mode up to [`EXACT_DEFAULT_MAX_ITERS`], prime mode beyond.
pub fn default_mode(iters: usize) -> ArithMode {
    if iters <= EXACT_DEFAULT_MAX_ITERS {
        ArithMode::Exact
    } else {
        ArithMode::Prime
    }
}

type Line = ([i64; 3], [i64; 3]);

fn random_line(rng: &mut ChaCha8Rng) -> Line {
    loop {
        let p: [i64; 3] = std::array::from_fn(|_| rng.random_range(-999..=999));
        let q: [i64; 3] = std::array::from_fn(|_| rng.random_range(-999..=999));
        let cross = [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ];
        if cross.iter().any(|&c| c != 0) {
            return (p, q);
        }
    }
}

fn run_in<F: Field>(params: &MapParams, field: F, line: &Line, iters: usize) -> Result<Vec<usize>, MapError> {
    let p = line.0.map(|v| field.from_i64(v));
    let q = line.1.map(|v| field.from_i64(v));
    let mut arc = ParamArc::line(field, &p, &q)?;
    let mut out = vec![arc.degree()];
    for _ in 0..iters {
        arc = push_arc(params, &arc)?;
        out.push(arc.degree());
    }
    Ok(out)
}

fn single_run(
    params: &MapParams,
    mode: ArithMode,
    run_index: usize,
    line: &Line,
    iters: usize,
) -> Result<Vec<usize>, MapError> {
    match mode {
        ArithMode::Exact => run_in(params, Rationals, line, iters),
        ArithMode::Prime => {
            // Skip primes dividing a denominator of F.
            let mut last = MapError::BadReduction;
            for k in 0..NTT_PRIMES.len() {
                let p = NTT_PRIMES[(run_index + k) % NTT_PRIMES.len()];
                let field = PrimeField::new(p).expect("listed moduli are prime");
                match run_in(params, field, line, iters) {
                    Err(MapError::BadReduction) => last = MapError::BadReduction,
                    other => return other,
                }
            }
            Err(last)
        }
    }
}

/// Every run performed while computing a degree sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degrees: Vec<usize>,
    pub runs: Vec<Vec<usize>>,
}

/// `d_0, ..., d_iters` where `d_j = deg k^j`, `d_0 = 1`.
pub fn degree_sequence(
    params: &MapParams,
    iters: usize,
    mode: ArithMode,
    seed: u64,
) -> Result<Vec<usize>, MapError> {
    degree_sequence_report(params, iters, mode, seed).map(|r| r.degrees)
}

pub fn degree_sequence_report(
    params: &MapParams,
    iters: usize,
    mode: ArithMode,
    seed: u64,
) -> Result<DegreeReport, MapError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for attempt in 0..MAX_ATTEMPTS {
        let lines = [random_line(&mut rng), random_line(&mut rng)];
        let pair: Vec<Result<Vec<usize>, MapError>> = std::thread::scope(|s| {
            let handles: Vec<_> = lines
                .iter()
                .enumerate()
                .map(|(k, line)| {
                    s.spawn(move || single_run(params, mode, 2 * attempt + k, line, iters))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("degree run panicked"))
                .collect()
        });
        for r in pair {
            match r {
                Ok(d) => runs.push(d),
                // A line inside an exceptional curve is just a bad sample.
                Err(MapError::ArcCollapse) => {}
                Err(e) => return Err(e),
            }
        }
        if runs.is_empty() {
            continue;
        }
        let max: Vec<usize> = (0..=iters)
            .map(|j| runs.iter().map(|r| r[j]).max().unwrap())
            .collect();
        if runs.iter().filter(|r| **r == max).count() >= 2 {
            return Ok(DegreeReport { degrees: max, runs });
        }
    }
    Err(MapError::GenericityFailure { attempts: MAX_ATTEMPTS })
}

/// Residuals `sum_i c_i d_{j+i}` of a linear recurrence with integer
/// coefficients `c` (lowest first), for every shift `j` that fits.
pub fn recurrence_residuals(coeffs: &[BigInt], degrees: &[usize]) -> Vec<BigInt> {
    let k = coeffs.len();
    if k == 0 || degrees.len() < k {
        return Vec::new();
    }
    (0..=degrees.len() - k)
        .map(|j| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(degrees[j + i]))
                .sum()
        })
        .collect()
}

/// `d_{j+1} / d_j` as exact rationals.
pub fn growth_ratios(degrees: &[usize]) -> Vec<BigRational> {
    degrees
        .windows(2)
        .map(|w| BigRational::new(BigInt::from(w[1]), BigInt::from(w[0])))
        .collect()
}
