//! Sorting parameters into the cases that govern degree growth, and the
//! growth polynomial and degree complexity predicted for each case.
//!
//! For even `n` only `a_0` matters. For odd `n` the first step is `h`, the
//! length of the vanishing prefix of `L_0, L_1, ...`; then `a_0` is tested
//! against two arithmetic conditions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{largest_real_root, ExactError, QPoly, RationalInterval, UniPoly};
use crate::linsys::{self, LinsysError};
use crate::mapcore::MapParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("case 6 has no characteristic polynomial; its degree complexity is 1")]
    NoPolynomialForCase6,
    #[error("label {label} does not apply to n = {n}")]
    LabelMismatch { label: CaseLabel, n: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
}

/// Case of the classification, with its numeric parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    Even1,
    Even2 { m: usize },
    Odd1 { h: usize },
    Odd2 { h: usize, m: usize },
    Odd3,
    Odd4 { m: usize },
    Odd5 { l: usize },
    Odd6,
}

impl CaseLabel {
    /// Short case name without parameters.
    pub fn name(&self) -> &'static str {
        match self {
            CaseLabel::Even1 => "Even1",
            CaseLabel::Even2 { .. } => "Even2",
            CaseLabel::Odd1 { .. } => "Odd1",
            CaseLabel::Odd2 { .. } => "Odd2",
            CaseLabel::Odd3 => "Odd3",
            CaseLabel::Odd4 { .. } => "Odd4",
            CaseLabel::Odd5 { .. } => "Odd5",
            CaseLabel::Odd6 => "Odd6",
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self, CaseLabel::Even1 | CaseLabel::Even2 { .. })
    }

    pub fn h(&self) -> Option<usize> {
        match *self {
            CaseLabel::Odd1 { h } | CaseLabel::Odd2 { h, .. } => Some(h),
            _ => None,
        }
    }

    pub fn m(&self) -> Option<usize> {
        match *self {
            CaseLabel::Even2 { m } | CaseLabel::Odd2 { m, .. } | CaseLabel::Odd4 { m } => Some(m),
            _ => None,
        }
    }

    pub fn l(&self) -> Option<usize> {
        match *self {
            CaseLabel::Odd5 { l } => Some(l),
            _ => None,
        }
    }

    /// Whether the label is meaningful for degree `n`.
    pub fn applies_to(&self, n: usize) -> bool {
        match *self {
            CaseLabel::Even1 | CaseLabel::Even2 { .. } => n >= 2 && n % 2 == 0,
            CaseLabel::Odd1 { h } | CaseLabel::Odd2 { h, .. } => {
                n >= 3 && n % 2 == 1 && h + 2 < n
            }
            CaseLabel::Odd6 => n == 3,
            _ => n >= 3 && n % 2 == 1,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CaseLabel::Even2 { m } => write!(f, "Even2(m={m})"),
            CaseLabel::Odd1 { h } => write!(f, "Odd1(h={h})"),
            CaseLabel::Odd2 { h, m } => write!(f, "Odd2(h={h},m={m})"),
            CaseLabel::Odd4 { m } => write!(f, "Odd4(m={m})"),
            CaseLabel::Odd5 { l } => write!(f, "Odd5(l={l})"),
            _ => f.write_str(self.name()),
        }
    }
}

/// `L_j(a_0, ..., a_n)`.
pub fn l_value(params: &MapParams, j: usize) -> Result<BigRational, ClassifyError> {
    Ok(linsys::l_value(params.coeffs(), j)?)
}

/// Largest `h` in `[0, n-2]` with `L_0 = ... = L_h = 0`.
pub fn find_h(params: &MapParams) -> usize {
    linsys::largest_vanishing_prefix(params.coeffs(), params.n() - 2)
}

/// `m >= 0` with `a_0 = 2/(1+m)`, if any.
pub fn detect_m(a0: &BigRational) -> Option<usize> {
    if !a0.is_positive() {
        return None;
    }
    let m = BigRational::from_integer(BigInt::from(2)) / a0 - BigRational::one();
    as_index(&m)
}

/// `l >= 0` with `a_0 = (n+1)/2 + l/(2(l+1))`, if any. Solving the linear
/// equation gives `l = 2t/(1-2t)` with `t = a_0 - (n+1)/2`.
pub fn detect_l(a0: &BigRational, n: usize) -> Option<usize> {
    let two = BigRational::from_integer(BigInt::from(2));
    let t = a0 - BigRational::new(BigInt::from(n + 1), BigInt::from(2));
    let den = BigRational::one() - &two * &t;
    if den.is_zero() {
        return None;
    }
    as_index(&(&two * &t / den))
}

fn as_index(q: &BigRational) -> Option<usize> {
    if q.is_integer() && !q.is_negative() {
        usize::try_from(q.to_integer()).ok()
    } else {
        None
    }
}

/// Assigns the case. Even `n` looks only at `a_0`; the `L_j` play no role.
pub fn classify(params: &MapParams) -> CaseLabel {
    let n = params.n();
    let a0 = params.a(0);
    let m = detect_m(&a0);
    if n % 2 == 0 {
        return match m {
            Some(m) => CaseLabel::Even2 { m },
            None => CaseLabel::Even1,
        };
    }
    let h = find_h(params);
    if h < n - 2 {
        return match m {
            Some(m) => CaseLabel::Odd2 { h, m },
            None => CaseLabel::Odd1 { h },
        };
    }
    match (m, detect_l(&a0, n)) {
        (None, None) => CaseLabel::Odd3,
        (Some(m), None) => CaseLabel::Odd4 { m },
        (None, Some(l)) => CaseLabel::Odd5 { l },
        (Some(_), Some(_)) => CaseLabel::Odd6,
    }
}

fn poly(cs: &[i64]) -> QPoly {
    UniPoly::from_i64s(crate::exactnum::Rationals, cs)
}

fn x_pow(k: usize) -> QPoly {
    poly(&[1]).shift(k)
}

/// Growth polynomial of the case, with integer coefficients.
pub fn predicted_charpoly(label: CaseLabel, n: usize) -> Result<QPoly, ClassifyError> {
    if !label.applies_to(n) {
        return Err(ClassifyError::LabelMismatch { label, n });
    }
    let n_i = n as i64;
    let quad = poly(&[-1, -(n_i + 1), 1]);
    let cubic3 = poly(&[-1, -2, -n_i, 1]);
    Ok(match label {
        CaseLabel::Even1 => quad,
        CaseLabel::Even2 { m } => &(&x_pow(2 * m + 1) * &quad) + &poly(&[n_i, 0, 1]),
        CaseLabel::Odd1 { h } => poly(&[-1, -(n_i + 1 - h as i64), -n_i, 1]),
        CaseLabel::Odd2 { h, m } => {
            let h = h as i64;
            let cubic = poly(&[-1, -(n_i - h + 1), -n_i, 1]);
            &(&x_pow(2 * m + 1) * &cubic) + &poly(&[n_i - h - 1, n_i, 1, 1])
        }
        CaseLabel::Odd3 => cubic3,
        CaseLabel::Odd4 { m } => &(&x_pow(2 * m) * &cubic3) + &poly(&[n_i, 1, 1]),
        CaseLabel::Odd5 { l } => &(&x_pow(2 * l + 2) * &cubic3) + &poly(&[1, 1, n_i]),
        CaseLabel::Odd6 => return Err(ClassifyError::NoPolynomialForCase6),
    })
}

/// Largest real root of the growth polynomial; exactly 1 for case 6.
pub fn predicted_delta(
    label: CaseLabel,
    n: usize,
    width: &BigRational,
) -> Result<RationalInterval, ClassifyError> {
    if label == CaseLabel::Odd6 {
        return Ok(RationalInterval::point(BigRational::one()));
    }
    Ok(largest_real_root(&predicted_charpoly(label, n)?, width)?)
}

/// True exactly for case 6: `n = 3`, `a_2 = a_3`, `a_0 = 2`.
pub fn has_automorphism(params: &MapParams) -> bool {
    classify(params) == CaseLabel::Odd6
}

/// Everything the classifier predicts for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierReport {
    pub n: usize,
    pub case: CaseLabel,
    /// `None` for case 6.
    pub predicted_poly: Option<QPoly>,
    pub delta: RationalInterval,
    pub automorphism: bool,
}

pub fn report(params: &MapParams, width: &BigRational) -> Result<ClassifierReport, ClassifyError> {
    let n = params.n();
    let case = classify(params);
    let predicted_poly = match predicted_charpoly(case, n) {
        Ok(p) => Some(p),
        Err(ClassifyError::NoPolynomialForCase6) => None,
        Err(e) => return Err(e),
    };
    Ok(ClassifierReport {
        n,
        case,
        predicted_poly,
        delta: predicted_delta(case, n, width)?,
        automorphism: case == CaseLabel::Odd6,
    })
}
