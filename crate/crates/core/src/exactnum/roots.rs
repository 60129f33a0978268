//! Isolation of the largest real root with Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::sign;
use super::poly::UniPoly;
use super::{ExactError, Rationals};

/// A closed interval with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `10^-12`, the default isolation width.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Sturm sequence of a squarefree polynomial.
fn sturm_chain(q: &UniPoly<Rationals>) -> Vec<UniPoly<Rationals>> {
    let mut chain = vec![q.clone(), q.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].divrem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn changes_at(chain: &[UniPoly<Rationals>], x: &BigRational) -> usize {
    sign_changes(chain.iter().map(|p| sign(&p.eval(x))))
}

fn changes_at_pos_inf(chain: &[UniPoly<Rationals>]) -> usize {
    sign_changes(chain.iter().map(|p| sign(p.leading().unwrap())))
}

fn changes_at_neg_inf(chain: &[UniPoly<Rationals>]) -> usize {
    sign_changes(chain.iter().map(|p| {
        let s = sign(p.leading().unwrap());
        if p.degree().unwrap() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &UniPoly<Rationals>) -> Result<usize, ExactError> {
    let chain = sturm_chain(&squarefree(p)?);
    Ok(changes_at_neg_inf(&chain) - changes_at_pos_inf(&chain))
}

fn squarefree(p: &UniPoly<Rationals>) -> Result<UniPoly<Rationals>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p.div_exact(&g).expect("gcd divides").monic())
}

/// Simplest rational (smallest denominator) in the closed interval.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    if lo.is_integer() {
        return lo.clone();
    }
    let fl = lo.floor();
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let a = (hi - &fl).recip();
    let b = (lo - &fl).recip();
    fl + simplest_rational_between(&a, &b).recip()
}

/// An interval of width at most `width` containing the largest real root
/// of `p`. A rational root is returned as a degenerate interval `[r, r]`.
pub fn largest_real_root(
    p: &UniPoly<Rationals>,
    width: &BigRational,
) -> Result<RationalInterval, ExactError> {
    let q = squarefree(p)?;
    let chain = sturm_chain(&q);
    if changes_at_neg_inf(&chain) == changes_at_pos_inf(&chain) {
        return Err(ExactError::NoRealRoot);
    }
    // Cauchy bound: every root has |x| < 1 + max |a_i / a_d|.
    let lc = q.leading().unwrap().clone();
    let bound = q
        .coeffs()
        .iter()
        .map(|c| (c / &lc).abs())
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m })
        + BigRational::one();
    let mut lo = -bound.clone();
    let mut hi = bound;
    // Two distinct rationals whose denominators divide the integer leading
    // coefficient are at least 1/lc^2 apart; shrinking below that makes the
    // simplest rational in the interval the only possible rational root.
    let int_lc = super::gcd::clear_denominators(q.coeffs()).last().unwrap().abs();
    let separation = BigRational::new(BigInt::one(), BigInt::from(2) * &int_lc * &int_lc);
    let target = if &separation < width { separation } else { width.clone() };
    let v_hi = changes_at(&chain, &hi);
    // Invariant: the largest root lies in (lo, hi].
    while &hi - &lo > target {
        let mid = (&lo + &hi) / BigInt::from(2);
        if changes_at(&chain, &mid) > v_hi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let cand = simplest_rational_between(&lo, &hi);
    if q.eval(&cand).is_zero() {
        return Ok(RationalInterval::point(cand));
    }
    Ok(RationalInterval::new(lo, hi))
}
