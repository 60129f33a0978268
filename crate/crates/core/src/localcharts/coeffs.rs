//! The constants `d_j`, `gamma_j`, `c_j` and the point sequences `ep_j`,
//! `ip_j` on the tower of fibers `P_{n-1+j}` over `e_1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LocalError;
use crate::exactnum::{QPoly, Rationals, TruncatedSeries, UniPoly};
use crate::mapcore::MapParams;

fn check_index(params: &MapParams, j: usize) -> Result<(), LocalError> {
    let n = params.n();
    if j > n {
        return Err(LocalError::Index { j, n });
    }
    Ok(())
}

/// `s^n F(-1 - 1/s) = sum_i a_i (-1)^i (1+s)^i s^{n-i}`.
pub fn d_polynomial(params: &MapParams) -> QPoly {
    let n = params.n();
    let one_plus_s = QPoly::from_i64s(Rationals, &[1, 1]);
    let mut acc = QPoly::zero(Rationals);
    for i in 0..=n {
        let mut a = params.a(i);
        if i % 2 == 1 {
            a = -a;
        }
        acc = &acc + &one_plus_s.pow(i as u32).scale(&a).shift(n - i);
    }
    acc
}

/// `-(1+s) s^n F(1/s)`.
pub fn gamma_polynomial(params: &MapParams) -> QPoly {
    let n = params.n();
    let rev: Vec<BigRational> = (0..=n).map(|k| params.a(n - k)).collect();
    let one_plus_s = QPoly::from_i64s(Rationals, &[-1, -1]);
    &UniPoly::from_rationals(&rev) * &one_plus_s
}

/// Coefficient of `s^j` in `s^n F(-1 - 1/s)`.
pub fn coeff_d(params: &MapParams, j: usize) -> Result<BigRational, LocalError> {
    check_index(params, j)?;
    Ok(d_polynomial(params).coeff(j))
}

/// Coefficient of `s^j` in `-(1+s) s^n F(1/s)`.
pub fn coeff_gamma(params: &MapParams, j: usize) -> Result<BigRational, LocalError> {
    check_index(params, j)?;
    Ok(gamma_polynomial(params).coeff(j))
}

/// Coefficient of `s^j` in `(1+s)/(p_0 + ... + p_{j-1} s^{j-1} + s^j u)`.
fn sample_coefficient(prefix: &[BigRational], u: &BigRational) -> Result<BigRational, LocalError> {
    let j = prefix.len();
    let mut den = prefix.to_vec();
    den.push(u.clone());
    let den = TruncatedSeries::new(Rationals, den, j + 1);
    let num = TruncatedSeries::new(Rationals, vec![BigRational::one(), BigRational::one()], j + 1);
    let inv = den.inverse().map_err(|_| LocalError::ZeroPrefix)?;
    Ok(num.mul(&inv).coeff(j))
}

/// `c_j` for the prefix `p_0, ..., p_{j-1}`: the coefficient of `s^j` in
/// `(1+s)/(p_0 + ... + s^j u)` is `-u/p_0^2 + c_j`. It is read off from two
/// samples of `u`, which also confirms the slope.
pub fn coeff_c(prefix: &[BigRational]) -> Result<BigRational, LocalError> {
    let (u1, u2) = (BigRational::zero(), BigRational::one());
    let v1 = sample_coefficient(prefix, &u1)?;
    let v2 = sample_coefficient(prefix, &u2)?;
    let p0 = prefix.first().ok_or(LocalError::ZeroPrefix)?;
    let slope = -(p0 * p0).recip();
    if &v2 - &v1 != slope {
        return Err(LocalError::NotAffine);
    }
    Ok(v1)
}

/// `ep_0..ep_J` and `ip_0..ip_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSequences {
    pub ep: Vec<BigRational>,
    pub ip: Vec<BigRational>,
    /// `c_1..c_J` (index 0 unused and zero).
    pub c: Vec<BigRational>,
}

impl PointSequences {
    /// Number of leading indices with `ep_j = ip_j`.
    pub fn agreeing_prefix(&self) -> usize {
        self.ep.iter().zip(&self.ip).take_while(|(e, i)| e == i).count()
    }
}

/// Builds `ep_j = (gamma_j + c_j)/a_n^2` and `ip_j = (c_j + d_j)/a_n^2`
/// for `j <= jmax`, starting from `ep_0 = ip_0 = 1/a_n`. Index `j + 1` is
/// only defined when `ep_j = ip_j`; otherwise the tower stops at `j`.
pub fn ep_ip_sequence(params: &MapParams, jmax: usize) -> Result<PointSequences, LocalError> {
    let n = params.n();
    if n % 2 == 0 {
        return Err(LocalError::EvenDegree(n));
    }
    if jmax >= n {
        return Err(LocalError::Index { j: jmax, n: n - 1 });
    }
    let an = params.a(n);
    let an2 = &an * &an;
    let d = d_polynomial(params);
    let g = gamma_polynomial(params);
    let mut seq = PointSequences { ep: vec![an.recip()], ip: vec![an.recip()], c: vec![BigRational::zero()] };
    for j in 1..=jmax {
        if seq.ep[j - 1] != seq.ip[j - 1] {
            return Err(LocalError::SequenceBlocked(j - 1));
        }
        let c = coeff_c(&seq.ip)?;
        seq.ip.push((&c + d.coeff(j)) / &an2);
        seq.ep.push((&c + g.coeff(j)) / &an2);
        seq.c.push(c);
    }
    Ok(seq)
}

/// The prefix `ep_0, ..., ep_{n-1}` used by the top chart `P_{2n-1}`,
/// together with `c_n`. Needs `ep_j = ip_j` for every `j <= n-2`.
pub fn top_prefix(params: &MapParams) -> Result<(Vec<BigRational>, BigRational), LocalError> {
    let n = params.n();
    let seq = ep_ip_sequence(params, n - 1)?;
    let c_n = coeff_c(&seq.ep)?;
    Ok((seq.ep, c_n))
}

/// Smallest `l >= 0` with `2 a_0 (l+1) - (n+1)(l+1) - l = 0`.
pub fn orbit_condition_odd(params: &MapParams) -> Option<usize> {
    let n = BigRational::from_integer(BigInt::from(params.n()));
    let two_a0 = params.a(0) * BigInt::from(2);
    let one = BigRational::one();
    // l (2a_0 - n - 2) + (2a_0 - n - 1) = 0
    let slope = &two_a0 - &n - &one - &one;
    let offset = &two_a0 - &n - &one;
    if slope.is_zero() {
        return None;
    }
    let l = -offset / slope;
    if l.is_integer() && l >= BigRational::zero() {
        usize::try_from(l.to_integer()).ok()
    } else {
        None
    }
}
