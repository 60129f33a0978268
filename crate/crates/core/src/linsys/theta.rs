//! Sequences indexed by odd integers, stored densely: entry `k` holds the
//! value at `2k + 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{Rationals, TruncatedSeries};

fn factorial(k: usize) -> BigRational {
    BigRational::from_integer((1..=k).map(BigInt::from).product())
}

/// Solves `sum_{i odd < m} z_i / (m-i)! + 2 z_m = rhs_m` for odd `m`, by
/// forward substitution.
pub fn solve_driven(rhs: &[BigRational]) -> Vec<BigRational> {
    let mut z: Vec<BigRational> = Vec::with_capacity(rhs.len());
    for (k, r) in rhs.iter().enumerate() {
        let m = 2 * k + 1;
        let mut acc = r.clone();
        for (ki, zi) in z.iter().enumerate() {
            let i = 2 * ki + 1;
            acc -= zi / factorial(m - i);
        }
        z.push(acc / BigInt::from(2));
    }
    z
}

/// `theta_1, theta_3, ...` and `alpha_1, alpha_3, ...` up to index `kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaAlpha {
    pub theta: Vec<BigRational>,
    pub alpha: Vec<BigRational>,
}

impl ThetaAlpha {
    /// `theta_m` for odd `m`.
    pub fn theta(&self, m: usize) -> &BigRational {
        &self.theta[(m - 1) / 2]
    }

    /// `alpha_m` for odd `m`.
    pub fn alpha(&self, m: usize) -> &BigRational {
        &self.alpha[(m - 1) / 2]
    }
}

/// Solves the `theta` recurrence (right-hand side `1, 0, 0, ...`) and the
/// `alpha` recurrence (right-hand side `1/m!`) for odd indices `<= kmax`.
pub fn theta_alpha(kmax: usize) -> ThetaAlpha {
    let count = kmax.div_ceil(2);
    let theta_rhs: Vec<BigRational> = (0..count)
        .map(|k| if k == 0 { BigRational::one() } else { BigRational::zero() })
        .collect();
    let alpha_rhs: Vec<BigRational> = (0..count).map(|k| factorial(2 * k + 1).recip()).collect();
    ThetaAlpha { theta: solve_driven(&theta_rhs), alpha: solve_driven(&alpha_rhs) }
}

/// Whether the driven system with right-hand side `c` is solved by the
/// convolution `z_m = sum_{i odd <= m} c_{m+1-i} theta_i`.
pub fn convolution_check(c: &[BigRational]) -> bool {
    let z = solve_driven(c);
    let ta = theta_alpha(2 * c.len());
    z.iter().enumerate().all(|(k, zk)| {
        // m = 2k+1; i = 2ki+1; c index (m+1-i) = 2(k-ki)+1
        let conv: BigRational = (0..=k).map(|ki| &c[k - ki] * &ta.theta[ki]).sum();
        &conv == zk
    })
}

/// Outcome of the identity checks for every odd `m <= kmax`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Claim2Report {
    pub kmax: usize,
    /// `theta` agrees with the coefficients of `1/(1 + cos t)`.
    pub theta_series: bool,
    /// `alpha` agrees with the coefficients of `sin t / (1 + cos t)`.
    pub alpha_series: bool,
    /// `d alpha / dt = theta` as series.
    pub derivative: bool,
    /// `alpha_m = theta_m / m`.
    pub ratio: bool,
    /// `sum_{i odd <= m} theta_i / (m-i+1)! - theta_m / m = 0`.
    pub sum_identity: bool,
    /// Odd indices at which some identity failed.
    pub failures: Vec<usize>,
}

impl Claim2Report {
    pub fn all_pass(&self) -> bool {
        self.theta_series && self.alpha_series && self.derivative && self.ratio && self.sum_identity
    }
}

fn cos_sin(order: usize) -> (TruncatedSeries<Rationals>, TruncatedSeries<Rationals>) {
    let mut cos = vec![BigRational::zero(); order];
    let mut sin = vec![BigRational::zero(); order];
    for k in 0..order {
        let v = factorial(k).recip();
        let v = if (k / 2) % 2 == 0 { v } else { -v };
        if k % 2 == 0 {
            cos[k] = v;
        } else {
            sin[k] = v;
        }
    }
    (
        TruncatedSeries::new(Rationals, cos, order),
        TruncatedSeries::new(Rationals, sin, order),
    )
}

/// Checks the series identities and the two closed relations for every odd
/// `m <= kmax`. Series are expanded to order `2 kmax + 2`.
pub fn claim2_identities(kmax: usize) -> Claim2Report {
    let ta = theta_alpha(kmax);
    let order = 2 * kmax + 2;
    let (cos, sin) = cos_sin(order);
    let one = TruncatedSeries::constant(Rationals, BigRational::one(), order);
    let theta_t = one.add(&cos).inverse().expect("1 + cos t has constant term 2");
    let alpha_t = sin.mul(&theta_t);
    let mut rep = Claim2Report {
        kmax,
        theta_series: true,
        alpha_series: true,
        derivative: true,
        ratio: true,
        sum_identity: true,
        failures: Vec::new(),
    };
    let sign = |k: usize, v: &BigRational| if k % 2 == 0 { v.clone() } else { -v };
    for (k, (th, al)) in ta.theta.iter().zip(&ta.alpha).enumerate() {
        let m = 2 * k + 1;
        let mut ok = true;
        if theta_t.coeff(2 * k) != sign(k, th) {
            rep.theta_series = false;
            ok = false;
        }
        if alpha_t.coeff(2 * k + 1) != sign(k, al) {
            rep.alpha_series = false;
            ok = false;
        }
        let mm = BigRational::from_integer(BigInt::from(m));
        if al != &(th / &mm) {
            rep.ratio = false;
            ok = false;
        }
        let s: BigRational = (0..=k)
            .map(|ki| &ta.theta[ki] / factorial(m - (2 * ki + 1) + 1))
            .sum::<BigRational>()
            - th / &mm;
        if !s.is_zero() {
            rep.sum_identity = false;
            ok = false;
        }
        if !ok {
            rep.failures.push(m);
        }
    }
    let d_alpha = alpha_t.derivative();
    let upto = d_alpha.order().min(theta_t.order());
    rep.derivative = d_alpha.truncate(upto) == theta_t.truncate(upto);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn first_values() {
        let ta = theta_alpha(3);
        assert_eq!(ta.theta(1), &rat(1, 2));
        assert_eq!(ta.theta(3), &rat(-1, 8));
        assert_eq!(ta.alpha(1), &rat(1, 2));
        assert_eq!(ta.alpha(3), &rat(-1, 24));
    }

    #[test]
    fn sum_identity_at_three_by_hand() {
        let ta = theta_alpha(3);
        let s = ta.theta(1) / rat(6, 1) + ta.theta(3) - ta.theta(3) / rat(3, 1);
        assert!(s.is_zero());
    }

    #[test]
    fn cosine_coefficients() {
        let (cos, sin) = cos_sin(6);
        assert_eq!(cos.coeff(2), rat(-1, 2));
        assert_eq!(cos.coeff(4), rat(1, 24));
        assert_eq!(sin.coeff(3), rat(-1, 6));
        assert_eq!(sin.coeff(5), rat(1, 120));
    }
}
