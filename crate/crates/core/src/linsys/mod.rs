//! The linear functions `L_j` on the coefficients of `F`, the triangular
//! system they form, and the `theta`/`alpha` sequences that solve it.
//!
//! With `b_i = a_{n-i}` (and `b_{-1} = 0`) the `j`-th equation reads
//!
//! ```text
//! E_j(b) = -(b_j + b_{j-1}) + sum_{i=0}^{j} (-1)^i C(n-i, j-i) b_i
//! ```
//!
//! and `L_j(a) = E_j(b)`. In an odd equation `b_j` has coefficient `-2`; in
//! an even one it cancels, which is why the odd equations determine the
//! odd unknowns and the even equations are constraints.

mod theta;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::linalg;

pub use theta::{claim2_identities, convolution_check, solve_driven, theta_alpha, Claim2Report, ThetaAlpha};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinsysError {
    #[error("equation index {j} outside 0..={n}")]
    Index { j: usize, n: usize },
    #[error("coefficients do not satisfy L_0 = ... = L_{{n-1}} = 0")]
    InputNotInKernel,
    #[error("m must be odd and below n (got m = {m}, n = {n})")]
    BadOddIndex { m: usize, n: usize },
}

fn binom(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

/// `a_0..a_n` to `b_0..b_n` with `b_i = a_{n-i}`; the map is its own inverse.
pub fn reverse_index(v: &[BigRational]) -> Vec<BigRational> {
    v.iter().rev().cloned().collect()
}

/// `E_j(b)`.
pub fn equation_b(n: usize, b: &[BigRational], j: usize) -> Result<BigRational, LinsysError> {
    if j > n {
        return Err(LinsysError::Index { j, n });
    }
    let get = |i: usize| b.get(i).cloned().unwrap_or_else(BigRational::zero);
    let prev = if j == 0 { BigRational::zero() } else { get(j - 1) };
    let mut acc = -(get(j) + prev);
    for i in 0..=j {
        let term = binom(n - i, j - i) * get(i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `L_j(a_0, ..., a_n)`.
pub fn l_value(a: &[BigRational], j: usize) -> Result<BigRational, LinsysError> {
    let n = a.len() - 1;
    equation_b(n, &reverse_index(a), j)
}

/// Coefficients of `L_j` as a linear form in `a_0..a_n`.
pub fn l_form(n: usize, j: usize) -> Result<Vec<BigRational>, LinsysError> {
    (0..=n)
        .map(|k| {
            let mut e = vec![BigRational::zero(); n + 1];
            e[k] = BigRational::one();
            l_value(&e, j)
        })
        .collect()
}

/// Basis of the coefficient vectors `a` with `L_0 = ... = L_jmax = 0`.
pub fn kernel_basis(n: usize, jmax: usize) -> Result<Vec<Vec<BigRational>>, LinsysError> {
    let rows = (0..=jmax).map(|j| l_form(n, j)).collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::nullspace(&rows, n + 1))
}

/// Values `b_0..b_n` where the odd entries up to `m` solve the odd
/// equations `E_1 = E_3 = ... = E_m = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddSystemSolution {
    pub n: usize,
    pub m: usize,
    pub b: Vec<BigRational>,
}

/// Forward substitution through the odd equations. `b_even` supplies
/// `b_0, b_2, b_4, ...` (missing entries are zero); odd entries above `m`
/// are zero.
pub fn solve_odd_system(
    n: usize,
    m: usize,
    b_even: &[BigRational],
) -> Result<OddSystemSolution, LinsysError> {
    if m % 2 == 0 || m >= n {
        return Err(LinsysError::BadOddIndex { m, n });
    }
    let mut b = vec![BigRational::zero(); n + 1];
    for (k, v) in b_even.iter().enumerate() {
        if 2 * k <= n {
            b[2 * k] = v.clone();
        }
    }
    for j in (1..=m).step_by(2) {
        // E_j = -2 b_j + (terms in b_0..b_{j-1}); solve with b_j = 0 first.
        b[j] = BigRational::zero();
        let rest = equation_b(n, &b, j)?;
        b[j] = rest / BigInt::from(2);
    }
    Ok(OddSystemSolution { n, m, b })
}

impl OddSystemSolution {
    pub fn odd_equations_hold(&self) -> bool {
        (1..=self.m)
            .step_by(2)
            .all(|j| equation_b(self.n, &self.b, j).is_ok_and(|v| v.is_zero()))
    }
}

/// Whether `E_j = 0` for `j = 0, 2, ..., m+1`.
pub fn check_even_implied(sol: &OddSystemSolution) -> bool {
    (0..=sol.m + 1)
        .step_by(2)
        .filter(|&j| j <= sol.n)
        .all(|j| equation_b(sol.n, &sol.b, j).is_ok_and(|v| v.is_zero()))
}

/// `sum_{j=2}^{n} (-1)^j a_j`.
pub fn alternating_sum(a: &[BigRational]) -> BigRational {
    a.iter()
        .enumerate()
        .skip(2)
        .map(|(j, v)| if j % 2 == 0 { v.clone() } else { -v })
        .sum()
}

/// For `a` with `L_0 = ... = L_{n-1} = 0`, whether the alternating sum
/// `sum_{j >= 2} (-1)^j a_j` vanishes.
pub fn alternating_sum_check(a: &[BigRational]) -> Result<bool, LinsysError> {
    let n = a.len() - 1;
    for j in 0..n {
        if !l_value(a, j)?.is_zero() {
            return Err(LinsysError::InputNotInKernel);
        }
    }
    Ok(alternating_sum(a).is_zero())
}

/// Largest `h` in `[0, hmax]` with `L_0 = ... = L_h = 0`.
pub fn largest_vanishing_prefix(a: &[BigRational], hmax: usize) -> usize {
    let mut h = 0;
    for j in 1..=hmax {
        match l_value(a, j) {
            Ok(v) if v.is_zero() => h = j,
            _ => break,
        }
    }
    h
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn first_forms_match_closed_forms() {
        let a = vec![rat(3, 1), rat(-1, 2), rat(5, 7), rat(2, 1), rat(4, 3), rat(-3, 1)];
        let n = 5;
        assert!(l_value(&a, 0).unwrap().is_zero());
        let l1 = rat(n - 1, 1) * &a[5] - rat(2, 1) * &a[4];
        assert_eq!(l_value(&a, 1).unwrap(), l1);
        assert_eq!(l_value(&a, 2).unwrap(), rat(n, 2) * l1);
        assert!(l_value(&a, 6).is_err());
    }

    #[test]
    fn first_odd_unknown() {
        for n in 2..10 {
            let sol = solve_odd_system(n, 1, &[rat(1, 1)]).unwrap();
            assert_eq!(sol.b[1], rat(n as i64 - 1, 2));
        }
    }

    #[test]
    fn kernel_for_cubic_is_a2_equals_a3() {
        let k = kernel_basis(3, 1).unwrap();
        assert_eq!(k.len(), 3);
        for v in k {
            assert_eq!(v[2], v[3]);
        }
    }

    #[test]
    fn rejects_even_m() {
        assert!(solve_odd_system(5, 2, &[]).is_err());
    }
}
