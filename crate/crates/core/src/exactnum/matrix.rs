//! Square matrices over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::Rationals;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    /// Row-major entries.
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        IntMatrix { dim, data: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.dim..(i + 1) * self.dim].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// `det(M - xI)`, lowest degree first, by Berkowitz's division-free
    /// algorithm.
    pub fn char_poly(&self) -> UniPoly<Rationals> {
        let d = self.dim;
        // Coefficients of det(xI - A_r), highest degree first.
        let mut c: Vec<BigInt> = vec![BigInt::one(), -self.get(0, 0)];
        for r in 1..d {
            let col: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<BigInt> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigInt::one());
            t.push(-self.get(r, r));
            let mut v = col;
            for k in 0..r {
                let dot = row.iter().zip(&v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
                t.push(-dot);
                if k + 1 < r {
                    v = (0..r)
                        .map(|i| (0..r).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
                        .collect();
                }
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..=i.min(r) {
                    *slot += &t[i - j] * &c[j];
                }
            }
            c = next;
        }
        let sign = if d % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let low_first: Vec<BigInt> = c.into_iter().rev().map(|v| v * &sign).collect();
        UniPoly::from_bigints(&low_first)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    /// Fraction-free determinant, used to check the characteristic
    /// polynomial by evaluation.
    fn bareiss_det(m: &IntMatrix) -> BigInt {
        let n = m.dim();
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    #[test]
    fn identity_gives_one_minus_x_squared() {
        let p = IntMatrix::identity(2).char_poly();
        assert_eq!(p, UniPoly::from_i64s(Rationals, &[1, -2, 1]));
    }

    #[test]
    fn char_poly_agrees_with_pointwise_determinants() {
        let m = IntMatrix::from_i64_rows(&[
            vec![2, -1, 0, 3],
            vec![5, 0, 1, -2],
            vec![0, 4, -3, 1],
            vec![1, 1, 1, 7],
        ]);
        let p = m.char_poly();
        assert_eq!(p.degree(), Some(4));
        for x in -2..=3i64 {
            let mut shifted = m.clone();
            for i in 0..4 {
                shifted.set(i, i, m.get(i, i) - x);
            }
            let val = p.eval(&BigRational::from_integer(x.into()));
            assert_eq!(val, BigRational::from_integer(bareiss_det(&shifted)));
        }
    }

    #[test]
    fn diagonal_eigenvalues_are_roots() {
        let m = IntMatrix::from_i64_rows(&[vec![3, 0, 0], vec![0, -1, 0], vec![0, 0, 4]]);
        let p = m.char_poly();
        for e in [3, -1, 4] {
            assert!(num_traits::Zero::is_zero(&p.eval(&BigRational::from_integer(e.into()))));
        }
        // odd dimension: leading coefficient is -1
        assert_eq!(p.leading().unwrap(), &BigRational::from_integer((-1).into()));
    }

    #[test]
    fn restriction_and_columns() {
        let m = IntMatrix::from_columns(&[
            vec![1.into(), 2.into()],
            vec![3.into(), 4.into()],
        ]);
        assert_eq!(m.get(1, 0), &BigInt::from(2));
        assert_eq!(m.restrict(&[1]).get(0, 0), &BigInt::from(4));
    }
}
