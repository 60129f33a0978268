//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// A basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace(a: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a matrix given by rows.
pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)],
            vec![rat(2, 1), rat(4, 1), rat(7, 1), rat(1, 2)],
        ];
        let ns = nullspace(&a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot: BigRational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank(&a), 2);
    }
}
