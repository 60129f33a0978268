//! The four curves contracted by `k` and the curves contracted by `k^{-1}`:
//!
//! * `C1 = {x_0 = 0}`, `C2 = {x_0 = x_1}`, `C3 = {x_2 = 0}` all go to `[0:1:0]`;
//! * `C4 = {-x_0^2 + x_0 x_1 + x_1 x_2 = 0}` goes to `[1 : a_0 - 1 : 0]`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{MapParams, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Curve {
    C1,
    C2,
    C3,
    C4,
}

impl Curve {
    pub const ALL: [Curve; 4] = [Curve::C1, Curve::C2, Curve::C3, Curve::C4];

    /// Value of the defining form at `x`.
    pub fn equation(self, x: &[BigRational; 3]) -> BigRational {
        let [x0, x1, x2] = x;
        match self {
            Curve::C1 => x0.clone(),
            Curve::C2 => x0 - x1,
            Curve::C3 => x2.clone(),
            Curve::C4 => -(x0 * x0) + x0 * x1 + x1 * x2,
        }
    }

    pub fn contains(self, p: &ProjPoint) -> bool {
        self.equation(&p.rational_coords()).is_zero()
    }

    /// A point of the curve depending on a rational parameter `t`; the
    /// parametrisations cover all but finitely many points.
    pub fn point_at(self, t: &BigRational) -> ProjPoint {
        let one = BigRational::one();
        let zero = BigRational::zero();
        let c = match self {
            Curve::C1 => [zero, one, t.clone()],
            Curve::C2 => [one.clone(), one, t.clone()],
            Curve::C3 => [one, t.clone(), zero],
            // x_0 = 1: x_1 (1 + x_2) = 1
            Curve::C4 => [one.clone(), (&one + t).recip(), t.clone()],
        };
        ProjPoint::new(c).expect("curve parametrisation avoids the zero vector")
    }

    /// Image point of the contracted curve.
    pub fn image(self, params: &MapParams) -> ProjPoint {
        match self {
            Curve::C4 => {
                let one = BigRational::one();
                ProjPoint::new([one.clone(), params.a(0) - one, BigRational::zero()]).unwrap()
            }
            _ => super::special::e1(),
        }
    }
}

/// `C2' = {x_0^n + x_0^{n-1} x_1 - G(x_0, x_2) = 0}`, contracted by `k^{-1}`
/// to `[0:0:1]`: the points `[1 : F(y) - 1 : y]`.
pub fn c2_prime_point(params: &MapParams, y: &BigRational) -> ProjPoint {
    let one = BigRational::one();
    ProjPoint::new([one.clone(), params.eval_f(y) - one, y.clone()]).unwrap()
}
