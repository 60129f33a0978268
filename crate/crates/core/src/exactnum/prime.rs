//! Prime fields `Z/pZ` for odd primes `p < 2^62`, in Montgomery form.
//!
//! When `p - 1` has a large power of two, polynomial products go through a
//! number-theoretic transform, division through Newton inversion, and gcd
//! through the half-gcd recursion. Other primes fall back to the quadratic
//! kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::field::{Field, Ring};
use super::ExactError;

/// Primes of the form `c * 2^k + 1` just below `2^61`, all NTT-friendly.
pub const NTT_PRIMES: [u64; 3] = [
    2_287_828_610_704_211_969, // 127 * 2^54 + 1
    2_053_641_430_080_946_177, // 57 * 2^55 + 1
    1_945_555_039_024_054_273, // 27 * 2^56 + 1
];

pub const DEFAULT_PRIME: u64 = NTT_PRIMES[0];

/// An element in Montgomery representation. Only meaningful together with
/// the [`PrimeField`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem(u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    /// `-p^{-1} mod 2^64`
    pinv: u64,
    /// `2^64 mod p`, the Montgomery image of one.
    r1: u64,
    /// `2^128 mod p`
    r2: u64,
    two_adicity: u32,
    /// Primitive `2^two_adicity`-th root of unity (Montgomery form), or 0
    /// when transforms are not used for this prime.
    root: u64,
}

const MIN_NTT_ADICITY: u32 = 16;
const NTT_CUTOFF: usize = 48;
const DIV_CUTOFF: usize = 64;
const HGCD_CUTOFF: usize = 96;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if p < 3 || p >= 1 << 62 || !is_prime_u64(p) {
            return Err(ExactError::BadModulus(p));
        }
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = mulmod(r1, r1, p);
        let mut f = PrimeField {
            p,
            pinv: inv.wrapping_neg(),
            r1,
            r2,
            two_adicity: (p - 1).trailing_zeros(),
            root: 0,
        };
        if f.two_adicity >= MIN_NTT_ADICITY {
            // Any quadratic non-residue raised to the odd part of p-1 has
            // order exactly 2^two_adicity.
            let odd = (p - 1) >> f.two_adicity;
            let g = (2..)
                .find(|&g| powmod(g, (p - 1) / 2, p) == p - 1)
                .expect("odd prime has a non-residue");
            f.root = f.to_mont(powmod(g, odd, p));
        }
        Ok(f)
    }

    pub fn default_prime() -> Self {
        Self::new(DEFAULT_PRIME).expect("default modulus is prime")
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn has_fast_transform(&self) -> bool {
        self.root != 0
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn to_mont(&self, x: u64) -> u64 {
        self.redc((x % self.p) as u128 * self.r2 as u128)
    }

    #[inline]
    fn m_mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    fn m_add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn m_sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn m_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = self.r1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.m_mul(acc, base);
            }
            base = self.m_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn m_inv(&self, a: u64) -> u64 {
        self.m_pow(a, self.p - 2)
    }

    pub fn from_u64(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem(self.to_mont(v))
    }

    /// Canonical representative in `[0, p)`.
    pub fn value(&self, a: &PrimeFieldElem) -> u64 {
        self.redc(a.0 as u128)
    }

    pub fn from_bigint(&self, v: &BigInt) -> PrimeFieldElem {
        let r = v.mod_floor(&BigInt::from(self.p));
        self.from_u64(r.to_u64().expect("reduced residue fits"))
    }
}

impl Ring for PrimeField {
    type Elem = PrimeFieldElem;

    fn zero(&self) -> PrimeFieldElem {
        PrimeFieldElem(0)
    }
    fn one(&self) -> PrimeFieldElem {
        PrimeFieldElem(self.r1)
    }
    fn is_zero(&self, a: &PrimeFieldElem) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(self.m_add(a.0, b.0))
    }
    fn sub(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(self.m_sub(a.0, b.0))
    }
    fn mul(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(self.m_mul(a.0, b.0))
    }
    fn neg(&self, a: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(self.m_sub(0, a.0))
    }
    fn from_i64(&self, v: i64) -> PrimeFieldElem {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &PrimeFieldElem) -> Option<PrimeFieldElem> {
        (a.0 != 0).then(|| PrimeFieldElem(self.m_inv(a.0)))
    }

    fn from_rational(&self, q: &BigRational) -> Option<PrimeFieldElem> {
        let d = self.from_bigint(q.denom());
        let n = self.from_bigint(q.numer());
        self.div(&n, &d)
    }

    fn poly_mul(&self, a: &[PrimeFieldElem], b: &[PrimeFieldElem]) -> Vec<PrimeFieldElem> {
        wrap(fast::mul(self, &raw(a), &raw(b)))
    }

    fn poly_divrem(
        &self,
        a: &[PrimeFieldElem],
        b: &[PrimeFieldElem],
    ) -> (Vec<PrimeFieldElem>, Vec<PrimeFieldElem>) {
        let (q, r) = fast::divrem(self, &raw(a), &raw(b));
        (wrap(q), wrap(r))
    }

    fn poly_gcd(&self, a: &[PrimeFieldElem], b: &[PrimeFieldElem]) -> Vec<PrimeFieldElem> {
        wrap(fast::gcd(self, raw(a), raw(b)))
    }
}

fn raw(a: &[PrimeFieldElem]) -> Vec<u64> {
    a.iter().map(|e| e.0).collect()
}

fn wrap(a: Vec<u64>) -> Vec<PrimeFieldElem> {
    a.into_iter().map(PrimeFieldElem).collect()
}

/// Kernels on raw Montgomery vectors, normalised without trailing zeros.
mod fast {
    use super::*;

    type P = Vec<u64>;

    fn trim(v: &mut P) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn deg(v: &[u64]) -> usize {
        v.len() - 1
    }

    fn add(f: &PrimeField, a: &[u64], b: &[u64]) -> P {
        let n = a.len().max(b.len());
        let mut v: P = (0..n)
            .map(|i| f.m_add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    fn sub(f: &PrimeField, a: &[u64], b: &[u64]) -> P {
        let n = a.len().max(b.len());
        let mut v: P = (0..n)
            .map(|i| f.m_sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    fn schoolbook(f: &PrimeField, a: &[u64], b: &[u64]) -> P {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.m_add(out[i + j], f.m_mul(x, y));
            }
        }
        out
    }

    fn ntt(f: &PrimeField, a: &mut [u64], invert: bool) {
        let n = a.len();
        let logn = n.trailing_zeros();
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j ^= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2usize;
        let mut level = 1u32;
        while len <= n {
            let mut w = f.m_pow(f.root, 1u64 << (f.two_adicity - level));
            if invert {
                w = f.m_inv(w);
            }
            let half = len / 2;
            let mut tw = Vec::with_capacity(half);
            let mut cur = f.r1;
            for _ in 0..half {
                tw.push(cur);
                cur = f.m_mul(cur, w);
            }
            for chunk in a.chunks_mut(len) {
                let (lo, hi) = chunk.split_at_mut(half);
                for t in 0..half {
                    let u = lo[t];
                    let v = f.m_mul(hi[t], tw[t]);
                    lo[t] = f.m_add(u, v);
                    hi[t] = f.m_sub(u, v);
                }
            }
            len <<= 1;
            level += 1;
        }
        debug_assert_eq!(level, logn + 1);
        if invert {
            let ninv = f.m_inv(f.to_mont(n as u64));
            for x in a.iter_mut() {
                *x = f.m_mul(*x, ninv);
            }
        }
    }

    pub(super) fn mul(f: &PrimeField, a: &[u64], b: &[u64]) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let out_len = a.len() + b.len() - 1;
        let size = out_len.next_power_of_two();
        let use_ntt = f.root != 0
            && a.len().min(b.len()) >= NTT_CUTOFF
            && size.trailing_zeros() <= f.two_adicity;
        let mut out = if use_ntt {
            let mut fa = a.to_vec();
            fa.resize(size, 0);
            let mut fb = b.to_vec();
            fb.resize(size, 0);
            ntt(f, &mut fa, false);
            ntt(f, &mut fb, false);
            for (x, y) in fa.iter_mut().zip(&fb) {
                *x = f.m_mul(*x, *y);
            }
            ntt(f, &mut fa, true);
            fa.truncate(out_len);
            fa
        } else {
            schoolbook(f, a, b)
        };
        trim(&mut out);
        out
    }

    fn truncated(mut v: P, k: usize) -> P {
        v.truncate(k);
        trim(&mut v);
        v
    }

    /// Power series inverse of `a` modulo `x^k`; `a[0]` must be nonzero.
    fn inv_series(f: &PrimeField, a: &[u64], k: usize) -> P {
        let mut g = vec![f.m_inv(a[0])];
        let mut len = 1;
        while len < k {
            len = (2 * len).min(k);
            let fa = truncated(a.to_vec(), len);
            let fg = truncated(mul(f, &fa, &g), len);
            // g * (2 - f g)
            let two_minus = sub(f, &[f.m_add(f.r1, f.r1)], &fg);
            g = truncated(mul(f, &g, &two_minus), len);
        }
        g
    }

    fn schoolbook_divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (P, P) {
        let db = deg(b);
        let lead_inv = f.m_inv(b[db]);
        let mut rem = a.to_vec();
        let mut quo = vec![0u64; a.len() - db];
        for k in (0..quo.len()).rev() {
            let c = f.m_mul(rem[k + db], lead_inv);
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] = f.m_sub(rem[k + j], f.m_mul(c, bj));
            }
            quo[k] = c;
        }
        rem.truncate(db);
        trim(&mut rem);
        trim(&mut quo);
        (quo, rem)
    }

    pub(super) fn divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (P, P) {
        assert!(!b.is_empty(), "polynomial division by zero");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let dq = a.len() - b.len();
        if f.root == 0 || b.len() < DIV_CUTOFF || dq < DIV_CUTOFF {
            return schoolbook_divrem(f, a, b);
        }
        let k = dq + 1;
        let ra: P = a.iter().rev().take(k).copied().collect();
        let rb: P = b.iter().rev().copied().collect();
        let inv = inv_series(f, &rb, k);
        let mut qr = truncated(mul(f, &ra, &inv), k);
        qr.resize(k, 0);
        qr.reverse();
        trim(&mut qr);
        let r = truncated(sub(f, a, &mul(f, b, &qr)), b.len() - 1);
        (qr, r)
    }

    type Mat = [[P; 2]; 2];

    fn identity(f: &PrimeField) -> Mat {
        [[vec![f.r1], Vec::new()], [Vec::new(), vec![f.r1]]]
    }

    fn mat_mul(f: &PrimeField, x: &Mat, y: &Mat) -> Mat {
        let e = |i: usize, j: usize| add(f, &mul(f, &x[i][0], &y[0][j]), &mul(f, &x[i][1], &y[1][j]));
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    fn apply(f: &PrimeField, m: &Mat, a: &[u64], b: &[u64]) -> (P, P) {
        (
            add(f, &mul(f, &m[0][0], a), &mul(f, &m[0][1], b)),
            add(f, &mul(f, &m[1][0], a), &mul(f, &m[1][1], b)),
        )
    }

    /// Left-multiply by the Euclid step `[[0, 1], [1, -q]]`.
    fn step(f: &PrimeField, q: &[u64], m: Mat) -> Mat {
        let [[m00, m01], [m10, m11]] = m;
        let n10 = sub(f, &m00, &mul(f, q, &m10));
        let n11 = sub(f, &m01, &mul(f, q, &m11));
        [[m10, m11], [n10, n11]]
    }

    fn shr(a: &[u64], k: usize) -> P {
        a.iter().skip(k).copied().collect()
    }

    /// Matrix of Euclid steps taking `(a, b)` (with `deg a > deg b`) to a
    /// pair whose second entry has degree below `ceil(deg a / 2)`.
    fn hgcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Mat {
        let n = deg(a);
        let m = n.div_ceil(2);
        if b.is_empty() || deg(b) < m {
            return identity(f);
        }
        if n < HGCD_CUTOFF {
            let mut mat = identity(f);
            let (mut x, mut y) = (a.to_vec(), b.to_vec());
            while !y.is_empty() && deg(&y) >= m {
                let (q, r) = divrem(f, &x, &y);
                mat = step(f, &q, mat);
                x = std::mem::replace(&mut y, r);
            }
            return mat;
        }
        let r = hgcd(f, &shr(a, m), &shr(b, m));
        let (c, d) = apply(f, &r, a, b);
        if d.is_empty() || deg(&d) < m {
            return r;
        }
        let (q, e) = divrem(f, &c, &d);
        let r2 = step(f, &q, r);
        if e.is_empty() || deg(&e) < m {
            return r2;
        }
        let k = 2 * m - deg(&d);
        let s = hgcd(f, &shr(&d, k), &shr(&e, k));
        mat_mul(f, &s, &r2)
    }

    fn monic(f: &PrimeField, mut a: P) -> P {
        if let Some(&lc) = a.last() {
            let inv = f.m_inv(lc);
            for c in a.iter_mut() {
                *c = f.m_mul(*c, inv);
            }
        }
        a
    }

    pub(super) fn gcd(f: &PrimeField, mut a: P, mut b: P) -> P {
        trim(&mut a);
        trim(&mut b);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        if !b.is_empty() && a.len() == b.len() {
            let r = divrem(f, &a, &b).1;
            a = std::mem::replace(&mut b, r);
        }
        loop {
            if b.is_empty() {
                return monic(f, a);
            }
            if f.root != 0 && deg(&a) >= HGCD_CUTOFF {
                let m = hgcd(f, &a, &b);
                let (c, d) = apply(f, &m, &a, &b);
                a = c;
                b = d;
                if b.is_empty() {
                    return monic(f, a);
                }
            }
            let r = divrem(f, &a, &b).1;
            a = std::mem::replace(&mut b, r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::poly::{euclid_gcd, schoolbook_divrem, schoolbook_mul};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(f: &PrimeField, rng: &mut ChaCha8Rng, len: usize) -> Vec<PrimeFieldElem> {
        let mut v: Vec<_> = (0..len).map(|_| f.from_u64(rng.random())).collect();
        if let Some(last) = v.last_mut() {
            if f.is_zero(last) {
                *last = f.one();
            }
        }
        v
    }

    #[test]
    fn rejects_composites_and_tiny_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(1 << 62).is_err());
        for p in NTT_PRIMES {
            let f = PrimeField::new(p).unwrap();
            assert!(f.has_fast_transform());
        }
    }

    #[test]
    fn montgomery_round_trip() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        for v in [0u64, 1, 2, 999_999_999, 123_456_789] {
            assert_eq!(f.value(&f.from_u64(v)), v);
        }
        let a = f.from_i64(-3);
        assert_eq!(f.value(&a), 1_000_000_004);
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(101).unwrap();
        let q = BigRational::new(BigInt::from(3), BigInt::from(4));
        let e = f.from_rational(&q).unwrap();
        assert_eq!(f.mul(&e, &f.from_i64(4)), f.from_i64(3));
        let bad = BigRational::new(BigInt::from(1), BigInt::from(202));
        assert!(f.from_rational(&bad).is_none());
    }

    #[test]
    fn transform_product_matches_schoolbook() {
        let f = PrimeField::default_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (la, lb) in [(60, 70), (200, 129), (513, 64)] {
            let a = random_poly(&f, &mut rng, la);
            let b = random_poly(&f, &mut rng, lb);
            assert_eq!(f.poly_mul(&a, &b), schoolbook_mul(&f, &a, &b));
        }
    }

    #[test]
    fn newton_division_matches_schoolbook() {
        let f = PrimeField::default_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (la, lb) in [(400, 100), (300, 250), (130, 65)] {
            let a = random_poly(&f, &mut rng, la);
            let b = random_poly(&f, &mut rng, lb);
            assert_eq!(f.poly_divrem(&a, &b), schoolbook_divrem(&f, &a, &b));
        }
    }

    #[test]
    fn half_gcd_matches_euclid() {
        let f = PrimeField::default_prime();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (lg, la, lb) in [(1, 300, 280), (40, 250, 251), (120, 200, 90), (5, 400, 400)] {
            let g = random_poly(&f, &mut rng, lg);
            let a = schoolbook_mul(&f, &g, &random_poly(&f, &mut rng, la));
            let b = schoolbook_mul(&f, &g, &random_poly(&f, &mut rng, lb));
            let fast = f.poly_gcd(&a, &b);
            let slow = euclid_gcd(&f, &a, &b);
            assert_eq!(fast, slow);
            assert!(fast.len() >= lg);
        }
    }

    #[test]
    fn non_transform_prime_still_multiplies() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        assert!(!f.has_fast_transform());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_poly(&f, &mut rng, 100);
        let b = random_poly(&f, &mut rng, 100);
        let g = f.poly_gcd(&schoolbook_mul(&f, &a, &b), &a);
        assert_eq!(g, crate::exactnum::poly::make_monic(&f, a));
    }

    #[test]
    fn bigint_reduction_handles_negatives() {
        let f = PrimeField::new(97).unwrap();
        assert_eq!(f.value(&f.from_bigint(&BigInt::from(-1))), 96);
        assert!(f.is_zero(&f.from_bigint(&BigInt::zero())));
    }
}
