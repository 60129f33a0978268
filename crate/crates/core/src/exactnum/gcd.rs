//! Polynomial gcd over the rationals. The working routine is a modular
//! gcd: images modulo word-size primes are combined by CRT until the
//! primitive candidate stabilises, and the candidate is then confirmed by
//! exact division. The primitive remainder sequence is kept as an
//! independent route for cross-checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Ring};
use super::poly::UniPoly;
use super::prime::{is_prime_u64, PrimeField};

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Integer multiple of a rational polynomial with coprime coefficients.
pub(crate) fn clear_denominators(a: &[BigRational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let v: Vec<BigInt> = a.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    primitive_part(&v)
}

/// `a = c * p` with `p` a primitive integer polynomial and `c` rational.
pub(crate) fn split_content(a: &[BigRational]) -> (BigRational, Vec<BigInt>) {
    let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let v: Vec<BigInt> = a.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = content(&v);
    if g.is_zero() {
        return (BigRational::zero(), v);
    }
    let p = v.iter().map(|c| c / &g).collect();
    (BigRational::new(g, l), p)
}

/// Product of integer polynomials.
pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divide by the content; the sign of the leading coefficient is kept.
pub(crate) fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// `lc(b)^(deg a - deg b + 1) * a  mod  b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn positive_lead(mut g: Vec<BigInt>) -> Vec<BigInt> {
    if g.last().is_some_and(|c| c.is_negative()) {
        for c in g.iter_mut() {
            *c = -&*c;
        }
    }
    g
}

/// Primitive integer gcd with positive leading coefficient, by a primitive
/// pseudo-remainder sequence.
pub fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        return a;
    }
    a = primitive_part(&a);
    while !b.is_empty() {
        b = primitive_part(&b);
        let r = pseudo_rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    positive_lead(primitive_part(&a))
}

/// Primes `c 2^32 + 1` below `2^62`, largest first; they support the fast
/// transform of the prime field.
fn gcd_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 29)..(1u64 << 30)).rev().map(|c| (c << 32) + 1).filter(|&p| is_prime_u64(p))
}

fn reduce(v: &[BigInt], f: &PrimeField) -> UniPoly<PrimeField> {
    UniPoly::new(*f, v.iter().map(|c| f.from_bigint(c)).collect())
}

/// `a / b` when `b` divides `a` in `Z[x]`.
pub(crate) fn exact_quotient(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() || a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let (c, rem) = r[k + b.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(quot)
}

/// Primitive integer gcd with positive leading coefficient.
pub fn integer_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        let g = if a.is_empty() { b } else { a };
        return positive_lead(primitive_part(&g));
    }
    let (a, b) = (primitive_part(&a), primitive_part(&b));
    let h = a.last().unwrap().gcd(b.last().unwrap());
    // CRT image of h * gcd, its modulus, and the last primitive candidate.
    let mut image: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last: Option<Vec<BigInt>> = None;
    for p in gcd_primes() {
        let pb = BigInt::from(p);
        if (&h % &pb).is_zero() {
            continue;
        }
        let f = PrimeField::new(p).expect("generated modulus is prime");
        let g = reduce(&a, &f).gcd(&reduce(&b, &f));
        let d = g.degree().expect("gcd of nonzero images is nonzero");
        if d == 0 {
            return vec![BigInt::one()];
        }
        let hp = f.from_bigint(&h);
        let residues: Vec<BigInt> = g.coeffs().iter().map(|c| BigInt::from(f.value(&f.mul(c, &hp)))).collect();
        image = match image {
            Some((v, m)) if v.len() == residues.len() => {
                let minv = f.inv(&f.from_bigint(&m)).expect("distinct primes");
                let minv = BigInt::from(f.value(&minv));
                let v = v
                    .iter()
                    .zip(&residues)
                    .map(|(x, r)| {
                        let t = ((r - x) * &minv).mod_floor(&pb);
                        x + &m * t
                    })
                    .collect();
                Some((v, m * pb))
            }
            // A larger degree means p is unlucky.
            Some((v, m)) if v.len() < residues.len() => Some((v, m)),
            _ => Some((residues, pb)),
        };
        let (v, m) = image.as_ref().unwrap();
        let half: BigInt = m / 2;
        let sym: Vec<BigInt> = v.iter().map(|x| if x > &half { x - m } else { x.clone() }).collect();
        let cand = positive_lead(primitive_part(&sym));
        if last.as_ref() == Some(&cand)
            && exact_quotient(&a, &cand).is_some()
            && exact_quotient(&b, &cand).is_some()
        {
            return cand;
        }
        last = Some(cand);
    }
    unreachable!("the supply of primes outlasts any coefficient bound")
}

/// Monic gcd of two rational polynomials.
pub fn rational_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let g = integer_gcd(&clear_denominators(a), &clear_denominators(b));
    match g.last() {
        None => Vec::new(),
        Some(lc) => {
            let lc = lc.clone();
            g.into_iter().map(|c| BigRational::new(c, lc.clone())).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert_eq!(integer_gcd(&ints(&[1, 1]), &ints(&[-1, 1])), ints(&[1]));
    }

    #[test]
    fn gcd_keeps_nontrivial_content_free_factor() {
        // (2x+1)(x-3) and (2x+1)(x^2+1)
        let a = ints(&[-3, -5, 2]);
        let b = ints(&[1, 2, 1, 2]);
        assert_eq!(integer_gcd(&a, &b), ints(&[1, 2]));
    }

    #[test]
    fn routes_agree_on_products() {
        let mul = |p: &[BigInt], q: &[BigInt]| {
            let mut r = vec![BigInt::zero(); p.len() + q.len() - 1];
            for (i, x) in p.iter().enumerate() {
                for (j, y) in q.iter().enumerate() {
                    r[i + j] += x * y;
                }
            }
            r
        };
        // (x^3 - 7x + 12345678901234567)(2x^2 - 3), times x + 5 and x^2 + 1
        let g = mul(&ints(&[12345678901234567, -7, 0, 1]), &ints(&[-3, 0, 2]));
        let a = mul(&g, &ints(&[5, 1]));
        let b = mul(&g, &ints(&[1, 0, 1]));
        assert_eq!(integer_gcd(&a, &b), prs_gcd(&a, &b));
        assert_eq!(integer_gcd(&a, &b).len(), g.len());
    }

    #[test]
    fn exact_quotient_rejects_non_divisors() {
        assert_eq!(exact_quotient(&ints(&[-1, 0, 1]), &ints(&[1, 1])), Some(ints(&[-1, 1])));
        assert_eq!(exact_quotient(&ints(&[1, 0, 1]), &ints(&[1, 1])), None);
        assert_eq!(exact_quotient(&ints(&[1, 2]), &ints(&[0, 2])), None);
    }

    #[test]
    fn rational_gcd_is_monic() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        let a = vec![r(1, 2), r(1, 1)];
        let b = vec![r(3, 2), r(3, 1)];
        assert_eq!(rational_gcd(&a, &b), vec![r(1, 2), r(1, 1)]);
    }
}
