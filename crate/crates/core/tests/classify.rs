use birdeg_core::classify::*;
use birdeg_core::exactnum::{default_width, rat, QPoly, Rationals};
use birdeg_core::linsys::kernel_basis;
use birdeg_core::mapcore::MapParams;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(a: &[i64]) -> MapParams {
    MapParams::from_i64s(a).unwrap()
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

/// Random `a` with `L_0 = ... = L_t = 0` for a random `t`; sometimes `a_0`
/// is then replaced by a value of the form `2/(1+m)`.
fn constrained_sample(n: usize, rng: &mut ChaCha8Rng) -> MapParams {
    let t = rng.random_range(0..n);
    let basis = kernel_basis(n, t).unwrap();
    loop {
        let mut a = vec![BigRational::zero(); n + 1];
        for v in &basis {
            let c = rat(rng.random_range(-4..=4), rng.random_range(1..=3));
            for (x, y) in a.iter_mut().zip(v) {
                *x += &c * y;
            }
        }
        if rng.random_bool(0.3) {
            a[0] = rat(2, rng.random_range(1..=4));
        }
        if !a[n].is_zero() {
            return MapParams::new(a).unwrap();
        }
    }
}

#[test]
fn fixed_examples() {
    assert_eq!(classify(&params(&[5, 0, 1])), CaseLabel::Even1);
    assert_eq!(classify(&params(&[2, 1, 1])), CaseLabel::Even2 { m: 0 });
    assert_eq!(classify(&params(&[1, 1, 1])), CaseLabel::Even2 { m: 1 });
    assert_eq!(classify(&params(&[2, 1, 1, 1])), CaseLabel::Odd6);
    assert_eq!(classify(&params(&[5, 1, 2, 1])), CaseLabel::Odd1 { h: 0 });
    assert_eq!(classify(&params(&[5, 1, 1, 1])), CaseLabel::Odd3);
    assert_eq!(classify(&params(&[1, 1, 1, 1])), CaseLabel::Odd4 { m: 1 });
    let odd5 = MapParams::new(vec![rat(9, 4), rat(-3, 1), rat(2, 1), rat(2, 1)]).unwrap();
    assert_eq!(classify(&odd5), CaseLabel::Odd5 { l: 1 });
}

#[test]
fn l_closed_forms() {
    let p = params(&[4, -2, 1, 1]);
    assert!(l_value(&p, 0).unwrap().is_zero());
    assert!(l_value(&p, 1).unwrap().is_zero());
    let p = params(&[4, -2, 5, 3]);
    // (n-1) a_n - 2 a_{n-1}
    assert_eq!(l_value(&p, 1).unwrap(), rat(2 * 3 - 2 * 5, 1));
    assert!(l_value(&p, 4).is_err());
}

#[test]
fn find_h_for_cubics() {
    assert_eq!(find_h(&params(&[3, 1, 2, 1])), 0);
    assert_eq!(find_h(&params(&[3, 1, 4, 4])), 1);
    assert_eq!(find_h(&params(&[3, 1, 2, 5, 7, 1])), 0);
}

#[test]
fn delta_values() {
    let w = default_width();
    let d = predicted_delta(CaseLabel::Even1, 2, &w).unwrap();
    // Sign change of x^2 - 3x - 1 across the interval.
    let f = |x: &BigRational| x * x - rat(3, 1) * x - rat(1, 1);
    assert!(!f(&d.lo).is_positive() && !f(&d.hi).is_negative());
    assert!((d.midpoint_f64() - (3.0 + 13f64.sqrt()) / 2.0).abs() < 1e-9);

    let d = predicted_delta(CaseLabel::Even2 { m: 0 }, 2, &w).unwrap();
    assert!(d.contains(&rat(2, 1)) && d.width() <= w);
    let d = predicted_delta(CaseLabel::Odd6, 3, &w).unwrap();
    assert_eq!((d.lo, d.hi), (rat(1, 1), rat(1, 1)));
}

#[test]
fn even2_expansion() {
    for m in 0..4 {
        for n in [2usize, 4, 6] {
            let ni = n as i64;
            let mut want = vec![0i64; 2 * m + 4];
            want[0] = ni;
            want[2] += 1;
            want[2 * m + 1] += -1;
            want[2 * m + 2] += -(ni + 1);
            want[2 * m + 3] += 1;
            assert_eq!(
                predicted_charpoly(CaseLabel::Even2 { m }, n).unwrap(),
                QPoly::from_i64s(Rationals, &want)
            );
        }
    }
}

#[test]
fn report_fields() {
    let r = report(&params(&[2, 1, 1, 1]), &default_width()).unwrap();
    assert!(r.automorphism && r.predicted_poly.is_none());
    let r = report(&params(&[5, 0, 1]), &default_width()).unwrap();
    assert_eq!(r.predicted_poly.unwrap(), QPoly::from_i64s(Rationals, &[-1, -3, 1]));
}

#[test]
fn automorphism_only_for_case_six() {
    assert!(has_automorphism(&params(&[2, -1, 7, 7])));
    assert!(!has_automorphism(&params(&[1, 1, 1, 1])));
    assert!(!has_automorphism(&params(&[2, 1, 1, 1, 1, 1])));
}

#[test]
fn fuzzed_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = [3, 5, 7, 9][rng.random_range(0..4)];
        let p = constrained_sample(n, &mut rng);
        let h = find_h(&p);
        if h < n - 2 {
            assert_eq!(h % 2, 0, "{:?}", p.coeffs());
        } else {
            assert!(l_value(&p, n - 1).unwrap().is_zero(), "{:?}", p.coeffs());
        }
        let label = classify(&p);
        assert!(label.applies_to(n), "{label} n={n}");
        if label == CaseLabel::Odd6 {
            assert_eq!((n, p.a(0)), (3, rat(2, 1)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn l2_is_multiple_of_l1(n in 2usize..=9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a: Vec<BigRational> = (0..=n).map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=5))).collect();
        a[n] = rat(rng.random_range(1..=9), 1);
        let p = MapParams::new(a).unwrap();
        prop_assert!(l_value(&p, 0).unwrap().is_zero());
        prop_assert_eq!(l_value(&p, 2).unwrap(), rat(n as i64, 2) * l_value(&p, 1).unwrap());
    }

    #[test]
    fn classification_is_total(n in 2usize..=9, a0 in small_rational(), rest in prop::collection::vec(small_rational(), 9)) {
        let mut a = vec![a0];
        a.extend(rest.into_iter().take(n));
        if a[n].is_zero() {
            a[n] = rat(1, 1);
        }
        let p = MapParams::new(a).unwrap();
        let label = classify(&p);
        prop_assert!(label.applies_to(n));
        prop_assert_eq!(label.is_even(), n % 2 == 0);
        if let Some(h) = label.h() {
            prop_assert!(h % 2 == 0 && h + 2 < n);
        }
    }

    #[test]
    fn detect_m_inverts(m in 0usize..200) {
        let a0 = rat(2, m as i64 + 1);
        prop_assert_eq!(detect_m(&a0), Some(m));
    }

    #[test]
    fn detect_l_inverts(l in 0usize..200, k in 1usize..6) {
        let n = 2 * k + 1;
        let li = l as i64;
        let a0 = rat(n as i64 + 1, 2) + rat(li, 2 * (li + 1));
        prop_assert_eq!(detect_l(&a0, n), Some(l));
    }
}
