use birdeg_core::exactnum::rat;
use birdeg_core::linsys::*;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `L_j` evaluated directly on `a`, with `a_{n+1} = 0`.
fn l_direct(a: &[BigRational], j: usize) -> BigRational {
    let n = a.len() - 1;
    let get = |k: isize| if k < 0 || k > n as isize { BigRational::zero() } else { a[k as usize].clone() };
    let nj = n as isize - j as isize;
    let mut v = -(get(nj) + get(nj + 1));
    for i in 0..=j {
        let c = BigRational::from_integer(binomial(BigInt::from(n - i), BigInt::from(j - i)));
        let t = c * get(n as isize - i as isize);
        // -(-1)^{i+1} = (-1)^i
        if i % 2 == 0 {
            v += t;
        } else {
            v -= t;
        }
    }
    v
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.random_range(-20..=20), rng.random_range(1..=7))
}

fn kernel_sample(n: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let basis = kernel_basis(n, n - 1).unwrap();
    let mut a = vec![BigRational::zero(); n + 1];
    for v in &basis {
        let c = random_rational(rng);
        for (x, y) in a.iter_mut().zip(v) {
            *x += &c * y;
        }
    }
    a
}

#[test]
fn seventh_degree_forward_substitution() {
    let sol = solve_odd_system(7, 3, &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
    assert!(sol.odd_equations_hold());
    assert_eq!(sol.b[1], rat(3, 1));
    assert!(equation_b(7, &sol.b, 4).unwrap().is_zero());
    assert!(check_even_implied(&sol));
}

#[test]
fn zero_data_gives_zero_solution() {
    let sol = solve_odd_system(9, 7, &[]).unwrap();
    assert!(sol.b.iter().all(Zero::is_zero));
    assert!(check_even_implied(&sol));
}

#[test]
fn even_equations_follow_from_odd_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n: usize = rng.random_range(2..=15);
        let m = 2 * rng.random_range(0..n.div_ceil(2)) + 1;
        if m >= n {
            continue;
        }
        let b_even: Vec<BigRational> = (0..=n / 2).map(|_| random_rational(&mut rng)).collect();
        let sol = solve_odd_system(n, m, &b_even).unwrap();
        assert!(sol.odd_equations_hold());
        assert!(check_even_implied(&sol), "n={n} m={m}");
    }
}

#[test]
fn corrupted_solution_is_caught() {
    let sol = solve_odd_system(9, 5, &[rat(1, 1), rat(2, 3), rat(-1, 1)]).unwrap();
    let mut bad = sol.clone();
    bad.b[1] += rat(1, 1);
    assert!(check_even_implied(&sol));
    assert!(!check_even_implied(&bad));
}

#[test]
fn first_sequence_values() {
    let ta = theta_alpha(5);
    assert_eq!(ta.theta(1), &rat(1, 2));
    assert_eq!(ta.theta(3), &rat(-1, 8));
    // 1/(1 + cos t) = 1/2 + t^2/8 + t^4/48 + ...
    assert_eq!(ta.theta(5), &rat(1, 48));
    assert_eq!(ta.alpha(3), &rat(-1, 24));
    assert_eq!(ta.alpha(3), &(ta.theta(3) / rat(3, 1)));
}

#[test]
fn identities_up_to_21() {
    let r = claim2_identities(21);
    assert!(r.all_pass(), "{r:?}");
    assert!(r.failures.is_empty());
}

#[test]
fn convolution_fifth_term() {
    // z_5 = c_5 theta_1 + c_3 theta_3 + c_1 theta_5
    let c = [rat(2, 1), rat(-3, 1), rat(5, 1)];
    let z = solve_driven(&c);
    let ta = theta_alpha(5);
    let want = &c[2] * ta.theta(1) + &c[1] * ta.theta(3) + &c[0] * ta.theta(5);
    assert_eq!(z[2], want);
    let printed = &c[2] * ta.theta(1) + &c[1] * ta.theta(3) + &c[2] * ta.theta(1);
    assert_ne!(z[2], printed);
}

#[test]
fn alternating_sum_on_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [3, 5, 7] {
        let count = if n == 3 { 10 } else { 50 };
        for _ in 0..count {
            let a = kernel_sample(n, &mut rng);
            assert_eq!(alternating_sum_check(&a), Ok(true), "n={n}");
        }
    }
    assert_eq!(alternating_sum_check(&vec![BigRational::zero(); 6]), Ok(true));
    let a: Vec<BigRational> = [1, 0, 1, 2].iter().map(|&v| rat(v, 1)).collect();
    assert_eq!(alternating_sum_check(&a), Err(LinsysError::InputNotInKernel));
}

#[test]
fn reversal_is_an_involution() {
    let v: Vec<BigRational> = (0..6).map(|k| rat(k, 3)).collect();
    assert_eq!(reverse_index(&reverse_index(&v)), v);
    assert_eq!(reverse_index(&v)[0], v[5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l_matches_direct_formula(n in 2usize..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<BigRational> = (0..=n).map(|_| random_rational(&mut rng)).collect();
        for j in 0..=n {
            prop_assert_eq!(l_value(&a, j).unwrap(), l_direct(&a, j));
        }
    }

    #[test]
    fn driven_system_is_a_convolution(c in prop::collection::vec((-30i64..=30, 1i64..=9), 1..8)) {
        let c: Vec<BigRational> = c.into_iter().map(|(p, q)| rat(p, q)).collect();
        prop_assert!(convolution_check(&c));
    }
}
