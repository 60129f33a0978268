use birdeg_core::classify::{predicted_charpoly, CaseLabel};
use birdeg_core::exactnum::{default_width, QPoly, Rationals};
use birdeg_core::mapcore::curves::Curve;
use birdeg_core::picard::{
    build_pullback, build_pullback_with, charpoly_pullback, curve_class, printed_block,
    restricted_rows, strip_unit_factors, verify_prediction, BasisLabel, Transcription,
};
use num_bigint::BigInt;

fn grid() -> Vec<(CaseLabel, usize)> {
    let mut out = Vec::new();
    for n in (2..=8).step_by(2) {
        out.push((CaseLabel::Even1, n));
        for m in 0..=2 {
            out.push((CaseLabel::Even2 { m }, n));
        }
    }
    for n in (3..=9).step_by(2) {
        for h in (0..n - 2).step_by(2) {
            out.push((CaseLabel::Odd1 { h }, n));
            for m in 0..=2 {
                out.push((CaseLabel::Odd2 { h, m }, n));
            }
        }
        out.push((CaseLabel::Odd3, n));
        for m in 0..=2 {
            out.push((CaseLabel::Odd4 { m }, n));
        }
        for l in 0..=2 {
            out.push((CaseLabel::Odd5 { l }, n));
        }
    }
    out
}

#[test]
fn prediction_divides_matrix_polynomial_with_unit_cofactor() {
    let w = default_width();
    for (label, n) in grid() {
        let r = verify_prediction(label, n, None, &w).unwrap();
        assert!(r.divides, "{label} n={n}: charpoly {}", r.charpoly);
        assert!(r.roots_agree, "{label} n={n}");
    }
}

#[test]
fn printed_odd5_list_misses_the_stated_polynomial() {
    for n in [3, 5, 7] {
        for l in 0..=2 {
            let label = CaseLabel::Odd5 { l };
            let pred = predicted_charpoly(label, n).unwrap();
            let printed = charpoly_pullback(&build_pullback_with(label, n, Transcription::Printed).unwrap());
            assert!(!pred.divides(&printed), "n={n} l={l}");
        }
    }
}

#[test]
fn other_cases_do_not_depend_on_transcription() {
    for (label, n) in grid() {
        if matches!(label, CaseLabel::Odd5 { .. }) {
            continue;
        }
        assert_eq!(
            build_pullback_with(label, n, Transcription::Printed).unwrap(),
            build_pullback(label, n).unwrap()
        );
    }
}

#[test]
fn printed_blocks_match_restrictions() {
    for n in [3, 5, 7, 9] {
        let mut labels = vec![CaseLabel::Odd3];
        labels.extend((0..n - 2).step_by(2).map(|h| CaseLabel::Odd1 { h }));
        for label in labels {
            let (classes, printed) = printed_block(label, n).unwrap();
            let data = build_pullback(label, n).unwrap();
            assert_eq!(restricted_rows(&data, &classes).unwrap(), printed, "{label} n={n}");
        }
    }
}

#[test]
fn printed_block_polynomials() {
    // det(M - xI) of a 4x4 block is monic, so x(x^3 - 5x^2 - 6x - 1).
    let (_, m) = printed_block(CaseLabel::Odd1 { h: 0 }, 5).unwrap();
    assert_eq!(m.char_poly(), QPoly::from_i64s(Rationals, &[0, -1, -6, -5, 1]));
    // -(x-1)(x+1)(x^3 - 3x^2 - 2x - 1)
    let (_, m) = printed_block(CaseLabel::Odd3, 3).unwrap();
    assert_eq!(m.char_poly(), QPoly::from_i64s(Rationals, &[-1, -2, -2, 3, 3, -1]));
}

fn class_of(data_basis: &[BasisLabel], terms: &[(BasisLabel, i64)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); data_basis.len()];
    for (b, c) in terms {
        let i = data_basis.iter().position(|x| x == b).unwrap();
        v[i] += BigInt::from(*c);
    }
    v
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[test]
fn action_list_images_are_curve_classes() {
    use BasisLabel::*;
    for (label, n) in grid() {
        let data = build_pullback(label, n).unwrap();
        let c = |w| curve_class(label, n, w).unwrap();
        assert_eq!(data.image(Q).unwrap(), c(Curve::C3), "Q, {label} n={n}");
        if label.m().is_some() {
            assert_eq!(data.image(R(0)).unwrap(), c(Curve::C4), "R0, {label} n={n}");
        }
        match label {
            CaseLabel::Even1 | CaseLabel::Even2 { .. } => {
                let ps: Vec<_> = (1..n).map(|j| (P(j), 1)).collect();
                let rhs = add(&add(&c(Curve::C1), &c(Curve::C2)), &class_of(&data.basis, &ps));
                assert_eq!(data.image(P(n - 1)).unwrap(), rhs);
            }
            CaseLabel::Odd1 { h } | CaseLabel::Odd2 { h, .. } => {
                let ps: Vec<_> = (1..=n - 2 - h).map(|j| (P(j), 1)).collect();
                let rhs = add(&add(&c(Curve::C1), &c(Curve::C2)), &class_of(&data.basis, &ps));
                assert_eq!(data.image(P(n + h)).unwrap(), rhs);
            }
            CaseLabel::Odd3 | CaseLabel::Odd4 { .. } => {
                assert_eq!(data.image(P(2 * n - 2)).unwrap(), c(Curve::C1));
                let rhs = add(&c(Curve::C2), &class_of(&data.basis, &[(E2, 1)]));
                assert_eq!(data.image(P(2 * n - 1)).unwrap(), rhs);
            }
            CaseLabel::Odd5 { .. } => {
                assert_eq!(data.image(P(2 * n - 2)).unwrap(), c(Curve::C1));
            }
            CaseLabel::Odd6 => unreachable!(),
        }
    }
}

#[test]
fn printed_curve_expansions() {
    use BasisLabel::*;
    let data = build_pullback(CaseLabel::Even2 { m: 2 }, 4).unwrap();
    let b = &data.basis;
    assert_eq!(curve_class(CaseLabel::Even2 { m: 2 }, 4, Curve::C2).unwrap(), class_of(b, &[(H, 1), (R(2), -1)]));
    let c4 = class_of(
        b,
        &[(H, 2), (E1, -1), (Q, -2), (P(1), -1), (P(2), -2), (P(3), -3), (Qm(1), -2), (Qm(2), -2), (R(2), -1)],
    );
    assert_eq!(curve_class(CaseLabel::Even2 { m: 2 }, 4, Curve::C4).unwrap(), c4);
    let data = build_pullback(CaseLabel::Odd1 { h: 0 }, 5).unwrap();
    assert_eq!(curve_class(CaseLabel::Odd1 { h: 0 }, 5, Curve::C2).unwrap(), class_of(&data.basis, &[(H, 1)]));
}

#[test]
fn e1_fixed_everywhere() {
    for (label, n) in grid() {
        let d = build_pullback(label, n).unwrap();
        let j = d.index_of(BasisLabel::E1).unwrap();
        let col = d.matrix.column(j);
        for (i, v) in col.iter().enumerate() {
            assert_eq!(*v, BigInt::from((i == j) as i64), "{label} n={n}");
        }
    }
}

#[test]
fn cofactors_have_expected_shape() {
    let r = verify_prediction(CaseLabel::Even2 { m: 0 }, 2, None, &default_width()).unwrap();
    let (a, b, c, rest) = strip_unit_factors(r.cofactor.as_ref().unwrap());
    assert_eq!((a, b, c), (1, 1, 0));
    assert_eq!(rest.degree(), Some(0));
}

/// Degree sequences computed by iterating the map itself (`d_0 .. d_8`).
fn map_degrees() -> Vec<(CaseLabel, usize, Vec<usize>)> {
    vec![
        (CaseLabel::Even1, 2, vec![1, 5, 16, 53, 175, 578, 1909, 6305, 20824]),
        (CaseLabel::Even2 { m: 0 }, 2, vec![1, 5, 10, 23, 46, 95, 190, 383, 766]),
        (CaseLabel::Even2 { m: 1 }, 2, vec![1, 5, 16, 53, 169, 542, 1732, 5537, 17695]),
        (CaseLabel::Odd1 { h: 0 }, 3, vec![1, 7, 27, 110, 445, 1802, 7296, 29541, 119609]),
        (CaseLabel::Odd3, 3, vec![1, 7, 25, 94, 341, 1240, 4498, 16319, 59195]),
        (CaseLabel::Odd5 { l: 2 }, 3, vec![1, 7, 25, 94, 341, 1240, 4498, 16316, 59163]),
    ]
}

#[test]
fn matrix_degrees_match_the_map() {
    for (label, n, d) in map_degrees() {
        let data = build_pullback(label, n).unwrap();
        let want: Vec<BigInt> = d.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(data.degree_sequence(d.len()), want, "{label} n={n}");
        let r = verify_prediction(label, n, Some(&d), &default_width()).unwrap();
        // The Odd5(l=2) recurrence has order 9, one more than the data covers.
        if r.annihilator.degree() < Some(d.len()) {
            assert_eq!(r.degrees_annihilated(), Some(true), "{label} n={n}");
        }
    }
}

#[test]
fn printed_odd5_list_gives_wrong_degrees() {
    let data = build_pullback_with(CaseLabel::Odd5 { l: 2 }, 3, Transcription::Printed).unwrap();
    let got = data.degree_sequence(9);
    assert_ne!(got[8], BigInt::from(59163));
}
