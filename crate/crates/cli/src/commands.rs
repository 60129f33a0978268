use anyhow::{bail, Context, Result};
use birdeg_core::classify::{self, CaseLabel};
use birdeg_core::exactnum::{rat, QPoly, Rationals, UniPoly};
use birdeg_core::linsys;
use birdeg_core::localcharts::{chart_limit, follow_orbit, orbit_condition_odd, ChartRegistry, Direction};
use birdeg_core::mapcore::curves::Curve;
use birdeg_core::mapcore::{
    degree_sequence_report, growth_ratios, orbit_arc, recurrence_residuals, special, ArithMode,
    MapParams, ParamArc,
};
use birdeg_core::picard::{self, build_pullback, verify_prediction};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::input::ParamSet;
use crate::report::{integer, interval, poly, rational, Header};
use crate::Settings;

/// A failed consistency check; reported with exit code 4.
#[derive(Debug)]
pub struct Mismatch(pub String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification mismatch: {}", self.0)
    }
}

impl std::error::Error for Mismatch {}

fn integer_coeffs(p: &QPoly) -> Option<Vec<BigInt>> {
    p.coeffs().iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

#[derive(Serialize)]
pub struct ClassifyOut {
    #[serde(flatten)]
    header: Header,
    case: &'static str,
    label: String,
    h: Option<usize>,
    m: Option<usize>,
    l: Option<usize>,
    poly: Option<Vec<Value>>,
    delta: [String; 2],
    automorphism: bool,
}

pub fn classify(set: &ParamSet, s: &Settings) -> Result<ClassifyOut> {
    let r = classify::report(&set.params, &s.width)?;
    Ok(ClassifyOut {
        header: Header::new(&set.name, &set.params),
        case: r.case.name(),
        label: r.case.to_string(),
        h: r.case.h(),
        m: r.case.m(),
        l: r.case.l(),
        poly: r.predicted_poly.as_ref().map(poly),
        delta: interval(&r.delta),
        automorphism: r.automorphism,
    })
}

#[derive(Serialize)]
pub struct DegseqOut {
    #[serde(flatten)]
    header: Header,
    case: String,
    mode: &'static str,
    seed: u64,
    degrees: Vec<usize>,
    ratios: Vec<String>,
    /// Residual of the predicted polynomial at each shift.
    residuals: Vec<Value>,
    recurrence_check: Vec<bool>,
    /// Same test with the annihilator of `H` under the pull-back matrix.
    matrix_recurrence_check: Option<Vec<bool>>,
}

fn mode_name(m: ArithMode) -> &'static str {
    match m {
        ArithMode::Exact => "exact",
        ArithMode::Prime => "prime",
    }
}

fn degrees(params: &MapParams, s: &Settings) -> Result<Vec<usize>> {
    Ok(degree_sequence_report(params, s.iters(), s.mode(), s.seed)?.degrees)
}

pub fn degseq(set: &ParamSet, s: &Settings) -> Result<DegseqOut> {
    let p = &set.params;
    let label = classify::classify(p);
    let d = degrees(p, s)?;
    let predicted = match classify::predicted_charpoly(label, p.n()) {
        Ok(q) => Some(integer_coeffs(&q).context("predicted polynomial is not integral")?),
        Err(_) => None,
    };
    let residuals = predicted.map(|c| recurrence_residuals(&c, &d)).unwrap_or_default();
    let matrix_recurrence_check = match build_pullback(label, p.n()) {
        Ok(data) => {
            let ann = integer_coeffs(&picard::h_annihilator(&data)).context("annihilator is not integral")?;
            Some(recurrence_residuals(&ann, &d).iter().map(Zero::is_zero).collect())
        }
        Err(_) => None,
    };
    Ok(DegseqOut {
        header: Header::new(&set.name, p),
        case: label.to_string(),
        mode: mode_name(s.mode()),
        seed: s.seed,
        ratios: growth_ratios(&d).iter().map(rational).collect(),
        recurrence_check: residuals.iter().map(Zero::is_zero).collect(),
        residuals: residuals.iter().map(integer).collect(),
        degrees: d,
        matrix_recurrence_check,
    })
}

#[derive(Serialize)]
pub struct PicardOut {
    #[serde(flatten)]
    header: Header,
    case: String,
    basis: Vec<String>,
    /// Column `j` (entry `j` of this list) is the image of basis class `j`.
    matrix: Vec<Vec<Value>>,
    charpoly: Vec<Value>,
    predicted: Vec<Value>,
    cofactor: Option<Vec<Value>>,
    divides: bool,
    delta_predicted: [String; 2],
    delta_matrix: [String; 2],
    roots_agree: bool,
}

pub fn picard(set: &ParamSet, s: &Settings) -> Result<PicardOut> {
    let p = &set.params;
    let label = classify::classify(p);
    if label == CaseLabel::Odd6 {
        bail!("case Odd6 has no pull-back matrix; use degseq to check its growth");
    }
    let data = build_pullback(label, p.n())?;
    let r = verify_prediction(label, p.n(), None, &s.width)?;
    Ok(PicardOut {
        header: Header::new(&set.name, p),
        case: label.to_string(),
        basis: data.basis.iter().map(ToString::to_string).collect(),
        matrix: (0..data.dim()).map(|j| data.matrix.column(j).iter().map(integer).collect()).collect(),
        charpoly: poly(&r.charpoly),
        predicted: poly(&r.predicted),
        cofactor: r.cofactor.as_ref().map(poly),
        divides: r.divides,
        delta_predicted: interval(&r.delta_predicted),
        delta_matrix: interval(&r.delta_matrix),
        roots_agree: r.roots_agree,
    })
}

#[derive(Serialize)]
pub struct C4Orbit {
    bases: Vec<String>,
    first_landing: Option<usize>,
    expected_landing: Option<usize>,
    on_c3: bool,
}

#[derive(Serialize)]
pub struct ChartStep {
    chart: String,
    u: String,
}

#[derive(Serialize)]
pub struct C2Orbit {
    steps: Vec<ChartStep>,
    /// Why the walk ended before the requested number of steps.
    #[serde(skip_serializing_if = "Option::is_none")]
    stopped: Option<String>,
    /// Step at which the orbit reaches the point `u = 0` of `E2`.
    first_landing: Option<usize>,
    expected_landing: Option<usize>,
}

#[derive(Serialize)]
pub struct OrbitOut {
    #[serde(flatten)]
    header: Header,
    case: String,
    c4: C4Orbit,
    #[serde(skip_serializing_if = "Option::is_none")]
    c2: Option<C2Orbit>,
    pub consistent: bool,
}

/// Arc through a point of `C4` in a direction transverse to it.
fn across_c4() -> ParamArc<Rationals> {
    let c = Curve::C4.point_at(&rat(2, 1)).rational_coords();
    let dir = [rat(1, 1), rat(2, 1), rat(5, 1)];
    let comp = |i: usize| UniPoly::from_rationals(&[c[i].clone(), dir[i].clone()]);
    ParamArc::new([comp(0), comp(1), comp(2)]).expect("nonzero arc")
}

/// Arc crossing `C2 = {x_0 = x_1}` at `[1 : 1 : 3]`.
fn across_c2() -> ParamArc<Rationals> {
    let c = |v: &[i64]| UniPoly::from_i64s(Rationals, v);
    ParamArc::new([c(&[1]), c(&[1, 1]), c(&[3])]).expect("nonzero arc")
}

/// `C4` runs inside `C3` until it reaches `[1:1:0]`; `on_c3` covers the
/// steps up to the landing.
fn c4_orbit(p: &MapParams, steps: usize) -> Result<C4Orbit> {
    let orbit = orbit_arc(p, &across_c4(), steps)?;
    let e01 = special::e01();
    let first_landing = orbit.iter().position(|s| s.base == e01).map(|i| i + 1);
    let upto = first_landing.unwrap_or(orbit.len());
    Ok(C4Orbit {
        bases: orbit.iter().map(|s| s.base.to_string()).collect(),
        first_landing,
        expected_landing: classify::detect_m(&p.a(0)).map(|m| 2 * m + 1),
        on_c3: orbit[..upto].iter().all(|s| Curve::C3.contains(&s.base)),
    })
}

/// Chart positions of the `C2` orbit, walked until it reaches `u = 0` on
/// `E2` or leaves the registered charts.
fn c2_orbit(p: &MapParams, steps: usize) -> Result<Option<C2Orbit>> {
    let reg = ChartRegistry::new(p);
    if reg.get("E2").is_none() || steps == 0 {
        return Ok(None);
    }
    let mut orbit = follow_orbit(&reg, &across_c2(), 1)?;
    let mut stopped = None;
    let landed = |o: &[(String, BigRational)]| o.last().is_some_and(|(c, u)| c == "E2" && u.is_zero());
    while orbit.len() < steps && !landed(&orbit) {
        let (name, u) = orbit.last().expect("nonempty").clone();
        let chart = reg.get(&name).expect("located charts are registered");
        match chart_limit(&reg, chart, &u, Direction::Forward) {
            Ok(next) => orbit.push(next),
            Err(e) => {
                stopped = Some(e.to_string());
                break;
            }
        }
    }
    Ok(Some(C2Orbit {
        first_landing: landed(&orbit).then_some(orbit.len()),
        expected_landing: orbit_condition_odd(p).map(|l| 2 * l + 2),
        steps: orbit.into_iter().map(|(chart, u)| ChartStep { chart, u: rational(&u) }).collect(),
        stopped,
    }))
}

/// Enough steps to see every predicted landing, and at least 6.
fn default_orbit_steps(p: &MapParams) -> usize {
    let m = classify::detect_m(&p.a(0)).map(|m| 2 * m + 1);
    let l = (p.n() % 2 == 1).then(|| orbit_condition_odd(p)).flatten().map(|l| 2 * l + 2);
    [m, l, Some(6)].into_iter().flatten().max().unwrap_or(6)
}

pub fn orbit(set: &ParamSet, s: &Settings) -> Result<OrbitOut> {
    let p = &set.params;
    let steps = s.iters.unwrap_or_else(|| default_orbit_steps(p));
    let c4 = c4_orbit(p, steps)?;
    let c2 = if p.n() % 2 == 1 { c2_orbit(p, steps)? } else { None };
    let landed_as_expected = |first: Option<usize>, expected: Option<usize>| match expected {
        Some(e) if e <= steps => first == Some(e),
        _ => first.is_none(),
    };
    let consistent = c4.on_c3
        && landed_as_expected(c4.first_landing, c4.expected_landing)
        && c2.as_ref().is_none_or(|c| landed_as_expected(c.first_landing, c.expected_landing));
    Ok(OrbitOut { header: Header::new(&set.name, p), case: classify::classify(p).to_string(), c4, c2, consistent })
}

#[derive(Serialize)]
pub struct IdentitiesOut {
    kmax: usize,
    seed: u64,
    theta: Vec<String>,
    alpha: Vec<String>,
    theta_series: bool,
    alpha_series: bool,
    derivative: bool,
    ratio: bool,
    sum_identity: bool,
    failures: Vec<usize>,
    even_equations_implied: [usize; 2],
    alternating_sum: [usize; 2],
    convolution: [usize; 2],
    pub all_pass: bool,
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.random_range(-20..=20), rng.random_range(1..=7))
}

pub fn identities(kmax: usize, seed: u64) -> Result<IdentitiesOut> {
    let r = linsys::claim2_identities(kmax);
    let ta = linsys::theta_alpha(kmax);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut implied = [0, 0];
    while implied[1] < 100 {
        let n: usize = rng.random_range(2..=15);
        let m = 2 * rng.random_range(0..n / 2) + 1;
        let b_even: Vec<BigRational> = (0..=n / 2).map(|_| random_rational(&mut rng)).collect();
        let sol = linsys::solve_odd_system(n, m, &b_even)?;
        implied[0] += usize::from(sol.odd_equations_hold() && linsys::check_even_implied(&sol));
        implied[1] += 1;
    }

    let mut alternating = [0, 0];
    for n in [3, 5, 7] {
        let basis = linsys::kernel_basis(n, n - 1)?;
        for _ in 0..50 {
            let mut a = vec![BigRational::zero(); n + 1];
            for v in &basis {
                let c = random_rational(&mut rng);
                for (x, y) in a.iter_mut().zip(v) {
                    *x += &c * y;
                }
            }
            alternating[0] += usize::from(linsys::alternating_sum_check(&a)?);
            alternating[1] += 1;
        }
    }

    let mut conv = [0, 0];
    for len in 1..=10 {
        let c: Vec<BigRational> = (0..len).map(|_| random_rational(&mut rng)).collect();
        conv[0] += usize::from(linsys::convolution_check(&c));
        conv[1] += 1;
    }

    let all_pass = r.all_pass()
        && [implied, alternating, conv].iter().all(|[ok, total]| ok == total);
    Ok(IdentitiesOut {
        kmax,
        seed,
        theta: ta.theta.iter().map(rational).collect(),
        alpha: ta.alpha.iter().map(rational).collect(),
        theta_series: r.theta_series,
        alpha_series: r.alpha_series,
        derivative: r.derivative,
        ratio: r.ratio,
        sum_identity: r.sum_identity,
        failures: r.failures,
        even_equations_implied: implied,
        alternating_sum: alternating,
        convolution: conv,
        all_pass,
    })
}

#[derive(Serialize)]
pub struct VerifyOut {
    #[serde(flatten)]
    header: Header,
    case: String,
    degrees: Vec<usize>,
    /// Predicted polynomial divides the matrix polynomial up to `x`, `x - 1`, `x + 1`.
    divides: Option<bool>,
    roots_agree: Option<bool>,
    /// The matrix recurrence annihilates the degrees; `null` if too few terms.
    degrees_annihilated: Option<bool>,
    /// The predicted polynomial alone annihilates the degrees. Reported, not
    /// required: the matrix recurrence can carry extra unit-root factors.
    predicted_annihilates: Option<bool>,
    /// Growth is subexponential (`d_N / d_{N-1} <= 3/2`), checked for case 6.
    bounded_growth: Option<bool>,
    c4_landing: Option<bool>,
    pub pass: bool,
}

pub fn verify(set: &ParamSet, s: &Settings) -> Result<VerifyOut> {
    let p = &set.params;
    let label = classify::classify(p);
    let d = degrees(p, s)?;
    let (mut divides, mut roots_agree, mut annihilated, mut predicted_annihilates) = (None, None, None, None);
    let mut bounded_growth = None;
    if label == CaseLabel::Odd6 {
        let r = growth_ratios(&d);
        bounded_growth = Some(r.last().is_none_or(|x| x <= &rat(3, 2)));
    } else {
        let r = verify_prediction(label, p.n(), Some(&d), &s.width)?;
        divides = Some(r.divides);
        roots_agree = Some(r.roots_agree);
        annihilated = r.degrees_annihilated();
        let c = integer_coeffs(&r.predicted).context("predicted polynomial is not integral")?;
        let res = recurrence_residuals(&c, &d);
        predicted_annihilates = (!res.is_empty()).then(|| res.iter().all(Zero::is_zero));
    }
    let c4_landing = match classify::detect_m(&p.a(0)) {
        Some(m) => {
            let o = c4_orbit(p, 2 * m + 1)?;
            Some(o.on_c3 && o.first_landing == Some(2 * m + 1))
        }
        None => None,
    };
    let pass = [divides, roots_agree, annihilated, bounded_growth, c4_landing]
        .iter()
        .all(|c| c.unwrap_or(true));
    Ok(VerifyOut {
        header: Header::new(&set.name, p),
        case: label.to_string(),
        degrees: d,
        divides,
        roots_agree,
        degrees_annihilated: annihilated,
        predicted_annihilates,
        bounded_growth,
        c4_landing,
        pass,
    })
}
