//! Pull-back action on the Picard group of the regularizing surface.
//!
//! The basis is ordered `H, E1, Q, P_1, ..., P_top`, then `E2` when present,
//! then the case towers (`Q_1..Q_m, R_0..R_m` or `S_0..S_l, T_1..T_l`).
//! Matrix columns hold the images of basis classes.

mod basis;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::classify::{self, CaseLabel, ClassifyError};
use crate::exactnum::{
    largest_real_root, linalg, ExactError, IntMatrix, QPoly, RationalInterval, Rationals, UniPoly,
};
use crate::mapcore::curves::Curve;
use crate::mapcore::recurrence_residuals;

pub use basis::BasisLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("no pull-back matrix is available for {0}")]
    UnsupportedCase(CaseLabel),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which action list to transcribe. They differ only in case Odd5, where the
/// printed images of `H`, `Q` and `P_{2n-2}` leave out the `P_{2n}` (and for
/// `P_{2n-2}` the `T_j`) terms that the curve expansions of the same case
/// carry. Without them the characteristic polynomial misses the stated one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Transcription {
    #[default]
    Corrected,
    Printed,
}

/// Ordered basis and the matrix of `k_Z^*` in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackData {
    pub case: CaseLabel,
    pub n: usize,
    pub basis: Vec<BasisLabel>,
    pub matrix: IntMatrix,
}

impl PullbackData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, b: BasisLabel) -> Option<usize> {
        self.basis.iter().position(|&x| x == b)
    }

    /// Image of a basis class, in basis coordinates.
    pub fn image(&self, b: BasisLabel) -> Option<Vec<BigInt>> {
        self.index_of(b).map(|j| self.matrix.column(j))
    }

    /// Degrees `d_j = <H, (k^*)^j H>` for `j = 0..count`.
    pub fn degree_sequence(&self, count: usize) -> Vec<BigInt> {
        let h = self.index_of(BasisLabel::H).expect("H is always in the basis");
        let mut v = unit(self.dim(), h);
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(v[h].clone());
            v = self.matrix.mul_vec(&v);
        }
        out
    }
}

fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

/// Sparse linear combination of basis classes.
type Combo = HashMap<BasisLabel, i64>;

fn add_into(acc: &mut Combo, terms: impl IntoIterator<Item = (BasisLabel, i64)>) {
    for (b, c) in terms {
        *acc.entry(b).or_insert(0) += c;
    }
}

fn combo(terms: impl IntoIterator<Item = (BasisLabel, i64)>) -> Combo {
    let mut c = Combo::new();
    add_into(&mut c, terms);
    c
}

/// Shape of the basis for one case.
struct Layout {
    n: usize,
    /// Largest `P` index.
    top: usize,
    /// `P_{n-1+1} .. P_{n-1+upper}` form the higher blow-up chain used in
    /// the `(n-1)` and `n` weighted sums.
    upper: usize,
    e2: bool,
    m: Option<usize>,
    l: Option<usize>,
}

impl Layout {
    fn new(label: CaseLabel, n: usize) -> Result<Self, PicardError> {
        if !label.applies_to(n) {
            return Err(ClassifyError::LabelMismatch { label, n }.into());
        }
        let lay = |top, upper, e2, m, l| Layout { n, top, upper, e2, m, l };
        Ok(match label {
            CaseLabel::Even1 => lay(n - 1, 0, false, None, None),
            CaseLabel::Even2 { m } => lay(n - 1, 0, false, Some(m), None),
            CaseLabel::Odd1 { h } => lay(n + h, h + 1, false, None, None),
            CaseLabel::Odd2 { h, m } => lay(n + h, h + 1, false, Some(m), None),
            CaseLabel::Odd3 => lay(2 * n - 1, n, true, None, None),
            CaseLabel::Odd4 { m } => lay(2 * n - 1, n, true, Some(m), None),
            CaseLabel::Odd5 { l } => lay(2 * n, n, true, None, Some(l)),
            CaseLabel::Odd6 => return Err(PicardError::UnsupportedCase(label)),
        })
    }

    fn basis(&self) -> Vec<BasisLabel> {
        use BasisLabel::*;
        let mut b = vec![H, E1, Q];
        b.extend((1..=self.top).map(P));
        if self.e2 {
            b.push(E2);
        }
        if let Some(m) = self.m {
            b.extend((1..=m).map(Qm));
            b.extend((0..=m).map(R));
        }
        if let Some(l) = self.l {
            b.extend((0..=l).map(S));
            b.extend((1..=l).map(T));
        }
        b
    }

    /// `sum_{j=1}^{n-1} f(j) P_j`.
    fn low(&self, f: impl Fn(i64) -> i64) -> Vec<(BasisLabel, i64)> {
        (1..self.n).map(|j| (BasisLabel::P(j), f(j as i64))).collect()
    }

    /// `c * sum_{j=1}^{upper} P_{n-1+j}`, with the sum running to `upto`.
    fn high(&self, upto: usize, c: i64) -> Vec<(BasisLabel, i64)> {
        (1..=upto).map(|j| (BasisLabel::P(self.n - 1 + j), c)).collect()
    }

    fn qs(&self, c: i64) -> Vec<(BasisLabel, i64)> {
        (1..=self.m.unwrap_or(0)).map(|j| (BasisLabel::Qm(j), c)).collect()
    }

    fn r_last(&self, c: i64) -> Vec<(BasisLabel, i64)> {
        self.m.map(|m| vec![(BasisLabel::R(m), c)]).unwrap_or_default()
    }

    fn rs(&self, c: i64) -> Vec<(BasisLabel, i64)> {
        self.m
            .map(|m| (0..=m).map(|j| (BasisLabel::R(j), c)).collect())
            .unwrap_or_default()
    }

    fn ss(&self, upto: usize, c: i64) -> Vec<(BasisLabel, i64)> {
        (0..upto).map(|j| (BasisLabel::S(j), c)).collect()
    }

    fn ts(&self, c: i64) -> Vec<(BasisLabel, i64)> {
        (1..=self.l.unwrap_or(0)).map(|j| (BasisLabel::T(j), c)).collect()
    }

    fn e2(&self, c: i64) -> Vec<(BasisLabel, i64)> {
        if self.e2 {
            vec![(BasisLabel::E2, c)]
        } else {
            Vec::new()
        }
    }
}

fn to_matrix(basis: &[BasisLabel], cols: &HashMap<BasisLabel, Combo>) -> IntMatrix {
    let idx: HashMap<BasisLabel, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let d = basis.len();
    let mut m = IntMatrix::zeros(d);
    for (b, col) in cols {
        let j = idx[b];
        for (k, &v) in col {
            if v != 0 {
                let i = *idx.get(k).unwrap_or_else(|| panic!("{k} not in basis"));
                m.set(i, j, BigInt::from(v));
            }
        }
    }
    m
}

/// The pull-back matrix with the corrected Odd5 transcription.
pub fn build_pullback(label: CaseLabel, n: usize) -> Result<PullbackData, PicardError> {
    build_pullback_with(label, n, Transcription::Corrected)
}

pub fn build_pullback_with(
    label: CaseLabel,
    n: usize,
    tr: Transcription,
) -> Result<PullbackData, PicardError> {
    use BasisLabel::*;
    let lay = Layout::new(label, n)?;
    let basis = lay.basis();
    let ni = n as i64;
    let mut cols: HashMap<BasisLabel, Combo> = HashMap::new();

    let mut h_img = combo([(H, 2 * ni + 1), (E1, -ni), (Q, -(ni + 1))]);
    add_into(&mut h_img, lay.low(|j| -(ni + 1) * j));
    let mut q_img = combo([(H, 1), (E1, -1), (Q, -1)]);
    add_into(&mut q_img, lay.low(|j| -j));
    add_into(&mut q_img, lay.qs(-1));
    add_into(&mut q_img, lay.rs(-1));
    add_into(&mut h_img, lay.qs(-(ni + 1)));
    add_into(&mut h_img, lay.r_last(-(ni + 1)));
    cols.insert(E1, combo([(E1, 1)]));

    // Images of C_4, shared by every tower case.
    let r0_img = |lay: &Layout| {
        let mut c = combo([(H, 2), (E1, -1), (Q, -2)]);
        add_into(&mut c, lay.low(|j| -j));
        add_into(&mut c, lay.high(lay.upper, -(ni - 1)));
        add_into(&mut c, lay.e2(-1));
        add_into(&mut c, lay.qs(-2));
        add_into(&mut c, lay.r_last(-1));
        c
    };
    let add_tower = |cols: &mut HashMap<BasisLabel, Combo>, lay: &Layout| {
        if let Some(m) = lay.m {
            cols.insert(R(0), r0_img(lay));
            for j in 1..=m {
                cols.insert(R(j), combo([(Qm(j), 1)]));
                cols.insert(Qm(j), combo([(R(j - 1), 1)]));
            }
        }
    };

    match label {
        CaseLabel::Even1 | CaseLabel::Even2 { .. } => {
            // C_1 + C_2 + P_1 + ... + P_{n-1}
            let mut p = combo([(H, 2), (E1, -1), (Q, -1)]);
            add_into(&mut p, lay.low(|j| -j));
            add_into(&mut p, lay.qs(-1));
            add_into(&mut p, lay.r_last(-1));
            cols.insert(P(n - 1), p);
            add_tower(&mut cols, &lay);
        }
        CaseLabel::Odd1 { h } | CaseLabel::Odd2 { h, .. } => {
            let hp = h + 1;
            add_into(&mut h_img, (1..=hp).map(|j| (P(n - 1 + j), -(ni * ni - 1 + j as i64))));
            add_into(&mut q_img, lay.high(hp, -(ni - 1)));
            cols.insert(P(n - 1 - hp), combo([(P(n - 1 + hp), 1)]));
            for j in 0..=h {
                cols.insert(P(n - 1 - j), combo([(P(n - 1 + j), 1)]));
                if j > 0 {
                    cols.insert(P(n - 1 + j), combo([(P(n - 1 - j), 1)]));
                }
            }
            let mut top = curve_combo(&lay, Curve::C1);
            add_into(&mut top, curve_combo(&lay, Curve::C2));
            add_into(&mut top, (1..=n - 1 - hp).map(|j| (P(j), 1)));
            cols.insert(P(n - 1 + hp), top);
            add_tower(&mut cols, &lay);
        }
        CaseLabel::Odd3 | CaseLabel::Odd4 { .. } | CaseLabel::Odd5 { .. } => {
            add_into(&mut h_img, (1..n).map(|j| (P(n - 1 + j), -(ni * ni - 1 + j as i64))));
            add_into(&mut h_img, [(P(2 * n - 1), -(ni * ni + ni - 2)), (E2, -ni)]);
            add_into(&mut q_img, lay.high(n, -(ni - 1)));
            for j in 0..n - 1 {
                cols.insert(P(n - 1 - j), combo([(P(n - 1 + j), 1)]));
                if j > 0 {
                    cols.insert(P(n - 1 + j), combo([(P(n - 1 - j), 1)]));
                }
            }
            let mut p_mid = combo([(H, 1), (E1, -1), (Q, -1), (E2, -1)]);
            add_into(&mut p_mid, lay.low(|j| -(j + 1)));
            add_into(&mut p_mid, lay.high(n, -ni));
            add_into(&mut p_mid, lay.qs(-1));
            cols.insert(E2, combo([(P(2 * n - 1), 1)]));
            if let Some(l) = lay.l {
                add_into(&mut h_img, lay.ts(-(ni * ni + ni - 2)));
                add_into(&mut h_img, lay.ss(l, -ni));
                add_into(&mut h_img, [(S(l), -2 * ni)]);
                add_into(&mut q_img, lay.ts(-(ni - 1)));
                add_into(&mut p_mid, lay.ss(l + 1, -1));
                if tr == Transcription::Corrected {
                    add_into(&mut h_img, [(P(2 * n), -(ni * ni + ni - 2))]);
                    add_into(&mut q_img, [(P(2 * n), -(ni - 1))]);
                    add_into(&mut p_mid, [(P(2 * n), -ni)]);
                    add_into(&mut p_mid, lay.ts(-ni));
                }
                cols.insert(P(2 * n - 1), combo([(E2, 1)]));
                let mut p_ep = combo([(H, 1), (E2, -1)]);
                add_into(&mut p_ep, lay.ss(l + 1, -1));
                cols.insert(P(2 * n), p_ep);
                cols.insert(S(0), combo([(P(2 * n), 1)]));
                for j in 1..=l {
                    cols.insert(S(j), combo([(T(j), 1)]));
                    cols.insert(T(j), combo([(S(j - 1), 1)]));
                }
            } else {
                // E_2 + C_2
                let mut p = combo([(H, 1)]);
                add_into(&mut p, lay.r_last(-1));
                cols.insert(P(2 * n - 1), p);
            }
            cols.insert(P(2 * n - 2), p_mid);
            add_tower(&mut cols, &lay);
        }
        CaseLabel::Odd6 => unreachable!("rejected by Layout::new"),
    }
    cols.insert(H, h_img);
    cols.insert(Q, q_img);
    Ok(PullbackData { case: label, n, matrix: to_matrix(&basis, &cols), basis })
}

fn curve_combo(lay: &Layout, which: Curve) -> Combo {
    use BasisLabel::*;
    let ni = lay.n as i64;
    let mut c = Combo::new();
    // Odd5 sums the higher chain up to P_{2n}.
    let upper = if lay.l.is_some() { lay.n + 1 } else { lay.upper };
    let l = lay.l.unwrap_or(0);
    match which {
        Curve::C1 => {
            add_into(&mut c, [(H, 1), (E1, -1), (Q, -1)]);
            add_into(&mut c, lay.low(|j| -(j + 1)));
            add_into(&mut c, lay.high(upper, -ni));
            add_into(&mut c, lay.e2(-1));
            add_into(&mut c, lay.qs(-1));
            add_into(&mut c, lay.ts(-ni));
            if lay.l.is_some() {
                add_into(&mut c, lay.ss(l + 1, -1));
            }
        }
        Curve::C2 => {
            add_into(&mut c, [(H, 1)]);
            if lay.l.is_some() {
                add_into(&mut c, [(E1, -1), (Q, -1)]);
                add_into(&mut c, lay.ss(l + 1, -1));
            }
            add_into(&mut c, lay.e2(-1));
            add_into(&mut c, lay.r_last(-1));
        }
        Curve::C3 => {
            add_into(&mut c, [(H, 1), (E1, -1), (Q, -1)]);
            add_into(&mut c, lay.low(|j| -j));
            add_into(&mut c, lay.high(upper, -(ni - 1)));
            add_into(&mut c, lay.qs(-1));
            add_into(&mut c, lay.rs(-1));
            add_into(&mut c, lay.ts(-(ni - 1)));
        }
        Curve::C4 => {
            add_into(&mut c, [(H, 2), (E1, -1), (Q, -2)]);
            add_into(&mut c, lay.low(|j| -j));
            add_into(&mut c, lay.high(upper, -(ni - 1)));
            add_into(&mut c, lay.e2(-1));
            add_into(&mut c, lay.qs(-2));
            add_into(&mut c, lay.r_last(-1));
            add_into(&mut c, lay.ts(-(ni - 1)));
            if lay.l.is_some() {
                add_into(&mut c, lay.ss(l, -1));
                add_into(&mut c, [(S(l), -2)]);
            }
        }
    }
    c
}

/// Class of a contracted curve in the ordered basis of the case.
///
/// Cases Odd3 and Odd4 have no printed list; their classes are read off
/// the action list (`k^*(Q) = C_3`, `k^*(P_{2n-2}) = C_1`,
/// `k^*(P_{2n-1}) = E_2 + C_2`, `k^*(R_0) = C_4`).
pub fn curve_class(label: CaseLabel, n: usize, which: Curve) -> Result<Vec<BigInt>, PicardError> {
    let lay = Layout::new(label, n)?;
    let basis = lay.basis();
    let c = curve_combo(&lay, which);
    Ok(basis.iter().map(|b| BigInt::from(*c.get(b).unwrap_or(&0))).collect())
}

/// `det(M - xI)` of the full matrix.
pub fn charpoly_pullback(data: &PullbackData) -> QPoly {
    data.matrix.char_poly()
}

/// The block printed for cases Odd1 and Odd3, laid out as printed: row `i`
/// holds the image of the `i`-th listed class.
pub fn printed_block(label: CaseLabel, n: usize) -> Option<(Vec<BasisLabel>, IntMatrix)> {
    use BasisLabel::*;
    let ni = n as i64;
    match label {
        CaseLabel::Odd1 { h } if label.applies_to(n) => {
            let hi = h as i64;
            let k = ni - 1 - hi - 1;
            let rows = vec![
                vec![2 * ni + 1, -(ni + 1), -(ni + 1) * k, -(ni * ni - 1 + hi + 1)],
                vec![1, -1, -k, -(ni - 1)],
                vec![0, 0, 0, 1],
                vec![2, -1, -k, -ni],
            ];
            Some((vec![H, Q, P(n - 2 - h), P(n + h)], IntMatrix::from_i64_rows(&rows)))
        }
        CaseLabel::Odd3 if label.applies_to(n) => {
            let big = -(ni * ni + ni - 2);
            let rows = vec![
                vec![2 * ni + 1, -(ni + 1), big, big, -ni],
                vec![1, -1, -(ni - 1), -(ni - 1), 0],
                vec![1, -1, -ni, -ni, -1],
                vec![1, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 0],
            ];
            Some((vec![H, Q, P(2 * n - 2), P(2 * n - 1), E2], IntMatrix::from_i64_rows(&rows)))
        }
        _ => None,
    }
}

/// Restriction of the pull-back to `classes`, transposed to the printed
/// layout (images as rows).
pub fn restricted_rows(data: &PullbackData, classes: &[BasisLabel]) -> Option<IntMatrix> {
    let idx = classes.iter().map(|&b| data.index_of(b)).collect::<Option<Vec<_>>>()?;
    Some(data.matrix.restrict(&idx).transpose())
}

/// Monic minimal polynomial of `H` under `k^*`: the shortest linear
/// recurrence the matrix forces on the degree sequence.
pub fn h_annihilator(data: &PullbackData) -> QPoly {
    let h = data.index_of(BasisLabel::H).expect("H is always in the basis");
    let mut krylov: Vec<Vec<BigInt>> = vec![unit(data.dim(), h)];
    loop {
        let next = data.matrix.mul_vec(krylov.last().expect("nonempty"));
        krylov.push(next);
        let k = krylov.len();
        // Columns are the Krylov vectors; a null vector is a relation.
        let rows: Vec<Vec<BigRational>> = (0..data.dim())
            .map(|i| krylov.iter().map(|v| BigRational::from_integer(v[i].clone())).collect())
            .collect();
        let null = linalg::nullspace(&rows, k);
        if let Some(rel) = null.into_iter().find(|v| !v[k - 1].is_zero()) {
            let lead = rel[k - 1].clone();
            let cs: Vec<BigRational> = rel.into_iter().map(|c| c / &lead).collect();
            return UniPoly::from_rationals(&cs);
        }
    }
}

/// Splits `p` as `x^a (x-1)^b (x+1)^c q` and returns `(a, b, c, q)`.
pub fn strip_unit_factors(p: &QPoly) -> (usize, usize, usize, QPoly) {
    let mut q = p.clone();
    let mut counts = [0usize; 3];
    let factors = [
        QPoly::from_i64s(Rationals, &[0, 1]),
        QPoly::from_i64s(Rationals, &[-1, 1]),
        QPoly::from_i64s(Rationals, &[1, 1]),
    ];
    for (f, count) in factors.iter().zip(counts.iter_mut()) {
        while !q.is_zero() && f.divides(&q) {
            q = q.div_exact(f).expect("checked divisibility");
            *count += 1;
        }
    }
    (counts[0], counts[1], counts[2], q)
}

/// Outcome of the three-way check between the predicted polynomial, the
/// pull-back matrix and a computed degree sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub case: CaseLabel,
    pub n: usize,
    pub dim: usize,
    pub predicted: QPoly,
    pub charpoly: QPoly,
    /// `charpoly / predicted`, when the division is exact.
    pub cofactor: Option<QPoly>,
    /// The cofactor is a product of `x`, `x - 1`, `x + 1` and a constant.
    pub divides: bool,
    pub delta_predicted: RationalInterval,
    pub delta_matrix: RationalInterval,
    pub roots_agree: bool,
    pub annihilator: QPoly,
    /// Residuals of the annihilator on the supplied degrees; `None` when no
    /// degrees were supplied or too few to test one shift.
    pub residuals: Option<Vec<BigInt>>,
    /// The printed (uncorrected) action list also gives a multiple of the
    /// predicted polynomial.
    pub printed_divides: bool,
}

impl VerifyReport {
    pub fn degrees_annihilated(&self) -> Option<bool> {
        self.residuals.as_ref().map(|r| r.iter().all(Zero::is_zero))
    }

    pub fn all_pass(&self) -> bool {
        self.divides && self.roots_agree && self.degrees_annihilated().unwrap_or(true)
    }
}

fn divides_up_to_units(pred: &QPoly, full: &QPoly) -> (Option<QPoly>, bool) {
    let (q, r) = full.divrem(pred);
    if !r.is_zero() {
        return (None, false);
    }
    let rest = strip_unit_factors(&q).3;
    let ok = rest.degree() == Some(0);
    (Some(q), ok)
}

fn integer_coeffs(p: &QPoly) -> Option<Vec<BigInt>> {
    p.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

/// Compares `predicted_charpoly(label, n)` against the pull-back matrix, and
/// when `degrees` is given, checks that the matrix recurrence annihilates it.
pub fn verify_prediction(
    label: CaseLabel,
    n: usize,
    degrees: Option<&[usize]>,
    width: &BigRational,
) -> Result<VerifyReport, PicardError> {
    let data = build_pullback(label, n)?;
    let predicted = classify::predicted_charpoly(label, n)?;
    let charpoly = charpoly_pullback(&data);
    let (cofactor, divides) = divides_up_to_units(&predicted, &charpoly);
    let printed = charpoly_pullback(&build_pullback_with(label, n, Transcription::Printed)?);
    let printed_divides = divides_up_to_units(&predicted, &printed).1;
    let delta_predicted = largest_real_root(&predicted, width)?;
    let delta_matrix = largest_real_root(&charpoly, width)?;
    let roots_agree = delta_predicted.overlaps(&delta_matrix);
    let annihilator = h_annihilator(&data);
    let residuals = degrees.and_then(|d| {
        let c = integer_coeffs(&annihilator)?;
        let r = recurrence_residuals(&c, d);
        (!r.is_empty()).then_some(r)
    });
    Ok(VerifyReport {
        case: label,
        n,
        dim: data.dim(),
        predicted,
        charpoly,
        cofactor,
        divides,
        delta_predicted,
        delta_matrix,
        roots_agree,
        annihilator,
        residuals,
        printed_divides,
    })
}
