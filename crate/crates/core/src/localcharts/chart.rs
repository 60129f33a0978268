//! Chart templates for the exceptional fibers and the limit of `k` (or
//! `k^{-1}`) along a chart arc.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeffs::{ep_ip_sequence, top_prefix};
use super::laurent::{Exhausted, Laurent};
use super::LocalError;
use crate::classify::detect_m;
use crate::exactnum::{QPoly, Rationals, UniPoly};
use crate::mapcore::{pull_arc, push_arc, special, MapError, MapParams, ParamArc, ProjPoint};

/// Shape of a coordinate chart `(s, u) -> [X_0 : X_1 : X_2]` whose fiber is
/// `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartKind {
    /// `[s^{e+1} B : 1 : s^e B]` with `B = A(s) + s^j u`, where `A` is the
    /// prefix polynomial of degree `j - 1`.
    Fiber { e: usize, prefix: Vec<BigRational> },
    /// `[s : s u : 1]`.
    E2,
    /// `[s : 1 : u]`, crossing `C_1 = {x_0 = 0}` at `[0 : 1 : u]`.
    C1,
    /// `[1 : a_0 - 1 + s u : s]`.
    R0 { a0: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub name: String,
    pub kind: ChartKind,
}

/// Whether to follow `k` or `k^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl fmt::Display for ChartSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn poly(cs: Vec<BigRational>) -> QPoly {
    UniPoly::from_rationals(&cs)
}

impl ChartSpec {
    fn fiber(k: usize, e: usize, prefix: Vec<BigRational>) -> Self {
        ChartSpec { name: format!("P{k}"), kind: ChartKind::Fiber { e, prefix } }
    }

    /// The arc `s -> chart(s, u)` for fixed `u`.
    pub fn arc(&self, u: &BigRational) -> Result<ParamArc<Rationals>, LocalError> {
        let one = BigRational::one;
        let zero = BigRational::zero;
        let c = match &self.kind {
            ChartKind::Fiber { e, prefix } => {
                let mut b = prefix.clone();
                b.push(u.clone());
                let b = poly(b);
                [b.shift(e + 1), poly(vec![one()]), b.shift(*e)]
            }
            ChartKind::E2 => [poly(vec![zero(), one()]), poly(vec![zero(), u.clone()]), poly(vec![one()])],
            ChartKind::C1 => [poly(vec![zero(), one()]), poly(vec![one()]), poly(vec![u.clone()])],
            ChartKind::R0 { a0 } => [
                poly(vec![one()]),
                poly(vec![a0 - one(), u.clone()]),
                poly(vec![zero(), one()]),
            ],
        };
        Ok(ParamArc::new(c)?)
    }

    /// Chart coordinate of the limit of `arc`, or `None` when the limit is
    /// not on this chart's fiber.
    fn coordinate(&self, arc: &ParamArc<Rationals>, order: usize) -> Result<Option<BigRational>, Exhausted> {
        let [x0, x1, x2] = arc.components().clone().map(|p| Laurent::from_poly(&p, order));
        match &self.kind {
            ChartKind::Fiber { e, prefix } => {
                let sigma = x0.div(&x2)?;
                if sigma.valuation()? < 1 {
                    return Ok(None);
                }
                let b = x2.div(&x1.mul(&sigma.pow(*e)))?;
                // A(sigma) by Horner.
                let mut a = Laurent::constant(&BigRational::zero(), order);
                for p in prefix.iter().rev() {
                    a = a.mul(&sigma).sub(&Laurent::constant(&-p, order));
                }
                let t = b.sub(&a).div(&sigma.pow(prefix.len()))?;
                t.limit()
            }
            ChartKind::E2 => {
                let sigma = x0.div(&x2)?;
                if sigma.valuation()? < 1 {
                    return Ok(None);
                }
                x1.div(&x0)?.limit()
            }
            ChartKind::R0 { a0 } => {
                let sigma = x2.div(&x0)?;
                if sigma.valuation()? < 1 {
                    return Ok(None);
                }
                let shifted = x1.div(&x0)?.sub(&Laurent::constant(&(a0 - BigRational::one()), order));
                shifted.div(&sigma)?.limit()
            }
            ChartKind::C1 => {
                let base = arc.base_point();
                let [b0, b1, b2] = base.rational_coords();
                if !b0.is_zero() || b1.is_zero() || b2.is_zero() {
                    return Ok(None);
                }
                Ok(Some(b2 / b1))
            }
        }
    }
}

/// The charts available for one parameter set, deepest fiber first.
#[derive(Clone, Debug)]
pub struct ChartRegistry {
    params: MapParams,
    charts: Vec<ChartSpec>,
}

const MAX_ORDER: usize = 1024;

impl ChartRegistry {
    pub fn new(params: &MapParams) -> Self {
        let n = params.n();
        let mut charts = Vec::new();
        if n % 2 == 1 {
            // Longest chain of blow-ups at ep_j = ip_j.
            let mut jmax = 0;
            while jmax + 1 < n && ep_ip_sequence(params, jmax + 1).is_ok() {
                jmax += 1;
            }
            let seq = ep_ip_sequence(params, jmax).expect("checked above");
            let agree = seq.agreeing_prefix();
            if agree + 1 >= n {
                if let Ok((top, _)) = top_prefix(params) {
                    charts.push(ChartSpec::fiber(2 * n - 1, n - 1, top));
                    charts.push(ChartSpec { name: "E2".into(), kind: ChartKind::E2 });
                }
            }
            for j in (1..=agree.min(n - 1)).rev() {
                charts.push(ChartSpec::fiber(n - 1 + j, n - 1, seq.ep[..j].to_vec()));
            }
        }
        for k in (1..n).rev() {
            charts.push(ChartSpec::fiber(k, k, Vec::new()));
        }
        charts.push(ChartSpec { name: "C1".into(), kind: ChartKind::C1 });
        if detect_m(&params.a(0)).is_some() {
            charts.push(ChartSpec { name: "R0".into(), kind: ChartKind::R0 { a0: params.a(0) } });
        }
        ChartRegistry { params: params.clone(), charts }
    }

    pub fn params(&self) -> &MapParams {
        &self.params
    }

    pub fn charts(&self) -> &[ChartSpec] {
        &self.charts
    }

    pub fn get(&self, name: &str) -> Option<&ChartSpec> {
        self.charts.iter().find(|c| c.name == name)
    }

    /// The same registry without the named charts, i.e. an earlier stage of
    /// the blow-up tower.
    pub fn without(&self, names: &[&str]) -> Self {
        ChartRegistry {
            params: self.params.clone(),
            charts: self.charts.iter().filter(|c| !names.contains(&c.name.as_str())).cloned().collect(),
        }
    }

    fn r0_point(&self) -> ProjPoint {
        let a0 = self.params.a(0);
        ProjPoint::new([BigRational::one(), a0 - BigRational::one(), BigRational::zero()])
            .expect("nonzero")
    }

    /// Chart and coordinate of the limit point of `arc`.
    pub fn locate(&self, arc: &ParamArc<Rationals>) -> Result<(String, BigRational), LocalError> {
        let base = arc.base_point();
        let candidates: Vec<&ChartSpec> = self
            .charts
            .iter()
            .filter(|c| match c.kind {
                ChartKind::Fiber { .. } => base == special::e1(),
                ChartKind::E2 => base == special::e2(),
                ChartKind::R0 { .. } => base == self.r0_point(),
                ChartKind::C1 => true,
            })
            .collect();
        for chart in candidates {
            let mut order = 16;
            loop {
                match chart.coordinate(arc, order) {
                    Ok(Some(v)) => return Ok((chart.name.clone(), v)),
                    Ok(None) => break,
                    Err(Exhausted) if order < MAX_ORDER => order *= 2,
                    Err(Exhausted) => return Err(LocalError::PrecisionExhausted),
                }
            }
        }
        Err(LocalError::AmbiguousTarget(base.to_string()))
    }
}

/// Image of the point `u` of `chart` under `k` (or `k^{-1}`), as a chart
/// name and coordinate.
pub fn chart_limit(
    registry: &ChartRegistry,
    chart: &ChartSpec,
    u: &BigRational,
    direction: Direction,
) -> Result<(String, BigRational), LocalError> {
    let arc = chart.arc(u)?;
    let image = match direction {
        Direction::Forward => push_arc(registry.params(), &arc),
        Direction::Inverse => pull_arc(registry.params(), &arc),
    };
    let image = image.map_err(|e| match e {
        MapError::ArcCollapse => LocalError::PoleAtU(u.clone()),
        other => LocalError::Map(other),
    })?;
    if image.degree() == 0 {
        return Err(LocalError::Contracted(u.clone()));
    }
    registry.locate(&image)
}

/// Chart positions of `k(arc), k^2(arc), ...`. After the first step each
/// point is pushed along the arc of the chart it landed in.
pub fn follow_orbit(
    registry: &ChartRegistry,
    arc: &ParamArc<Rationals>,
    steps: usize,
) -> Result<Vec<(String, BigRational)>, LocalError> {
    let mut out = Vec::with_capacity(steps);
    if steps == 0 {
        return Ok(out);
    }
    let image = push_arc(registry.params(), arc)?;
    let mut here = registry.locate(&image)?;
    out.push(here.clone());
    for _ in 1..steps {
        let chart = registry.get(&here.0).ok_or_else(|| LocalError::AmbiguousTarget(here.0.clone()))?;
        here = chart_limit(registry, chart, &here.1, Direction::Forward)?;
        out.push(here.clone());
    }
    Ok(out)
}
