use std::fmt;
use std::str::FromStr;

/// A class in the Picard group basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// Strict transform of a generic line.
    H,
    E1,
    Q,
    P(usize),
    E2,
    /// `Q_i` of the `m` tower.
    Qm(usize),
    R(usize),
    S(usize),
    T(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::H => f.write_str("H"),
            BasisLabel::E1 => f.write_str("E1"),
            BasisLabel::Q => f.write_str("Q"),
            BasisLabel::E2 => f.write_str("E2"),
            BasisLabel::P(i) => write!(f, "P{i}"),
            BasisLabel::Qm(i) => write!(f, "Q_{i}"),
            BasisLabel::R(i) => write!(f, "R{i}"),
            BasisLabel::S(i) => write!(f, "S{i}"),
            BasisLabel::T(i) => write!(f, "T{i}"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unknown basis label {s:?}");
        match s {
            "H" => return Ok(BasisLabel::H),
            "E1" => return Ok(BasisLabel::E1),
            "Q" => return Ok(BasisLabel::Q),
            "E2" => return Ok(BasisLabel::E2),
            _ => {}
        }
        let (ctor, rest): (fn(usize) -> BasisLabel, &str) = if let Some(r) = s.strip_prefix("Q_") {
            (BasisLabel::Qm, r)
        } else if let Some(r) = s.strip_prefix('P') {
            (BasisLabel::P, r)
        } else if let Some(r) = s.strip_prefix('R') {
            (BasisLabel::R, r)
        } else if let Some(r) = s.strip_prefix('S') {
            (BasisLabel::S, r)
        } else if let Some(r) = s.strip_prefix('T') {
            (BasisLabel::T, r)
        } else {
            return Err(bad());
        };
        rest.parse().map(ctor).map_err(|_| bad())
    }
}
