//! Phase spaces: points, metrics, balls, and ε-nets.
//!
//! Three spaces are supported:
//!
//! * the unit interval `I = [0, 1]` with `d(x, y) = |x - y|`;
//! * the circle of circumference 1, coordinates taken mod 1, with arc
//!   metric `d(x, y) = min(|x - y|, 1 - |x - y|) <= 1/2`;
//! * truncated Cantor space: binary words of a fixed length `L`, with
//!   `ρ(x, y) = 1/n` where `n` is the first index of disagreement
//!   (1-based) and `ρ(x, x) = 0`.
//!
//! Cantor points carry only `L` bits; any claim that would depend on deeper
//! bits is reported as indeterminate rather than guessed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::{Error, Result};

/// Which phase space a point or map lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceTag {
    Interval,
    Circle,
    Cantor,
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceTag::Interval => "interval",
            SpaceTag::Circle => "circle",
            SpaceTag::Cantor => "cantor",
        };
        f.write_str(s)
    }
}

/// A point of `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntervalPoint(Rational);

impl IntervalPoint {
    pub fn new(value: Rational) -> Result<IntervalPoint> {
        if value < Rational::zero() || value > Rational::one() {
            return Err(Error::Domain(format!("{value} is outside [0, 1]")));
        }
        Ok(IntervalPoint(value))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }
}

impl fmt::Debug for IntervalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of the circle, stored as a circumference fraction in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    /// Reduces any rational mod 1.
    pub fn new(fraction: Rational) -> CirclePoint {
        CirclePoint(fraction.mod_one())
    }

    pub fn fraction(&self) -> &Rational {
        &self.0
    }

    /// Rotate by `t` (mod 1).
    pub fn rotate(&self, t: &Rational) -> CirclePoint {
        CirclePoint::new(&self.0 + t)
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A binary word of fixed length modeling a truncated point of `{0,1}^N`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CantorWord {
    bits: Vec<u8>,
}

impl CantorWord {
    pub fn new(bits: Vec<u8>) -> Result<CantorWord> {
        if bits.is_empty() {
            return Err(Error::Domain("Cantor word must have positive length".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Domain("Cantor word entries must be 0 or 1".into()));
        }
        Ok(CantorWord { bits })
    }

    /// Parse from a string of `0`/`1` characters, e.g. `"111000"`.
    pub fn parse(s: &str) -> Result<CantorWord> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Domain(format!("invalid Cantor bit {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        CantorWord::new(bits)
    }

    pub fn zeros(len: usize) -> CantorWord {
        assert!(len > 0);
        CantorWord { bits: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.bits
    }

    /// 1-based index of the first disagreement, or `None` if equal over the
    /// stored length.
    pub fn first_disagreement(&self, other: &CantorWord) -> Option<usize> {
        self.bits
            .iter()
            .zip(&other.bits)
            .position(|(a, b)| a != b)
            .map(|i| i + 1)
    }
}

impl fmt::Debug for CantorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Display for CantorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A point of any of the three spaces; used at API boundaries where the
/// space is chosen at runtime (reports, configs).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", content = "value", rename_all = "lowercase")]
pub enum Point {
    Interval(IntervalPoint),
    Circle(CirclePoint),
    Cantor(CantorWord),
}

impl Point {
    pub fn tag(&self) -> SpaceTag {
        match self {
            Point::Interval(_) => SpaceTag::Interval,
            Point::Circle(_) => SpaceTag::Circle,
            Point::Cantor(_) => SpaceTag::Cantor,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Interval(p) => write!(f, "{}", p.value()),
            Point::Circle(p) => write!(f, "{}", p.fraction()),
            Point::Cantor(w) => write!(f, "{w}"),
        }
    }
}

pub fn interval_metric(x: &IntervalPoint, y: &IntervalPoint) -> Rational {
    (x.value() - y.value()).abs()
}

pub fn circle_metric(x: &CirclePoint, y: &CirclePoint) -> Rational {
    let d = (x.fraction() - y.fraction()).abs();
    let wrap = Rational::one() - &d;
    d.min(wrap)
}

pub fn cantor_metric(x: &CantorWord, y: &CantorWord) -> Rational {
    match x.first_disagreement(y) {
        Some(n) => Rational::new(1, n as i64),
        None => Rational::zero(),
    }
}

/// Metric dispatch over runtime-tagged points.
pub fn metric(x: &Point, y: &Point) -> Result<Rational> {
    match (x, y) {
        (Point::Interval(a), Point::Interval(b)) => Ok(interval_metric(a, b)),
        (Point::Circle(a), Point::Circle(b)) => Ok(circle_metric(a, b)),
        (Point::Cantor(a), Point::Cantor(b)) => {
            if a.len() != b.len() {
                return Err(Error::Domain(format!(
                    "Cantor words of different lengths: {} vs {}",
                    a.len(),
                    b.len()
                )));
            }
            Ok(cantor_metric(a, b))
        }
        _ => Err(Error::SpaceMismatch {
            expected: match x.tag() {
                SpaceTag::Interval => "interval",
                SpaceTag::Circle => "circle",
                SpaceTag::Cantor => "cantor",
            },
            got: match y.tag() {
                SpaceTag::Interval => "interval",
                SpaceTag::Circle => "circle",
                SpaceTag::Cantor => "cantor",
            },
        }),
    }
}

/// Open-ball membership: `metric(center, x) < radius`, strictly.
pub fn ball_contains(center: &Point, radius: &Rational, x: &Point) -> Result<bool> {
    if radius <= &Rational::zero() {
        return Err(Error::Domain("ball radius must be positive".into()));
    }
    Ok(&metric(center, x)? < radius)
}

/// Deterministic finite ε-net: every point of the space is within `eps`
/// (non-strictly) of some net point.
///
/// * interval: grid `{0, eps, 2eps, ..., 1}` — worst distance `eps/2`;
/// * circle: grid `{0, eps, ...}` wrapping — worst distance `eps/2`;
/// * Cantor (length `L`): one representative (suffix zeros) per prefix of
///   length `p`, where `p` is minimal with `1/(p+1) < eps`; requires
///   `p <= L`, otherwise the request is indeterminate at this precision.
pub fn epsilon_net(space: SpaceTag, eps: &Rational, word_length: usize) -> Result<Vec<Point>> {
    if eps <= &Rational::zero() || eps > &Rational::one() {
        return Err(Error::Domain(format!("epsilon {eps} outside (0, 1]")));
    }
    match space {
        SpaceTag::Interval => {
            let mut pts = Vec::new();
            let mut x = Rational::zero();
            while x < Rational::one() {
                pts.push(Point::Interval(IntervalPoint::new(x.clone())?));
                x = &x + eps;
            }
            pts.push(Point::Interval(IntervalPoint::new(Rational::one())?));
            Ok(pts)
        }
        SpaceTag::Circle => {
            let mut pts = Vec::new();
            let mut x = Rational::zero();
            while x < Rational::one() {
                pts.push(Point::Circle(CirclePoint::new(x.clone())));
                x = &x + eps;
            }
            Ok(pts)
        }
        SpaceTag::Cantor => {
            // Minimal p with 1/(p+1) < eps is p = floor(1/eps).
            let inv = eps.recip();
            let p: usize = usize::try_from(inv.floor().numer()).map_err(|_| {
                Error::Domain(format!("epsilon {eps} too small for a Cantor net"))
            })?;
            if p > word_length {
                return Err(Error::Domain(format!(
                    "epsilon {eps} needs prefixes of length {p} > word length {word_length} \
                     (indeterminate beyond precision)"
                )));
            }
            let mut pts = Vec::with_capacity(1 << p);
            for code in 0u64..(1u64 << p) {
                let mut bits = vec![0u8; word_length];
                for (i, bit) in bits.iter_mut().enumerate().take(p) {
                    *bit = ((code >> i) & 1) as u8;
                }
                pts.push(Point::Cantor(CantorWord::new(bits)?));
            }
            Ok(pts)
        }
    }
}

/// A closed rational subinterval of `[0, 1]`. Degenerate (single-point)
/// intervals are allowed and test as `is_degenerate`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<RationalInterval> {
        if lo > hi {
            return Err(Error::Domain(format!("interval [{lo}, {hi}] is reversed")));
        }
        if lo < Rational::zero() || hi > Rational::one() {
            return Err(Error::Domain(format!("interval [{lo}, {hi}] leaves [0, 1]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn unit() -> RationalInterval {
        RationalInterval { lo: Rational::zero(), hi: Rational::one() }
    }

    pub fn point(x: Rational) -> Result<RationalInterval> {
        RationalInterval::new(x.clone(), x)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * Rational::new(1, 2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interior(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Closed-intersection, `None` when disjoint.
    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(RationalInterval { lo, hi })
        } else {
            None
        }
    }

    /// Whether the interiors overlap: used as the rigorous open-set hitting
    /// test (`max(lo) < min(hi)`).
    pub fn interiors_overlap(&self, other: &RationalInterval) -> bool {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        lo < hi
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Normalize a list of closed intervals: sort, merge any that touch or
/// overlap, drop nothing (degenerate intervals are kept unless absorbed).
pub fn merge_intervals(mut parts: Vec<RationalInterval>) -> Vec<RationalInterval> {
    parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    let mut out: Vec<RationalInterval> = Vec::with_capacity(parts.len());
    for part in parts {
        match out.last_mut() {
            Some(last) if part.lo <= last.hi => {
                if part.hi > last.hi {
                    last.hi = part.hi;
                }
            }
            _ => out.push(part),
        }
    }
    out
}
