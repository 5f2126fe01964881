//! Continuous piecewise-linear self-maps of `[0, 1]` with exact rational
//! breakpoints, and the exact algebra on them: evaluation, composition,
//! sup-metric, fixed points, preimages, interval images, slope profiles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::space::{merge_intervals, RationalInterval};
use crate::{Error, Result};

/// A continuous piecewise-linear map `[0,1] -> [0,1]`, stored as a strictly
/// increasing breakpoint list starting at 0 and ending at 1 together with
/// the value at each breakpoint. Pieces interpolate linearly.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLMap {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

/// One linear piece `[lo, hi]` with `f(x) = value_lo + slope * (x - lo)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub value_lo: Rational,
    pub value_hi: Rational,
}

impl Piece {
    pub fn slope(&self) -> Rational {
        (&self.value_hi - &self.value_lo) / (&self.hi - &self.lo)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.value_lo + (x - &self.lo) * self.slope()
    }

    pub fn interval(&self) -> RationalInterval {
        RationalInterval::new(self.lo.clone(), self.hi.clone()).expect("piece inside [0,1]")
    }
}

/// Outcome of an exact fixed-point computation: isolated points plus any
/// identity pieces (whole intervals of fixed points).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoints {
    pub points: Vec<Rational>,
    pub intervals: Vec<RationalInterval>,
}

impl FixedPoints {
    pub fn is_finite(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Exact preimage of a single value: isolated solutions plus any plateau
/// pieces that sit exactly at the requested height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub points: Vec<Rational>,
    pub plateaus: Vec<RationalInterval>,
}

impl PLMap {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<PLMap> {
        if breakpoints.len() < 2 {
            return Err(Error::Construction("need at least two breakpoints".into()));
        }
        if breakpoints.len() != values.len() {
            return Err(Error::Construction(format!(
                "{} breakpoints vs {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints[0] != Rational::zero() || breakpoints[breakpoints.len() - 1] != Rational::one()
        {
            return Err(Error::Construction("breakpoints must start at 0 and end at 1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Construction("breakpoints must be strictly increasing".into()));
        }
        if values.iter().any(|v| v < &Rational::zero() || v > &Rational::one()) {
            return Err(Error::Construction("values must stay in [0, 1]".into()));
        }
        Ok(PLMap { breakpoints, values })
    }

    /// Convenience constructor from small integers: `(num, den)` pairs.
    #[allow(clippy::type_complexity)]
    pub fn from_pairs(pairs: &[((i64, i64), (i64, i64))]) -> Result<PLMap> {
        let breakpoints = pairs.iter().map(|((n, d), _)| Rational::new(*n, *d)).collect();
        let values = pairs.iter().map(|(_, (n, d))| Rational::new(*n, *d)).collect();
        PLMap::new(breakpoints, values)
    }

    pub fn identity() -> PLMap {
        PLMap::new(
            vec![Rational::zero(), Rational::one()],
            vec![Rational::zero(), Rational::one()],
        )
        .expect("identity is valid")
    }

    /// The full tent map: peak 1 at `x = 1/2`.
    pub fn tent() -> PLMap {
        PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 2), (1, 1)), ((1, 1), (0, 1))])
            .expect("tent is valid")
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn piece_count(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn piece(&self, i: usize) -> Piece {
        Piece {
            lo: self.breakpoints[i].clone(),
            hi: self.breakpoints[i + 1].clone(),
            value_lo: self.values[i].clone(),
            value_hi: self.values[i + 1].clone(),
        }
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        (0..self.piece_count()).map(|i| self.piece(i))
    }

    /// Index of the piece containing `x` (breakpoints resolve to the piece
    /// on their right, except `x = 1`).
    fn piece_index(&self, x: &Rational) -> usize {
        match self.breakpoints.binary_search(x) {
            Ok(i) => i.min(self.piece_count() - 1),
            Err(i) => i - 1,
        }
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if x < &Rational::zero() || x > &Rational::one() {
            return Err(Error::Domain(format!("{x} is outside [0, 1]")));
        }
        Ok(self.piece(self.piece_index(x)).eval(x))
    }

    /// `f^k(x)` by repeated evaluation.
    pub fn iterate(&self, x: &Rational, k: usize) -> Result<Rational> {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.evaluate(&y)?;
        }
        Ok(y)
    }

    /// Surjective onto `[0, 1]`: both 0 and 1 appear among the values
    /// (piecewise linearity makes breakpoint values sufficient).
    pub fn is_surjective(&self) -> bool {
        self.values.iter().any(|v| v.is_zero())
            && self.values.iter().any(|v| v == &Rational::one())
    }

    pub fn has_plateau(&self) -> bool {
        self.values.windows(2).any(|w| w[0] == w[1])
    }

    /// Exact composition `g ∘ f`. The result's breakpoints are `f`'s
    /// breakpoints together with all `f`-preimages of `g`'s breakpoints, so
    /// each output piece maps linearly into a single piece of `g`.
    pub fn compose_after(&self, f: &PLMap) -> PLMap {
        let g = self;
        let mut cuts: Vec<Rational> = f.breakpoints.clone();
        for b in &g.breakpoints {
            let pre = f.preimage(b).expect("breakpoint in range");
            cuts.extend(pre.points);
            for plateau in pre.plateaus {
                cuts.push(plateau.lo().clone());
                cuts.push(plateau.hi().clone());
            }
        }
        cuts.sort();
        cuts.dedup();
        let values = cuts
            .iter()
            .map(|x| {
                let fx = f.evaluate(x).expect("cut inside domain");
                g.evaluate(&fx).expect("f maps into [0,1]")
            })
            .collect();
        PLMap::new(cuts, values).expect("composition of valid maps is valid")
    }

    /// Drop interior breakpoints where adjacent pieces share a slope.
    pub fn simplify(&self) -> PLMap {
        let mut breakpoints = vec![self.breakpoints[0].clone()];
        let mut values = vec![self.values[0].clone()];
        for i in 1..self.breakpoints.len() - 1 {
            let left = Piece {
                lo: breakpoints.last().unwrap().clone(),
                hi: self.breakpoints[i].clone(),
                value_lo: values.last().unwrap().clone(),
                value_hi: self.values[i].clone(),
            };
            let right = self.piece(i);
            if left.slope() != right.slope() {
                breakpoints.push(self.breakpoints[i].clone());
                values.push(self.values[i].clone());
            }
        }
        breakpoints.push(self.breakpoints[self.breakpoints.len() - 1].clone());
        values.push(self.values[self.values.len() - 1].clone());
        PLMap::new(breakpoints, values).expect("simplification preserves validity")
    }

    /// `sup_x |f(x) - g(x)|`, exact: the difference is piecewise linear, so
    /// the supremum is attained at a breakpoint of either map.
    pub fn sup_distance(&self, other: &PLMap) -> Rational {
        let mut best = Rational::zero();
        for b in self.breakpoints.iter().chain(other.breakpoints.iter()) {
            let d = (self.evaluate(b).unwrap() - other.evaluate(b).unwrap()).abs();
            if d > best {
                best = d;
            }
        }
        best
    }

    /// Exact fixed points, solved piece by piece. A piece lying exactly on
    /// the diagonal is reported as a fixed interval rather than as points.
    pub fn fixed_points(&self) -> FixedPoints {
        let mut points = Vec::new();
        let mut intervals = Vec::new();
        for piece in self.pieces() {
            let slope = piece.slope();
            if slope == Rational::one() {
                if piece.value_lo == piece.lo {
                    intervals.push(piece.interval());
                }
                continue;
            }
            // x = value_lo + slope (x - lo)  =>  x (1 - slope) = value_lo - slope*lo
            let x = (&piece.value_lo - &slope * &piece.lo) / (Rational::one() - &slope);
            if x >= piece.lo && x <= piece.hi {
                points.push(x);
            }
        }
        points.sort();
        points.dedup();
        // Points swallowed by a fixed interval are not reported twice.
        let intervals = merge_intervals(intervals);
        points.retain(|p| !intervals.iter().any(|iv| iv.contains(p)));
        FixedPoints { points, intervals }
    }

    /// Exact solutions of `f(x) = y`, piece by piece.
    pub fn preimage(&self, y: &Rational) -> Result<Preimage> {
        if y < &Rational::zero() || y > &Rational::one() {
            return Err(Error::Domain(format!("{y} is outside [0, 1]")));
        }
        let mut points = Vec::new();
        let mut plateaus = Vec::new();
        for piece in self.pieces() {
            let slope = piece.slope();
            if slope.is_zero() {
                if &piece.value_lo == y {
                    plateaus.push(piece.interval());
                }
                continue;
            }
            let x = &piece.lo + (y - &piece.value_lo) / slope;
            if x >= piece.lo && x <= piece.hi {
                points.push(x);
            }
        }
        points.sort();
        points.dedup();
        let plateaus = merge_intervals(plateaus);
        points.retain(|p| !plateaus.iter().any(|iv| iv.contains(p)));
        Ok(Preimage { points, plateaus })
    }

    /// Exact `f^{-j}({y})` as a point set, by breadth-first per-level
    /// solving. Errors if a plateau is encountered (the preimage would
    /// contain an interval).
    pub fn preimage_tree(&self, y: &Rational, depth: usize) -> Result<Vec<Rational>> {
        let mut level = vec![y.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for target in &level {
                let pre = self.preimage(target)?;
                if !pre.plateaus.is_empty() {
                    return Err(Error::Unsupported(format!(
                        "preimage of {target} contains a plateau interval"
                    )));
                }
                next.extend(pre.points);
            }
            next.sort();
            next.dedup();
            level = next;
        }
        Ok(level)
    }

    /// Exact image of a closed interval — a single closed interval by
    /// continuity; the extrema occur at the endpoints or at interior
    /// breakpoints.
    pub fn image_of_interval(&self, u: &RationalInterval) -> RationalInterval {
        let mut lo = self.evaluate(u.lo()).expect("interval inside domain");
        let mut hi = self.evaluate(u.hi()).expect("interval inside domain");
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        for b in &self.breakpoints {
            if u.contains_interior(b) {
                let v = self.evaluate(b).unwrap();
                if v < lo {
                    lo = v.clone();
                }
                if v > hi {
                    hi = v;
                }
            }
        }
        RationalInterval::new(lo, hi).expect("image stays in [0,1]")
    }

    /// Image of a finite union, merged.
    pub fn image_of_union(&self, parts: &[RationalInterval]) -> Vec<RationalInterval> {
        merge_intervals(parts.iter().map(|u| self.image_of_interval(u)).collect())
    }

    /// Exact `f^{-1}(V)` for a closed interval `V`, as a merged union of
    /// closed intervals (plateau pieces at the right height contribute their
    /// whole interval).
    pub fn preimage_of_interval(&self, v: &RationalInterval) -> Vec<RationalInterval> {
        let mut parts = Vec::new();
        for piece in self.pieces() {
            let slope = piece.slope();
            if slope.is_zero() {
                if v.contains(&piece.value_lo) {
                    parts.push(piece.interval());
                }
                continue;
            }
            // Solve value range intersect piece's value span, then pull back.
            let (vmin, vmax) = if slope > Rational::zero() {
                (piece.value_lo.clone(), piece.value_hi.clone())
            } else {
                (piece.value_hi.clone(), piece.value_lo.clone())
            };
            let lo = vmin.max(v.lo().clone());
            let hi = vmax.min(v.hi().clone());
            if lo > hi {
                continue;
            }
            let a = &piece.lo + (&lo - &piece.value_lo) / &slope;
            let b = &piece.lo + (&hi - &piece.value_lo) / &slope;
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            parts.push(RationalInterval::new(a, b).expect("pullback stays in piece"));
        }
        merge_intervals(parts)
    }

    /// Per-piece slopes with the piece intervals, plus the minimum absolute
    /// slope and whether |slope| is constant across pieces.
    pub fn slope_profile(&self) -> SlopeProfile {
        let entries: Vec<(RationalInterval, Rational)> =
            self.pieces().map(|p| (p.interval(), p.slope())).collect();
        let mut abs: Vec<Rational> = entries.iter().map(|(_, s)| s.abs()).collect();
        abs.sort();
        let min_abs_slope = abs.first().cloned().unwrap_or_else(Rational::zero);
        let constant_abs_slope = abs.windows(2).all(|w| w[0] == w[1]);
        SlopeProfile { entries, min_abs_slope, constant_abs_slope }
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLMap[")?;
        for i in 0..self.breakpoints.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", self.breakpoints[i], self.values[i])?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeProfile {
    pub entries: Vec<(RationalInterval, Rational)>,
    pub min_abs_slope: Rational,
    pub constant_abs_slope: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tent() -> PLMap {
        PLMap::tent()
    }

    /// Test-side oracle: evaluate by locating the piece with a linear scan
    /// and applying the slope formula directly.
    fn eval_oracle(f: &PLMap, x: &Rational) -> Rational {
        let bps = f.breakpoints();
        let vals = f.values();
        for i in 0..bps.len() - 1 {
            if x >= &bps[i] && x <= &bps[i + 1] {
                let slope = (&vals[i + 1] - &vals[i]) / (&bps[i + 1] - &bps[i]);
                return &vals[i] + (x - &bps[i]) * slope;
            }
        }
        unreachable!("x out of range")
    }

    #[test]
    fn construction_rejections() {
        assert!(PLMap::from_pairs(&[((0, 1), (0, 1))]).is_err());
        assert!(PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 2), (0, 1))]).is_err());
        assert!(PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 2), (2, 1)), ((1, 1), (0, 1))]).is_err());
        assert!(
            PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 2), (1, 1)), ((1, 2), (1, 1)), ((1, 1), (0, 1))])
                .is_err()
        );
    }

    #[test]
    fn tent_evaluation() {
        let t = tent();
        assert_eq!(t.evaluate(&rat(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(t.evaluate(&rat(1, 2)).unwrap(), rat(1, 1));
        assert_eq!(t.evaluate(&rat(3, 4)).unwrap(), rat(1, 2));
        // Dense-grid agreement with the piece-formula oracle.
        for i in 0..=64i64 {
            let x = rat(i, 64);
            assert_eq!(t.evaluate(&x).unwrap(), eval_oracle(&t, &x));
        }
    }

    #[test]
    fn compose_tent_twice() {
        let t = tent();
        let tt = t.compose_after(&t);
        let expected = PLMap::from_pairs(&[
            ((0, 1), (0, 1)),
            ((1, 4), (1, 1)),
            ((1, 2), (0, 1)),
            ((3, 4), (1, 1)),
            ((1, 1), (0, 1)),
        ])
        .unwrap();
        assert_eq!(tt, expected);
        // Dense-grid comparison against pointwise t(t(x)).
        for i in 0..=96i64 {
            let x = rat(i, 96);
            let direct = t.evaluate(&t.evaluate(&x).unwrap()).unwrap();
            assert_eq!(tt.evaluate(&x).unwrap(), direct);
        }
        // Slope product: all pieces of T∘T have |slope| 4.
        let profile = tt.slope_profile();
        assert!(profile.constant_abs_slope);
        assert_eq!(profile.min_abs_slope, rat(4, 1));
    }

    #[test]
    fn compose_identity_laws() {
        let t = tent();
        let id = PLMap::identity();
        assert_eq!(id.compose_after(&t), t);
        assert_eq!(t.compose_after(&id), t);
    }

    #[test]
    fn sup_distance_examples() {
        let t = tent();
        assert_eq!(t.sup_distance(&t), rat(0, 1));
        // |T - id| at union breakpoints {0, 1/2, 1} is {0, 1/2, 1}: sup 1 at x = 1.
        assert_eq!(t.sup_distance(&PLMap::identity()), rat(1, 1));
        assert_eq!(PLMap::identity().sup_distance(&t), rat(1, 1));
    }

    #[test]
    fn fixed_points_tent_and_identity() {
        let t = tent();
        let fix = t.fixed_points();
        assert_eq!(fix.points, vec![rat(0, 1), rat(2, 3)]);
        assert!(fix.intervals.is_empty());

        let id_fix = PLMap::identity().fixed_points();
        assert!(id_fix.points.is_empty());
        assert_eq!(id_fix.intervals, vec![RationalInterval::unit()]);
    }

    #[test]
    fn preimages_tent() {
        let t = tent();
        assert_eq!(t.preimage(&rat(1, 1)).unwrap().points, vec![rat(1, 2)]);
        assert_eq!(t.preimage(&rat(2, 3)).unwrap().points, vec![rat(1, 3), rat(2, 3)]);
        // Brute-force two-level solve: preimages of {1/3, 2/3}.
        let mut expected = Vec::new();
        for y in [rat(1, 3), rat(2, 3)] {
            expected.extend(t.preimage(&y).unwrap().points);
        }
        expected.sort();
        assert_eq!(
            t.preimage_tree(&rat(2, 3), 2).unwrap(),
            vec![rat(1, 6), rat(1, 3), rat(2, 3), rat(5, 6)]
        );
        assert_eq!(t.preimage_tree(&rat(2, 3), 2).unwrap(), expected);
    }

    #[test]
    fn plateau_reported_as_interval() {
        let f = PLMap::from_pairs(&[
            ((0, 1), (0, 1)),
            ((1, 4), (1, 2)),
            ((1, 2), (1, 2)),
            ((3, 4), (1, 1)),
            ((1, 1), (0, 1)),
        ])
        .unwrap();
        assert!(f.has_plateau());
        let pre = f.preimage(&rat(1, 2)).unwrap();
        assert_eq!(pre.plateaus, vec![RationalInterval::new(rat(1, 4), rat(1, 2)).unwrap()]);
        // The isolated solution on the last piece survives; the plateau
        // endpoints are not double-reported.
        assert_eq!(pre.points, vec![rat(7, 8)]);
    }

    #[test]
    fn image_of_interval_examples() {
        let t = tent();
        let whole = t.image_of_interval(&RationalInterval::new(rat(0, 1), rat(1, 2)).unwrap());
        assert_eq!(whole, RationalInterval::unit());
        let mid = t.image_of_interval(&RationalInterval::new(rat(1, 4), rat(3, 4)).unwrap());
        assert_eq!(mid, RationalInterval::new(rat(1, 2), rat(1, 1)).unwrap());
        let u = RationalInterval::new(rat(1, 8), rat(2, 7)).unwrap();
        assert_eq!(PLMap::identity().image_of_interval(&u), u);
    }

    #[test]
    fn preimage_of_interval_tent() {
        let t = tent();
        let v = RationalInterval::new(rat(1, 2), rat(1, 1)).unwrap();
        assert_eq!(
            t.preimage_of_interval(&v),
            vec![RationalInterval::new(rat(1, 4), rat(3, 4)).unwrap()]
        );
    }

    #[test]
    fn slope_profile_tent() {
        let t = tent();
        let profile = t.slope_profile();
        assert_eq!(profile.entries.len(), 2);
        assert_eq!(profile.entries[0].1, rat(2, 1));
        assert_eq!(profile.entries[1].1, rat(-2, 1));
        assert!(profile.constant_abs_slope);
        assert_eq!(profile.min_abs_slope, rat(2, 1));

        let id_profile = PLMap::identity().slope_profile();
        assert!(id_profile.constant_abs_slope);
        assert_eq!(id_profile.min_abs_slope, rat(1, 1));
    }

    #[test]
    fn simplify_drops_collinear_cuts() {
        let f = PLMap::from_pairs(&[
            ((0, 1), (0, 1)),
            ((1, 4), (1, 4)),
            ((1, 2), (1, 2)),
            ((1, 1), (1, 1)),
        ])
        .unwrap();
        assert_eq!(f.simplify(), PLMap::identity());
    }

    #[test]
    fn surjectivity_detection() {
        assert!(tent().is_surjective());
        assert!(PLMap::identity().is_surjective());
        let squashed =
            PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 2), (1, 2)), ((1, 1), (0, 1))]).unwrap();
        assert!(!squashed.is_surjective());
    }
}
