//! A piecewise-linear interval map with infinitely many pieces, addressed
//! by an exact locator instead of a finite breakpoint table.
//!
//! The one built-in family is the *bump-train* map `f`: a tent-like
//! surjection with anchors `f(0) = 0`, `f(1/2) = 1`, `f(1) = 0` whose graph
//! carries two infinite trains of small tent bumps, one accumulating at
//! `x = 1/2` from the left and one at `x = 1` from the left. Every piece
//! has |slope| >= 2, which forces topological transitivity.
//!
//! For each `m >= 1` the modified variant `f_m` flips the left-train bumps
//! with index `n >= m` upside down (an up-bump becomes a down-bump with the
//! same endpoint values). Left bump `n` occupies
//! `[1/2 - 1/2^(2n+1), 1/2 - 1/2^(2n+2)]`; both `f` and `f_m` send it into
//! the span of right bump `n`, `[1 - 5/2^(2n+2), 1 - 3/2^(2n+2)]`, whose
//! peak `1 - 1/2^(2n)` is the midpoint of that span and whose halves have
//! slopes ±2. The flip is therefore invisible after one more step:
//! `f^2 = (f_m)^2` on every flipped bump, and
//!
//! * `sup |f - f_m|` over left bump `n` is exactly `1/2^(2n+1)`;
//! * `sup_k sup_x d((f_m)^k(x), f^k(x)) = 1/2^(2m+1)`;
//! * `f` and `f_m` agree off the flipped bumps, a set of total length
//!   `sum_(n>=m) 1/2^(2n+2) = 1/(3*4^m)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::maps::pl::Piece;
use crate::rational::Rational;
use crate::space::RationalInterval;
use crate::{Error, Result};

/// How far the structural consistency check walks the two bump trains at
/// construction time.
const VERIFY_DEPTH: usize = 24;

/// A lazily-indexed piecewise-linear map. `flip_from: None` is the limit
/// map `f`; `Some(m)` is the modified map `f_m` (left bumps `n >= m`
/// flipped).
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazyPLMap {
    flip_from: Option<usize>,
}

/// Identifies the segment of the bump-train map containing a point.
/// Junction points belong to both adjacent segments; the locator may return
/// either, and the values agree by continuity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `[0, 3/8]`, the line `2x` up to the first left bump.
    InitialRamp,
    /// Ascending half of left bump `n`.
    LeftAsc(usize),
    /// Descending half of left bump `n`.
    LeftDesc(usize),
    /// Connector between left bumps `n` and `n+1` (slope 6).
    LeftConn(usize),
    /// `[1/2, 11/16]`, the descent from the peak to the first right bump.
    DescentRamp,
    /// Ascending half of right bump `n`.
    RightAsc(usize),
    /// Descending half of right bump `n`.
    RightDesc(usize),
    /// Connector between right bumps `n` and `n+1` (slope -18/7).
    RightConn(usize),
    /// The single point `x = 1` (value 0), limit of the right train.
    EndAnchor,
}

impl Region {
    /// Bump index for train regions, 0 for the ramps and the end anchor.
    fn index(&self) -> usize {
        match self {
            Region::InitialRamp | Region::DescentRamp | Region::EndAnchor => 0,
            Region::LeftAsc(n)
            | Region::LeftDesc(n)
            | Region::LeftConn(n)
            | Region::RightAsc(n)
            | Region::RightDesc(n)
            | Region::RightConn(n) => *n,
        }
    }
}

fn inv2(k: usize) -> Rational {
    Rational::inv_two_pow(k as u32)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

// Left train geometry: bump n covers [left_lo(n), left_hi(n)], midpoint
// left_mid(n).
fn left_lo(n: usize) -> Rational {
    half() - inv2(2 * n + 1)
}
fn left_mid(n: usize) -> Rational {
    half() - Rational::from_int(3) * inv2(2 * n + 3)
}
fn left_hi(n: usize) -> Rational {
    half() - inv2(2 * n + 2)
}
/// Value at both endpoints of left bump `n` (also the peak of right bump `n`).
fn trough(n: usize) -> Rational {
    Rational::one() - inv2(2 * n)
}
/// Peak value of the unflipped left bump `n`.
fn peak(n: usize) -> Rational {
    Rational::one() - Rational::from_int(3) * inv2(2 * n + 2)
}
/// Valley value of the flipped left bump `n`.
fn valley(n: usize) -> Rational {
    Rational::one() - Rational::from_int(5) * inv2(2 * n + 2)
}

// Right train geometry: bump n covers [right_lo(n), right_hi(n)], peak at
// right_mid(n).
fn right_lo(n: usize) -> Rational {
    Rational::one() - Rational::from_int(5) * inv2(2 * n + 2)
}
fn right_mid(n: usize) -> Rational {
    Rational::one() - inv2(2 * n)
}
fn right_hi(n: usize) -> Rational {
    Rational::one() - Rational::from_int(3) * inv2(2 * n + 2)
}
/// Value at both endpoints of right bump `n`.
fn base(n: usize) -> Rational {
    Rational::from_int(3) * inv2(2 * n + 1)
}
/// Peak value of right bump `n`.
fn crest(n: usize) -> Rational {
    inv2(2 * n - 1)
}

impl LazyPLMap {
    /// The limit map `f` of the bump-train family (structure-checked).
    pub fn bump_train() -> LazyPLMap {
        let map = LazyPLMap { flip_from: None };
        map.verify_structure(VERIFY_DEPTH).expect("built-in family is consistent");
        map
    }

    /// The modified map `f_m`: left bumps with index `n >= m` are flipped.
    pub fn bump_train_modified(m: usize) -> Result<LazyPLMap> {
        if m == 0 {
            return Err(Error::Domain("modification index must be >= 1".into()));
        }
        let map = LazyPLMap { flip_from: Some(m) };
        map.verify_structure(VERIFY_DEPTH)?;
        Ok(map)
    }

    pub fn flip_from(&self) -> Option<usize> {
        self.flip_from
    }

    /// Pinned anchor values `(x, f(x))`.
    pub fn anchors(&self) -> [(Rational, Rational); 3] {
        [
            (Rational::zero(), Rational::zero()),
            (half(), Rational::one()),
            (Rational::one(), Rational::zero()),
        ]
    }

    fn flipped(&self, n: usize) -> bool {
        matches!(self.flip_from, Some(m) if n >= m)
    }

    /// The exact linear segment for a region.
    pub fn piece(&self, region: Region) -> Piece {
        match region {
            Region::InitialRamp => Piece {
                lo: Rational::zero(),
                hi: left_lo(1),
                value_lo: Rational::zero(),
                value_hi: trough(1),
            },
            Region::LeftAsc(n) => Piece {
                lo: left_lo(n),
                hi: left_mid(n),
                value_lo: trough(n),
                value_hi: if self.flipped(n) { valley(n) } else { peak(n) },
            },
            Region::LeftDesc(n) => Piece {
                lo: left_mid(n),
                hi: left_hi(n),
                value_lo: if self.flipped(n) { valley(n) } else { peak(n) },
                value_hi: trough(n),
            },
            Region::LeftConn(n) => Piece {
                lo: left_hi(n),
                hi: left_lo(n + 1),
                value_lo: trough(n),
                value_hi: trough(n + 1),
            },
            Region::DescentRamp => Piece {
                lo: half(),
                hi: right_lo(1),
                value_lo: Rational::one(),
                value_hi: base(1),
            },
            Region::RightAsc(n) => Piece {
                lo: right_lo(n),
                hi: right_mid(n),
                value_lo: base(n),
                value_hi: crest(n),
            },
            Region::RightDesc(n) => Piece {
                lo: right_mid(n),
                hi: right_hi(n),
                value_lo: crest(n),
                value_hi: base(n),
            },
            Region::RightConn(n) => Piece {
                lo: right_hi(n),
                hi: right_lo(n + 1),
                value_lo: base(n),
                value_hi: base(n + 1),
            },
            Region::EndAnchor => Piece {
                lo: Rational::one(),
                hi: Rational::one(),
                value_lo: Rational::zero(),
                value_hi: Rational::zero(),
            },
        }
    }

    /// Successor segment left to right.
    pub fn next_region(region: Region) -> Region {
        match region {
            Region::InitialRamp => Region::LeftAsc(1),
            Region::LeftAsc(n) => Region::LeftDesc(n),
            Region::LeftDesc(n) => Region::LeftConn(n),
            Region::LeftConn(n) => Region::LeftAsc(n + 1),
            Region::DescentRamp => Region::RightAsc(1),
            Region::RightAsc(n) => Region::RightDesc(n),
            Region::RightDesc(n) => Region::RightConn(n),
            Region::RightConn(n) => Region::RightAsc(n + 1),
            Region::EndAnchor => Region::EndAnchor,
        }
    }

    /// Locate a segment containing `x`, in `O(log 1/d(x, anchor))` index
    /// probes.
    pub fn locate(&self, x: &Rational) -> Result<Region> {
        if x < &Rational::zero() || x > &Rational::one() {
            return Err(Error::Domain(format!("{x} is outside [0, 1]")));
        }
        if x == &Rational::one() {
            return Ok(Region::EndAnchor);
        }
        if x < &half() {
            if x <= &left_lo(1) {
                return Ok(Region::InitialRamp);
            }
            // First n with x <= left_hi(n); left_hi increases to 1/2.
            let mut n = 1;
            while &left_hi(n) < x {
                n += 1;
            }
            if x >= &left_lo(n) {
                if x <= &left_mid(n) {
                    Ok(Region::LeftAsc(n))
                } else {
                    Ok(Region::LeftDesc(n))
                }
            } else {
                Ok(Region::LeftConn(n - 1))
            }
        } else {
            if x <= &right_lo(1) {
                return Ok(Region::DescentRamp);
            }
            // First n with x <= right_hi(n); right_hi increases to 1.
            let mut n = 1;
            while &right_hi(n) < x {
                n += 1;
            }
            if x >= &right_lo(n) {
                if x <= &right_mid(n) {
                    Ok(Region::RightAsc(n))
                } else {
                    Ok(Region::RightDesc(n))
                }
            } else {
                Ok(Region::RightConn(n - 1))
            }
        }
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let region = self.locate(x)?;
        if region == Region::EndAnchor {
            return Ok(Rational::zero());
        }
        Ok(self.piece(region).eval(x))
    }

    pub fn iterate(&self, x: &Rational, k: usize) -> Result<Rational> {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.evaluate(&y)?;
        }
        Ok(y)
    }

    /// Left bump `n` as a closed interval.
    pub fn left_bump_interval(n: usize) -> RationalInterval {
        RationalInterval::new(left_lo(n), left_hi(n)).expect("bump inside [0,1]")
    }

    /// Midpoint of left bump `n` (where `|f - f_m|` is largest).
    pub fn left_bump_mid(n: usize) -> Rational {
        left_mid(n)
    }

    /// `sup |f - f_m|` over left bump `n`, exact: the PL difference peaks at
    /// the bump midpoint with value `peak(n) - valley(n) = 1/2^(2n+1)`.
    pub fn bump_sup_distance(n: usize) -> Rational {
        peak(n) - valley(n)
    }

    /// `sup_x |f_m(x) - f(x)| = 1/2^(2m+1)`, attained on bump `m`; because
    /// `f^2 = (f_m)^2` on every flipped bump, this single-step bound equals
    /// `sup_k sup_x d((f_m)^k(x), f^k(x))`.
    pub fn fiber_sup_distance(m: usize) -> Rational {
        Self::bump_sup_distance(m)
    }

    /// Exact total length of `{x : f(x) != f_m(x)}`: the open flipped
    /// bumps, `sum_(n>=m) 1/2^(2n+2) = 1/(3 * 4^m)`.
    pub fn disagreement_measure(m: usize) -> Rational {
        assert!(m >= 1);
        Rational::one() / Rational::from_bigint(num_bigint::BigInt::from(3) << (2 * m))
    }

    /// Walk the segments from the one containing `a` to the one containing
    /// `b`, inclusive. `b` must not sit past an accumulation anchor of the
    /// walk: callers split spans at `1/2` and `1` first.
    fn walk_segments(&self, a: &Rational, b: &Rational) -> Result<Vec<Piece>> {
        debug_assert!(a <= b);
        debug_assert!(!(a < &half() && b >= &half()), "span must be split at 1/2");
        debug_assert!(b < &Rational::one(), "span must be split at 1");
        let mut region = self.locate(a)?;
        let mut out = Vec::new();
        loop {
            let piece = self.piece(region);
            let done = &piece.hi >= b;
            out.push(piece);
            if done {
                return Ok(out);
            }
            region = Self::next_region(region);
        }
    }

    /// Push the attained values of `f` over `[lo, hi]`, where the whole
    /// span lies on one side of the peak (`hi <= 1/2` or `lo >= 1/2`).
    /// Spans ending exactly at an accumulation anchor are closed off with
    /// the exact monotone tail envelopes instead of an infinite walk:
    /// left-train minima (troughs/valleys) increase strictly toward the
    /// anchor value 1, right-train maxima (crests) decrease strictly toward
    /// the anchor value 0, so the first extremum of the unwalked tail and
    /// the anchor value bound everything that follows, and both are
    /// attained.
    fn side_value_candidates(&self, lo: &Rational, hi: &Rational, out: &mut Vec<Rational>) {
        if lo == hi {
            out.push(self.evaluate(lo).expect("inside domain"));
            return;
        }
        let left_side = hi <= &half();
        let anchored = if left_side { hi == &half() } else { hi == &Rational::one() };
        if !anchored {
            for piece in self.walk_segments(lo, hi).expect("finite walk") {
                let a = if &piece.lo > lo { &piece.lo } else { lo };
                let b = if &piece.hi < hi { &piece.hi } else { hi };
                out.push(piece.eval(a));
                out.push(piece.eval(b));
            }
            return;
        }
        let start = self.locate(lo).expect("inside domain");
        if start == Region::EndAnchor {
            out.push(Rational::zero());
            return;
        }
        // Walk through two whole bumps past the start, then use the tail
        // envelopes.
        let cut = start.index() + 2;
        let walk_hi = if left_side { left_lo(cut + 1) } else { right_lo(cut + 1) };
        for piece in self.walk_segments(lo, &walk_hi).expect("finite walk") {
            let a = if &piece.lo > lo { &piece.lo } else { lo };
            out.push(piece.eval(a));
            out.push(piece.value_hi.clone());
        }
        let tail = cut + 1;
        if left_side {
            out.push(if self.flipped(tail) { valley(tail) } else { trough(tail) });
            out.push(Rational::one());
        } else {
            out.push(crest(tail));
            out.push(Rational::zero());
        }
    }

    /// Exact image of a closed interval — a single closed interval by
    /// continuity.
    pub fn image_of_interval(&self, span: &RationalInterval) -> RationalInterval {
        let mut candidates: Vec<Rational> = Vec::new();
        let (a, b) = (span.lo(), span.hi());
        if b <= &half() || a >= &half() {
            self.side_value_candidates(a, b, &mut candidates);
        } else {
            self.side_value_candidates(a, &half(), &mut candidates);
            self.side_value_candidates(&half(), b, &mut candidates);
        }
        let lo = candidates.iter().min().expect("nonempty").clone();
        let hi = candidates.iter().max().expect("nonempty").clone();
        RationalInterval::new(lo, hi).expect("image inside [0,1]")
    }

    /// Exact, finite preimage `{x : f(x) = y}`. Finite for every `y`: the
    /// left-train value envelope rises strictly to 1 and the right-train
    /// envelope falls strictly to 0, so only finitely many segments cross
    /// any level.
    pub fn preimage(&self, y: &Rational) -> Result<Vec<Rational>> {
        if y < &Rational::zero() || y > &Rational::one() {
            return Err(Error::Domain(format!("{y} is outside [0, 1]")));
        }
        let mut solutions: Vec<Rational> = Vec::new();
        {
            let mut solve = |piece: &Piece| {
                let slope = piece.slope();
                let x = &piece.lo + (y - &piece.value_lo) / slope;
                if x >= piece.lo && x <= piece.hi {
                    solutions.push(x);
                }
            };

            solve(&self.piece(Region::InitialRamp));
            solve(&self.piece(Region::DescentRamp));

            if y < &Rational::one() {
                // Left train: bump n spans values [trough(n), peak(n)]
                // (flipped: [valley(n), trough(n)]); both floors rise to 1.
                let mut n = 1;
                loop {
                    let floor = if self.flipped(n) { valley(n) } else { trough(n) };
                    if &floor > y {
                        break;
                    }
                    solve(&self.piece(Region::LeftAsc(n)));
                    solve(&self.piece(Region::LeftDesc(n)));
                    solve(&self.piece(Region::LeftConn(n)));
                    n += 1;
                }
            }

            if !y.is_zero() {
                // Right train: bump n spans values [base(n), crest(n)],
                // falling to 0.
                let mut n = 1;
                while &crest(n) >= y {
                    solve(&self.piece(Region::RightAsc(n)));
                    solve(&self.piece(Region::RightDesc(n)));
                    solve(&self.piece(Region::RightConn(n)));
                    n += 1;
                }
            }
        }

        if y == &Rational::one() {
            solutions.push(half());
        }
        if y.is_zero() {
            solutions.push(Rational::one());
        }
        solutions.sort();
        solutions.dedup();
        Ok(solutions)
    }

    /// Exact `f^{-j}({y})` by per-level solving.
    pub fn preimage_tree(&self, y: &Rational, depth: usize) -> Result<Vec<Rational>> {
        let mut level = vec![y.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for target in &level {
                next.extend(self.preimage(target)?);
            }
            next.sort();
            next.dedup();
            level = next;
        }
        Ok(level)
    }

    /// Structural consistency check over the first `depth` bumps of each
    /// train: segments tile their side in order without overlap or gap,
    /// junction values agree from both sides, every |slope| >= 2, all
    /// values stay in [0, 1], and the tail envelopes head toward the
    /// pinned anchor values. Inconsistent indexed pieces are rejected here
    /// rather than silently patched.
    pub fn verify_structure(&self, depth: usize) -> Result<()> {
        self.verify_train(Region::InitialRamp, depth)?;
        self.verify_train(Region::DescentRamp, depth)?;
        if trough(depth) >= Rational::one()
            || valley(depth) >= trough(depth)
            || crest(depth) <= Rational::zero()
            || base(depth) >= crest(depth)
        {
            return Err(Error::Construction("bump-train envelopes are inconsistent".into()));
        }
        Ok(())
    }

    fn verify_train(&self, start: Region, depth: usize) -> Result<()> {
        let two = Rational::from_int(2);
        let mut region = start;
        let mut prev: Option<Piece> = None;
        loop {
            let piece = self.piece(region);
            if piece.lo >= piece.hi {
                return Err(Error::Construction(format!("empty or reversed segment {region:?}")));
            }
            if piece.slope().abs() < two {
                return Err(Error::Construction(format!("|slope| < 2 on {region:?}")));
            }
            for v in [&piece.value_lo, &piece.value_hi] {
                if v < &Rational::zero() || v > &Rational::one() {
                    return Err(Error::Construction(format!("value out of range on {region:?}")));
                }
            }
            if let Some(prev) = &prev {
                if prev.hi != piece.lo {
                    return Err(Error::Construction(format!(
                        "segments overlap or leave a gap before {region:?}"
                    )));
                }
                if prev.value_hi != piece.value_lo {
                    return Err(Error::Construction(format!(
                        "segment values disagree at the junction before {region:?}"
                    )));
                }
            }
            if region.index() >= depth && matches!(region, Region::LeftConn(_) | Region::RightConn(_))
            {
                return Ok(());
            }
            prev = Some(piece);
            region = Self::next_region(region);
        }
    }
}

impl Default for LazyPLMap {
    fn default() -> Self {
        LazyPLMap::bump_train()
    }
}

impl fmt::Debug for LazyPLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flip_from {
            None => write!(f, "BumpTrain"),
            Some(m) => write!(f, "BumpTrain[flip >= {m}]"),
        }
    }
}
