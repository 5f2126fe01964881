//! Checkers with certificates for the six convergence/density conditions
//! relating a nonautonomous system `{f_n}` to its uniform limit `f`:
//!
//! * **(CC)** — for every `eps > 0` some `n_0` has
//!   `d(f_n^k(x), f^k(x)) < eps` for all `n >= n_0`, all `k`, all `x`
//!   (window compositions stay uniformly close to the limit's iterates);
//! * **(CC\*)** — the same with fiber powers `(f_n)^k`;
//! * **(L)** — `D(f_n^n, f^n) -> 0` in the sup metric;
//! * **(L\*)** — `D((f_n)^n, f^n) -> 0`;
//! * **(DO)** — some `x_0` has `{f_n^n(x_0)}` dense;
//! * **(DO\*)** — some `x_0` has `{(f_n)^n(x_0)}` dense.
//!
//! The conditions quantify over all `n, k`; a finite computation cannot
//! decide them in general. Checkers therefore report verdicts relative to
//! an explicit truncation `(n_max, k_max, eps, grid)` and never claim an
//! unqualified "holds" unless a closed-form certificate applies to the
//! family (rotation schedules, odometer truncations, bump trains,
//! tail-constant families), in which case the report carries the formula.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::maps::{LazyPLMap, Map, PLMap};
use crate::nds::{PlTail, RotationSchedule, SequenceKind, System};
use crate::rational::Rational;
use crate::space::{epsilon_net, metric, Point, SpaceTag};
use crate::{Error, Result};

/// Condition identifiers as they appear in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum ConditionId {
    CC,
    #[serde(rename = "CCstar")]
    CCStar,
    L,
    #[serde(rename = "Lstar")]
    LStar,
    DO,
    #[serde(rename = "DOstar")]
    DOStar,
}

/// What a finite check can conclude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// No violation on the truncation; says nothing beyond it.
    HoldsOnTruncation,
    /// A concrete violation was found; it re-evaluates exactly.
    FailsWithWitness,
    /// A closed-form certificate covers all `n`, `k` (built-in families
    /// only); the truncation sweep corroborates it.
    ExactProof,
}

/// Whether reported suprema are exact or grid lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundQuality {
    Exact,
    GridLowerBound,
}

/// Truncation and sampling parameters for a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub n_max: usize,
    pub k_max: usize,
    /// Denominator of the dyadic probe grid used when exact suprema are
    /// unavailable.
    pub grid_denom: u32,
    /// Breakpoint budget for exact PL composition.
    pub budget: usize,
    /// Exact-composition ceiling on `k` (composition cost grows
    /// geometrically with `k` even under the budget).
    pub exact_k_cap: usize,
    /// Decay threshold for (L)/(L*) verdicts: the final trace value must be
    /// strictly below it.
    pub tail_threshold: Rational,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            n_max: 32,
            k_max: 4096,
            grid_denom: 64,
            budget: crate::nds::DEFAULT_COMPOSE_BUDGET,
            exact_k_cap: 12,
            tail_threshold: Rational::new(1, 128),
        }
    }
}

/// A concrete datum backing a verdict: a `(n, k, x)` supremum violation or
/// an uncovered net point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub point: Option<Point>,
    /// Achieved distance (violations) or best distance to the orbit
    /// (uncovered net points).
    pub value: Rational,
}

/// Result of one condition check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub verdict: Verdict,
    pub quality: BoundQuality,
    pub n_max: usize,
    pub k_max: usize,
    pub eps: Option<Rational>,
    /// Minimal index from which the condition holds on the truncation (or
    /// by certificate); absent when it fails outright.
    pub n0: Option<usize>,
    /// Primary witness for failing verdicts.
    pub witness: Option<Witness>,
    /// Per-`n` violation witnesses (kept in index order).
    pub witnesses: Vec<Witness>,
    /// `(n, value)` series: suprema for (CC)/(CC*), diagonal distances for
    /// (L)/(L*), cumulative coverage for (DO)/(DO*).
    pub trace: Vec<(usize, Rational)>,
    /// Closed-form certificate, when one applies.
    pub certificate: Option<String>,
    pub notes: Vec<String>,
}

/// Supremum of `d(f_n^k(x), f^k(x))` (window) or `d((f_n)^k(x), f^k(x))`
/// (fiber) over `x` and `1 <= k <= k_max`, per family route.
struct SupOverK {
    value: Rational,
    at_k: Option<usize>,
    at_point: Option<Point>,
    quality: BoundQuality,
}

pub(crate) fn circle_norm(t: &Rational) -> Rational {
    let t = t.mod_one();
    let wrap = Rational::one() - &t;
    t.min(wrap)
}

fn sup_over_k(sys: &System, n: usize, fiber: bool, params: &SweepParams) -> Result<SupOverK> {
    match sys {
        System::Circle(rs) => {
            // Rotations are isometries: the distance is the circle norm of
            // the fraction difference, independent of x. Exact.
            let alpha = rs.fraction_at(n);
            let beta = rs.limit.fraction();
            let mut acc = Rational::zero();
            let mut best = Rational::zero();
            let mut best_k = None;
            for k in 1..=params.k_max {
                let step = if fiber { alpha.clone() } else { rs.fraction_at(n + k - 1) };
                acc = (acc + step - beta).mod_one();
                let d = circle_norm(&acc);
                if d > best {
                    best = d;
                    best_k = Some(k);
                }
            }
            Ok(SupOverK { value: best, at_k: best_k, at_point: None, quality: BoundQuality::Exact })
        }
        System::Cantor(os) => {
            // The first n bits of f_n^k(x), (f_n)^k(x), and f^k(x) all
            // equal (x + k) mod 2^n, so the distance never exceeds
            // 1/(n+1); the bound is attained at k = 1 by a word with an
            // all-ones n-prefix. Exact for n < word length.
            if n >= os.word_length {
                return Ok(SupOverK {
                    value: Rational::zero(),
                    at_k: None,
                    at_point: None,
                    quality: BoundQuality::Exact,
                });
            }
            let mut bits = vec![0u8; os.word_length];
            for b in bits.iter_mut().take(n) {
                *b = 1;
            }
            let witness = Point::Cantor(crate::space::CantorWord::new(bits)?);
            Ok(SupOverK {
                value: Rational::new(1, n as i64 + 1),
                at_k: Some(1),
                at_point: Some(witness),
                quality: BoundQuality::Exact,
            })
        }
        System::IntervalLazy(_) if fiber => {
            // sup_k sup_x d((f_n)^k, f^k) = sup_x |f_n - f| = 1/2^(2n+1):
            // a flip is invisible after two steps, so no larger distance
            // ever accumulates. Attained at k = 1 at the bump midpoint.
            Ok(SupOverK {
                value: LazyPLMap::fiber_sup_distance(n),
                at_k: Some(1),
                at_point: Some(crate::nds::interval_point(LazyPLMap::left_bump_mid(n))?),
                quality: BoundQuality::Exact,
            })
        }
        System::IntervalPl(ps) => {
            // Tail-constant shortcut: fibers and windows past the prefix
            // coincide with the limit.
            if matches!(ps.tail, PlTail::ConstantLimit) && n > ps.prefix.len() {
                return Ok(SupOverK {
                    value: Rational::zero(),
                    at_k: None,
                    at_point: None,
                    quality: BoundQuality::Exact,
                });
            }
            sup_over_k_pl(sys, n, fiber, params)
        }
        _ => sup_grid_phase(sys, n, fiber, 1, params),
    }
}

/// Exact PL composition while affordable, then grid orbits for the rest.
fn sup_over_k_pl(sys: &System, n: usize, fiber: bool, params: &SweepParams) -> Result<SupOverK> {
    let System::IntervalPl(ps) = sys else { unreachable!() };
    let mut best = SupOverK {
        value: Rational::zero(),
        at_k: None,
        at_point: None,
        quality: BoundQuality::Exact,
    };
    let mut win = PLMap::identity();
    let mut lim = PLMap::identity();
    let mut exact_through = 0usize;
    for k in 1..=params.k_max.min(params.exact_k_cap) {
        let index = if fiber { n } else { n + k - 1 };
        let Map::Pl(next) = sys.map_at(index)? else { unreachable!() };
        win = next.compose_after(&win);
        lim = ps.limit.compose_after(&lim);
        if win.breakpoints().len() > params.budget || lim.breakpoints().len() > params.budget {
            break;
        }
        let d = win.sup_distance(&lim);
        if d > best.value {
            // The sup of a PL difference is attained at a breakpoint.
            let at = win
                .breakpoints()
                .iter()
                .chain(lim.breakpoints().iter())
                .find(|b| (win.evaluate(b).unwrap() - lim.evaluate(b).unwrap()).abs() == d)
                .cloned();
            best.value = d;
            best.at_k = Some(k);
            best.at_point = at.map(|x| crate::nds::interval_point(x).unwrap());
        }
        exact_through = k;
    }
    if exact_through >= params.k_max {
        return Ok(best);
    }
    // Grid phase for the remaining k.
    let grid = sup_grid_phase(sys, n, fiber, exact_through + 1, params)?;
    if grid.value > best.value {
        best.value = grid.value;
        best.at_k = grid.at_k;
        best.at_point = grid.at_point;
    }
    best.quality = BoundQuality::GridLowerBound;
    Ok(best)
}

/// Orbit-based grid maxima over `k_from..=k_max` (exact evaluations at
/// grid points; a lower bound on the true supremum).
fn sup_grid_phase(
    sys: &System,
    n: usize,
    fiber: bool,
    k_from: usize,
    params: &SweepParams,
) -> Result<SupOverK> {
    let probes = default_probes(sys, params.grid_denom)?;
    let mut best = SupOverK {
        value: Rational::zero(),
        at_k: None,
        at_point: None,
        quality: BoundQuality::GridLowerBound,
    };
    for probe in &probes {
        let mut y = probe.clone();
        let mut z = probe.clone();
        for k in 1..=params.k_max {
            let (ny, sat_y) = if fiber { sys.step(n, &y)? } else { sys.step(n + k - 1, &y)? };
            let (nz, sat_z) = sys.step_limit(&z)?;
            if sat_y || sat_z {
                break; // saturated Cantor orbits do not participate
            }
            y = ny;
            z = nz;
            if k < k_from {
                continue;
            }
            let d = metric(&y, &z)?;
            if d > best.value {
                best.value = d;
                best.at_k = Some(k);
                best.at_point = Some(probe.clone());
            }
        }
    }
    Ok(best)
}

/// Deterministic probe points for grid-quality sweeps.
pub fn default_probes(sys: &System, grid_denom: u32) -> Result<Vec<Point>> {
    let d = grid_denom.max(2) as i64;
    match sys.space() {
        SpaceTag::Interval => {
            (0..=d).map(|i| crate::nds::interval_point(Rational::new(i, d))).collect()
        }
        SpaceTag::Circle => {
            Ok((0..d).map(|i| crate::nds::circle_point(Rational::new(i, d))).collect())
        }
        SpaceTag::Cantor => {
            // Words with an all-ones prefix exercise the carry boundary.
            let len = sys.word_length();
            let mut words = Vec::new();
            for ones in 0..len.min(12) {
                let mut bits = vec![0u8; len];
                for b in bits.iter_mut().take(ones) {
                    *b = 1;
                }
                words.push(Point::Cantor(crate::space::CantorWord::new(bits)?));
            }
            Ok(words)
        }
    }
}

/// Closed-form certificate that (CC)/(CC*) holds for all `n >= n0`,
/// unbounded in `k`, when the family admits one.
fn closeness_certificate(sys: &System, eps: &Rational, fiber: bool) -> Option<(usize, String)> {
    match sys {
        System::Circle(rs) => match (&rs.schedule, fiber) {
            (RotationSchedule::HalvingAngles, false) => {
                // Window sums satisfy d(f_n^k, id) < 2^(1-n) for every k.
                let mut n = 1usize;
                while &Rational::inv_two_pow(n as u32 - 1) > eps {
                    n += 1;
                    if n > 4096 {
                        return None;
                    }
                }
                Some((n, format!("sup_k d(f_n^k, f^k) < 2^(1-n); n0 = {n} for eps = {eps}")))
            }
            _ => None,
        },
        System::Cantor(_) => {
            // Both windows and fibers agree with the limit on the first n
            // bits, so the supremum is exactly 1/(n+1).
            let mut n = 1usize;
            while &Rational::new(1, n as i64 + 1) >= eps {
                n += 1;
                if n > 1 << 24 {
                    return None;
                }
            }
            Some((n, format!("sup_k,x rho = 1/(n+1); n0 = {n} for eps = {eps}")))
        }
        System::IntervalLazy(_) if fiber => {
            let mut n = 1usize;
            while &LazyPLMap::fiber_sup_distance(n) >= eps {
                n += 1;
                if n > 4096 {
                    return None;
                }
            }
            Some((n, format!("sup_k,x d = 1/2^(2n+1); n0 = {n} for eps = {eps}")))
        }
        System::IntervalPl(ps) if matches!(ps.tail, PlTail::ConstantLimit) => {
            let n0 = ps.prefix.len() + 1;
            Some((n0, format!("tail-constant family: f_n = f for n >= {n0}")))
        }
        _ => None,
    }
}

fn check_closeness(
    sys: &System,
    eps: &Rational,
    params: &SweepParams,
    fiber: bool,
) -> Result<ConditionReport> {
    if eps <= &Rational::zero() {
        return Err(Error::Domain("eps must be positive".into()));
    }
    let sups: Vec<(usize, SupOverK)> = (1..=params.n_max)
        .into_par_iter()
        .map(|n| sup_over_k(sys, n, fiber, params).map(|s| (n, s)))
        .collect::<Result<_>>()?;

    let mut trace = Vec::with_capacity(sups.len());
    let mut witnesses = Vec::new();
    let mut quality = BoundQuality::Exact;
    for (n, sup) in &sups {
        trace.push((*n, sup.value.clone()));
        if sup.quality == BoundQuality::GridLowerBound {
            quality = BoundQuality::GridLowerBound;
        }
        if &sup.value >= eps {
            witnesses.push(Witness {
                n: Some(*n),
                k: sup.at_k,
                point: sup.at_point.clone(),
                value: sup.value.clone(),
            });
        }
    }

    let last_violation = witnesses.last().and_then(|w| w.n);
    let n0_trunc = last_violation.map_or(1, |n| n + 1);
    let certificate = closeness_certificate(sys, eps, fiber);
    let mut notes = Vec::new();

    let (verdict, n0) = match &certificate {
        Some((cert_n0, _)) => {
            // Violations strictly below the certified index are consistent
            // with the certificate; at or above it they falsify it.
            if last_violation.is_some_and(|n| n >= *cert_n0) {
                notes.push(
                    "sweep contradicts the certificate; reporting the witness and demoting the \
                     verdict"
                        .to_string(),
                );
                (Verdict::FailsWithWitness, None)
            } else {
                (Verdict::ExactProof, Some(*cert_n0))
            }
        }
        None if n0_trunc <= params.n_max => (Verdict::HoldsOnTruncation, Some(n0_trunc)),
        None => (Verdict::FailsWithWitness, None),
    };

    Ok(ConditionReport {
        condition: if fiber { ConditionId::CCStar } else { ConditionId::CC },
        verdict,
        quality,
        n_max: params.n_max,
        k_max: params.k_max,
        eps: Some(eps.clone()),
        n0,
        witness: witnesses.last().cloned(),
        witnesses,
        trace,
        certificate: certificate.map(|(_, s)| s),
        notes,
    })
}

/// (CC): window compositions vs limit iterates.
pub fn check_cc(sys: &System, eps: &Rational, params: &SweepParams) -> Result<ConditionReport> {
    check_closeness(sys, eps, params, false)
}

/// (CC*): fiber powers vs limit iterates.
pub fn check_ccstar(sys: &System, eps: &Rational, params: &SweepParams) -> Result<ConditionReport> {
    check_closeness(sys, eps, params, true)
}

/// `D(f_n^n, f^n)` (window) or `D((f_n)^n, f^n)` (fiber) for one `n`.
fn diagonal_distance(
    sys: &System,
    n: usize,
    fiber: bool,
    params: &SweepParams,
) -> Result<(Rational, BoundQuality)> {
    match sys {
        System::Circle(rs) => {
            let frac = if fiber { rs.fiber_fraction(n, n) } else { rs.window_fraction(n, n) };
            let limit_frac = (rs.limit.fraction() * Rational::from_int(n as i64)).mod_one();
            Ok((circle_norm(&(frac - limit_frac)), BoundQuality::Exact))
        }
        System::Cantor(os) => {
            // First n bits agree; the all-ones-prefix word realizes a
            // disagreement at bit n+1 (bounded by precision).
            if n >= os.word_length {
                return Ok((Rational::zero(), BoundQuality::Exact));
            }
            Ok((Rational::new(1, n as i64 + 1), BoundQuality::Exact))
        }
        System::IntervalPl(ps) => {
            if matches!(ps.tail, PlTail::ConstantLimit) && n > ps.prefix.len() {
                return Ok((Rational::zero(), BoundQuality::Exact));
            }
            if n <= params.exact_k_cap {
                let win = if fiber {
                    sys.fiber_power(n, n, params.budget)?
                } else {
                    sys.window_compose(n, n, params.budget)?
                };
                let lim = sys.limit_power(n, params.budget)?;
                if let (Some(w), Some(l)) = (win.as_pl(), lim.as_pl()) {
                    return Ok((w.sup_distance(l), BoundQuality::Exact));
                }
            }
            // Grid fallback.
            let mut best = Rational::zero();
            for probe in default_probes(sys, params.grid_denom)? {
                let (a, _) = if fiber {
                    sys.fiber_point(n, n, &probe)?
                } else {
                    sys.window_point(n, n, &probe)?
                };
                let (b, _) = sys.limit_iterate(&probe, n)?;
                let d = metric(&a, &b)?;
                if d > best {
                    best = d;
                }
            }
            Ok((best, BoundQuality::GridLowerBound))
        }
        System::IntervalLazy(_) => {
            if fiber {
                // Exact by the flip-resync structure; attained by a
                // preimage of the bump midpoint (the limit map is onto).
                return Ok((LazyPLMap::fiber_sup_distance(n), BoundQuality::Exact));
            }
            let mut best = Rational::zero();
            for probe in default_probes(sys, params.grid_denom)? {
                let (a, _) = sys.window_point(n, n, &probe)?;
                let (b, _) = sys.limit_iterate(&probe, n)?;
                let d = metric(&a, &b)?;
                if d > best {
                    best = d;
                }
            }
            Ok((best, BoundQuality::GridLowerBound))
        }
    }
}

/// A closed-form trace formula together with its rendered description.
type TraceFormula = (fn(usize) -> Rational, String);

/// Closed-form diagonal trace, when the family has one.
fn diagonal_formula(sys: &System, fiber: bool) -> Option<TraceFormula> {
    match sys {
        System::Circle(rs) => match (&rs.schedule, rs.limit.fraction().is_zero(), fiber) {
            (RotationSchedule::HalvingAngles, true, true) => Some((
                |n| circle_norm(&(Rational::from_int(n as i64) * Rational::inv_two_pow(n as u32))),
                "D((f_n)^n, id) = n/2^n".to_string(),
            )),
            (RotationSchedule::HalvingAngles, true, false) => Some((
                |n| {
                    circle_norm(
                        &(Rational::inv_two_pow(n as u32 - 1)
                            - Rational::inv_two_pow(2 * n as u32 - 1)),
                    )
                },
                "D(f_n^n, id) = sum_(j=n)^(2n-1) 2^-j".to_string(),
            )),
            _ => None,
        },
        _ => None,
    }
}

fn check_limit_distance(
    sys: &System,
    params: &SweepParams,
    fiber: bool,
) -> Result<ConditionReport> {
    if params.n_max == 0 {
        return Err(Error::Domain("n_max must be positive".into()));
    }
    let results: Vec<(usize, Rational, BoundQuality)> = (1..=params.n_max)
        .into_par_iter()
        .map(|n| diagonal_distance(sys, n, fiber, params).map(|(d, q)| (n, d, q)))
        .collect::<Result<_>>()?;

    let mut trace = Vec::with_capacity(results.len());
    let mut quality = BoundQuality::Exact;
    for (n, d, q) in &results {
        trace.push((*n, d.clone()));
        if *q == BoundQuality::GridLowerBound {
            quality = BoundQuality::GridLowerBound;
        }
    }

    let formula = diagonal_formula(sys, fiber);
    let mut notes = Vec::new();
    let mut formula_ok = true;
    if let Some((f, desc)) = &formula {
        for (n, d) in &trace {
            if &f(*n) != d {
                formula_ok = false;
                notes.push(format!("computed trace departs from {desc} at n = {n}"));
                break;
            }
        }
    }

    // Verdict: final value below the declared threshold and the tail
    // decaying at block level (nonincreasing quarter maxima). Convergent
    // schedules produce alternating error signs, so pointwise
    // monotonicity would be too brittle a criterion.
    let final_value = &trace[trace.len() - 1].1;
    let tail_monotone = if trace.len() < 8 {
        trace[trace.len() / 2..].windows(2).all(|w| w[0].1 >= w[1].1)
    } else {
        let q = trace.len() / 4;
        let max_of = |s: &[(usize, Rational)]| {
            s.iter().map(|(_, v)| v.clone()).max().expect("nonempty block")
        };
        let b2 = max_of(&trace[q..2 * q]);
        let b3 = max_of(&trace[2 * q..3 * q]);
        let b4 = max_of(&trace[3 * q..]);
        b2 >= b3 && b3 >= b4
    };
    let decays = final_value < &params.tail_threshold && tail_monotone;

    let verdict = match (&formula, formula_ok, decays) {
        (Some(_), true, true) => Verdict::ExactProof,
        (_, _, true) => Verdict::HoldsOnTruncation,
        _ => Verdict::FailsWithWitness,
    };
    let witness = if decays {
        None
    } else {
        let (n, v) = trace.iter().max_by(|a, b| a.1.cmp(&b.1)).cloned().expect("nonempty trace");
        Some(Witness { n: Some(n), k: None, point: None, value: v })
    };

    Ok(ConditionReport {
        condition: if fiber { ConditionId::LStar } else { ConditionId::L },
        verdict,
        quality,
        n_max: params.n_max,
        k_max: params.n_max,
        eps: Some(params.tail_threshold.clone()),
        n0: None,
        witness,
        witnesses: Vec::new(),
        trace,
        certificate: formula.map(|(_, s)| s),
        notes,
    })
}

/// (L): diagonal window distances `D(f_n^n, f^n)`.
pub fn check_l(sys: &System, params: &SweepParams) -> Result<ConditionReport> {
    check_limit_distance(sys, params, false)
}

/// (L*): diagonal fiber distances `D((f_n)^n, f^n)`.
pub fn check_lstar(sys: &System, params: &SweepParams) -> Result<ConditionReport> {
    check_limit_distance(sys, params, true)
}

fn check_density(
    sys: &System,
    x0: &Point,
    eps: &Rational,
    params: &SweepParams,
    fiber: bool,
) -> Result<ConditionReport> {
    if eps <= &Rational::zero() {
        return Err(Error::Domain("eps must be positive".into()));
    }
    let kind = if fiber { SequenceKind::DiagonalFiber } else { SequenceKind::DiagonalWindow };
    let record = sys.orbit(x0, params.n_max, kind)?;
    let net = epsilon_net(sys.space(), eps, sys.word_length())?;

    // For each net point, the first entry index that comes strictly within
    // eps, plus its best distance overall.
    let mut first_cover: Vec<Option<usize>> = vec![None; net.len()];
    let mut best_dist: Vec<Option<Rational>> = vec![None; net.len()];
    for (i, p) in net.iter().enumerate() {
        for (n, q) in &record.entries {
            let d = metric(p, q)?;
            if best_dist[i].as_ref().is_none_or(|b| &d < b) {
                best_dist[i] = Some(d.clone());
            }
            if &d < eps {
                first_cover[i] = Some(*n);
                break;
            }
        }
    }

    // Cumulative coverage trace.
    let total = Rational::from_int(net.len() as i64);
    let trace: Vec<(usize, Rational)> = (1..=params.n_max)
        .map(|n| {
            let covered = first_cover.iter().filter(|c| c.is_some_and(|m| m <= n)).count();
            (n, Rational::from_int(covered as i64) / total.clone())
        })
        .collect();
    let coverage = trace.last().expect("n_max >= 1").1.clone();

    let uncovered = first_cover.iter().position(|c| c.is_none());
    let mut notes = Vec::new();
    if !record.saturated.is_empty() {
        notes.push(format!("{} entries saturated word precision", record.saturated.len()));
    }
    let (verdict, witness) = match uncovered {
        None => (Verdict::HoldsOnTruncation, None),
        Some(i) => (
            Verdict::FailsWithWitness,
            Some(Witness {
                n: None,
                k: None,
                point: Some(net[i].clone()),
                value: best_dist[i].clone().unwrap_or_else(Rational::one),
            }),
        ),
    };

    notes.push(format!("coverage {coverage} of the {}-point eps-net", net.len()));
    Ok(ConditionReport {
        condition: if fiber { ConditionId::DOStar } else { ConditionId::DO },
        verdict,
        quality: BoundQuality::Exact,
        n_max: params.n_max,
        k_max: params.n_max,
        eps: Some(eps.clone()),
        n0: None,
        witness,
        witnesses: Vec::new(),
        trace,
        certificate: None,
        notes,
    })
}

/// (DO): density of the window diagonal `{f_n^n(x_0)}`, operationalized as
/// full coverage of the eps-net by strict eps-balls around orbit entries.
pub fn check_do(
    sys: &System,
    x0: &Point,
    eps: &Rational,
    params: &SweepParams,
) -> Result<ConditionReport> {
    check_density(sys, x0, eps, params, false)
}

/// (DO*): density of the fiber diagonal `{(f_n)^n(x_0)}`.
pub fn check_dostar(
    sys: &System,
    x0: &Point,
    eps: &Rational,
    params: &SweepParams,
) -> Result<ConditionReport> {
    check_density(sys, x0, eps, params, true)
}

/// Early-exit search for a (CC*) violation at fiber index `n`: walks the
/// fiber orbit against the limit orbit from each probe and returns the
/// first exact exceedance `d((f_n)^k(x), f^k(x)) >= eps`.
pub fn find_ccstar_violation(
    sys: &System,
    eps: &Rational,
    n: usize,
    k_max: usize,
    probes: &[Point],
) -> Result<Option<Witness>> {
    for probe in probes {
        let mut y = probe.clone();
        let mut z = probe.clone();
        for k in 1..=k_max {
            let (ny, sat_y) = sys.step(n, &y)?;
            let (nz, sat_z) = sys.step_limit(&z)?;
            if sat_y || sat_z {
                break;
            }
            y = ny;
            z = nz;
            let d = metric(&y, &z)?;
            if &d >= eps {
                return Ok(Some(Witness {
                    n: Some(n),
                    k: Some(k),
                    point: Some(probe.clone()),
                    value: d,
                }));
            }
        }
    }
    Ok(None)
}

/// Re-evaluate a (CC*) violation witness from scratch, exactly.
pub fn verify_ccstar_witness(sys: &System, witness: &Witness, eps: &Rational) -> Result<bool> {
    let (Some(n), Some(k), Some(point)) = (witness.n, witness.k, &witness.point) else {
        return Ok(false);
    };
    let (a, sat_a) = sys.fiber_point(n, k, point)?;
    let (b, sat_b) = sys.limit_iterate(point, k)?;
    if sat_a || sat_b {
        return Ok(false);
    }
    let d = metric(&a, &b)?;
    Ok(d == witness.value && &d >= eps)
}
