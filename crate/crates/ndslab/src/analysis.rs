//! Dynamic analyses on maps and systems: transitivity and sensitivity
//! testing, invariant intervals and interval cycles, fixed-point and
//! preimage-tree agreement between a system and its limit, exact agreement
//! measure, eventual-equality checking with its structural-law self-check,
//! and conjugation.
//!
//! Verdicts produced here are truncation-qualified: "transitive-on-grid"
//! quantifies over the finite grid of basic eps-intervals and a finite
//! horizon, with every recorded hit re-verifiable by exact arithmetic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conditions::{self, check_do, check_l, SweepParams, Verdict, Witness};
use crate::maps::{LazyPLMap, Map, PLMap};
use crate::nds::{PlTail, System};
use crate::rational::Rational;
use crate::space::{epsilon_net, Point, RationalInterval};
use crate::{Error, Result};

/// One ordered grid pair with the minimal hitting time, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry {
    pub u: usize,
    pub v: usize,
    pub hit_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitivityVerdict {
    TransitiveOnGrid,
    FailsWithPair { u: usize, v: usize },
}

/// Result of a grid transitivity test. `cells` are the basic intervals the
/// indices refer to.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub mode: String,
    pub eps: Rational,
    pub horizon: usize,
    pub verdict: TransitivityVerdict,
    pub cells: Vec<RationalInterval>,
    pub pair_table: Vec<PairEntry>,
    pub notes: Vec<String>,
}

impl TransitivityReport {
    pub fn is_transitive(&self) -> bool {
        matches!(self.verdict, TransitivityVerdict::TransitiveOnGrid)
    }

    pub fn max_hit_time(&self) -> Option<usize> {
        self.pair_table.iter().filter_map(|e| e.hit_at).max()
    }
}

/// The eps-grid of basic closed intervals covering `[0, 1]`.
pub fn grid_cells(eps: &Rational) -> Result<Vec<RationalInterval>> {
    if eps <= &Rational::zero() || eps > &Rational::one() {
        return Err(Error::Domain(format!("grid eps {eps} outside (0, 1]")));
    }
    let mut cells = Vec::new();
    let mut lo = Rational::zero();
    while lo < Rational::one() {
        let hi = (&lo + eps).min(Rational::one());
        cells.push(RationalInterval::new(lo.clone(), hi.clone())?);
        lo = hi;
    }
    Ok(cells)
}

fn transitivity_on_grid<F>(
    image: F,
    mode: &str,
    eps: &Rational,
    horizon: usize,
) -> Result<TransitivityReport>
where
    F: Fn(&RationalInterval) -> RationalInterval + Sync,
{
    let cells = grid_cells(eps)?;
    let count = cells.len();

    // One forward image sequence per source cell, shared by all targets.
    // The sequence stops early once it stabilizes (no further hits can
    // appear) or covers [0, 1] (every target is hit).
    let sequences: Vec<Vec<RationalInterval>> = cells
        .par_iter()
        .map(|u| {
            let mut seq = Vec::new();
            let mut w = u.clone();
            for _ in 0..horizon {
                let next = image(&w);
                let stabilized = next == w;
                w = next;
                seq.push(w.clone());
                if stabilized || w == RationalInterval::unit() {
                    break;
                }
            }
            seq
        })
        .collect();

    let mut pair_table = Vec::with_capacity(count * count);
    let mut failure = None;
    for (ui, seq) in sequences.iter().enumerate() {
        for (vi, v) in cells.iter().enumerate() {
            let mut hit_at = None;
            for (idx, w) in seq.iter().enumerate() {
                if w.interiors_overlap(v) {
                    hit_at = Some(idx + 1);
                    break;
                }
            }
            if hit_at.is_none() && failure.is_none() {
                failure = Some((ui, vi));
            }
            pair_table.push(PairEntry { u: ui, v: vi, hit_at });
        }
    }

    Ok(TransitivityReport {
        mode: mode.to_string(),
        eps: eps.clone(),
        horizon,
        verdict: match failure {
            None => TransitivityVerdict::TransitiveOnGrid,
            Some((u, v)) => TransitivityVerdict::FailsWithPair { u, v },
        },
        cells,
        pair_table,
        notes: Vec::new(),
    })
}

/// Grid transitivity test. Interval maps (PL and lazy) use exact interval
/// images; rotations are decided in closed form by the rotation number.
pub fn test_transitivity(map: &Map, eps: &Rational, horizon: usize) -> Result<TransitivityReport> {
    if horizon == 0 {
        return Err(Error::Domain("horizon must be positive".into()));
    }
    match map {
        Map::Pl(f) => transitivity_on_grid(|u| f.image_of_interval(u), "exact-pl", eps, horizon),
        Map::LazyPl(f) => {
            transitivity_on_grid(|u| f.image_of_interval(u), "exact-lazy-pl", eps, horizon)
        }
        Map::Rotation(r) => {
            let transitive = r.is_transitive();
            Ok(TransitivityReport {
                mode: "rotation-closed-form".to_string(),
                eps: eps.clone(),
                horizon,
                verdict: if transitive {
                    TransitivityVerdict::TransitiveOnGrid
                } else {
                    TransitivityVerdict::FailsWithPair { u: 0, v: 1 }
                },
                cells: Vec::new(),
                pair_table: Vec::new(),
                notes: vec![if transitive {
                    "irrational rotation number (tagged): orbits are dense".to_string()
                } else {
                    format!(
                        "rational rotation number with period {}: orbits are finite",
                        r.period().map(|p| p.to_string()).unwrap_or_default()
                    )
                }],
            })
        }
        Map::AddingMachine(_) => Err(Error::Unsupported(
            "grid transitivity is defined for interval and circle maps".into(),
        )),
    }
}

/// One sensitivity witness: `|f^n(x) - f^n(y)| > delta` with `y` within
/// `probe_eps` of `x`. Exact, re-verifiable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SensitivityWitness {
    pub x: Rational,
    pub y: Rational,
    pub iterations: usize,
    pub separation: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub delta: Rational,
    pub probe_eps: Rational,
    pub horizon: usize,
    pub witnesses: Vec<SensitivityWitness>,
    /// Probes for which no witness was found within the horizon.
    pub failures: Vec<Rational>,
    pub notes: Vec<String>,
}

impl SensitivityReport {
    pub fn all_probes_witnessed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Search for sensitivity witnesses at each probe point.
///
/// For PL maps the iterates are composed exactly (shared across probes,
/// within the breakpoint budget) and the candidate `y` maximizing the
/// separation is read off the composite's breakpoints, so witnesses carry
/// exact separations. Rotations are isometries and never produce
/// witnesses.
pub fn test_sensitivity(
    map: &Map,
    delta: &Rational,
    probe_eps: &Rational,
    horizon: usize,
    probes: &[Rational],
) -> Result<SensitivityReport> {
    if delta <= &Rational::zero() || probe_eps <= &Rational::zero() {
        return Err(Error::Domain("delta and probe_eps must be positive".into()));
    }
    let mut report = SensitivityReport {
        delta: delta.clone(),
        probe_eps: probe_eps.clone(),
        horizon,
        witnesses: Vec::new(),
        failures: Vec::new(),
        notes: Vec::new(),
    };
    match map {
        Map::Rotation(_) => {
            report.notes.push("rotations are isometries: no sensitivity witnesses".to_string());
            report.failures = probes.to_vec();
            Ok(report)
        }
        Map::Pl(f) => {
            let mut open: Vec<(usize, RationalInterval)> = probes
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let lo = (x - probe_eps).max(Rational::zero());
                    let hi = (x + probe_eps).min(Rational::one());
                    Ok((i, RationalInterval::new(lo, hi)?))
                })
                .collect::<Result<_>>()?;
            let mut found: Vec<Option<SensitivityWitness>> = vec![None; probes.len()];
            let mut composite = PLMap::identity();
            for k in 1..=horizon {
                composite = f.compose_after(&composite);
                if composite.breakpoints().len() > crate::nds::DEFAULT_COMPOSE_BUDGET {
                    report.notes.push(format!("composition budget reached at iterate {k}"));
                    break;
                }
                open.retain(|(i, ball)| {
                    let x = &probes[*i];
                    let fx = composite.evaluate(x).unwrap();
                    let mut best: Option<(Rational, Rational)> = None;
                    for y in composite
                        .breakpoints()
                        .iter()
                        .filter(|b| ball.contains(b))
                        .chain([ball.lo(), ball.hi()])
                    {
                        let sep = (composite.evaluate(y).unwrap() - &fx).abs();
                        if best.as_ref().is_none_or(|(s, _)| &sep > s) {
                            best = Some((sep, y.clone()));
                        }
                    }
                    if let Some((sep, y)) = best {
                        if &sep > delta {
                            found[*i] = Some(SensitivityWitness {
                                x: x.clone(),
                                y,
                                iterations: k,
                                separation: sep,
                            });
                            return false;
                        }
                    }
                    true
                });
                if open.is_empty() {
                    break;
                }
            }
            for (i, x) in probes.iter().enumerate() {
                match found[i].take() {
                    Some(w) => report.witnesses.push(w),
                    None => report.failures.push(x.clone()),
                }
            }
            Ok(report)
        }
        Map::LazyPl(f) => {
            // Pointwise subdivision of each ball; |slope| >= 2 separates
            // nearby orbits quickly.
            for x in probes {
                let lo = (x - probe_eps).max(Rational::zero());
                let hi = (x + probe_eps).min(Rational::one());
                let steps = 16i64;
                let mut witness = None;
                'search: for j in 0..=steps {
                    let y = &lo + (&hi - &lo) * Rational::new(j, steps);
                    if &y == x {
                        continue;
                    }
                    let mut fx = x.clone();
                    let mut fy = y.clone();
                    for k in 1..=horizon {
                        fx = f.evaluate(&fx)?;
                        fy = f.evaluate(&fy)?;
                        let sep = (&fx - &fy).abs();
                        if &sep > delta {
                            witness = Some(SensitivityWitness {
                                x: x.clone(),
                                y,
                                iterations: k,
                                separation: sep,
                            });
                            break 'search;
                        }
                    }
                }
                match witness {
                    Some(w) => report.witnesses.push(w),
                    None => report.failures.push(x.clone()),
                }
            }
            Ok(report)
        }
        Map::AddingMachine(_) => Err(Error::Unsupported(
            "sensitivity probing is defined for interval and circle maps".into(),
        )),
    }
}

/// Outcome of the invariant-interval search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantOutcome {
    /// `f(K) ⊆ K`, the hull iteration's fixed point containing the seed.
    Fixed(RationalInterval),
    /// A cycle `J_0 -> J_1 -> ... -> J_0` of interior-disjoint intervals
    /// permuted by the map.
    Cycle(Vec<RationalInterval>),
    Inconclusive { last: RationalInterval },
}

/// Iterate `K -> hull(K ∪ f(K))` from the seed until exact stabilization.
/// On stabilization, small cycle lengths are probed: if the seed
/// stabilizes under `f^p` to a strictly smaller interval whose `f`-orbit
/// intervals are interior-disjoint, the cycle is returned instead.
pub fn find_invariant_interval(
    f: &PLMap,
    seed: &RationalInterval,
    max_rounds: usize,
) -> Result<InvariantOutcome> {
    let hull_fix = |g: &PLMap, start: &RationalInterval| -> Option<RationalInterval> {
        let mut k = start.clone();
        for _ in 0..max_rounds {
            let next = k.hull(&g.image_of_interval(&k));
            if next == k {
                return Some(k);
            }
            k = next;
        }
        None
    };
    let Some(fixed) = hull_fix(f, seed) else {
        let mut k = seed.clone();
        for _ in 0..max_rounds {
            k = k.hull(&f.image_of_interval(&k));
        }
        return Ok(InvariantOutcome::Inconclusive { last: k });
    };
    // Cycle probe: p = 2..4.
    let mut power = f.clone();
    for p in 2..=4usize {
        power = f.compose_after(&power);
        if let Some(small) = hull_fix(&power, seed) {
            if small != fixed && small.length() < fixed.length() {
                let mut cycle = vec![small.clone()];
                let mut cur = small.clone();
                for _ in 1..p {
                    cur = f.image_of_interval(&cur);
                    cycle.push(cur.clone());
                }
                let disjoint = cycle
                    .iter()
                    .enumerate()
                    .all(|(i, a)| cycle.iter().skip(i + 1).all(|b| !a.interiors_overlap(b)));
                let closes = {
                    let back = f.image_of_interval(cycle.last().unwrap());
                    back.intersect(&small).is_some_and(|i| i == back)
                };
                if disjoint && closes {
                    return Ok(InvariantOutcome::Cycle(cycle));
                }
            }
        }
    }
    Ok(InvariantOutcome::Fixed(fixed))
}

/// Rescale the restriction `f|_J` of a PL map to an invariant interval
/// `J` (i.e. `f(J) ⊆ J`) back onto `[0, 1]`, so that grid analyses such
/// as [`test_transitivity`] apply to the restriction. The rescaling is an
/// affine conjugation and preserves transitivity.
pub fn restrict_rescaled(f: &PLMap, j: &RationalInterval) -> Result<PLMap> {
    if j.is_degenerate() {
        return Err(Error::Precondition("restriction interval is degenerate".into()));
    }
    let image = f.image_of_interval(j);
    if image.intersect(j) != Some(image.clone()) {
        return Err(Error::Precondition(format!(
            "interval {j} is not invariant: f({j}) = {image}"
        )));
    }
    let len = j.length();
    let unscale = |x: &Rational| j.lo() + x * &len; // [0,1] -> J
    let scale = |y: &Rational| (y - j.lo()) / &len; // J -> [0,1]
    let mut cuts: Vec<Rational> = f
        .breakpoints()
        .iter()
        .filter(|b| j.contains_interior(b))
        .map(|b| scale(b))
        .collect();
    cuts.push(Rational::zero());
    cuts.push(Rational::one());
    cuts.sort();
    cuts.dedup();
    let values = cuts
        .iter()
        .map(|x| Ok(scale(&f.evaluate(&unscale(x))?)))
        .collect::<Result<Vec<_>>>()?;
    PLMap::new(cuts, values)
}

/// Fixed-point and preimage-tree agreement between a limit map `f` and a
/// fiber map `f_n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixInclusionReport {
    /// Isolated fixed points of `f`.
    pub fixed_points: Vec<Rational>,
    /// Fixed intervals of `f` (degenerate; excluded from set comparison).
    pub fixed_intervals: Vec<RationalInterval>,
    /// Every isolated fixed point of `f` is fixed by `f_n`.
    pub inclusion_holds: bool,
    /// First depth `j <= depth` at which `f^{-j}(Fix f)` and
    /// `(f_n)^{-j}(Fix f)` differ, with the offending points.
    pub first_discrepancy: Option<(usize, Vec<Rational>)>,
    pub depth: usize,
}

impl FixInclusionReport {
    pub fn agrees(&self) -> bool {
        self.inclusion_holds && self.first_discrepancy.is_none()
    }
}

/// Compare `Fix(f) ⊂ Fix(f_n)` and the preimage trees of `Fix(f)` under
/// both maps, exactly, down to `depth`.
pub fn check_fix_inclusion(f: &PLMap, fiber: &PLMap, depth: usize) -> Result<FixInclusionReport> {
    let fix = f.fixed_points();
    let inclusion_holds =
        fix.points.iter().all(|p| fiber.evaluate(p).map(|v| &v == p).unwrap_or(false));

    let mut first_discrepancy = None;
    let mut level_f: Vec<Rational> = fix.points.clone();
    let mut level_fiber: Vec<Rational> = fix.points.clone();
    for j in 1..=depth {
        let expand = |maps: &PLMap, level: &[Rational]| -> Result<Vec<Rational>> {
            let mut next = Vec::new();
            for y in level {
                let pre = maps.preimage(y)?;
                if !pre.plateaus.is_empty() {
                    return Err(Error::Unsupported(format!(
                        "preimage of {y} contains a plateau interval"
                    )));
                }
                next.extend(pre.points);
            }
            next.sort();
            next.dedup();
            Ok(next)
        };
        level_f = expand(f, &level_f)?;
        level_fiber = expand(fiber, &level_fiber)?;
        if level_f != level_fiber {
            let mut diff: Vec<Rational> = level_f
                .iter()
                .filter(|p| !level_fiber.contains(p))
                .chain(level_fiber.iter().filter(|p| !level_f.contains(p)))
                .cloned()
                .collect();
            diff.sort();
            diff.dedup();
            first_discrepancy = Some((j, diff));
            break;
        }
    }

    Ok(FixInclusionReport {
        fixed_points: fix.points,
        fixed_intervals: fix.intervals,
        inclusion_holds,
        first_discrepancy,
        depth,
    })
}

/// Map-level wrapper enforcing that both maps are PL interval maps.
pub fn check_fix_inclusion_maps(f: &Map, fiber: &Map, depth: usize) -> Result<FixInclusionReport> {
    match (f, fiber) {
        (Map::Pl(f), Map::Pl(g)) => check_fix_inclusion(f, g, depth),
        _ => Err(Error::SpaceMismatch { expected: "interval (PL)", got: "other map kind" }),
    }
}

/// Per-tree-point eventual agreement `f_n(x) = f(x)` for points that reach
/// the fixed point `p` in at most `depth` steps under the limit map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrefixAgreementReport {
    pub fixed_point: Rational,
    pub depth: usize,
    pub n_max: usize,
    /// `(tree point, minimal n0 with f_n(x) = f(x) for all tested n >= n0)`;
    /// `None` marks a counterexample surviving to `n_max`.
    pub entries: Vec<(Rational, Option<usize>)>,
}

impl PrefixAgreementReport {
    pub fn all_agree(&self) -> bool {
        self.entries.iter().all(|(_, n0)| n0.is_some())
    }

    pub fn max_n0(&self) -> Option<usize> {
        self.entries.iter().filter_map(|(_, n0)| *n0).max()
    }
}

pub fn check_prefix_agreement(
    sys: &System,
    p: &Rational,
    depth: usize,
    n_max: usize,
) -> Result<PrefixAgreementReport> {
    let limit = sys.limit();
    let eval_limit = |x: &Rational| -> Result<Rational> {
        match &limit {
            Map::Pl(f) => f.evaluate(x),
            Map::LazyPl(f) => f.evaluate(x),
            _ => Err(Error::Unsupported("prefix agreement needs an interval family".into())),
        }
    };
    if &eval_limit(p)? != p {
        return Err(Error::Precondition(format!("{p} is not a fixed point of the limit map")));
    }

    // All x with f^j(x) = p for some j <= depth.
    let mut tree: Vec<Rational> = vec![p.clone()];
    let mut level = vec![p.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for y in &level {
            match &limit {
                Map::Pl(f) => {
                    let pre = f.preimage(y)?;
                    if !pre.plateaus.is_empty() {
                        return Err(Error::Unsupported(format!(
                            "preimage of {y} contains a plateau interval"
                        )));
                    }
                    next.extend(pre.points);
                }
                Map::LazyPl(f) => next.extend(f.preimage(y)?),
                _ => unreachable!(),
            }
        }
        next.sort();
        next.dedup();
        tree.extend(next.iter().cloned());
        level = next;
    }
    tree.sort();
    tree.dedup();

    let entries = tree
        .into_iter()
        .map(|x| {
            let fx = eval_limit(&x)?;
            let mut last_disagree = None;
            for n in 1..=n_max {
                let fnx = match sys.map_at(n)? {
                    Map::Pl(f) => f.evaluate(&x)?,
                    Map::LazyPl(f) => f.evaluate(&x)?,
                    _ => unreachable!(),
                };
                if fnx != fx {
                    last_disagree = Some(n);
                }
            }
            let n0 = match last_disagree {
                Some(n) if n == n_max => None,
                Some(n) => Some(n + 1),
                None => Some(1),
            };
            Ok((x, n0))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(PrefixAgreementReport { fixed_point: p.clone(), depth, n_max, entries })
}

/// Exact length of `{x in region : f(x) = g(x)}`.
///
/// For PL pairs the difference is PL, so the agreement set is a finite
/// union of intervals (plus isolated points of measure zero), read off the
/// refined breakpoints. For bump-train pairs the maps differ exactly on
/// the bumps flipped in one but not the other, whose intersection lengths
/// with the region sum in closed form (geometric tail once the remaining
/// bumps all fit inside the region).
pub fn agreement_measure(f: &Map, g: &Map, region: &RationalInterval) -> Result<Rational> {
    match (f, g) {
        (Map::Pl(f), Map::Pl(g)) => Ok(pl_agreement_measure(f, g, region)),
        (Map::LazyPl(f), Map::LazyPl(g)) => bump_agreement_measure(f, g, region),
        _ => Err(Error::Unsupported("agreement measure needs two maps of the same kind".into())),
    }
}

fn pl_agreement_measure(f: &PLMap, g: &PLMap, region: &RationalInterval) -> Rational {
    let mut cuts: Vec<Rational> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints().iter())
        .filter(|b| region.contains(b))
        .cloned()
        .collect();
    cuts.push(region.lo().clone());
    cuts.push(region.hi().clone());
    cuts.sort();
    cuts.dedup();
    let mut total = Rational::zero();
    for w in cuts.windows(2) {
        let da = f.evaluate(&w[0]).unwrap() - g.evaluate(&w[0]).unwrap();
        let db = f.evaluate(&w[1]).unwrap() - g.evaluate(&w[1]).unwrap();
        if da.is_zero() && db.is_zero() {
            total = total + (&w[1] - &w[0]);
        }
    }
    total
}

fn bump_agreement_measure(
    f: &LazyPLMap,
    g: &LazyPLMap,
    region: &RationalInterval,
) -> Result<Rational> {
    let disagreement = |from: usize, until: Option<usize>| -> Rational {
        // Total length of bumps n in [from, until) intersected with the
        // region; `None` means unbounded, closed by the geometric tail.
        let mut total = Rational::zero();
        let mut n = from;
        loop {
            if let Some(cap) = until {
                if n >= cap {
                    break;
                }
            }
            let bump = LazyPLMap::left_bump_interval(n);
            if bump.lo() > region.hi() {
                break; // all later bumps sit further right
            }
            let whole_tail_inside = until.is_none()
                && region.hi() >= &Rational::new(1, 2)
                && region.lo() <= bump.lo();
            if whole_tail_inside {
                // sum_(j >= n) 1/2^(2j+2) = 4^-n / 3
                total = total
                    + Rational::one()
                        / Rational::from_bigint(num_bigint::BigInt::from(3) << (2 * n));
                break;
            }
            if let Some(part) = bump.intersect(region) {
                total = total + part.length();
            }
            n += 1;
        }
        total
    };
    let measure = match (f.flip_from(), g.flip_from()) {
        (a, b) if a == b => Rational::zero(),
        (None, Some(m)) | (Some(m), None) => disagreement(m, None),
        (Some(m1), Some(m2)) => {
            let (lo, hi) = if m1 < m2 { (m1, m2) } else { (m2, m1) };
            disagreement(lo, Some(hi))
        }
        (None, None) => unreachable!("equal flips handled above"),
    };
    Ok(region.length() - measure)
}

/// Eventual-equality report: does `f_n = f` (as maps) from some index on?
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EventualEqualityReport {
    pub n_max: usize,
    pub k_max: usize,
    pub eps: Rational,
    /// Minimal `n0` with full agreement for all `n` in `[n0, n_max]`.
    pub minimal_n0: Option<usize>,
    /// `(n, agreement measure over [0, 1])`.
    pub agreement_trace: Vec<(usize, Rational)>,
    /// (CC*) violation witness searched for when agreement never settles.
    pub ccstar_witness: Option<Witness>,
    /// Set when agreement never settles **and** no (CC*) violation could
    /// be found on the truncation: for a transitive constant-slope limit
    /// this combination contradicts the expected structural law and must
    /// be surfaced loudly.
    pub theorem_check_failure: bool,
    pub limit_constant_slope: bool,
    pub limit_transitive_on_grid: bool,
}

/// Check eventual equality `f_n = f` for systems with a transitive
/// constant-|slope| PL limit. When the family never settles, a (CC*)
/// violation witness is searched for at the top fiber index (one witness
/// there invalidates every candidate `n0` at once); failing to find one is
/// reported as `theorem_check_failure`.
pub fn check_eventual_equality(
    sys: &System,
    eps: &Rational,
    params: &SweepParams,
) -> Result<EventualEqualityReport> {
    let System::IntervalPl(ps) = sys else {
        return Err(Error::Precondition(
            "eventual equality requires a finite piecewise-linear limit of constant |slope|"
                .into(),
        ));
    };
    let profile = ps.limit.slope_profile();
    if !profile.constant_abs_slope {
        return Err(Error::Precondition(
            "eventual equality requires a constant-|slope| limit map".into(),
        ));
    }
    let transitivity = test_transitivity(&Map::Pl(ps.limit.clone()), &Rational::new(1, 8), 24)?;
    if !transitivity.is_transitive() {
        return Err(Error::Precondition("eventual equality requires a transitive limit".into()));
    }

    let unit = RationalInterval::unit();
    let agreement: Vec<(usize, Rational)> = (1..=params.n_max)
        .into_par_iter()
        .map(|n| {
            let a = agreement_measure(&sys.map_at(n)?, &sys.limit(), &unit)?;
            Ok((n, a))
        })
        .collect::<Result<_>>()?;
    let last_disagree = agreement.iter().filter(|(_, a)| a != &Rational::one()).map(|(n, _)| *n).max();
    let minimal_n0 = match last_disagree {
        None => Some(1),
        Some(n) if n < params.n_max => Some(n + 1),
        Some(_) => None,
    };

    let mut ccstar_witness = None;
    let mut theorem_check_failure = false;
    if minimal_n0.is_none() {
        // Probe the top index: the family disagrees there, so by the
        // structural law the fiber powers must drift from the limit's
        // iterates by at least eps somewhere. Points inside the
        // disagreement support diverge immediately and go first.
        let mut probes = Vec::new();
        if let PlTail::Perturbed(rule) = &ps.tail {
            for x in [
                rule.support.midpoint(),
                (rule.support.lo() + &rule.support.midpoint()) * Rational::new(1, 2),
                (rule.support.hi() + &rule.support.midpoint()) * Rational::new(1, 2),
            ] {
                probes.push(crate::nds::interval_point(x)?);
            }
        }
        probes.extend(conditions::default_probes(sys, 128)?);
        ccstar_witness =
            conditions::find_ccstar_violation(sys, eps, params.n_max, params.k_max, &probes)?;
        theorem_check_failure = ccstar_witness.is_none();
    }

    Ok(EventualEqualityReport {
        n_max: params.n_max,
        k_max: params.k_max,
        eps: eps.clone(),
        minimal_n0,
        agreement_trace: agreement,
        ccstar_witness,
        theorem_check_failure,
        limit_constant_slope: true,
        limit_transitive_on_grid: true,
    })
}

/// Invert a strictly monotone PL homeomorphism of `[0, 1]`.
pub fn invert_homeomorphism(h: &PLMap) -> Result<PLMap> {
    let profile = h.slope_profile();
    let increasing = profile.entries.iter().all(|(_, s)| s > &Rational::zero());
    let decreasing = profile.entries.iter().all(|(_, s)| s < &Rational::zero());
    if !(increasing || decreasing) {
        return Err(Error::Precondition("conjugating map must be strictly monotone".into()));
    }
    let mut pairs: Vec<(Rational, Rational)> =
        h.values().iter().cloned().zip(h.breakpoints().iter().cloned()).collect();
    if decreasing {
        pairs.reverse();
    }
    let (breakpoints, values): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    PLMap::new(breakpoints, values)
}

/// Conjugate a PL system by a PL homeomorphism `h`: every fiber map and the
/// limit become `h ∘ f ∘ h^{-1}`, exactly. Supported for explicit-prefix /
/// constant-tail families (the conjugated maps are materialized).
pub fn conjugate_system(sys: &System, h: &PLMap) -> Result<System> {
    let System::IntervalPl(ps) = sys else {
        return Err(Error::Unsupported("conjugation needs a PL interval family".into()));
    };
    let h_inv = invert_homeomorphism(h)?;
    let conj = |f: &PLMap| h.compose_after(&f.compose_after(&h_inv)).simplify();
    match ps.tail {
        PlTail::ConstantLimit => {
            Ok(System::interval_prefix(ps.prefix.iter().map(&conj).collect(), conj(&ps.limit)))
        }
        PlTail::Perturbed(_) => Err(Error::Unsupported(
            "conjugation of rule-generated tails is not materializable; use an explicit prefix"
                .into(),
        )),
    }
}

/// Smallest Lipschitz constant of a PL map (the largest |slope|); the
/// modulus of continuity is `delta -> L * delta`.
pub fn lipschitz_constant(h: &PLMap) -> Rational {
    h.slope_profile().entries.iter().map(|(_, s)| s.abs()).max().unwrap_or_else(Rational::one)
}

/// Instance check of the transitivity equivalences for a uniformly
/// convergent system satisfying (L) on the truncation:
///
/// 1. every ordered pair of basic open grid sets is hit by some inverse
///    window, `U ∩ f_n^{-n}(V) != ∅`;
/// 3. some searched base point has a dense window diagonal (full eps-net
///    coverage);
/// 4. the limit map is topologically transitive.
///
/// The three booleans are expected to agree; a mix is flagged as an
/// instance-check failure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub eps: Rational,
    pub n_search: usize,
    pub horizon: usize,
    /// (L) on the truncation, checked first.
    pub hypothesis_l_holds: bool,
    pub hypothesis_unmet: bool,
    pub window_hitting: Option<bool>,
    pub dense_diagonal: Option<bool>,
    pub limit_transitive: Option<bool>,
    pub consistent: Option<bool>,
    pub dense_base_point: Option<Point>,
    pub notes: Vec<String>,
}

impl EquivalenceReport {
    pub fn instance_check_failure(&self) -> bool {
        self.consistent == Some(false)
    }
}

pub fn check_transitivity_equivalence(
    sys: &System,
    eps: &Rational,
    n_search: usize,
    horizon: usize,
    params: &SweepParams,
) -> Result<EquivalenceReport> {
    let l_report = check_l(sys, params)?;
    let hypothesis_l_holds = l_report.verdict != Verdict::FailsWithWitness;
    let mut report = EquivalenceReport {
        eps: eps.clone(),
        n_search,
        horizon,
        hypothesis_l_holds,
        hypothesis_unmet: !hypothesis_l_holds,
        window_hitting: None,
        dense_diagonal: None,
        limit_transitive: None,
        consistent: None,
        dense_base_point: None,
        notes: Vec::new(),
    };
    if !hypothesis_l_holds {
        report.notes.push("(L) fails on the truncation; equivalences not evaluated".into());
        return Ok(report);
    }

    // (1) window hitting over ordered grid pairs.
    let window_hitting = match sys {
        System::Circle(rs) => {
            let cells = grid_cells(eps)?;
            let shifts: Vec<Rational> =
                (1..=n_search).map(|n| rs.window_fraction(n, n)).collect();
            let mut all = true;
            'pairs: for u in &cells {
                for v in &cells {
                    let hit = shifts.iter().any(|shift| arcs_overlap_shifted(u, v, shift));
                    if !hit {
                        all = false;
                        break 'pairs;
                    }
                }
            }
            all
        }
        System::IntervalPl(_) => {
            let cells = grid_cells(eps)?;
            let mut all = true;
            'pl_pairs: for u in &cells {
                for v in &cells {
                    let mut hit = false;
                    for n in 1..=n_search {
                        let pre = sys.inverse_window_set(n, std::slice::from_ref(v))?;
                        if pre.iter().any(|w| w.interiors_overlap(u)) {
                            hit = true;
                            break;
                        }
                    }
                    if !hit {
                        all = false;
                        break 'pl_pairs;
                    }
                }
            }
            all
        }
        _ => {
            return Err(Error::Unsupported(
                "window hitting is implemented for circle and PL interval families".into(),
            ))
        }
    };
    report.window_hitting = Some(window_hitting);

    // (3) dense window diagonal for a searched base point on the eps-net.
    let net = epsilon_net(sys.space(), eps, sys.word_length())?;
    let density_params = SweepParams { n_max: n_search, ..params.clone() };
    let mut dense = false;
    for candidate in &net {
        let r = check_do(sys, candidate, eps, &density_params)?;
        if r.verdict != Verdict::FailsWithWitness {
            dense = true;
            report.dense_base_point = Some(candidate.clone());
            break;
        }
    }
    report.dense_diagonal = Some(dense);

    // (4) transitivity of the limit.
    let limit_transitive = test_transitivity(&sys.limit(), eps, horizon)?.is_transitive();
    report.limit_transitive = Some(limit_transitive);

    let consistent = window_hitting == dense && dense == limit_transitive;
    report.consistent = Some(consistent);
    if !consistent {
        report.notes.push(format!(
            "instance-check failure: hitting={window_hitting}, dense={dense}, \
             transitive={limit_transitive}"
        ));
    }
    Ok(report)
}

/// Open-overlap test of the arc `v - shift` against the arc `u`, both given
/// as subintervals of `[0, 1)` on the circle.
fn arcs_overlap_shifted(u: &RationalInterval, v: &RationalInterval, shift: &Rational) -> bool {
    let lo = (v.lo() - shift).mod_one();
    let len = v.length();
    let hi = &lo + &len;
    // Compare against u translated by -1, 0, +1 to handle wraparound.
    for t in [-1i64, 0, 1] {
        let t = Rational::from_int(t);
        let a = u.lo() + &t;
        let b = u.hi() + &t;
        if a.clone().max(lo.clone()) < b.min(hi.clone()) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tent() -> Map {
        Map::Pl(PLMap::tent())
    }

    #[test]
    fn tent_is_transitive_on_grid() {
        let report = test_transitivity(&tent(), &rat(1, 8), 16).unwrap();
        assert!(report.is_transitive());
        assert!(report.max_hit_time().unwrap() <= 6, "tent hits within 6 steps");
        assert_eq!(report.pair_table.len(), 64);
    }

    #[test]
    fn identity_fails_immediately() {
        let report = test_transitivity(&Map::Pl(PLMap::identity()), &rat(1, 8), 16).unwrap();
        assert!(matches!(report.verdict, TransitivityVerdict::FailsWithPair { .. }));
    }

    #[test]
    fn transitivity_hits_reverify_exactly() {
        let Map::Pl(t) = tent() else { unreachable!() };
        let report = test_transitivity(&tent(), &rat(1, 8), 16).unwrap();
        for entry in &report.pair_table {
            let n = entry.hit_at.expect("tent is transitive on this grid");
            let u = &report.cells[entry.u];
            let v = &report.cells[entry.v];
            let mut w = u.clone();
            for step in 1..=n {
                w = t.image_of_interval(&w);
                let overlap = w.interiors_overlap(v);
                if step < n {
                    assert!(!overlap, "pair ({}, {}) hit before {n}", entry.u, entry.v);
                } else {
                    assert!(overlap, "pair ({}, {}) does not hit at {n}", entry.u, entry.v);
                }
            }
        }
    }

    #[test]
    fn rotations_are_decided_by_the_tag() {
        use crate::maps::RotationMap;
        let rational = Map::Rotation(RotationMap::new(rat(1, 8)));
        assert!(!test_transitivity(&rational, &rat(1, 8), 4).unwrap().is_transitive());
        let golden = Map::Rotation(RotationMap::golden_surrogate());
        assert!(test_transitivity(&golden, &rat(1, 8), 4).unwrap().is_transitive());
    }

    #[test]
    fn bump_train_is_transitive_on_grid() {
        let f = Map::LazyPl(LazyPLMap::bump_train());
        let report = test_transitivity(&f, &rat(1, 16), 40).unwrap();
        assert!(report.is_transitive());
    }

    #[test]
    fn tent_sensitivity_witnesses_everywhere() {
        let probes: Vec<Rational> = (0..=32).map(|i| rat(i, 32)).collect();
        let report = test_sensitivity(&tent(), &rat(1, 4), &rat(1, 32), 16, &probes).unwrap();
        assert!(report.all_probes_witnessed());
        let Map::Pl(t) = tent() else { unreachable!() };
        for w in &report.witnesses {
            assert!((&w.x - &w.y).abs() <= rat(1, 32));
            let sep = (t.iterate(&w.x, w.iterations).unwrap()
                - t.iterate(&w.y, w.iterations).unwrap())
            .abs();
            assert_eq!(sep, w.separation);
            assert!(sep > rat(1, 4));
        }
    }

    #[test]
    fn identity_and_rotations_have_no_witnesses() {
        let probes: Vec<Rational> = (0..=8).map(|i| rat(i, 8)).collect();
        let id =
            test_sensitivity(&Map::Pl(PLMap::identity()), &rat(1, 8), &rat(1, 16), 12, &probes)
                .unwrap();
        assert!(id.witnesses.is_empty());
        assert_eq!(id.failures.len(), probes.len());
        let rot = Map::Rotation(crate::maps::RotationMap::new(rat(1, 8)));
        let r = test_sensitivity(&rot, &rat(1, 8), &rat(1, 16), 12, &probes).unwrap();
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn invariant_interval_tent_and_identity() {
        let Map::Pl(t) = tent() else { unreachable!() };
        let seed = RationalInterval::new(rat(1, 4), rat(1, 2)).unwrap();
        assert_eq!(
            find_invariant_interval(&t, &seed, 32).unwrap(),
            InvariantOutcome::Fixed(RationalInterval::unit())
        );
        let id = PLMap::identity();
        let u = RationalInterval::new(rat(1, 8), rat(1, 4)).unwrap();
        assert_eq!(find_invariant_interval(&id, &u, 8).unwrap(), InvariantOutcome::Fixed(u));
    }

    #[test]
    fn half_swap_map_yields_a_two_cycle() {
        // f([0,1/2]) = [1/2,1] and f([1/2,1]) = [0,1/2] with unique fixed
        // point 1/2; under f^2 each half is invariant.
        let f = PLMap::from_pairs(&[
            ((0, 1), (1, 2)),
            ((1, 4), (1, 1)),
            ((1, 2), (1, 2)),
            ((1, 1), (0, 1)),
        ])
        .unwrap();
        let fix = f.fixed_points();
        assert_eq!(fix.points, vec![rat(1, 2)]);
        let seed = RationalInterval::new(rat(1, 8), rat(3, 8)).unwrap();
        let outcome = find_invariant_interval(&f, &seed, 32).unwrap();
        let InvariantOutcome::Cycle(cycle) = outcome else {
            panic!("expected a 2-cycle, got {outcome:?}");
        };
        assert_eq!(cycle.len(), 2);
        assert_eq!(cycle[0], RationalInterval::new(rat(0, 1), rat(1, 2)).unwrap());
        assert_eq!(cycle[1], RationalInterval::new(rat(1, 2), rat(1, 1)).unwrap());
    }

    #[test]
    fn restriction_to_an_invariant_half_is_transitive() {
        // The half-swap map cycles [0,1/2] and [1/2,1]; its square leaves
        // each half invariant and acts transitively there.
        let f = PLMap::from_pairs(&[
            ((0, 1), (1, 2)),
            ((1, 4), (1, 1)),
            ((1, 2), (1, 2)),
            ((1, 1), (0, 1)),
        ])
        .unwrap();
        let square = f.compose_after(&f);
        for half in [
            RationalInterval::new(rat(0, 1), rat(1, 2)).unwrap(),
            RationalInterval::new(rat(1, 2), rat(1, 1)).unwrap(),
        ] {
            let restricted = restrict_rescaled(&square, &half).unwrap();
            let report = test_transitivity(&Map::Pl(restricted), &rat(1, 8), 16).unwrap();
            assert!(report.is_transitive(), "f^2 restricted to {half} must be transitive");
        }
        // A non-invariant interval is rejected.
        let off = RationalInterval::new(rat(0, 1), rat(1, 4)).unwrap();
        assert!(restrict_rescaled(&f, &off).is_err());
    }

    #[test]
    fn fix_inclusion_for_equal_maps_and_mismatches() {
        let Map::Pl(t) = tent() else { unreachable!() };
        let report = check_fix_inclusion(&t, &t, 3).unwrap();
        assert!(report.agrees());
        assert_eq!(report.fixed_points, vec![rat(0, 1), rat(2, 3)]);

        let rot = Map::Rotation(crate::maps::RotationMap::new(rat(1, 8)));
        assert!(check_fix_inclusion_maps(&tent(), &rot, 2).is_err());
    }

    #[test]
    fn fix_inclusion_with_faraway_perturbation() {
        // Perturb the tent only on [15/16, 31/32], avoiding the depth-3
        // preimage trees of 0 and 2/3 (the nearest tree point is 11/12).
        let t = PLMap::tent();
        let support = RationalInterval::new(rat(15, 16), rat(31, 32)).unwrap();
        let tree: Vec<Rational> = [rat(0, 1), rat(2, 3)]
            .iter()
            .flat_map(|p| (0..=3).flat_map(|j| t.preimage_tree(p, j).unwrap()).collect::<Vec<_>>())
            .collect();
        assert!(tree.iter().all(|x| !support.contains_interior(x)));
        let perturbed = crate::nds::add_bump(&t, &support, &rat(1, 64)).unwrap();
        let report = check_fix_inclusion(&t, &perturbed, 3).unwrap();
        assert!(report.agrees(), "{report:?}");
        // A perturbation sitting on a depth-1 preimage point is detected.
        let bad_support = RationalInterval::new(rat(5, 16), rat(3, 8)).unwrap(); // contains 1/3
        let bad = crate::nds::add_bump(&t, &bad_support, &rat(1, 64)).unwrap();
        let report = check_fix_inclusion(&t, &bad, 3).unwrap();
        assert!(!report.agrees());
        assert_eq!(report.first_discrepancy.as_ref().unwrap().0, 1);
    }

    #[test]
    fn prefix_agreement_constant_and_tail_constant() {
        let t = PLMap::tent();
        let sys = System::constant_interval(t.clone());
        let report = check_prefix_agreement(&sys, &rat(2, 3), 3, 8).unwrap();
        assert!(report.all_agree());
        assert_eq!(report.max_n0(), Some(1));

        // Arbitrary surjective maps for n <= 4, tent afterwards: n0 <= 5.
        let other =
            PLMap::from_pairs(&[((0, 1), (1, 1)), ((1, 2), (0, 1)), ((1, 1), (1, 1))]).unwrap();
        let sys = System::interval_prefix(
            vec![other.clone(), other.clone(), other.clone(), other],
            t.clone(),
        );
        let report = check_prefix_agreement(&sys, &rat(2, 3), 2, 10).unwrap();
        assert!(report.all_agree());
        assert_eq!(report.max_n0(), Some(5));

        // Precondition: the base point must be fixed.
        assert!(check_prefix_agreement(&sys, &rat(1, 3), 2, 10).is_err());
    }

    #[test]
    fn prefix_agreement_for_bump_train() {
        // 0 is a fixed point of the limit; the depth-6 tree contains the
        // bump-1 midpoint 13/32, where modifications stop at m = 2.
        let sys = System::bump_train();
        let report = check_prefix_agreement(&sys, &rat(0, 1), 6, 8).unwrap();
        assert!(report.all_agree());
        let entry = report
            .entries
            .iter()
            .find(|(x, _)| x == &rat(13, 32))
            .expect("tree reaches the first bump midpoint");
        assert_eq!(entry.1, Some(2));
        assert_eq!(report.max_n0(), Some(2));
    }

    #[test]
    fn agreement_measure_examples() {
        let t = PLMap::tent();
        let unit = RationalInterval::unit();
        assert_eq!(
            agreement_measure(&Map::Pl(t.clone()), &Map::Pl(t.clone()), &unit).unwrap(),
            rat(1, 1)
        );
        // Tent vs identity: equality only at the isolated points 0 and 2/3.
        assert_eq!(
            agreement_measure(&Map::Pl(t.clone()), &Map::Pl(PLMap::identity()), &unit).unwrap(),
            rat(0, 1)
        );
        // Bump-train pair: 1 - 1/(3*4^m).
        let f = Map::LazyPl(LazyPLMap::bump_train());
        let f1 = Map::LazyPl(LazyPLMap::bump_train_modified(1).unwrap());
        assert_eq!(agreement_measure(&f, &f1, &unit).unwrap(), rat(11, 12));
        let f3 = Map::LazyPl(LazyPLMap::bump_train_modified(3).unwrap());
        assert_eq!(agreement_measure(&f, &f3, &unit).unwrap(), rat(191, 192));
        // Two modified maps differ exactly on the bumps in between.
        let expected = rat(1, 12) - rat(1, 192);
        assert_eq!(agreement_measure(&f1, &f3, &unit).unwrap(), Rational::one() - expected);
    }

    #[test]
    fn agreement_measure_is_additive_over_partitions() {
        let t = Map::Pl(PLMap::tent());
        let id = Map::Pl(PLMap::identity());
        let left = RationalInterval::new(rat(0, 1), rat(1, 3)).unwrap();
        let right = RationalInterval::new(rat(1, 3), rat(1, 1)).unwrap();
        let whole = agreement_measure(&t, &id, &RationalInterval::unit()).unwrap();
        let split =
            agreement_measure(&t, &id, &left).unwrap() + agreement_measure(&t, &id, &right).unwrap();
        assert_eq!(whole, split);
    }

    #[test]
    fn eventual_equality_tail_constant() {
        let t = PLMap::tent();
        let bump = crate::nds::add_bump(
            &t,
            &RationalInterval::new(rat(9, 64), rat(11, 64)).unwrap(),
            &rat(1, 32),
        )
        .unwrap();
        let sys = System::interval_prefix(vec![bump.clone(), bump.clone(), bump], t);
        let params = SweepParams { n_max: 10, k_max: 64, ..SweepParams::default() };
        let report = check_eventual_equality(&sys, &rat(1, 8), &params).unwrap();
        assert_eq!(report.minimal_n0, Some(4));
        assert!(!report.theorem_check_failure);
    }

    #[test]
    fn eventual_equality_persistent_perturbation_finds_ccstar_witness() {
        let t = PLMap::tent();
        let support = RationalInterval::new(rat(9, 32), rat(11, 32)).unwrap();
        let rule = crate::nds::PerturbationRule { support, amp: rat(1, 4) };
        let sys = System::interval_perturbed(t, rule).unwrap();
        let params = SweepParams { n_max: 12, k_max: 512, ..SweepParams::default() };
        let report = check_eventual_equality(&sys, &rat(1, 8), &params).unwrap();
        assert_eq!(report.minimal_n0, None);
        let w = report.ccstar_witness.as_ref().expect("violation witness must exist");
        assert!(!report.theorem_check_failure);
        assert!(conditions::verify_ccstar_witness(&sys, w, &rat(1, 8)).unwrap());
    }

    #[test]
    fn eventual_equality_rejects_nonconstant_slope() {
        let f = PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 4), (1, 1)), ((1, 1), (0, 1))]).unwrap();
        let sys = System::constant_interval(f);
        let params = SweepParams { n_max: 4, k_max: 8, ..SweepParams::default() };
        assert!(matches!(
            check_eventual_equality(&sys, &rat(1, 8), &params),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conjugation_by_identity_and_stretch() {
        let t = PLMap::tent();
        let sys = System::constant_interval(t.clone());
        let conj = conjugate_system(&sys, &PLMap::identity()).unwrap();
        let System::IntervalPl(ps) = &conj else { unreachable!() };
        assert_eq!(ps.limit, t);

        // A 2-piece stretch: h(1/4) = 1/2.
        let h =
            PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 4), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        let h_inv = invert_homeomorphism(&h).unwrap();
        assert_eq!(h.compose_after(&h_inv).simplify(), PLMap::identity());
        let conj = conjugate_system(&sys, &h).unwrap();
        let System::IntervalPl(ps) = &conj else { unreachable!() };
        assert!(!ps.limit.slope_profile().constant_abs_slope);
        // Conjugation preserves the transitivity verdict.
        let before = test_transitivity(&Map::Pl(t), &rat(1, 8), 24).unwrap();
        let after = test_transitivity(&Map::Pl(ps.limit.clone()), &rat(1, 8), 24).unwrap();
        assert_eq!(before.is_transitive(), after.is_transitive());
        assert!(after.is_transitive());
    }

    #[test]
    fn conjugation_rejects_non_monotone_maps() {
        let sys = System::constant_interval(PLMap::tent());
        assert!(conjugate_system(&sys, &PLMap::tent()).is_err());
    }

    #[test]
    fn ccstar_transport_under_conjugation() {
        // d(h(a), h(b)) <= L * d(a, b) with L the Lipschitz constant of h,
        // so a fiber-vs-limit distance delta transports to at most
        // L * delta under conjugation.
        let h =
            PLMap::from_pairs(&[((0, 1), (0, 1)), ((1, 4), (1, 2)), ((1, 1), (1, 1))]).unwrap();
        let lip = lipschitz_constant(&h);
        assert_eq!(lip, rat(2, 1));
        let t = PLMap::tent();
        let bump = crate::nds::add_bump(
            &t,
            &RationalInterval::new(rat(9, 64), rat(11, 64)).unwrap(),
            &rat(1, 64),
        )
        .unwrap();
        let sys = System::interval_prefix(vec![bump], t.clone());
        let conj = conjugate_system(&sys, &h).unwrap();
        let System::IntervalPl(cs) = &conj else { unreachable!() };
        for i in 0..=16i64 {
            let x = rat(i, 16);
            for (n, k) in [(1usize, 1usize), (1, 3), (2, 2)] {
                let Map::Pl(f) = sys.map_at(n).unwrap() else { unreachable!() };
                let mut y = x.clone();
                let mut z = x.clone();
                for _ in 0..k {
                    y = f.evaluate(&y).unwrap();
                    z = t.evaluate(&z).unwrap();
                }
                let base_dist = (y - z).abs();

                let hx = h.evaluate(&x).unwrap();
                let Map::Pl(g) = conj.map_at(n).unwrap() else { unreachable!() };
                let mut y = hx.clone();
                let mut z = hx.clone();
                for _ in 0..k {
                    y = g.evaluate(&y).unwrap();
                    z = cs.limit.evaluate(&z).unwrap();
                }
                let conj_dist = (y - z).abs();
                assert!(conj_dist <= &lip * &base_dist, "transport bound violated at x = {x}");
            }
        }
    }

    #[test]
    fn equivalence_instance_all_false_for_halving_rotations() {
        let sys = System::halving_rotations();
        let params = SweepParams { n_max: 16, k_max: 64, ..SweepParams::default() };
        let report = check_transitivity_equivalence(&sys, &rat(1, 8), 24, 16, &params).unwrap();
        assert!(report.hypothesis_l_holds);
        assert_eq!(report.window_hitting, Some(false));
        assert_eq!(report.dense_diagonal, Some(false));
        assert_eq!(report.limit_transitive, Some(false));
        assert_eq!(report.consistent, Some(true));
    }

    #[test]
    fn equivalence_instance_all_true_for_golden_rotations() {
        let sys = System::golden_rotations();
        let params = SweepParams { n_max: 64, k_max: 64, ..SweepParams::default() };
        let report = check_transitivity_equivalence(&sys, &rat(1, 10), 64, 16, &params).unwrap();
        assert!(report.hypothesis_l_holds);
        assert_eq!(report.window_hitting, Some(true));
        assert_eq!(report.dense_diagonal, Some(true));
        assert_eq!(report.limit_transitive, Some(true));
        assert_eq!(report.consistent, Some(true));
    }
}
