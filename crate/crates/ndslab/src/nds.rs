//! Nonautonomous systems: a sequence of maps `f_1, f_2, ...` on one phase
//! space together with its uniform limit `f`, and the composition machinery
//! around them.
//!
//! Notation used throughout the crate:
//!
//! * the *window composition* `f_n^k = f_(n+k-1) ∘ ... ∘ f_(n+1) ∘ f_n`
//!   (`k` consecutive maps starting at index `n`; `f_n^0` is the identity);
//! * the *fiber power* `(f_n)^k = f_n ∘ ... ∘ f_n` (`k` copies);
//! * the *inverse window* `f_n^(-n) = f_n^(-1) ∘ f_(n+1)^(-1) ∘ ... ∘
//!   f_(2n-1)^(-1)`, the set preimage under `f_n^n`.
//!
//! Families are named parametric constructors (rotation schedules, odometer
//! truncations, the bump-train family, tent perturbations) plus an escape
//! hatch of an explicit PL prefix with a constant tail, so that system
//! descriptions stay declarative and serializable.

use serde::{Deserialize, Serialize};

use crate::maps::{AddingMachineMap, LazyPLMap, Map, PLMap, RotationMap};
use crate::rational::Rational;
use crate::space::{
    merge_intervals, CantorWord, CirclePoint, IntervalPoint, Point, RationalInterval, SpaceTag,
};
use crate::{Error, Result};

/// Breakpoint budget above which window/fiber compositions of PL families
/// stop materializing exact composite maps and fall back to pointwise
/// evaluators.
pub const DEFAULT_COMPOSE_BUDGET: usize = 1_000_000;

/// A triangular perturbation added to the limit map, shrinking with the
/// index: `f_n = limit + bump` with peak height `amp / 2^n` at the support
/// midpoint. Present for every `n`, so the family converges uniformly to
/// the limit while never equalling it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationRule {
    pub support: RationalInterval,
    pub amp: Rational,
}

impl PerturbationRule {
    pub fn height_at(&self, n: usize) -> Rational {
        &self.amp * Rational::inv_two_pow(n as u32)
    }
}

/// Add a triangular bump of height `h` over `support` to a PL map. `h` may
/// be negative; the result must stay inside `[0, 1]`.
pub fn add_bump(f: &PLMap, support: &RationalInterval, h: &Rational) -> Result<PLMap> {
    if support.is_degenerate() {
        return Err(Error::Construction("bump support must be nondegenerate".into()));
    }
    let mid = support.midpoint();
    let mut cuts: Vec<Rational> = f.breakpoints().to_vec();
    cuts.extend([support.lo().clone(), mid.clone(), support.hi().clone()]);
    cuts.sort();
    cuts.dedup();
    let bump = |x: &Rational| -> Rational {
        if !support.contains_interior(x) {
            return Rational::zero();
        }
        let half_width = (support.hi() - support.lo()) * Rational::new(1, 2);
        let off = (x - &mid).abs();
        h * (Rational::one() - off / half_width)
    };
    let values = cuts.iter().map(|x| f.evaluate(x).unwrap() + bump(x)).collect();
    PLMap::new(cuts, values)
}

/// What generates the fiber maps beyond any explicit prefix.
#[derive(Clone, Debug)]
pub enum PlTail {
    /// `f_n = limit` past the prefix.
    ConstantLimit,
    /// `f_n = limit + shrinking bump` for every `n` past the prefix.
    Perturbed(PerturbationRule),
}

/// PL interval family: explicit prefix, tail rule, limit.
#[derive(Clone, Debug)]
pub struct PlSystem {
    pub prefix: Vec<PLMap>,
    pub tail: PlTail,
    pub limit: PLMap,
}

/// Rotation circle family.
#[derive(Clone, Debug)]
pub enum RotationSchedule {
    /// `f_n` = rotation by `1/2^n`; uniform limit is the identity.
    HalvingAngles,
    /// `g_n` = rotation by the golden convergent `F_(n+1)/F_(n+2)`, capped
    /// at the irrational surrogate once the convergents reach it.
    GoldenConvergents,
    /// Explicit fractions, then constant at the limit.
    ExplicitPrefix(Vec<Rational>),
}

#[derive(Clone, Debug)]
pub struct RotationSystem {
    pub schedule: RotationSchedule,
    pub limit: RotationMap,
}

/// Odometer Cantor family: `f_n` adds 1 with carry on the first `n` bits;
/// the limit adds 1 on all `word_length` stored bits.
#[derive(Clone, Debug)]
pub struct OdometerSystem {
    pub word_length: usize,
}

/// Bump-train interval family: `f_m` flips the deep left bumps, the limit
/// flips none.
#[derive(Clone, Debug)]
pub struct LazySystem;

/// A nonautonomous system on one of the three phase spaces.
#[derive(Clone, Debug)]
pub enum System {
    IntervalPl(PlSystem),
    IntervalLazy(LazySystem),
    Circle(RotationSystem),
    Cantor(OdometerSystem),
}

/// Offset so that fiber `n` uses the golden convergent `F_(n+1)/F_(n+2)`,
/// starting at `g_1 = 1/2` (skipping the degenerate convergent `1/1 ≡ 0`).
const GOLDEN_OFFSET: u32 = 1;
/// Convergent index of the stored surrogate.
const GOLDEN_SURROGATE_INDEX: u32 = 60;

impl RotationSystem {
    pub fn fraction_at(&self, n: usize) -> Rational {
        match &self.schedule {
            RotationSchedule::HalvingAngles => Rational::inv_two_pow(n as u32),
            RotationSchedule::GoldenConvergents => {
                let k = (n as u32 + GOLDEN_OFFSET).min(GOLDEN_SURROGATE_INDEX);
                crate::maps::rotation::golden_convergent(k)
            }
            RotationSchedule::ExplicitPrefix(prefix) => prefix
                .get(n - 1)
                .cloned()
                .unwrap_or_else(|| self.limit.fraction().clone()),
        }
    }

    pub fn map_at(&self, n: usize) -> RotationMap {
        RotationMap::new(self.fraction_at(n))
    }

    /// Exact rotation amount of the window `f_n^k`.
    pub fn window_fraction(&self, n: usize, k: usize) -> Rational {
        (n..n + k).map(|j| self.fraction_at(j)).sum::<Rational>().mod_one()
    }

    /// Exact rotation amount of the fiber power `(f_n)^k`.
    pub fn fiber_fraction(&self, n: usize, k: usize) -> Rational {
        (self.fraction_at(n) * Rational::from_int(k as i64)).mod_one()
    }
}

impl OdometerSystem {
    pub fn map_at(&self, n: usize) -> AddingMachineMap {
        if n >= self.word_length {
            AddingMachineMap::full()
        } else {
            AddingMachineMap::first_n(n).expect("n >= 1")
        }
    }

    pub fn limit(&self) -> AddingMachineMap {
        AddingMachineMap::full()
    }
}

/// The sequence kinds an [`OrbitRecord`] can hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// `f_1^n(x)`: the orbit of the nonautonomous system.
    NonautOrbit,
    /// `f_n^n(x)`: the diagonal of window compositions.
    DiagonalWindow,
    /// `(f_n)^n(x)`: the diagonal of fiber powers.
    DiagonalFiber,
    /// `f^n(x)` under the limit map.
    Autonomous,
}

/// An orbit/diagonal sequence with its provenance. `saturated` lists entry
/// indices whose computation dropped a Cantor carry past the stored
/// precision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub base: Point,
    pub kind: SequenceKind,
    pub entries: Vec<(usize, Point)>,
    pub saturated: Vec<usize>,
}

/// A window or fiber composition, materialized when the family allows it
/// exactly and cheaply, otherwise a pointwise evaluator.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum ComposedMap {
    Pl(PLMap),
    Rotation(RotationMap),
    Evaluator(Evaluator),
}

/// Pointwise application of `count` maps starting at `start` (window) or of
/// the single map at `start` applied `count` times (fiber).
#[derive(Clone, Debug)]
pub struct Evaluator {
    system: System,
    start: usize,
    count: usize,
    fiber: bool,
}

impl Evaluator {
    pub fn eval(&self, x: &Point) -> Result<Point> {
        let (y, saturated) = self.eval_flagged(x)?;
        if saturated {
            return Err(Error::PrecisionSaturated);
        }
        Ok(y)
    }

    pub fn eval_flagged(&self, x: &Point) -> Result<(Point, bool)> {
        let mut y = x.clone();
        let mut saturated = false;
        for j in 0..self.count {
            let index = if self.fiber { self.start } else { self.start + j };
            let (next, flag) = if self.start == 0 {
                self.system.step_limit(&y)?
            } else {
                self.system.step(index, &y)?
            };
            y = next;
            saturated |= flag;
        }
        Ok((y, saturated))
    }
}

impl ComposedMap {
    pub fn eval(&self, x: &Point) -> Result<Point> {
        match self {
            ComposedMap::Pl(f) => Map::Pl(f.clone()).evaluate(x),
            ComposedMap::Rotation(r) => Map::Rotation(r.clone()).evaluate(x),
            ComposedMap::Evaluator(e) => e.eval(x),
        }
    }

    pub fn as_pl(&self) -> Option<&PLMap> {
        match self {
            ComposedMap::Pl(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_rotation(&self) -> Option<&RotationMap> {
        match self {
            ComposedMap::Rotation(r) => Some(r),
            _ => None,
        }
    }

    /// Whether the composition had to fall back to pointwise evaluation.
    pub fn is_evaluator(&self) -> bool {
        matches!(self, ComposedMap::Evaluator(_))
    }
}

impl System {
    pub fn constant_interval(f: PLMap) -> System {
        System::IntervalPl(PlSystem { prefix: Vec::new(), tail: PlTail::ConstantLimit, limit: f })
    }

    pub fn interval_prefix(prefix: Vec<PLMap>, limit: PLMap) -> System {
        System::IntervalPl(PlSystem { prefix, tail: PlTail::ConstantLimit, limit })
    }

    pub fn interval_perturbed(limit: PLMap, rule: PerturbationRule) -> Result<System> {
        // The rule must produce valid surjective maps; probe the first index.
        let probe = add_bump(&limit, &rule.support, &rule.height_at(1))?;
        if !probe.is_surjective() {
            return Err(Error::Construction("perturbed maps are not surjective".into()));
        }
        Ok(System::IntervalPl(PlSystem {
            prefix: Vec::new(),
            tail: PlTail::Perturbed(rule),
            limit,
        }))
    }

    /// Rotations by `1/2^n` converging to the identity.
    pub fn halving_rotations() -> System {
        System::Circle(RotationSystem {
            schedule: RotationSchedule::HalvingAngles,
            limit: RotationMap::identity(),
        })
    }

    /// Rational rotations along golden convergents converging to the tagged
    /// irrational surrogate.
    pub fn golden_rotations() -> System {
        System::Circle(RotationSystem {
            schedule: RotationSchedule::GoldenConvergents,
            limit: RotationMap::golden_surrogate(),
        })
    }

    pub fn circle_prefix(prefix: Vec<Rational>, limit: RotationMap) -> System {
        System::Circle(RotationSystem { schedule: RotationSchedule::ExplicitPrefix(prefix), limit })
    }

    /// Odometer truncations on words of `word_length` bits.
    pub fn odometer(word_length: usize) -> Result<System> {
        if word_length == 0 {
            return Err(Error::Domain("word length must be positive".into()));
        }
        Ok(System::Cantor(OdometerSystem { word_length }))
    }

    /// The bump-train family `f_m -> f`.
    pub fn bump_train() -> System {
        System::IntervalLazy(LazySystem)
    }

    pub fn space(&self) -> SpaceTag {
        match self {
            System::IntervalPl(_) | System::IntervalLazy(_) => SpaceTag::Interval,
            System::Circle(_) => SpaceTag::Circle,
            System::Cantor(_) => SpaceTag::Cantor,
        }
    }

    /// Cantor word length carried by the system (0 for other spaces).
    pub fn word_length(&self) -> usize {
        match self {
            System::Cantor(s) => s.word_length,
            _ => 0,
        }
    }

    /// The fiber map `f_n` (1-based).
    pub fn map_at(&self, n: usize) -> Result<Map> {
        if n == 0 {
            return Err(Error::Precondition("fiber indices are 1-based".into()));
        }
        match self {
            System::IntervalPl(s) => Ok(Map::Pl(self.pl_map_at(s, n)?)),
            System::IntervalLazy(_) => Ok(Map::LazyPl(LazyPLMap::bump_train_modified(n)?)),
            System::Circle(s) => Ok(Map::Rotation(s.map_at(n))),
            System::Cantor(s) => Ok(Map::AddingMachine(s.map_at(n))),
        }
    }

    pub fn limit(&self) -> Map {
        match self {
            System::IntervalPl(s) => Map::Pl(s.limit.clone()),
            System::IntervalLazy(_) => Map::LazyPl(LazyPLMap::bump_train()),
            System::Circle(s) => Map::Rotation(s.limit.clone()),
            System::Cantor(s) => Map::AddingMachine(s.limit()),
        }
    }

    fn pl_map_at(&self, s: &PlSystem, n: usize) -> Result<PLMap> {
        if n <= s.prefix.len() {
            return Ok(s.prefix[n - 1].clone());
        }
        match &s.tail {
            PlTail::ConstantLimit => Ok(s.limit.clone()),
            PlTail::Perturbed(rule) => add_bump(&s.limit, &rule.support, &rule.height_at(n)),
        }
    }

    /// Indices of explicit maps that fail the surjectivity check (0 stands
    /// for the limit map). The paper-level hypotheses require surjective
    /// fibers; construction is still allowed for counterexample
    /// exploration, so this is a warning surface, not an error.
    pub fn surjectivity_warnings(&self) -> Vec<usize> {
        match self {
            System::IntervalPl(s) => {
                let mut warn: Vec<usize> = Vec::new();
                if !s.limit.is_surjective() {
                    warn.push(0);
                }
                warn.extend(
                    s.prefix
                        .iter()
                        .enumerate()
                        .filter(|(_, f)| !f.is_surjective())
                        .map(|(i, _)| i + 1),
                );
                warn
            }
            _ => Vec::new(), // rotations, odometers, bump trains are all onto
        }
    }

    /// One application of `f_index`; the boolean flags Cantor precision
    /// saturation instead of failing, so orbits can record and continue.
    pub fn step(&self, index: usize, x: &Point) -> Result<(Point, bool)> {
        match (self, x) {
            (System::Cantor(s), Point::Cantor(w)) => {
                let step = s.map_at(index).evaluate(w)?;
                Ok((Point::Cantor(step.word), step.saturated))
            }
            _ => {
                let y = self.map_at(index)?.evaluate(x)?;
                Ok((y, false))
            }
        }
    }

    /// Apply the limit map once, with the same saturation convention.
    pub fn step_limit(&self, x: &Point) -> Result<(Point, bool)> {
        match (self, x) {
            (System::Cantor(s), Point::Cantor(w)) => {
                let step = s.limit().evaluate(w)?;
                Ok((Point::Cantor(step.word), step.saturated))
            }
            _ => Ok((self.limit().evaluate(x)?, false)),
        }
    }

    /// The window composition `f_n^k`, with `k = 0` the identity. PL
    /// families compose exactly while the breakpoint count stays within
    /// `budget`, then fall back to a pointwise evaluator; rotations always
    /// compose exactly.
    pub fn window_compose(&self, n: usize, k: usize, budget: usize) -> Result<ComposedMap> {
        self.compose(n, k, budget, false)
    }

    /// The fiber power `(f_n)^k`.
    pub fn fiber_power(&self, n: usize, k: usize, budget: usize) -> Result<ComposedMap> {
        self.compose(n, k, budget, true)
    }

    fn compose(&self, n: usize, k: usize, budget: usize, fiber: bool) -> Result<ComposedMap> {
        if n == 0 {
            return Err(Error::Precondition("fiber indices are 1-based".into()));
        }
        match self {
            System::Circle(s) => {
                let fraction = if fiber { s.fiber_fraction(n, k) } else { s.window_fraction(n, k) };
                Ok(ComposedMap::Rotation(RotationMap::new(fraction)))
            }
            System::IntervalPl(_) => {
                let mut acc = PLMap::identity();
                for j in 0..k {
                    let index = if fiber { n } else { n + j };
                    let Map::Pl(next) = self.map_at(index)? else { unreachable!() };
                    acc = next.compose_after(&acc);
                    if acc.breakpoints().len() > budget {
                        return Ok(ComposedMap::Evaluator(Evaluator {
                            system: self.clone(),
                            start: n,
                            count: k,
                            fiber,
                        }));
                    }
                }
                Ok(ComposedMap::Pl(acc))
            }
            System::IntervalLazy(_) | System::Cantor(_) => Ok(ComposedMap::Evaluator(Evaluator {
                system: self.clone(),
                start: n,
                count: k,
                fiber,
            })),
        }
    }

    /// The `k`-th iterate of the limit map, exact PL under the same budget
    /// rule. (Evaluator fallbacks use `start = 0`, which means "the limit
    /// map" to [`Evaluator::eval_flagged`].)
    pub fn limit_power(&self, k: usize, budget: usize) -> Result<ComposedMap> {
        match self {
            System::Circle(s) => Ok(ComposedMap::Rotation(s.limit.power(k))),
            System::IntervalPl(s) => {
                let mut acc = PLMap::identity();
                for _ in 0..k {
                    acc = s.limit.compose_after(&acc);
                    if acc.breakpoints().len() > budget {
                        return Ok(ComposedMap::Evaluator(Evaluator {
                            system: self.clone(),
                            start: 0,
                            count: k,
                            fiber: true,
                        }));
                    }
                }
                Ok(ComposedMap::Pl(acc))
            }
            System::IntervalLazy(_) | System::Cantor(_) => Ok(ComposedMap::Evaluator(Evaluator {
                system: self.clone(),
                start: 0,
                count: k,
                fiber: true,
            })),
        }
    }

    /// Iterate the limit map `k` times pointwise.
    pub fn limit_iterate(&self, x: &Point, k: usize) -> Result<(Point, bool)> {
        let mut y = x.clone();
        let mut saturated = false;
        for _ in 0..k {
            let (next, flag) = self.step_limit(&y)?;
            y = next;
            saturated |= flag;
        }
        Ok((y, saturated))
    }

    /// Generate an orbit/diagonal sequence with entries `n = 1..=len`.
    pub fn orbit(&self, x: &Point, len: usize, kind: SequenceKind) -> Result<OrbitRecord> {
        if len == 0 {
            return Err(Error::Precondition("orbit length must be positive".into()));
        }
        let mut entries = Vec::with_capacity(len);
        let mut saturated = Vec::new();
        match kind {
            SequenceKind::NonautOrbit => {
                let mut y = x.clone();
                for n in 1..=len {
                    let (next, flag) = self.step(n, &y)?;
                    y = next;
                    entries.push((n, y.clone()));
                    if flag {
                        saturated.push(n);
                    }
                }
            }
            SequenceKind::Autonomous => {
                let mut y = x.clone();
                for n in 1..=len {
                    let (next, flag) = self.step_limit(&y)?;
                    y = next;
                    entries.push((n, y.clone()));
                    if flag {
                        saturated.push(n);
                    }
                }
            }
            SequenceKind::DiagonalWindow => {
                for n in 1..=len {
                    let (y, flag) = self.window_point(n, n, x)?;
                    entries.push((n, y));
                    if flag {
                        saturated.push(n);
                    }
                }
            }
            SequenceKind::DiagonalFiber => {
                for n in 1..=len {
                    let (y, flag) = self.fiber_point(n, n, x)?;
                    entries.push((n, y));
                    if flag {
                        saturated.push(n);
                    }
                }
            }
        }
        Ok(OrbitRecord { base: x.clone(), kind, entries, saturated })
    }

    /// `f_n^k(x)` pointwise (rotations use the exact fraction sum).
    pub fn window_point(&self, n: usize, k: usize, x: &Point) -> Result<(Point, bool)> {
        if let System::Circle(s) = self {
            let Point::Circle(c) = x else {
                return Err(Error::SpaceMismatch { expected: "circle", got: "other" });
            };
            return Ok((Point::Circle(c.rotate(&s.window_fraction(n, k))), false));
        }
        let mut y = x.clone();
        let mut saturated = false;
        for j in 0..k {
            let (next, flag) = self.step(n + j, &y)?;
            y = next;
            saturated |= flag;
        }
        Ok((y, saturated))
    }

    /// `(f_n)^k(x)` pointwise.
    pub fn fiber_point(&self, n: usize, k: usize, x: &Point) -> Result<(Point, bool)> {
        if let System::Circle(s) = self {
            let Point::Circle(c) = x else {
                return Err(Error::SpaceMismatch { expected: "circle", got: "other" });
            };
            return Ok((Point::Circle(c.rotate(&s.fiber_fraction(n, k))), false));
        }
        let mut y = x.clone();
        let mut saturated = false;
        for _ in 0..k {
            let (next, flag) = self.step(n, &y)?;
            y = next;
            saturated |= flag;
        }
        Ok((y, saturated))
    }

    /// Exact inverse window set `f_n^(-n)(V)` for PL interval families: the
    /// preimages are pulled back right to left through `f_(2n-1), ...,
    /// f_n` and returned as a merged union of closed intervals.
    pub fn inverse_window_set(
        &self,
        n: usize,
        parts: &[RationalInterval],
    ) -> Result<Vec<RationalInterval>> {
        let System::IntervalPl(_) = self else {
            return Err(Error::Unsupported(
                "inverse window sets require a piecewise-linear interval family".into(),
            ));
        };
        if parts.is_empty() {
            return Err(Error::Precondition("inverse window set of an empty union".into()));
        }
        let mut current: Vec<RationalInterval> = parts.to_vec();
        for j in (n..2 * n).rev() {
            let Map::Pl(f) = self.map_at(j)? else { unreachable!() };
            let mut next = Vec::new();
            for v in &current {
                next.extend(f.preimage_of_interval(v));
            }
            current = merge_intervals(next);
            if current.is_empty() {
                break;
            }
        }
        Ok(current)
    }
}

/// Helpers shared by tests, gallery entries, and the experiment runner.
pub fn interval_point(x: Rational) -> Result<Point> {
    Ok(Point::Interval(IntervalPoint::new(x)?))
}

pub fn circle_point(x: Rational) -> Point {
    Point::Circle(CirclePoint::new(x))
}

pub fn cantor_point(bits: &str) -> Result<Point> {
    Ok(Point::Cantor(CantorWord::parse(bits)?))
}
