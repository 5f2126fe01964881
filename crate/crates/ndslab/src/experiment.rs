//! Declarative experiment runner: a single JSON config names a system, a
//! list of checks, truncation parameters, and an output target; running it
//! produces machine-readable reports (JSON-lines or CSV) plus a
//! human-readable summary. Running the same config twice produces
//! byte-identical report files.
//!
//! Exit-code contract (enforced by the CLI binary): 0 all checks ran and
//! no structural-law or assertion failure; 1 such a failure occurred;
//! 2 the config failed schema validation; 3 an execution error.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, check_eventual_equality, check_prefix_agreement, check_transitivity_equivalence,
    find_invariant_interval, test_sensitivity, test_transitivity,
};
use crate::conditions::{
    check_cc, check_ccstar, check_do, check_dostar, check_l, check_lstar, SweepParams,
};
use crate::maps::{Map, PLMap};
use crate::nds::{PerturbationRule, System};
use crate::rational::Rational;
use crate::space::{CantorWord, CirclePoint, IntervalPoint, Point, RationalInterval, SpaceTag};
use crate::{Error, Result};

/// A piecewise-linear map as it appears in configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlMapSpec {
    pub breakpoints: Vec<Rational>,
    pub values: Vec<Rational>,
}

impl PlMapSpec {
    pub fn resolve(&self) -> Result<PLMap> {
        PLMap::new(self.breakpoints.clone(), self.values.clone())
    }

    pub fn of(map: &PLMap) -> PlMapSpec {
        PlMapSpec { breakpoints: map.breakpoints().to_vec(), values: map.values().to_vec() }
    }
}

/// Named system families available to configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Circle rotations by `1/2^n`; limit identity.
    HalvingRotations,
    /// Rational rotations along golden convergents; tagged irrational
    /// limit.
    GoldenRotations,
    /// Odometer truncations on binary words.
    OdometerTruncations { word_length: usize },
    /// The bump-train family.
    BumpTrain,
    /// Constant family `f_n = map`.
    ConstantPl { map: PlMapSpec },
    /// Explicit PL prefix, then constant at the limit.
    PlPrefix { prefix: Vec<PlMapSpec>, limit: PlMapSpec },
    /// Limit plus a shrinking triangular bump (`amp / 2^n`) at a fixed
    /// support, present at every index.
    PerturbedPl { limit: PlMapSpec, support: [Rational; 2], amp: Rational },
}

impl FamilySpec {
    fn space(&self) -> SpaceTag {
        match self {
            FamilySpec::HalvingRotations | FamilySpec::GoldenRotations => SpaceTag::Circle,
            FamilySpec::OdometerTruncations { .. } => SpaceTag::Cantor,
            _ => SpaceTag::Interval,
        }
    }

    pub fn resolve(&self) -> Result<System> {
        match self {
            FamilySpec::HalvingRotations => Ok(System::halving_rotations()),
            FamilySpec::GoldenRotations => Ok(System::golden_rotations()),
            FamilySpec::OdometerTruncations { word_length } => System::odometer(*word_length),
            FamilySpec::BumpTrain => Ok(System::bump_train()),
            FamilySpec::ConstantPl { map } => Ok(System::constant_interval(map.resolve()?)),
            FamilySpec::PlPrefix { prefix, limit } => Ok(System::interval_prefix(
                prefix.iter().map(|m| m.resolve()).collect::<Result<_>>()?,
                limit.resolve()?,
            )),
            FamilySpec::PerturbedPl { limit, support, amp } => {
                let support = RationalInterval::new(support[0].clone(), support[1].clone())?;
                System::interval_perturbed(limit.resolve()?, PerturbationRule {
                    support,
                    amp: amp.clone(),
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub space: SpaceTag,
    pub family: FamilySpec,
}

impl SystemSpec {
    pub fn resolve(&self) -> Result<System> {
        if self.family.space() != self.space {
            return Err(Error::Config(format!(
                "system.space is {} but the family lives on the {} space",
                self.space,
                self.family.space()
            )));
        }
        self.family.resolve()
    }
}

/// A base point in configs: a `"p/q"` fraction (interval/circle) or a bit
/// string (Cantor).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Fraction(Rational),
    Word(String),
}

impl PointSpec {
    fn resolve(&self, space: SpaceTag) -> Result<Point> {
        match (self, space) {
            (PointSpec::Fraction(x), SpaceTag::Interval) => {
                Ok(Point::Interval(IntervalPoint::new(x.clone())?))
            }
            (PointSpec::Fraction(x), SpaceTag::Circle) => {
                Ok(Point::Circle(CirclePoint::new(x.clone())))
            }
            (PointSpec::Word(w), SpaceTag::Cantor) => Ok(Point::Cantor(CantorWord::parse(w)?)),
            _ => Err(Error::Config(format!("base point {self:?} does not fit the {space} space"))),
        }
    }
}

/// Truncation parameters shared by the checks of one config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TruncationSpec {
    pub n_max: usize,
    pub k_max: usize,
    /// Cantor word length; must agree with the family when both are given.
    pub word_length: Option<usize>,
    pub eps_list: Vec<Rational>,
    pub horizon: usize,
    pub grid_denom: u32,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            n_max: 32,
            k_max: 4096,
            word_length: None,
            eps_list: vec![Rational::new(1, 8), Rational::new(1, 32), Rational::new(1, 128)],
            horizon: 16,
            grid_denom: 64,
        }
    }
}

impl TruncationSpec {
    fn sweep(&self) -> SweepParams {
        SweepParams {
            n_max: self.n_max,
            k_max: self.k_max,
            grid_denom: self.grid_denom,
            ..SweepParams::default()
        }
    }
}

/// One requested check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckSpec {
    CheckCc { eps: Option<Rational> },
    #[serde(rename = "check_ccstar")]
    CheckCcStar { eps: Option<Rational> },
    CheckL {},
    #[serde(rename = "check_lstar")]
    CheckLStar {},
    CheckDo { x0: PointSpec, eps: Option<Rational> },
    #[serde(rename = "check_dostar")]
    CheckDoStar { x0: PointSpec, eps: Option<Rational> },
    /// Transitivity of the limit map (or of fiber `n`, when given).
    TestTransitivity { fiber: Option<usize>, eps: Option<Rational>, horizon: Option<usize> },
    TestSensitivity { delta: Rational, probe_eps: Rational, probe_denom: i64 },
    /// Agreement measure of fiber `n` against the limit.
    AgreementMeasure { fiber: usize, region: Option<[Rational; 2]> },
    EventualEquality { eps: Option<Rational> },
    TransitivityEquivalence { eps: Option<Rational>, n_search: Option<usize> },
    FixedPointInclusion { fiber: usize, depth: usize },
    PrefixAgreement { fixed_point: Rational, depth: usize },
    InvariantInterval { seed: [Rational; 2], max_rounds: usize },
}

impl CheckSpec {
    pub fn op_name(&self) -> &'static str {
        match self {
            CheckSpec::CheckCc { .. } => "check_cc",
            CheckSpec::CheckCcStar { .. } => "check_ccstar",
            CheckSpec::CheckL {} => "check_l",
            CheckSpec::CheckLStar {} => "check_lstar",
            CheckSpec::CheckDo { .. } => "check_do",
            CheckSpec::CheckDoStar { .. } => "check_dostar",
            CheckSpec::TestTransitivity { .. } => "test_transitivity",
            CheckSpec::TestSensitivity { .. } => "test_sensitivity",
            CheckSpec::AgreementMeasure { .. } => "agreement_measure",
            CheckSpec::EventualEquality { .. } => "eventual_equality",
            CheckSpec::TransitivityEquivalence { .. } => "transitivity_equivalence",
            CheckSpec::FixedPointInclusion { .. } => "fixed_point_inclusion",
            CheckSpec::PrefixAgreement { .. } => "prefix_agreement",
            CheckSpec::InvariantInterval { .. } => "invariant_interval",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub format: OutputFormat,
    pub path: PathBuf,
}

/// A complete experiment description. Unknown fields anywhere are
/// rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub system: SystemSpec,
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub truncation: TruncationSpec,
    pub output: OutputSpec,
}

impl ExperimentConfig {
    pub fn from_json(json: &str) -> Result<ExperimentConfig> {
        let config: ExperimentConfig =
            serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.system.resolve()?;
        if let (Some(l), FamilySpec::OdometerTruncations { word_length }) =
            (self.truncation.word_length, &self.system.family)
        {
            if l != *word_length {
                return Err(Error::Config(format!(
                    "truncation.word_length = {l} disagrees with the family word_length = \
                     {word_length}"
                )));
            }
        }
        if self.truncation.n_max == 0 {
            return Err(Error::Config("truncation.n_max must be positive".into()));
        }
        for (i, eps) in self.truncation.eps_list.iter().enumerate() {
            if eps <= &Rational::zero() {
                return Err(Error::Config(format!(
                    "truncation.eps_list[{i}] = {eps} must be positive"
                )));
            }
        }
        for (i, check) in self.checks.iter().enumerate() {
            let bad_eps = |eps: &Option<Rational>| {
                eps.as_ref().is_some_and(|e| e <= &Rational::zero())
            };
            let field = |name: &str| format!("checks[{i}].{name}");
            match check {
                CheckSpec::CheckCc { eps }
                | CheckSpec::CheckCcStar { eps }
                | CheckSpec::CheckDo { eps, .. }
                | CheckSpec::CheckDoStar { eps, .. }
                | CheckSpec::TestTransitivity { eps, .. }
                | CheckSpec::EventualEquality { eps }
                | CheckSpec::TransitivityEquivalence { eps, .. } => {
                    if bad_eps(eps) {
                        return Err(Error::Config(format!("{} must be positive", field("eps"))));
                    }
                }
                CheckSpec::TestSensitivity { delta, probe_eps, probe_denom } => {
                    if delta <= &Rational::zero() {
                        return Err(Error::Config(format!("{} must be positive", field("delta"))));
                    }
                    if probe_eps <= &Rational::zero() {
                        return Err(Error::Config(format!(
                            "{} must be positive",
                            field("probe_eps")
                        )));
                    }
                    if *probe_denom < 1 {
                        return Err(Error::Config(format!(
                            "{} must be positive",
                            field("probe_denom")
                        )));
                    }
                }
                CheckSpec::AgreementMeasure { fiber, .. }
                | CheckSpec::FixedPointInclusion { fiber, .. }
                    if *fiber == 0 =>
                {
                    return Err(Error::Config(format!(
                        "{} is 1-based and must be positive",
                        field("fiber")
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// One executed check: its name, parameters echo, the full report as a
/// JSON value, and whether it revealed a structural-law failure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub index: usize,
    pub op: String,
    pub report: serde_json::Value,
    /// A structural expectation (eventual-equality law, equivalence
    /// consistency, gallery-style assertion) failed. Conditions that merely
    /// fail-with-witness are results, not failures.
    pub law_failure: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunOutcome {
    pub records: Vec<CheckRecord>,
    pub failures: usize,
    pub summary: Vec<String>,
    pub output_path: PathBuf,
}

fn run_check(
    sys: &System,
    check: &CheckSpec,
    trunc: &TruncationSpec,
    index: usize,
) -> Result<CheckRecord> {
    let sweep = trunc.sweep();
    let default_eps =
        trunc.eps_list.first().cloned().unwrap_or_else(|| Rational::new(1, 8));
    let mut law_failure = false;
    let summary_verdict;

    let report: serde_json::Value = match check {
        CheckSpec::CheckCc { eps } => {
            let r = check_cc(sys, eps.as_ref().unwrap_or(&default_eps), &sweep)?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::CheckCcStar { eps } => {
            let r = check_ccstar(sys, eps.as_ref().unwrap_or(&default_eps), &sweep)?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::CheckL {} => {
            let r = check_l(sys, &sweep)?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::CheckLStar {} => {
            let r = check_lstar(sys, &sweep)?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::CheckDo { x0, eps } => {
            let x0 = x0.resolve(sys.space())?;
            let r = check_do(sys, &x0, eps.as_ref().unwrap_or(&default_eps), &sweep)?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::CheckDoStar { x0, eps } => {
            let x0 = x0.resolve(sys.space())?;
            let r = check_dostar(sys, &x0, eps.as_ref().unwrap_or(&default_eps), &sweep)?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::TestTransitivity { fiber, eps, horizon } => {
            let map = match fiber {
                None => sys.limit(),
                Some(n) => sys.map_at(*n)?,
            };
            let r = test_transitivity(
                &map,
                eps.as_ref().unwrap_or(&default_eps),
                horizon.unwrap_or(trunc.horizon),
            )?;
            summary_verdict = format!("{:?}", r.verdict);
            serde_json::to_value(&r)?
        }
        CheckSpec::TestSensitivity { delta, probe_eps, probe_denom } => {
            let probes: Vec<Rational> =
                (0..=*probe_denom).map(|i| Rational::new(i, *probe_denom)).collect();
            let r = test_sensitivity(&sys.limit(), delta, probe_eps, trunc.horizon, &probes)?;
            summary_verdict = format!(
                "{} witnesses / {} probes",
                r.witnesses.len(),
                r.witnesses.len() + r.failures.len()
            );
            serde_json::to_value(&r)?
        }
        CheckSpec::AgreementMeasure { fiber, region } => {
            let region = match region {
                None => RationalInterval::unit(),
                Some([lo, hi]) => RationalInterval::new(lo.clone(), hi.clone())?,
            };
            let value = analysis::agreement_measure(&sys.map_at(*fiber)?, &sys.limit(), &region)?;
            summary_verdict = format!("measure {value}");
            serde_json::json!({
                "fiber": fiber,
                "region": [region.lo(), region.hi()],
                "agreement_measure": value,
            })
        }
        CheckSpec::EventualEquality { eps } => {
            let r = check_eventual_equality(sys, eps.as_ref().unwrap_or(&default_eps), &sweep)?;
            law_failure = r.theorem_check_failure;
            summary_verdict = match (&r.minimal_n0, r.theorem_check_failure) {
                (Some(n0), _) => format!("agrees from n0 = {n0}"),
                (None, false) => "no agreement; (CC*) violation witnessed".to_string(),
                (None, true) => "THEOREM-CHECK FAILURE".to_string(),
            };
            serde_json::to_value(&r)?
        }
        CheckSpec::TransitivityEquivalence { eps, n_search } => {
            let eps = eps.as_ref().unwrap_or(&default_eps);
            let n_search = n_search.unwrap_or(trunc.n_max);
            let r =
                check_transitivity_equivalence(sys, eps, n_search, trunc.horizon, &sweep)?;
            law_failure = r.instance_check_failure();
            summary_verdict = if r.hypothesis_unmet {
                "hypothesis (L) unmet".to_string()
            } else {
                format!(
                    "hitting={:?} dense={:?} transitive={:?} consistent={:?}",
                    r.window_hitting, r.dense_diagonal, r.limit_transitive, r.consistent
                )
            };
            serde_json::to_value(&r)?
        }
        CheckSpec::FixedPointInclusion { fiber, depth } => {
            let r = analysis::check_fix_inclusion_maps(&sys.limit(), &sys.map_at(*fiber)?, *depth)?;
            summary_verdict =
                if r.agrees() { "trees agree".to_string() } else { "discrepancy".to_string() };
            serde_json::to_value(&r)?
        }
        CheckSpec::PrefixAgreement { fixed_point, depth } => {
            let r = check_prefix_agreement(sys, fixed_point, *depth, trunc.n_max)?;
            summary_verdict = format!("max n0 = {:?}", r.max_n0());
            serde_json::to_value(&r)?
        }
        CheckSpec::InvariantInterval { seed, max_rounds } => {
            let Map::Pl(limit) = sys.limit() else {
                return Err(Error::Unsupported(
                    "invariant intervals require a PL limit map".into(),
                ));
            };
            let seed = RationalInterval::new(seed[0].clone(), seed[1].clone())?;
            let r = find_invariant_interval(&limit, &seed, *max_rounds)?;
            summary_verdict = format!("{r:?}");
            serde_json::to_value(&r)?
        }
    };

    Ok(CheckRecord {
        index,
        op: format!("{} [{summary_verdict}]", check.op_name()),
        report,
        law_failure,
    })
}

/// Execute a config: run every check (in declaration order), write the
/// report file, and return the outcome. Report writing is serialized and
/// deterministic.
pub fn run_config(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let sys = config.system.resolve()?;
    let mut records = Vec::with_capacity(config.checks.len());
    for (i, check) in config.checks.iter().enumerate() {
        records.push(run_check(&sys, check, &config.truncation, i)?);
    }

    let failures = records.iter().filter(|r| r.law_failure).count();
    let summary: Vec<String> = records
        .iter()
        .map(|r| {
            format!("{:>3}  {}  {}", r.index, if r.law_failure { "FAIL" } else { "ok  " }, r.op)
        })
        .collect();

    let mut file = std::io::BufWriter::new(std::fs::File::create(&config.output.path)?);
    match config.output.format {
        OutputFormat::Jsonl => {
            for r in &records {
                let line = serde_json::json!({
                    "check": r.index,
                    "op": r.op.split(' ').next().unwrap_or(&r.op),
                    "law_failure": r.law_failure,
                    "report": r.report,
                });
                writeln!(file, "{}", serde_json::to_string(&line)?)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(file, "check,op,n,value,value_decimal")?;
            for r in &records {
                let op = r.op.split(' ').next().unwrap_or(&r.op).to_string();
                if let Some(trace) = r.report.get("trace").and_then(|t| t.as_array()) {
                    for pair in trace {
                        let (Some(n), Some(v)) = (pair.get(0), pair.get(1)) else { continue };
                        let v = v.as_str().unwrap_or_default();
                        let dec = Rational::parse(v)
                            .map(|r| r.to_decimal_string(12))
                            .unwrap_or_default();
                        writeln!(file, "{},{},{},{},{}", r.index, op, n, v, dec)?;
                    }
                } else {
                    writeln!(file, "{},{},,{},", r.index, op,
                        if r.law_failure { "FAIL" } else { "ok" })?;
                }
            }
        }
    }
    file.flush()?;

    Ok(RunOutcome { records, failures, summary, output_path: config.output.path.clone() })
}

/// Read, validate, and execute a config file.
pub fn run_config_file(path: &Path) -> Result<RunOutcome> {
    let json = std::fs::read_to_string(path)?;
    let config = ExperimentConfig::from_json(&json)?;
    run_config(&config)
}

/// Plot-data kinds extractable from a JSONL report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Trace,
    Coverage,
    PairMatrix,
}

impl std::str::FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<PlotKind> {
        match s {
            "trace" => Ok(PlotKind::Trace),
            "coverage" => Ok(PlotKind::Coverage),
            "pair-matrix" => Ok(PlotKind::PairMatrix),
            other => Err(Error::Config(format!(
                "unknown plot kind {other:?} (trace | coverage | pair-matrix)"
            ))),
        }
    }
}

/// Flatten the requested series of a JSONL report into CSV. Exact `"p/q"`
/// values are kept, with 12-significant-digit decimal approximations in a
/// separate column. Errors when the report has no record of that kind.
pub fn emit_plot_data(report_path: &Path, kind: PlotKind) -> Result<String> {
    let text = std::fs::read_to_string(report_path)?;
    let mut out = String::new();
    let mut found = false;
    match kind {
        PlotKind::Trace | PlotKind::Coverage => {
            out.push_str("check,op,n,value,value_decimal\n");
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let record: serde_json::Value = serde_json::from_str(line)?;
                let op = record.get("op").and_then(|o| o.as_str()).unwrap_or_default();
                let is_coverage = op == "check_do" || op == "check_dostar";
                if (kind == PlotKind::Coverage) != is_coverage {
                    continue;
                }
                let Some(trace) =
                    record.pointer("/report/trace").and_then(|t| t.as_array())
                else {
                    continue;
                };
                let check = record.get("check").and_then(|c| c.as_u64()).unwrap_or(0);
                for pair in trace {
                    let (Some(n), Some(v)) = (pair.get(0), pair.get(1)) else { continue };
                    let v = v.as_str().unwrap_or_default();
                    let dec = Rational::parse(v)
                        .map(|r| r.to_decimal_string(12))
                        .unwrap_or_default();
                    out.push_str(&format!("{check},{op},{n},{v},{dec}\n"));
                    found = true;
                }
            }
        }
        PlotKind::PairMatrix => {
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let record: serde_json::Value = serde_json::from_str(line)?;
                let Some(pairs) =
                    record.pointer("/report/pair_table").and_then(|t| t.as_array())
                else {
                    continue;
                };
                let cells = record
                    .pointer("/report/cells")
                    .and_then(|c| c.as_array())
                    .map(|c| c.len())
                    .unwrap_or(0);
                if cells == 0 || pairs.is_empty() {
                    continue;
                }
                // Header row: target indices.
                out.push_str("u\\v");
                for v in 0..cells {
                    out.push_str(&format!(",{v}"));
                }
                out.push('\n');
                let mut matrix = vec![vec![-1i64; cells]; cells];
                for p in pairs {
                    let (Some(u), Some(v)) = (
                        p.get("u").and_then(|x| x.as_u64()),
                        p.get("v").and_then(|x| x.as_u64()),
                    ) else {
                        continue;
                    };
                    let hit = p.get("hit_at").and_then(|x| x.as_u64()).map_or(-1, |h| h as i64);
                    matrix[u as usize][v as usize] = hit;
                }
                for (u, row) in matrix.iter().enumerate() {
                    out.push_str(&u.to_string());
                    for cell in row {
                        out.push_str(&format!(",{cell}"));
                    }
                    out.push('\n');
                }
                found = true;
                break; // one matrix per emission
            }
        }
    }
    if !found {
        return Err(Error::Config(format!("report has no {kind:?} series")));
    }
    Ok(out)
}

/// Configure the global worker pool from an environment variable (used by
/// the CLI before any parallel work starts). Unset or invalid values keep
/// the default pool.
pub fn init_worker_pool(env_var: &str) {
    if let Ok(v) = std::env::var(env_var) {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
