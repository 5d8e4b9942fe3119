//! Job files, parameter scans and CSV output.
//!
//! A job file is TOML:
//!
//! ```toml
//! upper = [[1.0, 1.0]]          # (a_i, A_i)
//! lower = [[3.0, 1.0]]          # (b_j, B_j)
//! rho = 0.5                     # optional, for T8_INEQ / TY8_INEQ
//! tol = 1e-14                   # optional series controls
//! max_terms = 10000
//!
//! [grid]                        # optional, defaults shown
//! radii = 64
//! angles = 256
//! min_radius = 0.05
//! max_radius = 0.995
//!
//! [[actions]]
//! kind = "check"
//! criteria = ["T1_CASE1", "T3"]
//!
//! [[actions]]
//! kind = "verify"
//! property = "Starlike"
//! radius = 1.0
//! augment = "none"              # or "unit_upper", "lower_two"
//!
//! [[actions]]
//! kind = "scan"
//! variable = "b1"               # a<i>, A<i>, b<j>, B<j>, 1-based
//! from = 1.5
//! to = 3.5
//! steps = 20
//! test = "inequality"           # or "criterion", "property"
//! criterion = "TT9_INEQ"
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Deserialize;

use crate::criteria::{check_theorem_with_rho, coefficient_inequality, CriterionId, Overall};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{verify_property_with, DiscGrid, PropertyKind};
use crate::params::{FWParams, Pair};
use crate::series::{FoxWrightSeries, SeriesControl};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    upper: Vec<[f64; 2]>,
    lower: Vec<[f64; 2]>,
    rho: Option<f64>,
    tol: Option<f64>,
    max_terms: Option<usize>,
    grid: Option<RawGrid>,
    actions: Vec<RawAction>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    radii: Option<usize>,
    angles: Option<usize>,
    min_radius: Option<f64>,
    max_radius: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    kind: String,
    criteria: Option<Vec<String>>,
    criterion: Option<String>,
    assert_h_nonneg: Option<bool>,
    property: Option<String>,
    radius: Option<f64>,
    augment: Option<String>,
    variable: Option<String>,
    from: Option<f64>,
    to: Option<f64>,
    steps: Option<usize>,
    test: Option<String>,
}

/// Which function a property is verified on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Augment {
    #[default]
    None,
    /// Extra upper pair `(1, 1)`.
    UnitUpper,
    /// Extra lower pair `(2, 1)`.
    LowerTwo,
}

impl Augment {
    pub fn apply(self, params: &FWParams) -> Result<FWParams> {
        match self {
            Augment::None => Ok(params.clone()),
            Augment::UnitUpper => params.with_unit_upper(),
            Augment::LowerTwo => params.with_lower_two(),
        }
    }
}

impl FromStr for Augment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Augment::None),
            "unit_upper" => Ok(Augment::UnitUpper),
            "lower_two" => Ok(Augment::LowerTwo),
            _ => Err(Error::Parse(format!(
                "augment must be one of none, unit_upper, lower_two; got '{s}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// A single scalar of the parameter tuple, e.g. `b1` or `A2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanVar {
    pub side: Side,
    /// 0-based pair index.
    pub index: usize,
    pub weight: bool,
}

impl ScanVar {
    pub fn apply(&self, params: &FWParams, value: f64) -> Result<FWParams> {
        let mut up = params.upper().to_vec();
        let mut lo = params.lower().to_vec();
        let list = match self.side {
            Side::Upper => &mut up,
            Side::Lower => &mut lo,
        };
        let pair = list
            .get_mut(self.index)
            .ok_or_else(|| Error::Usage(format!("scan variable {self} has no matching pair")))?;
        if self.weight {
            pair.weight = value;
        } else {
            pair.value = value;
        }
        FWParams::new(up, lo)
    }
}

impl FromStr for ScanVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "scan variable must look like a1, A1, b2 or B2; got '{s}'"
            ))
        };
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let (side, weight) = match head {
            'a' => (Side::Upper, false),
            'A' => (Side::Upper, true),
            'b' => (Side::Lower, false),
            'B' => (Side::Lower, true),
            _ => return Err(bad()),
        };
        Ok(ScanVar {
            side,
            index: n - 1,
            weight,
        })
    }
}

impl std::fmt::Display for ScanVar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match (self.side, self.weight) {
            (Side::Upper, false) => 'a',
            (Side::Upper, true) => 'A',
            (Side::Lower, false) => 'b',
            (Side::Lower, true) => 'B',
        };
        write!(f, "{c}{}", self.index + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanTest {
    /// Smallest check margin of a criterion; passes unless a check fails.
    Criterion {
        id: CriterionId,
        assert_h_nonneg: bool,
    },
    /// Margin of the coefficient inequality alone.
    Inequality(CriterionId),
    Property {
        kind: PropertyKind,
        radius: f64,
        augment: Augment,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub variable: ScanVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub test: ScanTest,
}

impl ScanSpec {
    pub fn values(&self) -> Vec<f64> {
        let span = self.to - self.from;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.to
                } else {
                    self.from + span * i as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Check {
        criteria: Vec<CriterionId>,
        assert_h_nonneg: bool,
    },
    Verify {
        kind: PropertyKind,
        radius: f64,
        augment: Augment,
    },
    Scan(ScanSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub params: FWParams,
    pub rho: Option<f64>,
    pub control: SeriesControl,
    pub grid: DiscGrid,
    pub actions: Vec<Action>,
}

fn required<T>(v: Option<T>, action: usize, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("actions[{action}]: missing required key '{field}'")))
}

fn field_err(action: usize, e: Error) -> Error {
    let msg = match e {
        Error::Parse(m) | Error::Usage(m) | Error::Constraint(m) => m,
        other => other.to_string(),
    };
    Error::Parse(format!("actions[{action}]: {msg}"))
}

fn reject_extra(raw: &RawAction, i: usize, allowed: &[&str]) -> Result<()> {
    let present = [
        ("criteria", raw.criteria.is_some()),
        ("criterion", raw.criterion.is_some()),
        ("assert_h_nonneg", raw.assert_h_nonneg.is_some()),
        ("property", raw.property.is_some()),
        ("radius", raw.radius.is_some()),
        ("augment", raw.augment.is_some()),
        ("variable", raw.variable.is_some()),
        ("from", raw.from.is_some()),
        ("to", raw.to.is_some()),
        ("steps", raw.steps.is_some()),
        ("test", raw.test.is_some()),
    ];
    match present.iter().find(|(k, set)| *set && !allowed.contains(k)) {
        Some((k, _)) => Err(Error::Parse(format!(
            "actions[{i}]: key '{k}' is not valid for kind = \"{}\"",
            raw.kind
        ))),
        None => Ok(()),
    }
}

fn parse_radius(r: Option<f64>, i: usize) -> Result<f64> {
    let r = r.unwrap_or(1.0);
    if r > 0.0 && r <= 1.0 {
        Ok(r)
    } else {
        Err(Error::Parse(format!(
            "actions[{i}]: radius must lie in (0, 1], got {r}"
        )))
    }
}

fn convert_action(raw: RawAction, i: usize) -> Result<Action> {
    let fe = |e| field_err(i, e);
    match raw.kind.as_str() {
        "check" => {
            reject_extra(&raw, i, &["criteria", "assert_h_nonneg"])?;
            let names = required(raw.criteria, i, "criteria")?;
            if names.is_empty() {
                return Err(Error::Parse(format!(
                    "actions[{i}]: criteria list is empty"
                )));
            }
            let criteria = names
                .iter()
                .map(|s| s.parse::<CriterionId>())
                .collect::<Result<Vec<_>>>()
                .map_err(fe)?;
            Ok(Action::Check {
                criteria,
                assert_h_nonneg: raw.assert_h_nonneg.unwrap_or(false),
            })
        }
        "verify" => {
            reject_extra(&raw, i, &["property", "radius", "augment"])?;
            let kind = required(raw.property, i, "property")?.parse().map_err(fe)?;
            Ok(Action::Verify {
                kind,
                radius: parse_radius(raw.radius, i)?,
                augment: raw
                    .augment
                    .as_deref()
                    .unwrap_or("none")
                    .parse()
                    .map_err(fe)?,
            })
        }
        "scan" => {
            let test_name = required(raw.test.clone(), i, "test")?;
            let test = match test_name.as_str() {
                "criterion" => {
                    reject_extra(
                        &raw,
                        i,
                        &[
                            "variable",
                            "from",
                            "to",
                            "steps",
                            "test",
                            "criterion",
                            "assert_h_nonneg",
                        ],
                    )?;
                    ScanTest::Criterion {
                        id: required(raw.criterion.clone(), i, "criterion")?
                            .parse()
                            .map_err(fe)?,
                        assert_h_nonneg: raw.assert_h_nonneg.unwrap_or(false),
                    }
                }
                "inequality" => {
                    reject_extra(
                        &raw,
                        i,
                        &["variable", "from", "to", "steps", "test", "criterion"],
                    )?;
                    ScanTest::Inequality(
                        required(raw.criterion.clone(), i, "criterion")?
                            .parse()
                            .map_err(fe)?,
                    )
                }
                "property" => {
                    reject_extra(
                        &raw,
                        i,
                        &[
                            "variable", "from", "to", "steps", "test", "property", "radius",
                            "augment",
                        ],
                    )?;
                    ScanTest::Property {
                        kind: required(raw.property.clone(), i, "property")?
                            .parse()
                            .map_err(fe)?,
                        radius: parse_radius(raw.radius, i)?,
                        augment: raw
                            .augment
                            .as_deref()
                            .unwrap_or("none")
                            .parse()
                            .map_err(fe)?,
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                    "actions[{i}]: test must be criterion, inequality or property; got '{other}'"
                )))
                }
            };
            let from = required(raw.from, i, "from")?;
            let to = required(raw.to, i, "to")?;
            let steps = required(raw.steps, i, "steps")?;
            if !(from.is_finite() && to.is_finite()) {
                return Err(Error::Parse(format!(
                    "actions[{i}]: scan bounds must be finite"
                )));
            }
            if steps < 2 {
                return Err(Error::Parse(format!(
                    "actions[{i}]: scan needs at least 2 steps, got {steps}"
                )));
            }
            Ok(Action::Scan(ScanSpec {
                variable: required(raw.variable, i, "variable")?.parse().map_err(fe)?,
                from,
                to,
                steps,
                test,
            }))
        }
        other => Err(Error::Parse(format!(
            "actions[{i}]: kind must be check, verify or scan; got '{other}'"
        ))),
    }
}

pub fn parse_job(text: &[u8]) -> Result<JobSpec> {
    let text = std::str::from_utf8(text)
        .map_err(|e| Error::Parse(format!("job file is not UTF-8: {e}")))?;
    let raw: RawJob =
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))?;
    let params = FWParams::new(
        raw.upper.iter().map(|p| Pair::new(p[0], p[1])),
        raw.lower.iter().map(|p| Pair::new(p[0], p[1])),
    )
    .map_err(|e| Error::Parse(e.to_string()))?;
    if let Some(r) = raw.rho {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Parse(format!("rho must be positive, got {r}")));
        }
    }
    let defaults = SeriesControl::default();
    let control = SeriesControl::new(
        raw.tol.unwrap_or(defaults.tol()),
        raw.max_terms.unwrap_or(defaults.max_terms()),
        defaults.min_terms(),
    )
    .map_err(|e| Error::Parse(e.to_string()))?;
    let grid = match raw.grid {
        None => DiscGrid::default(),
        Some(g) => DiscGrid::geometric(
            g.radii.unwrap_or(crate::geometry::DEFAULT_RADII),
            g.angles.unwrap_or(crate::geometry::DEFAULT_ANGLES),
            g.min_radius.unwrap_or(crate::geometry::DEFAULT_MIN_RADIUS),
            g.max_radius.unwrap_or(crate::geometry::DEFAULT_MAX_RADIUS),
        )
        .map_err(|e| Error::Parse(format!("grid: {e}")))?,
    };
    if raw.actions.is_empty() {
        return Err(Error::Parse("at least one action is required".into()));
    }
    let actions = raw
        .actions
        .into_iter()
        .enumerate()
        .map(|(i, a)| convert_action(a, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(JobSpec {
        params,
        rho: raw.rho,
        control,
        grid,
        actions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub value: f64,
    pub margin: f64,
    pub pass: bool,
}

fn scan_point(job: &JobSpec, spec: &ScanSpec, value: f64) -> Result<ScanRow> {
    let params = spec.variable.apply(&job.params, value)?;
    let (margin, pass) = match &spec.test {
        ScanTest::Criterion {
            id,
            assert_h_nonneg,
        } => {
            let r = check_theorem_with_rho(*id, &params, *assert_h_nonneg, job.rho)?;
            (r.min_margin(), r.overall != Overall::Fail)
        }
        ScanTest::Inequality(id) => {
            let rho = job.rho.unwrap_or_else(|| params.rho());
            let r = coefficient_inequality(*id, &params, rho)?;
            (r.margin, r.holds)
        }
        ScanTest::Property {
            kind,
            radius,
            augment,
        } => {
            let f =
                FoxWrightSeries::new(augment.apply(&params)?, job.control, job.grid.max_radius())?;
            // the outer scan is already parallel
            let r = verify_property_with(&f, *kind, &job.grid, *radius, Execution::Sequential)?;
            (r.min_margin, r.pass)
        }
    };
    Ok(ScanRow {
        value,
        margin,
        pass,
    })
}

/// Evaluates every scan step; the first error in step order is returned.
pub fn run_scan(job: &JobSpec, spec: &ScanSpec, exec: Execution) -> Result<Vec<ScanRow>> {
    let values = spec.values();
    exec.map(values.len(), |i| scan_point(job, spec, values[i]))
        .into_iter()
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// CSV with columns `<header>,margin,pass`, rows sorted by scan value,
/// floats at 17 significant digits, LF line endings.
pub fn write_scan_csv(rows: &[ScanRow], header: &str) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Usage("no scan rows to write".into()));
    }
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut out = format!("{},margin,pass\n", csv_field(header));
    for r in &sorted {
        writeln!(out, "{:.16e},{:.16e},{}", r.value, r.margin, r.pass)
            .expect("writing to a String");
    }
    Ok(out)
}

/// Inverse of [`write_scan_csv`]; returns the first header field and the rows.
pub fn read_scan_csv(text: &str) -> Result<(String, Vec<ScanRow>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV".into()))?;
    let name = match header.strip_suffix(",margin,pass") {
        Some(n) if n.starts_with('"') => n[1..n.len() - 1].replace("\"\"", "\""),
        Some(n) => n.to_string(),
        None => return Err(Error::Parse(format!("unexpected CSV header '{header}'"))),
    };
    let rows = lines
        .enumerate()
        .map(|(i, line)| {
            let bad = || Error::Parse(format!("CSV line {}: cannot read '{line}'", i + 2));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 3 {
                return Err(bad());
            }
            Ok(ScanRow {
                value: f[0].parse().map_err(|_| bad())?,
                margin: f[1].parse().map_err(|_| bad())?,
                pass: f[2].parse().map_err(|_| bad())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((name, rows))
}
