//! Hypothesis predicates for the sufficient conditions, coefficient-sequence
//! tests, the exponential upper bound for `pΨp`, and closed-form parameter
//! thresholds.
//!
//! Every hypothesis becomes a named [`Check`] with a numeric margin. A margin
//! is non-negative exactly when the hypothesis holds (up to [`CMP_TOL`]);
//! strict inequalities additionally require a positive margin. Products of
//! gamma functions are compared in log space and reported as relative
//! margins `1 - rhs/lhs`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gamma::{gamma_min_abscissa, ln_gamma_ratio_unchecked};
use crate::params::{convergence, FWParams, Pair, Verdict};
use crate::series::{coefficient, CoefficientWindow};

/// Absolute tolerance for every comparison in this module.
pub const CMP_TOL: f64 = 1e-12;

/// Default number of sequence terms examined by the coefficient tests.
pub const DEFAULT_PREFIX: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriterionId {
    T1Case1,
    T1Case2,
    T1Case3,
    T2,
    T3,
    H2,
    T8Ineq,
    TT9Ineq,
    TY8Ineq,
    Rrr1Ineq,
}

impl CriterionId {
    pub const ALL: [CriterionId; 10] = [
        CriterionId::T1Case1,
        CriterionId::T1Case2,
        CriterionId::T1Case3,
        CriterionId::T2,
        CriterionId::T3,
        CriterionId::H2,
        CriterionId::T8Ineq,
        CriterionId::TT9Ineq,
        CriterionId::TY8Ineq,
        CriterionId::Rrr1Ineq,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionId::T1Case1 => "T1_CASE1",
            CriterionId::T1Case2 => "T1_CASE2",
            CriterionId::T1Case3 => "T1_CASE3",
            CriterionId::T2 => "T2",
            CriterionId::T3 => "T3",
            CriterionId::H2 => "H2",
            CriterionId::T8Ineq => "T8_INEQ",
            CriterionId::TT9Ineq => "TT9_INEQ",
            CriterionId::TY8Ineq => "TY8_INEQ",
            CriterionId::Rrr1Ineq => "RRR1_INEQ",
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown criterion id '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub margin: f64,
}

impl Check {
    fn at_least(name: impl Into<String>, margin: f64) -> Self {
        Check {
            name: name.into(),
            holds: margin >= -CMP_TOL,
            margin,
        }
    }

    fn strictly(name: impl Into<String>, margin: f64) -> Self {
        Check {
            name: name.into(),
            holds: margin > 0.0,
            margin,
        }
    }

    fn equal(name: impl Into<String>, diff: f64) -> Self {
        Check {
            name: name.into(),
            holds: diff.abs() <= CMP_TOL,
            margin: -diff.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overall {
    Pass,
    Fail,
    /// Every checkable hypothesis holds, but the conclusion also rests on a
    /// caller-asserted condition.
    ConditionalPass,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Overall::Pass => "Pass",
            Overall::Fail => "Fail",
            Overall::ConditionalPass => "ConditionalPass",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub criterion_id: CriterionId,
    pub checks: Vec<Check>,
    pub overall: Overall,
    /// The geometric property concluded when the hypotheses hold.
    pub conclusion: String,
    /// The function the conclusion is about (augmented where applicable).
    pub subject: FWParams,
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn assemble(
        id: CriterionId,
        checks: Vec<Check>,
        asserted_only: bool,
        conclusion: &str,
        subject: FWParams,
        notes: Vec<String>,
    ) -> Self {
        let overall = if checks.iter().any(|c| !c.holds) {
            Overall::Fail
        } else if asserted_only {
            Overall::ConditionalPass
        } else {
            Overall::Pass
        };
        CriterionReport {
            criterion_id: id,
            checks,
            overall,
            conclusion: conclusion.to_string(),
            subject,
            notes,
        }
    }

    /// Smallest margin among the checks.
    pub fn min_margin(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chain {
    Increasing,
    Decreasing,
    /// Constant chain: satisfies both.
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceVerdict {
    pub holds: bool,
    pub first_violation: Option<usize>,
    pub checked_prefix: usize,
    /// For coefficient-chain tests, which monotone chain was satisfied.
    pub chain: Option<Chain>,
}

fn prefix(len: usize, prefix_len: usize) -> Result<usize> {
    let n = len.min(prefix_len);
    if n < 3 {
        Err(Error::Usage(format!(
            "sequence prefix must have at least 3 terms, got {n}"
        )))
    } else {
        Ok(n)
    }
}

fn expect_leading_one(first: f64) -> Result<()> {
    if (first - 1.0).abs() > CMP_TOL {
        Err(Error::Usage(format!(
            "leading sequence term must be 1, got {first}"
        )))
    } else {
        Ok(())
    }
}

/// Monotone-chain coefficient test for `f(z) = z + Σ_{n≥2} A_n z^n`.
///
/// `coeffs[n-1]` is `A_n`. Holds if `n A_n` is non-decreasing and bounded by
/// 2, or non-increasing and non-negative, over the first `prefix_len` terms.
/// `first_violation` is the 1-based `n` where the longer-lived chain broke.
pub fn ozaki_check(coeffs: &[f64], prefix_len: usize) -> Result<SequenceVerdict> {
    let n = prefix(coeffs.len(), prefix_len)?;
    expect_leading_one(coeffs[0])?;
    let chain: Vec<f64> = coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, a)| (i + 1) as f64 * a)
        .collect();

    let mut up_fail = None;
    let mut down_fail = None;
    for i in 1..n {
        let (prev, cur) = (chain[i - 1], chain[i]);
        if up_fail.is_none() && (cur < prev - CMP_TOL || cur > 2.0 + CMP_TOL) {
            up_fail = Some(i + 1);
        }
        if down_fail.is_none() && (cur > prev + CMP_TOL || cur < -CMP_TOL) {
            down_fail = Some(i + 1);
        }
    }
    let chain_kind = match (up_fail, down_fail) {
        (None, None) => Some(Chain::Both),
        (None, Some(_)) => Some(Chain::Increasing),
        (Some(_), None) => Some(Chain::Decreasing),
        (Some(_), Some(_)) => None,
    };
    let first_violation = match (up_fail, down_fail) {
        (Some(u), Some(d)) => Some(u.max(d)),
        _ => None,
    };
    Ok(SequenceVerdict {
        holds: first_violation.is_none(),
        first_violation,
        checked_prefix: n,
        chain: chain_kind,
    })
}

/// How normalized coefficients `U_k` are mapped onto the chain test's `A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainIndexing {
    /// `A_n = U_{n-1}`, the coefficients of `Σ U_k z^{k+1}` as written.
    Literal,
    /// Chain values `1, U_1, 2U_2, 3U_3, ...`: the sequence `k U_k` with the
    /// leading term fixed at 1.
    WeightedByK,
}

/// Coefficients `A_1..A_len` for [`ozaki_check`] built from `U_0..U_{len-1}`.
pub fn ozaki_coefficients(
    params: &FWParams,
    len: usize,
    indexing: ChainIndexing,
) -> Result<Vec<f64>> {
    let u = CoefficientWindow::new(params, len)?.values();
    Ok(match indexing {
        ChainIndexing::Literal => u,
        ChainIndexing::WeightedByK => u
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == 0 {
                    1.0
                } else {
                    i as f64 * v / (i + 1) as f64
                }
            })
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    /// `{n α_n}` and `{n α_n - (n+1) α_{n+1}}` both non-increasing.
    Lemma3,
    /// Convex decreasing: `β_k - β_{k+1} ≥ 0`, `β_k - 2β_{k+1} + β_{k+2} ≥ 0`.
    Lemma4,
}

/// `first_violation` is the 0-based index of the last term involved in the
/// first failed comparison.
pub fn sequence_checks(
    kind: SequenceKind,
    seq: &[f64],
    prefix_len: usize,
) -> Result<SequenceVerdict> {
    let n = prefix(seq.len(), prefix_len)?;
    expect_leading_one(seq[0])?;
    let s = &seq[..n];
    let mut violations: Vec<usize> = Vec::new();
    if let Some(i) = s.iter().position(|v| *v < -CMP_TOL) {
        violations.push(i);
    }
    match kind {
        SequenceKind::Lemma3 => {
            let c: Vec<f64> = s
                .iter()
                .enumerate()
                .map(|(i, a)| (i + 1) as f64 * a)
                .collect();
            if let Some(i) = (0..n - 1).find(|&i| c[i + 1] > c[i] + CMP_TOL) {
                violations.push(i + 1);
            }
            let d: Vec<f64> = c.windows(2).map(|w| w[0] - w[1]).collect();
            if let Some(i) = (0..d.len() - 1).find(|&i| d[i + 1] > d[i] + CMP_TOL) {
                violations.push(i + 2);
            }
        }
        SequenceKind::Lemma4 => {
            if let Some(i) = (0..n - 1).find(|&i| s[i] - s[i + 1] < -CMP_TOL) {
                violations.push(i + 1);
            }
            if let Some(i) = (0..n - 2).find(|&i| s[i] - 2.0 * s[i + 1] + s[i + 2] < -CMP_TOL) {
                violations.push(i + 2);
            }
        }
    }
    let first_violation = violations.into_iter().min();
    Ok(SequenceVerdict {
        holds: first_violation.is_none(),
        first_violation,
        checked_prefix: n,
        chain: None,
    })
}

/// `α_k = U_k` (k ≥ 1) of the `(1,1)`-augmented parameters: the candidate
/// subordinating factor sequence attached to the half-plane bound for
/// `Re(f(z)/z)`.
pub fn subordinating_sequence(params: &FWParams, len: usize) -> Result<Vec<f64>> {
    let aug = params.with_unit_upper()?;
    (1..=len).map(|k| coefficient(&aug, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// `rhs - lhs`
    pub margin: f64,
}

fn require_square(params: &FWParams, what: &str) -> Result<()> {
    if params.p() == params.q() && params.p() > 0 {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "{what} needs p = q >= 1, got p = {}, q = {}",
            params.p(),
            params.q()
        )))
    }
}

fn common_weight(params: &FWParams) -> Option<f64> {
    let w = params.upper().first()?.weight;
    params
        .upper()
        .iter()
        .chain(params.lower())
        .all(|p| (p.weight - w).abs() <= CMP_TOL)
        .then_some(w)
}

/// Evaluates `Π [Γ(a+A)/Γ(b+B) - Γ(a+2A)/(ρ Γ(b+2B)) (1 - e^ρ)]` against
/// `c · Π Γ(a)/Γ(b)`, with `c = 1` (T8, TT9) or `c = 2/√5` (TY8, RRR1).
///
/// TT9 and RRR1 need a common weight and use `ρ = 1`; `rho` is ignored for them.
pub fn coefficient_inequality(
    id: CriterionId,
    params: &FWParams,
    rho: f64,
) -> Result<InequalityOutcome> {
    require_square(params, id.as_str())?;
    let (rho, factor) = match id {
        CriterionId::T8Ineq => (rho, 1.0),
        CriterionId::TY8Ineq => (rho, 2.0 / 5f64.sqrt()),
        CriterionId::TT9Ineq | CriterionId::Rrr1Ineq => {
            if common_weight(params).is_none() {
                return Err(Error::Usage(format!(
                    "{id} needs one common weight A on both sides"
                )));
            }
            let f = if id == CriterionId::TT9Ineq {
                1.0
            } else {
                2.0 / 5f64.sqrt()
            };
            (1.0, f)
        }
        other => {
            return Err(Error::Usage(format!(
                "{other} is not an inequality criterion"
            )));
        }
    };
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::Domain(format!("ρ must be positive, got {rho}")));
    }
    let growth = rho.exp_m1() / rho;
    let mut ln_lhs = 0.0;
    let mut ln_rhs = factor.ln();
    for (a, b) in params.upper().iter().zip(params.lower()) {
        let first = ln_gamma_ratio_unchecked(a.value + a.weight, b.value + b.weight).exp();
        let second =
            ln_gamma_ratio_unchecked(a.value + 2.0 * a.weight, b.value + 2.0 * b.weight).exp();
        ln_lhs += (first + second * growth).ln();
        ln_rhs += ln_gamma_ratio_unchecked(a.value, b.value);
    }
    let (lhs, rhs) = (ln_lhs.exp(), ln_rhs.exp());
    let margin = rhs - lhs;
    Ok(InequalityOutcome {
        lhs,
        rhs,
        // scaled like the Γ-product hypotheses: both sides can be tiny
        holds: margin >= -CMP_TOL * lhs.max(rhs),
        margin,
    })
}

/// Exponential upper bound `ψ00 - (ψ01/ρ)(1 - e^{ρz})` for `pΨp` on the real line.
pub fn luke_upper_bound(params: &FWParams, z: f64) -> Result<f64> {
    require_square(params, "luke_upper_bound")?;
    let mut ln00 = 0.0;
    let mut ln01 = 0.0;
    for (a, b) in params.upper().iter().zip(params.lower()) {
        ln00 += ln_gamma_ratio_unchecked(a.value, b.value);
        ln01 += ln_gamma_ratio_unchecked(a.value + a.weight, b.value + b.weight);
    }
    let rho = params.rho();
    Ok(ln00.exp() + ln01.exp() * (rho * z).exp_m1() / rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    /// Lower bound on `b` for convexity of `z pFp+1[a; 2, b; z]` in the half disc.
    C2,
    /// Upper bound on `a` for the `Π a_i/(a_i+k)` family.
    K1Const,
    /// Lower bound on `b` for starlikeness of `z pFp[a; b; z]` in the disc.
    FinalStarlike,
}

impl FromStr for ThresholdKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C2" => Ok(ThresholdKind::C2),
            "K1_CONST" => Ok(ThresholdKind::K1Const),
            "FINAL_STARLIKE" => Ok(ThresholdKind::FinalStarlike),
            _ => Err(Error::Parse(format!("unknown threshold kind '{s}'"))),
        }
    }
}

pub fn corollary_threshold(kind: ThresholdKind, a: f64) -> Result<f64> {
    let e = std::f64::consts::E;
    if kind == ThresholdKind::K1Const {
        return Ok((2.0 - e + (e * e + 4.0 * e - 4.0).sqrt()) / (2.0 * (e - 1.0)));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("threshold needs a > 0, got {a}")));
    }
    Ok(match kind {
        ThresholdKind::C2 => {
            (a - 1.0 + ((a + 1.0).powi(2) + 4.0 * a * (e - 1.0) * (a + 1.0)).sqrt()) / 2.0
        }
        ThresholdKind::FinalStarlike => {
            let s5 = 5f64.sqrt();
            let disc = (s5 * a - 2.0).powi(2) + 8.0 * a * s5 * (e * (a + 1.0) - a);
            (-2.0 + s5 * a + disc.sqrt()) / 4.0
        }
        ThresholdKind::K1Const => unreachable!(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma5Profile {
    pub values: Vec<f64>,
    pub nonnegative: bool,
    pub nonincreasing: bool,
}

/// `H(z) = Γ(a+Az)/Γ(b+Az) - Γ(a+A+Az)/Γ(b+A+Az)` on a grid, with its
/// sign and monotonicity flags.
///
/// Flags use a tolerance of `1e-12 · max(1, |H|)`.
pub fn lemma5_profile(a: f64, b: f64, weight: f64, grid: &[f64]) -> Result<Lemma5Profile> {
    for (name, v) in [("a", a), ("b", b), ("A", weight)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!("{name} must be positive, got {v}")));
        }
    }
    if b < a {
        return Err(Error::Constraint(format!(
            "requires b >= a, got a = {a}, b = {b}"
        )));
    }
    if grid.iter().any(|z| !(z.is_finite() && *z >= 0.0)) {
        return Err(Error::Usage(
            "grid points must be finite and non-negative".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Usage("grid must be strictly increasing".into()));
    }
    let values: Vec<f64> = grid
        .iter()
        .map(|&z| {
            let x = a + weight * z;
            let y = b + weight * z;
            ln_gamma_ratio_unchecked(x, y).exp()
                - ln_gamma_ratio_unchecked(x + weight, y + weight).exp()
        })
        .collect();
    let tol = |v: f64| CMP_TOL * v.abs().max(1.0);
    let nonnegative = values.iter().all(|v| *v >= -tol(*v));
    let nonincreasing = values.windows(2).all(|w| w[1] <= w[0] + tol(w[0]));
    Ok(Lemma5Profile {
        values,
        nonnegative,
        nonincreasing,
    })
}

/// Parameter set of the `(α, β, γ)` example family together with its
/// exponent constant `ρ₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleFamily {
    pub params: FWParams,
    pub rho1: f64,
}

// negated comparisons also reject NaN
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn build_example_params(alpha: f64, beta: f64, gamma: f64) -> Result<ExampleFamily> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Constraint(format!(
            "α ∈ (0, 1] violated: α = {alpha}"
        )));
    }
    if !(1.0 / alpha - 1.0 < beta) {
        return Err(Error::Constraint(format!(
            "1/α - 1 < β violated: β = {beta}"
        )));
    }
    if !(gamma + beta >= 0.5) {
        return Err(Error::Constraint(format!(
            "γ + β >= 1/2 violated: γ + β = {}",
            gamma + beta
        )));
    }
    let identity = 1.0 / alpha - 1.0 - 1.0 / (alpha * beta);
    if !(identity.abs() <= 1e-9) {
        return Err(Error::Constraint(format!(
            "1/α = 1 + 1/(αβ) violated: residual {identity:e}"
        )));
    }
    let ab = alpha * beta;
    let params = FWParams::new(
        [
            Pair::new(1.0, 1.0),
            Pair::new((gamma + beta) / ab, 1.0 / (2.0 * ab)),
        ],
        [
            Pair::new(1.0 + gamma / beta, 1.0 / (2.0 * alpha)),
            Pair::new(1.0, 0.5),
        ],
    )?;
    let pw = |x: f64| x.powf(x);
    let rho1 = 0.5f64.sqrt() * pw(1.0 / (2.0 * alpha)) * pw(1.0 / (2.0 * ab));
    Ok(ExampleFamily { params, rho1 })
}

fn weights_equal_checks(params: &FWParams, checks: &mut Vec<Check>) {
    for (i, (a, b)) in params.upper().iter().zip(params.lower()).enumerate() {
        checks.push(Check::equal(
            format!("B_{0} = A_{0}", i + 1),
            b.weight - a.weight,
        ));
    }
}

fn gamma_product_check(name: &str, lower: &[Pair], factor: f64) -> Check {
    // Π Γ(b_j + B_j) >= factor · Π Γ(b_j), as 1 - rhs/lhs
    let ln_ratio = factor.ln()
        - lower
            .iter()
            .map(|b| ln_gamma_ratio_unchecked(b.value + b.weight, b.value))
            .sum::<f64>();
    Check::at_least(name, -ln_ratio.exp_m1())
}

fn h2_checks(params: &FWParams, checks: &mut Vec<Check>) -> Result<()> {
    require_square(params, "H2")?;
    let w = params.upper()[0].weight;
    let spread = params
        .upper()
        .iter()
        .chain(params.lower())
        .map(|p| (p.weight - w).abs())
        .fold(0.0, f64::max);
    checks.push(Check::equal("common weight A", spread));
    let steps = |v: &[Pair]| {
        v.windows(2)
            .map(|w| w[1].value - w[0].value)
            .fold(f64::INFINITY, f64::min)
    };
    let (up, lo) = (params.upper(), params.lower());
    if up.len() > 1 {
        checks.push(Check::at_least("a_1 <= ... <= a_p", steps(up)));
        checks.push(Check::at_least("b_1 <= ... <= b_p", steps(lo)));
    }
    let mut partial = 0.0;
    for (k, (a, b)) in up.iter().zip(lo).enumerate() {
        partial += b.value - a.value;
        checks.push(Check::at_least(
            format!("Σ_(j<={}) (b_j - a_j) >= 0", k + 1),
            partial,
        ));
    }
    Ok(())
}

fn resolve_rho(id: CriterionId, params: &FWParams, rho: Option<f64>) -> Result<f64> {
    if let Some(r) = rho {
        return Ok(r);
    }
    match convergence(params).verdict {
        Verdict::Disc { radius, .. } => Ok(radius),
        _ => Err(Error::Usage(format!(
            "{id} needs an explicit ρ unless Δ = -1 (here Δ = {})",
            params.delta()
        ))),
    }
}

/// Hypothesis checklist for one criterion.
///
/// `rho` is only consulted by `T8_INEQ` and `TY8_INEQ`; when absent it falls
/// back to the disc radius of `params`, which exists only when `Δ = -1`.
pub fn check_theorem_with_rho(
    id: CriterionId,
    params: &FWParams,
    h_function_nonneg_asserted: bool,
    rho: Option<f64>,
) -> Result<CriterionReport> {
    let x_star = gamma_min_abscissa();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let mut asserted_only = false;
    let mut subject = params.clone();
    let conclusion;

    match id {
        CriterionId::T1Case1 | CriterionId::T1Case2 => {
            require_square(params, id.as_str())?;
            for (i, (a, b)) in params.upper().iter().zip(params.lower()).enumerate() {
                let n = i + 1;
                checks.push(Check::at_least(
                    format!("a_{n} <= b_{n}"),
                    b.value - a.value,
                ));
                if id == CriterionId::T1Case2 {
                    checks.push(Check::at_least(
                        format!("A_{n} <= B_{n}"),
                        b.weight - a.weight,
                    ));
                    checks.push(Check::strictly(format!("b_{n} > x*"), b.value - x_star));
                }
            }
            if id == CriterionId::T1Case1 {
                weights_equal_checks(params, &mut checks);
            }
            conclusion = "close-to-convex w.r.t. -log(1-z), univalent in D";
        }
        CriterionId::T1Case3 | CriterionId::T2 => {
            if params.p() != 1 || params.q() == 0 {
                return Err(Error::Usage(format!(
                    "{id} needs exactly one upper pair and q >= 1, got p = {}, q = {}",
                    params.p(),
                    params.q()
                )));
            }
            let up = params.upper()[0];
            let a = up.value;
            checks.push(Check::equal("A = 1", up.weight - 1.0));
            if id == CriterionId::T1Case3 {
                let bound = a.max(x_star);
                for (j, b) in params.lower().iter().enumerate() {
                    let n = j + 1;
                    checks.push(Check::strictly(
                        format!("b_{n} > max(a, x*)"),
                        b.value - bound,
                    ));
                    checks.push(Check::at_least(format!("B_{n} >= 1"), b.weight - 1.0));
                }
                checks.push(Check::strictly("a != x*", (a - x_star).abs()));
                checks.push(gamma_product_check(
                    "Π Γ(b_j + B_j) >= a Π Γ(b_j)",
                    params.lower(),
                    a,
                ));
                conclusion = "close-to-convex w.r.t. -log(1-z), univalent in D";
            } else {
                checks.push(Check::at_least("2a >= 2", 2.0 * a - 2.0));
                for (j, b) in params.lower().iter().enumerate() {
                    let n = j + 1;
                    checks.push(Check::at_least(format!("b_{n} >= 2a"), b.value - 2.0 * a));
                    checks.push(Check::at_least(format!("B_{n} >= 2"), b.weight - 2.0));
                    if (b.value - 2.0 * a).abs() <= CMP_TOL {
                        notes.push(format!(
                            "equality case b_{n} = 2a: the supporting argument uses b_j > 2a"
                        ));
                    }
                }
                if (a - 1.0).abs() <= CMP_TOL {
                    notes.push("equality case a = 1: the supporting argument uses 2a > 2".into());
                }
                checks.push(gamma_product_check(
                    "Π Γ(b_j + B_j) >= 2a Π Γ(b_j)",
                    params.lower(),
                    2.0 * a,
                ));
                conclusion = "starlike in D";
            }
        }
        CriterionId::T3 => {
            require_square(params, id.as_str())?;
            for (i, (a, b)) in params.upper().iter().zip(params.lower()).enumerate() {
                let n = i + 1;
                checks.push(Check::strictly(format!("b_{n} > a_{n}"), b.value - a.value));
            }
            weights_equal_checks(params, &mut checks);
            subject = params.with_unit_upper()?;
            conclusion = "Re(f(z)/z) > 1/2 in D for the (1,1)-augmented function";
        }
        CriterionId::H2 => {
            h2_checks(params, &mut checks)?;
            conclusion = "H-function kernel H_{p,p}^{p,0} is non-negative";
        }
        CriterionId::T8Ineq | CriterionId::TY8Ineq => {
            require_square(params, id.as_str())?;
            let sum_a: f64 = params.upper().iter().map(|p| p.weight).sum();
            let sum_b: f64 = params.lower().iter().map(|p| p.weight).sum();
            checks.push(Check::equal("ΣA_i = ΣB_j", sum_a - sum_b));
            let min_ratio = params
                .upper()
                .iter()
                .map(|p| p.value / p.weight)
                .fold(f64::INFINITY, f64::min);
            checks.push(Check::at_least("min(a_i/A_i) >= 1", min_ratio - 1.0));
            checks.push(Check {
                name: "H-function H_{p,p}^{p,0} non-negative (asserted)".into(),
                holds: h_function_nonneg_asserted,
                margin: 0.0,
            });
            asserted_only = true;
            let rho = resolve_rho(id, params, rho)?;
            let ineq = coefficient_inequality(id, params, rho)?;
            checks.push(Check::at_least(
                format!("inequality (ρ = {rho})"),
                ineq.margin,
            ));
            if id == CriterionId::T8Ineq {
                conclusion =
                    "convex in D_1/2 (stated for the function with an extra lower pair (2,1); \
                              the derivative bound covers pΨ̃p itself); starlike in D_1/2";
                notes.push(
                    "both readings are available: verify `subject` or its (2,1)-augmented form"
                        .into(),
                );
            } else {
                conclusion = "starlike in D";
            }
        }
        CriterionId::TT9Ineq | CriterionId::Rrr1Ineq => {
            h2_checks(params, &mut checks)?;
            let ineq = coefficient_inequality(id, params, 1.0)?;
            checks.push(Check::at_least("inequality (ρ = 1)", ineq.margin));
            conclusion = if id == CriterionId::TT9Ineq {
                "convex in D_1/2 with an extra lower pair (2,1); starlike in D_1/2"
            } else {
                "starlike in D"
            };
        }
    }
    Ok(CriterionReport::assemble(
        id,
        checks,
        asserted_only,
        conclusion,
        subject,
        notes,
    ))
}

pub fn check_theorem(
    id: CriterionId,
    params: &FWParams,
    h_function_nonneg_asserted: bool,
) -> Result<CriterionReport> {
    check_theorem_with_rho(id, params, h_function_nonneg_asserted, None)
}
