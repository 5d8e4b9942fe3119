//! Series evaluation of `pΨq`, its normalized form
//! `pΨ̃q(z) = Σ U_k z^{k+1}` and the term-wise derivatives.
//!
//! Coefficients are formed in log space and stored scaled by `ρ^k` (the disc
//! radius when the series has one, 1 otherwise), so that summation runs in
//! the variable `w = z/ρ` with plain complex multiply-adds.
//!
//! Truncation rule: terms are accumulated until
//! `|term| ≤ tol · max(1, |partial sum|)` has held for three consecutive
//! indices, the last of which is at least `min_terms`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma_ratio_unchecked, ln_gamma_unchecked};
use crate::params::{convergence, ConvergenceClass, FWParams, Pair, Verdict};

/// Points closer than this relative margin to the circle of convergence are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-9;

/// `Σ|term| / |sum|` above which a truncated sum is re-evaluated by Horner.
const CANCELLATION_RATIO: f64 = 16.0;

/// `Σ|term| / |sum|` beyond which fewer than about 8 digits survive; the
/// evaluation is refused instead.
const CANCELLATION_LIMIT: f64 = 1e8;

/// Largest natural log a double can be exponentiated from.
const LN_MAX: f64 = 709.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    tol: f64,
    max_terms: usize,
    min_terms: usize,
}

impl SeriesControl {
    pub fn new(tol: f64, max_terms: usize, min_terms: usize) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::Constraint(format!(
                "series tol must be positive, got {tol}"
            )));
        }
        if max_terms <= min_terms {
            return Err(Error::Constraint(format!(
                "max_terms ({max_terms}) must exceed min_terms ({min_terms})"
            )));
        }
        Ok(SeriesControl {
            tol,
            max_terms,
            min_terms,
        })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn min_terms(&self) -> usize {
        self.min_terms
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            tol: 1e-14,
            max_terms: 10_000,
            min_terms: 8,
        }
    }
}

/// `ln U_k`, pairing upper and lower gamma factors (with `k!` counted as a
/// lower pair `(1, 1)`) so that nearly equal large arguments cancel inside
/// the ratio kernel. Each upper pair takes the free lower pair whose weight
/// is closest.
pub fn log_coefficient(params: &FWParams, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let kf = k as f64;
    let mut lower: Vec<Pair> = params.lower().to_vec();
    lower.push(Pair::new(1.0, 1.0));
    let mut used = vec![false; lower.len()];
    let mut acc = 0.0;
    for a in params.upper() {
        let pick = (0..lower.len()).filter(|&j| !used[j]).min_by(|&i, &j| {
            (lower[i].weight - a.weight)
                .abs()
                .total_cmp(&(lower[j].weight - a.weight).abs())
        });
        match pick {
            Some(j) => {
                used[j] = true;
                let b = lower[j];
                acc += ln_gamma_ratio_unchecked(a.value + kf * a.weight, b.value + kf * b.weight);
                acc += ln_gamma_ratio_unchecked(b.value, a.value);
            }
            None => acc += ln_gamma_ratio_unchecked(a.value + kf * a.weight, a.value),
        }
    }
    for (b, _) in lower.iter().zip(&used).filter(|(_, u)| !**u) {
        acc -= ln_gamma_ratio_unchecked(b.value + kf * b.weight, b.value);
    }
    acc
}

/// Normalized coefficient `U_k`.
pub fn coefficient(params: &FWParams, k: usize) -> Result<f64> {
    let ln = log_coefficient(params, k);
    if ln > LN_MAX || !ln.is_finite() {
        return Err(Error::Range(format!("U_{k} overflows (ln U_k = {ln})")));
    }
    Ok(ln.exp())
}

/// `ln(Π Γ(a_i) / Π Γ(b_j))`, the factor between `pΨq` and `Σ U_k z^k`.
pub fn log_prefactor(params: &FWParams) -> f64 {
    params
        .upper()
        .iter()
        .map(|a| ln_gamma_unchecked(a.value))
        .sum::<f64>()
        - params
            .lower()
            .iter()
            .map(|b| ln_gamma_unchecked(b.value))
            .sum::<f64>()
}

/// A finite prefix of `ln U_k`; every `U_k` is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientWindow {
    log_values: Vec<f64>,
}

impl CoefficientWindow {
    pub fn new(params: &FWParams, len: usize) -> Result<Self> {
        let log_values: Vec<f64> = (0..len).map(|k| log_coefficient(params, k)).collect();
        if let Some(k) = log_values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Range(format!("ln U_{k} is not finite")));
        }
        Ok(CoefficientWindow { log_values })
    }

    pub fn len(&self) -> usize {
        self.log_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_values.is_empty()
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    /// `U_k` in linear space; underflow gives 0.
    pub fn values(&self) -> Vec<f64> {
        self.log_values.iter().map(|v| v.exp()).collect()
    }
}

/// A function `f(z) = z + Σ_{k≥2} a_k z^k` that can be evaluated together
/// with its first two derivatives.
pub trait NormalizedFunction: Sync {
    /// `f(z)/z`, evaluated without dividing by `z`.
    fn value_over_z(&self, z: Complex64) -> Result<Complex64>;
    fn derivative(&self, z: Complex64) -> Result<Complex64>;
    fn second_derivative(&self, z: Complex64) -> Result<Complex64>;

    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(z * self.value_over_z(z)?)
    }

    /// Largest `|z|` the function can be evaluated at, if bounded.
    fn radius(&self) -> Option<f64> {
        None
    }
}

/// Polynomial `f(z) = Σ c_k z^{k+1}` given by its coefficients `c_0, c_1, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    fn horner(&self, z: Complex64, c: impl Fn(usize) -> f64) -> Complex64 {
        (0..self.coeffs.len())
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, k| acc * z + c(k))
    }
}

impl NormalizedFunction for Polynomial {
    fn value_over_z(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.horner(z, |k| self.coeffs[k]))
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.horner(z, |k| (k + 1) as f64 * self.coeffs[k]))
    }

    fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        let c = |k: usize| {
            self.coeffs
                .get(k + 1)
                .map_or(0.0, |v| ((k + 2) * (k + 1)) as f64 * v)
        };
        Ok(self.horner(z, c))
    }
}

/// Evaluator for `pΨq` and its normalized form at a fixed parameter set.
///
/// Coefficients needed for `|z| ≤ r_max` are tabulated at construction;
/// evaluation beyond the table computes further coefficients on demand.
#[derive(Debug, Clone)]
pub struct FoxWrightSeries {
    params: FWParams,
    ctl: SeriesControl,
    convergence: ConvergenceClass,
    scale: f64,
    ln_scale: f64,
    table: Vec<f64>,
}

impl FoxWrightSeries {
    pub fn new(params: FWParams, ctl: SeriesControl, r_max: f64) -> Result<Self> {
        let convergence = convergence(&params);
        let scale = match convergence.verdict {
            Verdict::Disc { radius, .. } => radius,
            _ => 1.0,
        };
        let mut series = FoxWrightSeries {
            params,
            ctl,
            convergence,
            scale,
            ln_scale: scale.ln(),
            table: Vec::new(),
        };
        series.check_domain(r_max)?;
        series.fill_table(r_max);
        Ok(series)
    }

    pub fn params(&self) -> &FWParams {
        &self.params
    }

    pub fn control(&self) -> &SeriesControl {
        &self.ctl
    }

    pub fn convergence(&self) -> &ConvergenceClass {
        &self.convergence
    }

    fn fill_table(&mut self, r_max: f64) {
        let ln_ratio = (r_max / self.scale).ln();
        let ln_cut = self.ctl.tol.ln() - 10.0;
        let cap = self.ctl.max_terms + 2;
        let mut small = 0;
        for k in 0..=cap {
            let ln = log_coefficient(&self.params, k) + k as f64 * self.ln_scale;
            if ln > LN_MAX || !ln.is_finite() {
                break;
            }
            self.table.push(ln.exp());
            let kf = k as f64;
            let bound = ln + 2.0 * (kf + 2.0).ln() + if k == 0 { 0.0 } else { kf * ln_ratio };
            if bound < ln_cut {
                small += 1;
            } else {
                small = 0;
            }
            if small >= 3 && k >= self.ctl.min_terms + 2 {
                break;
            }
        }
    }

    /// `U_k ρ^k`
    fn scaled(&self, k: usize) -> Result<f64> {
        if let Some(v) = self.table.get(k) {
            return Ok(*v);
        }
        let ln = log_coefficient(&self.params, k) + k as f64 * self.ln_scale;
        if ln > LN_MAX || !ln.is_finite() {
            return Err(Error::Range(format!(
                "scaled coefficient {k} overflows (ln = {ln})"
            )));
        }
        Ok(ln.exp())
    }

    fn check_domain(&self, modulus: f64) -> Result<()> {
        if !modulus.is_finite() {
            return Err(Error::Domain(format!("|z| = {modulus} is not finite")));
        }
        match self.convergence.verdict {
            Verdict::Entire => Ok(()),
            Verdict::Disc { radius, .. } => {
                if modulus < radius * (1.0 - BOUNDARY_GUARD) {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "|z| = {modulus} is not inside the disc of convergence (radius {radius})"
                    )))
                }
            }
            Verdict::Divergent => {
                if modulus == 0.0 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "series diverges for every z != 0 (Δ = {})",
                        self.convergence.delta
                    )))
                }
            }
        }
    }

    /// Sums `factor · Σ c_k w^k` with `w = z/ρ` under the truncation rule.
    fn sum<F>(&self, z: Complex64, factor: f64, coef: F) -> Result<Complex64>
    where
        F: Fn(usize) -> Result<f64>,
    {
        self.check_domain(z.norm())?;
        let w = z / self.scale;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        let mut abs_sum = 0.0;
        let mut small = 0;
        for k in 0..self.ctl.max_terms {
            let term = power * (factor * coef(k)?);
            sum += term;
            abs_sum += term.norm();
            if term.norm() <= self.ctl.tol * sum.norm().max(1.0) {
                small += 1;
            } else {
                small = 0;
            }
            if small >= 3 && k >= self.ctl.min_terms {
                if abs_sum <= CANCELLATION_RATIO * sum.norm() {
                    return Ok(sum);
                }
                if abs_sum > CANCELLATION_LIMIT * sum.norm() {
                    return Err(Error::Range(format!(
                        "cancellation at |z| = {}: Σ|term| / |sum| = {:.1e} leaves too few \
                         significant digits",
                        z.norm(),
                        abs_sum / sum.norm()
                    )));
                }
                // Heavy cancellation: rounding in the running powers w^k
                // would dominate. Backward Horner weights each rounding
                // error by a tail sum instead of a single term.
                let mut acc = Complex64::new(0.0, 0.0);
                for j in (0..=k).rev() {
                    acc = acc * w + factor * coef(j)?;
                }
                return Ok(acc);
            }
            power *= w;
        }
        Err(Error::NonConvergence {
            max_terms: self.ctl.max_terms,
            modulus: z.norm(),
        })
    }

    /// `pΨq(z)` itself: `Σ [Π Γ(a_i + k A_i) / Π Γ(b_j + k B_j)] z^k / k!`.
    pub fn fox_wright(&self, z: Complex64) -> Result<Complex64> {
        let ln = log_prefactor(&self.params);
        if ln.abs() > LN_MAX {
            return Err(Error::Range(format!(
                "Π Γ(a_i)/Π Γ(b_j) out of range (ln = {ln})"
            )));
        }
        self.sum(z, ln.exp(), |k| self.scaled(k))
    }

    /// `d/dz (f(z)/z) = Σ (k+1) U_{k+1} z^k`.
    pub fn value_over_z_derivative(&self, z: Complex64) -> Result<Complex64> {
        let inv = 1.0 / self.scale;
        self.sum(z, 1.0, |k| Ok((k + 1) as f64 * self.scaled(k + 1)? * inv))
    }
}

impl NormalizedFunction for FoxWrightSeries {
    fn value_over_z(&self, z: Complex64) -> Result<Complex64> {
        self.sum(z, 1.0, |k| self.scaled(k))
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        self.sum(z, 1.0, |k| Ok((k + 1) as f64 * self.scaled(k)?))
    }

    fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        let inv = 1.0 / self.scale;
        self.sum(z, 1.0, |k| {
            Ok(((k + 2) * (k + 1)) as f64 * self.scaled(k + 1)? * inv)
        })
    }

    fn radius(&self) -> Option<f64> {
        self.convergence.radius()
    }
}

fn one_off(params: &FWParams, z: Complex64, ctl: SeriesControl) -> Result<FoxWrightSeries> {
    FoxWrightSeries::new(params.clone(), ctl, z.norm())
}

pub fn eval_fox_wright(params: &FWParams, z: Complex64, ctl: SeriesControl) -> Result<Complex64> {
    one_off(params, z, ctl)?.fox_wright(z)
}

/// Normalized form `Σ U_k z^{k+1}`.
pub fn eval_normalized(params: &FWParams, z: Complex64, ctl: SeriesControl) -> Result<Complex64> {
    one_off(params, z, ctl)?.value(z)
}

/// First or second derivative of the normalized form.
pub fn eval_derivative(
    params: &FWParams,
    z: Complex64,
    order: usize,
    ctl: SeriesControl,
) -> Result<Complex64> {
    let s = one_off(params, z, ctl)?;
    match order {
        1 => s.derivative(z),
        2 => s.second_derivative(z),
        _ => Err(Error::Usage(format!(
            "derivative order must be 1 or 2, got {order}"
        ))),
    }
}

/// `pFq(a; b; z)`, as the unit-weight Fox-Wright series rescaled by `Π Γ(b)/Π Γ(a)`.
pub fn eval_hypergeometric(
    upper_a: &[f64],
    lower_b: &[f64],
    z: Complex64,
    ctl: SeriesControl,
) -> Result<Complex64> {
    let params = FWParams::new(
        upper_a.iter().map(|&a| (a, 1.0)),
        lower_b.iter().map(|&b| (b, 1.0)),
    )?;
    one_off(&params, z, ctl)?.value_over_z(z)
}

/// Parameters whose normalized form is `Σ Π (a_i / (a_i + k)) z^{k+1} / k!`.
///
/// `p` copies of the same `a` give the single-parameter variant `a^p/(a+k)^p`.
pub fn make_k_params(a_list: &[f64]) -> Result<FWParams> {
    FWParams::new(
        a_list.iter().map(|&a| Pair::new(a, 1.0)),
        a_list.iter().map(|&a| Pair::new(a + 1.0, 1.0)),
    )
}

/// `Π Γ(a_i + A_i)/Γ(a_i) · Π Γ(b_j)/Γ(b_j + B_j)`, the factor relating
/// `d/dz (f(z)/z)` to `f/z` of the shifted parameters.
pub fn differentiation_factor(params: &FWParams) -> f64 {
    let ln = params
        .upper()
        .iter()
        .map(|a| ln_gamma_ratio_unchecked(a.value + a.weight, a.value))
        .sum::<f64>()
        - params
            .lower()
            .iter()
            .map(|b| ln_gamma_ratio_unchecked(b.value + b.weight, b.value))
            .sum::<f64>();
    ln.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: f64 = std::f64::consts::E;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> FWParams {
        FWParams::new(upper.iter().copied(), lower.iter().copied()).unwrap()
    }

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn control_invariants() {
        assert!(SeriesControl::new(0.0, 100, 8).is_err());
        assert!(SeriesControl::new(1e-10, 8, 8).is_err());
        assert!(SeriesControl::new(1e-10, 9, 8).is_ok());
    }

    #[test]
    fn coefficient_examples() {
        let any = p(&[(0.3, 2.5), (4.0, 0.2)], &[(7.0, 1.1)]);
        assert_eq!(coefficient(&any, 0).unwrap(), 1.0);
        let same = p(&[(3.7, 1.0)], &[(3.7, 1.0)]);
        assert!((coefficient(&same, 2).unwrap() - 0.5).abs() < 1e-14);
        let shifted = p(&[(1.0, 1.0)], &[(2.0, 1.0)]);
        assert!((coefficient(&shifted, 1).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn coefficient_overflow_is_range_error() {
        // Δ < -1: U_k grows factorially
        let wild = p(&[(1.0, 10.0)], &[]);
        assert!(matches!(coefficient(&wild, 200), Err(Error::Range(_))));
    }

    #[test]
    fn window_starts_at_zero() {
        let w = CoefficientWindow::new(&p(&[(2.0, 0.5)], &[(3.0, 1.5)]), 20).unwrap();
        assert_eq!(w.len(), 20);
        assert_eq!(w.log_values()[0], 0.0);
        assert!(w.values().iter().all(|v| *v > 0.0));
    }

    #[test]
    fn fox_wright_examples() {
        let exp = p(&[(1.0, 1.0)], &[(1.0, 1.0)]);
        assert!((eval_fox_wright(&exp, c(1.0), ctl()).unwrap() - E).norm() < 1e-14);
        let geom = p(&[(1.0, 1.0)], &[]);
        assert!((eval_fox_wright(&geom, c(0.5), ctl()).unwrap() - 2.0).norm() < 1e-13);
        let at0 = p(&[(2.0, 1.0)], &[(1.0, 1.0)]);
        assert!((eval_fox_wright(&at0, c(0.0), ctl()).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn normalized_examples() {
        let any = p(&[(0.3, 2.5)], &[(7.0, 1.1), (1.0, 0.2)]);
        assert_eq!(eval_normalized(&any, c(0.0), ctl()).unwrap(), c(0.0));
        let zexp = p(&[(2.5, 1.0)], &[(2.5, 1.0)]);
        let v = eval_normalized(&zexp, c(0.5), ctl()).unwrap();
        assert!((v.re - 0.5 * 0.5f64.exp()).abs() < 1e-14);
        let expm1 = p(&[(1.0, 1.0)], &[(2.0, 1.0)]);
        let v = eval_normalized(&expm1, c(0.5), ctl()).unwrap();
        assert!((v.re - 0.5f64.exp_m1()).abs() < 1e-14);
    }

    #[test]
    fn derivative_examples() {
        let any = p(&[(0.3, 2.5)], &[(7.0, 1.1)]);
        assert!((eval_derivative(&any, c(0.0), 1, ctl()).unwrap() - 1.0).norm() < 1e-15);
        let expm1 = p(&[(1.0, 1.0)], &[(2.0, 1.0)]);
        let d = eval_derivative(&expm1, c(0.5), 1, ctl()).unwrap();
        assert!((d.re - 0.5f64.exp()).abs() < 1e-14);
        let zexp = p(&[(1.3, 1.0)], &[(1.3, 1.0)]);
        let d2 = eval_derivative(&zexp, c(0.5), 2, ctl()).unwrap();
        assert!((d2.re - 2.5 * 0.5f64.exp()).abs() < 1e-13);
        assert!(matches!(
            eval_derivative(&zexp, c(0.5), 3, ctl()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn hypergeometric_examples() {
        let z = Complex64::new(0.3, -0.7);
        let v = eval_hypergeometric(&[1.0], &[1.0], z, ctl()).unwrap();
        assert!((v - z.exp()).norm() < 1e-14);
        let v = eval_hypergeometric(&[1.0, 1.0], &[2.0], c(0.5), ctl()).unwrap();
        assert!((v.re - 1.386_294_361_119_890_6).abs() < 1e-13);
        let v = eval_hypergeometric(&[1.0], &[], c(0.25), ctl()).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() < 1e-14);
        assert!(matches!(
            eval_hypergeometric(&[1.0], &[], c(1.0), ctl()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn domain_errors() {
        let geom = p(&[(1.0, 1.0)], &[]);
        assert!(matches!(
            eval_normalized(&geom, c(1.0), ctl()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_normalized(&geom, Complex64::new(0.0, 1.0 - 1e-10), ctl()),
            Err(Error::Domain(_))
        ));
        let div = p(&[(1.0, 2.0)], &[]);
        assert!(matches!(
            eval_normalized(&div, c(0.1), ctl()),
            Err(Error::Domain(_))
        ));
        assert_eq!(eval_normalized(&div, c(0.0), ctl()).unwrap(), c(0.0));
    }

    #[test]
    fn non_convergence_reported() {
        let geom = p(&[(1.0, 1.0)], &[]);
        let tight = SeriesControl::new(1e-14, 50, 8).unwrap();
        assert!(matches!(
            eval_normalized(&geom, c(0.99), tight),
            Err(Error::NonConvergence { max_terms: 50, .. })
        ));
    }

    #[test]
    fn k_params() {
        let k1 = make_k_params(&[1.0]).unwrap();
        let v = eval_normalized(&k1, c(0.5), ctl()).unwrap();
        assert!((v.re - 0.5f64.exp_m1()).abs() < 1e-14);
        let empty = make_k_params(&[]).unwrap();
        let v = eval_normalized(&empty, c(0.5), ctl()).unwrap();
        assert!((v.re - 0.5 * 0.5f64.exp()).abs() < 1e-14);
        let k2 = make_k_params(&[2.0, 2.0]).unwrap();
        assert!((coefficient(&k2, 1).unwrap() - 4.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn small_disc_radius_is_scaled() {
        // Δ = -1 with ρ = 3^{-3} · 2^2 ≈ 0.148: U_k grows like ρ^{-k}
        let params = p(&[(0.5, 3.0)], &[(1.5, 2.0)]);
        let rho = params.rho();
        let z = Complex64::from_polar(0.9 * rho, 0.4);
        let v = eval_normalized(&params, z, ctl()).unwrap();
        // oracle: direct partial sums in linear space
        let mut want = Complex64::new(0.0, 0.0);
        for k in 0..2000 {
            let ln = log_coefficient(&params, k) + (k as f64 + 1.0) * z.norm().ln();
            want += Complex64::from_polar(ln.exp(), (k as f64 + 1.0) * z.arg());
        }
        assert!((v - want).norm() < 1e-12 * want.norm());
    }

    #[test]
    fn polynomial_evaluator() {
        let f = Polynomial::new(vec![1.0, 2.0, -0.5]);
        let z = Complex64::new(0.2, 0.3);
        let want = z + 2.0 * z * z - 0.5 * z * z * z;
        assert!((f.value(z).unwrap() - want).norm() < 1e-15);
        let d = 1.0 + 4.0 * z - 1.5 * z * z;
        assert!((f.derivative(z).unwrap() - d).norm() < 1e-15);
        let d2 = 4.0 - 3.0 * z;
        assert!((f.second_derivative(z).unwrap() - d2).norm() < 1e-15);
    }
}
