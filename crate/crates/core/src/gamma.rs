//! Real-argument log-gamma, gamma ratios and digamma.
//!
//! `log_gamma` uses the Lanczos approximation with Pugh's parameters
//! (g = 10.900511, eleven coefficients, listed in [`LANCZOS_COEFFS`]).
//! For arguments below 1/2 the recurrence `ln Γ(x) = ln Γ(x + 1) - ln x`
//! is applied first, so the reflection formula is never needed.
//!
//! Ratios `Γ(x)/Γ(y)` are always formed in log space. When both arguments
//! are large the difference `ln Γ(x) - ln Γ(y)` is taken directly from the
//! Stirling series, with the leading terms rearranged so that nearly equal
//! arguments do not cancel catastrophically.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// `ln(2 * sqrt(e / pi))`
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// Lanczos parameter `g`.
pub const LANCZOS_G: f64 = 10.900511;

/// Lanczos series coefficients (Pugh 2004, n = 10, g = 10.900511).
pub const LANCZOS_COEFFS: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

/// Stirling correction coefficients `B_{2n} / (2n (2n - 1))`, n = 1..7.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// Asymptotic digamma coefficients `B_{2n} / (2n)`, n = 1..7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Below this both-argument threshold ratios use plain log-gamma differences.
const STIRLING_RATIO_MIN: f64 = 10.0;

/// Accuracy contract for the gamma kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaAccuracy {
    rel_tol: f64,
}

impl GammaAccuracy {
    pub fn new(rel_tol: f64) -> Result<Self> {
        if rel_tol > 0.0 && rel_tol < 1e-6 {
            Ok(GammaAccuracy { rel_tol })
        } else {
            Err(Error::Constraint(format!(
                "gamma rel_tol must lie in (0, 1e-6), got {rel_tol}"
            )))
        }
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }
}

impl Default for GammaAccuracy {
    fn default() -> Self {
        GammaAccuracy { rel_tol: 1e-12 }
    }
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} requires a positive finite argument, got {x}"
        )))
    }
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let s = LANCZOS_COEFFS
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_COEFFS[0], |s, (i, c)| s + c / (x + i as f64 - 1.0));
    s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_G) / std::f64::consts::E).ln()
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive(x, "log_gamma")?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        lanczos_ln_gamma(x + 1.0) - x.ln()
    } else {
        lanczos_ln_gamma(x)
    }
}

fn stirling_tail(x: f64) -> f64 {
    let r = 1.0 / x;
    let r2 = r * r;
    let mut acc = 0.0;
    for c in STIRLING.iter().rev() {
        acc = acc * r2 + c;
    }
    acc * r
}

/// `ln Γ(x) - ln Γ(y)` without forming either value when both are large.
pub fn log_gamma_ratio(x: f64, y: f64) -> Result<f64> {
    check_positive(x, "log_gamma_ratio")?;
    check_positive(y, "log_gamma_ratio")?;
    Ok(ln_gamma_ratio_unchecked(x, y))
}

pub(crate) fn ln_gamma_ratio_unchecked(x: f64, y: f64) -> f64 {
    if x == y {
        return 0.0;
    }
    let lo = x.min(y);
    if lo < STIRLING_RATIO_MIN {
        // Shift both arguments up by the same integer; Σ ln((y+i)/(x+i)) is
        // far more accurate than differencing two Lanczos values.
        let n = (STIRLING_RATIO_MIN - lo).ceil() as usize;
        let correction: f64 = (0..n)
            .map(|i| {
                let (u, v) = (y + i as f64, x + i as f64);
                let r = (u / v).ln();
                if r.is_finite() {
                    r
                } else {
                    u.ln() - v.ln()
                }
            })
            .sum();
        return ln_gamma_ratio_unchecked(x + n as f64, y + n as f64) + correction;
    }
    // (x - 1/2) ln x - (y - 1/2) ln y - (x - y), regrouped around d = x - y.
    let d = x - y;
    let t = d / y;
    let ln_xy = if t.abs() < 0.5 {
        t.ln_1p()
    } else if (x / y).is_normal() {
        (x / y).ln()
    } else {
        x.ln() - y.ln()
    };
    d * y.ln() + (x - 0.5) * ln_xy - d + (stirling_tail(x) - stirling_tail(y))
}

/// `Γ(x) / Γ(y)`, routed through log space.
pub fn gamma_ratio(x: f64, y: f64) -> Result<f64> {
    let ln = log_gamma_ratio(x, y)?;
    let v = ln.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range(format!(
            "Γ({x})/Γ({y}) overflows (log = {ln})"
        )))
    }
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x, "digamma")?;
    Ok(digamma_unchecked(x))
}

fn digamma_unchecked(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let r2 = 1.0 / (x * x);
    let mut acc = 0.0;
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        acc = acc * r2 + c;
    }
    shift + x.ln() - 0.5 / x - acc * r2
}

static GAMMA_MIN: OnceLock<f64> = OnceLock::new();

/// Abscissa of the minimum of Γ on the positive axis: the root of ψ in (1, 2).
///
/// Found once by bisection to an interval width of 1e-12, then cached.
pub fn gamma_min_abscissa() -> f64 {
    *GAMMA_MIN.get_or_init(|| {
        let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if digamma_unchecked(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    /// Stirling series after shifting the argument above 30; independent of
    /// the Lanczos path.
    fn stirling_oracle(mut x: f64) -> f64 {
        let mut shift = 0.0;
        while x < 30.0 {
            shift -= x.ln();
            x += 1.0;
        }
        let ln_sqrt_2pi = 0.918_938_533_204_672_8;
        let r = 1.0 / x;
        let tail = r / 12.0 - r.powi(3) / 360.0 + r.powi(5) / 1260.0 - r.powi(7) / 1680.0;
        shift + (x - 0.5) * x.ln() - x + ln_sqrt_2pi + tail
    }

    /// `ψ(x) = -γ + Σ_{n<N} (1/(n+1) - 1/(n+x)) + [ψ(x+N) - ψ(N+1)]`, with the
    /// bracket from its asymptotic expansion.
    fn digamma_series_oracle(x: f64) -> f64 {
        let n = 200_000usize;
        let mut s = -EULER_GAMMA;
        let mut comp = 0.0;
        for k in 0..n {
            let t = 1.0 / (k as f64 + 1.0) - 1.0 / (k as f64 + x);
            let y = t - comp;
            let u = s + y;
            comp = (u - s) - y;
            s = u;
        }
        let (a, b) = (x + n as f64, n as f64 + 1.0);
        let tail = (a / b).ln() - 0.5 / a + 0.5 / b - 1.0 / (12.0 * a * a) + 1.0 / (12.0 * b * b);
        s + tail
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn log_gamma_examples() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(close(
            log_gamma(0.5).unwrap(),
            0.572_364_942_924_700_1,
            1e-14
        ));
        assert!(close(log_gamma(10.0).unwrap(), 362_880f64.ln(), 1e-14));
    }

    #[test]
    fn log_gamma_rejects_bad_input() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(-1.5), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(log_gamma(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn log_gamma_matches_stirling_oracle() {
        let tol = GammaAccuracy::default().rel_tol();
        let mut x = 1e-3;
        while x <= 1e6 {
            let got = log_gamma(x).unwrap();
            let want = stirling_oracle(x);
            // relative to max(1, |ln Γ|): ln Γ has zeros at 1 and 2
            assert!(close(got, want, tol), "x = {x}: {got} vs {want}");
            x *= 1.07;
        }
    }

    #[test]
    fn log_gamma_integer_factorials() {
        let mut ln_fact = 0.0;
        for n in 1..=170u32 {
            // ln Γ(n + 1) = ln n!
            ln_fact += (n as f64).ln();
            let got = log_gamma(n as f64 + 1.0).unwrap();
            assert!(close(got, ln_fact, 1e-13), "n = {n}");
        }
    }

    #[test]
    fn gamma_ratio_examples() {
        assert!(close(gamma_ratio(5.0, 3.0).unwrap(), 12.0, 1e-13));
        for &x in &[1e-3, 0.7, 3.3, 17.0, 4.2e4] {
            assert_eq!(gamma_ratio(x, x).unwrap(), 1.0);
        }
        assert!(close(gamma_ratio(0.5, 1.5).unwrap(), 2.0, 1e-13));
        assert!(matches!(gamma_ratio(-1.0, 2.0), Err(Error::Domain(_))));
        assert!(matches!(gamma_ratio(1000.0, 1.0), Err(Error::Range(_))));
    }

    #[test]
    fn gamma_ratio_recurrence() {
        let mut x = 1e-3;
        while x <= 1e5 {
            let r = gamma_ratio(x + 1.0, x).unwrap();
            assert!((r - x).abs() <= 1e-12 * x, "x = {x}: {r}");
            x *= 1.13;
        }
    }

    #[test]
    fn large_ratio_matches_product() {
        // Γ(x + n)/Γ(x) = x (x+1) ... (x+n-1)
        for &x in &[10.5, 123.25, 9_876.5, 5.0e5] {
            let n = 7;
            let want: f64 = (0..n).map(|i| (x + i as f64).ln()).sum();
            let got = log_gamma_ratio(x + n as f64, x).unwrap();
            assert!((got - want).abs() <= 1e-13 * want.abs(), "x = {x}");
        }
    }

    #[test]
    fn stirling_and_plain_ratio_paths_agree() {
        for &(x, y) in &[(10.0, 12.5), (15.3, 40.7), (33.0, 11.0), (10.0, 10.0)] {
            let a = ln_gamma_ratio_unchecked(x, y);
            let b = ln_gamma_unchecked(x) - ln_gamma_unchecked(y);
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn digamma_examples() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        assert!(matches!(digamma(0.0), Err(Error::Domain(_))));
        for &x in &[0.1, 0.37, 1.9, 7.5, 42.0, 1e3, 1e6] {
            let step = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
            assert!((step - 1.0 / x).abs() < 1e-12 * (1.0 / x).max(1.0));
        }
    }

    #[test]
    fn digamma_matches_series_oracle() {
        for &x in &[0.1, 0.25, 0.5, 1.0, 1.4616, 2.0, 3.7, 9.99, 10.0, 55.5] {
            let got = digamma(x).unwrap();
            let want = digamma_series_oracle(x);
            assert!((got - want).abs() < 1e-10, "x = {x}: {got} vs {want}");
        }
    }

    #[test]
    fn digamma_large_arguments() {
        // ψ(x) ~ ln x - 1/(2x) - 1/(12 x²) for large x
        for &x in &[1e4f64, 1e5, 1e6] {
            let want = x.ln() - 0.5 / x - 1.0 / (12.0 * x * x);
            assert!((digamma(x).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn gamma_minimum() {
        let x = gamma_min_abscissa();
        assert!((x - 1.461_632_144_968_362_3).abs() < 1e-9);
        assert!(digamma(x).unwrap().abs() < 1e-8);
        assert!((log_gamma(x).unwrap().exp() - 0.885_603_194_410_888_7).abs() < 1e-12);
        assert_eq!(x, gamma_min_abscissa());
    }

    #[test]
    fn gamma_minimum_concurrent_init() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(gamma_min_abscissa))
            .collect();
        let vals: Vec<f64> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn accuracy_contract_bounds() {
        assert!(GammaAccuracy::new(1e-10).is_ok());
        assert!(GammaAccuracy::new(0.0).is_err());
        assert!(GammaAccuracy::new(1e-3).is_err());
    }

    #[test]
    fn small_argument_ratio_is_tight() {
        for x in [0.3, 1.0, 2.5, 3.8, 7.3, 9.9] {
            let r = log_gamma_ratio(x, x + 1.0).unwrap();
            assert!((r + f64::ln(x)).abs() < 2e-15, "{x}");
        }
        // (1/2)_5 = Γ(5.5)/Γ(0.5)
        let poch = 0.5 * 1.5 * 2.5 * 3.5 * 4.5;
        assert!((gamma_ratio(5.5, 0.5).unwrap() / poch - 1.0).abs() < 4e-15);
        assert!(log_gamma_ratio(1e-300, 1e300).unwrap().is_finite());
    }
}
