//! Fox-Wright parameter tuples and the convergence classification of
//! their defining series.

use std::fmt;

use crate::error::{Error, Result};

/// Largest number of upper or lower pairs accepted.
pub const MAX_PAIRS: usize = 16;

/// `|Δ + 1|` at or below this is treated as the boundary case `Δ = -1`.
pub const DELTA_TOL: f64 = 1e-12;

/// One `(value, weight)` pair, i.e. `(a_i, A_i)` or `(b_j, B_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair {
    pub value: f64,
    pub weight: f64,
}

impl Pair {
    pub fn new(value: f64, weight: f64) -> Self {
        Pair { value, weight }
    }
}

impl From<(f64, f64)> for Pair {
    fn from((value, weight): (f64, f64)) -> Self {
        Pair { value, weight }
    }
}

/// Parameters `((a_i, A_i)_i ; (b_j, B_j)_j)` of `pΨq`.
///
/// All values and weights are positive reals; either list may be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct FWParams {
    upper: Vec<Pair>,
    lower: Vec<Pair>,
}

fn validate(pairs: &[Pair], side: &str, sym: (&str, &str)) -> Result<()> {
    if pairs.len() > MAX_PAIRS {
        return Err(Error::Constraint(format!(
            "{side} list has {} pairs, at most {MAX_PAIRS} allowed",
            pairs.len()
        )));
    }
    for (i, p) in pairs.iter().enumerate() {
        if !(p.value.is_finite() && p.value > 0.0) {
            return Err(Error::Constraint(format!(
                "{side}[{i}]: {} must be positive and finite, got {}",
                sym.0, p.value
            )));
        }
        if !(p.weight.is_finite() && p.weight > 0.0) {
            return Err(Error::Constraint(format!(
                "{side}[{i}]: weight {} must be positive and finite, got {}",
                sym.1, p.weight
            )));
        }
    }
    Ok(())
}

impl FWParams {
    pub fn new<U, L>(upper: U, lower: L) -> Result<Self>
    where
        U: IntoIterator,
        U::Item: Into<Pair>,
        L: IntoIterator,
        L::Item: Into<Pair>,
    {
        let upper: Vec<Pair> = upper.into_iter().map(Into::into).collect();
        let lower: Vec<Pair> = lower.into_iter().map(Into::into).collect();
        validate(&upper, "upper", ("a", "A"))?;
        validate(&lower, "lower", ("b", "B"))?;
        Ok(FWParams { upper, lower })
    }

    pub fn upper(&self) -> &[Pair] {
        &self.upper
    }

    pub fn lower(&self) -> &[Pair] {
        &self.lower
    }

    /// Number of upper pairs.
    pub fn p(&self) -> usize {
        self.upper.len()
    }

    /// Number of lower pairs.
    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// `ΣB_j - ΣA_i`
    pub fn delta(&self) -> f64 {
        self.lower.iter().map(|p| p.weight).sum::<f64>()
            - self.upper.iter().map(|p| p.weight).sum::<f64>()
    }

    /// `(Π A_i^{-A_i}) (Π B_j^{B_j})`, computed in log space.
    pub fn rho(&self) -> f64 {
        let ln = self
            .lower
            .iter()
            .map(|p| p.weight * p.weight.ln())
            .sum::<f64>()
            - self
                .upper
                .iter()
                .map(|p| p.weight * p.weight.ln())
                .sum::<f64>();
        ln.exp()
    }

    /// `Σb_j - Σa_i + (p - q)/2`
    pub fn mu(&self) -> f64 {
        self.lower.iter().map(|p| p.value).sum::<f64>()
            - self.upper.iter().map(|p| p.value).sum::<f64>()
            + (self.p() as f64 - self.q() as f64) / 2.0
    }

    /// Same weights, values shifted by their own weight: `(a_i + A_i, A_i)`,
    /// `(b_j + B_j, B_j)`.
    pub fn shifted(&self) -> FWParams {
        let shift = |v: &[Pair]| -> Vec<Pair> {
            v.iter()
                .map(|p| Pair::new(p.value + p.weight, p.weight))
                .collect()
        };
        FWParams {
            upper: shift(&self.upper),
            lower: shift(&self.lower),
        }
    }

    /// Prepends `(1, 1)` to the upper list: `p+1Ψ̃p[(1,1),(a_p,A_p); (b_p,B_p)]`.
    pub fn with_unit_upper(&self) -> Result<FWParams> {
        let mut upper = Vec::with_capacity(self.upper.len() + 1);
        upper.push(Pair::new(1.0, 1.0));
        upper.extend_from_slice(&self.upper);
        FWParams::new(upper, self.lower.clone())
    }

    /// Prepends `(2, 1)` to the lower list: `pΨ̃p+1[(a_p,A_p); (2,1),(b_p,B_p)]`.
    pub fn with_lower_two(&self) -> Result<FWParams> {
        let mut lower = Vec::with_capacity(self.lower.len() + 1);
        lower.push(Pair::new(2.0, 1.0));
        lower.extend_from_slice(&self.lower);
        FWParams::new(self.upper.clone(), lower)
    }
}

impl fmt::Display for FWParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Pair]| {
            v.iter()
                .map(|p| format!("({}, {})", p.value, p.weight))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "upper=[{}] lower=[{}]",
            list(&self.upper),
            list(&self.lower)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Entire,
    Disc {
        radius: f64,
        boundary_converges: bool,
    },
    Divergent,
}

/// Convergence classification of the series defining `pΨq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceClass {
    pub delta: f64,
    /// Present only in the boundary case `Δ = -1`.
    pub mu: Option<f64>,
    pub verdict: Verdict,
}

impl ConvergenceClass {
    /// Open-disc radius the series may be evaluated in; `None` for the whole plane.
    pub fn radius(&self) -> Option<f64> {
        match self.verdict {
            Verdict::Entire => None,
            Verdict::Disc { radius, .. } => Some(radius),
            Verdict::Divergent => Some(0.0),
        }
    }
}

pub fn convergence(params: &FWParams) -> ConvergenceClass {
    let delta = params.delta();
    if (delta + 1.0).abs() <= DELTA_TOL {
        let mu = params.mu();
        ConvergenceClass {
            delta,
            mu: Some(mu),
            verdict: Verdict::Disc {
                radius: params.rho(),
                boundary_converges: mu > 0.5,
            },
        }
    } else if delta > -1.0 {
        ConvergenceClass {
            delta,
            mu: None,
            verdict: Verdict::Entire,
        }
    } else {
        ConvergenceClass {
            delta,
            mu: None,
            verdict: Verdict::Divergent,
        }
    }
}
