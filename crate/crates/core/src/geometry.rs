//! Sampled verification of geometric properties of normalized functions on
//! discs `|z| < R`.
//!
//! A report is a certificate when it fails (the witness is a concrete point
//! with negative margin) and only evidence when it passes: points off the
//! grid are never examined.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::series::NormalizedFunction;

/// A point passes when its margin is at least `-PASS_TOL`.
pub const PASS_TOL: f64 = 1e-9;

/// Starlike/convex margins are skipped where the denominator is this small.
pub const DENOM_FLOOR: f64 = 1e-13;

pub const DEFAULT_RADII: usize = 64;
pub const DEFAULT_ANGLES: usize = 256;
pub const DEFAULT_MIN_RADIUS: f64 = 0.05;
pub const DEFAULT_MAX_RADIUS: f64 = 0.995;

/// Polar sampling grid of the unit disc. Points are `r e^{2πij/n}` for each
/// radius `r` and `j = 0..n`, so the real axis is always sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscGrid {
    radii: Vec<f64>,
    angles_per_radius: usize,
    max_radius: f64,
}

impl DiscGrid {
    pub fn new(radii: Vec<f64>, angles_per_radius: usize, max_radius: f64) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::Usage("grid needs at least one radius".into()));
        }
        if !(max_radius > 0.0 && max_radius < 1.0) {
            return Err(Error::Usage(format!(
                "max_radius must lie in (0, 1), got {max_radius}"
            )));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::Usage("grid radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Usage(
                "grid radii must be strictly increasing".into(),
            ));
        }
        if angles_per_radius < 8 {
            return Err(Error::Usage(format!(
                "angles_per_radius must be at least 8, got {angles_per_radius}"
            )));
        }
        Ok(DiscGrid {
            radii,
            angles_per_radius,
            max_radius,
        })
    }

    /// `n_radii` geometrically spaced radii from `r_min` to `max_radius`.
    pub fn geometric(
        n_radii: usize,
        angles_per_radius: usize,
        r_min: f64,
        max_radius: f64,
    ) -> Result<Self> {
        if n_radii == 0 {
            return Err(Error::Usage("grid needs at least one radius".into()));
        }
        if !(r_min > 0.0 && r_min <= max_radius) {
            return Err(Error::Usage(format!(
                "minimum radius must lie in (0, max_radius], got {r_min}"
            )));
        }
        let radii = if n_radii == 1 {
            vec![max_radius]
        } else {
            let step = (max_radius / r_min).ln() / (n_radii - 1) as f64;
            let mut v: Vec<f64> = (0..n_radii)
                .map(|i| r_min * (step * i as f64).exp())
                .collect();
            v[n_radii - 1] = max_radius;
            v
        };
        DiscGrid::new(radii, angles_per_radius, max_radius)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_radius(&self) -> usize {
        self.angles_per_radius
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    /// Same radii, angular resolution doubled.
    pub fn refined(&self) -> DiscGrid {
        DiscGrid {
            angles_per_radius: self.angles_per_radius * 2,
            ..self.clone()
        }
    }

    /// Grid points with `|z| ≤ domain_radius · max_radius`, radius-major.
    pub fn points(&self, domain_radius: f64) -> Vec<Complex64> {
        let limit = domain_radius * self.max_radius;
        let n = self.angles_per_radius;
        self.radii
            .iter()
            .filter(|r| **r <= limit)
            .flat_map(|&r| (0..n).map(move |j| polar_point(r, j, n)))
            .collect()
    }
}

/// `r e^{2πij/n}`, exact on the coordinate axes.
fn polar_point(r: f64, j: usize, n: usize) -> Complex64 {
    if (4 * j).is_multiple_of(n) {
        return match 4 * j / n {
            0 => Complex64::new(r, 0.0),
            1 => Complex64::new(0.0, r),
            2 => Complex64::new(-r, 0.0),
            _ => Complex64::new(0.0, -r),
        };
    }
    Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / n as f64)
}

impl Default for DiscGrid {
    fn default() -> Self {
        DiscGrid::geometric(
            DEFAULT_RADII,
            DEFAULT_ANGLES,
            DEFAULT_MIN_RADIUS,
            DEFAULT_MAX_RADIUS,
        )
        .expect("default grid is valid")
    }
}

impl fmt::Display for DiscGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} radii in [{}, {}] x {} angles",
            self.radii.len(),
            self.radii[0],
            self.radii[self.radii.len() - 1],
            self.angles_per_radius
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PropertyKind {
    /// `Re(z f'/f)`
    Starlike,
    /// `Re(1 + z f''/f')`
    Convex,
    /// `Re(z f'/f) - α`
    StarlikeOrder(f64),
    /// `Re(1 + z f''/f') - α`
    ConvexOrder(f64),
    /// `Re((1 - z) f')`
    CloseToConvexLog,
    /// `Re(f/z) - c`
    ReOverZ(f64),
    /// `c - |f' - 1|`
    DerivDist(f64),
    /// `c - |f/z - 1|`
    RatioDist(f64),
}

impl PropertyKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PropertyKind::StarlikeOrder(a) | PropertyKind::ConvexOrder(a)
                if !(0.0..1.0).contains(&a) =>
            {
                Err(Error::Usage(format!("order must lie in [0, 1), got {a}")))
            }
            PropertyKind::ReOverZ(c) | PropertyKind::DerivDist(c) | PropertyKind::RatioDist(c)
                if !(c.is_finite() && c > 0.0) =>
            {
                Err(Error::Usage(format!("constant must be positive, got {c}")))
            }
            _ => Ok(()),
        }
    }

    /// Margin at `z`, or `None` when the point must be skipped.
    fn margin<F: NormalizedFunction + ?Sized>(&self, f: &F, z: Complex64) -> Result<Option<f64>> {
        let one = Complex64::new(1.0, 0.0);
        Ok(Some(match *self {
            PropertyKind::Starlike | PropertyKind::StarlikeOrder(_) => {
                let q = f.value_over_z(z)?;
                if (q * z).norm() < DENOM_FLOOR {
                    return Ok(None);
                }
                let offset = if let PropertyKind::StarlikeOrder(a) = self {
                    *a
                } else {
                    0.0
                };
                (f.derivative(z)? / q).re - offset
            }
            PropertyKind::Convex | PropertyKind::ConvexOrder(_) => {
                let d1 = f.derivative(z)?;
                if d1.norm() < DENOM_FLOOR {
                    return Ok(None);
                }
                let offset = if let PropertyKind::ConvexOrder(a) = self {
                    *a
                } else {
                    0.0
                };
                (one + z * f.second_derivative(z)? / d1).re - offset
            }
            PropertyKind::CloseToConvexLog => ((one - z) * f.derivative(z)?).re,
            PropertyKind::ReOverZ(c) => f.value_over_z(z)?.re - c,
            PropertyKind::DerivDist(c) => c - (f.derivative(z)? - one).norm(),
            PropertyKind::RatioDist(c) => c - (f.value_over_z(z)? - one).norm(),
        }))
    }
}

fn parse_constant(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("cannot read constant '{s}'"));
    let s = s.trim();
    let v = if let Some((n, d)) = s.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| bad())?;
        let d = d.trim();
        let d: f64 = match d.strip_prefix("sqrt") {
            Some(r) => r
                .trim()
                .trim_matches(|c| c == '(' || c == ')')
                .parse::<f64>()
                .map_err(|_| bad())?
                .sqrt(),
            None => d.parse().map_err(|_| bad())?,
        };
        n / d
    } else {
        s.parse().map_err(|_| bad())?
    };
    Ok(v)
}

impl FromStr for PropertyKind {
    type Err = Error;

    /// Accepts `Starlike`, `Convex`, `CloseToConvexLog`, and
    /// `Name(c)` forms; `c` may be a decimal, `n/d` or `n/sqrtd`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once('(') {
            Some((n, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{s}'")))?;
                (n.trim(), Some(parse_constant(inner)?))
            }
            None => (s, None),
        };
        let kind = match (name.to_ascii_lowercase().as_str(), arg) {
            ("starlike", None) => PropertyKind::Starlike,
            ("convex", None) => PropertyKind::Convex,
            ("closetoconvexlog", None) => PropertyKind::CloseToConvexLog,
            ("starlike", Some(a)) | ("starlikeorder", Some(a)) => PropertyKind::StarlikeOrder(a),
            ("convex", Some(a)) | ("convexorder", Some(a)) => PropertyKind::ConvexOrder(a),
            ("reoverz", Some(c)) => PropertyKind::ReOverZ(c),
            ("derivdist", Some(c)) => PropertyKind::DerivDist(c),
            ("ratiodist", Some(c)) => PropertyKind::RatioDist(c),
            _ => return Err(Error::Parse(format!("unknown property kind '{s}'"))),
        };
        kind.validate().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(kind)
    }
}

impl fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyKind::Starlike => write!(f, "Starlike"),
            PropertyKind::Convex => write!(f, "Convex"),
            PropertyKind::StarlikeOrder(a) => write!(f, "StarlikeOrder({a})"),
            PropertyKind::ConvexOrder(a) => write!(f, "ConvexOrder({a})"),
            PropertyKind::CloseToConvexLog => write!(f, "CloseToConvexLog"),
            PropertyKind::ReOverZ(c) => write!(f, "ReOverZ({c})"),
            PropertyKind::DerivDist(c) => write!(f, "DerivDist({c})"),
            PropertyKind::RatioDist(c) => write!(f, "RatioDist({c})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReportKind {
    Property(PropertyKind),
    /// `Re(1 + 2 Σ α_k z^k)` for a candidate subordinating factor sequence.
    FactorSequence,
}

impl fmt::Display for ReportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportKind::Property(k) => k.fmt(f),
            ReportKind::FactorSequence => f.write_str("FactorSequence"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub kind: ReportKind,
    pub domain_radius: f64,
    pub min_margin: f64,
    pub witness: Complex64,
    pub pass: bool,
    pub points_checked: usize,
    pub points_skipped: usize,
    pub grid: String,
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property: {} on |z| < {}", self.kind, self.domain_radius)?;
        writeln!(f, "grid: {}", self.grid)?;
        writeln!(
            f,
            "points checked: {} (skipped {})",
            self.points_checked, self.points_skipped
        )?;
        writeln!(f, "min margin: {:.16e}", self.min_margin)?;
        writeln!(
            f,
            "witness: {:.16e} {:+.16e}i",
            self.witness.re, self.witness.im
        )?;
        let verdict = if self.pass {
            "PASS (sampled evidence only, not a proof)"
        } else {
            "FAIL (witness is a counterexample point)"
        };
        write!(f, "verdict: {verdict}")
    }
}

/// Smallest margin, ties broken by lexicographic point order.
fn reduce(results: Vec<(Complex64, Option<f64>)>) -> Option<(f64, Complex64, usize, usize)> {
    let mut best: Option<(f64, Complex64)> = None;
    let (mut checked, mut skipped) = (0, 0);
    for (z, m) in results {
        let Some(m) = m else {
            skipped += 1;
            continue;
        };
        checked += 1;
        let better = match best {
            None => true,
            Some((bm, bz)) => match m.total_cmp(&bm) {
                Ordering::Less => true,
                Ordering::Equal => (z.re, z.im) < (bz.re, bz.im),
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((m, z));
        }
    }
    best.map(|(m, z)| (m, z, checked, skipped))
}

fn check_domain_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "domain radius must lie in (0, 1], got {r}"
        )))
    }
}

pub fn verify_property<F: NormalizedFunction + ?Sized>(
    f: &F,
    kind: PropertyKind,
    grid: &DiscGrid,
    domain_radius: f64,
) -> Result<PropertyReport> {
    verify_property_with(f, kind, grid, domain_radius, Execution::default())
}

pub fn verify_property_with<F: NormalizedFunction + ?Sized>(
    f: &F,
    kind: PropertyKind,
    grid: &DiscGrid,
    domain_radius: f64,
    exec: Execution,
) -> Result<PropertyReport> {
    kind.validate()?;
    check_domain_radius(domain_radius)?;
    let points = grid.points(domain_radius);
    let margins = exec.map(points.len(), |i| kind.margin(f, points[i]));
    let mut evaluated = Vec::with_capacity(points.len());
    for (z, m) in points.iter().zip(margins) {
        evaluated.push((*z, m?));
    }
    finish(ReportKind::Property(kind), domain_radius, grid, evaluated)
}

fn finish(
    kind: ReportKind,
    domain_radius: f64,
    grid: &DiscGrid,
    evaluated: Vec<(Complex64, Option<f64>)>,
) -> Result<PropertyReport> {
    let (min_margin, witness, points_checked, points_skipped) =
        reduce(evaluated).ok_or_else(|| {
            Error::Degenerate(format!(
                "no grid point of |z| < {domain_radius} could be evaluated"
            ))
        })?;
    Ok(PropertyReport {
        kind,
        domain_radius,
        min_margin,
        witness,
        pass: min_margin >= -PASS_TOL,
        points_checked,
        points_skipped,
        grid: grid.to_string(),
    })
}

/// Numerical form of the subordinating-factor test: `Re(1 + 2 Σ α_k z^k) > 0`
/// on the unit disc, with `seq[k-1] = α_k` truncated to `prefix_len` terms.
pub fn subordinating_check(
    seq: &[f64],
    grid: &DiscGrid,
    prefix_len: usize,
) -> Result<PropertyReport> {
    subordinating_check_with(seq, grid, prefix_len, Execution::default())
}

pub fn subordinating_check_with(
    seq: &[f64],
    grid: &DiscGrid,
    prefix_len: usize,
    exec: Execution,
) -> Result<PropertyReport> {
    if prefix_len < 8 {
        return Err(Error::Usage(format!(
            "prefix length must be at least 8, got {prefix_len}"
        )));
    }
    let alpha = &seq[..seq.len().min(prefix_len)];
    let points = grid.points(1.0);
    let margins = exec.map(points.len(), |i| {
        let z = points[i];
        let tail = alpha
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| (acc + a) * z);
        Some(1.0 + 2.0 * tail.re)
    });
    let evaluated = points.into_iter().zip(margins).collect();
    finish(ReportKind::FactorSequence, 1.0, grid, evaluated)
}
