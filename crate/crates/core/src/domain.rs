//! The eight Ma–Minda target domains `phi(D)`: generator evaluation,
//! membership, boundary sampling and enclosing disks.
//!
//! Every generator is univalent on the unit disk with `phi(0) = 1`, and its
//! image is starlike about 1. Closed-form membership tests use principal
//! branches and are restricted to the connected component containing 1; the
//! winding-number test on the sampled boundary is the independent oracle.

use std::f64::consts::{E, FRAC_PI_2, PI, SQRT_2, TAU};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classification band around the defining threshold, relative to
/// `max(1, threshold)`.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// Boundary samples used by the winding oracle and numeric enclosing disks.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetDomain {
    /// `sqrt(1 + z)`, right loop of the lemniscate `|w^2 - 1| < 1`.
    Lemniscate,
    /// `(1 + Cz)/(1 + Dz)` with `-1 < D < C <= 1`.
    Janowski { c: f64, d: f64 },
    /// `2/(1 + e^-z)`.
    Sigmoid,
    /// `z + sqrt(1 + z^2)`.
    Crescent,
    /// `1 + z e^z`.
    Cardioid,
    /// `e^z`.
    Exponential,
    /// `1 + sin z`, the eight-shaped domain.
    Sine,
    /// `1 + asinh z`, the petal-shaped domain.
    Petal,
}

impl TargetDomain {
    pub const ALL_FIXED: [TargetDomain; 7] = [
        TargetDomain::Lemniscate,
        TargetDomain::Sigmoid,
        TargetDomain::Crescent,
        TargetDomain::Cardioid,
        TargetDomain::Exponential,
        TargetDomain::Sine,
        TargetDomain::Petal,
    ];

    /// Validated Janowski domain.
    pub fn janowski(c: f64, d: f64) -> Result<Self> {
        if !(c.is_finite() && d.is_finite() && -1.0 < d && d < c && c <= 1.0) {
            return Err(Error::InvalidJanowskiParams { c, d });
        }
        Ok(TargetDomain::Janowski { c, d })
    }

    /// Re-checks parameters of a value built directly from the enum.
    pub fn validate(&self) -> Result<()> {
        if let TargetDomain::Janowski { c, d } = *self {
            Self::janowski(c, d)?;
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            TargetDomain::Lemniscate => "lemniscate",
            TargetDomain::Janowski { .. } => "janowski",
            TargetDomain::Sigmoid => "sigmoid",
            TargetDomain::Crescent => "crescent",
            TargetDomain::Cardioid => "cardioid",
            TargetDomain::Exponential => "exponential",
            TargetDomain::Sine => "sine",
            TargetDomain::Petal => "petal",
        }
    }

    /// `phi(z)` with principal branches.
    pub fn generate(&self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            TargetDomain::Lemniscate => (one + z).sqrt(),
            TargetDomain::Janowski { c, d } => (one + z * c) / (one + z * d),
            TargetDomain::Sigmoid => 2.0 / (one + (-z).exp()),
            TargetDomain::Crescent => z + (one + z * z).sqrt(),
            TargetDomain::Cardioid => one + z * z.exp(),
            TargetDomain::Exponential => z.exp(),
            TargetDomain::Sine => one + z.sin(),
            TargetDomain::Petal => one + z.asinh(),
        }
    }

    /// Taylor coefficients of `phi` up to `order`.
    pub fn taylor(&self, order: usize) -> crate::series::PowerSeries {
        use crate::series::PowerSeries;
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut fact = vec![1.0f64; order + 2];
        for k in 1..fact.len() {
            fact[k] = fact[k - 1] * k as f64;
        }
        let coeffs: Vec<Complex64> = match *self {
            TargetDomain::Lemniscate => {
                // binomial(1/2, k)
                let mut b = vec![c(1.0); order + 1];
                for k in 1..=order {
                    b[k] = b[k - 1] * (0.5 - (k - 1) as f64) / k as f64;
                }
                b
            }
            TargetDomain::Janowski { c: cc, d } => (0..=order)
                .map(|k| match k {
                    0 => c(1.0),
                    k => c((cc - d) * (-d).powi(k as i32 - 1)),
                })
                .collect(),
            TargetDomain::Sigmoid => {
                // 2/(1 + e^-z) = 1 + tanh(z/2); solve (1 + e^-z) s = 2 termwise
                let e: Vec<f64> = (0..=order)
                    .map(|k| {
                        if k == 0 {
                            2.0
                        } else {
                            (-1f64).powi(k as i32) / fact[k]
                        }
                    })
                    .collect();
                let mut s = vec![0.0; order + 1];
                for k in 0..=order {
                    let rhs = if k == 0 { 2.0 } else { 0.0 };
                    let acc: f64 = (1..=k).map(|j| e[j] * s[k - j]).sum();
                    s[k] = (rhs - acc) / e[0];
                }
                s.into_iter().map(c).collect()
            }
            TargetDomain::Crescent => {
                // z + sqrt(1 + z^2)
                let mut out = vec![c(0.0); order + 1];
                let mut b = 1.0;
                for j in 0..=order / 2 {
                    if j > 0 {
                        b *= (0.5 - (j - 1) as f64) / j as f64;
                    }
                    out[2 * j] = c(b);
                }
                out[1] += c(1.0);
                out
            }
            TargetDomain::Cardioid => (0..=order)
                .map(|k| match k {
                    0 => c(1.0),
                    k => c(1.0 / fact[k - 1]),
                })
                .collect(),
            TargetDomain::Exponential => (0..=order).map(|k| c(1.0 / fact[k])).collect(),
            TargetDomain::Sine => (0..=order)
                .map(|k| match k {
                    0 => c(1.0),
                    k if k % 2 == 1 => c(if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact[k]),
                    _ => c(0.0),
                })
                .collect(),
            TargetDomain::Petal => {
                // asinh z = sum (-1)^j (2j)! / (4^j (j!)^2 (2j+1)) z^(2j+1)
                let mut out = vec![c(0.0); order + 1];
                out[0] = c(1.0);
                let mut central = 1.0;
                for j in 0.. {
                    let k = 2 * j + 1;
                    if k > order {
                        break;
                    }
                    if j > 0 {
                        central *= (2 * j - 1) as f64 / (2 * j) as f64;
                    }
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    out[k] = c(sign * central / k as f64);
                }
                out
            }
        };
        PowerSeries::new(coeffs).expect("generator coefficients are finite")
    }

    /// Defining functional `F(w)` and threshold `T` with `w` inside iff `F < T`.
    /// `None` means `w` is off the principal component (or at a pole of the
    /// inverse) and is outside.
    fn functional(&self, w: Complex64) -> Option<(f64, f64)> {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            TargetDomain::Lemniscate => (w.re > 0.0).then(|| ((w * w - one).norm(), 1.0)),
            TargetDomain::Janowski { c, d } => {
                let denom = 1.0 - d * d;
                let center = Complex64::new((1.0 - c * d) / denom, 0.0);
                Some(((w - center).norm(), (c - d) / denom))
            }
            TargetDomain::Sigmoid => {
                let two = Complex64::new(2.0, 0.0);
                (w.norm() > 0.0 && (two - w).norm() > 0.0)
                    .then(|| ((w / (two - w)).ln().norm(), 1.0))
            }
            TargetDomain::Crescent => {
                (w.re > 0.0).then(|| ((w * w - one).norm() / (2.0 * w.norm()), 1.0))
            }
            TargetDomain::Cardioid => Some((cardioid_radial_ratio(w), 1.0)),
            TargetDomain::Exponential => (w.norm() > 0.0).then(|| (w.ln().norm(), 1.0)),
            TargetDomain::Sine => Some(((w - one).asin().norm(), 1.0)),
            TargetDomain::Petal => (w.im.abs() < FRAC_PI_2).then(|| ((w - one).sinh().norm(), 1.0)),
        }
    }

    /// Strict membership in the open domain `phi(D)`.
    ///
    /// The Cardioid has no closed-form inequality; it is tested against its
    /// radial boundary function, which exists because the domain is starlike
    /// about 1. For the Sine domain, points with `|Re w - 1| > 1` are also run
    /// through the winding oracle and the verdict defers to it on
    /// disagreement (reported in `branch_ambiguity`).
    pub fn contains(&self, w: Complex64) -> MembershipVerdict {
        let verdict = self.contains_closed_form(w);
        if matches!(self, TargetDomain::Sine) && (w.re - 1.0).abs() > 1.0 {
            let excess = (w - 1.0).norm() - 1f64.sinh();
            if excess > BOUNDARY_BAND {
                return MembershipVerdict::outside(excess);
            }
            if let Ok(oracle) = sine_winding_membership(w) {
                if oracle.status != verdict.status {
                    return MembershipVerdict {
                        branch_ambiguity: true,
                        ..oracle
                    };
                }
            }
        }
        verdict
    }

    fn contains_closed_form(&self, w: Complex64) -> MembershipVerdict {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return MembershipVerdict::outside(f64::INFINITY);
        }
        match self.functional(w) {
            None => MembershipVerdict::outside(f64::INFINITY),
            Some((value, threshold)) => MembershipVerdict::classify(value, threshold),
        }
    }

    /// `phi(e^{i theta_k})` for `theta_k = 2 pi k / samples`.
    pub fn boundary(&self, samples: usize) -> Result<Vec<Complex64>> {
        if samples < 8 {
            return Err(Error::InvalidInput(format!(
                "boundary needs at least 8 samples, got {samples}"
            )));
        }
        Ok((0..samples)
            .map(|k| self.generate(Complex64::from_polar(1.0, TAU * k as f64 / samples as f64)))
            .collect())
    }

    /// Winding number of the sampled boundary polygon around `w`; inside iff
    /// the winding number is 1.
    pub fn winding_membership(&self, w: Complex64, samples: usize) -> Result<MembershipVerdict> {
        let curve = self.boundary(samples)?;
        let distance = polygon_distance(&curve, w);
        if distance < BOUNDARY_BAND {
            return Err(Error::TooCloseToBoundary { distance });
        }
        let status = if winding_number(&curve, w) == 1 {
            MembershipStatus::Inside
        } else {
            MembershipStatus::Outside
        };
        Ok(MembershipVerdict {
            status,
            distance_hint: distance,
            branch_ambiguity: false,
        })
    }

    /// Disk about 1 containing the domain.
    pub fn enclosing_disk(&self) -> EnclosingDisk {
        let center = Complex64::new(1.0, 0.0);
        let radius = match self {
            TargetDomain::Cardioid => E,
            TargetDomain::Petal => FRAC_PI_2,
            TargetDomain::Sine => 1f64.sinh(),
            _ => self.numeric_enclosing_radius(DEFAULT_BOUNDARY_SAMPLES),
        };
        EnclosingDisk { center, radius }
    }

    /// `max_k |phi(e^{i theta_k}) - 1|` over the sampled boundary.
    pub fn numeric_enclosing_radius(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| {
                let z = Complex64::from_polar(1.0, TAU * k as f64 / samples as f64);
                (self.generate(z) - 1.0).norm()
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for TargetDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetDomain::Janowski { c, d } => write!(f, "janowski(C={c}, D={d})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Parses the fixed kinds; Janowski parses with defaults `C = 1, D = 0` and is
/// expected to be rebuilt with [`TargetDomain::janowski`] when parameters are
/// supplied.
impl FromStr for TargetDomain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "lemniscate" => TargetDomain::Lemniscate,
            "janowski" => TargetDomain::Janowski { c: 1.0, d: 0.0 },
            "sigmoid" => TargetDomain::Sigmoid,
            "crescent" => TargetDomain::Crescent,
            "cardioid" => TargetDomain::Cardioid,
            "exponential" => TargetDomain::Exponential,
            "sine" => TargetDomain::Sine,
            "petal" => TargetDomain::Petal,
            other => return Err(Error::InvalidInput(format!("unknown domain '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipStatus {
    Inside,
    Outside,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    /// `|F(w) - T|` for closed-form tests, distance to the sampled boundary
    /// for the winding oracle.
    pub distance_hint: f64,
    /// The principal-branch test disagreed with the winding oracle.
    pub branch_ambiguity: bool,
}

impl MembershipVerdict {
    fn outside(distance_hint: f64) -> Self {
        Self {
            status: MembershipStatus::Outside,
            distance_hint,
            branch_ambiguity: false,
        }
    }

    fn classify(value: f64, threshold: f64) -> Self {
        let gap = value - threshold;
        let band = BOUNDARY_BAND * threshold.max(1.0);
        let status = if gap.abs() < band {
            MembershipStatus::Boundary
        } else if gap < 0.0 {
            MembershipStatus::Inside
        } else {
            MembershipStatus::Outside
        };
        Self {
            status,
            distance_hint: gap.abs(),
            branch_ambiguity: false,
        }
    }

    /// Inside or within the boundary band.
    pub fn is_inside_or_boundary(&self) -> bool {
        self.status != MembershipStatus::Outside
    }

    /// Signed excess of the functional over its threshold; positive outside.
    pub fn excess(&self) -> f64 {
        match self.status {
            MembershipStatus::Outside => self.distance_hint,
            MembershipStatus::Inside => -self.distance_hint,
            MembershipStatus::Boundary => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnclosingDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl EnclosingDisk {
    pub fn contains(&self, w: Complex64) -> bool {
        (w - self.center).norm() <= self.radius
    }
}

fn segment_distance(a: Complex64, b: Complex64, w: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (w - a).norm();
    }
    let t = (((w - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (w - (a + ab * t)).norm()
}

/// Distance from `w` to the closed polygon through `curve`.
pub fn polygon_distance(curve: &[Complex64], w: Complex64) -> f64 {
    let n = curve.len();
    (0..n)
        .map(|k| segment_distance(curve[k], curve[(k + 1) % n], w))
        .fold(f64::INFINITY, f64::min)
}

/// Winding number of the closed polygon `curve` around `w`.
pub fn winding_number(curve: &[Complex64], w: Complex64) -> i64 {
    let n = curve.len();
    let total: f64 = (0..n)
        .map(|k| ((curve[(k + 1) % n] - w) / (curve[k] - w)).arg())
        .sum();
    (total / TAU).round() as i64
}

const CARDIOID_TABLE_SIZE: usize = 1024;

fn cardioid_angle(theta: f64) -> (f64, f64) {
    let v = TargetDomain::Cardioid.generate(Complex64::from_polar(1.0, theta)) - 1.0;
    (v.im.atan2(v.re), v.norm())
}

fn sine_winding_membership(w: Complex64) -> Result<MembershipVerdict> {
    static CURVE: OnceLock<Vec<Complex64>> = OnceLock::new();
    let curve = CURVE.get_or_init(|| {
        TargetDomain::Sine
            .boundary(DEFAULT_BOUNDARY_SAMPLES)
            .expect("sample count above minimum")
    });
    let distance = polygon_distance(curve, w);
    if distance < BOUNDARY_BAND {
        return Err(Error::TooCloseToBoundary { distance });
    }
    let status = if winding_number(curve, w) == 1 {
        MembershipStatus::Inside
    } else {
        MembershipStatus::Outside
    };
    Ok(MembershipVerdict {
        status,
        distance_hint: distance,
        branch_ambiguity: false,
    })
}

/// `arg(phi(e^{i theta}) - 1)` on `theta in [0, pi]`, increasing from 0 to pi.
fn cardioid_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=CARDIOID_TABLE_SIZE)
            .map(|k| {
                let theta = PI * k as f64 / CARDIOID_TABLE_SIZE as f64;
                if k == CARDIOID_TABLE_SIZE {
                    PI
                } else {
                    cardioid_angle(theta).0
                }
            })
            .collect()
    })
}

/// `|w - 1| / R(arg(w - 1))` where `R` is the radial boundary function of the
/// cardioid domain about 1. Values below 1 are inside.
fn cardioid_radial_ratio(w: Complex64) -> f64 {
    let v = w - 1.0;
    let rho = v.norm();
    if rho == 0.0 {
        return 0.0;
    }
    let alpha = v.im.abs().atan2(v.re);
    let table = cardioid_table();
    let k = table
        .partition_point(|&a| a < alpha)
        .clamp(1, CARDIOID_TABLE_SIZE);
    let step = PI / CARDIOID_TABLE_SIZE as f64;
    let (mut lo, mut hi) = ((k - 1) as f64 * step, k as f64 * step);
    let (mut flo, mut fhi) = (table[k - 1] - alpha, table[k] - alpha);
    // Illinois regula falsi on the monotone angle function
    let mut theta = lo;
    let mut side = 0i8;
    for _ in 0..60 {
        if fhi == flo {
            break;
        }
        theta = (lo * fhi - hi * flo) / (fhi - flo);
        let f = if theta >= PI {
            PI - alpha
        } else {
            cardioid_angle(theta).0 - alpha
        };
        if f.abs() < 1e-15 || (hi - lo) < 1e-15 {
            break;
        }
        if (f > 0.0) == (fhi > 0.0) {
            hi = theta;
            fhi = f;
            if side == 1 {
                flo *= 0.5;
            }
            side = 1;
        } else {
            lo = theta;
            flo = f;
            if side == -1 {
                fhi *= 0.5;
            }
            side = -1;
        }
    }
    rho / cardioid_angle(theta).1
}

/// `min_theta |log(1 + rho e^{i theta})|` over `samples` angles.
pub fn min_log_modulus_on_circle(rho: f64, samples: usize) -> f64 {
    (0..samples)
        .map(|k| {
            let z = Complex64::from_polar(rho, TAU * k as f64 / samples as f64);
            (1.0 + z).ln().norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// `|log(1 + z)| >= 1` for every sampled `|z| = rho`.
pub fn log_modulus_criterion(rho: f64, samples: usize) -> bool {
    min_log_modulus_on_circle(rho, samples) >= 1.0
}

/// Radius of the largest disk about 1 inside the crescent domain's bounding
/// circle `|w - 1| = sqrt 2`.
pub const CRESCENT_OUTER_RADIUS: f64 = SQRT_2;
