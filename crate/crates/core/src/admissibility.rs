//! Boundary extremal functions of the dominants `q(z) = 1 + sin z` and
//! `q(z) = 1 + asinh z`, their extremal constants, and admissible-tuple
//! checks.
//!
//! On `zeta = e^{i theta}`:
//!
//! * `n1 = |q'(zeta)|` and `n2 = Re(zeta q''/q')` for the sine dominant, with
//!   `n3 = Re(zeta^2 q'''/q')`;
//! * `n4 = |q'(zeta)|` and `n5 = Re(zeta q''/q')` for the petal dominant.

use std::f64::consts::{E, FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::optimize::{bisect, grid_then_golden, newton_polish, Minimum};
use crate::par::Exec;
use crate::series::PowerSeries;

/// `|cos theta|` below which the petal profile is treated as singular.
pub const SINGULAR_COS: f64 = 1e-9;

/// Tolerance for matching `r = q(zeta)` and `s = m zeta q'(zeta)`.
pub const TUPLE_MATCH_TOLERANCE: f64 = 1e-9;

const DEGENERATE_S: f64 = 1e-12;

/// Grid size of the extremal-constant cross-check.
pub const MINIMIZATION_GRID: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileTarget {
    Sine,
    Petal,
}

impl ProfileTarget {
    pub fn q(&self, z: Complex64) -> Complex64 {
        match self {
            ProfileTarget::Sine => 1.0 + z.sin(),
            ProfileTarget::Petal => 1.0 + z.asinh(),
        }
    }

    pub fn q_prime(&self, z: Complex64) -> Complex64 {
        match self {
            ProfileTarget::Sine => z.cos(),
            ProfileTarget::Petal => (1.0 + z * z).sqrt().inv(),
        }
    }
}

pub fn n1(theta: f64) -> f64 {
    (theta.sin().cosh().powi(2) - theta.cos().sin().powi(2)).sqrt()
}

pub fn n2(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (-c * (2.0 * c).sin() + s * (2.0 * s).sinh()) / ((2.0 * c).cos() + (2.0 * s).cosh())
}

pub fn n3(theta: f64) -> f64 {
    -(2.0 * theta).cos()
}

/// `1 / (sqrt 2 |cos theta|^{1/2})`, i.e. `|q'(e^{i theta})|` for the petal
/// dominant.
pub fn n4(theta: f64) -> Result<f64> {
    let c = theta.cos().abs();
    if c < SINGULAR_COS {
        return Err(Error::SingularTheta { theta });
    }
    Ok(1.0 / (SQRT_2 * c.sqrt()))
}

/// `Re(zeta q''(zeta)/q'(zeta)) = Re(-zeta^2 / (1 + zeta^2))` for the petal
/// dominant, with `1 + zeta^2` formed as `2 cos(theta) zeta` to avoid
/// cancellation near `theta = pi/2`. Constant `-1/2` off the singular points.
pub fn n5(theta: f64) -> f64 {
    let zeta = Complex64::from_polar(1.0, theta);
    (-zeta * zeta / (zeta * (2.0 * theta.cos()))).re
}

/// The same quotient evaluated naively; roundoff grows like
/// `eps / cos^2 theta` near the singular points.
pub fn n5_direct(theta: f64) -> f64 {
    let z2 = Complex64::from_polar(1.0, 2.0 * theta);
    (-z2 / (1.0 + z2)).re
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityProfile {
    pub target: ProfileTarget,
    /// `min_theta |q'(e^{i theta})|`.
    pub nu0: f64,
    /// `min_theta Re(zeta q''/q')`.
    pub nu1: f64,
    pub theta_exclusions: Vec<f64>,
}

pub fn nu_constants(target: ProfileTarget) -> AdmissibilityProfile {
    match target {
        ProfileTarget::Sine => AdmissibilityProfile {
            target,
            nu0: (1.0 - 1f64.sin().powi(2)).sqrt(),
            nu1: -(2f64.sin()) / (1.0 + 2f64.cos()),
            theta_exclusions: Vec::new(),
        },
        ProfileTarget::Petal => AdmissibilityProfile {
            target,
            nu0: FRAC_1_SQRT_2,
            nu1: -0.5,
            theta_exclusions: vec![FRAC_PI_2, 3.0 * FRAC_PI_2],
        },
    }
}

/// Numerically minimized profile functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileMinima {
    pub nu0: f64,
    /// Argmin mapped into `(-pi, pi]`.
    pub nu0_theta: f64,
    pub nu1: f64,
    pub nu1_theta: f64,
}

fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

/// Grid (`points` samples on `[0, 2 pi)`) plus golden-section minimization of
/// the two profile functions of `target`.
pub fn minimize_profile(target: ProfileTarget, points: usize, exec: Exec) -> ProfileMinima {
    type Profile = fn(f64) -> f64;
    let (f0, f1): (Profile, Profile) = match target {
        ProfileTarget::Sine => (n1, n2),
        ProfileTarget::Petal => (|t| n4(t).unwrap_or(f64::INFINITY), n5_or_excluded),
    };
    let m0: Minimum = grid_then_golden(f0, 0.0, TAU, points, 1e-12, exec);
    let m1: Minimum = grid_then_golden(f1, 0.0, TAU, points, 1e-12, exec);
    ProfileMinima {
        nu0: m0.value,
        nu0_theta: wrap_angle(m0.x),
        nu1: m1.value,
        nu1_theta: wrap_angle(m1.x),
    }
}

fn n5_or_excluded(theta: f64) -> f64 {
    if theta.cos().abs() < SINGULAR_COS {
        f64::INFINITY
    } else {
        n5(theta)
    }
}

/// Positive root of `r^2 + 2 cot(1) r - 1 = 0` by bisection on `(0, 1)` and
/// a Newton polish.
pub fn solve_r0() -> f64 {
    let cot1 = 1.0 / 1f64.tan();
    let g = |r: f64| r * r + 2.0 * cot1 * r - 1.0;
    let root = bisect(g, 0.0, 1.0, 1e-15).expect("sign change on (0, 1)");
    newton_polish(g, |r| 2.0 * r + 2.0 * cot1, root, 0.0, 1.0, 4)
}

/// `min_theta |log((1 + R e^{i theta}) / (1 - R e^{i theta}))|`.
pub fn min_log_quotient_on_circle(radius: f64, samples: usize) -> f64 {
    (0..samples)
        .map(|k| {
            let z = Complex64::from_polar(radius, TAU * k as f64 / samples as f64);
            ((1.0 + z) / (1.0 - z)).ln().norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Named constants reported by the `constants` command.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub nu0: f64,
    pub nu1: f64,
    pub r0: f64,
    pub sinh1: f64,
    pub e_minus_1: f64,
    pub half_pi: f64,
    pub sqrt2: f64,
    pub e: f64,
}

pub fn constants() -> Constants {
    let sine = nu_constants(ProfileTarget::Sine);
    Constants {
        nu0: sine.nu0,
        nu1: sine.nu1,
        r0: solve_r0(),
        sinh1: 1f64.sinh(),
        e_minus_1: E - 1.0,
        half_pi: FRAC_PI_2,
        sqrt2: SQRT_2,
        e: E,
    }
}

/// Boundary tuple `(r, s, t[, u])` at `zeta = e^{i theta}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityTuple {
    pub r: Complex64,
    pub s: Complex64,
    pub t: Complex64,
    pub u: Option<Complex64>,
    pub theta: f64,
    pub m: u32,
    /// Only used by the third-order check.
    pub k: Option<u32>,
}

impl AdmissibilityTuple {
    /// `r = q(zeta)`, `s = m zeta q'(zeta)` with the given `t`.
    pub fn on_boundary(target: ProfileTarget, theta: f64, m: u32, t: Complex64) -> Result<Self> {
        if target == ProfileTarget::Petal {
            n4(theta)?;
        }
        let zeta = Complex64::from_polar(1.0, theta);
        Ok(Self {
            r: target.q(zeta),
            s: zeta * target.q_prime(zeta) * m as f64,
            t,
            u: None,
            theta,
            m,
            k: None,
        })
    }

    pub fn with_third(mut self, u: Complex64, k: u32) -> Self {
        self.u = Some(u);
        self.k = Some(k);
        self
    }

    fn matches(&self, target: ProfileTarget) -> Result<bool> {
        if target == ProfileTarget::Petal {
            n4(self.theta)?;
        }
        let zeta = Complex64::from_polar(1.0, self.theta);
        let r = target.q(zeta);
        let s = zeta * target.q_prime(zeta) * self.m as f64;
        Ok((self.r - r).norm() <= TUPLE_MATCH_TOLERANCE
            && (self.s - s).norm() <= TUPLE_MATCH_TOLERANCE)
    }
}

/// `Re(1 + t/s) >= m (1 + n(theta))` with `n = n2` (sine) or `n5` (petal).
/// Depends on `s, t` only through `t/s`.
pub fn second_order_inequality(
    target: ProfileTarget,
    s: Complex64,
    t: Complex64,
    theta: f64,
    m: u32,
) -> Result<bool> {
    if s.norm() < DEGENERATE_S {
        return Err(Error::DegenerateS(s.norm()));
    }
    let n = match target {
        ProfileTarget::Sine => n2(theta),
        ProfileTarget::Petal => {
            n4(theta)?;
            n5(theta)
        }
    };
    Ok((1.0 + t / s).re >= m as f64 * (1.0 + n))
}

/// `Re(u/s) >= m^2 n3(theta) + 3 m (k - 1) n2(theta)` for the sine dominant.
pub fn third_order_inequality(
    s: Complex64,
    u: Complex64,
    theta: f64,
    m: u32,
    k: u32,
) -> Result<bool> {
    if s.norm() < DEGENERATE_S {
        return Err(Error::DegenerateS(s.norm()));
    }
    Ok((u / s).re >= third_order_threshold(theta, m, k))
}

pub fn third_order_threshold(theta: f64, m: u32, k: u32) -> f64 {
    let (m, k) = (m as f64, k as f64);
    m * m * n3(theta) + 3.0 * m * (k - 1.0) * n2(theta)
}

pub fn admissible_second_order(tuple: &AdmissibilityTuple, target: ProfileTarget) -> Result<bool> {
    if tuple.m < 1 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if tuple.s.norm() < DEGENERATE_S {
        return Err(Error::DegenerateS(tuple.s.norm()));
    }
    Ok(tuple.matches(target)?
        && second_order_inequality(target, tuple.s, tuple.t, tuple.theta, tuple.m)?)
}

/// Third-order check; only the sine dominant has one.
pub fn admissible_third_order(tuple: &AdmissibilityTuple, target: ProfileTarget) -> Result<bool> {
    if target == ProfileTarget::Petal {
        return Err(Error::NoThirdOrderPetal);
    }
    let u = tuple.u.ok_or(Error::MissingU)?;
    let k = tuple.k.unwrap_or(tuple.m);
    if tuple.m < 2 || k < tuple.m {
        return Err(Error::InvalidMK { m: tuple.m, k });
    }
    Ok(admissible_second_order(tuple, target)?
        && third_order_inequality(tuple.s, u, tuple.theta, tuple.m, k)?)
}

/// `sup |z p'(z)| <= m nu0` over the grid, where `nu0 = min |q'|` on the
/// unit circle. This bounds `|z p'(z) / q'(zeta)| <= m` for every boundary
/// `zeta`.
pub fn derivative_bound_check(
    p: &PowerSeries,
    target: ProfileTarget,
    m: u32,
    grid: &GridSpec,
) -> Result<bool> {
    grid.validate()?;
    let nu0 = nu_constants(target).nu0;
    let zp = p.euler_derivative();
    let bound = m as f64 * nu0;
    Ok(grid.points().all(|z| zp.evaluate(z).norm() <= bound))
}
