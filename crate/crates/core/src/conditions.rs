//! Sufficient parameter conditions for the subordination implications
//! `Phi(p) < h  =>  p < q` with `q` the sine or petal dominant.
//!
//! Every condition is a lower bound on one core quantity:
//!
//! * sine, second order: `X = nu0 (b1 + b2 nu1)`;
//! * sine, third order: `Y = nu0 (b1 + b2 nu1 + b3 (-m^2 + 3 m (k - 1) nu1))`;
//! * petal, second order: `W = 2 b1 - b2`.
//!
//! The threshold on the core quantity depends on the majorant `h`. Lemniscate
//! majorants use a quadratic form, Janowski majorants a product form. The
//! quadratic forms are read on their increasing branch: a core value below the
//! vertex is evaluated at the vertex, so negative cores never pass.

use std::f64::consts::{E, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::admissibility::{nu_constants, solve_r0, ProfileTarget};
use crate::domain::TargetDomain;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::series::OperatorParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremId {
    pub target: ProfileTarget,
    pub order: u8,
    /// The majorant `h` of the operator.
    pub h: TargetDomain,
}

impl TheoremId {
    pub fn new(target: ProfileTarget, order: u8, h: TargetDomain) -> Result<Self> {
        let id = Self { target, order, h };
        id.validate()?;
        Ok(id)
    }

    pub fn validate(&self) -> Result<()> {
        match (self.target, self.order) {
            (_, 2) | (ProfileTarget::Sine, 3) => {}
            (ProfileTarget::Petal, 3) => return Err(Error::NoThirdOrderPetal),
            (_, o) => {
                return Err(Error::InvalidInput(format!(
                    "order must be 2 or 3, got {o}"
                )))
            }
        }
        self.h.validate()
    }

    /// All 24 theorems: 8 majorants for each of sine order 2, sine order 3 and
    /// petal order 2. Janowski uses `janowski`.
    pub fn catalog(janowski: TargetDomain) -> Vec<TheoremId> {
        let mut hs = vec![TargetDomain::Lemniscate, janowski];
        hs.extend([
            TargetDomain::Sigmoid,
            TargetDomain::Crescent,
            TargetDomain::Cardioid,
            TargetDomain::Petal,
            TargetDomain::Exponential,
            TargetDomain::Sine,
        ]);
        let mut out = Vec::new();
        for (target, order) in [
            (ProfileTarget::Sine, 2),
            (ProfileTarget::Sine, 3),
            (ProfileTarget::Petal, 2),
        ] {
            out.extend(hs.iter().map(|&h| TheoremId { target, order, h }));
        }
        out
    }
}

/// `(m, k)` from the third-order admissibility lemma, `k >= m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MKPair {
    pub m: u32,
    pub k: u32,
}

impl MKPair {
    pub fn new(m: u32, k: u32) -> Result<Self> {
        if m < 2 || k < m {
            return Err(Error::InvalidMK { m, k });
        }
        Ok(Self { m, k })
    }

    /// `-m^2 + 3 m (k - 1) nu1`, the multiplier of `b3` inside `Y / nu0`.
    pub fn beta3_multiplier(&self, nu1: f64) -> f64 {
        let (m, k) = (self.m as f64, self.k as f64);
        -m * m + 3.0 * m * (k - 1.0) * nu1
    }
}

impl Default for MKPair {
    fn default() -> Self {
        Self { m: 2, k: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`; nonnegative iff the condition holds.
    pub margin: f64,
    /// The core quantity `X`, `Y` or `W`.
    pub core: f64,
    pub theorem: TheoremId,
    pub hypothesis_flags: Vec<String>,
}

fn report(
    theorem: TheoremId,
    core: f64,
    (lhs, rhs): (f64, f64),
    params: &OperatorParams,
) -> ConditionReport {
    let margin = lhs - rhs;
    ConditionReport {
        holds: margin >= 0.0,
        lhs,
        rhs,
        margin,
        core,
        theorem,
        hypothesis_flags: params.hypothesis_flags(),
    }
}

/// `X = nu0 (b1 + b2 nu1)` for the sine dominant.
pub fn sine_core_second(params: &OperatorParams) -> f64 {
    let p = nu_constants(ProfileTarget::Sine);
    p.nu0 * (params.beta1 + params.beta2 * p.nu1)
}

/// `Y = nu0 (b1 + b2 nu1 + b3 (-m^2 + 3 m (k - 1) nu1))`.
pub fn sine_core_third(params: &OperatorParams, mk: MKPair) -> Result<f64> {
    let p = nu_constants(ProfileTarget::Sine);
    let b3 = params.beta3()?;
    Ok(p.nu0 * (params.beta1 + params.beta2 * p.nu1 + b3 * mk.beta3_multiplier(p.nu1)))
}

/// `W = 2 b1 - b2` for the petal dominant.
pub fn petal_core(params: &OperatorParams) -> f64 {
    2.0 * params.beta1 - params.beta2
}

/// `(lhs, rhs)` of the sine-dominant condition on the core quantity `x`.
fn sine_sides(h: &TargetDomain, x: f64) -> (f64, f64) {
    match *h {
        TargetDomain::Lemniscate => {
            let x = x.max(1.0);
            (x * (x - 2.0), 1.0)
        }
        TargetDomain::Janowski { c, d } => (x * (1.0 - d * d), (c - d) * (1.0 + d.abs())),
        TargetDomain::Sigmoid => (x, solve_r0()),
        TargetDomain::Crescent => (x, SQRT_2),
        TargetDomain::Cardioid => (x, E),
        TargetDomain::Petal => (2.0 * x, PI),
        TargetDomain::Exponential => (x, E - 1.0),
        TargetDomain::Sine => (x, 1f64.sinh()),
    }
}

/// `(lhs, rhs)` of the petal-dominant condition on `w = 2 b1 - b2`.
fn petal_sides(h: &TargetDomain, w: f64) -> (f64, f64) {
    match *h {
        TargetDomain::Lemniscate => {
            let w = w.max(2.0 * SQRT_2);
            (w * (w - 4.0 * SQRT_2), 8.0)
        }
        TargetDomain::Janowski { c, d } => {
            (w * (1.0 - d * d), 2.0 * SQRT_2 * (c - d) * (1.0 + d.abs()))
        }
        TargetDomain::Sigmoid => (w, 2.0 * SQRT_2 * solve_r0()),
        TargetDomain::Crescent => (w, 4.0),
        TargetDomain::Sine => (w, 2.0 * SQRT_2 * 1f64.sinh()),
        TargetDomain::Cardioid => (w, 2.0 * SQRT_2 * E),
        TargetDomain::Exponential => (w, 2.0 * SQRT_2 * (E - 1.0)),
        TargetDomain::Petal => (w, SQRT_2 * PI),
    }
}

pub fn sine_second_order(theorem: &TheoremId, params: &OperatorParams) -> Result<ConditionReport> {
    expect(theorem, ProfileTarget::Sine, 2)?;
    let x = sine_core_second(params);
    Ok(report(*theorem, x, sine_sides(&theorem.h, x), params))
}

pub fn sine_third_order(
    theorem: &TheoremId,
    params: &OperatorParams,
    mk: MKPair,
) -> Result<ConditionReport> {
    expect(theorem, ProfileTarget::Sine, 3)?;
    MKPair::new(mk.m, mk.k)?;
    let y = sine_core_third(params, mk)?;
    Ok(report(*theorem, y, sine_sides(&theorem.h, y), params))
}

pub fn petal_second_order(theorem: &TheoremId, params: &OperatorParams) -> Result<ConditionReport> {
    expect(theorem, ProfileTarget::Petal, 2)?;
    let w = petal_core(params);
    Ok(report(*theorem, w, petal_sides(&theorem.h, w), params))
}

fn expect(theorem: &TheoremId, target: ProfileTarget, order: u8) -> Result<()> {
    theorem.validate()?;
    if theorem.target != target || theorem.order != order {
        return Err(Error::InvalidInput(format!(
            "evaluator for {target:?} order {order} called with {:?} order {}",
            theorem.target, theorem.order
        )));
    }
    Ok(())
}

/// Dispatches to the evaluator for `theorem`. `mk` defaults to `(2, 2)`.
pub fn evaluate(
    theorem: &TheoremId,
    params: &OperatorParams,
    mk: Option<MKPair>,
) -> Result<ConditionReport> {
    theorem.validate()?;
    match (theorem.target, theorem.order) {
        (ProfileTarget::Sine, 2) => sine_second_order(theorem, params),
        (ProfileTarget::Sine, _) => sine_third_order(theorem, params, mk.unwrap_or_default()),
        (ProfileTarget::Petal, _) => petal_second_order(theorem, params),
    }
}

/// Value of the core quantity at which the condition for `theorem` is met
/// with equality (the larger root for the quadratic forms).
pub fn core_threshold(theorem: &TheoremId) -> f64 {
    match (theorem.target, theorem.h) {
        (ProfileTarget::Sine, TargetDomain::Lemniscate) => 1.0 + SQRT_2,
        (ProfileTarget::Petal, TargetDomain::Lemniscate) => 2.0 * SQRT_2 + 4.0,
        (ProfileTarget::Sine, h) => {
            let (lhs1, rhs) = sine_sides(&h, 1.0);
            rhs / lhs1
        }
        (ProfileTarget::Petal, h) => {
            let (lhs1, rhs) = petal_sides(&h, 1.0);
            rhs / lhs1
        }
    }
}

/// Fixed third-order inputs for a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanFixed {
    pub beta3: Option<f64>,
    pub mk: Option<MKPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub beta1: f64,
    pub beta2: f64,
    pub margin: f64,
    pub holds: bool,
}

/// Margins on a `beta1 x beta2` raster. Cells are stored row by row, one row
/// per `beta2` value, `beta1` increasing within a row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Raster {
    pub theorem: TheoremId,
    pub beta1: Vec<f64>,
    pub beta2: Vec<f64>,
    pub cells: Vec<ScanCell>,
}

impl Raster {
    pub fn cell(&self, i1: usize, i2: usize) -> &ScanCell {
        &self.cells[i2 * self.beta1.len() + i1]
    }
}

fn axis(range: (f64, f64), n: usize) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidInput(format!(
            "empty or invalid range [{lo}, {hi}]"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "resolution must be >= 2, got {n}"
        )));
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

pub fn region_scan(
    theorem: &TheoremId,
    beta1_range: (f64, f64),
    beta2_range: (f64, f64),
    resolution: (usize, usize),
    fixed: ScanFixed,
    exec: Exec,
) -> Result<Raster> {
    theorem.validate()?;
    let b1 = axis(beta1_range, resolution.0)?;
    let b2 = axis(beta2_range, resolution.1)?;
    if b1[0] < 0.0 || b2[0] < 0.0 {
        return Err(Error::InvalidInput(
            "beta ranges must be nonnegative".into(),
        ));
    }
    let beta3 = match (theorem.order, fixed.beta3) {
        (3, None) => return Err(Error::MissingBeta3),
        (_, b) => b,
    };
    let rows = exec.map_range(b2.len(), |j| {
        b1.iter()
            .map(|&x| {
                let params = OperatorParams {
                    beta1: x,
                    beta2: b2[j],
                    beta3,
                };
                let r = evaluate(theorem, &params, fixed.mk).expect("validated inputs");
                ScanCell {
                    beta1: x,
                    beta2: b2[j],
                    margin: r.margin,
                    holds: r.holds,
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(Raster {
        theorem: *theorem,
        beta1: b1,
        beta2: b2,
        cells: rows.into_iter().flatten().collect(),
    })
}
