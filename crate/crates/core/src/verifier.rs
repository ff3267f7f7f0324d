//! Numerical probes of the implications themselves: sample `Phi(p)` and `p`
//! on a polar grid and test membership of the images.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::admissibility::ProfileTarget;
use crate::conditions::{evaluate, ConditionReport, MKPair, TheoremId};
use crate::domain::{MembershipStatus, TargetDomain};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::par::Exec;
use crate::series::{phi2, phi3, OperatorParams, PowerSeries, DEFAULT_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubordinationVerdict {
    pub holds: bool,
    /// First sampled `z`, in grid order, whose image is strictly outside.
    pub witness: Option<Complex64>,
    pub image: Option<Complex64>,
    pub checked_points: usize,
    /// Images inside the boundary band; these count as inside.
    pub boundary_count: usize,
}

/// The domain of the dominant `q` for a profile target.
pub fn dominant_domain(target: ProfileTarget) -> TargetDomain {
    match target {
        ProfileTarget::Sine => TargetDomain::Sine,
        ProfileTarget::Petal => TargetDomain::Petal,
    }
}

pub fn subordination_check(
    p: &PowerSeries,
    target: &TargetDomain,
    grid: &GridSpec,
) -> Result<SubordinationVerdict> {
    subordination_check_with(p, target, grid, Exec::default())
}

/// Scans the grid ring by ring, outermost first, and stops at the first ring
/// containing an escaping image.
pub fn subordination_check_with(
    p: &PowerSeries,
    target: &TargetDomain,
    grid: &GridSpec,
    exec: Exec,
) -> Result<SubordinationVerdict> {
    target.validate()?;
    grid.validate()?;
    p.check_unit_constant()?;
    let n = grid.len();
    let ring = grid.angular_steps;
    let mut boundary_count = 0;
    let mut start = 0;
    while start < n {
        let end = (start + ring).min(n);
        let statuses = exec.map_range(end - start, |j| {
            let z = grid.point(start + j);
            let w = p.evaluate(z);
            (z, w, target.contains(w).status)
        });
        for (j, (z, w, status)) in statuses.into_iter().enumerate() {
            match status {
                MembershipStatus::Inside => {}
                MembershipStatus::Boundary => boundary_count += 1,
                MembershipStatus::Outside => {
                    return Ok(SubordinationVerdict {
                        holds: false,
                        witness: Some(z),
                        image: Some(w),
                        checked_points: start + j + 1,
                        boundary_count,
                    })
                }
            }
        }
        start = end;
    }
    Ok(SubordinationVerdict {
        holds: true,
        witness: None,
        image: None,
        checked_points: n,
        boundary_count,
    })
}

/// `Phi(p) < h` on the grid, with `Phi` of order 2 or 3.
pub fn operator_image_check(
    p: &PowerSeries,
    params: &OperatorParams,
    h: &TargetDomain,
    grid: &GridSpec,
    order: u8,
) -> Result<SubordinationVerdict> {
    operator_image_check_with(p, params, h, grid, order, Exec::default())
}

pub fn operator_image_check_with(
    p: &PowerSeries,
    params: &OperatorParams,
    h: &TargetDomain,
    grid: &GridSpec,
    order: u8,
    exec: Exec,
) -> Result<SubordinationVerdict> {
    let image = match order {
        2 => phi2(p, params)?,
        3 => phi3(p, params)?,
        o => {
            return Err(Error::InvalidInput(format!(
                "operator order must be 2 or 3, got {o}"
            )))
        }
    };
    subordination_check_with(&image, h, grid, exec)
}

/// `n` points from `lo` to `hi` with constant ratio; the end points are exact.
fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * (ratio * i as f64).exp()
            }
        })
        .collect()
}

/// Deterministic families of test functions `p` with `p(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `p = 1`.
    Constant,
    /// `1 + c z` for each `c`.
    Linear {
        c: Vec<Complex64>,
    },
    /// `1 + c z + d z^2` over the product of the two lists.
    Quadratic {
        c: Vec<Complex64>,
        d: Vec<Complex64>,
    },
    /// `1 + lambda (q - 1)` with `q` the dominant of the theorem.
    ScaledTarget {
        lambda: Vec<f64>,
    },
    Custom {
        members: Vec<PowerSeries>,
    },
    /// Members of each family in turn.
    Union {
        families: Vec<FamilySpec>,
    },
}

impl FamilySpec {
    /// `c = rho e^{i alpha}` with 20 radii spaced geometrically from 0.01 to
    /// 2 and eight angles.
    pub fn default_linear() -> Self {
        let mut c = Vec::new();
        for rho in geometric(0.01, 2.0, 20) {
            for a in 0..8 {
                c.push(Complex64::from_polar(rho, TAU * a as f64 / 8.0));
            }
        }
        FamilySpec::Linear { c }
    }

    /// Real `c` in `{-0.5, -0.1, 0, 0.1, 0.5}` against `d = rho e^{i alpha}`
    /// with `rho` in `{0.02, 0.1, 0.5, 1.5}` and four angles.
    pub fn default_quadratic() -> Self {
        let c = [-0.5, -0.1, 0.0, 0.1, 0.5]
            .map(|x| Complex64::new(x, 0.0))
            .to_vec();
        let mut d = Vec::new();
        for rho in [0.02, 0.1, 0.5, 1.5] {
            for a in 0..4 {
                d.push(Complex64::from_polar(rho, FRAC_PI_2 * a as f64 + 0.3));
            }
        }
        FamilySpec::Quadratic { c, d }
    }

    /// 20 values of `lambda` spaced geometrically from 0.001 to 1.
    pub fn default_scaled_target() -> Self {
        FamilySpec::ScaledTarget {
            lambda: geometric(0.001, 1.0, 20),
        }
    }

    /// Linear, quadratic and scaled-target defaults: 260 members.
    pub fn builtin() -> Self {
        FamilySpec::Union {
            families: vec![
                Self::default_linear(),
                Self::default_quadratic(),
                Self::default_scaled_target(),
            ],
        }
    }

    /// Real linear coefficients `lo, lo + step, ..., hi`.
    pub fn linear_real_range(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo <= hi && step > 0.0 && lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "bad range {lo}..{hi} step {step}"
            )));
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
        Ok(FamilySpec::Linear {
            c: (0..count)
                .map(|i| Complex64::new(lo + step * i as f64, 0.0))
                .collect(),
        })
    }

    /// The member series at `order`.
    pub fn members(&self, target: ProfileTarget, order: usize) -> Result<Vec<PowerSeries>> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            FamilySpec::Constant => vec![PowerSeries::one(order)],
            FamilySpec::Linear { c } => c
                .iter()
                .map(|&c| PowerSeries::from_complex(&[one, c], order))
                .collect::<Result<_>>()?,
            FamilySpec::Quadratic { c, d } => {
                let mut out = Vec::with_capacity(c.len() * d.len());
                for &c in c {
                    for &d in d {
                        out.push(PowerSeries::from_complex(&[one, c, d], order)?);
                    }
                }
                out
            }
            FamilySpec::ScaledTarget { lambda } => {
                let q = dominant_domain(target).taylor(order);
                let q1 = &q - &PowerSeries::one(order);
                lambda
                    .iter()
                    .map(|&l| {
                        if !(l > 0.0 && l <= 1.0) {
                            return Err(Error::InvalidInput(format!("lambda {l} not in (0, 1]")));
                        }
                        Ok(&PowerSeries::one(order) + &q1.scale(l))
                    })
                    .collect::<Result<_>>()?
            }
            FamilySpec::Custom { members } => {
                for m in members {
                    m.check_unit_constant()?;
                }
                members.clone()
            }
            FamilySpec::Union { families } => {
                let mut out = Vec::new();
                for f in families {
                    out.extend(f.members(target, order)?);
                }
                out
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemberOutcome {
    pub premise: bool,
    /// Only sampled when the premise holds.
    pub conclusion: Option<bool>,
}

impl MemberOutcome {
    pub fn is_violation(&self) -> bool {
        self.premise && self.conclusion == Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    /// Grid point where `p` escapes the dominant's domain.
    pub witness: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub family_size: usize,
    pub premise_true_count: usize,
    /// Members whose conclusion was sampled and held.
    pub conclusion_true_count: usize,
    pub implication_violations: Vec<Violation>,
    pub condition_report: ConditionReport,
    pub members: Vec<MemberOutcome>,
}

/// Premise and conclusion for every member, in family order. The
/// conclusion `p < q` is only sampled when the premise holds.
fn run_family(
    theorem: &TheoremId,
    params: &OperatorParams,
    members: &[PowerSeries],
    grid: &GridSpec,
    exec: Exec,
) -> Result<Vec<(MemberOutcome, Option<Complex64>)>> {
    let q = dominant_domain(theorem.target);
    exec.map_slice(members, |p| {
        let premise = operator_image_check_with(
            p,
            params,
            &theorem.h,
            grid,
            theorem.order,
            Exec::Sequential,
        )?;
        if !premise.holds {
            return Ok((
                MemberOutcome {
                    premise: false,
                    conclusion: None,
                },
                None,
            ));
        }
        let conclusion = subordination_check_with(p, &q, grid, Exec::Sequential)?;
        Ok((
            MemberOutcome {
                premise: true,
                conclusion: Some(conclusion.holds),
            },
            conclusion.witness,
        ))
    })
    .into_iter()
    .collect()
}

pub fn implication_test(
    theorem: &TheoremId,
    params: &OperatorParams,
    mk: Option<MKPair>,
    family: &FamilySpec,
    grid: &GridSpec,
) -> Result<ImplicationReport> {
    implication_test_with(theorem, params, mk, family, grid, Exec::default())
}

pub fn implication_test_with(
    theorem: &TheoremId,
    params: &OperatorParams,
    mk: Option<MKPair>,
    family: &FamilySpec,
    grid: &GridSpec,
    exec: Exec,
) -> Result<ImplicationReport> {
    let condition_report = evaluate(theorem, params, mk)?;
    grid.validate()?;
    let members = family.members(theorem.target, DEFAULT_ORDER)?;
    let outcomes = run_family(theorem, params, &members, grid, exec)?;
    let implication_violations = outcomes
        .iter()
        .enumerate()
        .filter(|(_, (o, _))| o.is_violation())
        .map(|(index, (_, w))| Violation {
            index,
            witness: w.unwrap(),
        })
        .collect();
    Ok(ImplicationReport {
        family_size: members.len(),
        premise_true_count: outcomes.iter().filter(|(o, _)| o.premise).count(),
        conclusion_true_count: outcomes
            .iter()
            .filter(|(o, _)| o.conclusion == Some(true))
            .count(),
        implication_violations,
        condition_report,
        members: outcomes.into_iter().map(|(o, _)| o).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub index: usize,
    pub p: PowerSeries,
    pub witness: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub condition_report: ConditionReport,
    pub family_size: usize,
    pub findings: Vec<Finding>,
    /// Set when the sufficient condition holds, in which case any finding
    /// contradicts the theorem rather than probing beyond it.
    pub warning: Option<String>,
}

/// Members with premise true and conclusion false. A finding at parameters
/// where the condition fails is not a contradiction: the conditions are only
/// sufficient.
pub fn counterexample_search(
    theorem: &TheoremId,
    params: &OperatorParams,
    mk: Option<MKPair>,
    family: &FamilySpec,
    grid: &GridSpec,
    exec: Exec,
) -> Result<CounterexampleReport> {
    let condition_report = evaluate(theorem, params, mk)?;
    grid.validate()?;
    let members = family.members(theorem.target, DEFAULT_ORDER)?;
    let outcomes = run_family(theorem, params, &members, grid, exec)?;
    let findings = outcomes
        .into_iter()
        .enumerate()
        .filter(|(_, (o, _))| o.is_violation())
        .map(|(index, (_, w))| Finding {
            index,
            p: members[index].clone(),
            witness: w.unwrap(),
        })
        .collect();
    let warning = condition_report
        .holds
        .then(|| "sufficient condition holds; findings would contradict the theorem".to_string());
    Ok(CounterexampleReport {
        family_size: members.len(),
        condition_report,
        findings,
        warning,
    })
}
