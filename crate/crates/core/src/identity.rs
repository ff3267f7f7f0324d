//! Seeded comparison of the `S_j`-form operators against `phi2`/`phi3`
//! applied to `z f'/f`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{
    phi2, phi3, s_f_operator, theta_f_expected_deviation, theta_f_operator, NormalizedFunction,
    OperatorParams, PowerSeries, DEFAULT_ORDER,
};

/// Leading coefficients compared per trial.
pub const COMPARED_COEFFICIENTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityWhich {
    #[serde(rename = "Sf")]
    Sf,
    #[serde(rename = "Thetaf")]
    Thetaf,
}

impl FromStr for IdentityWhich {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sf" => Ok(IdentityWhich::Sf),
            "thetaf" | "theta" => Ok(IdentityWhich::Thetaf),
            other => Err(Error::InvalidInput(format!(
                "unknown identity '{other}', expected Sf or Thetaf"
            ))),
        }
    }
}

impl fmt::Display for IdentityWhich {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityWhich::Sf => "Sf",
            IdentityWhich::Thetaf => "Thetaf",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub which: IdentityWhich,
    pub trials: usize,
    pub degree: usize,
    pub seed: u64,
    pub params: OperatorParams,
    pub tolerance: f64,
    /// Largest `|formula_k - phi(z f'/f)_k|` over trials and compared `k`.
    pub max_deviation: f64,
    /// The same maximum taken per coefficient index.
    pub per_coefficient: Vec<f64>,
    /// Third order only: maximum deviation left after subtracting
    /// `2 (b2 + 3 b3) S3`.
    pub explained_residual: Option<f64>,
    pub passed: bool,
}

pub fn identity_test(
    which: IdentityWhich,
    trials: usize,
    degree: usize,
    seed: u64,
    params: &OperatorParams,
    tolerance: f64,
) -> Result<IdentityReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be >= 1".into()));
    }
    if degree == 0 || degree >= DEFAULT_ORDER {
        return Err(Error::InvalidInput(format!(
            "degree must be in 1..{DEFAULT_ORDER}, got {degree}"
        )));
    }
    if which == IdentityWhich::Thetaf {
        params.beta3()?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_coefficient = vec![0.0f64; COMPARED_COEFFICIENTS];
    let mut residual = vec![0.0f64; COMPARED_COEFFICIENTS];
    for _ in 0..trials {
        let f = NormalizedFunction::random(&mut rng, degree, DEFAULT_ORDER)?;
        let p = f.starlike_quotient()?;
        let (formula, reference, expected) = match which {
            IdentityWhich::Sf => (s_f_operator(&f, params)?, phi2(&p, params)?, None),
            IdentityWhich::Thetaf => (
                theta_f_operator(&f, params)?,
                phi3(&p, params)?,
                Some(theta_f_expected_deviation(&f, params)?),
            ),
        };
        let diff = &formula - &reference;
        accumulate(&mut per_coefficient, &diff);
        if let Some(e) = expected {
            accumulate(&mut residual, &(&diff - &e));
        }
    }
    let max_deviation = per_coefficient.iter().copied().fold(0.0, f64::max);
    Ok(IdentityReport {
        which,
        trials,
        degree,
        seed,
        params: *params,
        tolerance,
        max_deviation,
        per_coefficient,
        explained_residual: (which == IdentityWhich::Thetaf)
            .then(|| residual.iter().copied().fold(0.0, f64::max)),
        passed: max_deviation < tolerance,
    })
}

fn accumulate(acc: &mut [f64], diff: &PowerSeries) {
    for (k, a) in acc.iter_mut().enumerate() {
        *a = a.max(diff.coeff(k).norm());
    }
}
