//! Polar sampling of the disk `|z| <= radius`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radius: f64,
    pub radial_steps: usize,
    pub angular_steps: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radius: 0.99,
            radial_steps: 64,
            angular_steps: 512,
        }
    }
}

impl GridSpec {
    pub fn new(radius: f64, radial_steps: usize, angular_steps: usize) -> Result<Self> {
        let g = Self {
            radius,
            radial_steps,
            angular_steps,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.radius <= 0.999) {
            return Err(Error::InvalidGrid(format!(
                "radius {} not in (0, 0.999]",
                self.radius
            )));
        }
        if self.radial_steps < 1 {
            return Err(Error::InvalidGrid("radial_steps must be >= 1".into()));
        }
        if self.angular_steps < 16 {
            return Err(Error::InvalidGrid(format!(
                "angular_steps must be >= 16, got {}",
                self.angular_steps
            )));
        }
        Ok(())
    }

    /// Same radius with both step counts doubled; every old point is kept.
    pub fn refined(&self) -> Self {
        Self {
            radius: self.radius,
            radial_steps: 2 * self.radial_steps,
            angular_steps: 2 * self.angular_steps,
        }
    }

    /// Origin plus `radial_steps * angular_steps` ring points.
    pub fn len(&self) -> usize {
        1 + self.radial_steps * self.angular_steps
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `i`-th point. Rings are enumerated from the outermost inwards and
    /// the origin comes last, so early-exit scans meet escaping images first.
    pub fn point(&self, i: usize) -> Complex64 {
        let ring_points = self.radial_steps * self.angular_steps;
        if i >= ring_points {
            return Complex64::new(0.0, 0.0);
        }
        let ring = self.radial_steps - i / self.angular_steps;
        let j = i % self.angular_steps;
        let r = self.radius * ring as f64 / self.radial_steps as f64;
        Complex64::from_polar(r, TAU * j as f64 / self.angular_steps as f64)
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}
