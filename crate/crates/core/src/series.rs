//! Truncated complex power series and the differential operators built on
//! them.
//!
//! A [`PowerSeries`] of order `N` stores `a_0, ..., a_N`. Binary operations
//! truncate to the smaller order of their operands: a coefficient beyond an
//! operand's order is unknown, not zero.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default truncation degree.
pub const DEFAULT_ORDER: usize = 24;

/// Absolute tolerance used when comparing series coefficients.
pub const COEFF_TOLERANCE: f64 = 1e-9;

/// Tolerance for the `p(0) = 1` precondition of the operators.
pub const UNIT_CONSTANT_TOLERANCE: f64 = 1e-12;

const RECIPROCAL_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from `a_0..=a_N`. Needs `N >= 1` and finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidOrder(coeffs.len().saturating_sub(1)));
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    /// Series with real coefficients, zero-padded up to `order`.
    pub fn from_real(coeffs: &[f64], order: usize) -> Result<Self> {
        let mut c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        if c.len() > order + 1 {
            c.truncate(order + 1);
        }
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::new(c)
    }

    /// Complex coefficients zero-padded up to `order`.
    pub fn from_complex(coeffs: &[Complex64], order: usize) -> Result<Self> {
        let mut c = coeffs.to_vec();
        if c.len() > order + 1 {
            c.truncate(order + 1);
        }
        c.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::new(c)
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(Complex64::new(0.0, 0.0), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order.max(1) + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// `c * z^k`, truncated at `order`.
    pub fn monomial(c: Complex64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= s.order() {
            s.coeffs[k] = c;
        }
        s
    }

    /// Taylor coefficients of `f` from a closure giving the k-th coefficient.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Complex64) -> Result<Self> {
        Self::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.clamp(1, self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse up to the series' own order.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() < RECIPROCAL_TOLERANCE {
            return Err(Error::ZeroConstantTerm(a0.norm()));
        }
        let inv0 = a0.inv();
        let n = self.coeffs.len();
        let mut r = vec![Complex64::new(0.0, 0.0); n];
        r[0] = inv0;
        for k in 1..n {
            let acc: Complex64 = (1..=k).map(|j| self.coeffs[j] * r[k - j]).sum();
            r[k] = -acc * inv0;
        }
        Ok(Self { coeffs: r })
    }

    /// `z d/dz`: multiplies `a_k` by `k`.
    pub fn euler_derivative(&self) -> Self {
        self.weighted_derivative(1)
    }

    /// `z^j d^j/dz^j`: multiplies `a_k` by the falling factorial `k(k-1)...(k-j+1)`.
    pub fn weighted_derivative(&self, j: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * falling_factorial(k, j))
            .collect();
        Self { coeffs }
    }

    /// Divides by `z`, dropping `a_0` (which must be zero for the result to be
    /// meaningful). The order drops by one.
    fn shift_down(&self) -> Self {
        let coeffs = if self.coeffs.len() > 2 {
            self.coeffs[1..].to_vec()
        } else {
            vec![self.coeffs[1], Complex64::new(0.0, 0.0)]
        };
        Self { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation of the truncated polynomial; trailing zero
    /// coefficients are skipped.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let len = self
            .coeffs
            .iter()
            .rposition(|&a| a != zero)
            .map_or(0, |i| i + 1);
        self.coeffs[..len]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// Value at `z` with a heuristic tail estimate `|a_N| |z|^N / (1 - |z|)`,
    /// meaningful when the coefficients decay geometrically.
    pub fn evaluate_with_tail(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        let n = self.order();
        let last = self.coeffs[n].norm() * r.powi(n as i32 + 1);
        let tail = if r < 1.0 {
            last / (1.0 - r)
        } else {
            f64::INFINITY
        };
        (self.evaluate(z), tail)
    }

    /// Largest absolute coefficient difference over the first `count` terms.
    pub fn max_coeff_diff(&self, other: &Self, count: usize) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .take(count)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_unit_constant(&self) -> Result<()> {
        let a0 = self.coeffs[0];
        if (a0 - 1.0).norm() > UNIT_CONSTANT_TOLERANCE {
            return Err(Error::ConstantTermNotOne {
                re: a0.re,
                im: a0.im,
            });
        }
        Ok(())
    }
}

fn falling_factorial(k: usize, j: usize) -> f64 {
    if j > k {
        return 0.0;
    }
    ((k - j + 1)..=k).map(|x| x as f64).product()
}

fn zip_truncated(
    a: &PowerSeries,
    b: &PowerSeries,
    f: impl Fn(Complex64, Complex64) -> Complex64,
) -> PowerSeries {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(&x, &y)| f(x, y))
        .collect();
    PowerSeries { coeffs }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: Self) -> PowerSeries {
        zip_truncated(self, rhs, |x, y| x + y)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: Self) -> PowerSeries {
        zip_truncated(self, rhs, |x, y| x - y)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(-1.0)
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: Self) -> PowerSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        PowerSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: Self) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        PowerSeries::new(coeffs).map_err(D::Error::custom)
    }
}

/// `f(z) = z + a_2 z^2 + ...`, an element of the normalized class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedFunction {
    series: PowerSeries,
}

impl NormalizedFunction {
    /// Requires `a_0 = 0` and `a_1 = 1` exactly, and order at least 2.
    pub fn new(series: PowerSeries) -> Result<Self> {
        let c = series.coeffs();
        if c[0] != Complex64::new(0.0, 0.0)
            || c[1] != Complex64::new(1.0, 0.0)
            || series.order() < 2
        {
            return Err(Error::NotNormalized);
        }
        Ok(Self { series })
    }

    /// `z + a_2 z^2 + ... + a_d z^d` padded to `order`.
    pub fn from_tail(tail: &[Complex64], order: usize) -> Result<Self> {
        let mut c = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        c.extend_from_slice(tail);
        Self::new(PowerSeries::from_complex(&c, order)?)
    }

    /// Random polynomial of the given degree: each `a_k` (k >= 2) is uniform
    /// in the closed disk of radius `1/(2k^2)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: usize, order: usize) -> Result<Self> {
        let tail: Vec<Complex64> = (2..=degree)
            .map(|k| {
                let bound = 1.0 / (2.0 * (k * k) as f64);
                let r = bound * rng.gen::<f64>().sqrt();
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                Complex64::from_polar(r, t)
            })
            .collect();
        Self::from_tail(&tail, order)
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    /// `z f'(z) / f(z)`.
    pub fn starlike_quotient(&self) -> Result<PowerSeries> {
        Ok(self.functionals()?.s1)
    }

    /// `S_j = z^j f^(j) / f` for `j = 1..4`.
    pub fn functionals(&self) -> Result<StarlikeFunctionals> {
        let inv = self.series.shift_down().reciprocal()?;
        let s = |j: usize| &self.series.weighted_derivative(j).shift_down() * &inv;
        Ok(StarlikeFunctionals {
            s1: s(1),
            s2: s(2),
            s3: s(3),
            s4: s(4),
        })
    }
}

/// The quotients `S_j = z^j f^(j)(z) / f(z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarlikeFunctionals {
    pub s1: PowerSeries,
    pub s2: PowerSeries,
    pub s3: PowerSeries,
    pub s4: PowerSeries,
}

/// Weights of the linear differential operators. `beta3` is only used by the
/// third-order operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: Option<f64>,
}

impl OperatorParams {
    pub fn second_order(beta1: f64, beta2: f64) -> Result<Self> {
        Self::validate("beta1", beta1)?;
        Self::validate("beta2", beta2)?;
        Ok(Self {
            beta1,
            beta2,
            beta3: None,
        })
    }

    pub fn third_order(beta1: f64, beta2: f64, beta3: f64) -> Result<Self> {
        Self::validate("beta3", beta3)?;
        Ok(Self {
            beta3: Some(beta3),
            ..Self::second_order(beta1, beta2)?
        })
    }

    fn validate(name: &'static str, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidBeta { name, value });
        }
        Ok(())
    }

    pub fn beta3(&self) -> Result<f64> {
        self.beta3.ok_or(Error::MissingBeta3)
    }

    /// Every weight multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            beta1: self.beta1 * lambda,
            beta2: self.beta2 * lambda,
            beta3: self.beta3.map(|b| b * lambda),
        }
    }

    /// Names of the weights that sit at zero. The theorems assume strictly
    /// positive weights; zero is accepted for limiting studies.
    pub fn hypothesis_flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        for (name, v) in [
            ("beta1", Some(self.beta1)),
            ("beta2", Some(self.beta2)),
            ("beta3", self.beta3),
        ] {
            if v == Some(0.0) {
                flags.push(format!("{name}_zero_outside_theorem_hypothesis"));
            }
        }
        flags
    }
}

/// `1 + beta1 z p' + beta2 z^2 p''`.
pub fn phi2(p: &PowerSeries, params: &OperatorParams) -> Result<PowerSeries> {
    p.check_unit_constant()?;
    let order = p.order();
    let out = &PowerSeries::one(order)
        + &(&p.weighted_derivative(1).scale(params.beta1)
            + &p.weighted_derivative(2).scale(params.beta2));
    Ok(out)
}

/// `1 + beta1 z p' + beta2 z^2 p'' + beta3 z^3 p'''`.
pub fn phi3(p: &PowerSeries, params: &OperatorParams) -> Result<PowerSeries> {
    let beta3 = params.beta3()?;
    let base = phi2(p, params)?;
    Ok(&base + &p.weighted_derivative(3).scale(beta3))
}

/// The second-order operator written in terms of `S_1, S_2, S_3`:
///
/// `1 + b1 (S2 - S1^2 + S1) + b2 (S3 + 2 S2 + 2 S1^3 - 2 S1^2 - 3 S1 S2)`.
pub fn s_f_operator(f: &NormalizedFunction, params: &OperatorParams) -> Result<PowerSeries> {
    let s = f.functionals()?;
    let order = s.s1.order();
    let s1_sq = &s.s1 * &s.s1;
    let s1_cu = &s1_sq * &s.s1;
    let s1s2 = &s.s1 * &s.s2;

    let first = &(&s.s2 - &s1_sq) + &s.s1;
    let second = &(&(&(&s.s3 + &s.s2.scale(2.0)) + &s1_cu.scale(2.0)) - &s1_sq.scale(2.0))
        - &s1s2.scale(3.0);

    Ok(&(&PowerSeries::one(order) + &first.scale(params.beta1)) + &second.scale(params.beta2))
}

/// The third-order operator in its published `S_j` form:
///
/// `1 + b1 S1 + (b1 + 2 b2)(S2 - S1^2) + (b2 + 3 b3)(2 S1^3 - 3 S1 S2 + 3 S3)
///  + b3 (S4 - 3 S2^2 - 6 S1^4 - 4 S1 S3 + 12 S1^2 S2)`.
///
/// It differs from `phi3(z f'/f)` by `2 (b2 + 3 b3) S3`; the coefficient of
/// `S3` in the third bracket should be 1, not 3. See [`theta_f_expected_deviation`].
pub fn theta_f_operator(f: &NormalizedFunction, params: &OperatorParams) -> Result<PowerSeries> {
    let b3 = params.beta3()?;
    let (b1, b2) = (params.beta1, params.beta2);
    let s = f.functionals()?;
    let order = s.s1.order();
    let s1_sq = &s.s1 * &s.s1;
    let s1_cu = &s1_sq * &s.s1;
    let s1_4 = &s1_cu * &s.s1;
    let s1s2 = &s.s1 * &s.s2;
    let s1s3 = &s.s1 * &s.s3;
    let s2_sq = &s.s2 * &s.s2;
    let s1sq_s2 = &s1_sq * &s.s2;

    let t1 = s.s1.scale(b1);
    let t2 = (&s.s2 - &s1_sq).scale(b1 + 2.0 * b2);
    let t3 = (&(&s1_cu.scale(2.0) - &s1s2.scale(3.0)) + &s.s3.scale(3.0)).scale(b2 + 3.0 * b3);
    let t4 = (&(&(&(&s.s4 - &s2_sq.scale(3.0)) - &s1_4.scale(6.0)) - &s1s3.scale(4.0))
        + &s1sq_s2.scale(12.0))
        .scale(b3);

    let mut out = PowerSeries::one(order);
    for t in [t1, t2, t3, t4] {
        out = &out + &t;
    }
    Ok(out)
}

/// `2 (b2 + 3 b3) S3`: the amount by which the printed third-order formula
/// exceeds `phi3(z f'/f)`.
pub fn theta_f_expected_deviation(
    f: &NormalizedFunction,
    params: &OperatorParams,
) -> Result<PowerSeries> {
    let b3 = params.beta3()?;
    let s = f.functionals()?;
    Ok(s.s3.scale(2.0 * (params.beta2 + 3.0 * b3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(coeffs: &[f64]) -> PowerSeries {
        PowerSeries::from_real(coeffs, 8).unwrap()
    }

    fn assert_coeffs(s: &PowerSeries, expected: &[f64], tol: f64) {
        for (k, &e) in expected.iter().enumerate() {
            let got = s.coeff(k);
            assert!(
                (got - c(e)).norm() <= tol,
                "coefficient {k}: got {got}, expected {e}"
            );
        }
    }

    #[test]
    fn rejects_bad_construction() {
        assert_eq!(PowerSeries::new(vec![c(1.0)]), Err(Error::InvalidOrder(0)));
        assert_eq!(
            PowerSeries::new(vec![c(1.0), c(f64::NAN)]),
            Err(Error::NonFiniteCoefficient { index: 1 })
        );
    }

    #[test]
    fn add_examples() {
        assert_coeffs(
            &(&real(&[1.0, 1.0]) + &real(&[1.0, -1.0])),
            &[2.0, 0.0, 0.0],
            0.0,
        );
        let s = real(&[0.3, -1.0, 2.0]);
        assert_eq!(&PowerSeries::zero(8) + &s, s);
        assert_coeffs(
            &(&real(&[0.0, 1.0, 1.0]) + &real(&[0.0, 0.0, 1.0])),
            &[0.0, 1.0, 2.0],
            0.0,
        );
    }

    #[test]
    fn binary_ops_truncate_to_min_order() {
        let a = PowerSeries::from_real(&[1.0, 1.0], 3).unwrap();
        let b = PowerSeries::from_real(&[1.0, 1.0], 6).unwrap();
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn mul_examples() {
        assert_coeffs(
            &(&real(&[1.0, 1.0]) * &real(&[1.0, -1.0])),
            &[1.0, 0.0, -1.0, 0.0],
            0.0,
        );
        assert_coeffs(
            &(&real(&[0.0, 1.0]) * &real(&[0.0, 1.0])),
            &[0.0, 0.0, 1.0, 0.0],
            0.0,
        );
        assert_coeffs(
            &(&real(&[1.0, 1.0, 1.0]) * &real(&[1.0])),
            &[1.0, 1.0, 1.0, 0.0],
            0.0,
        );
    }

    #[test]
    fn reciprocal_examples() {
        let r = real(&[1.0, 1.0]).reciprocal().unwrap();
        assert_coeffs(&r, &[1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0], 0.0);
        assert_coeffs(&real(&[1.0]).reciprocal().unwrap(), &[1.0, 0.0, 0.0], 0.0);
        let r = real(&[1.0, -1.0]).reciprocal().unwrap();
        assert_coeffs(&r, &[1.0; 9], 0.0);
        assert!(matches!(
            real(&[0.0, 1.0]).reciprocal(),
            Err(Error::ZeroConstantTerm(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        assert_coeffs(&real(&[1.0, 1.0]).euler_derivative(), &[0.0, 1.0, 0.0], 0.0);
        assert_coeffs(
            &real(&[0.0, 0.0, 0.0, 1.0]).euler_derivative(),
            &[0.0, 0.0, 0.0, 3.0],
            0.0,
        );
        assert_coeffs(&real(&[4.0]).euler_derivative(), &[0.0; 9], 0.0);
        assert_coeffs(
            &real(&[0.0, 0.0, 1.0]).weighted_derivative(2),
            &[0.0, 0.0, 2.0],
            0.0,
        );
        assert_coeffs(
            &real(&[0.0, 0.0, 1.0]).weighted_derivative(3),
            &[0.0; 9],
            0.0,
        );

        // z d/dz (1 + sin z) = z cos z
        let order = 15;
        let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
        let sin = PowerSeries::from_fn(order, |k| match k {
            0 => c(1.0),
            k if k % 2 == 1 => c(if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact(k)),
            _ => c(0.0),
        })
        .unwrap();
        let zcos = PowerSeries::from_fn(order, |k| match k {
            k if k % 2 == 1 => c(if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact(k - 1)),
            _ => c(0.0),
        })
        .unwrap();
        assert!(sin.weighted_derivative(1).max_coeff_diff(&zcos, 16) < 1e-15);
    }

    #[test]
    fn phi2_examples() {
        let p2 = OperatorParams::second_order(2.0, 5.0).unwrap();
        assert_coeffs(&phi2(&real(&[1.0]), &p2).unwrap(), &[1.0, 0.0, 0.0], 0.0);
        assert_coeffs(
            &phi2(&real(&[1.0, 1.0]), &p2).unwrap(),
            &[1.0, 2.0, 0.0],
            0.0,
        );
        let p11 = OperatorParams::second_order(1.0, 1.0).unwrap();
        assert_coeffs(
            &phi2(&real(&[1.0, 0.0, 1.0]), &p11).unwrap(),
            &[1.0, 0.0, 4.0, 0.0],
            0.0,
        );
        assert!(matches!(
            phi2(&real(&[2.0]), &p11),
            Err(Error::ConstantTermNotOne { .. })
        ));
    }

    #[test]
    fn phi3_examples() {
        let p = OperatorParams::third_order(1.0, 1.0, 1.0).unwrap();
        assert_coeffs(
            &phi3(&real(&[1.0, 0.0, 0.0, 1.0]), &p).unwrap(),
            &[1.0, 0.0, 0.0, 15.0],
            0.0,
        );
        assert_coeffs(&phi3(&real(&[1.0]), &p).unwrap(), &[1.0, 0.0], 0.0);
        let q = real(&[1.0, 0.3, -0.2, 0.7, 0.1]);
        let zero3 = OperatorParams::third_order(1.5, 0.5, 0.0).unwrap();
        assert_eq!(
            phi3(&q, &zero3).unwrap(),
            phi2(&q, &OperatorParams::second_order(1.5, 0.5).unwrap()).unwrap()
        );
        let second = OperatorParams::second_order(1.0, 1.0).unwrap();
        assert_eq!(phi3(&q, &second), Err(Error::MissingBeta3));
    }

    #[test]
    fn functionals_of_identity() {
        let f = NormalizedFunction::from_tail(&[], 10).unwrap();
        let s = f.functionals().unwrap();
        assert_coeffs(&s.s1, &[1.0, 0.0, 0.0, 0.0], 0.0);
        for sj in [&s.s2, &s.s3, &s.s4] {
            assert!(sj.coeffs().iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn functionals_examples() {
        // (z + 2z^2)/(z + z^2) = (1 + 2z)/(1 + z) = 1 + z - z^2 + z^3 - ...
        let f = NormalizedFunction::from_tail(&[c(1.0)], 10).unwrap();
        assert_coeffs(
            &f.starlike_quotient().unwrap(),
            &[1.0, 1.0, -1.0, 1.0, -1.0],
            1e-15,
        );

        // f = z/(1-z): z f'/f = 1/(1-z)
        let f = NormalizedFunction::from_tail(&[c(1.0); 11], 12).unwrap();
        assert_coeffs(&f.starlike_quotient().unwrap(), &[1.0; 11], 1e-13);
        assert!(matches!(
            NormalizedFunction::new(real(&[0.0, 2.0, 1.0])),
            Err(Error::NotNormalized)
        ));
    }

    // Exact rational coefficients computed symbolically for f = z + z^2/2,
    // f = z + z^2/4 + z^3/9 and f = z + z^3 with (b1, b2, b3) = (1, 1/2, 1/3).
    /// `(tail of f, S_f, phi3(z f'/f), Theta_f - phi3(z f'/f))`.
    type OracleRow = (&'static [f64], [f64; 8], [f64; 8], [f64; 8]);

    const ORACLE: [OracleRow; 3] = [
        (
            &[0.5],
            [
                1.0,
                0.5,
                -0.75,
                0.75,
                -0.625,
                15.0 / 32.0,
                -21.0 / 64.0,
                7.0 / 32.0,
            ],
            [
                1.0,
                0.5,
                -0.75,
                1.0,
                -9.0 / 8.0,
                35.0 / 32.0,
                -61.0 / 64.0,
                49.0 / 64.0,
            ],
            [0.0; 8],
        ),
        (
            &[0.25, 1.0 / 9.0],
            [
                1.0,
                0.25,
                23.0 / 48.0,
                -13.0 / 32.0,
                -85.0 / 10368.0,
                3205.0 / 27648.0,
                -38479.0 / 995328.0,
                -33313.0 / 2985984.0,
            ],
            [
                1.0,
                0.25,
                23.0 / 48.0,
                -13.0 / 24.0,
                -17.0 / 1152.0,
                22435.0 / 82944.0,
                -335317.0 / 2985984.0,
                -233191.0 / 5971968.0,
            ],
            [
                0.0,
                0.0,
                2.0,
                -0.5,
                -7.0 / 72.0,
                23.0 / 288.0,
                -95.0 / 10368.0,
                -91.0 / 13824.0,
            ],
        ),
        (
            &[0.0, 1.0],
            [1.0, 0.0, 6.0, 0.0, -20.0, 0.0, 42.0, 0.0],
            [1.0, 0.0, 6.0, 0.0, -36.0, 0.0, 122.0, 0.0],
            [0.0, 0.0, 18.0, 0.0, -18.0, 0.0, 18.0, 0.0],
        ),
    ];

    #[test]
    fn operators_match_symbolic_oracle() {
        let params = OperatorParams::third_order(1.0, 0.5, 1.0 / 3.0).unwrap();
        for (tail, sf, phi3_expected, theta_dev) in ORACLE {
            let tail: Vec<Complex64> = tail.iter().map(|&x| c(x)).collect();
            let f = NormalizedFunction::from_tail(&tail, 16).unwrap();
            let p = f.starlike_quotient().unwrap();
            assert_coeffs(&s_f_operator(&f, &params).unwrap(), &sf, 1e-12);
            assert_coeffs(&phi3(&p, &params).unwrap(), &phi3_expected, 1e-12);
            let dev = &theta_f_operator(&f, &params).unwrap() - &phi3(&p, &params).unwrap();
            assert_coeffs(&dev, &theta_dev, 1e-12);
        }
    }

    #[test]
    fn theta_f_of_identity_is_one() {
        let f = NormalizedFunction::from_tail(&[], 10).unwrap();
        let params = OperatorParams::third_order(0.7, 1.3, 2.1).unwrap();
        assert_coeffs(
            &theta_f_operator(&f, &params).unwrap(),
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            1e-14,
        );
        assert_coeffs(
            &s_f_operator(&f, &params).unwrap(),
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            1e-14,
        );
        let no_b3 = OperatorParams::second_order(1.0, 1.0).unwrap();
        assert_eq!(theta_f_operator(&f, &no_b3), Err(Error::MissingBeta3));
    }

    #[test]
    fn s_f_vanishing_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = NormalizedFunction::random(&mut rng, 8, 16).unwrap();
        let zero = OperatorParams::second_order(0.0, 0.0).unwrap();
        assert!(
            s_f_operator(&f, &zero)
                .unwrap()
                .max_coeff_diff(&PowerSeries::one(15), 16)
                < 1e-15
        );
    }

    #[test]
    fn evaluate_examples() {
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(real(&[1.0, 1.0]).evaluate(i), Complex64::new(1.0, 1.0));
        let s = real(&[0.25, 3.0, -7.0]);
        assert_eq!(s.evaluate(Complex64::new(0.0, 0.0)), c(0.25));

        let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
        let sin = PowerSeries::from_fn(21, |k| {
            if k % 2 == 1 {
                c(if (k / 2) % 2 == 0 { 1.0 } else { -1.0 } / fact(k))
            } else {
                c(0.0)
            }
        })
        .unwrap();
        assert!((sin.evaluate(c(1.0)).re - 1f64.sin()).abs() < 1e-9);
        assert!((sin.evaluate(c(1.0)).re - 0.841471).abs() < 1e-6);
    }

    #[test]
    fn json_shape() {
        let s = PowerSeries::from_real(&[1.0, -2.0], 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"order":2,"coeffs":[[1.0,0.0],[-2.0,0.0],[0.0,0.0]]}"#
        );
        let back: PowerSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PowerSeries>(r#"{"order":3,"coeffs":[[1,0]]}"#).is_err());
    }

    #[test]
    fn reciprocal_property_on_seeded_family() {
        // |a_k| <= 2^-(k+1) keeps a(z) away from zero on the closed disk.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let unit = PowerSeries::one(DEFAULT_ORDER);
        for _ in 0..100 {
            let a0 = Complex64::from_polar(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let mut coeffs = vec![a0];
            coeffs.extend((1..=DEFAULT_ORDER).map(|k| {
                Complex64::from_polar(
                    0.5f64.powi(k as i32 + 1) * rng.gen::<f64>(),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            }));
            let a = PowerSeries::new(coeffs).unwrap();
            let prod = &a * &a.reciprocal().unwrap();
            assert!(prod.max_coeff_diff(&unit, DEFAULT_ORDER + 1) < 1e-12);
        }
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), order + 1).prop_map(|v| {
            PowerSeries::new(
                v.into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn operators_are_affine_in_weights(
            s in series_strategy(12),
            b1 in 0.0f64..5.0, b2 in 0.0f64..5.0, b3 in 0.0f64..5.0, lambda in 0.0f64..4.0,
        ) {
            let mut coeffs = s.coeffs().to_vec();
            coeffs[0] = c(1.0);
            let p = PowerSeries::new(coeffs).unwrap();
            let params = OperatorParams::third_order(b1, b2, b3).unwrap();
            let one = PowerSeries::one(12);
            for op in [phi2, phi3] {
                let lhs = &op(&p, &params.scaled(lambda)).unwrap() - &one;
                let rhs = (&op(&p, &params).unwrap() - &one).scale(lambda);
                let size = rhs.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
                prop_assert!(lhs.max_coeff_diff(&rhs, 13) <= 1e-13 * size);
            }
        }

        #[test]
        fn evaluation_is_multiplicative(
            a in series_strategy(20), b in series_strategy(20),
            r in 0.0f64..0.5, t in 0.0f64..std::f64::consts::TAU,
        ) {
            // degree-20 polynomials carried at order 40 so the product is exact
            let a = PowerSeries::from_complex(a.coeffs(), 40).unwrap();
            let b = PowerSeries::from_complex(b.coeffs(), 40).unwrap();
            let z = Complex64::from_polar(r, t);
            let prod = (&a * &b).evaluate(z);
            prop_assert!((prod - a.evaluate(z) * b.evaluate(z)).norm() < 1e-8);
        }

        #[test]
        fn json_roundtrip(s in series_strategy(6)) {
            let back: PowerSeries = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
