//! One-dimensional minimization and root bracketing.

use crate::par::{argmin, Exec};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search on `[a, b]` until the bracket is narrower than `tol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Minimum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let candidates = [(x, f(x)), (c, fc), (d, fd)];
    let (x, value) = candidates
        .into_iter()
        .fold((x, f64::INFINITY), |best, cand| {
            if cand.1 < best.1 {
                cand
            } else {
                best
            }
        });
    Minimum { x, value }
}

/// Uniform grid over `[start, start + width)` followed by golden-section
/// refinement on the two cells around the best grid point. The grid stage
/// runs under `exec`; the result does not depend on it.
pub fn grid_then_golden<F>(
    f: F,
    start: f64,
    width: f64,
    points: usize,
    tol: f64,
    exec: Exec,
) -> Minimum
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let step = width / points as f64;
    let values = exec.map_range(points, |i| f(start + step * i as f64));
    let (i, grid_value) = argmin(&values).expect("grid has at least one point");
    let center = start + step * i as f64;
    let refined = golden_section(&f, center - step, center + step, tol);
    if refined.value <= grid_value {
        refined
    } else {
        Minimum {
            x: center,
            value: grid_value,
        }
    }
}

/// Bisection for a sign change of `f` on `[a, b]`; `None` without one.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a) < tol {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Newton polish of a bracketed root; stays inside `[a, b]`.
pub fn newton_polish<F, D>(f: F, df: D, mut x: f64, a: f64, b: f64, iterations: usize) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    for _ in 0..iterations {
        let d = df(x);
        if d == 0.0 {
            break;
        }
        let next = (x - f(x) / d).clamp(a, b);
        if next == x {
            break;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let m = golden_section(|x| (x - 0.3).powi(2) + 2.0, -1.0, 2.0, 1e-12);
        assert!((m.x - 0.3).abs() < 1e-6);
        assert!((m.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_then_golden_is_exec_independent() {
        let f = |x: f64| (3.0 * x).cos() + 0.1 * x;
        let a = grid_then_golden(f, 0.0, 6.0, 1000, 1e-12, Exec::Sequential);
        let b = grid_then_golden(f, 0.0, 6.0, 1000, 1e-12, Exec::Parallel);
        assert_eq!(a, b);
        assert!((a.x - std::f64::consts::PI / 3.0).abs() < 0.05);
    }

    #[test]
    fn bisection_and_newton() {
        let f = |x: f64| x * x - 2.0;
        let r = bisect(f, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
        assert_eq!(bisect(f, 2.0, 3.0, 1e-14), None);
        let p = newton_polish(f, |x| 2.0 * x, 1.4, 0.0, 2.0, 8);
        assert!(f(p).abs() < 1e-15);
    }
}
