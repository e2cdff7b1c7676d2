//! Arc-length reparametrization.

use super::stencil::{fornberg, DiffOptions};
use super::{derivatives_with, max_speed_deviation_with, SampledCurve, UNIT_SPEED_TOL};
use crate::error::{Error, Result};
use crate::{exec, Vec3};

/// Speeds below this are treated as a singular point of the curve.
pub const REGULARITY_THRESHOLD: f64 = 1e-9;

// points in the local Lagrange interpolant (degree 7)
const LAGRANGE_POINTS: usize = 8;

/// Cumulative arc length at every sample, by the composite trapezoid rule
/// on the numeric speed. The sum runs in grid order.
pub fn arc_length_table(curve: &SampledCurve) -> Result<Vec<f64>> {
    let d = derivatives_with(curve, 1, DiffOptions::default())?;
    let speed: Vec<f64> = d.first.iter().map(|v| v.norm()).collect();
    if let Some(i) = speed.iter().position(|&v| !(v >= REGULARITY_THRESHOLD)) {
        return Err(Error::IrregularCurve { t: curve.param(i), speed: speed[i], threshold: REGULARITY_THRESHOLD });
    }
    let h = curve.param_step;
    let mut table = Vec::with_capacity(speed.len());
    let mut acc = 0.0;
    table.push(acc);
    for w in speed.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        table.push(acc);
    }
    Ok(table)
}

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant of an increasing
/// table on unit-spaced nodes.
struct Pchip<'a> {
    y: &'a [f64],
    slope: Vec<f64>,
}

impl<'a> Pchip<'a> {
    fn new(y: &'a [f64]) -> Self {
        let n = y.len();
        let sec: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
        let mut slope = vec![0.0; n];
        slope[0] = sec[0];
        slope[n - 1] = sec[n - 2];
        for k in 1..n - 1 {
            let (a, b) = (sec[k - 1], sec[k]);
            slope[k] = if a * b <= 0.0 { 0.0 } else { 2.0 * a * b / (a + b) };
        }
        Pchip { y, slope }
    }

    fn eval(&self, k: usize, x: f64) -> (f64, f64) {
        let (y0, y1, d0, d1) = (self.y[k], self.y[k + 1], self.slope[k], self.slope[k + 1]);
        let x2 = x * x;
        let x3 = x2 * x;
        let v = (2.0 * x3 - 3.0 * x2 + 1.0) * y0
            + (x3 - 2.0 * x2 + x) * d0
            + (-2.0 * x3 + 3.0 * x2) * y1
            + (x3 - x2) * d1;
        let dv = (6.0 * x2 - 6.0 * x) * (y0 - y1) + (3.0 * x2 - 4.0 * x + 1.0) * d0 + (3.0 * x2 - 2.0 * x) * d1;
        (v, dv)
    }

    /// Fractional node index `u` with `p(u) = target`.
    fn invert(&self, target: f64) -> f64 {
        let n = self.y.len();
        let k = match self.y.partition_point(|&v| v <= target) {
            0 => 0,
            p => (p - 1).min(n - 2),
        };
        let (mut lo, mut hi) = (0.0, 1.0);
        let span = self.y[k + 1] - self.y[k];
        let mut x = ((target - self.y[k]) / span).clamp(0.0, 1.0);
        for _ in 0..50 {
            let (v, dv) = self.eval(k, x);
            let f = v - target;
            if f.abs() <= 1e-15 * span {
                break;
            }
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let newton = x - f / dv;
            x = if dv > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        }
        k as f64 + x
    }
}

fn window(u: f64, n: usize) -> usize {
    let base = u.floor() as isize - (LAGRANGE_POINTS as isize / 2 - 1);
    base.clamp(0, (n - LAGRANGE_POINTS) as isize) as usize
}

fn lagrange_weights(start: usize, u: f64, max_order: usize) -> Vec<Vec<f64>> {
    let x: Vec<f64> = (0..LAGRANGE_POINTS).map(|j| (start + j) as f64).collect();
    fornberg(&x, u, max_order)
}

/// Refines `u` so the degree-7 interpolant of `table` hits `target`.
fn polish(table: &[f64], target: f64, mut u: f64) -> f64 {
    let n = table.len();
    for _ in 0..4 {
        let start = window(u, n);
        let w = lagrange_weights(start, u, 1);
        let (mut v, mut dv) = (0.0, 0.0);
        for j in 0..LAGRANGE_POINTS {
            v += w[0][j] * table[start + j];
            dv += w[1][j] * table[start + j];
        }
        if !(dv > 0.0) {
            break;
        }
        let step = (v - target) / dv;
        u = (u - step).clamp(0.0, (n - 1) as f64);
        if step.abs() < 1e-14 {
            break;
        }
    }
    u
}

fn interpolate(points: &[Vec3], u: f64) -> Vec3 {
    let start = window(u, points.len());
    let w = lagrange_weights(start, u, 0);
    (0..LAGRANGE_POINTS).fold(Vec3::zeros(), |acc, j| acc + points[start + j] * w[0][j])
}

/// Resamples `curve` at `n_out` equally spaced arc-length values, starting
/// at `s = 0`. The result is flagged unit-speed after the numeric speed has
/// been checked against [`UNIT_SPEED_TOL`].
pub fn arc_length_reparam(curve: &SampledCurve, n_out: usize) -> Result<SampledCurve> {
    arc_length_reparam_with(curve, n_out, DiffOptions::default())
}

/// Like [`arc_length_reparam`], checking the output speed with the given
/// stencils. A wider stride tolerates curves whose samples carry noise
/// from earlier numeric differentiation.
pub fn arc_length_reparam_with(curve: &SampledCurve, n_out: usize, check: DiffOptions) -> Result<SampledCurve> {
    if n_out < super::MIN_SAMPLES {
        return Err(Error::SampleCountTooSmall { got: n_out, min: super::MIN_SAMPLES });
    }
    let table = arc_length_table(curve)?;
    let n = table.len();
    let total = table[n - 1];
    let step = total / (n_out - 1) as f64;
    let pchip = Pchip::new(&table);
    let points = exec::map_indices(n_out, |j| {
        if j == 0 {
            return curve.points[0];
        }
        if j == n_out - 1 {
            return curve.points[n - 1];
        }
        let target = step * j as f64;
        let u = polish(&table, target, pchip.invert(target));
        interpolate(&curve.points, u)
    });
    let out = SampledCurve { param_start: 0.0, param_step: step, points, unit_speed: true };
    let dev = max_speed_deviation_with(&out, check)?;
    if !(dev <= UNIT_SPEED_TOL) {
        return Err(Error::NotUnitSpeed { max_deviation: dev, tolerance: UNIT_SPEED_TOL });
    }
    Ok(out)
}
