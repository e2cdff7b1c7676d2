//! Uniformly sampled space curves and their numeric derivatives.

pub mod csv;
pub mod reparam;
pub mod stencil;

pub use reparam::{arc_length_reparam, arc_length_reparam_with, arc_length_table};
pub use stencil::DiffOptions;

use crate::error::{Error, Result};
use crate::{exec, Vec3};

/// Minimum grid length: a 7-point stencil plus the guard band.
pub const MIN_SAMPLES: usize = 9;

/// Default tolerance on `| |dα/ds| - 1 |` for unit-speed curves.
pub const UNIT_SPEED_TOL: f64 = 1e-6;

/// A curve sampled on the uniform grid `param_start + i * param_step`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    pub param_start: f64,
    pub param_step: f64,
    pub points: Vec<Vec3>,
    pub unit_speed: bool,
}

impl SampledCurve {
    /// Wraps existing samples, checking the grid invariants.
    pub fn from_points(param_start: f64, param_step: f64, points: Vec<Vec3>, unit_speed: bool) -> Result<Self> {
        if points.len() < MIN_SAMPLES {
            return Err(Error::SampleCountTooSmall { got: points.len(), min: MIN_SAMPLES });
        }
        if !(param_step > 0.0) || !param_step.is_finite() {
            let end = param_start + param_step * (points.len() - 1) as f64;
            return Err(Error::DegenerateInterval { start: param_start, end });
        }
        Ok(SampledCurve { param_start, param_step, points, unit_speed })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn param(&self, i: usize) -> f64 {
        self.param_start + self.param_step * i as f64
    }

    pub fn params(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.param(i)).collect()
    }

    pub fn param_end(&self) -> f64 {
        self.param(self.len() - 1)
    }
}

fn grid(range: (f64, f64), n: usize) -> Result<f64> {
    if n < MIN_SAMPLES {
        return Err(Error::SampleCountTooSmall { got: n, min: MIN_SAMPLES });
    }
    let (a, b) = range;
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::DegenerateInterval { start: a, end: b });
    }
    Ok((b - a) / (n - 1) as f64)
}

fn grid_point(range: (f64, f64), step: f64, n: usize, i: usize) -> f64 {
    // hit the right endpoint exactly
    if i == n - 1 {
        range.1
    } else {
        range.0 + step * i as f64
    }
}

/// Samples `position` at `n` uniformly spaced parameters covering `range`.
pub fn sample_curve<F>(position: F, range: (f64, f64), n: usize) -> Result<SampledCurve>
where
    F: Fn(f64) -> Vec3 + Sync + Send,
{
    try_sample_curve(|t| Ok(position(t)), range, n)
}

/// Like [`sample_curve`] for position functions that can fail, such as
/// parsed expressions. The error at the smallest parameter is returned.
pub fn try_sample_curve<F>(position: F, range: (f64, f64), n: usize) -> Result<SampledCurve>
where
    F: Fn(f64) -> Result<Vec3> + Sync + Send,
{
    let step = grid(range, n)?;
    let points = exec::try_map_indices(n, |i| position(grid_point(range, step, n, i)))?;
    Ok(SampledCurve { param_start: range.0, param_step: step, points, unit_speed: false })
}

/// Numeric derivatives up to `max_order`, aligned with the source grid.
/// Orders above `max_order` are left empty.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSet {
    pub first: Vec<Vec3>,
    pub second: Vec<Vec3>,
    pub third: Vec<Vec3>,
    pub guard_band: usize,
}

impl DerivativeSet {
    pub fn order(&self, k: usize) -> &[Vec3] {
        match k {
            1 => &self.first,
            2 => &self.second,
            3 => &self.third,
            _ => &[],
        }
    }
}

pub fn derivatives(curve: &SampledCurve, max_order: usize) -> Result<DerivativeSet> {
    derivatives_with(curve, max_order, DiffOptions::default())
}

pub fn derivatives_with(curve: &SampledCurve, max_order: usize, opts: DiffOptions) -> Result<DerivativeSet> {
    if !(1..=3).contains(&max_order) {
        return Err(Error::UnsupportedOrder(max_order));
    }
    let h = curve.param_step;
    let d = |k: usize| -> Result<Vec<Vec3>> {
        if k <= max_order {
            stencil::differentiate(&curve.points, h, k, opts)
        } else {
            Ok(Vec::new())
        }
    };
    Ok(DerivativeSet { first: d(1)?, second: d(2)?, third: d(3)?, guard_band: opts.guard_band() })
}

/// Largest `| |dα/dt| - 1 |` over the samples outside the guard band.
pub fn max_speed_deviation(curve: &SampledCurve) -> Result<f64> {
    max_speed_deviation_with(curve, DiffOptions::default())
}

pub fn max_speed_deviation_with(curve: &SampledCurve, opts: DiffOptions) -> Result<f64> {
    let d = derivatives_with(curve, 1, opts)?;
    let g = d.guard_band;
    Ok(d.first[g..curve.len() - g].iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn circle(t: f64) -> Vec3 {
        Vec3::new(t.cos(), t.sin(), 0.0)
    }

    #[test]
    fn samples_cover_endpoints() {
        let c = sample_curve(circle, (0.0, 2.0 * PI), 9).unwrap();
        assert_relative_eq!((c.points[0] - Vec3::new(1.0, 0.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((c.points[4] - Vec3::new(-1.0, 0.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert!(!c.unit_speed);
        let line = sample_curve(|t| Vec3::new(t, 0.0, 0.0), (0.0, 1.0), 9).unwrap();
        assert_eq!(line.points[4], Vec3::new(0.5, 0.0, 0.0));
    }

    #[test]
    fn sampling_errors() {
        assert_eq!(sample_curve(circle, (0.0, 1.0), 8), Err(Error::SampleCountTooSmall { got: 8, min: 9 }));
        assert_eq!(sample_curve(circle, (1.0, 1.0), 9), Err(Error::DegenerateInterval { start: 1.0, end: 1.0 }));
    }

    #[test]
    fn circle_first_derivative() {
        let h = 1e-2;
        let c = sample_curve(circle, (-50.0 * h, 50.0 * h), 101).unwrap();
        let d = derivatives(&c, 3).unwrap();
        assert!((d.first[50] - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-8);
        assert_eq!(d.first.len(), c.len());
        assert_eq!(d.third.len(), c.len());
        assert!(d.guard_band >= 4);
    }

    #[test]
    fn cubic_third_derivative() {
        let c = sample_curve(|t| Vec3::new(t * t * t, 0.0, 0.0), (-1.0, 1.0), 41).unwrap();
        let d = derivatives(&c, 3).unwrap();
        for v in &d.third[d.guard_band..c.len() - d.guard_band] {
            assert!((v - Vec3::new(6.0, 0.0, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn halving_step_reduces_error() {
        let err = |n: usize| {
            let c = sample_curve(circle, (0.0, 2.0), n).unwrap();
            let d = derivatives(&c, 2).unwrap();
            (d.guard_band..n - d.guard_band)
                .map(|i| {
                    let t = c.param(i);
                    (d.first[i] - Vec3::new(-t.sin(), t.cos(), 0.0)).norm()
                })
                .fold(0.0, f64::max)
        };
        assert!(err(41) / err(81) >= 8.0);
    }

    #[test]
    fn unrequested_orders_are_empty() {
        let c = sample_curve(circle, (0.0, 1.0), 20).unwrap();
        let d = derivatives(&c, 1).unwrap();
        assert!(d.second.is_empty() && d.third.is_empty());
        assert_eq!(derivatives(&c, 0), Err(Error::UnsupportedOrder(0)));
    }
}
