//! Finite-difference stencils on uniform grids.
//!
//! Weights come from Fornberg's recursion, so the same code produces
//! centered, one-sided and fractional-point (interpolation) stencils.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exec;

/// Guard band, in strided sample units, on each side of the grid.
pub const GUARD: usize = 4;

/// Spacing of the derivative stencils.
///
/// `stride = 1` uses neighbouring samples. A wider stride trades truncation
/// error for roundoff: differentiating sampled data twice or three times over
/// (as the oracles do) amplifies rounding by `h^-k`, and a stride of a few
/// dozen samples keeps that amplification in check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffOptions {
    pub stride: usize,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions { stride: 1 }
    }
}

impl DiffOptions {
    /// Roughly 256 effective intervals across the grid, never below stride 1.
    pub fn resolved(n: usize) -> Self {
        Self::spread(n, 256)
    }

    /// About `intervals` effective intervals across an `n`-sample grid.
    pub fn spread(n: usize, intervals: usize) -> Self {
        DiffOptions { stride: (n.saturating_sub(1) / intervals.max(1)).max(1) }
    }

    /// Spacing used for the Frenet apparatus: half that of
    /// [`DiffOptions::resolved`], since positions are differentiated only
    /// once per quantity there.
    pub fn frames(n: usize) -> Self {
        Self::spread(n, 512)
    }

    /// Number of boundary samples that use one-sided stencils.
    pub fn guard_band(&self) -> usize {
        GUARD * self.stride
    }

    /// Smallest grid length this stride supports.
    pub fn min_samples(&self) -> usize {
        2 * self.guard_band() + 1
    }
}

/// Fornberg weights for derivatives `0..=max_order` at `x0` using the
/// sample positions `x`. Row `k` of the result holds the weights for the
/// `k`-th derivative.
pub fn fornberg(x: &[f64], x0: f64, max_order: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - x0;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Weights of the `order`-th derivative on integer offsets `lo..lo+width`
/// evaluated at offset 0, for unit spacing.
pub fn offset_weights(lo: isize, width: usize, order: usize) -> Vec<f64> {
    let x: Vec<f64> = (0..width).map(|j| (lo + j as isize) as f64).collect();
    fornberg(&x, 0.0, order).swap_remove(order)
}

fn centered_width(order: usize) -> usize {
    if order == 3 {
        7
    } else {
        5
    }
}

struct Plan {
    stride: usize,
    centered: Vec<f64>,
    half: usize,
    // one-sided weights indexed by the evaluation point's position `a`
    // inside a window of `width` points
    sided: Vec<Vec<f64>>,
    width: usize,
    scale: f64,
}

impl Plan {
    fn new(order: usize, step: f64, opts: DiffOptions, n: usize) -> Result<Self> {
        if !(1..=3).contains(&order) {
            return Err(Error::UnsupportedOrder(order));
        }
        let stride = opts.stride.max(1);
        let width = order + 4;
        let min = opts.min_samples().max(width * stride + 1);
        if n < min {
            return Err(Error::SampleCountTooSmall { got: n, min });
        }
        let cw = centered_width(order);
        let half = cw / 2;
        let centered = offset_weights(-(half as isize), cw, order);
        let sided = (0..width).map(|a| offset_weights(-(a as isize), width, order)).collect();
        let h = step * stride as f64;
        Ok(Plan { stride, centered, half, sided, width, scale: h.powi(order as i32).recip() })
    }

    fn apply<T>(&self, v: &[T], i: usize) -> T
    where
        T: Copy + Zero + Mul<f64, Output = T> + Add<Output = T>,
    {
        let n = v.len();
        let st = self.stride;
        let left = i / st;
        let right = (n - 1 - i) / st;
        let (weights, start) = if left >= self.half && right >= self.half {
            (&self.centered, i - self.half * st)
        } else {
            let w = self.width;
            let a = (w / 2).clamp((w - 1).saturating_sub(right), left);
            (&self.sided[a], i - a * st)
        };
        let mut acc = T::zero();
        for (j, &w) in weights.iter().enumerate() {
            acc = acc + v[start + j * st] * w;
        }
        acc * self.scale
    }
}

/// Differentiates uniformly spaced samples with respect to the grid
/// parameter. The output has the same length as the input.
pub fn differentiate<T>(values: &[T], step: f64, order: usize, opts: DiffOptions) -> Result<Vec<T>>
where
    T: Copy + Zero + Mul<f64, Output = T> + Add<Output = T> + Send + Sync,
{
    let plan = Plan::new(order, step, opts, values.len())?;
    Ok(exec::map_indices(values.len(), |i| plan.apply(values, i)))
}

/// Derivative of `order` at a single grid index.
pub fn differentiate_at<T>(values: &[T], step: f64, order: usize, opts: DiffOptions, index: usize) -> Result<T>
where
    T: Copy + Zero + Mul<f64, Output = T> + Add<Output = T>,
{
    let plan = Plan::new(order, step, opts, values.len())?;
    Ok(plan.apply(values, index))
}
