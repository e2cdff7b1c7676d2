//! Turns the curve flags into a unit-speed sampled curve.

use std::f64::consts::TAU;

use smarandache_core::builtin::{salkowski_point, salkowski_unit_speed, Circle, Helix, SalkowskiParams, DEFAULT_FRACTION};
use smarandache_core::curve::csv::read_curve_csv_path;
use smarandache_core::curve::{sample_curve, try_sample_curve, SampledCurve};
use smarandache_core::expr::parse_curve;
use smarandache_core::pipeline::to_unit_speed;

use crate::args::{CurveName, Global};
use crate::error::{CliError, CliResult};

/// Smallest `--n` accepted by commands that compute frames.
pub const MIN_N: usize = 64;

const DEFAULT_T_RANGE: (f64, f64) = (0.0, TAU);

pub struct BaseCurve {
    pub label: String,
    pub curve: SampledCurve,
}

pub fn load(g: &Global) -> CliResult<BaseCurve> {
    if g.n < MIN_N {
        return Err(CliError::Input(format!("--n {} is below the minimum of {MIN_N}", g.n)));
    }
    let n = g.n;
    let range = g.t_range.unwrap_or(DEFAULT_T_RANGE);
    let (label, raw) = if let Some(text) = &g.expr {
        let e = parse_curve(text)?;
        (format!("expr {e}"), try_sample_curve(|t| e.eval(t), range, n)?)
    } else if let Some(path) = &g.csv {
        (format!("csv {}", path.display()), read_curve_csv_path(path)?)
    } else {
        match g.curve.unwrap_or(CurveName::Salkowski) {
            CurveName::Salkowski => {
                let p = SalkowskiParams::new(g.m)?;
                let label = format!("salkowski m={}", g.m);
                match g.t_range {
                    Some(r) => (label, sample_curve(|t| salkowski_point(&p, t), r, n)?),
                    None => (label, salkowski_unit_speed(&p, n, DEFAULT_FRACTION)?),
                }
            }
            CurveName::Circle => {
                let c = Circle::new(g.radius)?;
                (format!("circle R={}", g.radius), sample_curve(|t| c.point(t), range, n)?)
            }
            CurveName::Helix => {
                let h = Helix::new(g.a, g.b)?;
                (format!("helix a={} b={}", g.a, g.b), sample_curve(|t| h.point(t), range, n)?)
            }
        }
    };
    Ok(BaseCurve { label, curve: to_unit_speed(raw, n)? })
}
