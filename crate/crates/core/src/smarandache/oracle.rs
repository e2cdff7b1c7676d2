//! Invariants of a sampled curve from its numeric derivatives alone.
//!
//! Nothing here knows how β was built: `κ = |β' × β''| / |β'|³` and
//! `τ = <β' × β'', β'''> / |β' × β''|²` hold for any regular
//! parametrization, so β can stay on the base curve's grid.

use crate::curve::stencil::DiffOptions;
use crate::curve::{arc_length_reparam_with, derivatives_with, SampledCurve};
use crate::error::{Error, Result};
use crate::frames::{bishop_from_frenet, frenet_frame_with, BishopData, KAPPA_FLOOR};
use crate::{exec, Vec3};

use super::SPEED_FLOOR;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleInvariants {
    pub s: Vec<f64>,
    pub speed: Vec<f64>,
    pub t: Vec<Vec3>,
    pub n: Vec<Vec3>,
    pub b: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    pub guard: usize,
    /// Bishop frame of β on its own unit-speed grid (`θ0 = 0`), when β
    /// has one.
    pub bishop: Option<BishopData>,
}

pub fn oracle_invariants(beta: &SampledCurve) -> Result<OracleInvariants> {
    oracle_invariants_with(beta, DiffOptions::resolved(beta.len()))
}

/// Oracle with explicit stencils for the derivatives of β.
pub fn oracle_invariants_with(beta: &SampledCurve, opts: DiffOptions) -> Result<OracleInvariants> {
    let d = derivatives_with(beta, 3, opts)?;
    let m = beta.len();
    let rows = exec::try_map_indices(m, |i| {
        let (d1, d2, d3) = (d.first[i], d.second[i], d.third[i]);
        let v = d1.norm();
        if !(v > SPEED_FLOOR) {
            return Err(Error::IrregularCurve { t: beta.param(i), speed: v, threshold: SPEED_FLOOR });
        }
        let c = d1.cross(&d2);
        let cn = c.norm();
        let t = d1 / v;
        if cn == 0.0 {
            return Ok((v, t, Vec3::zeros(), Vec3::zeros(), 0.0, 0.0));
        }
        let b = c / cn;
        Ok((v, t, b.cross(&t), b, cn / (v * v * v), c.dot(&d3) / (cn * cn)))
    })?;
    let bishop = arc_length_reparam_with(beta, m, opts)
        .and_then(|u| frenet_frame_with(&u, KAPPA_FLOOR, DiffOptions::frames(u.len())))
        .map(|f| bishop_from_frenet(&f, 0.0))
        .ok();
    let mut out = OracleInvariants {
        s: beta.params(),
        speed: Vec::with_capacity(m),
        t: Vec::with_capacity(m),
        n: Vec::with_capacity(m),
        b: Vec::with_capacity(m),
        kappa: Vec::with_capacity(m),
        tau: Vec::with_capacity(m),
        guard: d.guard_band,
        bishop,
    };
    for (v, t, n, b, k, tau) in rows {
        out.speed.push(v);
        out.t.push(t);
        out.n.push(n);
        out.b.push(b);
        out.kappa.push(k);
        out.tau.push(tau);
    }
    Ok(out)
}
