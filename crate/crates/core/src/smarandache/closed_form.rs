//! Closed-form invariants of the four curves in terms of the natural
//! curvatures `k1`, `k2` of the base curve and their derivatives.
//!
//! Vectors are returned as coordinates in the base curve's Bishop frame
//! `{T, N1, N2}`. The formulas are evaluated term by term without
//! simplification.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use super::{speed, SmarandacheKind};
use crate::error::Result;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// `k1`, `k2` and their first two arc-length derivatives at one sample.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NaturalJet {
    pub k1: f64,
    pub k2: f64,
    pub k1p: f64,
    pub k2p: f64,
    pub k1pp: f64,
    pub k2pp: f64,
}

/// The `λ`, `σ`, `ρ` polynomials plus `μ` and `η = |λ|`.
///
/// The `N1N2` curve has no `λ`/`σ` system of its own since its normal and
/// binormal are given directly; for that kind `λ` and `σ` hold the frame
/// coordinates of `|(k1,k2)| N_β` and `|(k1,k2)| B_β`, and `synthetic` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    pub lambda: [f64; 3],
    pub sigma: [f64; 3],
    pub rho: [f64; 3],
    pub mu: f64,
    pub eta: f64,
    pub synthetic: bool,
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn lambda(kind: SmarandacheKind, j: &NaturalJet) -> [f64; 3] {
    let NaturalJet { k1, k2, k1p, k2p, .. } = *j;
    let (k1_2, k2_2) = (k1 * k1, k2 * k2);
    match kind {
        SmarandacheKind::TN1 => [
            -k1p * k2_2 - 2.0 * k1_2 * k1_2 - 3.0 * k1_2 * k2_2 - k2_2 * k2_2 + k1 * k2 * k2p,
            -2.0 * k1_2 * k1_2 - k1_2 * k2_2 + k1p * k2_2 - k1 * k2 * k2p,
            -2.0 * k1_2 * k1 * k2 - k1 * k2_2 * k2 + 2.0 * k1_2 * k2p - 2.0 * k1 * k1p * k2,
        ],
        SmarandacheKind::TN2 => [
            -k1_2 * k2p - k1_2 * k1_2 - 3.0 * k1_2 * k2_2 - 2.0 * k2_2 * k2_2 + k1 * k1p * k2,
            -k1_2 * k1 * k2 - 2.0 * k1 * k2_2 * k2 + 2.0 * k1p * k2_2 - 2.0 * k1 * k2 * k2p,
            -k1_2 * k2_2 - 2.0 * k2_2 * k2_2 + k1_2 * k2p - k1 * k1p * k2,
        ],
        SmarandacheKind::N1N2 => [0.0, -k1, -k2],
        SmarandacheKind::TN1N2 => [
            -2.0 * k1p * k2_2 - k1_2 * k2p + k1 * k2 * k2p - 2.0 * k1_2 * k1_2 - 2.0 * k1_2 * k1 * k2
                - 4.0 * k1_2 * k2_2
                - 2.0 * k1 * k2_2 * k2
                - 2.0 * k2_2 * k2_2
                + k1 * k1p * k2
                + k1p * k2_2,
            -2.0 * k1_2 * k1_2 - 4.0 * k1_2 * k1 * k2 - 4.0 * k1_2 * k2_2 - 2.0 * k1 * k2_2 * k2 + k1 * k1p * k2
                + 2.0 * k1p * k2_2
                - k1_2 * k2p
                - 2.0 * k1 * k2 * k2p,
            -2.0 * k1_2 * k1 * k2 - 4.0 * k1_2 * k2_2 - 4.0 * k1 * k2_2 * k2 - 2.0 * k2_2 * k2_2 + 2.0 * k1_2 * k2p
                + k1 * k2 * k2p
                - 2.0 * k1 * k1p * k2
                - k1p * k2_2,
        ],
    }
}

fn sigma(kind: SmarandacheKind, j: &NaturalJet, l: [f64; 3]) -> [f64; 3] {
    let (k1, k2) = (j.k1, j.k2);
    match kind {
        SmarandacheKind::TN1 => [l[2] * k1 - l[1] * k2, l[2] * k1 + l[0] * k2, -k1 * (l[0] + l[1])],
        SmarandacheKind::TN2 => [l[2] * k1 - l[1] * k2, (l[2] + l[0]) * k2, -(l[1] * k2 + l[0] * k1)],
        SmarandacheKind::N1N2 => [0.0, -k2, k1],
        SmarandacheKind::TN1N2 => {
            [l[2] * k1 - l[1] * k2, l[2] * (k1 + k2) + l[0] * k2, -(l[1] * (k1 + k2) + l[0] * k1)]
        }
    }
}

fn rho(kind: SmarandacheKind, j: &NaturalJet) -> [f64; 3] {
    let NaturalJet { k1, k2, k1p, k2p, k1pp, k2pp } = *j;
    let (k1_2, k2_2) = (k1 * k1, k2 * k2);
    match kind {
        SmarandacheKind::TN1 => [
            -k1pp - 3.0 * k1 * k1p - 3.0 * k2 * k2p + k1_2 * k1 + k1 * k2_2,
            -3.0 * k1 * k1p - k1_2 * k1 - k1 * k2_2 + k1pp,
            -2.0 * k1p * k2 - k1_2 * k2 - k2_2 * k2 - k1 * k2p + k2pp,
        ],
        SmarandacheKind::TN2 => [
            -k2pp - 3.0 * k1 * k1p - 3.0 * k2 * k2p + k1_2 * k2 + k2_2 * k2,
            -2.0 * k1 * k2p - k1_2 * k1 - k1 * k2_2 - k1p * k2 + k1pp,
            -3.0 * k2 * k2p - k1_2 * k2 - k2_2 * k2 + k2pp,
        ],
        SmarandacheKind::N1N2 => [
            k1pp + k2pp - k1_2 * k1 - k1_2 * k2 - k1 * k2_2 - k2_2 * k2,
            3.0 * k1 * k1p + 2.0 * k1 * k2p + k1p * k2,
            2.0 * k1p * k2 + 3.0 * k2 * k2p + k1 * k2p,
        ],
        SmarandacheKind::TN1N2 => [
            -k1pp - k2pp - 3.0 * k1 * k1p - 3.0 * k2 * k2p + k1_2 * k1 + k1_2 * k2 + k1 * k2_2 + k2_2 * k2,
            -3.0 * k1 * k1p - 2.0 * k1 * k2p - k1_2 * k1 - k1 * k2_2 - k1p * k2 + k1pp,
            -2.0 * k1p * k2 - 3.0 * k2 * k2p - k1_2 * k2 - k2_2 * k2 - k1 * k2p + k2pp,
        ],
    }
}

fn mu(kind: SmarandacheKind, k1: f64, k2: f64) -> f64 {
    match kind {
        SmarandacheKind::TN1 => 2.0 * k1 * k1 + k2 * k2,
        SmarandacheKind::TN2 => k1 * k1 + 2.0 * k2 * k2,
        SmarandacheKind::N1N2 => k1 * k1 + k2 * k2,
        SmarandacheKind::TN1N2 => k1 * k1 + k1 * k2 + k2 * k2,
    }
}

pub fn coefficients(kind: SmarandacheKind, k1: f64, k2: f64, k1p: f64, k2p: f64, k1pp: f64, k2pp: f64) -> Coefficients {
    let j = NaturalJet { k1, k2, k1p, k2p, k1pp, k2pp };
    let l = lambda(kind, &j);
    Coefficients {
        lambda: l,
        sigma: sigma(kind, &j, l),
        rho: rho(kind, &j),
        mu: mu(kind, k1, k2),
        eta: norm3(l),
        synthetic: kind == SmarandacheKind::N1N2,
    }
}

fn torsion(kind: SmarandacheKind, j: &NaturalJet, r: [f64; 3]) -> f64 {
    let NaturalJet { k1, k2, k1p, k2p, .. } = *j;
    let (k1_2, k2_2) = (k1 * k1, k2 * k2);
    let w = k1 * k2p - k1p * k2;
    let [r1, r2, r3] = r;
    match kind {
        SmarandacheKind::TN1 => {
            let num = SQRT_2
                * ((k1_2 - k1p) * (r3 * k1 + r1 * k2) + k1 * (k2p - k1 * k2) * (r1 + r2)
                    - (k1p + k1_2 + k2_2) * (r2 * k2 - r3 * k1));
            let a = k1 * k2p - 2.0 * k1_2 * k2 - k1p * k2 - k2_2 * k2;
            let b = 2.0 * k1_2 * k1 + k1 * k2_2;
            num / (w * w + a * a + b * b)
        }
        SmarandacheKind::TN2 => {
            let num = SQRT_2
                * (k2 * (k1 * k2 - k1p) * (r3 + r1) + (k2p - k2_2) * (r2 * k2 + r1 * k1)
                    - (k2p + k1_2 + k2_2) * (r2 * k2 - r3 * k1));
            let a = -2.0 * k2_2 * k2 - k1_2 * k2;
            let b = 2.0 * k1 * k2_2 - k1p * k2 + k1 * k2p + k1_2 * k1;
            num / (w * w + a * a + b * b)
        }
        SmarandacheKind::N1N2 => {
            let (p, q) = (k1_2 + k1 * k2, k1 * k2 + k2_2);
            let num = -SQRT_2 * (r3 * p - r2 * q);
            num / ((k1 + k2) * (q * q + p * p))
        }
        SmarandacheKind::TN1N2 => {
            let num = SQRT_3
                * ((k1p - k1_2 - k1 * k2) * (-r3 * k1 - r3 * k2 - r1 * k2)
                    + (k2p - k1 * k2 - k2_2) * (r2 * k1 + r2 * k2 + r1 * k1)
                    - (k1p + k2p + k1_2 + k2_2) * (-r3 * k1 + r2 * k2));
            let a = k1 * k2p - 2.0 * k1_2 * k2 - 2.0 * k1 * k2_2 - 2.0 * k2_2 * k2 - k1p * k2;
            let b = 2.0 * k1_2 * k1 + 2.0 * k1_2 * k2 + 2.0 * k1 * k2_2 - k1p * k2 + k1 * k2p;
            num / (w * w + a * a + b * b)
        }
    }
}

/// Invariants of one sample, with vectors in `{T, N1, N2}` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariants {
    pub speed: f64,
    pub tangent: [f64; 3],
    pub normal: [f64; 3],
    pub binormal: [f64; 3],
    pub kappa: f64,
    pub tau: f64,
    pub coefficients: Coefficients,
}

fn scale(v: [f64; 3], c: f64) -> [f64; 3] {
    [v[0] * c, v[1] * c, v[2] * c]
}

/// Evaluates every closed form at one sample. Fails with `DegenerateSpeed`
/// (without an `s`) when the curve is stationary there.
pub fn local_invariants(kind: SmarandacheKind, j: &NaturalJet) -> Result<LocalInvariants> {
    let v = speed(kind, j.k1, j.k2)?;
    let c = coefficients(kind, j.k1, j.k2, j.k1p, j.k2p, j.k1pp, j.k2pp);
    let (k1, k2) = (j.k1, j.k2);
    let mu = c.mu;
    let eta = c.eta;
    let inv_eta = if eta > 0.0 { eta.recip() } else { 0.0 };
    let (tangent, kappa, bscale) = match kind {
        SmarandacheKind::TN1 => (scale([k1, -k1, -k2], -mu.sqrt().recip()), SQRT_2 * eta / (mu * mu), mu.sqrt().recip()),
        SmarandacheKind::TN2 => (scale([k2, -k1, -k2], -mu.sqrt().recip()), SQRT_2 * eta / (mu * mu), mu.sqrt().recip()),
        SmarandacheKind::N1N2 => ([-1.0, 0.0, 0.0], SQRT_2 * mu.sqrt() / (k1 + k2), 1.0),
        SmarandacheKind::TN1N2 => (
            scale([k1 + k2, -k1, -k2], -(2.0 * mu).sqrt().recip()),
            SQRT_3 * eta / (4.0 * mu * mu),
            (2.0 * mu).sqrt().recip(),
        ),
    };
    Ok(LocalInvariants {
        speed: v,
        tangent,
        normal: scale(c.lambda, inv_eta),
        binormal: scale(c.sigma, bscale * inv_eta),
        kappa,
        tau: torsion(kind, j, c.rho),
        coefficients: c,
    })
}
