//! Smarandache curves built from the Bishop frame of a base curve `α`:
//!
//! | kind    | β(s)                    |
//! |---------|-------------------------|
//! | `TN1`   | `(T + N1) / √2`         |
//! | `TN2`   | `(T + N2) / √2`         |
//! | `N1N2`  | `(N1 + N2) / √2`        |
//! | `TN1N2` | `(T + N1 + N2) / √3`    |
//!
//! [`invariants`] evaluates the closed forms from `k1`, `k2` of `α`;
//! [`oracle_invariants`] differentiates the sampled `β` directly, and
//! [`compare`] measures how far apart the two are.

pub mod closed_form;
pub mod oracle;
pub mod report;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use closed_form::{coefficients, local_invariants, Coefficients, LocalInvariants, NaturalJet};
pub use oracle::{oracle_invariants, oracle_invariants_with, OracleInvariants};
pub use report::{compare, write_invariants_csv, Discrepancy, DiscrepancyReport, Observables, Tolerances, INVARIANTS_HEADER};

use crate::curve::stencil::{differentiate, DiffOptions};
use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::frames::BishopData;
use crate::{exec, Vec3};

/// Effective intervals for the default `k1`, `k2` derivative stencils.
/// Second derivatives of already-differentiated data need a wide spacing.
pub const K_INTERVALS: usize = 128;

/// Speeds at or below this make β stationary.
pub const SPEED_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SmarandacheKind {
    TN1,
    TN2,
    N1N2,
    TN1N2,
}

impl SmarandacheKind {
    pub const ALL: [SmarandacheKind; 4] =
        [SmarandacheKind::TN1, SmarandacheKind::TN2, SmarandacheKind::N1N2, SmarandacheKind::TN1N2];

    /// Lowercase identifier used on the command line and in file names.
    pub fn slug(self) -> &'static str {
        match self {
            SmarandacheKind::TN1 => "tn1",
            SmarandacheKind::TN2 => "tn2",
            SmarandacheKind::N1N2 => "n1n2",
            SmarandacheKind::TN1N2 => "tn1n2",
        }
    }

    /// Weights of `(T, N1, N2)` in β.
    pub fn weights(self) -> [f64; 3] {
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let r3 = 1.0 / 3f64.sqrt();
        match self {
            SmarandacheKind::TN1 => [r2, r2, 0.0],
            SmarandacheKind::TN2 => [r2, 0.0, r2],
            SmarandacheKind::N1N2 => [0.0, r2, r2],
            SmarandacheKind::TN1N2 => [r3, r3, r3],
        }
    }
}

impl fmt::Display for SmarandacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmarandacheKind::TN1 => "TN1",
            SmarandacheKind::TN2 => "TN2",
            SmarandacheKind::N1N2 => "N1N2",
            SmarandacheKind::TN1N2 => "TN1N2",
        })
    }
}

impl FromStr for SmarandacheKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SmarandacheKind::ALL
            .into_iter()
            .find(|k| k.slug().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown Smarandache kind `{s}` (expected tn1, tn2, n1n2 or tn1n2)"))
    }
}

/// Samples β on the grid of `bishop`. β is parametrized by the arc length
/// of α and is generally not unit speed.
pub fn construct(kind: SmarandacheKind, bishop: &BishopData) -> Result<SampledCurve> {
    let [a, b, c] = kind.weights();
    let points = exec::map_indices(bishop.len(), |i| bishop.t[i] * a + bishop.n1[i] * b + bishop.n2[i] * c);
    SampledCurve::from_points(bishop.s[0], bishop.step(), points, false)
}

/// `ds*/ds`, the speed of β with respect to the arc length of α.
pub fn speed(kind: SmarandacheKind, k1: f64, k2: f64) -> Result<f64> {
    let v = match kind {
        SmarandacheKind::TN1 => ((2.0 * k1 * k1 + k2 * k2) / 2.0).sqrt(),
        SmarandacheKind::TN2 => ((k1 * k1 + 2.0 * k2 * k2) / 2.0).sqrt(),
        SmarandacheKind::N1N2 => (k1 + k2) / std::f64::consts::SQRT_2,
        SmarandacheKind::TN1N2 => (2.0 * (k1 * k1 + k1 * k2 + k2 * k2) / 3.0).sqrt(),
    };
    if v > SPEED_FLOOR {
        Ok(v)
    } else {
        Err(Error::DegenerateSpeed { s: None, speed: v })
    }
}

/// Variable of integration for the Bishop angle `θ_β` of β.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ThetaIntegration {
    /// `dθ_β = τ_β ds*`, β's own arc length.
    #[default]
    ArcLengthOfBeta,
    /// `dθ_β = τ_β ds`, the arc length of α.
    ArcLengthOfBase,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct InvariantOptions {
    pub theta: ThetaIntegration,
    /// Value of `θ_β` at the first sample.
    pub theta_beta0: f64,
    /// Stencils for `k1'`, `k2'`, `k1''`, `k2''`; defaults to
    /// [`K_INTERVALS`] effective intervals across the grid.
    pub diff: Option<DiffOptions>,
}

/// Closed-form invariants of β at every sample of α's grid. Vectors are in
/// world coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SmarandacheInvariants {
    pub kind: SmarandacheKind,
    pub s: Vec<f64>,
    pub s_star: Vec<f64>,
    pub speed: Vec<f64>,
    pub t: Vec<Vec3>,
    pub n: Vec<Vec3>,
    pub b: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    pub theta: Vec<f64>,
    pub n1: Vec<Vec3>,
    pub n2: Vec<Vec3>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    pub coefficients: Vec<Coefficients>,
    /// Samples at each end where the `k` derivatives are one-sided.
    pub guard: usize,
}

impl SmarandacheInvariants {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

pub fn invariants(kind: SmarandacheKind, bishop: &BishopData) -> Result<SmarandacheInvariants> {
    invariants_with(kind, bishop, InvariantOptions::default())
}

pub fn invariants_with(kind: SmarandacheKind, bishop: &BishopData, opts: InvariantOptions) -> Result<SmarandacheInvariants> {
    let m = bishop.len();
    let h = bishop.step();
    let diff = opts.diff.unwrap_or_else(|| DiffOptions::spread(m, K_INTERVALS));
    let d = |v: &[f64], k| differentiate(v, h, k, diff);
    let (k1p, k2p, k1pp, k2pp) = (d(&bishop.k1, 1)?, d(&bishop.k2, 1)?, d(&bishop.k1, 2)?, d(&bishop.k2, 2)?);
    let local = exec::try_map_indices(m, |i| {
        let jet = NaturalJet { k1: bishop.k1[i], k2: bishop.k2[i], k1p: k1p[i], k2p: k2p[i], k1pp: k1pp[i], k2pp: k2pp[i] };
        local_invariants(kind, &jet).map_err(|e| match e {
            Error::DegenerateSpeed { speed, .. } => Error::DegenerateSpeed { s: Some(bishop.s[i]), speed },
            other => other,
        })
    })?;
    let world = |i: usize, c: [f64; 3]| bishop.t[i] * c[0] + bishop.n1[i] * c[1] + bishop.n2[i] * c[2];

    let speed: Vec<f64> = local.iter().map(|l| l.speed).collect();
    let tau: Vec<f64> = local.iter().map(|l| l.tau).collect();
    let mut s_star = Vec::with_capacity(m);
    let mut theta = Vec::with_capacity(m);
    let (mut acc, mut ang) = (0.0, opts.theta_beta0);
    s_star.push(acc);
    theta.push(ang);
    for i in 1..m {
        let ds_star = 0.5 * h * (speed[i - 1] + speed[i]);
        acc += ds_star;
        ang += match opts.theta {
            ThetaIntegration::ArcLengthOfBeta => 0.5 * h * (tau[i - 1] * speed[i - 1] + tau[i] * speed[i]),
            ThetaIntegration::ArcLengthOfBase => 0.5 * h * (tau[i - 1] + tau[i]),
        };
        s_star.push(acc);
        theta.push(ang);
    }

    let rows = exec::map_indices(m, |i| {
        let l = &local[i];
        let (t, n, b) = (world(i, l.tangent), world(i, l.normal), world(i, l.binormal));
        let (sn, cs) = theta[i].sin_cos();
        (t, n, b, n * cs - b * sn, n * sn + b * cs, l.kappa * cs, l.kappa * sn)
    });
    let mut out = SmarandacheInvariants {
        kind,
        s: bishop.s.clone(),
        s_star,
        speed,
        t: Vec::with_capacity(m),
        n: Vec::with_capacity(m),
        b: Vec::with_capacity(m),
        kappa: local.iter().map(|l| l.kappa).collect(),
        tau,
        theta,
        n1: Vec::with_capacity(m),
        n2: Vec::with_capacity(m),
        k1: Vec::with_capacity(m),
        k2: Vec::with_capacity(m),
        coefficients: local.iter().map(|l| l.coefficients).collect(),
        guard: diff.guard_band(),
    };
    for (t, n, b, n1, n2, k1, k2) in rows {
        out.t.push(t);
        out.n.push(n);
        out.b.push(b);
        out.n1.push(n1);
        out.n2.push(n2);
        out.k1.push(k1);
        out.k2.push(k2);
    }
    Ok(out)
}
