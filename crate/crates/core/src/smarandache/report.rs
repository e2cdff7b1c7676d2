//! Closed form vs oracle comparison, and CSV export of invariants.

use std::io::{self, Write};

use serde::Serialize;

use super::{OracleInvariants, SmarandacheInvariants};
use crate::error::{Error, Result};
use crate::{format, Vec3};

/// Samples whose reference curvature is below this are left out of the
/// normal, binormal and torsion comparisons.
pub const MASK_KAPPA: f64 = 1e-7;

/// Relative errors divide by `max(|ref|, REL_FLOOR * max |ref|)`, so a
/// quantity passing through zero is judged against its own scale.
pub const REL_FLOOR: f64 = 1e-3;

/// Absolute lower bound of the relative-error denominator.
pub const REL_FLOOR_ABS: f64 = 1e-12;

/// Per-sample quantities shared by closed-form and oracle results.
pub trait Observables {
    fn s(&self) -> &[f64];
    fn speed(&self) -> &[f64];
    fn kappa(&self) -> &[f64];
    fn tau(&self) -> &[f64];
    fn tangent(&self) -> &[Vec3];
    fn normal(&self) -> &[Vec3];
    fn binormal(&self) -> &[Vec3];
    fn guard(&self) -> usize;
}

macro_rules! observables {
    ($ty:ty) => {
        impl Observables for $ty {
            fn s(&self) -> &[f64] {
                &self.s
            }
            fn speed(&self) -> &[f64] {
                &self.speed
            }
            fn kappa(&self) -> &[f64] {
                &self.kappa
            }
            fn tau(&self) -> &[f64] {
                &self.tau
            }
            fn tangent(&self) -> &[Vec3] {
                &self.t
            }
            fn normal(&self) -> &[Vec3] {
                &self.n
            }
            fn binormal(&self) -> &[Vec3] {
                &self.b
            }
            fn guard(&self) -> usize {
                self.guard
            }
        }
    };
}

observables!(SmarandacheInvariants);
observables!(OracleInvariants);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub max_abs: f64,
    pub max_rel: f64,
    pub s_argmax: f64,
}

/// One entry per compared quantity, serialized as a JSON array.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DiscrepancyReport {
    pub entries: Vec<Discrepancy>,
}

impl DiscrepancyReport {
    pub fn get(&self, quantity: &str) -> Option<&Discrepancy> {
        self.entries.iter().find(|d| d.quantity == quantity)
    }

    /// Largest absolute error over the three components of a vector
    /// quantity (`"Tb"`, `"Nb"` or `"Bb"`).
    pub fn max_abs_vector(&self, prefix: &str) -> f64 {
        ["x", "y", "z"].iter().filter_map(|c| self.get(&format!("{prefix}{c}"))).map(|d| d.max_abs).fold(0.0, f64::max)
    }

    /// Entries outside `tol`.
    pub fn violations(&self, tol: &Tolerances) -> Vec<&Discrepancy> {
        self.entries
            .iter()
            .filter(|d| match d.quantity.get(..2) {
                Some("Tb") => d.max_abs > tol.tangent_abs,
                Some("Nb") | Some("Bb") => d.max_abs > tol.frame_abs,
                _ if d.quantity == "tau_beta" => d.max_rel > tol.rel && d.max_abs > tol.tau_abs,
                _ => d.max_rel > tol.rel && d.max_abs > tol.scalar_abs,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Acceptance thresholds for [`DiscrepancyReport::violations`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance for speed, curvature and torsion.
    pub rel: f64,
    /// Scalar errors below this absolute size never count as violations,
    /// which keeps near-zero reference values from dominating.
    pub scalar_abs: f64,
    /// Same for torsion, which depends on second derivatives of the
    /// numerically differentiated `k1`, `k2` and cannot be resolved as finely.
    pub tau_abs: f64,
    pub tangent_abs: f64,
    pub frame_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rel: 1e-3, scalar_abs: 1e-6, tau_abs: 5e-5, tangent_abs: 1e-6, frame_abs: 1e-5 }
    }
}

pub const TOLERANCE_ENV: &str = "SMARANDACHE_TOL";

impl Tolerances {
    /// All thresholds scaled so that the relative one equals `rel`.
    pub fn scaled(rel: f64) -> Self {
        let d = Tolerances::default();
        let f = rel / d.rel;
        Tolerances {
            rel,
            scalar_abs: d.scalar_abs * f,
            tau_abs: d.tau_abs * f,
            tangent_abs: d.tangent_abs * f,
            frame_abs: d.frame_abs * f,
        }
    }

    /// Defaults, or [`Tolerances::scaled`] by the value of
    /// `SMARANDACHE_TOL` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TOLERANCE_ENV) {
            Ok(text) => {
                let v: f64 = text.trim().parse().unwrap_or(f64::NAN);
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::NonpositiveParameter { name: TOLERANCE_ENV, value: v });
                }
                Ok(Tolerances::scaled(v))
            }
            Err(_) => Ok(Tolerances::default()),
        }
    }
}

#[derive(Default)]
struct Series {
    s: Vec<f64>,
    value: Vec<f64>,
    reference: Vec<f64>,
}

impl Series {
    fn push(&mut self, s: f64, value: f64, reference: f64) {
        self.s.push(s);
        self.value.push(value);
        self.reference.push(reference);
    }

    fn finish(self, quantity: &str) -> Discrepancy {
        let scale = self.reference.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let floor = (REL_FLOOR * scale).max(REL_FLOOR_ABS);
        let mut d = Discrepancy {
            quantity: quantity.to_string(),
            max_abs: 0.0,
            max_rel: 0.0,
            s_argmax: self.s.first().copied().unwrap_or(f64::NAN),
        };
        for i in 0..self.s.len() {
            let abs = (self.value[i] - self.reference[i]).abs();
            let abs = if abs.is_nan() { f64::INFINITY } else { abs };
            if abs > d.max_abs {
                d.max_abs = abs;
                d.s_argmax = self.s[i];
            }
            d.max_rel = d.max_rel.max(abs / self.reference[i].abs().max(floor));
        }
        d
    }
}

const QUANTITIES: [&str; 12] =
    ["speed", "kappa_beta", "tau_beta", "Tbx", "Tby", "Tbz", "Nbx", "Nby", "Nbz", "Bbx", "Bby", "Bbz"];

/// Compares `value` against `reference` sample by sample. Guard bands of
/// both are skipped. `N` and `B` may differ by a common sign flip.
pub fn compare(value: &dyn Observables, reference: &dyn Observables) -> Result<DiscrepancyReport> {
    let (a, b) = (value.s(), reference.s());
    if a.len() != b.len() {
        return Err(Error::GridMismatch(format!("{} samples vs {}", a.len(), b.len())));
    }
    let scale = a.iter().chain(b).fold(1.0f64, |m, s| m.max(s.abs()));
    if let Some(i) = (0..a.len()).find(|&i| (a[i] - b[i]).abs() > 1e-9 * scale) {
        return Err(Error::GridMismatch(format!("sample {i}: s = {} vs {}", a[i], b[i])));
    }
    let g = value.guard().max(reference.guard());
    let mut series: Vec<Series> = QUANTITIES.iter().map(|_| Series::default()).collect();
    #[allow(clippy::needless_range_loop)]
    for i in g..a.len().saturating_sub(g) {
        let s = a[i];
        let masked = reference.kappa()[i] < MASK_KAPPA;
        series[0].push(s, value.speed()[i], reference.speed()[i]);
        series[1].push(s, value.kappa()[i], reference.kappa()[i]);
        if !masked {
            series[2].push(s, value.tau()[i], reference.tau()[i]);
        }
        let (tv, tr) = (value.tangent()[i], reference.tangent()[i]);
        for k in 0..3 {
            series[3 + k].push(s, tv[k], tr[k]);
        }
        if masked {
            continue;
        }
        let (nv, nr) = (value.normal()[i], reference.normal()[i]);
        let sign = if nv.dot(&nr) < 0.0 { -1.0 } else { 1.0 };
        let (nv, bv, br) = (nv * sign, value.binormal()[i] * sign, reference.binormal()[i]);
        for k in 0..3 {
            series[6 + k].push(s, nv[k], nr[k]);
            series[9 + k].push(s, bv[k], br[k]);
        }
    }
    let entries = series.into_iter().zip(QUANTITIES).map(|(x, q)| x.finish(q)).collect();
    Ok(DiscrepancyReport { entries })
}

pub const INVARIANTS_HEADER: &str =
    "s,s_star,speed,kappa_beta,tau_beta,theta_beta,k1_beta,k2_beta,Tbx,Tby,Tbz,Nbx,Nby,Nbz,Bbx,Bby,Bbz";

pub fn write_invariants_csv<W: Write>(inv: &SmarandacheInvariants, mut out: W) -> io::Result<()> {
    writeln!(out, "{INVARIANTS_HEADER}")?;
    for i in 0..inv.len() {
        let (t, n, b) = (inv.t[i], inv.n[i], inv.b[i]);
        let row = [
            inv.s[i],
            inv.s_star[i],
            inv.speed[i],
            inv.kappa[i],
            inv.tau[i],
            inv.theta[i],
            inv.k1[i],
            inv.k2[i],
            t.x,
            t.y,
            t.z,
            n.x,
            n.y,
            n.z,
            b.x,
            b.y,
            b.z,
        ];
        writeln!(out, "{}", format::row(&row))?;
    }
    Ok(())
}
