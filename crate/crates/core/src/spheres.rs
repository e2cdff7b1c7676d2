//! Curvature and osculating spheres in the Bishop frame `{T, N1, N2}`.
//!
//! A sphere with centre `c = β + δ1 T + δ2 N1 + δ3 N2` and radius `r` meets
//! the curve through `F(s) = |c - β(s)|² - r²`. Second-order contact
//! (`F = F' = F'' = 0`) forces `δ1 = 0` and `k1 δ2 + k2 δ3 = 1`, so the
//! centres of all curvature spheres lie on one line of the normal plane.
//! Third-order contact adds `k1' δ2 + k2' δ3 = 0` and fixes the osculating
//! sphere.
//!
//! Two solvers are provided for the curvature spheres: the closed form
//! [`curvature_centers_paper`], kept exactly as originally published, and
//! [`curvature_centers_derived`], which solves the contact conditions
//! together with `δ2² + δ3² = r²`. The published one does not satisfy the
//! radius condition in general; [`SphereSolution::norm_gap`] measures by
//! how much.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::curve::stencil::{differentiate, differentiate_at, DiffOptions};
use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::frames::BishopData;
use crate::smarandache::K_INTERVALS;
use crate::Vec3;

/// `|k1 k2' - k1' k2|` below this leaves the osculating sphere undefined.
pub const WRONSKIAN_FLOOR: f64 = 1e-9;

/// Curvatures with magnitude below this count as zero divisors.
pub const ZERO_CURVATURE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereSource {
    PaperTheorem,
    DerivedQuadratic,
    Osculating,
}

impl SphereSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SphereSource::PaperTheorem => "paper-theorem",
            SphereSource::DerivedQuadratic => "derived-quadratic",
            SphereSource::Osculating => "osculating",
        }
    }
}

impl fmt::Display for SphereSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SphereSource {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Which root of a two-solution family. `Plus` takes the upper sign of
/// `∓`/`±` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

impl Serialize for Branch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A curve point with its Bishop frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePoint {
    pub position: Vec3,
    pub t: Vec3,
    pub n1: Vec3,
    pub n2: Vec3,
}

impl FramePoint {
    pub fn at(bishop: &BishopData, i: usize) -> Self {
        FramePoint { position: bishop.position[i], t: bishop.t[i], n1: bishop.n1[i], n2: bishop.n2[i] }
    }

    pub fn offset(&self, d: [f64; 3]) -> Vec3 {
        self.position + self.t * d[0] + self.n1 * d[1] + self.n2 * d[2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSolution {
    pub center: Vec3,
    pub radius: f64,
    pub branch: Option<Branch>,
    /// `(δ1, δ2, δ3)` in `{T, N1, N2}`.
    pub deltas: [f64; 3],
    pub source: SphereSource,
    /// Radius before taking the absolute value. Only the osculating sphere
    /// can come out negative.
    pub signed_radius: f64,
}

impl SphereSolution {
    /// `|‖(δ2, δ3)‖ - radius|`, zero for a sphere that passes through the
    /// curve point.
    pub fn norm_gap(&self) -> f64 {
        (self.deltas[1].hypot(self.deltas[2]) - self.radius).abs()
    }

    /// `k1 δ2 + k2 δ3 - 1`, the second-order contact condition.
    pub fn contact_defect(&self, k1: f64, k2: f64) -> f64 {
        k1 * self.deltas[1] + k2 * self.deltas[2] - 1.0
    }
}

fn solution(at: &FramePoint, d2: f64, d3: f64, radius: f64, branch: Option<Branch>, source: SphereSource) -> SphereSolution {
    let deltas = [0.0, d2, d3];
    SphereSolution { center: at.offset(deltas), radius: radius.abs(), branch, deltas, source, signed_radius: radius }
}

/// Published closed form for the two curvature-sphere centres of radius
/// `r`:
///
/// ```text
/// δ2 = (k1 ∓ k2 √(r²(k1² - k2²) - 1)) / (4 k1²)
/// δ3 = (3 k1 ± k2 √(r²(k1² - k2²) - 1)) / (4 k1 k2)
/// ```
pub fn curvature_centers_paper(k1: f64, k2: f64, r: f64, at: &FramePoint) -> Result<[SphereSolution; 2]> {
    if k1.abs() < ZERO_CURVATURE {
        return Err(Error::DivisionByZero("curvature sphere δ2, δ3 (k1 = 0)"));
    }
    if k2.abs() < ZERO_CURVATURE {
        return Err(Error::DivisionByZero("curvature sphere δ3 (k2 = 0)"));
    }
    let disc = r * r * (k1 * k1 - k2 * k2) - 1.0;
    if disc < 0.0 {
        return Err(Error::DiscriminantNegative { discriminant: disc });
    }
    let d = disc.sqrt();
    let make = |b: Branch| {
        let sg = b.sign();
        let d2 = (k1 - sg * k2 * d) / (4.0 * k1 * k1);
        let d3 = (3.0 * k1 + sg * k2 * d) / (4.0 * k1 * k2);
        solution(at, d2, d3, r, Some(b), SphereSource::PaperTheorem)
    };
    Ok([make(Branch::Plus), make(Branch::Minus)])
}

/// Smallest curvature-sphere radius, the distance from the curve point to
/// the centre line.
pub fn min_radius(k1: f64, k2: f64) -> f64 {
    1.0 / k1.hypot(k2)
}

/// Both curvature spheres of radius `r` from `δ1 = 0`, `k1 δ2 + k2 δ3 = 1`
/// and `δ2² + δ3² = r²`.
pub fn curvature_centers_derived(k1: f64, k2: f64, r: f64, at: &FramePoint) -> Result<[SphereSolution; 2]> {
    let kk = k1 * k1 + k2 * k2;
    if !(kk > 0.0) {
        return Err(Error::DegenerateFrame("k1 = k2 = 0: no curvature sphere"));
    }
    let disc = r * r * kk - 1.0;
    if disc < -1e-12 || !(r > 0.0) {
        return Err(Error::SphereTooSmall { radius: r, min_radius: min_radius(k1, k2) });
    }
    let d = disc.max(0.0).sqrt();
    let make = |b: Branch| {
        let sg = b.sign();
        solution(at, (k1 - sg * k2 * d) / kk, (k2 + sg * k1 * d) / kk, r, Some(b), SphereSource::DerivedQuadratic)
    };
    Ok([make(Branch::Plus), make(Branch::Minus)])
}

/// An affine line `point + λ direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub point: Vec3,
    /// Unit vector.
    pub direction: Vec3,
    /// `(δ2, δ3)` of `point` in `{N1, N2}`.
    pub foot: [f64; 2],
}

impl Line {
    pub fn distance(&self, p: &Vec3) -> f64 {
        let v = p - self.point;
        (v - self.direction * v.dot(&self.direction)).norm()
    }
}

/// The line of curvature-sphere centres, `k1 δ2 + k2 δ3 = 1` in the normal
/// plane, based at the point closest to the curve.
pub fn curvature_center_line(k1: f64, k2: f64, at: &FramePoint) -> Result<Line> {
    let kk = k1 * k1 + k2 * k2;
    if !(kk > 0.0) {
        return Err(Error::DegenerateFrame("k1 = k2 = 0: no centre line"));
    }
    let foot = [k1 / kk, k2 / kk];
    let dir = at.n2 * k1 - at.n1 * k2;
    let len = dir.norm();
    if !(len > 0.0) {
        return Err(Error::DegenerateFrame("normal plane vectors vanish"));
    }
    Ok(Line { point: at.offset([0.0, foot[0], foot[1]]), direction: dir / len, foot })
}

/// The osculating sphere: `δ2 = k2'/W`, `δ3 = -k1'/W` with
/// `W = k1 k2' - k1' k2`, radius `√(k1'² + k2'²) / |W|`.
pub fn osculating_sphere(k1: f64, k2: f64, k1p: f64, k2p: f64, at: &FramePoint) -> Result<SphereSolution> {
    let w = k1 * k2p - k1p * k2;
    if !(w.abs() >= WRONSKIAN_FLOOR) {
        return Err(Error::OsculatingUndefined { wronskian: w.abs(), threshold: WRONSKIAN_FLOOR });
    }
    let radius = k1p.hypot(k2p) / w;
    Ok(solution(at, k2p / w, -k1p / w, radius, None, SphereSource::Osculating))
}

/// `F, F', F'', F'''` of `F(s) = |c - β(s)|² - r²` at sample `index` of a
/// unit-speed curve, by numeric differentiation along its grid.
pub fn contact_residuals(center: &Vec3, radius: f64, curve: &SampledCurve, index: usize) -> Result<[f64; 4]> {
    let n = curve.len();
    let opts = DiffOptions::resolved(n);
    let g = opts.guard_band();
    if index < g || index + g >= n {
        return Err(Error::IndexOutOfRange { index, lo: g, hi: n.saturating_sub(g) });
    }
    let f: Vec<f64> = curve.points.iter().map(|p| (center - p).norm_squared() - radius * radius).collect();
    let h = curve.param_step;
    Ok([
        f[index],
        differentiate_at(&f, h, 1, opts, index)?,
        differentiate_at(&f, h, 2, opts, index)?,
        differentiate_at(&f, h, 3, opts, index)?,
    ])
}

/// Natural curvatures and their derivatives at one sample, plus the frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereInput {
    pub index: usize,
    pub s: f64,
    pub k1: f64,
    pub k2: f64,
    pub k1p: f64,
    pub k2p: f64,
    pub frame: FramePoint,
}

/// Range of sample indices where both the `k` derivatives and the contact
/// residuals use centred stencils.
pub fn usable_range(bishop: &BishopData) -> (usize, usize) {
    let m = bishop.len();
    let g = DiffOptions::spread(m, K_INTERVALS).guard_band().max(DiffOptions::resolved(m).guard_band());
    (g, m.saturating_sub(g))
}

/// Index of the sample nearest to arc length `s`.
pub fn index_of_s(bishop: &BishopData, s: f64) -> Result<usize> {
    let (lo, hi) = (bishop.s[0], bishop.s[bishop.len() - 1]);
    if !(s >= lo && s <= hi) {
        return Err(Error::OutOfDomain { s, lo, hi });
    }
    Ok((((s - lo) / bishop.step()).round() as usize).min(bishop.len() - 1))
}

pub fn sphere_input(bishop: &BishopData, index: usize) -> Result<SphereInput> {
    let (lo, hi) = usable_range(bishop);
    if index < lo || index >= hi {
        return Err(Error::IndexOutOfRange { index, lo, hi });
    }
    let opts = DiffOptions::spread(bishop.len(), K_INTERVALS);
    let h = bishop.step();
    Ok(SphereInput {
        index,
        s: bishop.s[index],
        k1: bishop.k1[index],
        k2: bishop.k2[index],
        k1p: differentiate_at(&bishop.k1, h, 1, opts, index)?,
        k2p: differentiate_at(&bishop.k2, h, 1, opts, index)?,
        frame: FramePoint::at(bishop, index),
    })
}

/// `k1'` and `k2'` at every sample of `bishop`.
pub fn curvature_derivatives(bishop: &BishopData) -> Result<(Vec<f64>, Vec<f64>)> {
    let opts = DiffOptions::spread(bishop.len(), K_INTERVALS);
    let h = bishop.step();
    Ok((differentiate(&bishop.k1, h, 1, opts)?, differentiate(&bishop.k2, h, 1, opts)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorRecord {
    fn from(e: &Error) -> Self {
        ErrorRecord { kind: e.name(), message: e.to_string() }
    }
}

/// One line of the sphere report. Failed solvers produce an entry with only
/// `s_star`, `source` and `error` set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereEntry {
    pub s_star: f64,
    pub source: SphereSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed_radius: Option<f64>,
    /// `|‖(δ2, δ3)‖ - r|`, reported for the published closed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl SphereEntry {
    fn failed(s_star: f64, source: SphereSource, e: &Error) -> Self {
        SphereEntry {
            s_star,
            source,
            branch: None,
            center: None,
            radius: None,
            residuals: None,
            deltas: None,
            signed_radius: None,
            norm_gap: None,
            error: Some(e.into()),
        }
    }
}

/// All sphere solutions at one sample, with the first hard failure of the
/// derived or osculating solvers. Failures of the published closed form are
/// recorded in its entries only.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereReport {
    pub input: SphereInput,
    pub radius: f64,
    pub entries: Vec<SphereEntry>,
    pub failure: Option<Error>,
}

/// Evaluates every solver at sample `index` of `bishop`. `radius` is the
/// curvature-sphere radius; `None` picks twice the minimum.
pub fn evaluate(bishop: &BishopData, index: usize, radius: Option<f64>) -> Result<SphereReport> {
    let input = sphere_input(bishop, index)?;
    let curve = bishop.curve()?;
    let SphereInput { k1, k2, k1p, k2p, frame, s, .. } = input;
    let r = radius.unwrap_or_else(|| 2.0 * min_radius(k1, k2));
    let mut entries = Vec::new();
    let mut failure = None;
    let record = |sol: &SphereSolution, entries: &mut Vec<SphereEntry>| -> Result<()> {
        let residuals = contact_residuals(&sol.center, sol.radius, &curve, index)?;
        entries.push(SphereEntry {
            s_star: s,
            source: sol.source,
            branch: sol.branch,
            center: Some(sol.center.into()),
            radius: Some(sol.radius),
            residuals: Some(residuals),
            deltas: Some(sol.deltas),
            signed_radius: Some(sol.signed_radius),
            norm_gap: (sol.source == SphereSource::PaperTheorem).then(|| sol.norm_gap()),
            error: None,
        });
        Ok(())
    };
    match curvature_centers_paper(k1, k2, r, &frame) {
        Ok(sols) => sols.iter().try_for_each(|x| record(x, &mut entries))?,
        Err(e) => entries.push(SphereEntry::failed(s, SphereSource::PaperTheorem, &e)),
    }
    match curvature_centers_derived(k1, k2, r, &frame) {
        Ok(sols) => sols.iter().try_for_each(|x| record(x, &mut entries))?,
        Err(e) => {
            entries.push(SphereEntry::failed(s, SphereSource::DerivedQuadratic, &e));
            failure.get_or_insert(e);
        }
    }
    match osculating_sphere(k1, k2, k1p, k2p, &frame) {
        Ok(sol) => record(&sol, &mut entries)?,
        Err(e) => {
            entries.push(SphereEntry::failed(s, SphereSource::Osculating, &e));
            failure.get_or_insert(e);
        }
    }
    Ok(SphereReport { input, radius: r, entries, failure })
}
