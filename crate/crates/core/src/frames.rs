//! Frenet and Bishop (parallel transport) frames of unit-speed curves.
//!
//! The Bishop frame `{T, N1, N2}` is related to Frenet's `{T, N, B}` by a
//! rotation of the normal plane through `θ`:
//!
//! ```text
//! N1 = N cos θ - B sin θ,    N2 = N sin θ + B cos θ,
//! k1 = κ cos θ,              k2 = κ sin θ,
//! ```
//!
//! and the frame satisfies `T' = k1 N1 + k2 N2`, `N1' = -k1 T`,
//! `N2' = -k2 T`. With the rotation written this way `N1` is parallel along
//! the curve exactly when `dθ/ds = τ`, which is the sign used throughout.

use std::f64::consts::PI;
use std::io::{self, Write};

use crate::curve::stencil::{differentiate, fornberg, DiffOptions};
use crate::curve::{derivatives_with, max_speed_deviation, SampledCurve, UNIT_SPEED_TOL};
use crate::error::{Error, Result};
use crate::{exec, format, Vec3};

/// Curvature below which the principal normal is considered undefined.
pub const KAPPA_FLOOR: f64 = 1e-7;

/// Frenet apparatus on the retained (guard-trimmed) samples.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetData {
    pub s: Vec<f64>,
    pub position: Vec<Vec3>,
    pub t: Vec<Vec3>,
    pub n: Vec<Vec3>,
    pub b: Vec<Vec3>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

impl FrenetData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn step(&self) -> f64 {
        grid_step(&self.s)
    }
}

fn grid_step(s: &[f64]) -> f64 {
    (s[s.len() - 1] - s[0]) / (s.len() - 1) as f64
}

/// Bishop apparatus. `kappa` and `tau` are carried along from the Frenet
/// data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct BishopData {
    pub s: Vec<f64>,
    pub position: Vec<Vec3>,
    pub t: Vec<Vec3>,
    pub n1: Vec<Vec3>,
    pub n2: Vec<Vec3>,
    pub k1: Vec<f64>,
    pub k2: Vec<f64>,
    pub theta: Vec<f64>,
    pub theta0: f64,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

impl BishopData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn step(&self) -> f64 {
        grid_step(&self.s)
    }

    /// The retained positions as a unit-speed curve on the same grid.
    pub fn curve(&self) -> Result<SampledCurve> {
        SampledCurve::from_points(self.s[0], self.step(), self.position.clone(), true)
    }
}

/// Frenet frame with stencils spread according to [`DiffOptions::frames`].
/// Wider spacing keeps roundoff in `κ` small enough that its own numeric
/// derivatives stay usable downstream.
pub fn frenet_frame(curve: &SampledCurve, kappa_floor: f64) -> Result<FrenetData> {
    frenet_frame_with(curve, kappa_floor, DiffOptions::frames(curve.len()))
}

/// Frenet frame from numeric derivatives with the given stencil spacing.
/// The guard band of `opts` is trimmed from both ends.
pub fn frenet_frame_with(curve: &SampledCurve, kappa_floor: f64, opts: DiffOptions) -> Result<FrenetData> {
    if !curve.unit_speed {
        let dev = max_speed_deviation(curve)?;
        if !(dev <= UNIT_SPEED_TOL) {
            return Err(Error::NotUnitSpeed { max_deviation: dev, tolerance: UNIT_SPEED_TOL });
        }
    }
    let d = derivatives_with(curve, 3, opts)?;
    let g = d.guard_band;
    let m = curve.len() - 2 * g;
    let rows = exec::try_map_indices(m, |j| {
        let i = j + g;
        let (d1, d2, d3) = (d.first[i], d.second[i], d.third[i]);
        let c = d1.cross(&d2);
        let speed = d1.norm();
        let cn = c.norm();
        let kappa = cn / (speed * speed * speed);
        if !(kappa >= kappa_floor) {
            return Err(Error::VanishingCurvature { s: curve.param(i), kappa, floor: kappa_floor });
        }
        let t = d1 / speed;
        let b = c / cn;
        let n = b.cross(&t);
        Ok((t, n, b, kappa, c.dot(&d3) / (cn * cn)))
    })?;
    let mut f = FrenetData {
        s: (g..g + m).map(|i| curve.param(i)).collect(),
        position: curve.points[g..g + m].to_vec(),
        t: Vec::with_capacity(m),
        n: Vec::with_capacity(m),
        b: Vec::with_capacity(m),
        kappa: Vec::with_capacity(m),
        tau: Vec::with_capacity(m),
    };
    for (t, n, b, k, tau) in rows {
        f.t.push(t);
        f.n.push(n);
        f.b.push(b);
        f.kappa.push(k);
        f.tau.push(tau);
    }
    Ok(f)
}

/// How the rotation angle `θ` between the Frenet and Bishop normals is
/// obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BishopMethod {
    /// Transport `N1` along the sampled polyline by double reflection and
    /// read `θ` off the transported vector.
    #[default]
    ParallelTransport,
    /// `θ = θ0 + ∫ τ ds` by the trapezoid rule on the numeric torsion.
    TorsionIntegral,
}

fn wrap_pi(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y <= -PI {
        y + 2.0 * PI
    } else {
        y
    }
}

/// Unwraps a sequence of angles so consecutive values differ by at most π.
pub fn unwrap_angles(raw: impl IntoIterator<Item = f64>, first: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut prev = first;
    for (i, a) in raw.into_iter().enumerate() {
        let v = if i == 0 { first + wrap_pi(a - first) } else { prev + wrap_pi(a - prev) };
        out.push(v);
        prev = v;
    }
    out
}

fn transported_angles(f: &FrenetData, theta0: f64) -> Vec<f64> {
    let m = f.len();
    let mut theta = Vec::with_capacity(m);
    theta.push(theta0);
    let mut r = f.n[0] * theta0.cos() - f.b[0] * theta0.sin();
    let mut prev = theta0;
    for i in 0..m - 1 {
        let v1 = f.position[i + 1] - f.position[i];
        let c1 = v1.norm_squared();
        let (r_l, t_l) = if c1 > 0.0 {
            (r - v1 * (2.0 / c1 * v1.dot(&r)), f.t[i] - v1 * (2.0 / c1 * v1.dot(&f.t[i])))
        } else {
            (r, f.t[i])
        };
        let v2 = f.t[i + 1] - t_l;
        let c2 = v2.norm_squared();
        let mut next = if c2 > 0.0 { r_l - v2 * (2.0 / c2 * v2.dot(&r_l)) } else { r_l };
        let ti = f.t[i + 1];
        next -= ti * ti.dot(&next);
        r = next.normalize();
        let raw = (-r.dot(&f.b[i + 1])).atan2(r.dot(&f.n[i + 1]));
        prev += wrap_pi(raw - prev);
        theta.push(prev);
    }
    theta
}

fn integrated_angles(f: &FrenetData, theta0: f64) -> Vec<f64> {
    let h = f.step();
    let mut theta = Vec::with_capacity(f.len());
    let mut acc = theta0;
    theta.push(acc);
    for w in f.tau.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        theta.push(acc);
    }
    theta
}

pub fn bishop_from_frenet(frenet: &FrenetData, theta0: f64) -> BishopData {
    bishop_from_frenet_with(frenet, theta0, BishopMethod::default())
}

pub fn bishop_from_frenet_with(frenet: &FrenetData, theta0: f64, method: BishopMethod) -> BishopData {
    let theta = match method {
        BishopMethod::ParallelTransport => transported_angles(frenet, theta0),
        BishopMethod::TorsionIntegral => integrated_angles(frenet, theta0),
    };
    let rows = exec::map_indices(frenet.len(), |i| {
        let (s, c) = theta[i].sin_cos();
        let (n, b, k) = (frenet.n[i], frenet.b[i], frenet.kappa[i]);
        (n * c - b * s, n * s + b * c, k * c, k * s)
    });
    let mut out = BishopData {
        s: frenet.s.clone(),
        position: frenet.position.clone(),
        t: frenet.t.clone(),
        n1: Vec::with_capacity(rows.len()),
        n2: Vec::with_capacity(rows.len()),
        k1: Vec::with_capacity(rows.len()),
        k2: Vec::with_capacity(rows.len()),
        theta,
        theta0,
        kappa: frenet.kappa.clone(),
        tau: frenet.tau.clone(),
    };
    for (n1, n2, k1, k2) in rows {
        out.n1.push(n1);
        out.n2.push(n2);
        out.k1.push(k1);
        out.k2.push(k2);
    }
    out
}

/// Recovers the Frenet frame from Bishop data: `κ = |(k1, k2)|`,
/// `θ = atan2(k2, k1)` (unwrapped) and `τ = dθ/ds` numerically.
pub fn frenet_from_bishop(bishop: &BishopData) -> Result<FrenetData> {
    let m = bishop.len();
    let kappa: Vec<f64> = (0..m).map(|i| bishop.k1[i].hypot(bishop.k2[i])).collect();
    if let Some(i) = kappa.iter().position(|&k| !(k >= KAPPA_FLOOR)) {
        return Err(Error::VanishingCurvature { s: bishop.s[i], kappa: kappa[i], floor: KAPPA_FLOOR });
    }
    let raw = (0..m).map(|i| bishop.k2[i].atan2(bishop.k1[i]));
    let theta = unwrap_angles(raw, bishop.k2[0].atan2(bishop.k1[0]));
    let tau = differentiate(&theta, bishop.step(), 1, DiffOptions::resolved(m))?;
    let frames = exec::map_indices(m, |i| {
        let (s, c) = theta[i].sin_cos();
        (bishop.n1[i] * c + bishop.n2[i] * s, bishop.n2[i] * c - bishop.n1[i] * s)
    });
    let (n, b) = frames.into_iter().unzip();
    Ok(FrenetData { s: bishop.s.clone(), position: bishop.position.clone(), t: bishop.t.clone(), n, b, kappa, tau })
}

type Frame = [Vec3; 3];

fn frame_rate(f: &Frame, k1: f64, k2: f64) -> Frame {
    [f[1] * k1 + f[2] * k2, f[0] * -k1, f[0] * -k2]
}

fn axpy(f: &Frame, d: &Frame, h: f64) -> Frame {
    [f[0] + d[0] * h, f[1] + d[1] * h, f[2] + d[2] * h]
}

// natural curvatures halfway between samples i and i+1, cubic interpolation
fn midpoint(v: &[f64], i: usize) -> f64 {
    let start = i.saturating_sub(1).min(v.len() - 4);
    let x: Vec<f64> = (start..start + 4).map(|j| j as f64).collect();
    let w = fornberg(&x, i as f64 + 0.5, 0);
    (0..4).map(|j| w[0][j] * v[start + j]).sum()
}

/// Worst-case frame residuals over all samples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrameIntegrity {
    /// Largest `| |e| - 1 |` or `|<e, f>|` over the frame vectors.
    pub orthonormality: f64,
    /// Largest `|T - N1 × N2|`.
    pub handedness: f64,
    /// Largest `|k1² + k2² - κ²| / κ²`.
    pub curvature: f64,
}

pub fn integrity(b: &BishopData) -> FrameIntegrity {
    let rows = exec::map_indices(b.len(), |i| {
        let (t, n1, n2) = (b.t[i], b.n1[i], b.n2[i]);
        let ortho = [t.norm() - 1.0, n1.norm() - 1.0, n2.norm() - 1.0, t.dot(&n1), t.dot(&n2), n1.dot(&n2)]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let k2 = b.kappa[i] * b.kappa[i];
        let curv = (b.k1[i] * b.k1[i] + b.k2[i] * b.k2[i] - k2).abs() / k2;
        (ortho, (t - n1.cross(&n2)).norm(), curv)
    });
    rows.into_iter().fold(FrameIntegrity::default(), |acc, (o, h, c)| FrameIntegrity {
        orthonormality: acc.orthonormality.max(o),
        handedness: acc.handedness.max(h),
        curvature: acc.curvature.max(c),
    })
}

/// Integrates the Bishop frame equations with classical RK4 from the first
/// stored frame and returns the largest deviation from the stored `T`,
/// `N1` and `N2`.
pub fn transport_residual(bishop: &BishopData) -> [f64; 3] {
    let m = bishop.len();
    let h = bishop.step();
    let mut f: Frame = [bishop.t[0], bishop.n1[0], bishop.n2[0]];
    let mut worst = [0.0f64; 3];
    for i in 0..m - 1 {
        let (a1, a2) = (bishop.k1[i], bishop.k2[i]);
        let (m1, m2) = if m >= 4 { (midpoint(&bishop.k1, i), midpoint(&bishop.k2, i)) } else { (a1, a2) };
        let (b1, b2) = (bishop.k1[i + 1], bishop.k2[i + 1]);
        let r1 = frame_rate(&f, a1, a2);
        let r2 = frame_rate(&axpy(&f, &r1, h / 2.0), m1, m2);
        let r3 = frame_rate(&axpy(&f, &r2, h / 2.0), m1, m2);
        let r4 = frame_rate(&axpy(&f, &r3, h), b1, b2);
        for k in 0..3 {
            f[k] += (r1[k] + r2[k] * 2.0 + r3[k] * 2.0 + r4[k]) * (h / 6.0);
        }
        let stored = [bishop.t[i + 1], bishop.n1[i + 1], bishop.n2[i + 1]];
        for k in 0..3 {
            worst[k] = worst[k].max((f[k] - stored[k]).norm());
        }
    }
    worst
}

pub const FRAMES_HEADER: &str = "s,x,y,z,Tx,Ty,Tz,N1x,N1y,N1z,N2x,N2y,N2z,k1,k2,kappa,tau,theta";

pub fn write_frames_csv<W: Write>(b: &BishopData, mut out: W) -> io::Result<()> {
    writeln!(out, "{FRAMES_HEADER}")?;
    for i in 0..b.len() {
        let (p, t, n1, n2) = (b.position[i], b.t[i], b.n1[i], b.n2[i]);
        let row = [
            b.s[i], p.x, p.y, p.z, t.x, t.y, t.z, n1.x, n1.y, n1.z, n2.x, n2.y, n2.z, b.k1[i], b.k2[i], b.kappa[i],
            b.tau[i], b.theta[i],
        ];
        writeln!(out, "{}", format::row(&row))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{Circle, Helix};
    use crate::curve::{arc_length_reparam, sample_curve};
    use approx::assert_relative_eq;

    fn unit_circle(n: usize) -> SampledCurve {
        let c = Circle::new(1.0).unwrap();
        arc_length_reparam(&sample_curve(|t| c.point(t), (0.0, 2.0 * PI), n).unwrap(), n).unwrap()
    }

    fn helix(n: usize) -> SampledCurve {
        let h = Helix::new(1.0, 1.0).unwrap();
        arc_length_reparam(&sample_curve(|t| h.point(t), (0.0, 2.0 * PI), n).unwrap(), n).unwrap()
    }

    #[test]
    fn circle_frenet() {
        let f = frenet_frame(&unit_circle(2048), KAPPA_FLOOR).unwrap();
        for i in 0..f.len() {
            assert!((f.kappa[i] - 1.0).abs() < 1e-8);
            assert!(f.tau[i].abs() < 1e-8);
            // principal normal points at the centre
            assert!((f.n[i] + f.position[i]).norm() < 1e-8);
        }
    }

    #[test]
    fn helix_frenet() {
        let f = frenet_frame(&helix(2048), KAPPA_FLOOR).unwrap();
        for i in 0..f.len() {
            assert!((f.kappa[i] - 0.5).abs() < 1e-7);
            assert!((f.tau[i] - 0.5).abs() < 1e-7);
        }
    }

    #[test]
    fn straight_line_has_no_frenet_frame() {
        let mut c = sample_curve(|s| Vec3::new(s, 2.0 * s, 2.0 * s) / 3.0, (0.0, 1.0), 64).unwrap();
        c.unit_speed = true;
        assert!(matches!(frenet_frame(&c, KAPPA_FLOOR), Err(Error::VanishingCurvature { .. })));
    }

    #[test]
    fn circle_bishop_equals_frenet() {
        let f = frenet_frame(&unit_circle(2048), KAPPA_FLOOR).unwrap();
        let b = bishop_from_frenet(&f, 0.0);
        for i in 0..b.len() {
            assert!(b.theta[i].abs() < 1e-8);
            assert!((b.k1[i] - 1.0).abs() < 1e-8 && b.k2[i].abs() < 1e-8);
            assert!((b.n1[i] - f.n[i]).norm() < 1e-8 && (b.n2[i] - f.b[i]).norm() < 1e-8);
        }
        let q = bishop_from_frenet(&f, PI / 2.0);
        assert_eq!(q.theta[0], PI / 2.0);
        assert!((q.k1[10]).abs() < 1e-8 && (q.k2[10] - 1.0).abs() < 1e-8);
        assert!((q.n1[10] + f.b[10]).norm() < 1e-8 && (q.n2[10] - f.n[10]).norm() < 1e-8);
    }

    #[test]
    fn helix_angle_grows_with_torsion() {
        let f = frenet_frame(&helix(2048), KAPPA_FLOOR).unwrap();
        let b = bishop_from_frenet(&f, 0.0);
        let s0 = b.s[0];
        let i = b.s.iter().position(|&s| s - s0 >= PI).unwrap();
        let want = 0.5 * (b.s[i] - s0);
        assert!((b.theta[i] - want).abs() < 1e-6);
        let torsion = bishop_from_frenet_with(&f, 0.0, BishopMethod::TorsionIntegral);
        assert!((torsion.theta[i] - want).abs() < 1e-6);
    }

    #[test]
    fn round_trip_through_bishop() {
        let f = frenet_frame(&helix(2048), KAPPA_FLOOR).unwrap();
        let back = frenet_from_bishop(&bishop_from_frenet(&f, 0.4)).unwrap();
        for i in 0..f.len() {
            assert_relative_eq!(back.kappa[i], f.kappa[i], epsilon = 1e-6);
            assert!((back.tau[i] - f.tau[i]).abs() < 1e-6, "{i}");
            assert!((back.n[i] - f.n[i]).norm() < 1e-6 && (back.b[i] - f.b[i]).norm() < 1e-6);
        }
    }

    #[test]
    fn constant_natural_curvatures() {
        let mut b = bishop_from_frenet(&frenet_frame(&unit_circle(256), KAPPA_FLOOR).unwrap(), 0.0);
        b.k1.iter_mut().for_each(|k| *k = 1.0);
        b.k2.iter_mut().for_each(|k| *k = 0.0);
        let f = frenet_from_bishop(&b).unwrap();
        assert!(f.kappa.iter().all(|&k| k == 1.0));
        assert!(f.tau.iter().all(|&t| t == 0.0));
        b.k1.iter_mut().for_each(|k| *k = 0.0);
        assert!(matches!(frenet_from_bishop(&b), Err(Error::VanishingCurvature { .. })));
    }

    #[test]
    fn transport_residuals_are_small() {
        let b = bishop_from_frenet(&frenet_frame(&unit_circle(2048), KAPPA_FLOOR).unwrap(), 0.0);
        assert!(transport_residual(&b).iter().all(|&r| r < 1e-8), "{:?}", transport_residual(&b));
        let b = bishop_from_frenet(&frenet_frame(&helix(2048), KAPPA_FLOOR).unwrap(), 0.0);
        assert!(transport_residual(&b).iter().all(|&r| r < 1e-6), "{:?}", transport_residual(&b));
    }

    #[test]
    fn unwrap_keeps_continuity() {
        let raw = [3.0, -3.0, -2.9, 3.1];
        let u = unwrap_angles(raw, 3.0);
        assert!(u.windows(2).all(|w| (w[1] - w[0]).abs() < PI));
        assert_eq!(u[0], 3.0);
    }

    #[test]
    fn csv_has_one_row_per_sample() {
        let b = bishop_from_frenet(&frenet_frame(&unit_circle(64), KAPPA_FLOOR).unwrap(), 0.0);
        let mut buf = Vec::new();
        write_frames_csv(&b, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(FRAMES_HEADER));
        assert_eq!(lines.clone().count(), b.len());
        assert!(lines.all(|l| l.split(',').count() == 18 && !l.ends_with(',')));
    }
}
