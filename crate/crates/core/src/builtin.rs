//! Ready-made test curves: the Salkowski family, circles and helices.

use crate::curve::{max_speed_deviation, sample_curve, SampledCurve, UNIT_SPEED_TOL};
use crate::error::{Error, Result};
use crate::Vec3;

/// `|1 - 2n|` below this makes the Salkowski coefficients blow up.
pub const DEGENERACY_TOL: f64 = 1e-6;

/// Fraction of the admissible arc-length interval used by default.
pub const DEFAULT_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SalkowskiParams {
    pub m: f64,
    pub n: f64,
}

impl SalkowskiParams {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::NonpositiveParameter { name: "m", value: m });
        }
        let n = m / (1.0 + m * m).sqrt();
        if (1.0 - 2.0 * n).abs() < DEGENERACY_TOL {
            return Err(Error::ParamDegenerate { m, n });
        }
        Ok(SalkowskiParams { m, n })
    }

    fn root(&self) -> f64 {
        (1.0 + self.m * self.m).sqrt()
    }

    /// The arc-length interval on which `t(s)` is defined, `|s| <= 1/m`.
    pub fn s_domain(&self) -> (f64, f64) {
        let h = 1.0 / (self.n * self.root());
        (-h, h)
    }

    /// `fraction` of [`Self::s_domain`], centred on `s = 0`.
    pub fn working_domain(&self, fraction: f64) -> (f64, f64) {
        let (lo, hi) = self.s_domain();
        (fraction * lo, fraction * hi)
    }

    /// Parameter interval matching [`Self::working_domain`].
    pub fn working_t_range(&self, fraction: f64) -> (f64, f64) {
        let h = fraction.asin() / self.n;
        (-h, h)
    }
}

pub fn salkowski_point(p: &SalkowskiParams, t: f64) -> Vec3 {
    let n = p.n;
    let k = 1.0 / p.root();
    let (a, b) = ((1.0 - n) / (4.0 * (1.0 + 2.0 * n)), (1.0 + n) / (4.0 * (1.0 - 2.0 * n)));
    let (u, v) = ((1.0 + 2.0 * n) * t, (1.0 - 2.0 * n) * t);
    Vec3::new(
        k * (-a * u.sin() - b * v.sin() - 0.5 * t.sin()),
        k * (a * u.cos() + b * v.cos() + 0.5 * t.cos()),
        (2.0 * n * t).cos() / (4.0 * p.m * p.root()),
    )
}

/// Parameter value at arc length `s`, measured from `t = 0`.
pub fn salkowski_t_of_s(p: &SalkowskiParams, s: f64) -> Result<f64> {
    let x = p.n * p.root() * s;
    if !(x.abs() <= 1.0) {
        let (lo, hi) = p.s_domain();
        return Err(Error::OutOfDomain { s, lo, hi });
    }
    Ok(x.asin() / p.n)
}

/// Salkowski curve sampled directly on a uniform arc-length grid covering
/// `fraction` of its domain.
pub fn salkowski_unit_speed(p: &SalkowskiParams, samples: usize, fraction: f64) -> Result<SampledCurve> {
    let range = p.working_domain(fraction);
    let mut c = sample_curve(|s| salkowski_point(p, salkowski_t_of_s(p, s).unwrap_or(f64::NAN)), range, samples)?;
    let dev = max_speed_deviation(&c)?;
    if !(dev <= UNIT_SPEED_TOL) {
        return Err(Error::NotUnitSpeed { max_deviation: dev, tolerance: UNIT_SPEED_TOL });
    }
    c.unit_speed = true;
    Ok(c)
}

/// `(R cos t, R sin t, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub r: f64,
}

impl Circle {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::NonpositiveParameter { name: "R", value: r });
        }
        Ok(Circle { r })
    }

    pub fn point(&self, t: f64) -> Vec3 {
        Vec3::new(self.r * t.cos(), self.r * t.sin(), 0.0)
    }
}

/// `(a cos t, a sin t, b t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Helix {
    pub a: f64,
    pub b: f64,
}

impl Helix {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::NonpositiveParameter { name: "a", value: a });
        }
        if !b.is_finite() {
            return Err(Error::NonpositiveParameter { name: "b", value: b });
        }
        Ok(Helix { a, b })
    }

    pub fn point(&self, t: f64) -> Vec3 {
        Vec3::new(self.a * t.cos(), self.a * t.sin(), self.b * t)
    }

    pub fn curvature(&self) -> f64 {
        self.a / (self.a * self.a + self.b * self.b)
    }

    pub fn torsion(&self) -> f64 {
        self.b / (self.a * self.a + self.b * self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{arc_length_reparam, arc_length_table};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn sqrt3() -> SalkowskiParams {
        SalkowskiParams::new(3f64.sqrt()).unwrap()
    }

    #[test]
    fn salkowski_at_zero() {
        let p = sqrt3();
        assert_relative_eq!(p.n * p.n * (1.0 + p.m * p.m), p.m * p.m, epsilon = 1e-12);
        let a = salkowski_point(&p, 0.0);
        let n = p.n;
        let a2 = 0.5 * ((1.0 - n) / (4.0 * (1.0 + 2.0 * n)) + (1.0 + n) / (4.0 * (1.0 - 2.0 * n)) + 0.5);
        assert_eq!(a.x, 0.0);
        assert_relative_eq!(a.y, a2, epsilon = 1e-15);
        assert_relative_eq!(a.z, 1.0 / (8.0 * 3f64.sqrt()), epsilon = 1e-15);
        assert_relative_eq!(a.z, 0.0721688, epsilon = 1e-7);
    }

    #[test]
    fn third_coordinate_period() {
        let p = sqrt3();
        for t in [-1.0, 0.3, 2.0] {
            let a = salkowski_point(&p, t).z;
            let b = salkowski_point(&p, t + PI / p.n).z;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_and_invalid_params() {
        assert!(matches!(SalkowskiParams::new(1.0 / 3f64.sqrt()), Err(Error::ParamDegenerate { .. })));
        assert!(matches!(SalkowskiParams::new(0.57735), Err(Error::ParamDegenerate { .. })));
        assert!(matches!(SalkowskiParams::new(-1.0), Err(Error::NonpositiveParameter { .. })));
        assert!(matches!(Circle::new(0.0), Err(Error::NonpositiveParameter { .. })));
        assert!(matches!(Helix::new(-1.0, 1.0), Err(Error::NonpositiveParameter { .. })));
    }

    #[test]
    fn t_of_s() {
        let p = sqrt3();
        assert_eq!(salkowski_t_of_s(&p, 0.0).unwrap(), 0.0);
        let t = salkowski_t_of_s(&p, 1.0 / (2.0 * 3f64.sqrt())).unwrap();
        assert_relative_eq!(t, PI / (3.0 * 3f64.sqrt()), epsilon = 1e-14);
        assert!(matches!(salkowski_t_of_s(&p, 1.0), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn arc_length_matches_substitution() {
        let p = sqrt3();
        let c = sample_curve(|t| salkowski_point(&p, t), (-1.2, 1.2), 4096).unwrap();
        let table = arc_length_table(&c).unwrap();
        let s = |t: f64| (p.n * t).sin() / (p.n * p.root());
        for (i, v) in table.iter().enumerate() {
            let exact = s(c.param(i)) - s(-1.2);
            assert!((v - exact).abs() < 1e-6, "{i}: {v} vs {exact}");
        }
    }

    #[test]
    fn unit_speed_sampling() {
        let p = sqrt3();
        let c = salkowski_unit_speed(&p, 4096, DEFAULT_FRACTION).unwrap();
        assert!(c.unit_speed);
        assert_relative_eq!(c.param_start, -0.9 / p.m, epsilon = 1e-14);
    }

    #[test]
    fn circle_length() {
        let c = Circle::new(2.0).unwrap();
        let sc = sample_curve(|t| c.point(t), (0.0, 2.0 * PI), 2048).unwrap();
        let u = arc_length_reparam(&sc, 2048).unwrap();
        assert_relative_eq!(u.param_end(), 4.0 * PI, epsilon = 1e-6);
    }
}
