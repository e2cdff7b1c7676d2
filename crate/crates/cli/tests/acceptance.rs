//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::process::Command;

use smarandache_core::builtin::{salkowski_unit_speed, Circle, Helix, SalkowskiParams, DEFAULT_FRACTION};
use smarandache_core::curve::{sample_curve, SampledCurve};
use smarandache_core::expr::{parse, parse_curve};
use smarandache_core::frames::{frenet_frame, integrity, transport_residual, BishopData, KAPPA_FLOOR};
use smarandache_core::pipeline::{bishop, run_kind, to_unit_speed};
use smarandache_core::smarandache::{construct, oracle_invariants, InvariantOptions, SmarandacheKind};
use smarandache_core::spheres::{
    contact_residuals, curvature_center_line, curvature_centers_derived, curvature_centers_paper, min_radius,
    osculating_sphere, sphere_input, usable_range, FramePoint,
};
use smarandache_core::{Error, Vec3};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn circle() -> SampledCurve {
    let c = Circle::new(1.0).unwrap();
    to_unit_speed(sample_curve(|t| c.point(t), (0.0, TAU), 2048).unwrap(), 2048).unwrap()
}

/// helix(1,1) over a range where `N1N2` stays regular at `θ0 = 0`.
fn helix(range: (f64, f64)) -> SampledCurve {
    let h = Helix::new(1.0, 1.0).unwrap();
    to_unit_speed(sample_curve(|t| h.point(t), range, 4096).unwrap(), 4096).unwrap()
}

fn salkowski() -> SampledCurve {
    salkowski_unit_speed(&SalkowskiParams::new(3f64.sqrt()).unwrap(), 4096, DEFAULT_FRACTION).unwrap()
}

fn tested_curves() -> Vec<(&'static str, SampledCurve)> {
    vec![("circle", circle()), ("helix", helix((0.0, 3.0))), ("salkowski", salkowski())]
}

fn err(e: Error) -> String {
    format!("{}: {e}", e.name())
}

fn circle_suite() -> Outcome {
    let b = bishop(&circle(), 0.0).map_err(err)?;
    let want = [1.0, SQRT_2, SQRT_2, 6f64.sqrt() / 2.0];
    let mut worst = 0.0f64;
    for (kind, kappa) in SmarandacheKind::ALL.into_iter().zip(want) {
        let run = run_kind(kind, &b, InvariantOptions::default()).map_err(err)?;
        let g = run.closed.guard;
        for i in g..b.len() - g {
            let e = (run.closed.kappa[i] - kappa).abs().max(run.closed.tau[i].abs());
            worst = worst.max(e);
            ensure(e < 1e-6, || format!("{kind} closed form off by {e:e} at s = {}", b.s[i]))?;
        }
        let o = &run.oracle;
        for i in o.guard..o.s.len() - o.guard {
            let e = (o.kappa[i] - kappa).abs().max(o.tau[i].abs());
            worst = worst.max(e);
            ensure(e < 1e-6, || format!("{kind} oracle off by {e:e} at s = {}", o.s[i]))?;
        }
    }
    Ok(format!("max error {worst:.2e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut tau_records = 0;
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for (name, curve) in [("helix", helix((0.0, 3.0))), ("salkowski", salkowski())] {
        let b = bishop(&curve, 0.0).map_err(err)?;
        for kind in SmarandacheKind::ALL {
            let r = run_kind(kind, &b, InvariantOptions::default()).map_err(err)?.report;
            let speed = r.get("speed").unwrap().max_rel;
            let kappa = r.get("kappa_beta").unwrap().max_rel;
            let tb = r.max_abs_vector("Tb");
            worst = (worst.0.max(speed), worst.1.max(kappa), worst.2.max(tb));
            ensure(speed < 1e-3 && kappa < 1e-3 && tb < 1e-6, || {
                format!("{name} {kind}: speed {speed:e}, kappa {kappa:e}, T {tb:e}")
            })?;
            if r.get("tau_beta").unwrap().max_rel > 1e-3 {
                tau_records += 1;
            }
        }
    }
    Ok(format!(
        "speed rel {:.1e}, kappa rel {:.1e}, T abs {:.1e}; {tau_records} tau_beta record(s) beyond 1e-3 relative",
        worst.0, worst.1, worst.2
    ))
}

fn frame_integrity() -> Outcome {
    let mut worst = 0.0f64;
    for (name, curve) in tested_curves() {
        let b = bishop(&curve, 0.0).map_err(err)?;
        let fi = integrity(&b);
        let w = fi.orthonormality.max(fi.handedness).max(fi.curvature);
        worst = worst.max(w);
        ensure(w < 1e-6, || format!("{name}: {fi:?}"))?;
    }
    let tr = transport_residual(&bishop(&salkowski(), 0.0).map_err(err)?).into_iter().fold(0.0, f64::max);
    ensure(tr < 1e-5, || format!("salkowski transport residual {tr:e}"))?;
    Ok(format!("frame residual {worst:.1e}, salkowski transport {tr:.1e}"))
}

fn n1n2_identity() -> Outcome {
    let mut worst = 0.0f64;
    for (name, curve) in tested_curves() {
        let b = bishop(&curve, 0.0).map_err(err)?;
        let run = run_kind(SmarandacheKind::N1N2, &b, InvariantOptions::default()).map_err(err)?;
        for i in 0..b.len() {
            let e = (run.closed.t[i].dot(&b.t[i]) + 1.0).abs();
            worst = worst.max(e);
            ensure(e < 1e-12, || format!("{name}: {e:e} at s = {}", b.s[i]))?;
        }
    }
    Ok(format!("max |<T_beta, T> + 1| = {worst:.1e}"))
}

fn beta_frame(kind: SmarandacheKind, curve: &SampledCurve) -> Result<BishopData, String> {
    let beta = construct(kind, &bishop(curve, 0.0).map_err(err)?).map_err(err)?;
    oracle_invariants(&beta).map_err(err)?.bishop.ok_or_else(|| "no Bishop frame for beta".into())
}

fn mid(b: &BishopData) -> usize {
    let (lo, hi) = usable_range(b);
    (lo + hi) / 2
}

fn sphere_contracts() -> Outcome {
    let mut checked = 0;
    for (kind, curve) in [(SmarandacheKind::TN1, helix((0.0, TAU))), (SmarandacheKind::N1N2, salkowski())] {
        let b = beta_frame(kind, &curve)?;
        let x = sphere_input(&b, mid(&b)).map_err(err)?;
        let line = curvature_center_line(x.k1, x.k2, &x.frame).map_err(err)?;
        let r0 = min_radius(x.k1, x.k2);
        for scale in [1.1, 1.5, 2.0, 5.0] {
            let r = scale * r0;
            for sol in curvature_centers_derived(x.k1, x.k2, r, &x.frame).map_err(err)? {
                let [d1, d2, d3] = sol.deltas;
                let errs = [d1.abs(), (x.k1 * d2 + x.k2 * d3 - 1.0).abs(), (d2 * d2 + d3 * d3 - r * r).abs(), line.distance(&sol.center)];
                ensure(errs.iter().all(|e| *e < 1e-9), || format!("{kind} r = {scale} r_min: {errs:?}"))?;
                checked += 1;
            }
        }
    }
    let h = helix((0.0, TAU));
    let b = bishop(&h, 0.0).map_err(err)?;
    let i = mid(&b);
    let x = sphere_input(&b, i).map_err(err)?;
    let sol = osculating_sphere(x.k1, x.k2, x.k1p, x.k2p, &x.frame).map_err(err)?;
    let f = contact_residuals(&sol.center, sol.radius, &b.curve().map_err(err)?, i).map_err(err)?;
    ensure((sol.radius - 2.0).abs() < 1e-5, || format!("helix osculating radius {}", sol.radius))?;
    ensure(f[0].abs() < 1e-5 && f[1].abs() < 1e-5 && f[2].abs() < 1e-5 && f[3].abs() < 1e-3, || {
        format!("helix osculating residuals {f:?}")
    })?;
    Ok(format!("{checked} derived centres; helix osculating radius {:.9}", sol.radius))
}

fn published_theorem() -> Outcome {
    let at = FramePoint { position: Vec3::zeros(), t: Vec3::x(), n1: Vec3::y(), n2: Vec3::z() };
    let sols = curvature_centers_paper(2.0, 1.0, 1.0, &at).map_err(err)?;
    let mut gap = 0.0f64;
    for s in &sols {
        let e = (2.0 * s.deltas[1] + s.deltas[2] - 1.0).abs();
        ensure(e < 1e-12, || format!("k1 d2 + k2 d3 - 1 = {e:e}"))?;
        gap = gap.max(s.norm_gap());
    }
    match curvature_centers_paper(1.0, 1.0, 2.0, &at) {
        Err(Error::DiscriminantNegative { .. }) => {}
        other => return Err(format!("k1 = k2 = 1, r = 2 gave {other:?}")),
    }
    ensure(gap > 1e-6, || format!("norm gap {gap:e} unexpectedly vanishes"))?;
    Ok(format!("contact condition holds; norm gap {gap:.3}"))
}

fn figures() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    for out in ["a", "b"] {
        let o = Command::new(env!("CARGO_BIN_EXE_smarandache"))
            .args(["plot", "--kind", "all", "--curve", "salkowski", "--n", "4096", "--out", out])
            .current_dir(dir.path())
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
    }
    let mut sizes = Vec::new();
    for kind in SmarandacheKind::ALL {
        let name = format!("{}.svg", kind.slug());
        let a = std::fs::read(dir.path().join("a").join(&name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(dir.path().join("b").join(&name)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{name} differs between runs"))?;
        let text = String::from_utf8(a).map_err(|e| e.to_string())?;
        ensure(text.starts_with("<?xml") && text.trim_end().ends_with("</svg>"), || format!("{name} is not an SVG document"))?;
        ensure(text.matches("<svg").count() == 1 && text.contains(r#"viewBox="0 0 800 600""#), || format!("{name}: bad root"))?;
        let points = text
            .split("<polyline")
            .nth(1)
            .and_then(|p| p.split("points=\"").nth(1))
            .map(|p| p.split('"').next().unwrap_or("").split(' ').filter(|s| !s.is_empty()).count())
            .unwrap_or(0);
        ensure(points > 0, || format!("{name} has an empty polyline"))?;
        sizes.push(format!("{} {points} pts", kind.slug()));
    }
    Ok(format!("deterministic; {}", sizes.join(", ")))
}

fn constant_curvature() -> Outcome {
    let f = frenet_frame(&salkowski(), KAPPA_FLOOR).map_err(err)?;
    let (lo, hi) = f.kappa.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &k| (a.min(k), b.max(k)));
    let spread = hi / lo - 1.0;
    ensure(spread < 1e-3, || format!("spread {spread:e}"))?;
    Ok(format!("kappa in [{lo:.9}, {hi:.9}], spread {spread:.1e}"))
}

fn parser_suite() -> Outcome {
    let value = |text: &str, t: f64| parse(text).and_then(|e| e.eval(t)).map_err(err);
    let cases: [(&str, f64, f64, f64); 7] = [
        ("cos(t)", 0.0, 1.0, 0.0),
        ("2*t + sin(t)^2", PI / 2.0, PI + 1.0, 1e-12),
        ("sqrt(t)", 4.0, 2.0, 0.0),
        ("t^3 - t", 2.0, 6.0, 0.0),
        ("2+3*4", 0.0, 14.0, 0.0),
        ("2^3^2", 0.0, 512.0, 0.0),
        ("-t^2", 3.0, -9.0, 0.0),
    ];
    for (text, t, want, tol) in cases {
        let got = value(text, t)?;
        ensure((got - want).abs() <= tol, || format!("{text} at {t}: {got}, expected {want}"))?;
    }
    match parse("cos(") {
        Err(Error::Syntax { offset: 4, .. }) => {}
        other => return Err(format!("\"cos(\" gave {other:?}")),
    }
    match parse("asin(t)").unwrap().eval(2.0) {
        Err(Error::Domain { function, argument }) if function == "asin" && argument == 2.0 => {}
        other => return Err(format!("asin(2) gave {other:?}")),
    }
    match parse("cosh(t)") {
        Err(Error::UnknownIdentifier { name, .. }) if name == "cosh" => {}
        other => return Err(format!("cosh gave {other:?}")),
    }
    ensure(parse_curve("cos(t); sin(t); 0.5*t").is_ok(), || "curve triple rejected".into())?;
    Ok(format!("{} value cases, 3 error cases", cases.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("circle closed-form suite", circle_suite),
        ("oracle equivalence on helix and Salkowski", oracle_equivalence),
        ("frame integrity", frame_integrity),
        ("N1N2 tangent identity", n1n2_identity),
        ("sphere contracts", sphere_contracts),
        ("published curvature-sphere formula", published_theorem),
        ("figure regeneration", figures),
        ("Salkowski constant curvature", constant_curvature),
        ("parser suite", parser_suite),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
