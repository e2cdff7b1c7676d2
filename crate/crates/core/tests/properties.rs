use std::sync::OnceLock;

use proptest::prelude::*;
use smarandache_core::builtin::{salkowski_unit_speed, Helix, SalkowskiParams, DEFAULT_FRACTION};
use smarandache_core::curve::{derivatives, sample_curve, SampledCurve};
use smarandache_core::exec::{set_execution, Execution};
use smarandache_core::expr::{parse, BinOp, Constant, Expr, Func};
use smarandache_core::frames::{bishop_from_frenet, frenet_frame, FrenetData, KAPPA_FLOOR};
use smarandache_core::pipeline::{run_kind, to_unit_speed};
use smarandache_core::smarandache::{compare, construct, invariants, InvariantOptions, SmarandacheKind};
use smarandache_core::spheres::{
    curvature_center_line, curvature_centers_derived, curvature_centers_paper, min_radius, FramePoint,
};
use smarandache_core::Vec3;

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|k| Expr::Num(k as f64 / 8.0)),
        Just(Expr::Var),
        Just(Expr::Const(Constant::Pi)),
        Just(Expr::Const(Constant::E)),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div), Just(BinOp::Pow)];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::Binary(o, Box::new(a), Box::new(b))),
            (proptest::sample::select(Func::ALL.to_vec()), inner).prop_map(|(f, e)| Expr::Call(f, Box::new(e))),
        ]
    })
}

fn same_value(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a == b || (a - b).abs() <= 1e-15 * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_expressions_reparse_to_the_same_function(e in expr_strategy()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        for k in 0..100 {
            let t = -3.0 + 0.0617 * k as f64;
            match (e.eval(t), back.eval(t)) {
                (Ok(a), Ok(b)) => prop_assert!(same_value(a, b), "{text} at {t}: {a} vs {b}"),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(false, "{text} at {t}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn derivative_sequences_match_the_grid(n in 9usize..300, a in 0.2f64..3.0, order in 1usize..=3) {
        let c = sample_curve(|t| Vec3::new((a * t).cos(), t * t, (a * t).sin()), (0.0, 2.0), n).unwrap();
        let d = derivatives(&c, order).unwrap();
        prop_assert!(d.guard_band >= 4);
        for k in 1..=order {
            prop_assert_eq!(d.order(k).len(), n);
        }
    }
}

fn helix_frenet() -> &'static FrenetData {
    static F: OnceLock<FrenetData> = OnceLock::new();
    F.get_or_init(|| {
        let h = Helix::new(1.0, 0.6).unwrap();
        let c = to_unit_speed(sample_curve(|t| h.point(t), (0.0, 3.0), 1024).unwrap(), 1024).unwrap();
        frenet_frame(&c, KAPPA_FLOOR).unwrap()
    })
}

fn salkowski() -> &'static SampledCurve {
    static C: OnceLock<SampledCurve> = OnceLock::new();
    C.get_or_init(|| salkowski_unit_speed(&SalkowskiParams::new(3f64.sqrt()).unwrap(), 1024, DEFAULT_FRACTION).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shifting_theta0_rotates_the_normal_plane(theta0 in -3.0f64..3.0, phi in -3.0f64..3.0) {
        let f = helix_frenet();
        let a = bishop_from_frenet(f, theta0);
        let b = bishop_from_frenet(f, theta0 + phi);
        let (s, c) = phi.sin_cos();
        for i in (0..a.len()).step_by(37) {
            prop_assert!((b.n1[i] - (a.n1[i] * c - a.n2[i] * s)).norm() < 1e-12);
            prop_assert!((b.n2[i] - (a.n1[i] * s + a.n2[i] * c)).norm() < 1e-12);
            prop_assert!((b.k1[i] - (a.k1[i] * c - a.k2[i] * s)).abs() < 1e-12);
            prop_assert!((b.k2[i] - (a.k1[i] * s + a.k2[i] * c)).abs() < 1e-12);
            prop_assert!((b.k1[i].hypot(b.k2[i]) - a.k1[i].hypot(a.k2[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn smarandache_curves_lie_on_the_unit_sphere(theta0 in -3.0f64..3.0, k in 0usize..4) {
        let b = bishop_from_frenet(helix_frenet(), theta0);
        let beta = construct(SmarandacheKind::ALL[k], &b).unwrap();
        prop_assert!(beta.points.iter().all(|p| (p.norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn natural_curvatures_of_beta_follow_theta(theta0 in -0.5f64..0.5, k in 0usize..4) {
        let b = bishop_from_frenet(helix_frenet(), theta0);
        let inv = invariants(SmarandacheKind::ALL[k], &b).unwrap();
        for i in 0..inv.len() {
            prop_assert!(inv.kappa[i] >= 0.0);
            prop_assert!((inv.k1[i] - inv.kappa[i] * inv.theta[i].cos()).abs() < 1e-12);
            prop_assert!((inv.k2[i] - inv.kappa[i] * inv.theta[i].sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn a_report_against_itself_is_zero(k in 0usize..4) {
        let b = bishop_from_frenet(helix_frenet(), 0.0);
        let inv = invariants(SmarandacheKind::ALL[k], &b).unwrap();
        let r = compare(&inv, &inv).unwrap();
        prop_assert!(r.entries.iter().all(|d| d.max_abs == 0.0 && d.max_rel == 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn execution_mode_does_not_change_results(k in 0usize..4, theta0 in -1.0f64..1.0) {
        let f = frenet_frame(salkowski(), KAPPA_FLOOR).unwrap();
        let b = bishop_from_frenet(&f, theta0);
        let kind = SmarandacheKind::ALL[k];
        set_execution(Execution::Sequential);
        let seq = run_kind(kind, &b, InvariantOptions::default());
        set_execution(Execution::Parallel);
        let par = run_kind(kind, &b, InvariantOptions::default());
        let (seq, par) = (seq.unwrap(), par.unwrap());
        prop_assert_eq!(seq.closed, par.closed);
        prop_assert_eq!(seq.oracle, par.oracle);
        prop_assert_eq!(seq.report, par.report);
    }
}

fn frame_strategy() -> impl Strategy<Value = FramePoint> {
    (prop::array::uniform3(-5.0f64..5.0), prop::array::uniform3(-1.0f64..1.0), 0.0f64..std::f64::consts::TAU)
        .prop_filter("axis must be usable", |(_, a, _)| Vec3::from(*a).norm() > 0.1)
        .prop_map(|(p, axis, angle)| {
            let r = nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(Vec3::from(axis)), angle);
            FramePoint { position: Vec3::from(p), t: r * Vec3::x(), n1: r * Vec3::y(), n2: r * Vec3::z() }
        })
}

fn curvature_pair() -> impl Strategy<Value = (f64, f64)> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_filter("nonzero curvature", |(a, b)| a.hypot(*b) > 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn derived_centres_satisfy_contact_and_are_collinear(
        (k1, k2) in curvature_pair(),
        frame in frame_strategy(),
        step in 0.01f64..2.0,
    ) {
        let line = curvature_center_line(k1, k2, &frame).unwrap();
        let r0 = min_radius(k1, k2);
        for j in 0..6 {
            let r = r0 + j as f64 * step;
            for sol in curvature_centers_derived(k1, k2, r, &frame).unwrap() {
                let [d1, d2, d3] = sol.deltas;
                prop_assert_eq!(d1, 0.0);
                prop_assert!((k1 * d2 + k2 * d3 - 1.0).abs() < 1e-9);
                prop_assert!((d2.hypot(d3) - r).abs() < 1e-9 * r.max(1.0));
                prop_assert!(line.distance(&sol.center) < 1e-9 * r.max(1.0), "{}", line.distance(&sol.center));
                prop_assert!((sol.radius - r).abs() < 1e-12 * r);
            }
        }
    }

    #[test]
    fn published_centres_stay_on_the_contact_line(
        (k1, k2) in curvature_pair(),
        frame in frame_strategy(),
        r in 0.1f64..10.0,
    ) {
        if let Ok(sols) = curvature_centers_paper(k1, k2, r, &frame) {
            let line = curvature_center_line(k1, k2, &frame).unwrap();
            for sol in sols {
                let [d1, d2, d3] = sol.deltas;
                prop_assert_eq!(d1, 0.0);
                prop_assert!((k1 * d2 + k2 * d3 - 1.0).abs() < 1e-9 * (1.0 + d2.abs() + d3.abs()));
                prop_assert!(line.distance(&sol.center) < 1e-9 * (1.0 + d2.abs() + d3.abs()));
            }
        }
    }
}
