//! Property tests against closed forms and independent finite differences.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix4, Vector3};
use proptest::prelude::*;

use wtrisect::combinatorics::{
    build_surface_decomposition, build_trisection_data, validate_decomposition,
};
use wtrisect::potential::{
    d_complex, fd_exterior_derivative, fubini_study_potential, omega_from_potential,
};
use wtrisect::regions::{
    default_caps, default_sectors, Membership, Region, MARKED_ROTATION,
};
use wtrisect::report::Status;
use wtrisect::sphere::{rotate_z, y_rotation, Chart, ChartPoint, SpherePoint};
use wtrisect::weinstein::{
    configure_step1, liouville_field, liouville_from_jet, liouville_residual, product_liouville,
};
use wtrisect::{Execution, Part};

fn sphere_point() -> impl Strategy<Value = SpherePoint> {
    (-1.0f64..1.0, 0.0f64..TAU).prop_map(|(z, t)| {
        let s = (1.0 - z * z).sqrt();
        SpherePoint::new(s * t.cos(), s * t.sin(), z)
    })
}

fn disk_point(radius: f64) -> impl Strategy<Value = ChartPoint> {
    (0.0f64..1.0, 0.0f64..TAU)
        .prop_map(move |(s, t)| ChartPoint::new(radius * s.sqrt() * t.cos(), radius * s.sqrt() * t.sin()))
}

fn fs_closed_form(p: ChartPoint) -> (f64, [f64; 2], f64) {
    let q = 1.0 + p.u * p.u + p.v * p.v;
    (q.ln(), [2.0 * p.u / q, 2.0 * p.v / q], 4.0 / (q * q))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn trisection_arithmetic(g in 0u32..=8, h in 0u32..=8) {
        let t = build_trisection_data(g, h);
        let (g, h) = (g as i64, h as i64);
        prop_assert_eq!(t.central_genus as i64, (2 * g + 1) * (2 * h + 1) + 1);
        prop_assert!(t.ranks.iter().all(|&k| k as i64 == 2 * g + 2 * h));
        let sum: i64 = t.ranks.iter().map(|&k| k as i64).sum();
        prop_assert_eq!(2 + t.central_genus as i64 - sum, (2 - 2 * g) * (2 - 2 * h));
    }

    #[test]
    fn stabilization_reaches_next_genus(g in 0u32..=7, pick in 0usize..1000) {
        let d = build_surface_decomposition(g);
        let s = d.stabilize(pick % d.vertex_count()).unwrap();
        let next = build_surface_decomposition(g + 1);
        prop_assert_eq!(s.genus, g + 1);
        prop_assert_eq!(s.arcs_per_pair(), next.arcs_per_pair());
        prop_assert_eq!(s.vertex_count(), next.vertex_count());
        prop_assert_eq!(s.euler_characteristic(), 2 - 2 * (g as i64 + 1));
        prop_assert!(validate_decomposition(&s).iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn chart_round_trip(pole in sphere_point(), p in sphere_point()) {
        prop_assume!(pole.angle_to(p) > 0.05);
        let chart = Chart::from_pole(pole);
        let back = chart.lift(chart.project(p).unwrap());
        prop_assert!(back.distance(p) < 1e-12, "{:?} -> {:?}", p, back);
    }

    #[test]
    fn projection_jacobian_inverts_lift(pole in sphere_point(), c in disk_point(20.0)) {
        let chart = Chart::from_pole(pole);
        let id = chart.project_jacobian(chart.lift(c)).unwrap() * chart.lift_jacobian(c);
        prop_assert!((id - nalgebra::Matrix2::identity()).abs().max() < 1e-9);
    }

    #[test]
    fn fubini_study_matches_closed_form(p in disk_point(50.0)) {
        let f = fubini_study_potential();
        let (value, grad, density) = fs_closed_form(p);
        prop_assert!(close(f.value(p), value, 1e-13));
        let g = f.gradient(p);
        prop_assert!(close(g[0], grad[0], 1e-12) && close(g[1], grad[1], 1e-12));
        let w = omega_from_potential(&f).at(p);
        prop_assert!(w > 0.0);
        prop_assert!(close(w, density, 1e-10));
    }

    #[test]
    fn finite_differences_agree_with_derivatives(p in disk_point(10.0)) {
        let f = fubini_study_potential();
        let h = 1e-4;
        let (g, fd) = (f.gradient(p), f.fd_gradient(p, h));
        for k in 0..2 {
            prop_assert!((g[k] - fd[k]).abs() < 10.0 * h * h, "{k}: {} vs {}", g[k], fd[k]);
        }
    }

    #[test]
    fn exactness(p in disk_point(10.0)) {
        let f = fubini_study_potential();
        let d = fd_exterior_derivative(&d_complex(&f), p, 1e-4).unwrap();
        prop_assert!((d + fs_closed_form(p).2).abs() < 1e-5);
    }

    #[test]
    fn liouville_residual_second_order(p in disk_point(10.0), step in 1e-3f64..1e-2) {
        let r = liouville_residual(&fubini_study_potential(), p, step).unwrap();
        prop_assert!(r < 100.0 * step * step, "residual {r} at step {step}");
    }

    #[test]
    fn liouville_field_closed_form(p in disk_point(10.0)) {
        // X = ∇f/Δf = (1 + r²)(u, v)/2
        let [xu, xv] = liouville_field(&fubini_study_potential()).at(p).unwrap();
        let q = 1.0 + p.norm_sqr();
        prop_assert!(close(xu, q * p.u / 2.0, 1e-12) && close(xv, q * p.v / 2.0, 1e-12));
    }

    #[test]
    fn rotation_about_axis_preserves_potential(p in sphere_point(), t in 0.0f64..TAU) {
        prop_assume!(p.z < 0.99);
        let chart = Chart::north();
        let f = fubini_study_potential();
        let q = rotate_z(t, p);
        prop_assume!(q.z < 0.99);
        let a = f.value(chart.project(p).unwrap());
        let b = f.value(chart.project(q).unwrap());
        prop_assert!(close(a, b, 1e-12));
    }

    #[test]
    fn sectors_tile_the_sphere(p in sphere_point()) {
        let sectors = default_sectors();
        let tol = 1e-12;
        let interior = sectors.iter().filter(|b| b.classify(p, tol) == Membership::Interior).count();
        let boundary = sectors.iter().filter(|b| b.classify(p, tol) == Membership::Boundary).count();
        prop_assert!(interior <= 1);
        prop_assert!(interior == 1 || boundary >= 2, "interior {interior}, boundary {boundary}");
    }

    #[test]
    fn caps_are_rotation_equivariant(p in sphere_point(), part in 0usize..3) {
        let caps = default_caps(PI / 4.0).unwrap();
        let r = y_rotation(MARKED_ROTATION);
        let i = Part::ALL[part];
        let (here, there) = (&caps[i.index()], &caps[i.next().index()]);
        let q = p.rotated(&r);
        prop_assume!((p.angle_to(here.center) - here.radius).abs() > 1e-9);
        prop_assert_eq!(here.contains(p), there.contains(q));
    }

    #[test]
    fn step1_potentials_are_equivariant(p in sphere_point(), part in 0usize..3) {
        let s = configure_step1(PI / 4.0).unwrap();
        let i = Part::ALL[part];
        let r = y_rotation(MARKED_ROTATION);
        let (fi, fnext) = (&s.get(i).potential, &s.get(i.next()).potential);
        prop_assume!(p.angle_to(fi.chart.pole()) > 0.05);
        let a = fi.value(p).unwrap();
        let b = fnext.value(p.rotated(&r)).unwrap();
        prop_assert!(close(a, b, 1e-10), "{a} vs {b}");
        let xa = r.matrix() * fi.liouville_vector(p).unwrap();
        let xb: Vector3<f64> = fnext.liouville_vector(p.rotated(&r)).unwrap();
        prop_assert!((xa - xb).norm() < 1e-9 * (1.0 + xa.norm()));
    }

    #[test]
    fn product_field_is_direct_sum(a in disk_point(5.0), b in disk_point(5.0)) {
        let f = fubini_study_potential();
        let x = product_liouville(&f, &f, a, b).unwrap();
        let field = liouville_field(&f);
        let (xa, xb) = (field.at(a).unwrap(), field.at(b).unwrap());
        let want = [xa[0], xa[1], xb[0], xb[1]];
        for k in 0..4 {
            prop_assert!(close(x[k], want[k], 1e-10), "{k}: {} vs {}", x[k], want[k]);
        }
    }

    #[test]
    fn product_field_from_finite_difference_jet(a in disk_point(3.0), b in disk_point(3.0)) {
        // Full 4×4 jet of F = f(z₁) + f(z₂) by central differences, with no
        // block structure assumed.
        let f = fubini_study_potential();
        let big = |x: [f64; 4]| {
            f.value(ChartPoint::new(x[0], x[1])) + f.value(ChartPoint::new(x[2], x[3]))
        };
        let x0 = [a.u, a.v, b.u, b.v];
        let h = 1e-3;
        let shift = |mut x: [f64; 4], k: usize, d: f64| { x[k] += d; x };
        let mut grad = [0.0; 4];
        let mut hess = Matrix4::zeros();
        for i in 0..4 {
            grad[i] = (big(shift(x0, i, h)) - big(shift(x0, i, -h))) / (2.0 * h);
            for j in 0..4 {
                let pp = big(shift(shift(x0, i, h), j, h));
                let pm = big(shift(shift(x0, i, h), j, -h));
                let mp = big(shift(shift(x0, i, -h), j, h));
                let mm = big(shift(shift(x0, i, -h), j, -h));
                hess[(i, j)] = (pp - pm - mp + mm) / (4.0 * h * h);
            }
        }
        let fd = liouville_from_jet(grad, &hess).unwrap();
        let exact = product_liouville(&f, &f, a, b).unwrap();
        for k in 0..4 {
            prop_assert!(close(fd[k], exact[k], 1e-4), "{k}: {} vs {}", fd[k], exact[k]);
        }
    }

    #[test]
    fn execution_strategies_agree(xs in prop::collection::vec(-1e3f64..1e3, 0..500)) {
        let f = |x: &f64| (x.sin() * 1e3).round() + x * x;
        let a = Execution::Parallel.map(&xs, f);
        let b = Execution::Sequential.map(&xs, f);
        prop_assert_eq!(a, b);
    }
}

#[test]
fn decompositions_valid_up_to_genus_eight() {
    for g in 0..=8 {
        let d = build_surface_decomposition(g);
        assert!(validate_decomposition(&d).iter().all(|c| c.status == Status::Pass), "genus {g}");
        assert_eq!(d.euler_characteristic(), 2 - 2 * g as i64);
    }
}
