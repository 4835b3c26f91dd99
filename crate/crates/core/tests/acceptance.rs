//! Acceptance criteria, one line each. Exits non-zero if any criterion
//! fails or overruns its time budget.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wtrisect::combinatorics::{
    build_surface_decomposition, build_trisection_data, validate_decomposition,
};
use wtrisect::config::RunConfig;
use wtrisect::potential::{fubini_study_potential, omega_from_potential};
use wtrisect::quadrature::{area_quadrature, QuadratureOptions};
use wtrisect::regions::{
    default_caps, default_marked_points, default_sectors, random_sphere_point, Region,
};
use wtrisect::report::Status;
use wtrisect::sphere::{y_rotation, Chart, ChartPoint, SpherePoint};
use wtrisect::verify::full_verify;
use wtrisect::weinstein::{
    check_transversality, configure_step1, configure_step2, find_critical_points,
    liouville_field, NewtonOptions, Step2Mode, StratumKind,
};
use wtrisect::{Execution, Part};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn genus_formula() -> Outcome {
    let mut bad = Vec::new();
    for g in 0..=8u32 {
        for h in 0..=8u32 {
            let t = build_trisection_data(g, h);
            let (g64, h64) = (g as i64, h as i64);
            let genus = (2 * g64 + 1) * (2 * h64 + 1) + 1;
            let rank = 2 * g64 + 2 * h64;
            let lhs = 2 + t.central_genus as i64 - t.ranks.iter().map(|&k| k as i64).sum::<i64>();
            let rhs = (2 - 2 * g64) * (2 - 2 * h64);
            if t.central_genus as i64 != genus
                || t.ranks.iter().any(|&k| k as i64 != rank)
                || lhs != rhs
            {
                bad.push((g, h));
            }
        }
    }
    outcome(bad.is_empty(), format!("81 pairs, mismatches {bad:?}"))
}

fn decomposition_counts() -> Outcome {
    let mut bad = Vec::new();
    let mut prev = build_surface_decomposition(0);
    for g in 0..=8u32 {
        let d = build_surface_decomposition(g);
        let n = 2 * g as usize + 1;
        let v = 4 * g as usize + 2;
        let chi = 3 - 3 * n as i64 + v as i64;
        let counts_ok = d.arcs_per_pair() == [n; 3]
            && d.vertex_count() == v
            && chi == 2 - 2 * g as i64
            && d.euler_characteristic() == chi
            && validate_decomposition(&d).iter().all(|c| c.status == Status::Pass);
        let stabilized_ok = g == 0
            || (0..prev.vertex_count()).all(|vtx| {
                let s = prev.stabilize(vtx).expect("triple point");
                s.arcs_per_pair() == d.arcs_per_pair()
                    && s.vertex_count() == d.vertex_count()
                    && s.genus == d.genus
                    && validate_decomposition(&s).iter().all(|c| c.status == Status::Pass)
            });
        if !(counts_ok && stabilized_ok) {
            bad.push(g);
        }
        prev = d;
    }
    outcome(bad.is_empty(), format!("genus 0..=8, failures {bad:?}"))
}

fn fubini_study_area() -> Outcome {
    let omega = omega_from_potential(&fubini_study_potential());
    let north = Chart::north();
    let south = Chart::from_pole(SpherePoint::SOUTH);
    // Fubini–Study density relative to the round form, read in a chart
    // that keeps the point away from the projection point
    let density = |p: SpherePoint| {
        let chart = if p.z > 0.0 { &south } else { &north };
        let c = chart.project(p).expect("away from the pole");
        omega.at(c) / Chart::round_density(c)
    };
    let opts = QuadratureOptions::default();
    let whole = area_quadrature(|_| true, density, &opts, Execution::Parallel);
    let mut detail = String::new();
    let mut ok = match whole {
        Ok(e) => {
            detail.push_str(&format!("sphere {:.3e} off", (e.value - 4.0 * PI).abs()));
            (e.value - 4.0 * PI).abs() < 1e-6
        }
        Err(e) => {
            detail.push_str(&format!("sphere: {e}"));
            false
        }
    };
    for (k, b) in default_sectors().into_iter().enumerate() {
        match area_quadrature(move |p| b.contains(p), density, &opts, Execution::Parallel) {
            Ok(e) => {
                let off = (e.value - 4.0 * PI / 3.0).abs();
                detail.push_str(&format!(", B{} {:.3e} off", k + 1, off));
                ok &= off < 1e-6;
            }
            Err(e) => {
                detail.push_str(&format!(", B{}: {e}", k + 1));
                ok = false;
            }
        }
    }
    outcome(ok, detail)
}

fn liouville_identity() -> Outcome {
    let x = liouville_field(&fubini_study_potential());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let r = 10.0 * rng.random::<f64>().sqrt();
        let t = rng.random_range(0.0..TAU);
        let p = ChartPoint::new(r * t.cos(), r * t.sin());
        match x.residual(p, 1e-4) {
            Ok(v) => worst = worst.max(v),
            Err(_) => worst = f64::INFINITY,
        }
    }
    let probe = ChartPoint::new(0.5, 0.5);
    let detected = x
        .perturbed([0.1, 0.0])
        .residual(probe, 1e-4)
        .unwrap_or(f64::NAN);
    outcome(
        worst < 1e-6 && detected > 1e-3,
        format!("max residual {worst:.3e}, perturbed {detected:.3e}"),
    )
}

fn morse_data() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let seeds: Vec<ChartPoint> = (0..50)
        .map(|_| ChartPoint::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
        .collect();
    let f = fubini_study_potential();
    let s = find_critical_points(&f, &seeds, &NewtonOptions::default(), Execution::Parallel);
    let ok = match s.points.as_slice() {
        [c] => {
            let [gu, gv] = f.gradient(c.location);
            c.location.norm() < 1e-10
                && gu.hypot(gv) < 1e-10
                && c.index == 0
                && c.eigenvalues.iter().all(|l| (l - 2.0).abs() < 1e-6)
        }
        _ => false,
    };
    outcome(
        ok,
        format!(
            "{} distinct point(s) from {} converged seeds, {} seeds reported as failed",
            s.points.len(),
            s.converged_seeds,
            s.failures.len()
        ),
    )
}

fn rotation_symplectomorphism() -> Outcome {
    let chart = Chart::north();
    let omega = omega_from_potential(&fubini_study_potential());
    let r = y_rotation(4.0 * PI / 3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let (mut worst, mut n) = (0.0_f64, 0);
    while n < 1000 {
        let p = random_sphere_point(&mut rng);
        let q = p.rotated(&r);
        if p.z > 0.999 || q.z > 0.999 {
            continue;
        }
        let c = chart.project(p).unwrap();
        let jac: Matrix2<f64> =
            chart.project_jacobian(q).unwrap() * r.matrix() * chart.lift_jacobian(c);
        let pulled = omega.at(chart.project(q).unwrap()) * jac.determinant();
        worst = worst.max((pulled - omega.at(c)).abs());
        n += 1;
    }
    outcome(worst < 1e-9, format!("max pullback error {worst:.3e} over {n} points"))
}

fn marked_point_ledger() -> Outcome {
    let caps = default_caps(PI / 4.0).unwrap();
    let m = default_marked_points();
    // N₁ ∋ {p₁, q₃}, N₂ ∋ {p₂, q₁}, N₃ ∋ {p₃, q₂}
    let expected = |is_p: bool, j: usize, i: usize| {
        if is_p {
            j == i
        } else {
            j == (i + 2) % 3
        }
    };
    let mut entries = 0;
    let mut wrong = Vec::new();
    for (is_p, pts) in [(true, m.p), (false, m.q)] {
        for (j, pt) in pts.iter().enumerate() {
            for (i, cap) in caps.iter().enumerate() {
                entries += 1;
                if cap.contains(*pt) != expected(is_p, j, i) {
                    wrong.push(format!("{}{}∈N{}", if is_p { "p" } else { "q" }, j + 1, i + 1));
                }
            }
        }
    }
    outcome(entries == 18 && wrong.is_empty(), format!("{entries} entries, wrong {wrong:?}"))
}

fn degeneracy_finding() -> Outcome {
    let s1 = configure_step1(PI / 4.0).unwrap();
    let s2 = configure_step2(Step2Mode::PaperLiteral);
    let r = check_transversality(Part::One, &s1, &s2, 256, 0.0, 0, Execution::Parallel).unwrap();
    let stratum = r
        .strata
        .iter()
        .find(|s| s.kind == StratumKind::SectorBoundary)
        .unwrap();
    let report = full_verify(&RunConfig::default());
    let entry = report
        .find("weinstein.transversality.paper-literal.x1")
        .map(|e| e.status);
    let ok = stratum.samples > 0
        && stratum.max_abs_outwardness < 1e-9
        && entry == Some(Status::Flagged)
        && !report.has_failures();
    outcome(
        ok,
        format!(
            "{}: max |outwardness| {:.3e} over {} samples, status {:?}, failures {}",
            stratum.label,
            stratum.max_abs_outwardness,
            stratum.samples,
            entry,
            report.summary.fail
        ),
    )
}

fn report_determinism() -> Outcome {
    let cfg = RunConfig {
        seed: 7,
        ..RunConfig::default()
    };
    let a = full_verify(&cfg).to_canonical_json().unwrap();
    let b = full_verify(&cfg).to_canonical_json().unwrap();
    let c = full_verify(&RunConfig {
        execution: Execution::Sequential,
        ..cfg
    })
    .to_canonical_json()
    .unwrap();
    outcome(
        a == b && a == c,
        format!("{} bytes; repeat identical {}, sequential identical {}", a.len(), a == b, a == c),
    )
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("genus formula and Euler identity, 0 ≤ g,h ≤ 8", Some(Duration::from_secs(1)), genus_formula),
        ("decomposition counts and stabilization, 0 ≤ g ≤ 8", Some(Duration::from_secs(1)), decomposition_counts),
        ("Fubini–Study areas: sphere 4π, sectors 4π/3 (1e-6)", Some(Duration::from_secs(10)), fubini_study_area),
        ("Liouville identity < 1e-6, perturbation > 1e-3", Some(Duration::from_secs(5)), liouville_identity),
        ("Morse data of the Fubini–Study potential", Some(Duration::from_secs(1)), morse_data),
        ("rotation symplectomorphism within 1e-9", None, rotation_symplectomorphism),
        ("marked-point membership ledger", None, marked_point_ledger),
        ("meridian tangency flagged, run not failed", None, degeneracy_finding),
        ("byte-identical reports", None, report_determinism),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed < b);
        let ok = o.ok && in_time;
        if !ok {
            failures += 1;
        }
        let budget_note = budget.map_or(String::new(), |b| format!(" / budget {b:.0?}"));
        println!(
            "{} {name}: {} [{elapsed:.2?}{budget_note}]",
            if ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
