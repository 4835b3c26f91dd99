//! The full verification pipeline and report persistence.

use std::f64::consts::{PI, TAU};
use std::io::Write as _;
use std::path::Path;

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::combinatorics::{
    build_surface_decomposition, build_trisection_data, validate_decomposition,
    validate_trisection,
};
use crate::config::{B3Interval, RunConfig};
use crate::exec::Execution;
use crate::potential::{
    d_complex, fd_exterior_derivative, fubini_study_potential, omega_from_potential,
    PotentialField,
};
use crate::quadrature::{area_quadrature, QuadratureOptions};
use crate::regions::{
    default_b, default_caps, default_marked_points, literal_b3, random_sphere_point,
    MarkedPoints, Membership, Region, SectorRegion, MARKED_ROTATION, SECTOR_ROTATION,
};
use crate::report::{CheckEntry, Status, VerificationReport, PLUMBING};
use crate::sphere::{
    inverse_stereographic, rotate_y, rotate_z, stereographic, y_rotation, z_rotation, Chart,
    ChartPoint, SpherePoint,
};
use crate::weinstein::{
    check_transversality, configure_step1, configure_step2_with, find_critical_points,
    liouville_field, product_liouville, ChartedPotential, CriticalPointSearch, NewtonOptions,
    Step1, Step2, Step2Mode, StratumKind,
};
use crate::{Error, Part, Result};

const ANCHOR_KAHLER: &str = "Kähler structure on the sphere";
const ANCHOR_J_CONVEX: &str = "J-convexity, ω_f = −d(df∘J)";
const ANCHOR_LIOUVILLE: &str = "Liouville condition d(ι_Xω) = ω";
const ANCHOR_MORSE: &str = "index-0 critical point of the Fubini–Study potential";
const ANCHOR_MARKED: &str = "marked points p_i, q_i and disks N_i";
const ANCHOR_SECTORS: &str = "sectors B_i of equal area";
const ANCHOR_ROTATION: &str = "rotations as symplectomorphisms";
const ANCHOR_STEP1: &str = "potentials f_i centred in N_{i+1}";
const ANCHOR_STEP2: &str = "potentials g_i centred in B_i";
const ANCHOR_PRODUCT: &str = "product symplectic form on S² × S²";
const ANCHOR_OUTWARD: &str = "outward transversality on ∂X_i";

/// Shared inputs of the numerical checks.
struct Context {
    cfg: RunConfig,
    exec: Execution,
    sectors: [SectorRegion; 3],
}

impl Context {
    /// Deterministic generator for one check, independent of check order.
    fn rng(&self, salt: &str) -> ChaCha8Rng {
        // FNV-1a of the check id
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in salt.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(h ^ self.cfg.seed)
    }

    fn step1(&self) -> Result<Step1> {
        configure_step1(self.cfg.cap_radius)
    }

    fn step2(&self, mode: Step2Mode) -> Step2 {
        configure_step2_with(mode, self.sectors)
    }

    fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            target: self.cfg.quadrature_target,
            ..QuadratureOptions::default()
        }
    }
}

type Runner = Box<dyn Fn(&Context, CheckEntry) -> Result<CheckEntry>>;

/// A numerical check: metadata plus the code that fills in its status.
struct Check {
    id: String,
    description: String,
    anchor: &'static str,
    run: Runner,
}

fn check(
    id: impl Into<String>,
    description: impl Into<String>,
    anchor: &'static str,
    run: impl Fn(&Context, CheckEntry) -> Result<CheckEntry> + 'static,
) -> Check {
    Check {
        id: id.into(),
        description: description.into(),
        anchor,
        run: Box::new(run),
    }
}

fn sectors_for(b3: B3Interval) -> [SectorRegion; 3] {
    let third = match b3 {
        B3Interval::Corrected => default_b(Part::Three),
        B3Interval::PaperLiteral => literal_b3(),
    };
    [default_b(Part::One), default_b(Part::Two), third]
}

/// Runs every check for `config` and aggregates the results. Faults inside
/// a check become failed entries.
pub fn full_verify(config: &RunConfig) -> VerificationReport {
    let mut entries = Vec::new();
    entries.extend(validate_decomposition(&build_surface_decomposition(config.g)));
    entries.extend(validate_trisection(&build_trisection_data(config.g, config.h)));

    let ctx = Context {
        cfg: config.clone(),
        exec: config.execution,
        sectors: sectors_for(config.b3_interval),
    };
    for c in numerical_checks(&config.step2_mode.modes()) {
        let template = CheckEntry::new(c.id.clone(), c.description.clone(), c.anchor, Status::Pass);
        let entry = if !config.numerical_in_scope() {
            template
                .status(Status::Skipped)
                .with("reason", "out of scope: explicit potentials exist only for g = h = 0")
        } else {
            match (c.run)(&ctx, template.clone()) {
                Ok(e) => e,
                Err(err) => template
                    .status(Status::Fail)
                    .with("error", err.to_string()),
            }
        };
        entries.push(entry);
    }
    VerificationReport::new(config.clone(), entries)
}

fn numerical_checks(modes: &[Step2Mode]) -> Vec<Check> {
    let mut checks = vec![
        check(
            "sphere.chart-roundtrip",
            "stereographic projection followed by its inverse is the identity within 1e-12 (10 poles × 100 points)",
            PLUMBING,
            chart_roundtrip,
        ),
        check(
            "sphere.derivative-crosscheck",
            "analytic Fubini–Study gradient and Hessian agree with finite differences within 10·h² (h = 1e-3, |z| < 10)",
            ANCHOR_KAHLER,
            derivative_crosscheck,
        ),
        check(
            "sphere.fs-positivity",
            "Fubini–Study form density Δf is positive at every sampled chart point",
            ANCHOR_J_CONVEX,
            fs_positivity,
        ),
        check(
            "sphere.exactness",
            "d(d^ℂf) + ω_f vanishes within 1e-5 at the configured step",
            ANCHOR_J_CONVEX,
            exactness,
        ),
        check(
            "weinstein.liouville-residual",
            "|d(ι_Xω) − ω| < 100·h² at random chart points with |z| ≤ 10",
            ANCHOR_LIOUVILLE,
            liouville_sweep,
        ),
        check(
            "weinstein.liouville-detector",
            "the field X + (0.1, 0) has residual above 1e-3 at (0.5, 0.5)",
            ANCHOR_LIOUVILLE,
            liouville_detector,
        ),
        check(
            "weinstein.morse.fubini-study",
            "Newton from random seeds finds exactly one critical point: the origin, index 0, eigenvalues (2, 2)",
            ANCHOR_MORSE,
            morse_fubini_study,
        ),
        check(
            "regions.marked-points",
            "closed forms of p_i, q_i equal their rotation images; consecutive points are π/3 apart",
            ANCHOR_MARKED,
            marked_points,
        ),
        check(
            "regions.marked-point-ledger",
            "N₁ ∋ {p₁, q₃}, N₂ ∋ {p₂, q₁}, N₃ ∋ {p₃, q₂} and no other memberships (18 entries)",
            ANCHOR_MARKED,
            marked_ledger,
        ),
        check(
            "regions.cap-disjoint",
            "the disks N₁, N₂, N₃ are pairwise disjoint",
            ANCHOR_MARKED,
            cap_disjoint,
        ),
        check(
            "regions.cap-equivariance",
            "p ∈ N_{i+1} exactly when φ⁻¹(p) ∈ N_i, on 10⁴ random points",
            ANCHOR_MARKED,
            cap_equivariance,
        ),
        check(
            "weinstein.step1.configuration",
            "each f_i has one critical point, index 0, at q_i ∈ N_{i+1}, and projects from p_i ∈ N_i",
            ANCHOR_STEP1,
            step1_configuration,
        ),
        check(
            "weinstein.step1.equivariance",
            "f_{i+1}∘φ = f_i and X_{f_{i+1}}∘φ = dφ(X_{f_i}) within 1e-10",
            ANCHOR_STEP1,
            step1_equivariance,
        ),
    ];
    for &mode in modes {
        checks.push(check(
            format!("weinstein.step2.{mode}.critical-points"),
            format!("{mode} g_i: one nondegenerate critical point, index 0, in the interior of B_i"),
            ANCHOR_STEP2,
            move |ctx, e| step2_critical(ctx, e, mode),
        ));
    }
    checks.extend([
        check(
            "weinstein.step2.index-two-request",
            "an index-2 critical point of g_i in B_{i+1} is requested, but the constructed g_i has only its index-0 point",
            ANCHOR_STEP2,
            step2_index_two,
        ),
        check(
            "sphere.fs-area-whole",
            "Fubini–Study area of the sphere is 4π within 1e-6",
            ANCHOR_KAHLER,
            area_whole,
        ),
        check(
            "regions.sector-areas",
            "each sector B_i has Fubini–Study area 4π/3 within 1e-6",
            ANCHOR_SECTORS,
            sector_areas,
        ),
        check(
            "regions.sector-tiling",
            "every sampled point off the boundaries lies in exactly one B_i (10⁴ points)",
            ANCHOR_SECTORS,
            sector_tiling,
        ),
        check(
            "regions.sector-decomposition",
            "the sectors realize the genus-0 decomposition: one shared meridian per pair, the poles as triple points",
            ANCHOR_SECTORS,
            sector_decomposition,
        ),
        check(
            "regions.b3-printed-interval",
            "the printed third sector [20π/12, 24π/12] leaves [0, 4π/12) uncovered and has area 2π/3",
            ANCHOR_SECTORS,
            b3_printed_interval,
        ),
        check(
            "sphere.rotation-pullback",
            "rotations by 2π/3 and 4π/3 about the y-axis pull the Fubini–Study form back to itself within 1e-9",
            ANCHOR_ROTATION,
            rotation_pullback,
        ),
        check(
            "regions.sector-rotation",
            "the 2π/3 rotation about the z-axis carries B_i onto B_{i+1}",
            ANCHOR_SECTORS,
            sector_rotation,
        ),
        check(
            "weinstein.product-structure",
            "the Liouville field of f_i ⊕ g_i from the full 4×4 system equals the direct sum of the factor fields",
            ANCHOR_PRODUCT,
            product_structure,
        ),
    ]);
    for &mode in modes {
        for i in Part::ALL {
            checks.push(check(
                format!("weinstein.transversality.{mode}.x{i}"),
                format!("{mode} g_i: product Liouville field points strictly out of X{i} on every boundary stratum"),
                ANCHOR_OUTWARD,
                move |ctx, e| transversality(ctx, e, mode, i),
            ));
        }
    }
    checks
}

fn random_chart_point(rng: &mut ChaCha8Rng, radius: f64) -> ChartPoint {
    let r = radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..TAU);
    ChartPoint::new(r * t.cos(), r * t.sin())
}

fn chart_roundtrip(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let mut rng = ctx.rng("sphere.chart-roundtrip");
    let mut worst = 0.0_f64;
    let mut count = 0;
    for _ in 0..10 {
        let pole = random_sphere_point(&mut rng);
        for _ in 0..100 {
            let p = random_sphere_point(&mut rng);
            let back = inverse_stereographic(stereographic(p, pole)?, pole);
            worst = worst.max(back.distance(p));
            count += 1;
        }
    }
    Ok(e.status(Status::from_bool(worst < 1e-12))
        .num("max_error", worst)
        .with("points", count))
}

fn derivative_crosscheck(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let h = 1e-3;
    let tol = 10.0 * h * h;
    let f = fubini_study_potential();
    let mut rng = ctx.rng("sphere.derivative-crosscheck");
    let pts: Vec<ChartPoint> = (0..1000).map(|_| random_chart_point(&mut rng, 10.0)).collect();
    let errs = ctx.exec.map(&pts, |&p| {
        let [a, b] = f.gradient(p);
        let [c, d] = f.fd_gradient(p, h);
        let ha = f.hessian(p);
        let hf = f.fd_hessian(p, h);
        let grad = (a - c).abs().max((b - d).abs());
        let hess = (ha.uu - hf.uu)
            .abs()
            .max((ha.uv - hf.uv).abs())
            .max((ha.vv - hf.vv).abs());
        (grad, hess)
    });
    let grad = errs.iter().map(|x| x.0).fold(0.0, f64::max);
    let hess = errs.iter().map(|x| x.1).fold(0.0, f64::max);
    Ok(e.status(Status::from_bool(grad < tol && hess < tol))
        .num("max_gradient_error", grad)
        .num("max_hessian_error", hess)
        .num("tolerance", tol)
        .num("step", h))
}

fn fs_positivity(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let omega = omega_from_potential(&fubini_study_potential());
    let mut rng = ctx.rng("sphere.fs-positivity");
    let pts: Vec<ChartPoint> = (0..ctx.cfg.residual_points)
        .map(|_| random_chart_point(&mut rng, 10.0))
        .collect();
    let min = ctx
        .exec
        .map(&pts, |&p| omega.at(p))
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    Ok(e.status(Status::from_bool(min > 0.0))
        .num("min_density", min)
        .with("points", pts.len()))
}

fn exactness(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let f = fubini_study_potential();
    let eta = d_complex(&f);
    let omega = omega_from_potential(&f);
    let step = ctx.cfg.fd_step;
    let mut rng = ctx.rng("sphere.exactness");
    let pts: Vec<ChartPoint> = (0..ctx.cfg.residual_points)
        .map(|_| random_chart_point(&mut rng, 10.0))
        .collect();
    let vals = ctx.exec.map(&pts, |&p| {
        fd_exterior_derivative(&eta, p, step).map(|d| (d + omega.at(p)).abs())
    });
    let worst = vals
        .into_iter()
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(e.status(Status::from_bool(worst < 1e-5))
        .num("max_defect", worst)
        .num("step", step))
}

fn liouville_sweep(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let field = liouville_field(&fubini_study_potential());
    let step = ctx.cfg.fd_step;
    let tol = 100.0 * step * step;
    let mut rng = ctx.rng("weinstein.liouville-residual");
    let pts: Vec<ChartPoint> = (0..ctx.cfg.residual_points)
        .map(|_| random_chart_point(&mut rng, 10.0))
        .collect();
    let vals = ctx
        .exec
        .map(&pts, |&p| field.residual(p, step))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    let (mut worst, mut at) = (0.0, ChartPoint::ORIGIN);
    for (p, v) in pts.iter().zip(&vals) {
        if *v > worst {
            worst = *v;
            at = *p;
        }
    }
    Ok(e.status(Status::from_bool(worst < tol))
        .num("max_residual", worst)
        .with("worst_point", at)
        .num("tolerance", tol)
        .num("step", step)
        .with("points", pts.len()))
}

fn liouville_detector(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let p = ChartPoint::new(0.5, 0.5);
    let step = ctx.cfg.fd_step;
    let good = liouville_field(&fubini_study_potential());
    let bad = good.perturbed([0.1, 0.0]);
    let clean = good.residual(p, step)?;
    let defect = bad.residual(p, step)?;
    Ok(e.status(Status::from_bool(defect > 1e-3 && clean < 1e-6))
        .num("perturbed_residual", defect)
        .num("unperturbed_residual", clean))
}

fn seeds(ctx: &Context, salt: &str) -> Vec<ChartPoint> {
    let mut rng = ctx.rng(salt);
    (0..ctx.cfg.morse_seeds)
        .map(|_| ChartPoint::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
        .collect()
}

fn search(ctx: &Context, f: &PotentialField, salt: &str) -> CriticalPointSearch {
    find_critical_points(f, &seeds(ctx, salt), &NewtonOptions::default(), ctx.exec)
}

fn search_summary(e: CheckEntry, s: &CriticalPointSearch) -> CheckEntry {
    e.with("critical_points", &s.points)
        .with("converged_seeds", s.converged_seeds)
        .with("failed_seeds", s.failures.len())
}

fn morse_fubini_study(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let s = search(ctx, &fubini_study_potential(), "weinstein.morse.fubini-study");
    let ok = match s.points.as_slice() {
        [c] => {
            c.location.norm() < 1e-10
                && c.gradient_norm < 1e-10
                && c.index == 0
                && c.nondegenerate
                && c.eigenvalues.iter().all(|l| (l - 2.0).abs() < 1e-6)
        }
        _ => false,
    };
    Ok(search_summary(e.status(Status::from_bool(ok)), &s))
}

fn expected_marked(m: &MarkedPoints) -> f64 {
    let mut worst = 0.0_f64;
    let h = 3f64.sqrt() / 2.0;
    let closed = [
        (m.p[1], SpherePoint { x: -h, y: 0.0, z: -0.5 }),
        (m.p[2], SpherePoint { x: h, y: 0.0, z: -0.5 }),
        (m.q[1], SpherePoint { x: h, y: 0.0, z: 0.5 }),
        (m.q[2], SpherePoint { x: -h, y: 0.0, z: 0.5 }),
    ];
    for (a, b) in closed {
        worst = worst.max(a.distance(b));
    }
    for k in 0..2 {
        worst = worst.max(rotate_y(MARKED_ROTATION, m.p[k]).distance(m.p[k + 1]));
        worst = worst.max(rotate_y(MARKED_ROTATION, m.q[k]).distance(m.q[k + 1]));
    }
    worst
}

fn marked_points(_: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let m = default_marked_points();
    let rotation_error = expected_marked(&m);
    let mut angles: Vec<f64> = m
        .p
        .iter()
        .chain(&m.q)
        .map(|p| p.x.atan2(p.z).rem_euclid(TAU))
        .collect();
    angles.sort_by(f64::total_cmp);
    let spacing = angles
        .windows(2)
        .map(|w| (w[1] - w[0] - PI / 3.0).abs())
        .fold(0.0, f64::max);
    let on_circle = m.p.iter().chain(&m.q).all(|p| p.y == 0.0);
    let ok = rotation_error < 1e-14 && spacing < 1e-14 && on_circle && m.p[0] == SpherePoint::NORTH
        && m.q[0] == SpherePoint::SOUTH;
    Ok(e.status(Status::from_bool(ok))
        .num("rotation_error", rotation_error)
        .num("spacing_error", spacing))
}

fn marked_ledger(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let caps = default_caps(ctx.cfg.cap_radius)?;
    let table = default_marked_points().membership_table(&caps);
    let mut mismatches = Vec::new();
    let mut rows = serde_json::Map::new();
    for (label, part, inside) in &table {
        rows.insert(format!("{label}∈N{part}"), json!(inside));
        if *inside != MarkedPoints::prescribed(label, *part) {
            mismatches.push(format!("{label}∈N{part}"));
        }
    }
    Ok(e.status(Status::from_bool(table.len() == 18 && mismatches.is_empty()))
        .with("table", rows)
        .with("mismatches", mismatches)
        .num("cap_radius", ctx.cfg.cap_radius))
}

fn cap_disjoint(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let caps = default_caps(ctx.cfg.cap_radius)?;
    let mut min_gap = f64::INFINITY;
    for i in Part::ALL {
        let (a, b) = (caps[i.index()], caps[i.next().index()]);
        min_gap = min_gap.min(a.center.angle_to(b.center) - a.radius - b.radius);
    }
    Ok(e.status(Status::from_bool(min_gap > 0.0))
        .num("min_gap", min_gap))
}

fn cap_equivariance(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let caps = default_caps(ctx.cfg.cap_radius)?;
    let mut rng = ctx.rng("regions.cap-equivariance");
    let (mut tested, mut mismatches) = (0, 0);
    for _ in 0..10_000 {
        let p = random_sphere_point(&mut rng);
        let back = rotate_y(-MARKED_ROTATION, p);
        for i in Part::ALL {
            let here = caps[i.next().index()].classify(p, 1e-9);
            let there = caps[i.index()].classify(back, 1e-9);
            if here == Membership::Boundary || there == Membership::Boundary {
                continue;
            }
            tested += 1;
            if here != there {
                mismatches += 1;
            }
        }
    }
    Ok(e.status(Status::from_bool(mismatches == 0))
        .with("comparisons", tested)
        .with("mismatches", mismatches))
}

/// Finds the critical points of a charted potential and checks there is
/// exactly one, nondegenerate of index 0, at `expected` on the sphere.
fn charted_critical(
    ctx: &Context,
    p: &ChartedPotential,
    expected: SpherePoint,
    salt: &str,
) -> (bool, serde_json::Value) {
    let s = search(ctx, &p.field, salt);
    let ok = match s.points.as_slice() {
        [c] => {
            let at = p.chart.lift(c.location);
            c.index == 0 && c.nondegenerate && at.distance(expected) < 1e-10
        }
        _ => false,
    };
    let located: Vec<SpherePoint> = s.points.iter().map(|c| p.chart.lift(c.location)).collect();
    (
        ok,
        json!({
            "critical_points": located,
            "indices": s.points.iter().map(|c| c.index).collect::<Vec<_>>(),
            "eigenvalues": s.points.iter().map(|c| c.eigenvalues).collect::<Vec<_>>(),
            "converged_seeds": s.converged_seeds,
            "failed_seeds": s.failures.len(),
        }),
    )
}

fn step1_configuration(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let step1 = ctx.step1()?;
    let mut ok = true;
    let mut parts = serde_json::Map::new();
    for i in Part::ALL {
        let sp = step1.get(i);
        let (found, detail) =
            charted_critical(ctx, &sp.potential, sp.expected_critical, &format!("step1.f{i}"));
        let pole_in = step1.caps[i.index()].classify(sp.potential.chart.pole(), 0.0) == Membership::Interior;
        let crit_in =
            step1.caps[i.next().index()].classify(sp.expected_critical, 0.0) == Membership::Interior;
        ok &= found && pole_in && crit_in;
        parts.insert(
            format!("f{i}"),
            json!({
                "search": detail,
                "projection_point_in_N_i": pole_in,
                "critical_point_in_N_next": crit_in,
            }),
        );
    }
    Ok(e.status(Status::from_bool(ok)).with("parts", parts))
}

fn step1_equivariance(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let step1 = ctx.step1()?;
    let phi = y_rotation(MARKED_ROTATION);
    let mut rng = ctx.rng("weinstein.step1.equivariance");
    let (mut value_err, mut field_err, mut count) = (0.0_f64, 0.0_f64, 0);
    for i in Part::ALL {
        let (a, b) = (&step1.get(i).potential, &step1.get(i.next()).potential);
        let mut tested = 0;
        while tested < 300 {
            let p = random_sphere_point(&mut rng);
            if p.angle_to(a.chart.pole()) < 0.1 {
                continue;
            }
            let q = p.rotated(&phi);
            value_err = value_err.max((b.value(q)? - a.value(p)?).abs());
            let xa = phi * a.liouville_vector(p)?;
            let xb = b.liouville_vector(q)?;
            field_err = field_err.max((xb - xa).norm() / xa.norm().max(1.0));
            tested += 1;
        }
        count += tested;
    }
    Ok(e.status(Status::from_bool(value_err < 1e-10 && field_err < 1e-10))
        .num("max_value_error", value_err)
        .num("max_field_error", field_err)
        .with("points", count))
}

fn step2_critical(ctx: &Context, e: CheckEntry, mode: Step2Mode) -> Result<CheckEntry> {
    let step2 = ctx.step2(mode);
    let mut found_all = true;
    let mut memberships = Vec::new();
    let mut parts = serde_json::Map::new();
    for i in Part::ALL {
        let sp = step2.get(i);
        let (found, detail) =
            charted_critical(ctx, &sp.potential, sp.expected_critical, &format!("step2.{mode}.g{i}"));
        let m = step2.critical_membership(i);
        found_all &= found;
        memberships.push(m);
        parts.insert(
            format!("g{i}"),
            json!({
                "search": detail,
                "projection_point": sp.potential.chart.pole(),
                "critical_point_in_B_i": m,
            }),
        );
    }
    let status = if !found_all {
        Status::Fail
    } else if memberships.iter().all(|&m| m == Membership::Interior) {
        Status::Pass
    } else if mode == Step2Mode::PaperLiteral {
        // the south pole is a triple point of the sector decomposition
        Status::Flagged
    } else {
        Status::Fail
    };
    Ok(e.status(status).with("mode", mode).with("parts", parts))
}

fn step2_index_two(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let step2 = ctx.step2(Step2Mode::Corrected);
    let g1 = &step2.get(Part::One).potential;
    let s = search(ctx, &g1.field, "step2.index-two");
    let index_two = s.points.iter().filter(|c| c.index == 2).count();
    let index_zero = s.points.iter().filter(|c| c.index == 0).count();
    let status = if index_two == 0 && index_zero == 1 {
        Status::Flagged
    } else {
        Status::Fail
    };
    Ok(e.status(status)
        .with("index_zero_points", index_zero)
        .with("index_two_points", index_two))
}

/// Fubini–Study density relative to the round area form, evaluated in
/// whichever polar chart keeps `p` away from its projection point.
fn fs_density_on_sphere(omega: &crate::potential::TwoFormDensity, p: SpherePoint) -> f64 {
    let chart = if p.z > 0.0 {
        Chart::from_pole(SpherePoint::SOUTH)
    } else {
        Chart::north()
    };
    match chart.project(p) {
        Ok(c) => omega.at(c) / Chart::round_density(c),
        Err(_) => f64::NAN,
    }
}

fn fs_area(ctx: &Context, region: impl Fn(SpherePoint) -> bool + Sync + Send) -> Result<(f64, f64)> {
    let omega = omega_from_potential(&fubini_study_potential());
    let est = area_quadrature(
        region,
        |p| fs_density_on_sphere(&omega, p),
        &ctx.quadrature(),
        ctx.exec,
    )?;
    Ok((est.value, est.error))
}

fn area_whole(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let (value, error) = fs_area(ctx, |_| true)?;
    Ok(e.status(Status::from_bool((value - 4.0 * PI).abs() < 1e-6))
        .num("area", value)
        .num("error_estimate", error)
        .num("expected", 4.0 * PI))
}

fn sector_areas(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let mut areas = Vec::new();
    let mut errors = Vec::new();
    for b in ctx.sectors {
        let (v, err) = fs_area(ctx, move |p| b.contains(p))?;
        areas.push(v);
        errors.push(err);
    }
    let target = 4.0 * PI / 3.0;
    let ok = areas.iter().all(|a| (a - target).abs() < 1e-6);
    Ok(e.status(Status::from_bool(ok))
        .with("areas", &areas)
        .with("error_estimates", &errors)
        .num("expected", target)
        .with("b3_interval", ctx.cfg.b3_interval.to_string()))
}

fn sector_tiling(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let mut rng = ctx.rng("regions.sector-tiling");
    let (mut tested, mut uncovered, mut overlapping) = (0, 0, 0);
    for _ in 0..10_000 {
        let p = random_sphere_point(&mut rng);
        let m: Vec<Membership> = ctx.sectors.iter().map(|b| b.classify(p, 1e-9)).collect();
        if m.contains(&Membership::Boundary) {
            continue;
        }
        tested += 1;
        match m.iter().filter(|&&x| x == Membership::Interior).count() {
            0 => uncovered += 1,
            1 => {}
            _ => overlapping += 1,
        }
    }
    Ok(e.status(Status::from_bool(uncovered == 0 && overlapping == 0))
        .with("points", tested)
        .with("uncovered", uncovered)
        .with("overlapping", overlapping))
}

fn sector_decomposition(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let s = &ctx.sectors;
    let mut shared = [0usize; 3];
    for i in Part::ALL {
        let (a, b) = (s[i.index()], s[i.next().index()]);
        for ca in 0..2 {
            for cb in 0..2 {
                let d = (a.meridian(ca) - b.meridian(cb)).rem_euclid(TAU);
                if d.min(TAU - d) < 1e-12 {
                    shared[i.index()] += 1;
                }
            }
        }
    }
    let poles_are_triple = [SpherePoint::NORTH, SpherePoint::SOUTH]
        .iter()
        .all(|&p| s.iter().all(|b| b.classify(p, 0.0) == Membership::Boundary));
    let reference = build_surface_decomposition(0);
    let ok = shared.iter().all(|&n| n == 1)
        && poles_are_triple
        && reference.arcs_per_pair() == [1, 1, 1]
        && reference.vertex_count() == 2;
    Ok(e.status(Status::from_bool(ok))
        .with("shared_meridians_per_pair", shared)
        .with("poles_are_triple_points", poles_are_triple))
}

fn b3_printed_interval(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let printed = literal_b3();
    let (area, _) = fs_area(ctx, move |p| printed.contains(p))?;
    let gap = SpherePoint::from_angles(PI / 2.0, PI / 6.0);
    let gap_uncovered = !default_b(Part::One).contains(gap)
        && !default_b(Part::Two).contains(gap)
        && !printed.contains(gap);
    let status = if gap_uncovered && (area - 2.0 * PI / 3.0).abs() < 1e-6 {
        Status::Flagged
    } else {
        Status::Fail
    };
    Ok(e.status(status)
        .num("printed_area", area)
        .num("equal_share", 4.0 * PI / 3.0)
        .with("uncovered_azimuths", "[0, π/3)")
        .with("in_use", ctx.cfg.b3_interval.to_string()))
}

fn rotation_pullback(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let chart = Chart::north();
    let omega = omega_from_potential(&fubini_study_potential());
    let mut rng = ctx.rng("sphere.rotation-pullback");
    let mut worst = 0.0_f64;
    let mut count = 0;
    for alpha in [2.0 * PI / 3.0, 4.0 * PI / 3.0] {
        let r = y_rotation(alpha);
        let mut tested = 0;
        while tested < 1000 {
            let p = random_sphere_point(&mut rng);
            let q = p.rotated(&r);
            if p.angle_to(chart.pole()) < 1e-2 || q.angle_to(chart.pole()) < 1e-2 {
                continue;
            }
            let c = chart.project(p)?;
            let c2 = chart.project(q)?;
            let jac: Matrix2<f64> = chart.project_jacobian(q)? * r.matrix() * chart.lift_jacobian(c);
            let pulled = omega.at(c2) * jac.determinant();
            worst = worst.max((pulled - omega.at(c)).abs());
            tested += 1;
        }
        count += tested;
    }
    Ok(e.status(Status::from_bool(worst < 1e-9))
        .num("max_error", worst)
        .with("points", count))
}

fn sector_rotation(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let mut rng = ctx.rng("regions.sector-rotation");
    let (mut tested, mut mismatches) = (0, 0);
    for _ in 0..10_000 {
        let p = random_sphere_point(&mut rng);
        let q = rotate_z(SECTOR_ROTATION, p);
        for i in Part::ALL {
            let a = ctx.sectors[i.index()].classify(p, 1e-9);
            let b = ctx.sectors[i.next().index()].classify(q, 1e-9);
            if a == Membership::Boundary || b == Membership::Boundary {
                continue;
            }
            tested += 1;
            if a != b {
                mismatches += 1;
            }
        }
    }
    let r = z_rotation(SECTOR_ROTATION);
    let meridian_error = Part::ALL
        .iter()
        .map(|&i| {
            let m = SpherePoint::from_angles(PI / 2.0, ctx.sectors[i.index()].start).rotated(&r);
            let want = SpherePoint::from_angles(PI / 2.0, ctx.sectors[i.next().index()].start);
            m.distance(want)
        })
        .fold(0.0, f64::max);
    Ok(e.status(Status::from_bool(mismatches == 0 && meridian_error < 1e-12))
        .with("comparisons", tested)
        .with("mismatches", mismatches)
        .num("meridian_error", meridian_error))
}

fn product_structure(ctx: &Context, e: CheckEntry) -> Result<CheckEntry> {
    let step1 = ctx.step1()?;
    let step2 = ctx.step2(Step2Mode::Corrected);
    let mut rng = ctx.rng("weinstein.product-structure");
    let mut worst = 0.0_f64;
    let mut count = 0;
    for i in Part::ALL {
        let (f, g) = (&step1.get(i).potential, &step2.get(i).potential);
        for _ in 0..200 {
            let a = f.chart.project(random_sphere_point(&mut rng))?;
            let b = g.chart.project(random_sphere_point(&mut rng))?;
            let full = product_liouville(&f.field, &g.field, a, b)
                .ok_or_else(|| Error::Config("singular product form".into()))?;
            let xf = liouville_field(&f.field).at(a)?;
            let xg = liouville_field(&g.field).at(b)?;
            let direct = [xf[0], xf[1], xg[0], xg[1]];
            let scale = direct.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
            let err = full
                .iter()
                .zip(&direct)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            worst = worst.max(err / scale);
            count += 1;
        }
    }
    Ok(e.status(Status::from_bool(worst < 1e-12))
        .num("max_relative_error", worst)
        .with("points", count))
}

fn transversality(ctx: &Context, e: CheckEntry, mode: Step2Mode, i: Part) -> Result<CheckEntry> {
    let step1 = ctx.step1()?;
    let step2 = ctx.step2(mode);
    let r = check_transversality(
        i,
        &step1,
        &step2,
        ctx.cfg.samples_per_stratum,
        ctx.cfg.threshold,
        ctx.cfg.seed,
        ctx.exec,
    )?;
    let corners: usize = r.strata.iter().map(|s| s.corner_samples).sum();
    let meridian = |k: StratumKind| r.strata.iter().find(|s| s.kind == k);
    let tangent = [StratumKind::SectorBoundary, StratumKind::NextSectorBoundary]
        .iter()
        .filter_map(|&k| meridian(k))
        .all(|s| s.samples > 0 && s.max_abs_outwardness < 1e-9);
    let caps_pass = [StratumKind::CapComplementBoundary, StratumKind::NextCapBoundary]
        .iter()
        .filter_map(|&k| meridian(k))
        .all(|s| s.pass);
    let status = if corners > 0 {
        Status::Fail
    } else if r.pass {
        Status::Pass
    } else if mode == Step2Mode::PaperLiteral && tangent && caps_pass {
        // g_i is radial about the poles, so its field runs along the meridians
        Status::Flagged
    } else {
        Status::Fail
    };
    let strata: Vec<serde_json::Value> = r
        .strata
        .iter()
        .map(|s| {
            json!({
                "stratum": s.label,
                "kind": s.kind,
                "samples": s.samples,
                "resampled": s.resampled,
                "corner_samples": s.corner_samples,
                "min_outwardness": crate::report::number(s.min_outwardness),
                "max_abs_outwardness": crate::report::number(s.max_abs_outwardness),
                "min_location": s.min_location,
                "pass": s.pass,
            })
        })
        .collect();
    Ok(e.status(status)
        .with("mode", mode)
        .num("threshold", r.threshold)
        .with("meridian_tangency", tangent)
        .with("strata", strata))
}

/// Runs the pipeline and writes the configured outputs. Files appear only
/// once every rendering succeeded; nothing partial is left behind.
pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let report = full_verify(config);
    let mut staged = Vec::new();
    if let Some(path) = &config.json_out {
        staged.push((path.clone(), stage(path, report.to_canonical_json()?.as_bytes())?));
    }
    if let Some(path) = &config.markdown_out {
        staged.push((path.clone(), stage(path, report.to_markdown().as_bytes())?));
    }
    for (path, tmp) in staged {
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
    }
    Ok(report)
}

fn stage(path: &Path, bytes: &[u8]) -> Result<tempfile::NamedTempFile> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    Ok(tmp)
}
