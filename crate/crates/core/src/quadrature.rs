//! Adaptive Gauss–Kronrod quadrature and area integrals over sphere regions.
//!
//! Region integrals are iterated one-dimensional integrals in (θ₁, θ₂):
//! the outer integral runs over θ₂ and each outer node evaluates an inner
//! adaptive integral over θ₁. Indicator jumps along either direction are
//! localized by bisection. Inner integrals at one outer interval's nodes
//! are independent and run through [`Execution::map`].

use std::f64::consts::{PI, TAU};

use crate::exec::Execution;
use crate::sphere::SpherePoint;
use crate::{Error, Result};

// 15-point Kronrod nodes on [0, 1] (symmetric), with the embedded 7-point
// Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// The 15 Kronrod abscissae of [a, b], centre last.
fn kronrod_nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for j in 0..7 {
        x[2 * j] = c - h * XGK[j];
        x[2 * j + 1] = c + h * XGK[j];
    }
    x[14] = c;
    x
}

fn kronrod_panel(a: f64, b: f64, fx: &[f64]) -> Panel {
    let h = 0.5 * (b - a);
    let fc = fx[14];
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    for j in 0..7 {
        let (f1, f2) = (fx[2 * j], fx[2 * j + 1]);
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fx[2 * j] - mean).abs() + (fx[2 * j + 1] - mean).abs());
    }
    let value = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut error = ((resk - resg) * h).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Panel { a, b, value, error }
}

/// Globally adaptive G7–K15 on [a, b] with `initial` equal starting panels.
///
/// `eval` receives all 15 abscissae of one panel at a time and returns the
/// integrand there. Bisects the worst panel until the summed error falls
/// below `tol` or `max_panels` is reached; the latter is reported as
/// [`Error::QuadratureDiverged`].
pub fn integrate<F>(
    mut eval: F,
    a: f64,
    b: f64,
    initial: usize,
    tol: f64,
    max_panels: usize,
) -> Result<Estimate>
where
    F: FnMut(&[f64; 15]) -> Vec<f64>,
{
    let initial = initial.max(1);
    let mut panels: Vec<Panel> = Vec::with_capacity(initial * 4);
    let panel = |lo: f64, hi: f64, eval: &mut F| {
        let x = kronrod_nodes(lo, hi);
        kronrod_panel(lo, hi, &eval(&x))
    };
    for k in 0..initial {
        let lo = a + (b - a) * k as f64 / initial as f64;
        let hi = a + (b - a) * (k + 1) as f64 / initial as f64;
        panels.push(panel(lo, hi, &mut eval));
    }
    loop {
        let (value, error) = totals(&panels);
        if !value.is_finite() {
            return Err(Error::NonFinite {
                what: "quadrature integrand",
                u: a,
                v: b,
            });
        }
        if error <= tol {
            return Ok(Estimate { value, error });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(k, _)| k)
            .expect("at least one panel");
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if panels.len() >= max_panels || mid <= p.a || mid >= p.b {
            return Err(Error::QuadratureDiverged {
                value,
                estimate: error,
                target: tol,
            });
        }
        panels[worst] = panel(p.a, mid, &mut eval);
        panels.push(panel(mid, p.b, &mut eval));
    }
}

fn totals(panels: &[Panel]) -> (f64, f64) {
    // fixed order keeps the sum reproducible
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Absolute error target for the whole region integral.
    pub target: f64,
    pub polar_panels: usize,
    pub azimuth_panels: usize,
    pub max_panels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            target: 1e-7,
            polar_panels: 8,
            azimuth_panels: 16,
            max_panels: 4000,
        }
    }
}

/// ∫_region ρ dA over the unit sphere, where `density` is ρ relative to the
/// round area element (so ρ ≡ 1 gives the round area).
///
/// The reported error bounds the outer estimate plus 2π times the worst
/// inner estimate.
pub fn area_quadrature<R, D>(
    region: R,
    density: D,
    opts: &QuadratureOptions,
    exec: Execution,
) -> Result<Estimate>
where
    R: Fn(SpherePoint) -> bool + Sync + Send,
    D: Fn(SpherePoint) -> f64 + Sync + Send,
{
    let outer_tol = 0.5 * opts.target;
    let inner_tol = 0.25 * opts.target / TAU;
    let mut worst_inner = 0.0_f64;
    let mut inner_failure: Option<Error> = None;

    let outer = integrate(
        |azimuths| {
            let results = exec.map(azimuths, |&az| {
                integrate(
                    |polars| {
                        polars
                            .iter()
                            .map(|&t| {
                                let p = SpherePoint::from_angles(t, az);
                                if region(p) {
                                    density(p) * t.sin()
                                } else {
                                    0.0
                                }
                            })
                            .collect()
                    },
                    0.0,
                    PI,
                    opts.polar_panels,
                    inner_tol,
                    opts.max_panels,
                )
            });
            results
                .into_iter()
                .map(|r| match r {
                    Ok(e) => {
                        worst_inner = worst_inner.max(e.error);
                        e.value
                    }
                    Err(e) => {
                        inner_failure.get_or_insert(e);
                        f64::NAN
                    }
                })
                .collect()
        },
        0.0,
        TAU,
        opts.azimuth_panels,
        outer_tol,
        opts.max_panels,
    );
    if let Some(e) = inner_failure {
        return Err(e);
    }
    let outer = outer?;
    let error = outer.error + TAU * worst_inner;
    if error > opts.target {
        return Err(Error::QuadratureDiverged {
            value: outer.value,
            estimate: error,
            target: opts.target,
        });
    }
    Ok(Estimate {
        value: outer.value,
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn seq_map(f: impl Fn(f64) -> f64) -> impl FnMut(&[f64; 15]) -> Vec<f64> {
        move |xs| xs.iter().map(|&x| f(x)).collect()
    }

    #[test]
    fn smooth_integrals() {
        let e = integrate(seq_map(f64::sin), 0.0, PI, 1, 1e-12, 100).unwrap();
        assert_abs_diff_eq!(e.value, 2.0, epsilon = 1e-13);
        let e = integrate(seq_map(|x| (-x * x).exp()), -10.0, 10.0, 4, 1e-12, 200).unwrap();
        assert_abs_diff_eq!(e.value, PI.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn jump_is_localized() {
        let f = |x: f64| if x < 1.0 / 3.0 { 1.0 } else { 0.0 };
        let e = integrate(seq_map(f), 0.0, 1.0, 1, 1e-10, 500).unwrap();
        assert_abs_diff_eq!(e.value, 1.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn radial_fubini_study_integral() {
        // 2π ∫₀^∞ 4r/(1+r²)² dr = 4π, using r = tan(s/2)-free substitution r = t/(1-t)
        let f = |t: f64| {
            let r = t / (1.0 - t);
            let dr = 1.0 / ((1.0 - t) * (1.0 - t));
            let d = 1.0 + r * r;
            4.0 * r / (d * d) * dr
        };
        let e = integrate(seq_map(f), 0.0, 1.0, 2, 1e-13, 200).unwrap();
        assert_abs_diff_eq!(TAU * e.value, 4.0 * PI, epsilon = 1e-10);
    }

    #[test]
    fn panel_budget_exhaustion_is_reported() {
        let f = |x: f64| if x < 0.3 { 1.0 } else { 0.0 };
        let r = integrate(seq_map(f), 0.0, 1.0, 1, 1e-14, 8);
        assert!(matches!(r, Err(Error::QuadratureDiverged { .. })));
    }

    #[test]
    fn whole_and_empty_sphere() {
        let opts = QuadratureOptions::default();
        let whole = area_quadrature(|_| true, |_| 1.0, &opts, Execution::Sequential).unwrap();
        assert_abs_diff_eq!(whole.value, 4.0 * PI, epsilon = 1e-6);
        assert!(whole.error <= opts.target);
        let empty = area_quadrature(|_| false, |_| 1.0, &opts, Execution::Sequential).unwrap();
        assert_eq!(empty.value, 0.0);
    }

    #[test]
    fn cap_area_matches_closed_form() {
        let c = SpherePoint::new(0.3, -0.5, 0.8);
        let rho = 0.7;
        let opts = QuadratureOptions::default();
        let e = area_quadrature(|p| p.angle_to(c) < rho, |_| 1.0, &opts, Execution::Parallel)
            .unwrap();
        assert_abs_diff_eq!(e.value, TAU * (1.0 - rho.cos()), epsilon = 1e-6);
    }
}
