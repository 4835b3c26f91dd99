//! Potentials on a chart and the forms built from them.
//!
//! The chart carries the standard complex structure J∂u = ∂v, J∂v = −∂u.
//! For a potential f:
//!
//! * d^ℂf = df∘J = f_v du − f_u dv,
//! * ω_f = −d(d^ℂf) = (f_uu + f_vv) du∧dv.

use std::fmt;
use std::sync::Arc;

use crate::sphere::ChartPoint;
use crate::{Error, Result};

/// Default step for centered finite differences.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference { step: f64 },
}

/// Symmetric 2×2 Hessian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hessian2 {
    pub uu: f64,
    pub uv: f64,
    pub vv: f64,
}

impl Hessian2 {
    pub fn trace(&self) -> f64 {
        self.uu + self.vv
    }

    pub fn det(&self) -> f64 {
        self.uu * self.vv - self.uv * self.uv
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let mean = 0.5 * (self.uu + self.vv);
        let half_diff = 0.5 * (self.uu - self.vv);
        let r = half_diff.hypot(self.uv);
        [mean - r, mean + r]
    }

    /// Solves H x = b, or `None` when H is numerically singular.
    pub fn solve(&self, b: [f64; 2]) -> Option<[f64; 2]> {
        let det = self.det();
        let scale = self.uu.abs().max(self.vv.abs()).max(self.uv.abs());
        if !(det.abs() > 1e-14 * scale * scale) || !det.is_finite() {
            return None;
        }
        Some([
            (self.vv * b[0] - self.uv * b[1]) / det,
            (self.uu * b[1] - self.uv * b[0]) / det,
        ])
    }
}

type ScalarFn = Arc<dyn Fn(ChartPoint) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum PotentialKind {
    /// log(1 + u² + v²)
    FubiniStudy,
    /// a·u² + b·v²
    Quadratic { a: f64, b: f64 },
    /// a·u + b·v
    Linear { a: f64, b: f64 },
    /// Arbitrary function; derivatives always by finite differences.
    Custom { name: String, f: ScalarFn },
}

impl fmt::Debug for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialKind::FubiniStudy => write!(f, "FubiniStudy"),
            PotentialKind::Quadratic { a, b } => write!(f, "Quadratic({a}, {b})"),
            PotentialKind::Linear { a, b } => write!(f, "Linear({a}, {b})"),
            PotentialKind::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// A real function on a chart with first and second derivatives.
#[derive(Debug, Clone)]
pub struct PotentialField {
    kind: PotentialKind,
    mode: DerivativeMode,
}

pub fn fubini_study_potential() -> PotentialField {
    PotentialField::new(PotentialKind::FubiniStudy)
}

impl PotentialField {
    pub fn new(kind: PotentialKind) -> Self {
        let mode = match kind {
            PotentialKind::Custom { .. } => DerivativeMode::FiniteDifference {
                step: DEFAULT_FD_STEP,
            },
            _ => DerivativeMode::Analytic,
        };
        PotentialField { kind, mode }
    }

    pub fn quadratic(a: f64, b: f64) -> Self {
        Self::new(PotentialKind::Quadratic { a, b })
    }

    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(PotentialKind::Linear { a, b })
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(ChartPoint) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(PotentialKind::Custom {
            name: name.into(),
            f: Arc::new(f),
        })
    }

    /// Switch derivative mode. Custom potentials stay on finite differences.
    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        if !matches!(self.kind, PotentialKind::Custom { .. }) || mode != DerivativeMode::Analytic {
            self.mode = mode;
        }
        self
    }

    pub fn kind(&self) -> &PotentialKind {
        &self.kind
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn value(&self, p: ChartPoint) -> f64 {
        let (u, v) = (p.u, p.v);
        match &self.kind {
            PotentialKind::FubiniStudy => (u * u + v * v).ln_1p(),
            PotentialKind::Quadratic { a, b } => a * u * u + b * v * v,
            PotentialKind::Linear { a, b } => a * u + b * v,
            PotentialKind::Custom { f, .. } => f(p),
        }
    }

    /// (f_u, f_v)
    pub fn gradient(&self, p: ChartPoint) -> [f64; 2] {
        match self.mode {
            DerivativeMode::Analytic => self.analytic_gradient(p),
            DerivativeMode::FiniteDifference { step } => self.fd_gradient(p, step),
        }
    }

    pub fn hessian(&self, p: ChartPoint) -> Hessian2 {
        match self.mode {
            DerivativeMode::Analytic => self.analytic_hessian(p),
            DerivativeMode::FiniteDifference { step } => self.fd_hessian(p, step),
        }
    }

    fn analytic_gradient(&self, p: ChartPoint) -> [f64; 2] {
        let (u, v) = (p.u, p.v);
        match &self.kind {
            PotentialKind::FubiniStudy => {
                let s = 1.0 + u * u + v * v;
                [2.0 * u / s, 2.0 * v / s]
            }
            PotentialKind::Quadratic { a, b } => [2.0 * a * u, 2.0 * b * v],
            PotentialKind::Linear { a, b } => [*a, *b],
            PotentialKind::Custom { .. } => self.fd_gradient(p, DEFAULT_FD_STEP),
        }
    }

    fn analytic_hessian(&self, p: ChartPoint) -> Hessian2 {
        let (u, v) = (p.u, p.v);
        match &self.kind {
            PotentialKind::FubiniStudy => {
                let s = 1.0 + u * u + v * v;
                let s2 = s * s;
                Hessian2 {
                    uu: 2.0 * (1.0 - u * u + v * v) / s2,
                    uv: -4.0 * u * v / s2,
                    vv: 2.0 * (1.0 + u * u - v * v) / s2,
                }
            }
            PotentialKind::Quadratic { a, b } => Hessian2 {
                uu: 2.0 * a,
                uv: 0.0,
                vv: 2.0 * b,
            },
            PotentialKind::Linear { .. } => Hessian2 {
                uu: 0.0,
                uv: 0.0,
                vv: 0.0,
            },
            PotentialKind::Custom { .. } => self.fd_hessian(p, DEFAULT_FD_STEP),
        }
    }

    /// Centered-difference gradient, O(h²).
    pub fn fd_gradient(&self, p: ChartPoint, h: f64) -> [f64; 2] {
        let f = |du, dv| self.value(p.offset(du, dv));
        [
            (f(h, 0.0) - f(-h, 0.0)) / (2.0 * h),
            (f(0.0, h) - f(0.0, -h)) / (2.0 * h),
        ]
    }

    /// Centered-difference Hessian, O(h²).
    pub fn fd_hessian(&self, p: ChartPoint, h: f64) -> Hessian2 {
        let f = |du, dv| self.value(p.offset(du, dv));
        let f0 = f(0.0, 0.0);
        let h2 = h * h;
        Hessian2 {
            uu: (f(h, 0.0) - 2.0 * f0 + f(-h, 0.0)) / h2,
            vv: (f(0.0, h) - 2.0 * f0 + f(0.0, -h)) / h2,
            uv: (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h2),
        }
    }
}

type PairFn = Arc<dyn Fn(ChartPoint) -> [f64; 2] + Send + Sync>;

/// A one-form a du + b dv, evaluated as (a, b).
#[derive(Clone)]
pub struct OneFormField(PairFn);

impl OneFormField {
    pub fn new(f: impl Fn(ChartPoint) -> [f64; 2] + Send + Sync + 'static) -> Self {
        OneFormField(Arc::new(f))
    }

    pub fn at(&self, p: ChartPoint) -> [f64; 2] {
        (self.0)(p)
    }
}

/// The coefficient λ of a two-form λ du∧dv.
#[derive(Clone)]
pub struct TwoFormDensity(ScalarFn);

impl TwoFormDensity {
    pub fn new(f: impl Fn(ChartPoint) -> f64 + Send + Sync + 'static) -> Self {
        TwoFormDensity(Arc::new(f))
    }

    pub fn at(&self, p: ChartPoint) -> f64 {
        (self.0)(p)
    }
}

/// d^ℂf = f_v du − f_u dv.
pub fn d_complex(f: &PotentialField) -> OneFormField {
    let f = f.clone();
    OneFormField::new(move |p| {
        let [fu, fv] = f.gradient(p);
        [fv, -fu]
    })
}

/// ω_f = −d(d^ℂf), whose density in the chart is the Laplacian of f.
pub fn omega_from_potential(f: &PotentialField) -> TwoFormDensity {
    let f = f.clone();
    TwoFormDensity::new(move |p| f.hessian(p).trace())
}

/// Centered-difference approximation of dη = (∂b/∂u − ∂a/∂v) du∧dv at `p`
/// for η = a du + b dv.
pub fn fd_exterior_derivative(eta: &OneFormField, p: ChartPoint, step: f64) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidStep(step));
    }
    let [_, b_plus] = eta.at(p.offset(step, 0.0));
    let [_, b_minus] = eta.at(p.offset(-step, 0.0));
    let [a_plus, _] = eta.at(p.offset(0.0, step));
    let [a_minus, _] = eta.at(p.offset(0.0, -step));
    let value = (b_plus - b_minus - a_plus + a_minus) / (2.0 * step);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite {
            what: "exterior derivative",
            u: p.u,
            v: p.v,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fubini_study_values() {
        let f = fubini_study_potential();
        assert_eq!(f.value(ChartPoint::ORIGIN), 0.0);
        assert_abs_diff_eq!(f.value(ChartPoint::new(1.0, 0.0)), 0.693147, epsilon = 1e-6);
        assert_abs_diff_eq!(f.value(ChartPoint::new(1.0, 0.0)), 2f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn fubini_study_hessian_at_origin_matches_differences() {
        let f = fubini_study_potential();
        let analytic = f.hessian(ChartPoint::ORIGIN);
        let fd = f.fd_hessian(ChartPoint::ORIGIN, 1e-4);
        assert_eq!(analytic, Hessian2 { uu: 2.0, uv: 0.0, vv: 2.0 });
        assert_abs_diff_eq!(fd.uu, 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(fd.vv, 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(fd.uv, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn d_complex_examples() {
        let fs = fubini_study_potential();
        assert_eq!(d_complex(&fs).at(ChartPoint::ORIGIN), [0.0, -0.0]);
        let at = d_complex(&fs).at(ChartPoint::new(1.0, 0.0));
        assert_abs_diff_eq!(at[0], 0.0);
        assert_abs_diff_eq!(at[1], -1.0, epsilon = 1e-15);
        let lin = PotentialField::linear(1.0, 0.0);
        for p in [ChartPoint::new(3.0, -2.0), ChartPoint::new(-0.1, 7.0)] {
            assert_eq!(d_complex(&lin).at(p), [0.0, -1.0]);
        }
    }

    #[test]
    fn omega_examples() {
        let fs = omega_from_potential(&fubini_study_potential());
        assert_abs_diff_eq!(fs.at(ChartPoint::ORIGIN), 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fs.at(ChartPoint::new(1.0, 0.0)), 1.0, epsilon = 1e-15);
        let r2 = omega_from_potential(&PotentialField::quadratic(1.0, 1.0));
        assert_eq!(r2.at(ChartPoint::new(5.0, -3.0)), 4.0);
    }

    #[test]
    fn omega_matches_finite_difference_laplacian() {
        // oracle: five-point Laplacian of log(1+r²) straight from its formula
        let f = |u: f64, v: f64| (u * u + v * v).ln_1p();
        let h = 1e-3;
        let lap = |u: f64, v: f64| {
            (f(u + h, v) + f(u - h, v) + f(u, v + h) + f(u, v - h) - 4.0 * f(u, v)) / (h * h)
        };
        let omega = omega_from_potential(&fubini_study_potential());
        assert_abs_diff_eq!(lap(0.0, 0.0), 4.0, epsilon = 1e-5);
        assert_abs_diff_eq!(lap(1.0, 0.0), 1.0, epsilon = 1e-5);
        for (u, v) in [(0.3, 0.4), (-2.0, 1.5), (0.0, 3.0)] {
            assert_abs_diff_eq!(omega.at(ChartPoint::new(u, v)), lap(u, v), epsilon = 1e-5);
        }
    }

    #[test]
    fn exterior_derivative_examples() {
        let area = OneFormField::new(|p| [-p.v / 2.0, p.u / 2.0]);
        let du = OneFormField::new(|_| [1.0, 0.0]);
        for p in [ChartPoint::ORIGIN, ChartPoint::new(2.0, -5.0)] {
            assert_abs_diff_eq!(fd_exterior_derivative(&area, p, 1e-4).unwrap(), 1.0, epsilon = 1e-10);
            assert_eq!(fd_exterior_derivative(&du, p, 1e-4).unwrap(), 0.0);
        }
        let eta = d_complex(&fubini_study_potential());
        let d = fd_exterior_derivative(&eta, ChartPoint::new(0.3, 0.4), 1e-4).unwrap();
        // −4/(1+0.25)² = −2.56
        assert_abs_diff_eq!(d, -2.56, epsilon = 1e-6);
    }

    #[test]
    fn exterior_derivative_errors() {
        let eta = OneFormField::new(|p| [0.0, 1.0 / p.u]);
        assert!(matches!(
            fd_exterior_derivative(&eta, ChartPoint::ORIGIN, 0.0),
            Err(Error::InvalidStep(_))
        ));
        let bad = OneFormField::new(|p| [0.0, (p.u - 1e-4).ln()]);
        assert!(matches!(
            fd_exterior_derivative(&bad, ChartPoint::ORIGIN, 1e-4),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn hessian_eigen_and_solve() {
        let h = Hessian2 { uu: 2.0, uv: 1.0, vv: 2.0 };
        assert_eq!(h.eigenvalues(), [1.0, 3.0]);
        let x = h.solve([3.0, 3.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-15);
        assert!(Hessian2 { uu: 1.0, uv: 1.0, vv: 1.0 }.solve([1.0, 0.0]).is_none());
    }

    #[test]
    fn custom_potentials_use_differences() {
        let f = PotentialField::custom("cubic", |p| p.u * p.u * p.u);
        assert!(matches!(f.mode(), DerivativeMode::FiniteDifference { .. }));
        let f = f.with_mode(DerivativeMode::Analytic);
        assert!(matches!(f.mode(), DerivativeMode::FiniteDifference { .. }));
        let g = f.gradient(ChartPoint::new(2.0, 0.0));
        assert_abs_diff_eq!(g[0], 12.0, epsilon = 1e-6);
    }
}
