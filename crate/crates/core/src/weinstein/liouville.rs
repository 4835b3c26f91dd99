//! Liouville fields of J-convex potentials.
//!
//! In a chart with ω_f = λ du∧dv, λ = Δf, the gradient of f for the metric
//! ω_f(·, J·) is X = (f_u, f_v)/λ and ι_Xω_f = f_u dv − f_v du = −d^ℂf, so
//! d(ι_Xω_f) = ω_f.

use nalgebra::{Matrix4, Rotation3, Vector3, Vector4};

use crate::potential::{fd_exterior_derivative, OneFormField, PotentialField};
use crate::sphere::{Chart, ChartPoint, SpherePoint};
use crate::{Error, Result};

/// The Liouville field of a potential, optionally shifted by a constant
/// offset (used to check that the residual detects a wrong field).
#[derive(Debug, Clone)]
pub struct LiouvilleField {
    potential: PotentialField,
    offset: [f64; 2],
}

pub fn liouville_field(f: &PotentialField) -> LiouvilleField {
    LiouvilleField {
        potential: f.clone(),
        offset: [0.0, 0.0],
    }
}

impl LiouvilleField {
    pub fn potential(&self) -> &PotentialField {
        &self.potential
    }

    /// The field X + `offset`, no longer Liouville.
    pub fn perturbed(&self, offset: [f64; 2]) -> LiouvilleField {
        LiouvilleField {
            potential: self.potential.clone(),
            offset: [self.offset[0] + offset[0], self.offset[1] + offset[1]],
        }
    }

    /// ω_f density λ = Δf at `p`; errors where f fails to be J-convex.
    pub fn density(&self, p: ChartPoint) -> Result<f64> {
        let lambda = self.potential.hessian(p).trace();
        if lambda > 0.0 && lambda.is_finite() {
            Ok(lambda)
        } else {
            Err(Error::Degenerate {
                density: lambda,
                u: p.u,
                v: p.v,
            })
        }
    }

    pub fn at(&self, p: ChartPoint) -> Result<[f64; 2]> {
        let lambda = self.density(p)?;
        let [fu, fv] = self.potential.gradient(p);
        Ok([
            fu / lambda + self.offset[0],
            fv / lambda + self.offset[1],
        ])
    }

    /// ι_Xω_f = λ(X_u dv − X_v du), evaluated pointwise. Degenerate points
    /// give NaN coefficients, which the exterior derivative reports.
    pub fn contraction(&self) -> OneFormField {
        let field = self.clone();
        OneFormField::new(move |p| match (field.at(p), field.density(p)) {
            (Ok([xu, xv]), Ok(lambda)) => [-lambda * xv, lambda * xu],
            _ => [f64::NAN, f64::NAN],
        })
    }

    /// |d(ι_Xω) − ω| at `p` with centered differences of size `step`.
    pub fn residual(&self, p: ChartPoint, step: f64) -> Result<f64> {
        let lambda = self.density(p)?;
        let d_eta = fd_exterior_derivative(&self.contraction(), p, step)?;
        Ok((d_eta - lambda).abs())
    }
}

/// |d(ι_Xω_f) − ω_f| at `p` for the Liouville field of `f`.
pub fn liouville_residual(f: &PotentialField, p: ChartPoint, step: f64) -> Result<f64> {
    liouville_field(f).residual(p, step)
}

/// A potential living in a stereographic chart of the sphere. It is defined
/// on the sphere minus the chart's projection point.
#[derive(Debug, Clone)]
pub struct ChartedPotential {
    pub chart: Chart,
    pub field: PotentialField,
}

impl ChartedPotential {
    pub fn new(chart: Chart, field: PotentialField) -> Self {
        ChartedPotential { chart, field }
    }

    /// The same potential composed with r⁻¹.
    pub fn transported(&self, r: &Rotation3<f64>) -> Self {
        ChartedPotential {
            chart: self.chart.transported(r),
            field: self.field.clone(),
        }
    }

    pub fn value(&self, p: SpherePoint) -> Result<f64> {
        Ok(self.field.value(self.chart.project(p)?))
    }

    /// The Liouville field at `p` as an ambient tangent vector.
    pub fn liouville_vector(&self, p: SpherePoint) -> Result<Vector3<f64>> {
        let c = self.chart.project(p)?;
        let [xu, xv] = liouville_field(&self.field).at(c)?;
        Ok(self.chart.lift_jacobian(c) * nalgebra::Vector2::new(xu, xv))
    }
}

/// Liouville field of a potential F on ℝ⁴ = ℂ² with the standard complex
/// structure, from its gradient and Hessian at one point.
///
/// With α = dF∘J = Σ F_{y_j} dx_j − F_{x_j} dy_j in coordinates
/// (x₁, y₁, x₂, y₂), ω_F = −dα has matrix entries −(∂_a α_b − ∂_b α_a), and X
/// solves ι_Xω_F = −α. Returns `None` when ω_F is singular.
pub fn liouville_from_jet(gradient: [f64; 4], hessian: &Matrix4<f64>) -> Option<[f64; 4]> {
    let alpha = Vector4::new(gradient[1], -gradient[0], gradient[3], -gradient[2]);
    // ∂_a α_b for b = x_j is H[a][y_j]; for b = y_j it is −H[a][x_j]
    let mut d_alpha = Matrix4::zeros();
    for a in 0..4 {
        for j in 0..2 {
            d_alpha[(a, 2 * j)] = hessian[(a, 2 * j + 1)];
            d_alpha[(a, 2 * j + 1)] = -hessian[(a, 2 * j)];
        }
    }
    let omega = -(d_alpha - d_alpha.transpose());
    // (ι_Xω)_b = Σ_a X_a ω_ab
    let x = omega.transpose().lu().solve(&(-alpha))?;
    Some([x[0], x[1], x[2], x[3]])
}

/// Liouville field of f ⊕ g on a product of two charts, computed by solving
/// the full four-dimensional system with block-diagonal jet.
pub fn product_liouville(
    f: &PotentialField,
    g: &PotentialField,
    a: ChartPoint,
    b: ChartPoint,
) -> Option<[f64; 4]> {
    let [fu, fv] = f.gradient(a);
    let [gu, gv] = g.gradient(b);
    let hf = f.hessian(a);
    let hg = g.hessian(b);
    let mut h = Matrix4::zeros();
    h[(0, 0)] = hf.uu;
    h[(0, 1)] = hf.uv;
    h[(1, 0)] = hf.uv;
    h[(1, 1)] = hf.vv;
    h[(2, 2)] = hg.uu;
    h[(2, 3)] = hg.uv;
    h[(3, 2)] = hg.uv;
    h[(3, 3)] = hg.vv;
    liouville_from_jet([fu, fv, gu, gv], &h)
}
