//! Points on the unit sphere, stereographic charts and rotations.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix2x3, Matrix3x2, Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A point on the unit sphere in ambient coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    pub const NORTH: SpherePoint = SpherePoint {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };
    pub const SOUTH: SpherePoint = SpherePoint {
        x: 0.0,
        y: 0.0,
        z: -1.0,
    };

    /// Normalizes `(x, y, z)` onto the sphere.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self::from_vector(&Vector3::new(x, y, z))
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        let n = v.normalize();
        SpherePoint {
            x: n.x,
            y: n.y,
            z: n.z,
        }
    }

    /// `polar` = θ₁ ∈ [0, π] from the +z axis, `azimuth` = θ₂.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        let (s1, c1) = polar.sin_cos();
        let (s2, c2) = azimuth.sin_cos();
        SpherePoint {
            x: s1 * c2,
            y: s1 * s2,
            z: c1,
        }
    }

    pub fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn polar(self) -> f64 {
        self.x.hypot(self.y).atan2(self.z)
    }

    /// θ₂ in [0, 2π). Zero at the poles, where it is undefined.
    pub fn azimuth(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            (a + TAU).min(TAU.next_down())
        } else {
            a
        }
    }

    pub fn dot(self, other: SpherePoint) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Great-circle distance, accurate for nearby and antipodal points alike.
    pub fn angle_to(self, other: SpherePoint) -> f64 {
        let a = self.to_vector();
        let b = other.to_vector();
        a.cross(&b).norm().atan2(a.dot(&b))
    }

    pub fn antipode(self) -> SpherePoint {
        SpherePoint {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn rotated(self, r: &Rotation3<f64>) -> SpherePoint {
        SpherePoint::from_vector(&(r * self.to_vector()))
    }

    pub fn distance(self, other: SpherePoint) -> f64 {
        (self.to_vector() - other.to_vector()).norm()
    }

    /// Unit vector e_θ₂ = (−sin θ₂, cos θ₂, 0); tangent off the poles.
    pub fn azimuthal_direction(self) -> Vector3<f64> {
        let a = self.y.atan2(self.x);
        Vector3::new(-a.sin(), a.cos(), 0.0)
    }
}

/// A point of a stereographic chart, z = u + iv.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub u: f64,
    pub v: f64,
}

impl ChartPoint {
    pub const ORIGIN: ChartPoint = ChartPoint { u: 0.0, v: 0.0 };

    pub fn new(u: f64, v: f64) -> Self {
        ChartPoint { u, v }
    }

    pub fn norm_sqr(self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    pub fn norm(self) -> f64 {
        self.u.hypot(self.v)
    }

    pub fn offset(self, du: f64, dv: f64) -> ChartPoint {
        ChartPoint {
            u: self.u + du,
            v: self.v + dv,
        }
    }

    pub fn distance(self, other: ChartPoint) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }
}

/// Rotation about the y-axis: (x, z) ↦ (x cos α + z sin α, −x sin α + z cos α).
pub fn y_rotation(angle: f64) -> Rotation3<f64> {
    Rotation3::from_axis_angle(&Vector3::y_axis(), angle)
}

/// Rotation about the z-axis, θ₂ ↦ θ₂ + α.
pub fn z_rotation(angle: f64) -> Rotation3<f64> {
    Rotation3::from_axis_angle(&Vector3::z_axis(), angle)
}

pub fn rotate_y(angle: f64, p: SpherePoint) -> SpherePoint {
    p.rotated(&y_rotation(angle))
}

pub fn rotate_z(angle: f64, p: SpherePoint) -> SpherePoint {
    p.rotated(&z_rotation(angle))
}

/// Stereographic chart of the sphere minus `pole`.
///
/// A chart is a rotation `to_standard` taking the pole to the north pole,
/// followed by the standard projection (x, y, z) ↦ (x, y)/(1 − z). The chart
/// origin is the antipode of the pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    pole: SpherePoint,
    to_standard: Rotation3<f64>,
}

impl Chart {
    pub fn north() -> Self {
        Chart {
            pole: SpherePoint::NORTH,
            to_standard: Rotation3::identity(),
        }
    }

    /// Chart projecting from `pole`, using the minimal rotation onto the
    /// north pole (a half turn about x when `pole` is the south pole).
    pub fn from_pole(pole: SpherePoint) -> Self {
        let to_standard = Rotation3::rotation_between(&pole.to_vector(), &Vector3::z())
            .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::x_axis(), PI));
        Chart { pole, to_standard }
    }

    /// The chart `self ∘ r⁻¹`, projecting from `r(pole)`. Transporting a
    /// chart this way makes `f ∘ r⁻¹` read the same numbers in the new chart
    /// as `f` in the old one.
    pub fn transported(&self, r: &Rotation3<f64>) -> Self {
        Chart {
            pole: self.pole.rotated(r),
            to_standard: self.to_standard * r.inverse(),
        }
    }

    pub fn pole(&self) -> SpherePoint {
        self.pole
    }

    /// The sphere point at the chart origin.
    pub fn center(&self) -> SpherePoint {
        self.pole.antipode()
    }

    pub fn rotation(&self) -> &Rotation3<f64> {
        &self.to_standard
    }

    pub fn project(&self, p: SpherePoint) -> Result<ChartPoint> {
        if p.distance(self.pole) < 1e-12 {
            return Err(Error::ProjectionPoint);
        }
        let q = self.to_standard * p.to_vector();
        let rho2 = q.x * q.x + q.y * q.y;
        // x/(1−z) = x(1+z)/(x²+y²) avoids cancellation in the upper hemisphere
        let scale = if q.z > 0.0 {
            (1.0 + q.z) / rho2
        } else {
            1.0 / (1.0 - q.z)
        };
        let c = ChartPoint::new(q.x * scale, q.y * scale);
        if c.u.is_finite() && c.v.is_finite() {
            Ok(c)
        } else {
            Err(Error::ProjectionPoint)
        }
    }

    pub fn lift(&self, c: ChartPoint) -> SpherePoint {
        let r2 = c.norm_sqr();
        let d = 1.0 + r2;
        let s = Vector3::new(2.0 * c.u / d, 2.0 * c.v / d, (r2 - 1.0) / d);
        SpherePoint::from_vector(&self.to_standard.inverse_transform_vector(&s))
    }

    /// Ambient images of ∂/∂u and ∂/∂v at `c` (columns).
    pub fn lift_jacobian(&self, c: ChartPoint) -> Matrix3x2<f64> {
        let (u, v) = (c.u, c.v);
        let d = 1.0 + u * u + v * v;
        let d2 = d * d;
        let std = Matrix3x2::new(
            2.0 * (1.0 - u * u + v * v) / d2,
            -4.0 * u * v / d2,
            -4.0 * u * v / d2,
            2.0 * (1.0 + u * u - v * v) / d2,
            4.0 * u / d2,
            4.0 * v / d2,
        );
        self.to_standard.inverse().matrix() * std
    }

    /// Derivative of the chart map at `p`, acting on ambient tangent vectors.
    pub fn project_jacobian(&self, p: SpherePoint) -> Result<Matrix2x3<f64>> {
        if p.distance(self.pole) < 1e-12 {
            return Err(Error::ProjectionPoint);
        }
        let q = self.to_standard * p.to_vector();
        let w = 1.0 - q.z;
        let std = Matrix2x3::new(
            1.0 / w,
            0.0,
            q.x / (w * w),
            0.0,
            1.0 / w,
            q.y / (w * w),
        );
        Ok(std * self.to_standard.matrix())
    }

    /// Density of the round area form in this chart, 4/(1+|z|²)².
    pub fn round_density(c: ChartPoint) -> f64 {
        let d = 1.0 + c.norm_sqr();
        4.0 / (d * d)
    }
}

pub fn stereographic(p: SpherePoint, pole: SpherePoint) -> Result<ChartPoint> {
    Chart::from_pole(pole).project(p)
}

pub fn inverse_stereographic(c: ChartPoint, pole: SpherePoint) -> SpherePoint {
    Chart::from_pole(pole).lift(c)
}

/// Unit tangent at `p` pointing along the great circle towards `target`.
/// Zero when `target` is `p` or its antipode.
pub fn direction_towards(p: SpherePoint, target: SpherePoint) -> Vector3<f64> {
    let x = p.to_vector();
    let t = target.to_vector();
    let tangential = t - x * x.dot(&t);
    let n = tangential.norm();
    if n < 1e-15 {
        Vector3::zeros()
    } else {
        tangential / n
    }
}

/// Orthonormal tangent frame (e₁, e₂) at `p`, right-handed with the outward
/// normal.
pub fn tangent_frame(p: SpherePoint) -> (Vector3<f64>, Vector3<f64>) {
    let n = p.to_vector();
    let seed = if n.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = Unit::new_normalize(seed - n * n.dot(&seed)).into_inner();
    let e2 = n.cross(&e1);
    (e1, e2)
}
