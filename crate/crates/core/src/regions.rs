//! The disks N_i on the first sphere factor and the sectors B_i on the
//! second, with membership tests and boundary sampling.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::sphere::{rotate_y, tangent_frame, SpherePoint};
use crate::{Error, Part, Result};

/// Rotation angle about the y-axis permuting the N_i and the marked points.
pub const MARKED_ROTATION: f64 = 4.0 * PI / 3.0;

/// Rotation angle about the z-axis permuting the sectors B_i.
pub const SECTOR_ROTATION: f64 = 2.0 * PI / 3.0;

/// Default pole exclusion for sampling meridian boundaries.
pub const DEFAULT_POLE_MARGIN: f64 = PI / 36.0;

/// Default geodesic radius of the N_i.
pub const DEFAULT_CAP_RADIUS: f64 = PI / 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

/// A boundary point with the outward unit normal of its region, tangent to
/// the sphere. `component` numbers the boundary curve it lies on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub point: SpherePoint,
    pub outward_normal: Vector3<f64>,
    pub component: usize,
}

pub trait Region: Send + Sync {
    /// Classify `p`, treating points within `tol` (radians) of the boundary
    /// as boundary points.
    fn classify(&self, p: SpherePoint, tol: f64) -> Membership;

    fn contains(&self, p: SpherePoint) -> bool {
        self.classify(p, 0.0) != Membership::Exterior
    }

    fn sample_boundary(&self, n: usize) -> Vec<BoundarySample>;
}

/// Open geodesic cap {p : angle(center, p) < radius}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapRegion {
    pub center: SpherePoint,
    pub radius: f64,
}

impl CapRegion {
    pub fn new(center: SpherePoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < PI) {
            return Err(Error::Config(format!(
                "cap radius {radius} outside (0, π)"
            )));
        }
        Ok(CapRegion { center, radius })
    }

    pub fn area(&self) -> f64 {
        TAU * (1.0 - self.radius.cos())
    }

    pub fn disjoint_from(&self, other: &CapRegion) -> bool {
        self.center.angle_to(other.center) > self.radius + other.radius
    }
}

impl Region for CapRegion {
    fn classify(&self, p: SpherePoint, tol: f64) -> Membership {
        let d = self.center.angle_to(p) - self.radius;
        if d.abs() <= tol {
            Membership::Boundary
        } else if d < 0.0 {
            Membership::Interior
        } else {
            Membership::Exterior
        }
    }

    fn sample_boundary(&self, n: usize) -> Vec<BoundarySample> {
        let c = self.center.to_vector();
        let (e1, e2) = tangent_frame(self.center);
        let (s, co) = self.radius.sin_cos();
        (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                let dir = e1 * t.cos() + e2 * t.sin();
                let point = c * co + dir * s;
                let normal = -c * s + dir * co;
                BoundarySample {
                    point: SpherePoint::from_vector(&point),
                    outward_normal: normal.normalize(),
                    component: 0,
                }
            })
            .collect()
    }
}

/// The closed complement of a region; outward normals flip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complement<R>(pub R);

impl<R: Region> Region for Complement<R> {
    fn classify(&self, p: SpherePoint, tol: f64) -> Membership {
        match self.0.classify(p, tol) {
            Membership::Interior => Membership::Exterior,
            Membership::Exterior => Membership::Interior,
            Membership::Boundary => Membership::Boundary,
        }
    }

    fn sample_boundary(&self, n: usize) -> Vec<BoundarySample> {
        self.0
            .sample_boundary(n)
            .into_iter()
            .map(|s| BoundarySample {
                outward_normal: -s.outward_normal,
                ..s
            })
            .collect()
    }
}

/// Closed azimuthal sector {θ₂ ∈ [start, end]} taken cyclically. The poles
/// lie on every sector's boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorRegion {
    pub start: f64,
    pub end: f64,
    /// Angular size of the pole neighbourhoods skipped when sampling.
    pub pole_margin: f64,
}

impl SectorRegion {
    pub fn new(start: f64, end: f64) -> Self {
        SectorRegion {
            start,
            end,
            pole_margin: DEFAULT_POLE_MARGIN,
        }
    }

    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    /// Azimuth of boundary component 0 (start) or 1 (end), in [0, 2π).
    pub fn meridian(&self, component: usize) -> f64 {
        let a = if component == 0 { self.start } else { self.end };
        a.rem_euclid(TAU)
    }

    /// Whether `p` is on the given boundary meridian, to within `tol`.
    pub fn on_meridian(&self, component: usize, p: SpherePoint, tol: f64) -> bool {
        let rho = p.x.hypot(p.y);
        if rho <= tol {
            return true;
        }
        let d = (p.azimuth() - self.meridian(component)).rem_euclid(TAU);
        d.min(TAU - d) * rho <= tol
    }

    /// Round area: 2 per radian of azimuthal width.
    pub fn area(&self) -> f64 {
        2.0 * self.width()
    }
}

impl Region for SectorRegion {
    fn classify(&self, p: SpherePoint, tol: f64) -> Membership {
        let rho = p.x.hypot(p.y);
        if rho <= tol.max(1e-15) {
            return Membership::Boundary;
        }
        let width = self.width();
        let d = (p.azimuth() - self.start).rem_euclid(TAU);
        // distances measured along the latitude circle
        if d <= width {
            if d.min(width - d) * rho <= tol {
                Membership::Boundary
            } else {
                Membership::Interior
            }
        } else if (d - width).min(TAU - d) * rho <= tol {
            Membership::Boundary
        } else {
            Membership::Exterior
        }
    }

    /// `n` points on each boundary meridian, skipping `pole_margin` at
    /// both poles. Empty when the margin covers the meridian.
    fn sample_boundary(&self, n: usize) -> Vec<BoundarySample> {
        let eps = self.pole_margin;
        if eps >= PI / 2.0 || n == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(2 * n);
        for component in 0..2 {
            let az = self.meridian(component);
            let e = Vector3::new(-az.sin(), az.cos(), 0.0);
            let normal = if component == 0 { -e } else { e };
            for k in 0..n {
                let polar = eps + (k as f64 + 0.5) * (PI - 2.0 * eps) / n as f64;
                out.push(BoundarySample {
                    point: SpherePoint::from_angles(polar, az),
                    outward_normal: normal,
                    component,
                });
            }
        }
        out
    }
}

/// The six marked points p₁, p₂, p₃, q₁, q₂, q₃ on the xz great circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkedPoints {
    pub p: [SpherePoint; 3],
    pub q: [SpherePoint; 3],
}

impl MarkedPoints {
    /// The eighteen memberships q/p_j ∈ N_i, as `(label, cap, inside)`.
    pub fn membership_table(&self, caps: &[CapRegion; 3]) -> Vec<(String, Part, bool)> {
        let mut rows = Vec::with_capacity(18);
        for (name, pts) in [("p", &self.p), ("q", &self.q)] {
            for (j, pt) in pts.iter().enumerate() {
                for part in Part::ALL {
                    rows.push((
                        format!("{name}{}", j + 1),
                        part,
                        caps[part.index()].contains(*pt),
                    ));
                }
            }
        }
        rows
    }

    /// Whether `label` ∈ N_`part` is prescribed:
    /// N₁ ∋ {p₁, q₃}, N₂ ∋ {p₂, q₁}, N₃ ∋ {p₃, q₂}.
    pub fn prescribed(label: &str, part: Part) -> bool {
        matches!(
            (label, part),
            ("p1", Part::One)
                | ("q3", Part::One)
                | ("p2", Part::Two)
                | ("q1", Part::Two)
                | ("p3", Part::Three)
                | ("q2", Part::Three)
        )
    }
}

/// p₁ = north pole, q₁ = south pole, and their images under the rotation
/// φ by 4π/3 about the y-axis: p_{i+1} = φ(p_i), q_{i+1} = φ(q_i).
pub fn default_marked_points() -> MarkedPoints {
    let h = 3f64.sqrt() / 2.0;
    MarkedPoints {
        p: [
            SpherePoint::NORTH,
            SpherePoint { x: -h, y: 0.0, z: -0.5 },
            SpherePoint { x: h, y: 0.0, z: -0.5 },
        ],
        q: [
            SpherePoint::SOUTH,
            SpherePoint { x: h, y: 0.0, z: 0.5 },
            SpherePoint { x: -h, y: 0.0, z: 0.5 },
        ],
    }
}

/// Admissible radii for the N_i: each must contain its two marked points
/// (at distance π/6 from its center) and the three must be disjoint
/// (centers 2π/3 apart).
pub fn cap_radius_window() -> (f64, f64) {
    (PI / 6.0, PI / 3.0)
}

/// N_i as a geodesic cap. N₁ is centered at c₁ = (−1/2, 0, √3/2), the
/// midpoint of p₁ and q₃; N_{i+1} is the image of N_i under φ.
pub fn default_n(i: Part, radius: f64) -> Result<CapRegion> {
    let (lo, hi) = cap_radius_window();
    if !(radius > lo && radius < hi) {
        return Err(Error::Config(format!(
            "cap radius {radius} outside the admissible window ({lo}, {hi})"
        )));
    }
    let c1 = SpherePoint {
        x: -0.5,
        y: 0.0,
        z: 3f64.sqrt() / 2.0,
    };
    let center = rotate_y(MARKED_ROTATION * i.index() as f64, c1);
    CapRegion::new(center, radius)
}

pub fn default_caps(radius: f64) -> Result<[CapRegion; 3]> {
    Ok([
        default_n(Part::One, radius)?,
        default_n(Part::Two, radius)?,
        default_n(Part::Three, radius)?,
    ])
}

/// Sector B_i = [(4 + 8(i−1))π/12, (12 + 8(i−1))π/12]; B₃ wraps through 2π.
pub fn default_b(i: Part) -> SectorRegion {
    let start = PI / 3.0 + SECTOR_ROTATION * i.index() as f64;
    SectorRegion::new(start, start + SECTOR_ROTATION)
}

pub fn default_sectors() -> [SectorRegion; 3] {
    [default_b(Part::One), default_b(Part::Two), default_b(Part::Three)]
}

/// The third sector as printed in the source construction,
/// θ₂ ∈ [20π/12, 24π/12]. It leaves [0, 4π/12) uncovered.
pub fn literal_b3() -> SectorRegion {
    SectorRegion::new(20.0 * PI / 12.0, 24.0 * PI / 12.0)
}

/// Uniform random point of the sphere.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let az: f64 = rng.random_range(0.0..TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    SpherePoint {
        x: s * az.cos(),
        y: s * az.sin(),
        z,
    }
}

/// Rejection-sample a point with `region.classify(p, margin) == Interior`.
pub fn random_interior_point<R: Rng + ?Sized>(
    region: &dyn Region,
    margin: f64,
    rng: &mut R,
) -> Option<SpherePoint> {
    (0..100_000)
        .map(|_| random_sphere_point(rng))
        .find(|&p| region.classify(p, margin) == Membership::Interior)
}
