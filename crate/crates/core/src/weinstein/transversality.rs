//! Outward transversality of the product Liouville field on ∂X_i.
//!
//! X_i = (S₁ − int N_i) × B_i ∪ N_{i+1} × B_{i+1}. Away from the corner set
//! N_{i+1} × (B_i ∩ B_{i+1}), where the two pieces are glued, its boundary is
//! the union of four strata, each a product in which exactly one factor
//! carries the boundary. The outward normal of a stratum therefore lies in
//! one factor and the product field ξ_i = X_{f_i} ⊕ X_{g_i} has no cross
//! terms, so the signed outwardness is a single factor's inner product.

use std::f64::consts::TAU;

use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::regions::{
    random_interior_point, BoundarySample, CapRegion, Complement, Membership, Region,
    SectorRegion,
};
use crate::sphere::SpherePoint;
use crate::weinstein::steps::{Step1, Step2, Step2Mode};
use crate::{Error, Part, Result};

/// Tolerance for deciding that a sample lies on the glued corner set.
const CORNER_TOL: f64 = 1e-9;

/// Interior samples of the non-boundary factor stay this far from its
/// boundary.
const INTERIOR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StratumKind {
    /// ∂(S₁ − N_i) × B_i
    CapComplementBoundary,
    /// (S₁ − N_i) × ∂B_i
    SectorBoundary,
    /// ∂N_{i+1} × B_{i+1}
    NextCapBoundary,
    /// N_{i+1} × ∂B_{i+1}, minus the meridian shared with B_i
    NextSectorBoundary,
}

impl StratumKind {
    pub const ALL: [StratumKind; 4] = [
        StratumKind::CapComplementBoundary,
        StratumKind::SectorBoundary,
        StratumKind::NextCapBoundary,
        StratumKind::NextSectorBoundary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StratumKind::CapComplementBoundary => "cap-complement-boundary",
            StratumKind::SectorBoundary => "sector-boundary",
            StratumKind::NextCapBoundary => "next-cap-boundary",
            StratumKind::NextSectorBoundary => "next-sector-boundary",
        }
    }

    pub fn label(self, i: Part) -> String {
        let j = i.next();
        match self {
            StratumKind::CapComplementBoundary => format!("∂(S₁−N{i})×B{i}"),
            StratumKind::SectorBoundary => format!("(S₁−N{i})×∂B{i}"),
            StratumKind::NextCapBoundary => format!("∂N{j}×B{j}"),
            StratumKind::NextSectorBoundary => format!("N{j}×∂B{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Factor {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FirstRegion {
    OutsideCap(CapRegion),
    Cap(CapRegion),
}

impl FirstRegion {
    fn as_region(&self) -> Box<dyn Region> {
        match *self {
            FirstRegion::OutsideCap(c) => Box::new(Complement(c)),
            FirstRegion::Cap(c) => Box::new(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumPlan {
    pub kind: StratumKind,
    pub label: String,
    pub first: FirstRegion,
    pub second: SectorRegion,
    pub boundary: Factor,
    /// Boundary meridians of `second` in the stratum (0 = start, 1 = end);
    /// empty when the first factor carries the boundary.
    pub meridians: Vec<usize>,
}

/// N_{i+1} × (B_i ∩ B_{i+1}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerSet {
    pub cap: CapRegion,
    pub sector: SectorRegion,
    pub next_sector: SectorRegion,
}

impl CornerSet {
    pub fn contains(&self, first: SpherePoint, second: SpherePoint) -> bool {
        self.cap.classify(first, CORNER_TOL) != Membership::Exterior
            && self.sector.classify(second, CORNER_TOL) != Membership::Exterior
            && self.next_sector.classify(second, CORNER_TOL) != Membership::Exterior
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumDecomposition {
    pub part: Part,
    pub strata: Vec<StratumPlan>,
    pub corner: CornerSet,
}

/// Meridian of `a` (0 = start, 1 = end) that coincides with a meridian of
/// `b`, returned as the pair of component indices.
fn shared_meridian(a: &SectorRegion, b: &SectorRegion) -> Option<(usize, usize)> {
    for ca in 0..2 {
        for cb in 0..2 {
            let d = (a.meridian(ca) - b.meridian(cb)).rem_euclid(TAU);
            if d.min(TAU - d) < 1e-12 {
                return Some((ca, cb));
            }
        }
    }
    None
}

pub fn stratum_decomposition(
    i: Part,
    caps: &[CapRegion; 3],
    sectors: &[SectorRegion; 3],
) -> StratumDecomposition {
    let j = i.next();
    let (n_i, n_j) = (caps[i.index()], caps[j.index()]);
    let (b_i, b_j) = (sectors[i.index()], sectors[j.index()]);
    let shared = shared_meridian(&b_i, &b_j);
    let next_meridians = (0..2)
        .filter(|&c| shared.map_or(true, |(_, cb)| cb != c))
        .collect();
    let plan = |kind: StratumKind, first, second, boundary, meridians| StratumPlan {
        kind,
        label: kind.label(i),
        first,
        second,
        boundary,
        meridians,
    };
    StratumDecomposition {
        part: i,
        strata: vec![
            plan(
                StratumKind::CapComplementBoundary,
                FirstRegion::OutsideCap(n_i),
                b_i,
                Factor::First,
                vec![],
            ),
            plan(
                StratumKind::SectorBoundary,
                FirstRegion::OutsideCap(n_i),
                b_i,
                Factor::Second,
                vec![0, 1],
            ),
            plan(
                StratumKind::NextCapBoundary,
                FirstRegion::Cap(n_j),
                b_j,
                Factor::First,
                vec![],
            ),
            plan(
                StratumKind::NextSectorBoundary,
                FirstRegion::Cap(n_j),
                b_j,
                Factor::Second,
                next_meridians,
            ),
        ],
        corner: CornerSet {
            cap: n_j,
            sector: b_i,
            next_sector: b_j,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumResult {
    pub kind: StratumKind,
    pub label: String,
    pub samples: usize,
    /// Partner points redrawn because they landed on the corner set.
    pub resampled: usize,
    /// Evaluated samples lying on the corner set; zero when exclusion works.
    pub corner_samples: usize,
    pub min_outwardness: f64,
    pub max_abs_outwardness: f64,
    /// (first factor, second factor) at the minimum.
    pub min_location: [SpherePoint; 2],
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransversalityReport {
    pub part: Part,
    pub mode: Step2Mode,
    pub threshold: f64,
    pub strata: Vec<StratumResult>,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
struct ProductSample {
    first: SpherePoint,
    second: SpherePoint,
    boundary: BoundarySample,
}

fn stratum_samples(
    plan: &StratumPlan,
    corner: &CornerSet,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<ProductSample>, usize)> {
    let boundary: Vec<BoundarySample> = match plan.boundary {
        Factor::First => plan.first.as_region().sample_boundary(n),
        Factor::Second if plan.meridians.is_empty() => Vec::new(),
        Factor::Second => plan
            .second
            .sample_boundary(n.div_ceil(plan.meridians.len()))
            .into_iter()
            .filter(|s| plan.meridians.contains(&s.component))
            .collect(),
    };
    let partner: Box<dyn Region> = match plan.boundary {
        Factor::First => Box::new(plan.second),
        Factor::Second => plan.first.as_region(),
    };
    let mut resampled = 0;
    let mut out = Vec::with_capacity(boundary.len());
    for b in boundary {
        let mut attempts = 0;
        let sample = loop {
            let other = random_interior_point(partner.as_ref(), INTERIOR_MARGIN, rng)
                .ok_or_else(|| Error::Config(format!("no interior points for {}", plan.label)))?;
            let (first, second) = match plan.boundary {
                Factor::First => (b.point, other),
                Factor::Second => (other, b.point),
            };
            if !corner.contains(first, second) {
                break ProductSample {
                    first,
                    second,
                    boundary: b,
                };
            }
            resampled += 1;
            attempts += 1;
            if attempts > 10_000 {
                return Err(Error::Config(format!(
                    "stratum {} lies inside the corner set",
                    plan.label
                )));
            }
        };
        out.push(sample);
    }
    Ok((out, resampled))
}

/// Samples every stratum of ∂X_i and records the minimum signed
/// outwardness ⟨ξ_i, ν⟩ of the product field along the outward normal ν.
#[allow(clippy::too_many_arguments)]
pub fn check_transversality(
    i: Part,
    step1: &Step1,
    step2: &Step2,
    samples_per_stratum: usize,
    threshold: f64,
    seed: u64,
    exec: Execution,
) -> Result<TransversalityReport> {
    let decomposition = stratum_decomposition(i, &step1.caps, &step2.sectors);
    let f = &step1.get(i).potential;
    let g = &step2.get(i).potential;
    let mut strata = Vec::with_capacity(decomposition.strata.len());
    for (k, plan) in decomposition.strata.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add((i.index() * 8 + k) as u64),
        );
        let (samples, resampled) =
            stratum_samples(plan, &decomposition.corner, samples_per_stratum, &mut rng)?;
        let values = exec.map(&samples, |s| -> Result<f64> {
            let field: Vector3<f64> = match plan.boundary {
                Factor::First => f.liouville_vector(s.first)?,
                Factor::Second => g.liouville_vector(s.second)?,
            };
            // the other factor's component is orthogonal to ν; evaluated
            // anyway so a degenerate partner point is still caught
            match plan.boundary {
                Factor::First => g.liouville_vector(s.second)?,
                Factor::Second => f.liouville_vector(s.first)?,
            };
            Ok(field.dot(&s.boundary.outward_normal))
        });
        let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
        let corner_samples = samples
            .iter()
            .filter(|s| decomposition.corner.contains(s.first, s.second))
            .count();
        let (mut min, mut arg, mut max_abs) = (f64::INFINITY, 0, 0.0_f64);
        for (idx, &v) in values.iter().enumerate() {
            if v < min {
                min = v;
                arg = idx;
            }
            max_abs = max_abs.max(v.abs());
        }
        let min_location = samples
            .get(arg)
            .map_or([SpherePoint::NORTH; 2], |s| [s.first, s.second]);
        strata.push(StratumResult {
            kind: plan.kind,
            label: plan.label.clone(),
            samples: samples.len(),
            resampled,
            corner_samples,
            min_outwardness: min,
            max_abs_outwardness: max_abs,
            min_location,
            pass: !samples.is_empty() && min > threshold,
        });
    }
    let pass = strata.iter().all(|s| s.pass);
    Ok(TransversalityReport {
        part: i,
        mode: step2.mode,
        threshold,
        strata,
        pass,
    })
}
