//! Critical points by damped Newton iteration on the gradient.

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::potential::PotentialField;
use crate::sphere::ChartPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Converged once |∇f| falls below this.
    pub gradient_tol: f64,
    pub max_iterations: usize,
    /// Halvings of a step that fails to decrease |∇f|.
    pub max_halvings: usize,
    /// Longest accepted step in chart units.
    pub max_step: f64,
    /// Iterates beyond this chart radius count as having left the domain.
    pub domain_radius: f64,
    /// Eigenvalues smaller than this in magnitude make a point degenerate.
    pub degeneracy_tol: f64,
    /// Converged points closer than this are merged.
    pub dedup_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            gradient_tol: 1e-12,
            max_iterations: 100,
            max_halvings: 30,
            max_step: 0.5,
            domain_radius: 1e8,
            degeneracy_tol: 1e-8,
            dedup_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: ChartPoint,
    pub gradient_norm: f64,
    /// Ascending.
    pub eigenvalues: [f64; 2],
    pub index: u8,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedFailure {
    SingularHessian,
    LeftDomain,
    Stalled,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointSearch {
    pub points: Vec<CriticalPoint>,
    /// Seeds that did not converge and why.
    pub failures: Vec<(ChartPoint, SeedFailure)>,
    pub converged_seeds: usize,
}

fn newton(
    f: &PotentialField,
    seed: ChartPoint,
    opts: &NewtonOptions,
) -> Result<ChartPoint, SeedFailure> {
    let norm = |g: [f64; 2]| g[0].hypot(g[1]);
    let mut z = seed;
    let mut g = f.gradient(z);
    for _ in 0..opts.max_iterations {
        if norm(g) < opts.gradient_tol {
            return Ok(z);
        }
        let [du, dv] = f
            .hessian(z)
            .solve([-g[0], -g[1]])
            .ok_or(SeedFailure::SingularHessian)?;
        let len = du.hypot(dv);
        let mut t = if len > opts.max_step {
            opts.max_step / len
        } else {
            1.0
        };
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let cand = z.offset(t * du, t * dv);
            let gc = f.gradient(cand);
            if norm(gc) < norm(g) {
                accepted = Some((cand, gc));
                break;
            }
            t *= 0.5;
        }
        let (next, gn) = match accepted {
            Some(step) => step,
            None if norm(g) < 1e3 * opts.gradient_tol => return Ok(z),
            None => return Err(SeedFailure::Stalled),
        };
        z = next;
        g = gn;
        if !(z.norm() < opts.domain_radius) {
            return Err(SeedFailure::LeftDomain);
        }
    }
    if norm(g) < opts.gradient_tol {
        Ok(z)
    } else {
        Err(SeedFailure::IterationLimit)
    }
}

pub fn classify_critical_point(f: &PotentialField, z: ChartPoint, opts: &NewtonOptions) -> CriticalPoint {
    let [gu, gv] = f.gradient(z);
    let eigenvalues = f.hessian(z).eigenvalues();
    CriticalPoint {
        location: z,
        gradient_norm: gu.hypot(gv),
        eigenvalues,
        index: eigenvalues.iter().filter(|&&e| e < 0.0).count() as u8,
        nondegenerate: eigenvalues.iter().all(|e| e.abs() > opts.degeneracy_tol),
    }
}

/// Damped Newton from every seed, deduplicated. Failed seeds are listed,
/// not raised.
pub fn find_critical_points(
    f: &PotentialField,
    seeds: &[ChartPoint],
    opts: &NewtonOptions,
    exec: Execution,
) -> CriticalPointSearch {
    let outcomes = exec.map(seeds, |&s| newton(f, s, opts));
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut failures = Vec::new();
    let mut converged_seeds = 0;
    for (seed, outcome) in seeds.iter().zip(outcomes) {
        match outcome {
            Ok(z) => {
                converged_seeds += 1;
                if !points.iter().any(|c| c.location.distance(z) < opts.dedup_tol) {
                    points.push(classify_critical_point(f, z, opts));
                }
            }
            Err(e) => failures.push((*seed, e)),
        }
    }
    CriticalPointSearch {
        points,
        failures,
        converged_seeds,
    }
}
