//! CSV dumps of fields on a chart grid and of region boundary samples.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::potential::{fubini_study_potential, omega_from_potential};
use crate::regions::{default_b, default_n, literal_b3, Region};
use crate::sphere::ChartPoint;
use crate::weinstein::liouville_field;
use crate::{Error, Part, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSelector {
    /// Columns u, v, value: the Fubini–Study potential.
    Potential,
    /// Columns u, v, value: the density Δf of ω_f.
    OmegaDensity,
    /// Columns u, v, x_u, x_v: the Liouville field.
    LiouvilleField,
    /// Columns region, component, x, y, z, nx, ny, nz.
    BoundarySamples,
}

impl FieldSelector {
    pub const ALL: [FieldSelector; 4] = [
        FieldSelector::Potential,
        FieldSelector::OmegaDensity,
        FieldSelector::LiouvilleField,
        FieldSelector::BoundarySamples,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FieldSelector::Potential => "potential",
            FieldSelector::OmegaDensity => "omega-density",
            FieldSelector::LiouvilleField => "liouville-field",
            FieldSelector::BoundarySamples => "boundary-samples",
        }
    }
}

impl fmt::Display for FieldSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FieldSelector::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown field selector '{s}'")))
    }
}

/// Region whose boundary is sampled: `n1`..`n3`, `b1`..`b3`, or
/// `b3-printed` for the printed third sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionSelector {
    Cap(Part),
    Sector(Part),
    PrintedThirdSector,
}

impl FromStr for RegionSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "b3-printed" {
            return Ok(RegionSelector::PrintedThirdSector);
        }
        let part = |d: &str| d.parse::<usize>().ok().and_then(Part::from_number);
        match (s.get(..1), s.get(1..).and_then(part)) {
            (Some("n"), Some(p)) => Ok(RegionSelector::Cap(p)),
            (Some("b"), Some(p)) => Ok(RegionSelector::Sector(p)),
            _ => Err(Error::Config(format!("unknown region '{s}'"))),
        }
    }
}

impl fmt::Display for RegionSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSelector::Cap(p) => write!(f, "n{p}"),
            RegionSelector::Sector(p) => write!(f, "b{p}"),
            RegionSelector::PrintedThirdSector => f.write_str("b3-printed"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExportOptions {
    /// Grid nodes per axis.
    pub grid: usize,
    /// The grid covers [−extent, extent]².
    pub extent: f64,
    pub region: RegionSelector,
    /// Boundary points per boundary component.
    pub samples: usize,
    pub cap_radius: f64,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions {
            grid: 101,
            extent: 3.0,
            region: RegionSelector::Sector(Part::One),
            samples: 8,
            cap_radius: crate::regions::DEFAULT_CAP_RADIUS,
        }
    }
}

#[derive(Serialize)]
struct ScalarRow {
    u: f64,
    v: f64,
    value: f64,
}

#[derive(Serialize)]
struct VectorRow {
    u: f64,
    v: f64,
    x_u: f64,
    x_v: f64,
}

#[derive(Serialize)]
struct BoundaryRow {
    region: String,
    component: usize,
    x: f64,
    y: f64,
    z: f64,
    nx: f64,
    ny: f64,
    nz: f64,
}

/// Grid coordinates −e + 2e·k/(n−1), computed from the index so the
/// midpoint is exactly zero for odd n.
fn grid_axis(n: usize, extent: f64) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    let last = (n - 1) as f64;
    (0..n)
        .map(|k| {
            let c = 2.0 * k as f64 - last;
            extent * c / last
        })
        .collect()
}

/// Writes the selected dump as CSV with a header row. Returns the number of
/// data rows.
pub fn export_fields<W: Write>(selector: FieldSelector, opts: &ExportOptions, out: W) -> Result<usize> {
    if opts.grid == 0 {
        return Err(Error::Config("grid must have at least one node".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let axis = grid_axis(opts.grid, opts.extent);
    let f = fubini_study_potential();
    let mut rows = 0;
    match selector {
        FieldSelector::Potential | FieldSelector::OmegaDensity => {
            let omega = omega_from_potential(&f);
            for &u in &axis {
                for &v in &axis {
                    let p = ChartPoint::new(u, v);
                    let value = match selector {
                        FieldSelector::Potential => f.value(p),
                        _ => omega.at(p),
                    };
                    w.serialize(ScalarRow { u, v, value })?;
                    rows += 1;
                }
            }
        }
        FieldSelector::LiouvilleField => {
            let x = liouville_field(&f);
            for &u in &axis {
                for &v in &axis {
                    let [x_u, x_v] = x.at(ChartPoint::new(u, v))?;
                    w.serialize(VectorRow { u, v, x_u, x_v })?;
                    rows += 1;
                }
            }
        }
        FieldSelector::BoundarySamples => {
            let region: Box<dyn Region> = match opts.region {
                RegionSelector::Cap(p) => Box::new(default_n(p, opts.cap_radius)?),
                RegionSelector::Sector(p) => Box::new(default_b(p)),
                RegionSelector::PrintedThirdSector => Box::new(literal_b3()),
            };
            for s in region.sample_boundary(opts.samples) {
                w.serialize(BoundaryRow {
                    region: opts.region.to_string(),
                    component: s.component,
                    x: s.point.x,
                    y: s.point.y,
                    z: s.point.z,
                    nx: s.outward_normal.x,
                    ny: s.outward_normal.y,
                    nz: s.outward_normal.z,
                })?;
                rows += 1;
            }
        }
    }
    w.flush()?;
    Ok(rows)
}
