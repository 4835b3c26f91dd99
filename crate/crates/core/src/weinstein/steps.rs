//! The two families of potentials: f_i on the first sphere factor, centred
//! on the N_i, and g_i on the second, centred on the B_i.
//!
//! Each potential is the Fubini–Study potential in a stereographic chart
//! whose projection point is removed; its single critical point sits at the
//! antipode of that point. f_{i+1} = f_i ∘ φ⁻¹ with φ the 4π/3 turn about
//! the y-axis, and g_{i+1} = g_i ∘ ψ⁻¹ with ψ the 2π/3 turn about the
//! z-axis, which permutes the sectors.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::potential::fubini_study_potential;
use crate::regions::{
    default_caps, default_marked_points, default_sectors, CapRegion, Membership, Region,
    SectorRegion, MARKED_ROTATION, SECTOR_ROTATION,
};
use crate::sphere::{y_rotation, z_rotation, Chart, SpherePoint};
use crate::weinstein::liouville::ChartedPotential;
use crate::{Error, Part, Result};

/// One potential with the critical point it is built to have.
#[derive(Debug, Clone)]
pub struct StepPotential {
    pub part: Part,
    pub potential: ChartedPotential,
    pub expected_critical: SpherePoint,
}

#[derive(Debug, Clone)]
pub struct Step1 {
    pub radius: f64,
    pub caps: [CapRegion; 3],
    pub potentials: [StepPotential; 3],
}

impl Step1 {
    pub fn get(&self, i: Part) -> &StepPotential {
        &self.potentials[i.index()]
    }
}

/// f_i projects from p_i ∈ N_i, so its critical point is q_i ∈ N_{i+1}.
/// Fails if `radius` leaves the cap window or a containment breaks.
pub fn configure_step1(radius: f64) -> Result<Step1> {
    let caps = default_caps(radius)?;
    let marked = default_marked_points();
    let base = ChartedPotential::new(Chart::from_pole(marked.p[0]), fubini_study_potential());
    let make = |i: Part| -> Result<StepPotential> {
        let r = y_rotation(MARKED_ROTATION * i.index() as f64);
        let potential = base.transported(&r);
        let pole = potential.chart.pole();
        let critical = potential.chart.center();
        if !caps[i.index()].contains(pole) {
            return Err(Error::Config(format!(
                "projection point of f{i} lies outside N{i} at radius {radius}"
            )));
        }
        if !caps[i.next().index()].contains(critical) {
            return Err(Error::Config(format!(
                "critical point of f{i} lies outside N{} at radius {radius}",
                i.next()
            )));
        }
        Ok(StepPotential {
            part: i,
            potential,
            expected_critical: marked.q[i.index()],
        })
    };
    Ok(Step1 {
        radius,
        caps,
        potentials: [make(Part::One)?, make(Part::Two)?, make(Part::Three)?],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Step2Mode {
    /// g₁ from the north-pole chart, critical point at the south pole.
    PaperLiteral,
    /// g₁ projecting from an interior point of B₃, critical point in int B₁.
    Corrected,
}

impl Step2Mode {
    pub const ALL: [Step2Mode; 2] = [Step2Mode::PaperLiteral, Step2Mode::Corrected];

    pub fn as_str(self) -> &'static str {
        match self {
            Step2Mode::PaperLiteral => "paper-literal",
            Step2Mode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Step2Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Step2Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-literal" => Ok(Step2Mode::PaperLiteral),
            "corrected" => Ok(Step2Mode::Corrected),
            _ => Err(Error::Config(format!("unknown step-2 mode '{s}'"))),
        }
    }
}

/// Projection point of g₁ in corrected mode: (θ₁, θ₂) = (π/2, 7π/4).
pub fn corrected_g1_pole() -> SpherePoint {
    SpherePoint::from_angles(PI / 2.0, 7.0 * PI / 4.0)
}

#[derive(Debug, Clone)]
pub struct Step2 {
    pub mode: Step2Mode,
    pub sectors: [SectorRegion; 3],
    pub potentials: [StepPotential; 3],
}

impl Step2 {
    pub fn get(&self, i: Part) -> &StepPotential {
        &self.potentials[i.index()]
    }

    /// Where the expected critical point of g_i sits relative to B_i.
    pub fn critical_membership(&self, i: Part) -> Membership {
        self.sectors[i.index()].classify(self.get(i).expected_critical, 1e-12)
    }
}

pub fn configure_step2(mode: Step2Mode) -> Step2 {
    configure_step2_with(mode, default_sectors())
}

pub fn configure_step2_with(mode: Step2Mode, sectors: [SectorRegion; 3]) -> Step2 {
    let base_chart = match mode {
        Step2Mode::PaperLiteral => Chart::north(),
        Step2Mode::Corrected => Chart::from_pole(corrected_g1_pole()),
    };
    let base = ChartedPotential::new(base_chart, fubini_study_potential());
    let make = |i: Part| {
        let potential = base.transported(&z_rotation(SECTOR_ROTATION * i.index() as f64));
        StepPotential {
            part: i,
            expected_critical: potential.chart.center(),
            potential,
        }
    };
    Step2 {
        mode,
        sectors,
        potentials: [make(Part::One), make(Part::Two), make(Part::Three)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::default_b;
    use approx::assert_abs_diff_eq;

    #[test]
    fn step1_critical_points() {
        let s = configure_step1(PI / 4.0).unwrap();
        let m = default_marked_points();
        let f1 = s.get(Part::One);
        assert!(f1.expected_critical.distance(SpherePoint::SOUTH) < 1e-15);
        assert!(f1.potential.chart.center().distance(SpherePoint::SOUTH) < 1e-15);
        assert!(s.caps[1].contains(f1.expected_critical));
        assert_abs_diff_eq!(
            s.caps[1].center.angle_to(m.q[0]),
            PI / 6.0,
            epsilon = 1e-15
        );
        let f3 = s.get(Part::Three);
        assert!(f3.potential.chart.center().distance(m.q[2]) < 1e-14);
        assert!(s.caps[0].contains(f3.expected_critical));
    }

    #[test]
    fn step1_rejects_small_radius() {
        assert!(configure_step1(PI / 7.0).is_err());
        assert!(configure_step1(PI / 5.0).is_ok());
    }

    #[test]
    fn step2_literal_critical_point_is_a_vertex() {
        let s = configure_step2(Step2Mode::PaperLiteral);
        let g1 = s.get(Part::One);
        assert!(g1.expected_critical.distance(SpherePoint::SOUTH) < 1e-15);
        for i in Part::ALL {
            assert_eq!(s.critical_membership(i), Membership::Boundary);
        }
    }

    #[test]
    fn step2_corrected_critical_points_are_interior() {
        let s = configure_step2(Step2Mode::Corrected);
        let c1 = s.get(Part::One).expected_critical;
        assert_abs_diff_eq!(c1.polar(), PI / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(c1.azimuth(), 3.0 * PI / 4.0, epsilon = 1e-14);
        for i in Part::ALL {
            assert_eq!(s.critical_membership(i), Membership::Interior, "g{i}");
            assert_eq!(
                default_b(i.prev()).classify(s.get(i).potential.chart.pole(), 1e-12),
                Membership::Interior
            );
        }
    }

    #[test]
    fn modes_parse_and_print() {
        for m in Step2Mode::ALL {
            assert_eq!(m.as_str().parse::<Step2Mode>().unwrap(), m);
        }
        assert!("sideways".parse::<Step2Mode>().is_err());
    }
}
