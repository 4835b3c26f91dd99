//! Trisections of products of closed surfaces, and a numerical audit of an
//! explicit Weinstein trisection of S² × S².
//!
//! The crate has two layers:
//!
//! * [`combinatorics`] builds the three-disk decomposition of a closed
//!   surface and the genus/rank bookkeeping of the trisection of
//!   Σ_g × Σ_h, using exact integer arithmetic.
//! * [`sphere`], [`potential`], [`quadrature`], [`regions`] and
//!   [`weinstein`] carry the genus-zero case: stereographic charts, the
//!   Fubini–Study potential, finite-difference exterior calculus, the
//!   regions N_i and B_i, Liouville fields, Morse data and stratum-wise
//!   outward transversality on the handlebody boundaries.
//!
//! [`verify::full_verify`] strings everything together into a
//! [`report::VerificationReport`].

pub mod combinatorics;
pub mod config;
pub mod error;
pub mod exec;
pub mod export;
pub mod potential;
pub mod quadrature;
pub mod regions;
pub mod report;
pub mod sphere;
pub mod verify;
pub mod weinstein;

pub use error::{Error, Result};
pub use exec::Execution;

/// Cyclic index in {1, 2, 3} used for B_i, N_i and X_i.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
#[serde(into = "usize", try_from = "usize")]
pub enum Part {
    One,
    Two,
    Three,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::One, Part::Two, Part::Three];

    pub fn from_number(i: usize) -> Option<Part> {
        match i {
            1 => Some(Part::One),
            2 => Some(Part::Two),
            3 => Some(Part::Three),
            _ => None,
        }
    }

    pub fn number(self) -> usize {
        self.index() + 1
    }

    /// Zero-based position, handy for array indexing.
    pub fn index(self) -> usize {
        match self {
            Part::One => 0,
            Part::Two => 1,
            Part::Three => 2,
        }
    }

    /// i + 1, wrapping 3 → 1.
    pub fn next(self) -> Part {
        Part::ALL[(self.index() + 1) % 3]
    }

    /// i − 1 (equivalently i + 2), wrapping 1 → 3.
    pub fn prev(self) -> Part {
        Part::ALL[(self.index() + 2) % 3]
    }
}

impl From<Part> for usize {
    fn from(p: Part) -> usize {
        p.number()
    }
}

impl TryFrom<usize> for Part {
    type Error = String;
    fn try_from(i: usize) -> std::result::Result<Part, String> {
        Part::from_number(i).ok_or_else(|| format!("part index {i} outside 1..=3"))
    }
}

impl std::fmt::Display for Part {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[cfg(test)]
mod tests {
    use super::Part;

    #[test]
    fn part_indices_wrap() {
        assert_eq!(Part::Three.next(), Part::One);
        assert_eq!(Part::One.prev(), Part::Three);
        for p in Part::ALL {
            assert_eq!(p.next().prev(), p);
            assert_eq!(p.next().next().next(), p);
            assert_eq!(Part::from_number(p.number()), Some(p));
        }
        assert_eq!(Part::from_number(0), None);
        assert_eq!(Part::from_number(4), None);
    }
}
