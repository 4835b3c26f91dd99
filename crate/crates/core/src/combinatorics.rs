//! Three-disk decompositions of closed surfaces and the genus bookkeeping of
//! the trisection of Σ_g × Σ_h.
//!
//! A decomposition Σ_g = B₁ ∪ B₂ ∪ B₃ is stored as its 1-skeleton: a
//! trivalent graph whose edges ("arcs") are colored by the pair of faces
//! they separate. Vertices carry an orientation sign that fixes the cyclic
//! order of the three arcs around them:
//!
//! * positive vertices: b₁₂, b₂₃, b₃₁ counterclockwise;
//! * negative vertices: b₁₂, b₃₁, b₂₃ counterclockwise.
//!
//! With every arc joining a positive to a negative vertex, the faces of the
//! resulting map are exactly the cycles of the three two-colored subgraphs,
//! so "each B_i is a disk" becomes "each two-colored subgraph is a single
//! cycle".

use serde::{Deserialize, Serialize};

use crate::report::{CheckEntry, Fragment, Status, PLUMBING};
use crate::Part;

const ANCHOR_DECOMPOSITION: &str = "three-disk decomposition of a closed surface";
const ANCHOR_GENUS: &str = "trisection genus of a product of surfaces";
const ANCHOR_DEFINITION: &str = "definition of a (g; k1, k2, k3)-trisection";

/// The pair of faces an arc separates: b₁₂, b₂₃ or b₃₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcPair {
    B12,
    B23,
    B31,
}

impl ArcPair {
    pub const ALL: [ArcPair; 3] = [ArcPair::B12, ArcPair::B23, ArcPair::B31];

    pub fn index(self) -> usize {
        match self {
            ArcPair::B12 => 0,
            ArcPair::B23 => 1,
            ArcPair::B31 => 2,
        }
    }

    /// The two faces (B_i, B_{i+1}) adjacent to an arc of this pair.
    pub fn faces(self) -> (Part, Part) {
        match self {
            ArcPair::B12 => (Part::One, Part::Two),
            ArcPair::B23 => (Part::Two, Part::Three),
            ArcPair::B31 => (Part::Three, Part::One),
        }
    }

    pub fn touches(self, face: Part) -> bool {
        let (a, b) = self.faces();
        a == face || b == face
    }

    /// The two pairs whose arcs bound `face`.
    pub fn bounding(face: Part) -> (ArcPair, ArcPair) {
        match face {
            Part::One => (ArcPair::B12, ArcPair::B31),
            Part::Two => (ArcPair::B12, ArcPair::B23),
            Part::Three => (ArcPair::B23, ArcPair::B31),
        }
    }

    /// The face lying between two distinct pairs at a vertex.
    fn shared_face(a: ArcPair, b: ArcPair) -> Option<Part> {
        Part::ALL
            .into_iter()
            .find(|&f| a != b && a.touches(f) && b.touches(f))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    /// Counterclockwise order of arc pairs around a vertex of this sign.
    pub fn rotation(self) -> [ArcPair; 3] {
        match self {
            Orientation::Positive => [ArcPair::B12, ArcPair::B23, ArcPair::B31],
            Orientation::Negative => [ArcPair::B12, ArcPair::B31, ArcPair::B23],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub orientation: Orientation,
}

/// A component of some b_ij, with its two endpoint vertices. The adjacent
/// faces are `pair.faces()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub pair: ArcPair,
    pub ends: [usize; 2],
}

impl Arc {
    fn other_end(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDecomposition {
    pub genus: u32,
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<Arc>,
}

/// Errors from the stabilization move; the decomposition is left untouched.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilizeError {
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("vertex {0} is not a triple point with one arc from each pair")]
    NotTriplePoint(usize),
}

impl SurfaceDecomposition {
    /// The two-sector-pole decomposition of the sphere: three arcs, one per
    /// pair, all running from the north pole (positive) to the south pole.
    pub fn sphere() -> Self {
        SurfaceDecomposition {
            genus: 0,
            vertices: vec![
                Vertex {
                    orientation: Orientation::Positive,
                },
                Vertex {
                    orientation: Orientation::Negative,
                },
            ],
            arcs: ArcPair::ALL
                .into_iter()
                .map(|pair| Arc { pair, ends: [0, 1] })
                .collect(),
        }
    }

    pub const FACES: usize = 3;

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arcs_per_pair(&self) -> [usize; 3] {
        let mut counts = [0; 3];
        for a in &self.arcs {
            counts[a.pair.index()] += 1;
        }
        counts
    }

    /// V − E + F with the three labeled faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.arcs.len() as i64 + Self::FACES as i64
    }

    /// For each vertex, the incident arc of each pair, if the incidence is
    /// that of a triple point.
    fn triple_points(&self) -> Option<Vec<[usize; 3]>> {
        let mut slots = vec![[usize::MAX; 3]; self.vertices.len()];
        for (k, a) in self.arcs.iter().enumerate() {
            if a.ends[0] == a.ends[1] {
                return None;
            }
            for &v in &a.ends {
                let slot = slots.get_mut(v)?;
                if slot[a.pair.index()] != usize::MAX {
                    return None;
                }
                slot[a.pair.index()] = k;
            }
        }
        slots
            .iter()
            .all(|s| s.iter().all(|&k| k != usize::MAX))
            .then_some(slots)
    }

    /// Arc indices around vertex `v` in counterclockwise order.
    pub fn rotation_at(&self, v: usize) -> Option<[usize; 3]> {
        let slots = self.triple_points()?;
        let order = self.vertices.get(v)?.orientation.rotation();
        Some(order.map(|p| slots[v][p.index()]))
    }

    /// Boundary cycles of face `face`, as sequences of arc indices, obtained
    /// by walking the two-colored subgraph of its bounding pairs. A disk face
    /// has exactly one cycle containing every arc of both pairs.
    pub fn face_cycles(&self, face: Part) -> Option<Vec<Vec<usize>>> {
        let slots = self.triple_points()?;
        let (pa, pb) = ArcPair::bounding(face);
        let mut seen = vec![false; self.arcs.len()];
        let mut cycles = Vec::new();
        for start in 0..self.arcs.len() {
            if seen[start] || self.arcs[start].pair != pa {
                continue;
            }
            let mut cycle = Vec::new();
            let mut arc = start;
            let mut v = self.arcs[start].ends[0];
            loop {
                seen[arc] = true;
                cycle.push(arc);
                v = self.arcs[arc].other_end(v);
                let want = if self.arcs[arc].pair == pa { pb } else { pa };
                arc = slots[v][want.index()];
                if arc == start {
                    break;
                }
                if seen[arc] {
                    // The walk re-entered a cycle somewhere other than its start.
                    return None;
                }
            }
            cycles.push(cycle);
        }
        Some(cycles)
    }

    /// Faces of the map defined by the rotation system, traced as orbits of
    /// darts, each labeled with the face of the decomposition it lies in.
    /// Returns `None` if the incidence is not that of triple points or an
    /// orbit mixes faces.
    pub fn traced_faces(&self) -> Option<Vec<Part>> {
        let slots = self.triple_points()?;
        // dart = (arc, end) meaning "leave vertex arcs[arc].ends[end] along arc"
        let n = self.arcs.len();
        let dart_id = |arc: usize, end: usize| 2 * arc + end;
        let mut seen = vec![false; 2 * n];
        let mut labels = Vec::new();
        for d0 in 0..2 * n {
            if seen[d0] {
                continue;
            }
            let mut label: Option<Part> = None;
            let mut d = d0;
            loop {
                seen[d] = true;
                let (arc, end) = (d / 2, d % 2);
                // reverse the dart, then rotate counterclockwise at its tail
                let w = self.arcs[arc].ends[1 - end];
                let rot = self.vertices[w].orientation.rotation();
                let here = self.arcs[arc].pair;
                let pos = rot.iter().position(|&p| p == here)?;
                let next_pair = rot[(pos + 1) % 3];
                let face = ArcPair::shared_face(here, next_pair)?;
                match label {
                    None => label = Some(face),
                    Some(f) if f != face => return None,
                    Some(_) => {}
                }
                let next_arc = slots[w][next_pair.index()];
                let next_end = if self.arcs[next_arc].ends[0] == w { 0 } else { 1 };
                d = dart_id(next_arc, next_end);
                if d == d0 {
                    break;
                }
            }
            labels.push(label?);
        }
        Some(labels)
    }

    /// Connected sum with a torus at vertex `v`: the vertex is replaced by
    /// five triple points joined by two new arcs of each pair, and the three
    /// existing arcs at `v` are reattached to three of them.
    pub fn stabilize(&self, v: usize) -> Result<SurfaceDecomposition, StabilizeError> {
        let vertex = *self.vertices.get(v).ok_or(StabilizeError::NoSuchVertex(v))?;
        let slots = self
            .triple_points()
            .ok_or(StabilizeError::NotTriplePoint(v))?;
        let o = vertex.orientation;
        let mut out = self.clone();
        out.genus += 1;

        // `v` keeps its index and becomes A; B, C share its sign, P, Q do not.
        let a = v;
        let b = out.vertices.len();
        let c = b + 1;
        let p = b + 2;
        let q = b + 3;
        out.vertices.extend([
            Vertex { orientation: o },
            Vertex { orientation: o },
            Vertex {
                orientation: o.flip(),
            },
            Vertex {
                orientation: o.flip(),
            },
        ]);

        let reattach = |arcs: &mut Vec<Arc>, k: usize, to: usize| {
            for end in arcs[k].ends.iter_mut() {
                if *end == v {
                    *end = to;
                }
            }
        };
        // b12 stays on A; b23 moves to B; b31 moves to C
        reattach(&mut out.arcs, slots[v][ArcPair::B23.index()], b);
        reattach(&mut out.arcs, slots[v][ArcPair::B31.index()], c);

        use ArcPair::*;
        out.arcs.extend([
            Arc { pair: B12, ends: [b, p] },
            Arc { pair: B23, ends: [c, p] },
            Arc { pair: B31, ends: [a, p] },
            Arc { pair: B12, ends: [c, q] },
            Arc { pair: B23, ends: [a, q] },
            Arc { pair: B31, ends: [b, q] },
        ]);
        Ok(out)
    }
}

/// Decomposition of Σ_genus into three disks, built from the sphere by
/// repeated stabilization at vertex 0.
pub fn build_surface_decomposition(genus: u32) -> SurfaceDecomposition {
    let mut d = SurfaceDecomposition::sphere();
    for _ in 0..genus {
        d = d
            .stabilize(0)
            .expect("vertex 0 of a valid decomposition is a triple point");
    }
    d
}

pub fn validate_decomposition(d: &SurfaceDecomposition) -> Fragment {
    let g = d.genus as i64;
    let id = |s: &str| format!("combinatorics.decomposition.{s}");
    let mut out = Vec::new();

    let traced = d.traced_faces();
    let traced_ok = traced.as_ref().is_some_and(|labels| {
        let mut sorted: Vec<usize> = labels.iter().map(|p| p.index()).collect();
        sorted.sort_unstable();
        sorted == [0, 1, 2]
    });
    out.push(
        CheckEntry::new(
            id("faces"),
            "three labeled faces, and the rotation system traces exactly one face per label",
            ANCHOR_DECOMPOSITION,
            Status::from_bool(traced_ok),
        )
        .with("labeled_faces", SurfaceDecomposition::FACES)
        .with("traced_faces", traced.as_ref().map(|t| t.len())),
    );

    let per_pair = d.arcs_per_pair();
    let want_arcs = 2 * g + 1;
    out.push(
        CheckEntry::new(
            id("arcs-per-pair"),
            "each b_ij consists of 2g+1 arcs",
            ANCHOR_DECOMPOSITION,
            Status::from_bool(per_pair.iter().all(|&c| c as i64 == want_arcs)),
        )
        .with("arcs_per_pair", per_pair)
        .with("expected", want_arcs),
    );

    let want_vertices = 4 * g + 2;
    out.push(
        CheckEntry::new(
            id("vertices"),
            "B1 ∩ B2 ∩ B3 consists of 4g+2 points",
            ANCHOR_DECOMPOSITION,
            Status::from_bool(d.vertex_count() as i64 == want_vertices),
        )
        .with("vertices", d.vertex_count())
        .with("expected", want_vertices),
    );

    let incidence_ok = d.triple_points().is_some();
    out.push(
        CheckEntry::new(
            id("incidence"),
            "every vertex meets exactly one arc of each of b12, b23, b31",
            ANCHOR_DECOMPOSITION,
            Status::from_bool(incidence_ok),
        ),
    );

    let bipartite = d.arcs.iter().all(|a| {
        match (d.vertices.get(a.ends[0]), d.vertices.get(a.ends[1])) {
            (Some(x), Some(y)) => x.orientation != y.orientation,
            _ => false,
        }
    });
    out.push(
        CheckEntry::new(
            id("orientation"),
            "every arc joins vertices of opposite rotation sign (coherent orientation)",
            PLUMBING,
            Status::from_bool(bipartite),
        ),
    );

    let mut disk_ok = true;
    let mut cycle_counts = Vec::new();
    for face in Part::ALL {
        let (pa, pb) = ArcPair::bounding(face);
        let boundary_arcs = per_pair[pa.index()] + per_pair[pb.index()];
        match d.face_cycles(face) {
            Some(cycles) => {
                cycle_counts.push(Some(cycles.len()));
                disk_ok &= cycles.len() == 1 && cycles[0].len() == boundary_arcs;
            }
            None => {
                cycle_counts.push(None);
                disk_ok = false;
            }
        }
    }
    out.push(
        CheckEntry::new(
            id("disk-faces"),
            "each B_i has a single boundary cycle through all of its arcs",
            ANCHOR_DECOMPOSITION,
            Status::from_bool(disk_ok),
        )
        .with("boundary_cycles", cycle_counts),
    );

    let chi = d.euler_characteristic();
    let traced_chi = traced
        .as_ref()
        .map(|t| d.vertex_count() as i64 - d.arcs.len() as i64 + t.len() as i64);
    let euler_ok = chi == 2 - 2 * g && traced_chi == Some(chi);
    out.push(
        CheckEntry::new(
            id("euler"),
            "V - E + F = 2 - 2g, with F from the labels and from traced faces",
            ANCHOR_DECOMPOSITION,
            Status::from_bool(euler_ok),
        )
        .with("chi", chi)
        .with("chi_traced", traced_chi)
        .with("expected", 2 - 2 * g),
    );
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisectionData {
    pub g: u32,
    pub h: u32,
    /// Genus of the central surface X₁ ∩ X₂ ∩ X₃.
    pub central_genus: u64,
    /// Ranks (k₁, k₂, k₃) of the 1-handlebodies X_i.
    pub ranks: [u64; 3],
    pub sector_decomposition: SurfaceDecomposition,
    /// Number of disks N_i taken in Σ_h.
    pub marked_disks: u32,
}

pub fn central_genus(g: u32, h: u32) -> u64 {
    (2 * g as u64 + 1) * (2 * h as u64 + 1) + 1
}

pub fn handlebody_rank(g: u32, h: u32) -> u64 {
    2 * g as u64 + 2 * h as u64
}

/// χ(Σ_g × Σ_h).
pub fn product_euler_characteristic(g: u32, h: u32) -> i64 {
    (2 - 2 * g as i64) * (2 - 2 * h as i64)
}

/// Euler characteristic of a (G; k₁, k₂, k₃)-trisected closed 4-manifold.
pub fn trisection_euler_characteristic(central_genus: u64, ranks: [u64; 3]) -> i64 {
    2 + central_genus as i64 - ranks.iter().map(|&k| k as i64).sum::<i64>()
}

pub fn build_trisection_data(g: u32, h: u32) -> TrisectionData {
    let k = handlebody_rank(g, h);
    TrisectionData {
        g,
        h,
        central_genus: central_genus(g, h),
        ranks: [k; 3],
        sector_decomposition: build_surface_decomposition(g),
        marked_disks: 3,
    }
}

pub fn validate_trisection(t: &TrisectionData) -> Fragment {
    let id = |s: &str| format!("combinatorics.trisection.{s}");
    let want_genus = central_genus(t.g, t.h);
    let want_rank = handlebody_rank(t.g, t.h);
    let lhs = trisection_euler_characteristic(t.central_genus, t.ranks);
    let rhs = product_euler_characteristic(t.g, t.h);
    let max_rank = t.ranks.iter().copied().max().unwrap_or(0);
    vec![
        CheckEntry::new(
            id("genus-formula"),
            "central genus G = (2g+1)(2h+1)+1",
            ANCHOR_GENUS,
            Status::from_bool(t.central_genus == want_genus),
        )
        .with("G", t.central_genus)
        .with("expected", want_genus),
        CheckEntry::new(
            id("handlebody-ranks"),
            "each X_i is a 1-handlebody of genus 2g+2h",
            ANCHOR_GENUS,
            Status::from_bool(t.ranks.iter().all(|&k| k == want_rank)),
        )
        .with("k", t.ranks)
        .with("expected", want_rank),
        CheckEntry::new(
            id("euler-identity"),
            "2 + G - (k1+k2+k3) = (2-2g)(2-2h)",
            PLUMBING,
            Status::from_bool(lhs == rhs),
        )
        .with("lhs", lhs)
        .with("rhs", rhs),
        CheckEntry::new(
            id("rank-bound"),
            "max(k1, k2, k3) <= G",
            ANCHOR_DEFINITION,
            Status::from_bool(max_rank <= t.central_genus),
        )
        .with("max_k", max_rank),
        CheckEntry::new(
            id("marked-disks"),
            "three disjoint disks N1, N2, N3 in the fiber surface",
            ANCHOR_GENUS,
            Status::from_bool(t.marked_disks == 3),
        )
        .with("marked_disks", t.marked_disks),
        CheckEntry::new(
            id("sector-genus"),
            "the embedded three-disk decomposition is of the base surface",
            PLUMBING,
            Status::from_bool(t.sector_decomposition.genus == t.g),
        )
        .with("decomposition_genus", t.sector_decomposition.genus),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(f: &Fragment) -> bool {
        f.iter().all(|c| c.status == Status::Pass)
    }

    fn status_of(f: &Fragment, suffix: &str) -> Status {
        f.iter()
            .find(|c| c.id.ends_with(suffix))
            .unwrap_or_else(|| panic!("no entry {suffix}"))
            .status
    }

    #[test]
    fn sphere_counts() {
        let d = build_surface_decomposition(0);
        assert_eq!(d.arcs_per_pair(), [1, 1, 1]);
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.euler_characteristic(), 2);
        assert!(all_pass(&validate_decomposition(&d)));
    }

    #[test]
    fn torus_counts() {
        let d = build_surface_decomposition(1);
        assert_eq!(d.arcs_per_pair(), [3, 3, 3]);
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.euler_characteristic(), 0);
        assert!(all_pass(&validate_decomposition(&d)));
    }

    #[test]
    fn genus_four_counts() {
        // 2g+1 = 9, 4g+2 = 18, 3 - 27 + 18 = -6
        let d = build_surface_decomposition(4);
        assert_eq!(d.arcs_per_pair(), [9, 9, 9]);
        assert_eq!(d.vertex_count(), 18);
        assert_eq!(d.euler_characteristic(), -6);
        assert_eq!(d.traced_faces().unwrap().len(), 3);
    }

    #[test]
    fn genus_two_validates() {
        let f = validate_decomposition(&build_surface_decomposition(2));
        assert_eq!(f.len(), 7);
        assert!(all_pass(&f), "{f:#?}");
    }

    #[test]
    fn dropping_a_vertex_breaks_euler() {
        let mut d = build_surface_decomposition(2);
        d.vertices.pop();
        assert_eq!(d.vertex_count(), 4 * 2 + 1);
        let f = validate_decomposition(&d);
        assert_eq!(status_of(&f, ".euler"), Status::Fail);
        assert_eq!(status_of(&f, ".vertices"), Status::Fail);
    }

    #[test]
    fn doubled_pair_at_vertex_breaks_incidence() {
        let mut d = build_surface_decomposition(1);
        // turn a b23 arc at vertex 0 into a second b12 arc there
        let k = d
            .arcs
            .iter()
            .position(|a| a.pair == ArcPair::B23 && a.ends.contains(&0))
            .unwrap();
        d.arcs[k].pair = ArcPair::B12;
        let f = validate_decomposition(&d);
        assert_eq!(status_of(&f, ".incidence"), Status::Fail);
        assert_eq!(status_of(&f, ".disk-faces"), Status::Fail);
        assert!(d.stabilize(0).is_err());
    }

    #[test]
    fn rotation_is_reversed_at_negative_vertices() {
        let d = SurfaceDecomposition::sphere();
        let north = d.rotation_at(0).unwrap();
        let south = d.rotation_at(1).unwrap();
        assert_eq!(north, [0, 1, 2]);
        assert_eq!(south, [0, 2, 1]);
    }

    #[test]
    fn stabilizing_any_vertex_gives_next_genus() {
        let d = build_surface_decomposition(1);
        for v in 0..d.vertex_count() {
            let s = d.stabilize(v).unwrap();
            assert_eq!(s.genus, 2);
            assert!(all_pass(&validate_decomposition(&s)), "vertex {v}");
            assert_eq!(s.arcs_per_pair(), build_surface_decomposition(2).arcs_per_pair());
        }
        assert_eq!(d.stabilize(99), Err(StabilizeError::NoSuchVertex(99)));
    }

    #[test]
    fn trisection_examples() {
        let t = build_trisection_data(0, 0);
        assert_eq!((t.central_genus, t.ranks), (2, [0, 0, 0]));
        let t = build_trisection_data(1, 1);
        assert_eq!((t.central_genus, t.ranks), (10, [4, 4, 4]));
        let t = build_trisection_data(1, 0);
        assert_eq!((t.central_genus, t.ranks), (4, [2, 2, 2]));
        // 2 + 4 - 6 = 0 = (2-2)(2-0)
        assert_eq!(trisection_euler_characteristic(4, [2, 2, 2]), 0);
        assert_eq!(product_euler_characteristic(1, 0), 0);
    }

    #[test]
    fn trisection_three_two() {
        // (7)(5)+1 = 36, k = 10, 2 + 36 - 30 = 8 = (-4)(-2)
        let t = build_trisection_data(3, 2);
        assert_eq!(t.central_genus, 36);
        assert_eq!(t.ranks, [10, 10, 10]);
        assert_eq!(trisection_euler_characteristic(36, [10; 3]), 8);
        assert_eq!(product_euler_characteristic(3, 2), 8);
        assert!(all_pass(&validate_trisection(&t)));
    }

    #[test]
    fn wrong_central_genus_is_caught() {
        let mut t = build_trisection_data(1, 1);
        t.central_genus = 9;
        let f = validate_trisection(&t);
        assert_eq!(status_of(&f, ".genus-formula"), Status::Fail);
        assert_eq!(status_of(&f, ".euler-identity"), Status::Fail);
        assert_eq!(status_of(&f, ".handlebody-ranks"), Status::Pass);
    }

    #[test]
    fn unbalanced_ranks_are_checked_entrywise() {
        let mut t = build_trisection_data(1, 1);
        t.ranks = [4, 4, 11];
        let f = validate_trisection(&t);
        assert_eq!(status_of(&f, ".handlebody-ranks"), Status::Fail);
        assert_eq!(status_of(&f, ".rank-bound"), Status::Fail);
    }
}
