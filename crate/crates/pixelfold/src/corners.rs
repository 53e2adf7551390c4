//! Corner placement feasibility, the folded-boundary contraction check,
//! and the corpus filters built on them (self-symmetric paths, line trees).
//!
//! The four corners of the square sheet land on four path steps spaced
//! n²/4 apart. A corner step must be a switchback: the steps flanking it
//! run in opposite directions. Each boundary unit folds isometrically, so
//! distances between tracked boundary points may only shrink; the check
//! compares exact integer squared distances for every flap-state
//! combination.

use crate::geometry::{parity_of, BoardSpec, LatticePoint, ParityClass, Symmetry};
use crate::grid::{GridGraph, SpanningTree};
use crate::path::{alignments, stabilizer, EdgePath};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CornerError {
    #[error("offset {offset} is not a feasible corner placement")]
    InfeasiblePlacement { offset: u32 },
    #[error("offset {offset} out of range 0..{max}")]
    OffsetOutOfRange { offset: u32, max: u32 },
}

/// Four equally spaced corner steps, identified by the offset of the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerPlacement {
    pub offset: u32,
    pub corner_steps: [u32; 4],
}

impl CornerPlacement {
    pub fn at_offset(path_len: usize, offset: u32) -> Self {
        let q = (path_len / 4) as u32;
        CornerPlacement { offset, corner_steps: [offset, offset + q, offset + 2 * q, offset + 3 * q] }
    }
}

/// A paper corner can sit on step i iff the successor runs opposite to the
/// predecessor (switchback); the staircase case (equal directions) would
/// stretch the sheet around the corner.
pub fn corner_feasible_at(path: &EdgePath, i: usize) -> bool {
    let m = path.len();
    let before = path.steps[(i + m - 1) % m].dir;
    let after = path.steps[(i + 1) % m].dir;
    after == before.opposite()
}

/// All feasible placements of the path. Empty means no corner assignment
/// exists.
pub fn enumerate_corner_placements(path: &EdgePath) -> Vec<CornerPlacement> {
    let m = path.len();
    let q = m / 4;
    (0..q)
        .filter(|&o| (0..4).all(|k| corner_feasible_at(path, o + k * q)))
        .map(|o| CornerPlacement::at_offset(m, o as u32))
        .collect()
}

/// Corpus-level admissibility: consecutive corner steps must not be
/// adjacent on the loop, or the corner mechanisms collide. This excludes
/// only the degenerate 2×2 board (spacing 1), whose single placement is
/// counted as zero in every corpus tally.
pub fn corners_admissible(spec: &BoardSpec) -> bool {
    spec.path_len() / 4 >= 2
}

// ---- self-symmetry and line-tree filters ------------------------------------

#[derive(Debug, Clone)]
pub struct SelfSymmetryInfo {
    pub index: usize,
    /// Stabilizer elements that are horizontal or vertical reflections.
    pub axis: Vec<Symmetry>,
    /// Any other nontrivial stabilizer elements (diagonal mirrors,
    /// rotations).
    pub other: Vec<Symmetry>,
}

/// Representatives whose loop is fixed by a horizontal or vertical
/// reflection, with any further stabilizer elements reported alongside.
pub fn filter_self_symmetric(reps: &[EdgePath]) -> Vec<SelfSymmetryInfo> {
    reps.iter()
        .enumerate()
        .filter_map(|(index, path)| {
            let stab = stabilizer(path);
            let (axis, other): (Vec<_>, Vec<_>) = stab
                .into_iter()
                .partition(|s| matches!(s, Symmetry::MirrorH | Symmetry::MirrorV));
            if axis.is_empty() {
                None
            } else {
                Some(SelfSymmetryInfo { index, axis, other })
            }
        })
        .collect()
}

/// Indices of representatives whose spanning tree is a single line (two
/// leaves) and which admit at least one corner placement.
pub fn filter_line_trees(items: &[(SpanningTree, EdgePath)], g: &GridGraph) -> Vec<usize> {
    items
        .iter()
        .enumerate()
        .filter(|(_, (tree, path))| {
            tree.leaf_count(g) == 2 && !enumerate_corner_placements(path).is_empty()
        })
        .map(|(i, _)| i)
        .collect()
}

/// Placements fixed by one of the path's own symmetries, as
/// (symmetry, offset) pairs. The interesting outcome is the empty list:
/// a symmetric path whose placements are only swapped, never preserved.
pub fn self_fixed_placements(path: &EdgePath) -> Vec<(Symmetry, u32)> {
    let m = path.len();
    let q = (m / 4) as u32;
    let offsets: Vec<u32> =
        enumerate_corner_placements(path).iter().map(|p| p.offset).collect();
    let mut fixed = Vec::new();
    for s in stabilizer(path) {
        let image = path.transformed(s);
        for (r, rev) in alignments(path, &image) {
            for &o in &offsets {
                let img = placement_image_offset(m, q, r, rev, o);
                if img == o && !fixed.contains(&(s, o)) {
                    fixed.push((s, o));
                }
            }
        }
    }
    fixed
}

/// Offset of the image placement when the path maps onto itself with the
/// given rotation shift and optional reversal.
pub(crate) fn placement_image_offset(m: usize, q: u32, r: usize, rev: bool, o: u32) -> u32 {
    let m = m as i64;
    let raw = if rev { m - 1 - r as i64 - o as i64 } else { o as i64 - r as i64 };
    (raw.rem_euclid(m) % q as i64) as u32
}

// ---- folded boundary layout ---------------------------------------------------

/// Folded positions of the 2n² tracked boundary points: segment endpoints
/// at even arclength, flap apexes (two candidate positions each) at odd
/// arclength. The four paper corners sit on the apexes of the corner
/// steps.
#[derive(Debug, Clone)]
pub struct FoldedBoundaryLayout {
    pub n: u32,
    pub offset: u32,
    /// Start vertex of step k: folded position of arclength t = 2k.
    pub vertices: Vec<LatticePoint>,
    /// Apex candidates of step k (odd-odd corner, even-even corner):
    /// folded positions of arclength t = 2k+1.
    pub apexes: Vec<(LatticePoint, LatticePoint)>,
}

fn apex_candidates(sq: crate::geometry::SquareId) -> (LatticePoint, LatticePoint) {
    let (i, j) = (sq.i as i32, sq.j as i32);
    let corners = [
        LatticePoint::new(i, j),
        LatticePoint::new(i + 1, j),
        LatticePoint::new(i, j + 1),
        LatticePoint::new(i + 1, j + 1),
    ];
    let oo = corners.iter().copied().find(|&p| parity_of(p) == ParityClass::OddOdd);
    let ee = corners.iter().copied().find(|&p| parity_of(p) == ParityClass::EvenEven);
    (oo.expect("square has an odd-odd corner"), ee.expect("square has an even-even corner"))
}

/// Layout for a feasible placement.
pub fn folded_layout(
    path: &EdgePath,
    placement: &CornerPlacement,
) -> Result<FoldedBoundaryLayout, CornerError> {
    let q = (path.len() / 4) as u32;
    if placement.offset >= q {
        return Err(CornerError::OffsetOutOfRange { offset: placement.offset, max: q });
    }
    if !(0..4).all(|k| corner_feasible_at(path, (placement.offset + k * q) as usize)) {
        return Err(CornerError::InfeasiblePlacement { offset: placement.offset });
    }
    Ok(layout_at_offset(path, placement.offset))
}

/// Layout at an arbitrary offset, feasible or not. Used to exhibit the
/// staircase-corner contraction counterexample.
pub fn layout_at_offset(path: &EdgePath, offset: u32) -> FoldedBoundaryLayout {
    FoldedBoundaryLayout {
        n: path.n,
        offset,
        vertices: path.steps.iter().map(|s| s.start()).collect(),
        apexes: path.steps.iter().map(|s| apex_candidates(s.square)).collect(),
    }
}

impl FoldedBoundaryLayout {
    pub fn tracked_points(&self) -> usize {
        2 * self.vertices.len()
    }

    /// Folded candidate positions of arclength t (one for even t, two for
    /// odd t).
    pub fn folded(&self, t: usize) -> Vec<LatticePoint> {
        if t.is_multiple_of(2) {
            vec![self.vertices[t / 2]]
        } else {
            let (a, b) = self.apexes[(t - 1) / 2];
            vec![a, b]
        }
    }

    /// Position of arclength t on the boundary of the unfolded square of
    /// side n²/2, with the paper corners pinned to the corner-step apexes.
    pub fn unfolded(&self, t: usize) -> (i64, i64) {
        let m = self.vertices.len() as i64; // n²
        let total = 2 * m;
        let side = m / 2;
        let u = (t as i64 - (2 * self.offset as i64 + 1)).rem_euclid(total);
        let (k, r) = (u / side, u % side);
        match k {
            0 => (r, 0),
            1 => (side, r),
            2 => (side - r, side),
            _ => (0, side - r),
        }
    }
}

// ---- contraction check ---------------------------------------------------------

/// One compared pair, with exact squared distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairComparison {
    pub t_i: u32,
    pub t_j: u32,
    pub unfolded_sq: i64,
    /// Largest folded squared distance over the flap-state combinations.
    pub folded_sq_max: i64,
}

#[derive(Debug, Clone)]
pub struct ContractionReport {
    pub pass: bool,
    pub comparisons_performed: u64,
    pub violation_count: u64,
    /// First violations encountered, capped.
    pub violations: Vec<PairComparison>,
    /// Pair with the largest folded² − unfolded² margin (ties: lowest
    /// indices); a violation iff positive.
    pub worst_pair: Option<PairComparison>,
}

const VIOLATION_CAP: usize = 64;

/// Folding may never increase the distance between two boundary points.
/// Every pair of tracked points is compared for every combination of the
/// flap states involved; all squared distances are exact integers.
pub fn contraction_check(layout: &FoldedBoundaryLayout, _spec: &BoardSpec) -> ContractionReport {
    let total = layout.tracked_points();
    let unfolded: Vec<(i64, i64)> = (0..total).map(|t| layout.unfolded(t)).collect();
    let folded: Vec<Vec<LatticePoint>> = (0..total).map(|t| layout.folded(t)).collect();

    let mut comparisons = 0u64;
    let mut violation_count = 0u64;
    let mut violations = Vec::new();
    let mut worst: Option<(i64, PairComparison)> = None;

    for i in 0..total {
        for j in i + 1..total {
            let (ux, uy) = (unfolded[i].0 - unfolded[j].0, unfolded[i].1 - unfolded[j].1);
            let unfolded_sq = ux * ux + uy * uy;
            let mut folded_sq_max = i64::MIN;
            for a in &folded[i] {
                for b in &folded[j] {
                    comparisons += 1;
                    folded_sq_max = folded_sq_max.max(a.dist_sq(*b));
                }
            }
            let pair = PairComparison {
                t_i: i as u32,
                t_j: j as u32,
                unfolded_sq,
                folded_sq_max,
            };
            let margin = folded_sq_max - unfolded_sq;
            if margin > 0 {
                violation_count += 1;
                if violations.len() < VIOLATION_CAP {
                    violations.push(pair);
                }
            }
            if worst.as_ref().is_none_or(|(m, _)| margin > *m) {
                worst = Some((margin, pair));
            }
        }
    }

    ContractionReport {
        pass: violation_count == 0,
        comparisons_performed: comparisons,
        violation_count,
        violations,
        worst_pair: worst.map(|(_, p)| p),
    }
}

/// The printed closed form for the number of distance comparisons,
/// (19/2)n⁴ − (15/2)n² − 2. Reported for reference; the implemented
/// tracked-point model performs its own count (see
/// `ContractionReport::comparisons_performed`), and the two are not
/// asserted equal.
pub fn comparison_count_formula(spec: &BoardSpec) -> u64 {
    let n2 = (spec.n as u64) * (spec.n as u64);
    (19 * n2 * n2 - 15 * n2 - 4) / 2
}
