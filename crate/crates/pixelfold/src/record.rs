//! Serializable dataset records and the corpus pipeline that fills them:
//! enumerate, deduplicate under the symmetry group, and annotate with
//! corner, symmetry, line-tree and contraction results.

use crate::corners::{
    contraction_check, corners_admissible, enumerate_corner_placements, folded_layout,
    CornerPlacement,
};
use crate::geometry::{BoardSpec, Dir, SquareId, Symmetry};
use crate::grid::{GridGraph, SpanningTree};
use crate::path::{canonical_key, stabilizer, tree_to_path, CanonicalKey, EdgePath, Step};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Loop symmetry classification stored in dataset records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfSymmetry {
    None,
    Horizontal,
    Vertical,
    Other,
}

pub fn classify_self_symmetry(path: &EdgePath) -> SelfSymmetry {
    let stab = stabilizer(path);
    match stab.as_slice() {
        [] => SelfSymmetry::None,
        [Symmetry::MirrorH] => SelfSymmetry::Horizontal,
        [Symmetry::MirrorV] => SelfSymmetry::Vertical,
        _ => SelfSymmetry::Other,
    }
}

/// One step as serialized: board square (i, j) and direction (dx, dy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord(pub u32, pub u32, pub i8, pub i8);

/// One enumerated path with its derived annotations; one JSON object per
/// line in dataset files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub n: u32,
    pub canonical_key: String,
    pub tree_arcs: Vec<(u32, u32)>,
    pub steps: Vec<StepRecord>,
    pub corner_offsets: Vec<u32>,
    pub self_symmetry: SelfSymmetry,
    pub is_line_tree: bool,
    /// Contraction verdict per corner offset; absent until a contraction
    /// pass fills it.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub contraction_pass: Option<Vec<bool>>,
}

impl PathRecord {
    pub fn to_path(&self) -> Option<EdgePath> {
        let steps = self
            .steps
            .iter()
            .map(|&StepRecord(i, j, dx, dy)| {
                Dir::from_delta(dx as i32, dy as i32)
                    .map(|dir| Step { square: SquareId::new(i, j), dir })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(EdgePath { n: self.n, steps })
    }
}

/// Build the record for one enumerated tree/path pair. Corner offsets are
/// the geometric placements; corpus tallies additionally require
/// [`corners_admissible`].
pub fn build_record(g: &GridGraph, tree: &SpanningTree, path: &EdgePath) -> PathRecord {
    let key = canonical_key(path);
    PathRecord {
        n: path.n,
        canonical_key: key.hex(),
        tree_arcs: tree.arc_ids.iter().map(|&a| g.arcs[a as usize]).collect(),
        steps: path
            .steps
            .iter()
            .map(|s| {
                let (dx, dy) = s.dir.delta();
                StepRecord(s.square.i, s.square.j, dx as i8, dy as i8)
            })
            .collect(),
        corner_offsets: enumerate_corner_placements(path).iter().map(|p| p.offset).collect(),
        self_symmetry: classify_self_symmetry(path),
        is_line_tree: tree.leaf_count(g) == 2,
        contraction_pass: None,
    }
}

/// Run the contraction check for every feasible placement of the record's
/// path.
pub fn contraction_verdicts(spec: &BoardSpec, path: &EdgePath) -> Vec<bool> {
    enumerate_corner_placements(path)
        .iter()
        .map(|placement| {
            let layout = folded_layout(path, placement).expect("enumerated placement is feasible");
            contraction_check(&layout, spec).pass
        })
        .collect()
}

/// One orbit representative: the first enumerated member of its symmetry
/// class, in deterministic tier-3 order.
#[derive(Debug, Clone)]
pub struct OrbitRep {
    pub tree: SpanningTree,
    pub path: EdgePath,
    pub key: CanonicalKey,
}

impl OrbitRep {
    pub fn placements(&self) -> Vec<CornerPlacement> {
        enumerate_corner_placements(&self.path)
    }
}

/// Enumerate all spanning trees and keep one representative per canonical
/// orbit.
pub fn orbit_representatives(spec: &BoardSpec) -> Vec<OrbitRep> {
    let g = crate::grid::build_grid_graph(spec);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut reps = Vec::new();
    for tree in crate::enumeration::tier3_tree_enumeration(spec) {
        let path = tree_to_path(&tree, &g).expect("spanning tree threads into one loop");
        let key = canonical_key(&path);
        if seen.insert(key.bytes.clone()) {
            reps.push(OrbitRep { tree, path, key });
        }
    }
    reps
}

/// Corner-feasible orbit representatives (the Ñ corpus): at least one
/// placement, on a board whose corner mechanisms do not collide.
pub fn corner_feasible_reps(spec: &BoardSpec, reps: &[OrbitRep]) -> Vec<usize> {
    if !corners_admissible(spec) {
        return Vec::new();
    }
    reps.iter()
        .enumerate()
        .filter(|(_, r)| !enumerate_corner_placements(&r.path).is_empty())
        .map(|(i, _)| i)
        .collect()
}

/// Aggregated counts for a run manifest; consistent by construction:
/// corner_feasible ≤ orbits ≤ raw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestCounts {
    pub raw: u64,
    pub orbits: u64,
    pub corner_feasible: u64,
    pub self_symmetric: u64,
    pub line_trees: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
    pub lines: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub n: u32,
    pub tiers: Vec<u8>,
    pub counts: ManifestCounts,
    pub timings_seconds: f64,
    pub outputs: Vec<OutputDigest>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub aborted: Option<String>,
}

impl RunManifest {
    pub fn consistent(&self) -> bool {
        self.counts.corner_feasible <= self.counts.orbits
            && self.counts.orbits <= self.counts.raw
            && self.counts.self_symmetric <= self.counts.corner_feasible
            && self.counts.line_trees <= self.counts.corner_feasible
    }
}
