//! Exact enumeration and analysis of boundary edge patterns for
//! flat-foldable pixel-matrix origami.
//!
//! An n×n board of independently color-flippable squares constrains the
//! boundary of the folded sheet to a closed, non-crossing loop through one
//! diagonal of every board square. This crate builds those loops, counts
//! and enumerates them exactly (they biject with spanning trees of an
//! (n/2)×(n/2) grid graph), deduplicates them under the symmetry group of
//! the square, and applies the corner-placement and distance-contraction
//! feasibility checks, plus the closed-form paper-size bounds.

pub mod bounds;
pub mod corners;
pub mod enumeration;
pub mod geometry;
pub mod grid;
pub mod path;
pub mod record;

pub use geometry::{
    apply_symmetry, board_spec, classify_point, BoardSpec, Dir, GeometryError, LatticePoint,
    ParityClass, SquareId, Symmetry, ALL_SYMMETRIES,
};
pub use grid::{
    build_grid_graph, kirchhoff_count, matrix_tree_count, naive_arc_subset_count, scale_ratio,
    tree_count_estimate, GridGraph, ScaleRatio, SpanningTree, TreeCount,
};
pub use path::{
    canonical_key, fixed_segments, path_to_tree, path_validate, square_segment, stabilizer,
    tree_to_path, turn_word, CanonicalKey, EdgePath, JunctionState, PathError, Step, TurnWord,
    ValidationReport,
};
pub use bounds::{bound_report, mean_thickness, scale_separation, BoundReport, ScaleSeparation};
pub use corners::{
    comparison_count_formula, contraction_check, corner_feasible_at, corners_admissible,
    enumerate_corner_placements, filter_line_trees, filter_self_symmetric, folded_layout,
    layout_at_offset, self_fixed_placements, ContractionReport, CornerPlacement,
    FoldedBoundaryLayout, PairComparison, SelfSymmetryInfo,
};
pub use enumeration::{
    benchmark, cross_check, tier1_brute_force, tier2_path_growing, tier3_tree_enumeration,
    BenchRow, CrossCheckReport, EnumerationBudget, TierResult,
};
pub use record::{
    build_record, classify_self_symmetry, contraction_verdicts, corner_feasible_reps,
    orbit_representatives, ManifestCounts, OrbitRep, PathRecord, RunManifest, SelfSymmetry,
    StepRecord,
};

// Arithmetic types that appear in public signatures.
pub use num_bigint::BigUint;
pub use num_rational::Ratio;
