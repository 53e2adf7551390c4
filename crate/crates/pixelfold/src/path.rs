//! The fine-scale boundary pattern: a closed non-crossing loop of n²
//! diagonal segments, one per board square.
//!
//! Every valid loop uses the same fixed segment set (the mixed-parity
//! diagonal of each square); what varies is how the four segment ends
//! meeting at each interior junction are threaded past each other. A
//! junction is `Link` when the corridor between the two adjacent diamond
//! cells stays open, `Cut` otherwise, and single loops correspond exactly
//! to spanning trees of the coarse grid graph.

use crate::geometry::{parity_of, BoardSpec, Dir, LatticePoint, ParityClass, SquareId, Symmetry, ALL_DIRS, ALL_SYMMETRIES};
use crate::grid::{GridGraph, SpanningTree};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("threading produced {loops} loops instead of 1")]
    NotSingleLoop { loops: usize },
    #[error("step {step} does not traverse its square's diagonal")]
    BadStep { step: usize },
    #[error("junction {0:?} is never traversed")]
    JunctionNotVisited(LatticePoint),
    #[error("inconsistent or collinear threading at {0:?}")]
    BadThreading(LatticePoint),
    #[error("consecutive steps {step} and next are not perpendicular")]
    NotPerpendicular { step: usize },
}

/// One traversal of one square's diagonal segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub square: SquareId,
    pub dir: Dir,
}

impl Step {
    pub fn try_start(&self) -> Option<LatticePoint> {
        let (a, b) = square_segment(self.square);
        if self.dir.apply_to(a) == b {
            Some(a)
        } else if self.dir.apply_to(b) == a {
            Some(b)
        } else {
            None
        }
    }

    pub fn start(&self) -> LatticePoint {
        self.try_start().expect("step direction matches its square diagonal")
    }

    pub fn end(&self) -> LatticePoint {
        self.dir.apply_to(self.start())
    }

    pub fn reversed(&self) -> Step {
        Step { square: self.square, dir: self.dir.opposite() }
    }
}

/// The unique feasible diagonal of a board square: the one joining its two
/// mixed-parity corners (avoiding the odd-odd and even-even corners).
pub fn square_segment(sq: SquareId) -> (LatticePoint, LatticePoint) {
    let (i, j) = (sq.i as i32, sq.j as i32);
    let corners = [
        LatticePoint::new(i, j),
        LatticePoint::new(i + 1, j),
        LatticePoint::new(i, j + 1),
        LatticePoint::new(i + 1, j + 1),
    ];
    let mut mixed = corners.into_iter().filter(|&p| parity_of(p) == ParityClass::Mixed);
    let a = mixed.next().expect("every square has two mixed corners");
    let b = mixed.next().expect("every square has two mixed corners");
    debug_assert!(mixed.next().is_none());
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// All n² fixed segments of a board, in square-index order.
pub fn fixed_segments(spec: &BoardSpec) -> Vec<(LatticePoint, LatticePoint)> {
    (0..spec.path_len()).map(|idx| square_segment(SquareId::from_index(idx, spec.n))).collect()
}

/// A closed boundary pattern: cyclic sequence of n² steps. Constructed
/// loops are normalized to counterclockwise traversal (interior on the
/// left) starting at the lowest-indexed square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub n: u32,
    pub steps: Vec<Step>,
}

/// Threading state of one interior junction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JunctionState {
    Link,
    Cut,
}

impl EdgePath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, k: usize) -> Step {
        self.steps[k % self.steps.len()]
    }

    /// Start vertices of each step, in order.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        self.steps.iter().map(|s| s.start()).collect()
    }

    /// Twice the signed area of the traced polygon (positive when
    /// counterclockwise).
    pub fn signed_area2(&self) -> i64 {
        self.steps
            .iter()
            .map(|s| {
                let a = s.start();
                let b = s.end();
                a.x as i64 * b.y as i64 - b.x as i64 * a.y as i64
            })
            .sum()
    }

    pub fn reversed(&self) -> EdgePath {
        let steps = self.steps.iter().rev().map(|s| s.reversed()).collect();
        EdgePath { n: self.n, steps }
    }

    /// Image under a board symmetry; traversal order is kept, so the
    /// result of a reflection winds the other way.
    pub fn transformed(&self, s: Symmetry) -> EdgePath {
        let steps = self
            .steps
            .iter()
            .map(|st| Step { square: s.apply_square(st.square, self.n), dir: s.apply_dir(st.dir) })
            .collect();
        EdgePath { n: self.n, steps }
    }

    /// Counterclockwise orientation, lowest square index first.
    pub fn normalize(&mut self) {
        if self.signed_area2() < 0 {
            *self = self.reversed();
        }
        if let Some(pos) = self
            .steps
            .iter()
            .enumerate()
            .min_by_key(|(_, s)| s.square.index(self.n))
            .map(|(k, _)| k)
        {
            self.steps.rotate_left(pos);
        }
    }
}

// ---- threading ------------------------------------------------------------

/// Quadrant square seen from `p` in direction `e`, if on the board.
fn quadrant_square(p: LatticePoint, e: Dir, n: u32) -> Option<SquareId> {
    let (dx, dy) = e.delta();
    let i = p.x + (dx - 1) / 2;
    let j = p.y + (dy - 1) / 2;
    if i >= 0 && j >= 0 && i < n as i32 && j < n as i32 {
        Some(SquareId::new(i as u32, j as u32))
    } else {
        None
    }
}

fn is_interior_junction(p: LatticePoint, n: u32) -> bool {
    parity_of(p) == ParityClass::Mixed && p.x > 0 && p.y > 0 && p.x < n as i32 && p.y < n as i32
}

/// Outgoing end for an arrival end `e_in` at point `p` under the given
/// junction states. Horizontal junctions (even x) pair left with right
/// ends when linked; vertical junctions pair top with bottom.
fn partner_end(p: LatticePoint, e_in: Dir, n: u32, is_link: &impl Fn(LatticePoint) -> bool) -> Dir {
    if is_interior_junction(p, n) {
        let horizontal = p.x % 2 == 0;
        if horizontal == is_link(p) {
            e_in.flip_x()
        } else {
            e_in.flip_y()
        }
    } else {
        // boundary point: exactly two incident segments, threading forced
        for &e in &ALL_DIRS {
            if e != e_in && quadrant_square(p, e, n).is_some() {
                return e;
            }
        }
        unreachable!("boundary mixed point has a second incident segment")
    }
}

/// Decompose the fixed segment set into loops under the given junction
/// states. Each undirected loop is returned once.
pub fn thread_fixed_segments(
    spec: &BoardSpec,
    is_link: impl Fn(LatticePoint) -> bool,
) -> Vec<Vec<Step>> {
    let n = spec.n;
    let total = spec.path_len();
    let mut visited = vec![false; total];
    let mut loops = Vec::new();
    for start_idx in 0..total {
        if visited[start_idx] {
            continue;
        }
        let square = SquareId::from_index(start_idx, n);
        let (a, b) = square_segment(square);
        let dir = Dir::from_delta(b.x - a.x, b.y - a.y).expect("segment spans one diagonal");
        let first = Step { square, dir };
        let mut steps = Vec::new();
        let mut cur = first;
        loop {
            visited[cur.square.index(n)] = true;
            steps.push(cur);
            let q = cur.end();
            let e_out = partner_end(q, cur.dir.opposite(), n, &is_link);
            let next_square =
                quadrant_square(q, e_out, n).expect("threading stays on the board");
            cur = Step { square: next_square, dir: e_out };
            if cur == first {
                break;
            }
        }
        loops.push(steps);
    }
    loops
}

/// Build the unique boundary loop of a spanning tree: linked junctions are
/// exactly the tree arcs. A non-tree arc set yields a loop-count error.
pub fn tree_to_path(tree: &SpanningTree, g: &GridGraph) -> Result<EdgePath, PathError> {
    let spec = g.spec;
    let mut link = junction_table(&spec, false);
    for &arc_id in &tree.arc_ids {
        let j = g.arc_junction(arc_id as usize);
        link[point_key(j, spec.n)] = true;
    }
    let n = spec.n;
    let mut loops = thread_fixed_segments(&spec, |p| link[point_key(p, n)]);
    if loops.len() != 1 {
        return Err(PathError::NotSingleLoop { loops: loops.len() });
    }
    let mut path = EdgePath { n, steps: loops.pop().unwrap() };
    path.normalize();
    Ok(path)
}

fn point_key(p: LatticePoint, n: u32) -> usize {
    (p.y as usize) * (n as usize + 1) + p.x as usize
}

fn junction_table(spec: &BoardSpec, initial: bool) -> Vec<bool> {
    vec![initial; (spec.n as usize + 1) * (spec.n as usize + 1)]
}

/// Recover the junction states (and hence the tree arcs) from a path.
pub fn path_to_tree(path: &EdgePath, g: &GridGraph) -> Result<SpanningTree, PathError> {
    let n = g.spec.n;
    let m = path.len();
    let mut states: HashMap<LatticePoint, JunctionState> = HashMap::new();
    for k in 0..m {
        let cur = path.steps[k];
        let next = path.steps[(k + 1) % m];
        let q = cur.try_start().ok_or(PathError::BadStep { step: k })?;
        let q = cur.dir.apply_to(q);
        if !is_interior_junction(q, n) {
            continue;
        }
        let e_in = cur.dir.opposite();
        let e_out = next.dir;
        let horizontal = q.x % 2 == 0;
        let state = if e_out == e_in.flip_x() {
            if horizontal {
                JunctionState::Link
            } else {
                JunctionState::Cut
            }
        } else if e_out == e_in.flip_y() {
            if horizontal {
                JunctionState::Cut
            } else {
                JunctionState::Link
            }
        } else {
            return Err(PathError::BadThreading(q));
        };
        match states.insert(q, state) {
            Some(prev) if prev != state => return Err(PathError::BadThreading(q)),
            _ => {}
        }
    }
    let mut arc_ids = Vec::new();
    for arc_id in 0..g.arcs.len() {
        let j = g.arc_junction(arc_id);
        match states.get(&j) {
            Some(JunctionState::Link) => arc_ids.push(arc_id as u32),
            Some(JunctionState::Cut) => {}
            None => return Err(PathError::JunctionNotVisited(j)),
        }
    }
    Ok(SpanningTree::new(arc_ids))
}

// ---- validation -----------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    WrongLength { expected: usize, actual: usize },
    BadStep { step: usize },
    BrokenContinuity { step: usize },
    SquareMissing { square: SquareId },
    SquareRepeated { square: SquareId },
    AlignedSteps { step: usize },
    CrossingAt { point: LatticePoint },
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<PathViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check all loop invariants separately: closure/continuity, coverage of
/// every square exactly once, perpendicular consecutive steps, and
/// non-crossing threading at twice-visited points.
pub fn path_validate(path: &EdgePath, spec: &BoardSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = spec.n;
    let m = path.len();
    if m != spec.path_len() {
        report.violations.push(PathViolation::WrongLength { expected: spec.path_len(), actual: m });
    }
    if m == 0 {
        return report;
    }

    let mut ok_step = vec![false; m];
    for (k, s) in path.steps.iter().enumerate() {
        let in_range = s.square.i < n && s.square.j < n;
        if !in_range || s.try_start().is_none() {
            report.violations.push(PathViolation::BadStep { step: k });
        } else {
            ok_step[k] = true;
        }
    }

    // coverage
    let mut count = vec![0u32; spec.path_len()];
    for (k, s) in path.steps.iter().enumerate() {
        if ok_step[k] {
            count[s.square.index(n)] += 1;
        }
    }
    for (idx, &c) in count.iter().enumerate() {
        let square = SquareId::from_index(idx, n);
        if c == 0 {
            report.violations.push(PathViolation::SquareMissing { square });
        } else if c > 1 {
            report.violations.push(PathViolation::SquareRepeated { square });
        }
    }

    // continuity, perpendicularity, and transit bookkeeping
    let mut passages: HashMap<LatticePoint, Vec<(Dir, Dir)>> = HashMap::new();
    for k in 0..m {
        let next = (k + 1) % m;
        if !(ok_step[k] && ok_step[next]) {
            continue;
        }
        let cur = path.steps[k];
        let nxt = path.steps[next];
        if cur.end() != nxt.start() {
            report.violations.push(PathViolation::BrokenContinuity { step: k });
            continue;
        }
        if !cur.dir.is_perpendicular_to(nxt.dir) {
            report.violations.push(PathViolation::AlignedSteps { step: k });
        }
        passages.entry(cur.end()).or_default().push((cur.dir.opposite(), nxt.dir));
    }

    // crossing: two passages through one point must not interleave
    let mut crossing: Vec<LatticePoint> = passages
        .iter()
        .filter(|(_, v)| v.len() == 2 && passages_cross(v[0], v[1]))
        .map(|(&p, _)| p)
        .collect();
    crossing.sort();
    for p in crossing {
        report.violations.push(PathViolation::CrossingAt { point: p });
    }
    report
}

/// Counterclockwise position of an end around its point.
fn cyclic_pos(d: Dir) -> u8 {
    match d {
        Dir::NE => 0,
        Dir::NW => 1,
        Dir::SW => 2,
        Dir::SE => 3,
    }
}

fn passages_cross(a: (Dir, Dir), b: (Dir, Dir)) -> bool {
    let (a0, a1) = (cyclic_pos(a.0), cyclic_pos(a.1));
    let (b0, b1) = (cyclic_pos(b.0), cyclic_pos(b.1));
    // strictly between a0 and a1 going counterclockwise
    let between = |x: u8| -> bool {
        let span = (a1 + 4 - a0) % 4;
        let off = (x + 4 - a0) % 4;
        off > 0 && off < span
    };
    between(b0) != between(b1)
}

// ---- turn words -----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    L,
    R,
}

/// The cyclic word of ±90° turns between consecutive steps. A single
/// counterclockwise loop has four more L than R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnWord {
    pub letters: Vec<Turn>,
}

impl TurnWord {
    pub fn net_quarter_turns(&self) -> i64 {
        self.letters.iter().map(|t| if *t == Turn::L { 1i64 } else { -1 }).sum()
    }
}

pub fn turn_word(path: &EdgePath) -> Result<TurnWord, PathError> {
    let m = path.len();
    let mut letters = Vec::with_capacity(m);
    for k in 0..m {
        let d1 = path.steps[k].dir;
        let d2 = path.steps[(k + 1) % m].dir;
        let (ax, ay) = d1.delta();
        let (bx, by) = d2.delta();
        match ax * by - ay * bx {
            2 => letters.push(Turn::L),
            -2 => letters.push(Turn::R),
            _ => return Err(PathError::NotPerpendicular { step: k }),
        }
    }
    Ok(TurnWord { letters })
}

// ---- canonical form -------------------------------------------------------

/// Dedup key: equal exactly for paths related by a dihedral symmetry, a
/// start rotation, or a traversal reversal. Stable byte layout: the
/// lexicographically least encoding, two big-endian bytes per step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub bytes: Vec<u8>,
}

impl CanonicalKey {
    pub fn hex(&self) -> String {
        let mut s = String::with_capacity(self.bytes.len() * 2);
        for b in &self.bytes {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

fn encode_steps(path: &EdgePath) -> Vec<u16> {
    path.steps
        .iter()
        .map(|s| (s.square.index(path.n) as u16) * 4 + s.dir.code() as u16)
        .collect()
}

/// Booth's least-rotation algorithm; returns the start index of the
/// lexicographically smallest cyclic rotation.
pub(crate) fn least_rotation(s: &[u16]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let mut f = vec![-1i64; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}

fn rotated(mut v: Vec<u16>, start: usize) -> Vec<u16> {
    v.rotate_left(start);
    v
}

fn min_cyclic_word(path: &EdgePath) -> Vec<u16> {
    let enc = encode_steps(path);
    let start = least_rotation(&enc);
    rotated(enc, start)
}

/// Canonical form under start rotation and reversal only: identifies the
/// drawn loop itself, irrespective of traversal.
pub fn rotation_signature(path: &EdgePath) -> Vec<u16> {
    let fwd = min_cyclic_word(path);
    let rev = min_cyclic_word(&path.reversed());
    fwd.min(rev)
}

pub fn canonical_key(path: &EdgePath) -> CanonicalKey {
    let mut best: Option<Vec<u16>> = None;
    for &s in &ALL_SYMMETRIES {
        let img = path.transformed(s);
        for word in [min_cyclic_word(&img), min_cyclic_word(&img.reversed())] {
            if best.as_ref().is_none_or(|b| word < *b) {
                best = Some(word);
            }
        }
    }
    let best = best.unwrap_or_default();
    let mut bytes = Vec::with_capacity(best.len() * 2);
    for w in best {
        bytes.extend_from_slice(&w.to_be_bytes());
    }
    CanonicalKey { bytes }
}

/// Nontrivial symmetries that map the drawn loop onto itself.
pub fn stabilizer(path: &EdgePath) -> Vec<Symmetry> {
    let sig = rotation_signature(path);
    ALL_SYMMETRIES
        .iter()
        .copied()
        .filter(|&s| s != Symmetry::Identity && rotation_signature(&path.transformed(s)) == sig)
        .collect()
}

/// All (shift, reversed) pairs under which `b`, rotated and possibly
/// reversed, equals `a` step for step.
pub fn alignments(a: &EdgePath, b: &EdgePath) -> Vec<(usize, bool)> {
    let m = a.len();
    if m == 0 || b.len() != m {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (cand, rev) in [(b.clone(), false), (b.reversed(), true)] {
        for r in 0..m {
            if (0..m).all(|k| cand.steps[(k + r) % m] == a.steps[k]) {
                out.push((r, rev));
            }
        }
    }
    out
}
