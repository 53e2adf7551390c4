//! The three-tier enumeration ladder: raw diagonal assignments, junction
//! threading states, and spanning trees, plus the cross-checks and the
//! benchmark harness that measures the collapse in search-space size.
//!
//! All tiers are pull-based iterators with deterministic emission order;
//! nothing buffers a full corpus.

use crate::geometry::{BoardSpec, Dir, LatticePoint, SquareId};
use crate::grid::{build_grid_graph, kirchhoff_count, GridGraph, SpanningTree, UndoUnionFind};
use crate::path::{canonical_key, tree_to_path, EdgePath, Step};
use num_bigint::BigUint;
use std::collections::{HashSet, VecDeque};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierResult {
    pub tier: u8,
    pub n: u32,
    pub candidates_examined: u128,
    pub solutions: u64,
    pub wall_time: Duration,
    pub aborted: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_candidates: u128,
    pub max_wall_time: Duration,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_candidates: 2_000_000, max_wall_time: Duration::from_secs(10) }
    }
}

impl EnumerationBudget {
    pub fn unlimited() -> Self {
        EnumerationBudget { max_candidates: u128::MAX, max_wall_time: Duration::MAX }
    }
}

// ---- tier 1: brute force over diagonal assignments --------------------------

/// Iterates all 2^(n²) per-square diagonal choices and tests each for a
/// single closed non-crossing loop covering every square. Feasible to run
/// fully only for n ∈ {2, 4}; larger boards abort against the budget.
pub struct Tier1BruteForce {
    spec: BoardSpec,
    budget: EnumerationBudget,
    mask: u128,
    mask_end: u128,
    started: Instant,
    candidates: u128,
    solutions: u64,
    aborted: Option<String>,
    pending: VecDeque<EdgePath>,
    finished: bool,
    elapsed: Duration,
}

pub fn tier1_brute_force(spec: &BoardSpec, budget: EnumerationBudget) -> Tier1BruteForce {
    let bits = spec.path_len() as u32;
    Tier1BruteForce {
        spec: *spec,
        budget,
        mask: 0,
        mask_end: 1u128 << bits,
        started: Instant::now(),
        candidates: 0,
        solutions: 0,
        aborted: None,
        pending: VecDeque::new(),
        finished: false,
        elapsed: Duration::ZERO,
    }
}

impl Tier1BruteForce {
    pub fn result(&self) -> TierResult {
        TierResult {
            tier: 1,
            n: self.spec.n,
            candidates_examined: self.candidates,
            solutions: self.solutions,
            wall_time: if self.finished { self.elapsed } else { self.started.elapsed() },
            aborted: self.aborted.clone(),
        }
    }

    fn finish(&mut self, reason: Option<String>) {
        self.aborted = reason;
        self.finished = true;
        self.elapsed = self.started.elapsed();
    }

    /// The two candidate diagonals of a square: bit clear picks the main
    /// diagonal, bit set the anti diagonal.
    fn assigned_segment(sq: SquareId, anti: bool) -> (LatticePoint, LatticePoint) {
        let (i, j) = (sq.i as i32, sq.j as i32);
        if anti {
            (LatticePoint::new(i + 1, j), LatticePoint::new(i, j + 1))
        } else {
            (LatticePoint::new(i, j), LatticePoint::new(i + 1, j + 1))
        }
    }

    fn test_assignment(&mut self, mask: u128) {
        let n = self.spec.n;
        let total = self.spec.path_len();
        let stride = n as usize + 1;
        let mut degree = vec![0u8; stride * stride];
        let mut segs = Vec::with_capacity(total);
        for idx in 0..total {
            let sq = SquareId::from_index(idx, n);
            let (a, b) = Self::assigned_segment(sq, (mask >> idx) & 1 == 1);
            degree[(a.y as usize) * stride + a.x as usize] += 1;
            degree[(b.y as usize) * stride + b.x as usize] += 1;
            segs.push((a, b));
        }
        if degree.iter().any(|&d| d % 2 == 1) {
            return;
        }
        // Thread the chosen segments: backtrack over the two non-crossing
        // pairings at every degree-4 point, accept single-loop threadings.
        let mut loops = AssignmentThreader::new(n, &segs).single_loops();
        for steps in loops.drain(..) {
            let mut path = EdgePath { n, steps };
            path.normalize();
            self.solutions += 1;
            self.pending.push_back(path);
        }
    }
}

impl Iterator for Tier1BruteForce {
    type Item = EdgePath;

    fn next(&mut self) -> Option<EdgePath> {
        loop {
            if let Some(p) = self.pending.pop_front() {
                return Some(p);
            }
            if self.finished {
                return None;
            }
            if self.mask >= self.mask_end {
                self.finish(None);
                return None;
            }
            if self.candidates >= self.budget.max_candidates {
                self.finish(Some(format!(
                    "candidate budget {} exhausted",
                    self.budget.max_candidates
                )));
                return None;
            }
            if self.candidates.is_multiple_of(8192) && self.started.elapsed() > self.budget.max_wall_time {
                self.finish(Some(format!(
                    "wall time budget {:?} exhausted",
                    self.budget.max_wall_time
                )));
                return None;
            }
            let mask = self.mask;
            self.mask += 1;
            self.candidates += 1;
            self.test_assignment(mask);
        }
    }
}

/// Backtracking threader for one diagonal assignment. Ends meeting at a
/// point always lie in distinct quadrants, so a degree-4 point offers the
/// two non-crossing pairings (pair across x or across y); degree-2 points
/// are forced.
struct AssignmentThreader {
    n: u32,
    stride: usize,
    // per point: (square index, direction of the far endpoint), up to 4
    incident: Vec<Vec<(usize, Dir)>>,
    choice_points: Vec<usize>,
    segs: Vec<(LatticePoint, LatticePoint)>,
}

impl AssignmentThreader {
    fn new(n: u32, segs: &[(LatticePoint, LatticePoint)]) -> Self {
        let stride = n as usize + 1;
        let mut incident: Vec<Vec<(usize, Dir)>> = vec![Vec::new(); stride * stride];
        for (idx, &(a, b)) in segs.iter().enumerate() {
            let d = Dir::from_delta(b.x - a.x, b.y - a.y).expect("diagonal segment");
            incident[(a.y as usize) * stride + a.x as usize].push((idx, d));
            incident[(b.y as usize) * stride + b.x as usize].push((idx, d.opposite()));
        }
        let choice_points =
            (0..incident.len()).filter(|&k| incident[k].len() == 4).collect();
        AssignmentThreader { n, stride, incident, choice_points, segs: segs.to_vec() }
    }

    /// Enumerate pairing combinations; return the step lists of those that
    /// form exactly one loop.
    fn single_loops(&mut self) -> Vec<Vec<Step>> {
        let mut pair_across_x = vec![false; self.choice_points.len()];
        let mut out = Vec::new();
        self.recurse(0, &mut pair_across_x, &mut out);
        out
    }

    fn recurse(&self, k: usize, pair_across_x: &mut Vec<bool>, out: &mut Vec<Vec<Step>>) {
        if k == self.choice_points.len() {
            if let Some(steps) = self.walk(pair_across_x) {
                out.push(steps);
            }
            return;
        }
        for v in [false, true] {
            pair_across_x[k] = v;
            self.recurse(k + 1, pair_across_x, out);
        }
    }

    fn partner(&self, key: usize, e_in: Dir, pair_across_x: &[bool]) -> Dir {
        let ends = &self.incident[key];
        if ends.len() == 2 {
            let other = ends.iter().find(|&&(_, d)| d != e_in).expect("second end");
            return other.1;
        }
        let choice_idx =
            self.choice_points.binary_search(&key).expect("degree-4 point registered");
        if pair_across_x[choice_idx] {
            e_in.flip_x()
        } else {
            e_in.flip_y()
        }
    }

    /// Follow the pairings; Some(steps) iff the threading closes into a
    /// single loop through all squares.
    fn walk(&self, pair_across_x: &[bool]) -> Option<Vec<Step>> {
        let total = self.segs.len();
        let (start_a, start_b) = self.segs[0];
        let mut steps: Vec<(usize, LatticePoint, LatticePoint)> = Vec::with_capacity(total);
        let mut visited = vec![false; total];
        let (mut idx, mut from, mut to) = (0usize, start_a, start_b);
        loop {
            if visited[idx] {
                return None; // re-entered before covering everything
            }
            visited[idx] = true;
            steps.push((idx, from, to));
            let key = (to.y as usize) * self.stride + to.x as usize;
            let d_in = Dir::from_delta(from.x - to.x, from.y - to.y).expect("diagonal");
            let e_out = self.partner(key, d_in, pair_across_x);
            let nf = to;
            let nt = e_out.apply_to(to);
            let (nidx, _) = *self.incident[key]
                .iter()
                .find(|&&(_, d)| d == e_out)
                .expect("outgoing end exists");
            if nidx == 0 && nf == start_a {
                break;
            }
            idx = nidx;
            from = nf;
            to = nt;
        }
        if steps.len() != total {
            return None;
        }
        // A closed single loop through one diagonal per square implies the
        // mixed-parity segment set (the parity filter admits nothing else).
        let converted = steps
            .into_iter()
            .map(|(i, f, t)| {
                let dir = Dir::from_delta(t.x - f.x, t.y - f.y).expect("diagonal");
                let step = Step { square: SquareId::from_index(i, self.n), dir };
                debug_assert_eq!(step.try_start(), Some(f));
                step
            })
            .collect();
        Some(converted)
    }
}

// ---- tier 2: junction threading states --------------------------------------

/// Depth-first search over the binary Link/Cut state of every junction,
/// pruning a branch as soon as the linked arcs close a cycle or can no
/// longer connect the remaining diamond cells. Leaves with a spanning set
/// of links are exactly the single loops.
pub struct Tier2PathGrowing {
    graph: GridGraph,
    actions: Vec<Tier2Action>,
    uf: UndoUnionFind,
    links: Vec<u32>,
    covered: u128,
    solutions: u64,
    started: Instant,
    finished: bool,
    elapsed: Duration,
}

enum Tier2Action {
    Visit { idx: usize },
    Undo { mark: usize },
}

pub fn tier2_path_growing(spec: &BoardSpec) -> Tier2PathGrowing {
    let graph = build_grid_graph(spec);
    let nv = graph.vertices.len();
    Tier2PathGrowing {
        graph,
        actions: vec![Tier2Action::Visit { idx: 0 }],
        uf: UndoUnionFind::new(nv),
        links: Vec::new(),
        covered: 0,
        solutions: 0,
        started: Instant::now(),
        finished: false,
        elapsed: Duration::ZERO,
    }
}

impl Tier2PathGrowing {
    pub fn result(&self) -> TierResult {
        TierResult {
            tier: 2,
            n: self.graph.spec.n,
            candidates_examined: self.covered,
            solutions: self.solutions,
            wall_time: if self.finished { self.elapsed } else { self.started.elapsed() },
            aborted: None,
        }
    }
}

impl Iterator for Tier2PathGrowing {
    type Item = EdgePath;

    fn next(&mut self) -> Option<EdgePath> {
        let e = self.graph.arcs.len();
        while let Some(action) = self.actions.pop() {
            match action {
                Tier2Action::Undo { mark } => {
                    self.links.pop();
                    self.uf.rollback(mark);
                }
                Tier2Action::Visit { idx } => {
                    let remaining = e - idx;
                    let needed = self.uf.components() - 1;
                    if needed > remaining {
                        self.covered += 1u128 << remaining;
                        continue;
                    }
                    if idx == e {
                        self.covered += 1;
                        self.solutions += 1;
                        let tree = SpanningTree::new(self.links.clone());
                        let path = tree_to_path(&tree, &self.graph)
                            .expect("acyclic connected link set threads into one loop");
                        return Some(path);
                    }
                    let (u, v) = self.graph.arcs[idx];
                    // Cut branch runs after the Link branch unwinds.
                    self.actions.push(Tier2Action::Visit { idx: idx + 1 });
                    if self.uf.find(u as usize) != self.uf.find(v as usize) {
                        let mark = self.uf.mark();
                        self.uf.union(u as usize, v as usize);
                        self.links.push(idx as u32);
                        self.actions.push(Tier2Action::Undo { mark });
                        self.actions.push(Tier2Action::Visit { idx: idx + 1 });
                    } else {
                        // linking would close a second loop; rule out half
                        // of the remaining configurations
                        self.covered += 1u128 << (remaining - 1);
                    }
                }
            }
        }
        if !self.finished {
            self.finished = true;
            self.elapsed = self.started.elapsed();
        }
        None
    }
}

// ---- tier 3: spanning tree enumeration --------------------------------------

/// Output-sensitive spanning-tree enumeration of an arbitrary connected
/// graph: include/exclude search over a fixed arc order, restricted to
/// acyclic inclusions and exclusions that keep the remainder connected,
/// so every visited branch produces at least one tree.
pub struct SpanningTreeIter {
    n_vertices: usize,
    arcs: Vec<(u32, u32)>,
    actions: Vec<Tier2Action>,
    uf: UndoUnionFind,
    chosen: Vec<u32>,
    emitted: u64,
    scratch: Vec<u32>,
}

impl SpanningTreeIter {
    pub fn new(n_vertices: usize, arcs: Vec<(u32, u32)>) -> Self {
        let mut it = SpanningTreeIter {
            n_vertices,
            arcs,
            actions: Vec::new(),
            uf: UndoUnionFind::new(n_vertices),
            chosen: Vec::new(),
            emitted: 0,
            scratch: vec![0; n_vertices],
        };
        // a disconnected graph has no spanning trees at all
        if n_vertices > 0 && it.can_connect(0) {
            it.actions.push(Tier2Action::Visit { idx: 0 });
        }
        it
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Can the arcs from `idx` on merge the current components into one?
    fn can_connect(&mut self, idx: usize) -> bool {
        let nv = self.n_vertices;
        let mut components = 0usize;
        for v in 0..nv {
            let r = self.uf.find(v) as u32;
            self.scratch[v] = r;
            if r as usize == v {
                components += 1;
            }
        }
        if components == 1 {
            return true;
        }
        fn find(scratch: &mut [u32], mut x: usize) -> usize {
            while scratch[x] as usize != x {
                let p = scratch[x] as usize;
                scratch[x] = scratch[p];
                x = p;
            }
            x
        }
        for &(u, v) in &self.arcs[idx..] {
            let (ru, rv) = (find(&mut self.scratch, u as usize), find(&mut self.scratch, v as usize));
            if ru != rv {
                self.scratch[ru] = rv as u32;
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for SpanningTreeIter {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        if self.n_vertices == 0 {
            return None;
        }
        let m = self.arcs.len();
        let target = self.n_vertices - 1;
        while let Some(action) = self.actions.pop() {
            match action {
                Tier2Action::Undo { mark } => {
                    self.chosen.pop();
                    self.uf.rollback(mark);
                }
                Tier2Action::Visit { idx } => {
                    if self.chosen.len() == target {
                        self.emitted += 1;
                        return Some(SpanningTree::new(self.chosen.clone()));
                    }
                    if idx == m {
                        continue;
                    }
                    let (u, v) = self.arcs[idx];
                    if self.uf.find(u as usize) != self.uf.find(v as usize) {
                        // Dropping the arc needs a viability check; taking
                        // it (or skipping a cycle arc) cannot disconnect a
                        // remainder the parent already proved connected.
                        if self.can_connect(idx + 1) {
                            self.actions.push(Tier2Action::Visit { idx: idx + 1 });
                        }
                        let mark = self.uf.mark();
                        self.uf.union(u as usize, v as usize);
                        self.chosen.push(idx as u32);
                        self.actions.push(Tier2Action::Undo { mark });
                        self.actions.push(Tier2Action::Visit { idx: idx + 1 });
                    } else {
                        self.actions.push(Tier2Action::Visit { idx: idx + 1 });
                    }
                }
            }
        }
        None
    }
}

/// Spanning trees of the coarse grid graph, each exactly once.
pub struct Tier3TreeEnumeration {
    inner: SpanningTreeIter,
    n: u32,
    started: Instant,
    finished: bool,
    elapsed: Duration,
}

pub fn tier3_tree_enumeration(spec: &BoardSpec) -> Tier3TreeEnumeration {
    let graph = build_grid_graph(spec);
    Tier3TreeEnumeration {
        inner: SpanningTreeIter::new(graph.vertices.len(), graph.arcs),
        n: spec.n,
        started: Instant::now(),
        finished: false,
        elapsed: Duration::ZERO,
    }
}

impl Tier3TreeEnumeration {
    pub fn result(&self) -> TierResult {
        TierResult {
            tier: 3,
            n: self.n,
            candidates_examined: self.inner.emitted() as u128,
            solutions: self.inner.emitted(),
            wall_time: if self.finished { self.elapsed } else { self.started.elapsed() },
            aborted: None,
        }
    }
}

impl Iterator for Tier3TreeEnumeration {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        match self.inner.next() {
            Some(t) => Some(t),
            None => {
                if !self.finished {
                    self.finished = true;
                    self.elapsed = self.started.elapsed();
                }
                None
            }
        }
    }
}

// ---- cross-checks and benchmarks --------------------------------------------

#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub n: u32,
    pub kirchhoff: BigUint,
    pub tier_results: Vec<TierResult>,
    pub orbit_count: u64,
    pub first_difference: Option<(u8, u8, String)>,
}

impl CrossCheckReport {
    pub fn ok(&self) -> bool {
        self.first_difference.is_none()
            && self
                .tier_results
                .iter()
                .all(|r| BigUint::from(r.solutions) == self.kirchhoff && r.aborted.is_none())
    }
}

/// Run the requested tiers and assert they agree with each other and with
/// the matrix-tree count: equal solution counts and identical canonical
/// key sets.
pub fn cross_check(spec: &BoardSpec, tiers: &[u8]) -> CrossCheckReport {
    let graph = build_grid_graph(spec);
    let mut tier_results = Vec::new();
    let mut key_sets: Vec<(u8, HashSet<Vec<u8>>)> = Vec::new();
    for &tier in tiers {
        let mut keys = HashSet::new();
        let result = match tier {
            1 => {
                let mut it = tier1_brute_force(spec, EnumerationBudget::unlimited());
                for path in it.by_ref() {
                    keys.insert(canonical_key(&path).bytes);
                }
                it.result()
            }
            2 => {
                let mut it = tier2_path_growing(spec);
                for path in it.by_ref() {
                    keys.insert(canonical_key(&path).bytes);
                }
                it.result()
            }
            3 => {
                let mut it = tier3_tree_enumeration(spec);
                for tree in it.by_ref() {
                    let path = tree_to_path(&tree, &graph).expect("tree threads into one loop");
                    keys.insert(canonical_key(&path).bytes);
                }
                it.result()
            }
            other => panic!("unknown tier {other}"),
        };
        tier_results.push(result);
        key_sets.push((tier, keys));
    }
    let mut first_difference = None;
    'outer: for i in 0..key_sets.len() {
        for j in i + 1..key_sets.len() {
            let (ta, sa) = &key_sets[i];
            let (tb, sb) = &key_sets[j];
            if sa != sb {
                let diff = sa
                    .symmetric_difference(sb)
                    .min()
                    .map(|k| k.iter().map(|b| format!("{b:02x}")).collect::<String>())
                    .unwrap_or_default();
                first_difference = Some((*ta, *tb, diff));
                break 'outer;
            }
        }
    }
    let orbit_count = key_sets.first().map(|(_, s)| s.len() as u64).unwrap_or(0);
    CrossCheckReport {
        n: spec.n,
        kirchhoff: kirchhoff_count(&graph).value,
        tier_results,
        orbit_count,
        first_difference,
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: u32,
    pub tier: u8,
    pub candidates: u128,
    pub solutions: u64,
    pub seconds: f64,
    pub aborted: bool,
}

/// Run each tier to completion (or budget abort) and report counts and
/// wall time. Counts are deterministic; timings are not.
pub fn benchmark(spec: &BoardSpec, tiers: &[u8], budget: EnumerationBudget) -> Vec<BenchRow> {
    tiers
        .iter()
        .map(|&tier| {
            let result = match tier {
                1 => {
                    let mut it = tier1_brute_force(spec, budget);
                    while it.next().is_some() {}
                    it.result()
                }
                2 => {
                    let mut it = tier2_path_growing(spec);
                    while it.next().is_some() {}
                    it.result()
                }
                3 => {
                    let mut it = tier3_tree_enumeration(spec);
                    while it.next().is_some() {}
                    it.result()
                }
                other => panic!("unknown tier {other}"),
            };
            BenchRow {
                n: spec.n,
                tier,
                candidates: result.candidates_examined,
                solutions: result.solutions,
                seconds: result.wall_time.as_secs_f64(),
                aborted: result.aborted.is_some(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::board_spec;
    use crate::grid::{matrix_tree_count, UnionFind};
    use crate::path::path_validate;

    /// Independent oracle: all (nu-1)-subsets of arcs that form a tree.
    fn trees_by_subset_enumeration(nv: usize, arcs: &[(u32, u32)]) -> Vec<Vec<u32>> {
        let m = arcs.len();
        let k = nv - 1;
        let mut out = Vec::new();
        for mask in 0u64..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut uf = UnionFind::new(nv);
            let mut ok = true;
            let mut ids = Vec::with_capacity(k);
            for (i, &(u, v)) in arcs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if !uf.union(u as usize, v as usize) {
                        ok = false;
                        break;
                    }
                    ids.push(i as u32);
                }
            }
            if ok && uf.components() == 1 {
                out.push(ids);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn spanning_tree_iter_matches_subset_oracle() {
        let cases: Vec<(usize, Vec<(u32, u32)>)> = vec![
            (3, vec![(0, 1), (1, 2), (0, 2)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]),
            (1, vec![]),
            (4, vec![(0, 1), (2, 3)]), // disconnected: no trees
            (6, build_grid_graph(&board_spec(4).unwrap()).arcs.clone()[..].to_vec()),
        ];
        for (nv, arcs) in cases {
            let mut got: Vec<Vec<u32>> =
                SpanningTreeIter::new(nv, arcs.clone()).map(|t| t.arc_ids).collect();
            got.sort();
            let expected = trees_by_subset_enumeration(nv, &arcs);
            assert_eq!(got, expected, "nv={nv} arcs={arcs:?}");
            assert_eq!(
                BigUint::from(expected.len()),
                matrix_tree_count(nv, &arcs).value,
                "count law nv={nv}"
            );
        }
    }

    #[test]
    fn tier3_counts() {
        for (n, expected) in [(2u32, 1u64), (4, 4), (6, 192)] {
            let spec = board_spec(n).unwrap();
            let mut it = tier3_tree_enumeration(&spec);
            let count = it.by_ref().count() as u64;
            assert_eq!(count, expected, "n={n}");
            assert_eq!(it.result().solutions, expected);
        }
    }

    #[test]
    fn tier3_trees_are_distinct_valid_paths() {
        let spec = board_spec(6).unwrap();
        let graph = build_grid_graph(&spec);
        let mut seen = HashSet::new();
        for tree in tier3_tree_enumeration(&spec) {
            assert!(tree.is_spanning_tree(&graph));
            let path = tree_to_path(&tree, &graph).unwrap();
            assert!(path_validate(&path, &spec).is_valid());
            assert!(seen.insert(tree.arc_ids.clone()), "duplicate emission");
        }
        assert_eq!(seen.len(), 192);
    }

    #[test]
    fn emission_order_is_deterministic() {
        let spec = board_spec(6).unwrap();
        let a: Vec<_> = tier3_tree_enumeration(&spec).map(|t| t.arc_ids).collect();
        let b: Vec<_> = tier3_tree_enumeration(&spec).map(|t| t.arc_ids).collect();
        assert_eq!(a, b);
        let a: Vec<_> = tier2_path_growing(&spec).map(|p| p.steps).collect();
        let b: Vec<_> = tier2_path_growing(&spec).map(|p| p.steps).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn tier3_candidates_stay_under_the_naive_budget() {
        use crate::grid::naive_arc_subset_count;
        for n in [4u32, 6, 8] {
            let spec = board_spec(n).unwrap();
            let mut it = tier3_tree_enumeration(&spec);
            while it.next().is_some() {}
            let candidates = it.result().candidates_examined;
            assert!(BigUint::from(candidates as u64) <= naive_arc_subset_count(&spec));
        }
    }

    #[test]
    fn tier2_counts_and_coverage() {
        let spec = board_spec(4).unwrap();
        let mut it = tier2_path_growing(&spec);
        let paths: Vec<_> = it.by_ref().collect();
        let result = it.result();
        assert_eq!(paths.len(), 4);
        assert_eq!(result.candidates_examined, 16); // 2^4 junction configurations
        let spec = board_spec(6).unwrap();
        let mut it = tier2_path_growing(&spec);
        let count = it.by_ref().count();
        assert_eq!(count, 192);
        assert_eq!(it.result().candidates_examined, 4096); // 2^12
    }

    #[test]
    fn tier1_small_boards() {
        let spec = board_spec(2).unwrap();
        let mut it = tier1_brute_force(&spec, EnumerationBudget::unlimited());
        let paths: Vec<_> = it.by_ref().collect();
        let r = it.result();
        assert_eq!((r.candidates_examined, r.solutions), (16, 1));
        assert!(r.aborted.is_none());
        assert!(path_validate(&paths[0], &spec).is_valid());

        let spec = board_spec(4).unwrap();
        let mut it = tier1_brute_force(&spec, EnumerationBudget::unlimited());
        let count = it.by_ref().count();
        let r = it.result();
        assert_eq!((r.candidates_examined, r.solutions), (65_536, 4));
        assert_eq!(count, 4);
    }

    #[test]
    fn tier1_budget_abort_is_clean() {
        let spec = board_spec(8).unwrap();
        let budget =
            EnumerationBudget { max_candidates: 50_000, max_wall_time: Duration::from_secs(5) };
        let mut it = tier1_brute_force(&spec, budget);
        let emitted = it.by_ref().count();
        let r = it.result();
        assert_eq!(emitted, 0);
        assert!(r.aborted.is_some());
        assert_eq!(r.candidates_examined, 50_000);
    }

    #[test]
    fn cross_check_small() {
        let spec = board_spec(4).unwrap();
        let report = cross_check(&spec, &[1, 2, 3]);
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.orbit_count, 1);
        for r in &report.tier_results {
            assert_eq!(r.solutions, 4);
        }
    }

    #[test]
    fn benchmark_rows() {
        let spec = board_spec(2).unwrap();
        let rows = benchmark(&spec, &[1, 2, 3], EnumerationBudget::unlimited());
        assert_eq!(rows.len(), 3);
        for row in &rows {
            assert_eq!(row.solutions, 1);
            assert!(!row.aborted);
        }
        assert_eq!(rows[0].candidates, 16);
    }
}
