use crate::jsonl::{digest_file, read_records, LineWriter};
use crate::{svg, EXIT_BAD_ARGS, EXIT_BUDGET_ABORT, EXIT_CROSS_CHECK};
use anyhow::{bail, Context, Result};
use pixelfold::enumeration::{tier1_brute_force, tier2_path_growing, tier3_tree_enumeration, TierResult};
use pixelfold::record::{build_record, ManifestCounts, OutputDigest, PathRecord, RunManifest, SelfSymmetry};
use pixelfold::{
    benchmark, board_spec, build_grid_graph, contraction_verdicts, corners_admissible,
    kirchhoff_count, mean_thickness, path_to_tree, scale_separation, BoardSpec,
    EnumerationBudget, GridGraph, ScaleSeparation,
};
use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

pub fn count(n: u32) -> Result<ExitCode> {
    let spec = match board_spec(n) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(EXIT_BAD_ARGS));
        }
    };
    let graph = build_grid_graph(&spec);
    println!("{}", kirchhoff_count(&graph));
    Ok(ExitCode::SUCCESS)
}

/// Per-orbit statistics gathered while streaming, independent of whether
/// deduplicated records are written.
struct OrbitStats {
    seen: HashSet<Vec<u8>>,
    corner_feasible: u64,
    self_symmetric: u64,
    line_trees: u64,
}

impl OrbitStats {
    fn new() -> Self {
        OrbitStats { seen: HashSet::new(), corner_feasible: 0, self_symmetric: 0, line_trees: 0 }
    }

    /// Returns true when the record is the first of its orbit.
    fn observe(&mut self, spec: &BoardSpec, record: &PathRecord, key_bytes: &[u8]) -> bool {
        if !self.seen.insert(key_bytes.to_vec()) {
            return false;
        }
        if corners_admissible(spec) && !record.corner_offsets.is_empty() {
            self.corner_feasible += 1;
            if matches!(record.self_symmetry, SelfSymmetry::Horizontal | SelfSymmetry::Vertical) {
                self.self_symmetric += 1;
            }
            if record.is_line_tree {
                self.line_trees += 1;
            }
        }
        true
    }
}

pub fn enumerate(
    n: u32,
    tier: u8,
    dedup: bool,
    out: Option<PathBuf>,
    budget: EnumerationBudget,
    count_only: bool,
) -> Result<ExitCode> {
    let spec = match board_spec(n) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(EXIT_BAD_ARGS));
        }
    };
    if !(1..=3).contains(&tier) {
        eprintln!("error: tier must be 1, 2 or 3");
        return Ok(ExitCode::from(EXIT_BAD_ARGS));
    }
    let graph = build_grid_graph(&spec);
    let started = Instant::now();

    if count_only {
        let result = drain_tier(&spec, &graph, tier, budget);
        println!("{}", result.solutions);
        if result.aborted.is_some() {
            eprintln!("aborted: {}", result.aborted.as_deref().unwrap_or(""));
            return Ok(ExitCode::from(EXIT_BUDGET_ABORT));
        }
        return Ok(ExitCode::SUCCESS);
    }

    let mut writer = LineWriter::create(out.as_deref())?;
    let mut stats = OrbitStats::new();
    let mut raw = 0u64;
    let mut written = 0u64;

    let mut emit = |record: PathRecord,
                    key_bytes: &[u8],
                    writer: &mut LineWriter,
                    stats: &mut OrbitStats|
     -> Result<()> {
        raw += 1;
        let first = stats.observe(&spec, &record, key_bytes);
        if !dedup || first {
            writer.write_json(&record)?;
            written += 1;
        }
        Ok(())
    };

    let result: TierResult = match tier {
        1 => {
            let mut it = tier1_brute_force(&spec, budget);
            for path in it.by_ref() {
                let tree = path_to_tree(&path, &graph).expect("brute-force loop maps to a tree");
                let record = build_record(&graph, &tree, &path);
                let key = pixelfold::canonical_key(&path);
                emit(record, &key.bytes, &mut writer, &mut stats)?;
            }
            it.result()
        }
        2 => {
            let mut it = tier2_path_growing(&spec);
            for path in it.by_ref() {
                let tree = path_to_tree(&path, &graph).expect("grown loop maps to a tree");
                let record = build_record(&graph, &tree, &path);
                let key = pixelfold::canonical_key(&path);
                emit(record, &key.bytes, &mut writer, &mut stats)?;
            }
            it.result()
        }
        _ => {
            let mut it = tier3_tree_enumeration(&spec);
            for tree in it.by_ref() {
                let path = pixelfold::tree_to_path(&tree, &graph)
                    .expect("spanning tree threads into one loop");
                let record = build_record(&graph, &tree, &path);
                let key = pixelfold::canonical_key(&path);
                emit(record, &key.bytes, &mut writer, &mut stats)?;
            }
            it.result()
        }
    };
    writer.finish()?;

    let aborted = result.aborted.clone();
    if aborted.is_some() {
        // do not leave partial datasets behind
        if let Some(path) = &out {
            let _ = fs::remove_file(path);
        }
    } else {
        // integrity gate: a completed run must agree with the matrix-tree
        // count
        let expected = kirchhoff_count(&graph).value;
        if pixelfold::BigUint::from(raw) != expected {
            eprintln!(
                "cross-check failure: enumerated {raw} solutions, matrix-tree count is {expected}"
            );
            if let Some(path) = &out {
                let _ = fs::remove_file(path);
            }
            return Ok(ExitCode::from(EXIT_CROSS_CHECK));
        }
    }

    if let Some(path) = &out {
        let outputs = if aborted.is_none() {
            let (sha256, lines) = digest_file(path)?;
            vec![OutputDigest { path: path.display().to_string(), sha256, lines }]
        } else {
            vec![]
        };
        let manifest = RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            n,
            tiers: vec![tier],
            counts: ManifestCounts {
                raw,
                orbits: stats.seen.len() as u64,
                corner_feasible: stats.corner_feasible,
                self_symmetric: stats.self_symmetric,
                line_trees: stats.line_trees,
            },
            timings_seconds: started.elapsed().as_secs_f64(),
            outputs,
            aborted: aborted.clone(),
        };
        debug_assert!(manifest.consistent());
        let manifest_path = manifest_path_for(path);
        fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
            .with_context(|| format!("writing {}", manifest_path.display()))?;
    }

    eprintln!(
        "tier {tier} n={n}: {raw} solutions, {} orbits, {written} records written{}",
        stats.seen.len(),
        aborted.as_deref().map(|r| format!(" (aborted: {r})")).unwrap_or_default()
    );
    if aborted.is_some() {
        return Ok(ExitCode::from(EXIT_BUDGET_ABORT));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn manifest_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn drain_tier(spec: &BoardSpec, _graph: &GridGraph, tier: u8, budget: EnumerationBudget) -> TierResult {
    match tier {
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
        _ => {
            let mut it = tier3_tree_enumeration(spec);
            while it.next().is_some() {}
            it.result()
        }
    }
}

pub fn filter(
    input: &Path,
    corners: bool,
    self_symmetric: bool,
    line_trees: bool,
    contraction: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let records = read_records(input)?;
    let mut writer = LineWriter::create(out.as_deref())?;
    let total = records.len();
    let mut spec: Option<BoardSpec> = None;
    let mut surviving = 0u64;
    for mut record in records {
        let s = match spec {
            Some(s) if s.n == record.n => s,
            Some(s) => bail!("mixed board sizes in input: {} and {}", s.n, record.n),
            None => {
                let s = board_spec(record.n)
                    .with_context(|| format!("record has invalid board side {}", record.n))?;
                spec = Some(s);
                s
            }
        };
        if corners && !(corners_admissible(&s) && !record.corner_offsets.is_empty()) {
            continue;
        }
        if self_symmetric
            && !matches!(record.self_symmetry, SelfSymmetry::Horizontal | SelfSymmetry::Vertical)
        {
            continue;
        }
        if line_trees && !record.is_line_tree {
            continue;
        }
        if contraction {
            let path = record.to_path().context("record steps do not form a path")?;
            let verdicts = contraction_verdicts(&s, &path);
            let all_pass = verdicts.iter().all(|&v| v);
            record.contraction_pass = Some(verdicts);
            if !all_pass {
                continue;
            }
        }
        writer.write_json(&record)?;
        surviving += 1;
    }
    writer.finish()?;
    eprintln!("{total} records in, {surviving} surviving");
    Ok(ExitCode::SUCCESS)
}

pub fn render(
    input: &Path,
    svg_dir: &Path,
    marks: Option<&str>,
    per_placement: bool,
) -> Result<ExitCode> {
    if let Some(kind) = marks {
        if kind != "corners" {
            eprintln!("error: unknown mark kind {kind:?} (expected \"corners\")");
            return Ok(ExitCode::from(EXIT_BAD_ARGS));
        }
    }
    let records = read_records(input)?;
    fs::create_dir_all(svg_dir)
        .with_context(|| format!("creating directory {}", svg_dir.display()))?;
    let mut files = 0u64;
    for (idx, record) in records.iter().enumerate() {
        let key8: String = record.canonical_key.chars().take(8).collect();
        let base = format!("n{}-{idx:05}-{key8}", record.n);
        if per_placement && !record.corner_offsets.is_empty() {
            for &offset in &record.corner_offsets {
                let content = svg::render_record(record, &[offset])?;
                let path = svg_dir.join(format!("{base}-p{offset}.svg"));
                fs::write(&path, content)?;
                files += 1;
            }
        } else {
            // all placements marked in one figure
            let mark_offsets: &[u32] = match marks {
                Some(_) => &record.corner_offsets,
                None => &[],
            };
            let content = svg::render_record(record, mark_offsets)?;
            fs::write(svg_dir.join(format!("{base}.svg")), content)?;
            files += 1;
        }
    }
    eprintln!("{files} figures written to {}", svg_dir.display());
    Ok(ExitCode::SUCCESS)
}

pub fn bench(
    ns: &[u32],
    tiers: &[u8],
    out: Option<PathBuf>,
    budget: EnumerationBudget,
) -> Result<ExitCode> {
    let mut csv = String::from("n,tier,candidates,solutions,seconds,aborted\n");
    for &n in ns {
        let spec = match board_spec(n) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(EXIT_BAD_ARGS));
            }
        };
        for row in benchmark(&spec, tiers, budget) {
            csv.push_str(&format!(
                "{},{},{},{},{:.6},{}\n",
                row.n, row.tier, row.candidates, row.solutions, row.seconds, row.aborted
            ));
            eprintln!(
                "bench n={} tier {}: {} solutions from {} candidates in {:.3}s{}",
                row.n,
                row.tier,
                row.solutions,
                row.candidates,
                row.seconds,
                if row.aborted { " (aborted)" } else { "" }
            );
        }
    }
    match out {
        Some(path) => fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn bounds(ns: &[u32]) -> Result<ExitCode> {
    println!(
        "{:>4} {:>8} {:>8} {:>10} {:>10} {:>12}  scale separation",
        "n", "edge", "seamless", "crossover", "thickness", "coarse-t"
    );
    for &n in ns {
        let report = match pixelfold::bound_report(n) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(EXIT_BAD_ARGS));
            }
        };
        let thickness = mean_thickness(report.edge_bound / 2, report.edge_bound / 2, n);
        let sep = scale_separation(n).expect("validated above");
        let (sep_text, coarse_t) = match &sep {
            ScaleSeparation::Degenerate { .. } => ("degenerate".to_string(), "-".to_string()),
            ScaleSeparation::Square { m, a, .. } => {
                (format!("square m={m} a={a}"), ratio_text(sep.mean_thickness()))
            }
            ScaleSeparation::AlmostSquare { m1, m2, a1, a2, .. } => (
                format!("a1={a1} a2={a2} (m1={m1}, m2={m2})"),
                ratio_text(sep.mean_thickness()),
            ),
        };
        println!(
            "{:>4} {:>8} {:>8} {:>10} {:>10} {:>12}  {}",
            n,
            report.edge_bound,
            report.demaine_bound,
            report.crossover,
            ratio_text(Some(thickness)),
            coarse_t,
            sep_text
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn ratio_text(r: Option<pixelfold::Ratio<u64>>) -> String {
    match r {
        None => "-".to_string(),
        Some(r) if r.is_integer() => format!("{}", r.to_integer()),
        Some(r) => format!("{:.4}", *r.numer() as f64 / *r.denom() as f64),
    }
}
