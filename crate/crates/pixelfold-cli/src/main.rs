//! Command-line surface of the pixelfold pipeline.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 budget abort,
//! 4 internal cross-check failure.

mod commands;
mod jsonl;
mod svg;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

pub const EXIT_BAD_ARGS: u8 = 2;
pub const EXIT_BUDGET_ABORT: u8 = 3;
pub const EXIT_CROSS_CHECK: u8 = 4;

#[derive(Parser)]
#[command(name = "pixelfold", version, about = "Exact enumeration of pixel-matrix edge patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact number of patterns (spanning trees) for a board.
    Count {
        #[arg(long)]
        n: u32,
    },
    /// Enumerate patterns and write them as JSON Lines.
    Enumerate {
        #[arg(long)]
        n: u32,
        /// 1 = brute force, 2 = junction growing, 3 = tree enumeration.
        #[arg(long)]
        tier: u8,
        /// Keep one representative per symmetry orbit.
        #[arg(long)]
        dedup: bool,
        /// Output file (stdout if omitted); a .manifest.json is written
        /// alongside when set.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tier-1 candidate budget.
        #[arg(long)]
        max_candidates: Option<u128>,
        /// Tier-1 wall-time budget in seconds.
        #[arg(long)]
        max_seconds: Option<u64>,
        /// Count emissions only; no records are built (tier 3 at large n).
        #[arg(long)]
        count_only: bool,
    },
    /// Filter a JSON Lines dataset by feasibility criteria.
    Filter {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Keep records with at least one feasible corner placement.
        #[arg(long)]
        corners: bool,
        /// Keep records with a horizontal or vertical self-symmetry.
        #[arg(long)]
        self_symmetric: bool,
        /// Keep records whose spanning tree is a single line.
        #[arg(long)]
        line_trees: bool,
        /// Run the contraction check and keep records passing at every
        /// placement; fills the contraction_pass field.
        #[arg(long)]
        contraction: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render records as SVG figures.
    Render {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        svg_dir: PathBuf,
        /// What to mark along the path ("corners" for placement marks).
        #[arg(long)]
        marks: Option<String>,
        /// Emit one file per corner placement instead of marking the first.
        #[arg(long)]
        per_placement: bool,
    },
    /// Time the enumeration tiers and write a CSV table.
    Bench {
        /// Board sides, e.g. "2,4,6,8" or "2..8".
        #[arg(long)]
        n_list: String,
        /// Comma-separated tiers, e.g. "1,2,3".
        #[arg(long, default_value = "1,2,3")]
        tiers: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_candidates: Option<u128>,
        #[arg(long)]
        max_seconds: Option<u64>,
    },
    /// Print the closed-form bound table.
    Bounds {
        /// Board sides, e.g. "2..40" or "6,8,18".
        #[arg(long)]
        n_list: String,
    },
}

fn parse_n_list(raw: &str) -> Result<Vec<u32>, String> {
    let raw = raw.trim();
    if let Some((a, b)) = raw.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
        let hi: u32 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
        if lo > hi {
            return Err(format!("empty range {raw:?}"));
        }
        Ok((lo..=hi).filter(|n| n % 2 == 0).collect())
    } else {
        raw.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<u32>().map_err(|_| format!("bad board side {s:?}")))
            .collect()
    }
}

fn budget_from(
    max_candidates: Option<u128>,
    max_seconds: Option<u64>,
) -> pixelfold::EnumerationBudget {
    let mut budget = pixelfold::EnumerationBudget::default();
    if let Some(c) = max_candidates {
        budget.max_candidates = c;
    }
    if let Some(s) = max_seconds {
        budget.max_wall_time = Duration::from_secs(s);
    }
    budget
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Count { n } => commands::count(n),
        Command::Enumerate { n, tier, dedup, out, max_candidates, max_seconds, count_only } => {
            commands::enumerate(n, tier, dedup, out, budget_from(max_candidates, max_seconds), count_only)
        }
        Command::Filter { r#in, corners, self_symmetric, line_trees, contraction, out } => {
            commands::filter(&r#in, corners, self_symmetric, line_trees, contraction, out)
        }
        Command::Render { r#in, svg_dir, marks, per_placement } => {
            commands::render(&r#in, &svg_dir, marks.as_deref(), per_placement)
        }
        Command::Bench { n_list, tiers, out, max_candidates, max_seconds } => {
            match (parse_n_list(&n_list), parse_n_list(&tiers)) {
                (Ok(ns), Ok(ts)) => {
                    let tiers: Vec<u8> = ts.iter().map(|&t| t as u8).collect();
                    commands::bench(&ns, &tiers, out, budget_from(max_candidates, max_seconds))
                }
                (Err(e), _) | (_, Err(e)) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_BAD_ARGS);
                }
            }
        }
        Command::Bounds { n_list } => match parse_n_list(&n_list) {
            Ok(ns) => commands::bounds(&ns),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_BAD_ARGS);
            }
        },
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_BAD_ARGS)
        }
    }
}
