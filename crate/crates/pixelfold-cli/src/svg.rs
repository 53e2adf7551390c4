//! Deterministic SVG figures: the fixed segment lattice in a light stroke,
//! the loop in a solid stroke over a shaded interior, and optional corner
//! placement marks. One board unit is 32 SVG units, y axis up.

use anyhow::{bail, Result};
use pixelfold::{board_spec, fixed_segments, PathRecord};

const SCALE: i64 = 32;
const MARGIN: i64 = 1; // board units

fn sx(x: i64) -> i64 {
    (x + MARGIN) * SCALE
}

fn sy(y: i64, n: i64) -> i64 {
    (n + MARGIN - y) * SCALE
}

const MARK_COLORS: [&str; 4] = ["#c0392b", "#d98e04", "#7d3c98", "#148f77"];

pub fn render_record(record: &PathRecord, mark_offsets: &[u32]) -> Result<String> {
    let spec = match board_spec(record.n) {
        Ok(s) => s,
        Err(e) => bail!("record has invalid board side: {e}"),
    };
    let Some(path) = record.to_path() else {
        bail!("record steps do not form a path");
    };
    let n = record.n as i64;
    let size = (n + 2 * MARGIN) * SCALE;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>\n"
    ));

    // interior shading under everything else
    let vertices = path.vertices();
    if !vertices.is_empty() {
        let points: Vec<String> = vertices
            .iter()
            .map(|p| format!("{},{}", sx(p.x as i64), sy(p.y as i64, n)))
            .collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"#ccd9ee\" fill-rule=\"evenodd\" stroke=\"none\"/>\n",
            points.join(" ")
        ));
    }

    // the fixed segment lattice
    out.push_str("<g stroke=\"#c8c8c8\" stroke-width=\"2\">\n");
    for (a, b) in fixed_segments(&spec) {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            sx(a.x as i64),
            sy(a.y as i64, n),
            sx(b.x as i64),
            sy(b.y as i64, n)
        ));
    }
    out.push_str("</g>\n");

    // the loop itself
    if !vertices.is_empty() {
        let points: Vec<String> = vertices
            .iter()
            .map(|p| format!("{},{}", sx(p.x as i64), sy(p.y as i64, n)))
            .collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"none\" stroke=\"#1f3b73\" stroke-width=\"4\" \
             stroke-linejoin=\"round\"/>\n",
            points.join(" ")
        ));
    }

    // one mark set per requested placement, at the step midpoints
    for (set, &offset) in mark_offsets.iter().enumerate() {
        let m = path.len();
        let q = m / 4;
        let color = MARK_COLORS[set % MARK_COLORS.len()];
        out.push_str(&format!("<g fill=\"{color}\">\n"));
        for k in 0..4 {
            let step = path.step(offset as usize + k * q);
            let a = step.start();
            let b = step.end();
            // midpoint in half units, scaled exactly
            let cx = (a.x as i64 + b.x as i64) * SCALE / 2 + MARGIN * SCALE;
            let cy = (n + MARGIN) * SCALE - (a.y as i64 + b.y as i64) * SCALE / 2;
            out.push_str(&format!("<circle cx=\"{cx}\" cy=\"{cy}\" r=\"7\"/>\n"));
        }
        out.push_str("</g>\n");
    }

    out.push_str("</svg>\n");
    Ok(out)
}
