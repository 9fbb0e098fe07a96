use std::io::Write;
use std::path::{Path, PathBuf};

use regrisk::UpperSet;
use serde::Serialize;

use crate::CliError;

pub fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Validation(e.to_string()))?;
    match out {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

/// `<out>.boundary.csv` next to the JSON output.
pub fn boundary_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".boundary.csv");
    PathBuf::from(name)
}

pub fn write_boundary(out: &Path, set: &UpperSet) -> Result<(), CliError> {
    let path = boundary_path(out);
    let mut text = String::from("z1,z2\n");
    for p in boundary_polyline(set) {
        text.push_str(&format!("{},{}\n", p[0], p[1]));
    }
    std::fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Boundary of a planar upper set for plotting: the two unbounded edges are
/// cut at a finite length, vertices come from adjacent grid constraints.
pub fn boundary_polyline(set: &UpperSet) -> Vec<[f64; 2]> {
    if set.is_empty() {
        return Vec::new();
    }
    let mut facets: Vec<(f64, [f64; 2], f64)> = set
        .grid()
        .directions()
        .iter()
        .zip(set.support())
        .filter(|(_, h)| h.is_finite())
        .map(|(u, h)| (u[1].atan2(u[0]), [u[0], u[1]], *h))
        .collect();
    facets.sort_by(|a, b| a.0.total_cmp(&b.0));
    if facets.is_empty() {
        return Vec::new();
    }
    let mut vertices: Vec<[f64; 2]> = Vec::new();
    for w in facets.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let det = a.1[0] * b.1[1] - a.1[1] * b.1[0];
        if det.abs() < 1e-12 {
            continue;
        }
        let p = [(a.2 * b.1[1] - b.2 * a.1[1]) / det, (a.1[0] * b.2 - b.1[0] * a.2) / det];
        if vertices.last().map_or(true, |q| (q[0] - p[0]).abs() + (q[1] - p[1]).abs() > 1e-9) {
            vertices.push(p);
        }
    }
    let (first, last) = (&facets[0], &facets[facets.len() - 1]);
    let foot = |f: &(f64, [f64; 2], f64)| [f.1[0] * f.2, f.1[1] * f.2];
    let start = vertices.first().copied().unwrap_or_else(|| foot(first));
    let end = vertices.last().copied().unwrap_or_else(|| foot(last));
    let reach =
        1.0 + vertices.iter().chain([&start, &end]).map(|p| p[0].abs().max(p[1].abs())).fold(0.0, f64::max);
    // Rotate the outermost normals by ±90° to follow the unbounded edges.
    let head = [start[0] - reach * first.1[1], start[1] + reach * first.1[0]];
    let tail = [end[0] + reach * last.1[1], end[1] - reach * last.1[0]];
    let mut line = vec![head];
    line.extend(vertices);
    if line.len() == 1 {
        line.push(start);
    }
    line.push(tail);
    line
}
