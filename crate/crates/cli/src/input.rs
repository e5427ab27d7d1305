//! Input parsing: tableau files (JSON or plain grids) and sweep manifests
//! (JSON or TOML).

use std::path::Path;

use kgonal::{SweepManifest, Tableau};

use crate::CliError;

/// Accepted tableau file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableauFormat {
    /// Detect from the first non-whitespace byte.
    Auto,
    /// `{"a":3,"b":2,"g":6,"rows":[[1,2,4],[4,5,6]]}`
    Json,
    /// Whitespace-separated rows, one line per row.
    Grid,
}

/// Read a tableau from a file. Plain grids take their alphabet from
/// `--g` when given, otherwise from the largest symbol; for JSON input a
/// `--g` override must agree with the file.
pub fn read_tableau(
    path: &Path,
    format: TableauFormat,
    g_override: Option<i64>,
) -> Result<Tableau, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let format = match format {
        TableauFormat::Auto => {
            if text.trim_start().starts_with('{') {
                TableauFormat::Json
            } else {
                TableauFormat::Grid
            }
        }
        f => f,
    };
    match format {
        TableauFormat::Json => {
            let t: Tableau = serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("{}: invalid tableau JSON: {e}", path.display()))
            })?;
            if let Some(g) = g_override {
                if g != t.alphabet() {
                    return Err(CliError::Usage(format!(
                        "--g {g} conflicts with the file's alphabet {}",
                        t.alphabet()
                    )));
                }
            }
            Ok(t)
        }
        TableauFormat::Grid => parse_grid(&text, g_override)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        TableauFormat::Auto => unreachable!(),
    }
}

fn parse_grid(text: &str, g_override: Option<i64>) -> Result<Tableau, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (col, tok) in line.split_whitespace().enumerate() {
            let v: i64 = tok.parse().map_err(|_| {
                format!(
                    "parse error at line {} column {}: {tok:?} is not an integer",
                    lineno + 1,
                    col + 1
                )
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("parse error: no rows".into());
    }
    let max = rows.iter().flatten().copied().max().unwrap_or(0);
    let g = g_override.unwrap_or(max);
    Tableau::from_rows(g, rows).map_err(|e| e.to_string())
}

/// Read a sweep manifest from JSON or TOML, by extension then content.
pub fn read_manifest(path: &Path) -> Result<SweepManifest, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let by_ext = path.extension().and_then(|e| e.to_str());
    let manifest = match by_ext {
        Some("toml") => toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: invalid manifest TOML: {e}", path.display()))),
        Some("json") => serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: invalid manifest JSON: {e}", path.display()))),
        _ => serde_json::from_str(&text)
            .or_else(|_| toml::from_str(&text))
            .map_err(|e| CliError::Usage(format!("{}: invalid manifest: {e}", path.display()))),
    }?;
    Ok(manifest)
}
