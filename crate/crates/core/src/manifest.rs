//! Light-field manifests: a JSON description of a view grid stored as PPM files.
//!
//! ```json
//! {"name": "fence", "grid_rows": 15, "grid_cols": 15, "width": 625, "height": 434,
//!  "file_pattern": "views/{row:02}_{col:02}.ppm", "disparity_min": -1, "disparity_max": 1}
//! ```
//!
//! `{row}` and `{col}` expand to zero-based grid coordinates; `{row:03}` pads
//! with zeros to the given width. Paths are relative to the manifest file.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{LightField, View};
use crate::ppm::{read_ppm, write_ppm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub grid_rows: usize,
    pub grid_cols: usize,
    pub width: usize,
    pub height: usize,
    pub file_pattern: String,
    pub disparity_min: f64,
    pub disparity_max: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Segment {
    Text(String),
    Row(usize),
    Col(usize),
}

/// A parsed `file_pattern`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilePattern(Vec<Segment>);

impl FilePattern {
    pub fn parse(pattern: &str) -> Result<Self> {
        let mut segments = Vec::new();
        let mut rest = pattern;
        while let Some(open) = rest.find(['{', '}']) {
            if rest.as_bytes()[open] == b'}' {
                return Err(Error::Manifest(format!("unbalanced '}}' in {pattern:?}")));
            }
            if open > 0 {
                segments.push(Segment::Text(rest[..open].to_owned()));
            }
            let close = rest[open..]
                .find('}')
                .ok_or_else(|| Error::Manifest(format!("unclosed '{{' in {pattern:?}")))?
                + open;
            let body = &rest[open + 1..close];
            let (key, pad) = match body.split_once(':') {
                Some((key, spec)) => {
                    let pad = spec.parse::<usize>().ok().filter(|_| {
                        !spec.is_empty() && spec.bytes().all(|b| b.is_ascii_digit())
                    });
                    let pad = pad.ok_or_else(|| {
                        Error::Manifest(format!("bad padding {spec:?} in {pattern:?}"))
                    })?;
                    (key, pad)
                }
                None => (body, 0),
            };
            segments.push(match key {
                "row" => Segment::Row(pad),
                "col" => Segment::Col(pad),
                _ => return Err(Error::Manifest(format!("unknown placeholder {{{body}}}"))),
            });
            rest = &rest[close + 1..];
        }
        if !rest.is_empty() {
            segments.push(Segment::Text(rest.to_owned()));
        }
        Ok(FilePattern(segments))
    }

    pub fn expand(&self, row: usize, col: usize) -> String {
        let mut out = String::new();
        for seg in &self.0 {
            match seg {
                Segment::Text(t) => out.push_str(t),
                Segment::Row(w) => out.push_str(&format!("{row:0w$}", w = *w)),
                Segment::Col(w) => out.push_str(&format!("{col:0w$}", w = *w)),
            }
        }
        out
    }
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest =
            serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        if m.grid_rows == 0 || m.grid_cols == 0 || m.width == 0 || m.height == 0 {
            return Err(Error::Manifest("grid and view dimensions must be positive".into()));
        }
        if !(m.disparity_min <= m.disparity_max) {
            return Err(Error::Manifest(format!(
                "disparity_min {} exceeds disparity_max {}",
                m.disparity_min, m.disparity_max
            )));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }

    /// Relative view paths in row-major grid order. Fails if two grid cells
    /// expand to the same path.
    pub fn view_paths(&self) -> Result<Vec<String>> {
        let pattern = FilePattern::parse(&self.file_pattern)?;
        let mut seen: HashMap<String, (usize, usize)> = HashMap::new();
        let mut paths = Vec::with_capacity(self.grid_rows * self.grid_cols);
        for row in 0..self.grid_rows {
            for col in 0..self.grid_cols {
                let p = pattern.expand(row, col);
                if let Some((r0, c0)) = seen.insert(p.clone(), (row, col)) {
                    return Err(Error::Load {
                        row,
                        col,
                        reason: format!("path {p:?} collides with view ({r0}, {c0})"),
                    });
                }
                paths.push(p);
            }
        }
        Ok(paths)
    }
}

pub fn load_light_field(manifest_path: impl AsRef<Path>) -> Result<LightField> {
    let manifest_path = manifest_path.as_ref();
    let text =
        fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
    let manifest = Manifest::from_json(&text)?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let cols = manifest.grid_cols;
    let views = manifest
        .view_paths()?
        .into_par_iter()
        .enumerate()
        .map(|(i, rel)| {
            let (row, col) = (i / cols, i % cols);
            let path = base.join(&rel);
            let bytes = fs::read(&path).map_err(|e| Error::Load {
                row,
                col,
                reason: format!("{}: {e}", path.display()),
            })?;
            let view = read_ppm(&bytes).map_err(|e| Error::Load {
                row,
                col,
                reason: format!("{}: {e}", path.display()),
            })?;
            if view.width() != manifest.width || view.height() != manifest.height {
                return Err(Error::Load {
                    row,
                    col,
                    reason: format!(
                        "view is {}x{}, manifest says {}x{}",
                        view.width(),
                        view.height(),
                        manifest.width,
                        manifest.height
                    ),
                });
            }
            Ok(view)
        })
        .collect::<Result<Vec<View>>>()?;
    LightField::new(
        manifest.grid_rows,
        manifest.grid_cols,
        views,
        manifest.disparity_min,
        manifest.disparity_max,
    )
}

/// Writes every view as a PPM under `dir` plus `manifest.json`; returns the manifest path.
pub fn save_light_field(
    lf: &LightField,
    dir: impl AsRef<Path>,
    name: &str,
    file_pattern: &str,
) -> Result<PathBuf> {
    let dir = dir.as_ref();
    let manifest = Manifest {
        name: name.to_owned(),
        grid_rows: lf.grid_rows(),
        grid_cols: lf.grid_cols(),
        width: lf.width(),
        height: lf.height(),
        file_pattern: file_pattern.to_owned(),
        disparity_min: lf.disparity_min(),
        disparity_max: lf.disparity_max(),
    };
    let paths = manifest.view_paths()?;
    for (rel, view) in paths.iter().zip(lf.views()) {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        fs::write(&path, write_ppm(view)).map_err(|e| Error::io(&path, e))?;
    }
    let manifest_path = dir.join("manifest.json");
    fs::write(&manifest_path, manifest.to_json()).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(manifest_path)
}
