//! Rate-distortion sweeps, Experiment-0 style direct vs rendered comparison,
//! and pseudo-sequence interchange.

pub mod scan;
pub mod y4m;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::codec::{bits_per_pixel, decode, encode, CodecConfig};
use crate::error::{Error, Result};
use crate::field::LightField;
use crate::manifest::load_light_field;
use crate::metrics::{direct_psnr, mean_focal_psnr, RdPoint};
use crate::refocus::make_alpha_sweep;

pub use scan::{scan_sequence, ScanOrder};
pub use y4m::{export_y4m, import_y4m};

pub const DEFAULT_ALPHA_COUNT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Jpeg2d,
    Jpeg3d,
    Jpeg4d,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Jpeg2d, Mode::Jpeg3d, Mode::Jpeg4d];

    pub fn dimensionality(self) -> u8 {
        match self {
            Mode::Jpeg2d => 2,
            Mode::Jpeg3d => 3,
            Mode::Jpeg4d => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Jpeg2d => "jpeg2d",
            Mode::Jpeg3d => "jpeg3d",
            Mode::Jpeg4d => "jpeg4d",
        }
    }

    pub fn config(self, quality: u8) -> Result<CodecConfig> {
        CodecConfig::new(self.dimensionality(), quality)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "2d" | "jpeg2d" => Ok(Mode::Jpeg2d),
            "3d" | "jpeg3d" => Ok(Mode::Jpeg3d),
            "4d" | "jpeg4d" => Ok(Mode::Jpeg4d),
            other => Err(Error::Param(format!("unknown mode {other:?} (expected 2d, 3d or 4d)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub modes: Vec<Mode>,
    pub qualities: Vec<u8>,
    pub alpha_count: usize,
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(modes: Vec<Mode>, qualities: Vec<u8>) -> Self {
        SweepConfig { modes, qualities, alpha_count: DEFAULT_ALPHA_COUNT, output: None }
    }

    fn validate(&self) -> Result<()> {
        if self.modes.is_empty() {
            return Err(Error::Param("no modes given".into()));
        }
        if self.qualities.is_empty() {
            return Err(Error::Param("no qualities given".into()));
        }
        if let Some(q) = self.qualities.iter().find(|q| !(1..=100).contains(*q)) {
            return Err(Error::Param(format!("quality {q} outside 1..=100")));
        }
        if self.alpha_count == 0 {
            return Err(Error::Param("alpha_count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Formats like C's `%g`: six significant digits, trailing zeros removed.
pub fn fmt_g6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn rd_point(lf: &LightField, mode: Mode, quality: u8, alphas: &[f64], direct: bool) -> Result<RdPoint> {
    let stream = encode(lf, mode.config(quality)?)?;
    let decoded = decode(&stream)?;
    let bpp = bits_per_pixel(&stream, stream.header.dims());
    let psnr_mean = mean_focal_psnr(lf, &decoded, alphas)?.mean;
    let psnr_direct = if direct { Some(direct_psnr(lf, &decoded)?) } else { None };
    Ok(RdPoint { mode: mode.name().to_string(), quality, bpp, psnr_mean, psnr_direct })
}

fn sorted_unique<T: Ord + Copy>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Encodes, decodes and scores every `(mode, quality)` pair. Results are sorted
/// by mode then quality regardless of the order given.
pub fn sweep_points(
    lf: &LightField,
    modes: &[Mode],
    qualities: &[u8],
    alphas: &[f64],
    direct: bool,
) -> Result<Vec<RdPoint>> {
    let modes = sorted_unique(modes);
    let qualities = sorted_unique(qualities);
    let jobs: Vec<(Mode, u8)> =
        modes.iter().flat_map(|&m| qualities.iter().map(move |&q| (m, q))).collect();
    jobs.par_iter()
        .map(|&(mode, quality)| {
            rd_point(lf, mode, quality, alphas, direct).map_err(|e| Error::Sweep {
                mode: mode.name().to_string(),
                quality,
                source: Box::new(e),
            })
        })
        .collect()
}

fn sweep_alphas(lf: &LightField, count: usize) -> Result<Vec<f64>> {
    make_alpha_sweep(lf.disparity_min(), lf.disparity_max(), count)
}

pub fn rd_csv(points: &[RdPoint]) -> String {
    let mut out = String::from("mode,quality,bpp,psnr_mean\n");
    for p in points {
        out.push_str(&format!("{},{},{},{}\n", p.mode, p.quality, fmt_g6(p.bpp), fmt_g6(p.psnr_mean)));
    }
    out
}

pub fn experiment0_csv(points: &[RdPoint]) -> String {
    let mut out = String::from("quality,bpp,psnr_direct,psnr_rendered_mean\n");
    for p in points {
        let direct = p.psnr_direct.map_or_else(|| "nan".to_string(), fmt_g6);
        out.push_str(&format!("{},{},{},{}\n", p.quality, fmt_g6(p.bpp), direct, fmt_g6(p.psnr_mean)));
    }
    out
}

/// RD sweep of an in-memory light field.
pub fn rd_sweep_field(lf: &LightField, cfg: &SweepConfig) -> Result<Vec<RdPoint>> {
    cfg.validate()?;
    let alphas = sweep_alphas(lf, cfg.alpha_count)?;
    sweep_points(lf, &cfg.modes, &cfg.qualities, &alphas, false)
}

/// Loads `manifest`, runs the sweep and returns the CSV. When `cfg.output` is
/// set the CSV is also written there.
pub fn rd_sweep(manifest: impl AsRef<Path>, cfg: &SweepConfig) -> Result<String> {
    cfg.validate()?;
    let lf = load_light_field(manifest)?;
    let csv = rd_csv(&rd_sweep_field(&lf, cfg)?);
    if let Some(path) = &cfg.output {
        std::fs::write(path, &csv).map_err(|e| Error::io(path, e))?;
    }
    Ok(csv)
}

/// Direct and rendered PSNR of the 4D codec at each quality.
pub fn experiment0_points(lf: &LightField, qualities: &[u8], alpha_count: usize) -> Result<Vec<RdPoint>> {
    let cfg = SweepConfig {
        modes: vec![Mode::Jpeg4d],
        qualities: qualities.to_vec(),
        alpha_count,
        output: None,
    };
    cfg.validate()?;
    let alphas = sweep_alphas(lf, alpha_count)?;
    sweep_points(lf, &cfg.modes, &cfg.qualities, &alphas, true)
}

pub fn experiment0(manifest: impl AsRef<Path>, qualities: &[u8], alpha_count: usize) -> Result<String> {
    let lf = load_light_field(manifest)?;
    Ok(experiment0_csv(&experiment0_points(&lf, qualities, alpha_count)?))
}
