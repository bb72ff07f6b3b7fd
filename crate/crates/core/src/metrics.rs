//! Distortion metrics.
//!
//! PSNR pools the squared error over every pixel of all three colour channels
//! and is computed on 8-bit samples; real-valued renders are rounded half away
//! from zero first. Identical inputs give `f64::INFINITY`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::LightField;
use crate::refocus::{render_refocused, RefocusParams, Rendered};
use crate::scalar::Real;

const PEAK_SQUARED: f64 = 255.0 * 255.0;

/// One row of a rate-distortion table.
#[derive(Clone, Debug, PartialEq)]
pub struct RdPoint {
    pub mode: String,
    pub quality: u8,
    pub bpp: f64,
    pub psnr_mean: f64,
    pub psnr_direct: Option<f64>,
}

pub fn mse_u8(a: &[u8], b: &[u8]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!("sample counts differ: {} vs {}", a.len(), b.len())));
    }
    if a.is_empty() {
        return Err(Error::Shape("no samples".into()));
    }
    let sse: u64 = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum();
    Ok(sse as f64 / a.len() as f64)
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK_SQUARED / mse).log10()
    }
}

/// PSNR of two equally sized 8-bit sample buffers.
pub fn psnr(a: &[u8], b: &[u8]) -> Result<f64> {
    mse_u8(a, b).map(psnr_from_mse)
}

/// PSNR of two renders after rounding both to 8 bits.
pub fn psnr_rendered<T: Real>(a: &Rendered<T>, b: &Rendered<T>) -> Result<f64> {
    if (a.width, a.height) != (b.width, b.height) {
        return Err(Error::Shape(format!(
            "render sizes differ: {}x{} vs {}x{}",
            a.width, a.height, b.width, b.height
        )));
    }
    psnr(&a.to_rgb8(), &b.to_rgb8())
}

fn check_geometry(a: &LightField, b: &LightField) -> Result<()> {
    if !a.same_geometry(b) {
        return Err(Error::Shape(format!(
            "light fields differ: {}x{} grid of {}x{} vs {}x{} grid of {}x{}",
            a.grid_rows(),
            a.grid_cols(),
            a.width(),
            a.height(),
            b.grid_rows(),
            b.grid_cols(),
            b.width(),
            b.height()
        )));
    }
    Ok(())
}

/// PSNR over the full 4D sample arrays.
pub fn direct_psnr(original: &LightField, decoded: &LightField) -> Result<f64> {
    check_geometry(original, decoded)?;
    let sse: f64 = original
        .views()
        .iter()
        .zip(decoded.views())
        .map(|(a, b)| mse_u8(a.samples(), b.samples()).map(|m| m * a.samples().len() as f64))
        .sum::<Result<f64>>()?;
    let n = original.pixel_count() * 3;
    Ok(psnr_from_mse(sse / n as f64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FocalPsnr {
    /// Arithmetic mean of `per_alpha`; infinite if any entry is.
    pub mean: f64,
    pub per_alpha: Vec<f64>,
}

/// Renders both light fields at every `alpha` and averages the per-plane PSNRs.
pub fn mean_focal_psnr(
    original: &LightField,
    decoded: &LightField,
    alphas: &[f64],
) -> Result<FocalPsnr> {
    check_geometry(original, decoded)?;
    if alphas.is_empty() {
        return Err(Error::Param("at least one focal plane is required".into()));
    }
    let a = original.to_planar::<f64>();
    let b = decoded.to_planar::<f64>();
    let per_alpha = alphas
        .par_iter()
        .map(|&alpha| {
            let p = RefocusParams::new(alpha);
            psnr_rendered(&render_refocused(&a, p)?, &render_refocused(&b, p)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = if per_alpha.iter().any(|v| v.is_infinite()) {
        f64::INFINITY
    } else {
        per_alpha.iter().sum::<f64>() / per_alpha.len() as f64
    };
    Ok(FocalPsnr { mean, per_alpha })
}
