//! Shift-sum refocusing.
//!
//! For a focal parameter `alpha`, every view `(k, l)` is resampled at
//! `(y + alpha * (k - kc), x + alpha * (l - lc))` where `(kc, lc)` is the grid
//! centre, and the results are averaged. Samples between pixels are bilinearly
//! interpolated; coordinates are clamped to the view before interpolation so
//! every view contributes to every output pixel.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Planar;
use crate::scalar::{to_u8, Real};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    #[default]
    ClampToEdge,
}

/// Which grid position is the unshifted reference.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Centering {
    #[default]
    GridCenter,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefocusParams {
    pub alpha: f64,
    pub boundary: Boundary,
    pub centering: Centering,
}

impl RefocusParams {
    pub fn new(alpha: f64) -> Self {
        RefocusParams { alpha, boundary: Boundary::default(), centering: Centering::default() }
    }
}

/// A refocused RGB image with real-valued samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered<T> {
    pub width: usize,
    pub height: usize,
    /// R, G, B planes, row-major.
    pub planes: [Vec<T>; 3],
    pub alpha: f64,
}

impl<T: Real> Rendered<T> {
    pub fn get(&self, c: usize, y: usize, x: usize) -> T {
        self.planes[c][y * self.width + x]
    }

    /// 8-bit, channel-interleaved samples (round half away from zero, clamped).
    pub fn to_rgb8(&self) -> Vec<u8> {
        let n = self.width * self.height;
        let mut out = Vec::with_capacity(n * 3);
        for i in 0..n {
            for plane in &self.planes {
                out.push(to_u8(plane[i]).unwrap_or(0));
            }
        }
        out
    }
}

/// Refocused views with strictly increasing `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stack<T> {
    views: Vec<Rendered<T>>,
}

impl<T> Stack<T> {
    pub fn views(&self) -> &[Rendered<T>] {
        &self.views
    }

    pub fn len(&self) -> usize {
        self.views.len()
    }

    pub fn is_empty(&self) -> bool {
        self.views.is_empty()
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.views.iter().map(|v| v.alpha).collect()
    }
}

/// Per-output-coordinate interpolation taps along one axis.
struct Taps<T> {
    lo: Vec<usize>,
    hi: Vec<usize>,
    frac: Vec<T>,
}

impl<T: Real> Taps<T> {
    fn new(len: usize, shift: T) -> Self {
        let last = T::of((len - 1) as f64);
        let mut taps = Taps {
            lo: Vec::with_capacity(len),
            hi: Vec::with_capacity(len),
            frac: Vec::with_capacity(len),
        };
        for i in 0..len {
            let s = (T::of(i as f64) + shift).max(T::zero()).min(last);
            let lo = s.floor();
            let lo_i = lo.to_usize().unwrap_or(0);
            taps.lo.push(lo_i);
            taps.hi.push((lo_i + 1).min(len - 1));
            taps.frac.push(s - lo);
        }
        taps
    }
}

fn lerp<T: Real>(a: T, b: T, t: T) -> T {
    a + t * (b - a)
}

pub fn render_refocused<T: Real>(pf: &Planar<T>, params: RefocusParams) -> Result<Rendered<T>> {
    if !params.alpha.is_finite() {
        return Err(Error::Param(format!("alpha must be finite, got {}", params.alpha)));
    }
    let d = pf.dims();
    let (h, w) = (d.height, d.width);
    let kc = (d.grid_rows as f64 - 1.0) / 2.0;
    let lc = (d.grid_cols as f64 - 1.0) / 2.0;

    // Taps depend only on the view's shift, shared across channels.
    let taps: Vec<(Taps<T>, Taps<T>)> = (0..d.grid_rows)
        .flat_map(|k| (0..d.grid_cols).map(move |l| (k, l)))
        .map(|(k, l)| {
            let dy = T::of(params.alpha * (k as f64 - kc));
            let dx = T::of(params.alpha * (l as f64 - lc));
            (Taps::new(h, dy), Taps::new(w, dx))
        })
        .collect();

    let norm = T::of(d.views() as f64);
    let view_len = h * w;
    let planes = std::array::from_fn(|c| {
        let src = pf.plane(c);
        let mut out = vec![T::zero(); view_len];
        out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
            for (v, (ty, tx)) in taps.iter().enumerate() {
                let view = &src[v * view_len..(v + 1) * view_len];
                let r0 = &view[ty.lo[y] * w..][..w];
                let r1 = &view[ty.hi[y] * w..][..w];
                let fy = ty.frac[y];
                for (x, acc) in row.iter_mut().enumerate() {
                    let (x0, x1, fx) = (tx.lo[x], tx.hi[x], tx.frac[x]);
                    let top = lerp(r0[x0], r0[x1], fx);
                    let bottom = lerp(r1[x0], r1[x1], fx);
                    *acc = *acc + lerp(top, bottom, fy);
                }
            }
            for acc in row.iter_mut() {
                *acc = *acc / norm;
            }
        });
        out
    });
    Ok(Rendered { width: w, height: h, planes, alpha: params.alpha })
}

pub fn render_focal_stack<T: Real>(pf: &Planar<T>, alphas: &[f64]) -> Result<Stack<T>> {
    if alphas.is_empty() {
        return Err(Error::Param("focal stack needs at least one alpha".into()));
    }
    if let Some(pair) = alphas.windows(2).find(|p| !(p[0] < p[1])) {
        return Err(Error::Param(format!(
            "alphas must be strictly increasing, found {} then {}",
            pair[0], pair[1]
        )));
    }
    let views = alphas
        .par_iter()
        .map(|&a| render_refocused(pf, RefocusParams::new(a)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Stack { views })
}

/// `count` evenly spaced focal parameters across the disparity range, inclusive.
pub fn make_alpha_sweep(disparity_min: f64, disparity_max: f64, count: usize) -> Result<Vec<f64>> {
    if count < 1 {
        return Err(Error::Param("alpha count must be at least 1".into()));
    }
    if !disparity_min.is_finite() || !disparity_max.is_finite() || disparity_min > disparity_max {
        return Err(Error::Param(format!(
            "invalid disparity range {disparity_min}..{disparity_max}"
        )));
    }
    if count == 1 {
        return Ok(vec![disparity_min]);
    }
    let step = (disparity_max - disparity_min) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                disparity_max
            } else {
                disparity_min + step * i as f64
            }
        })
        .collect())
}
