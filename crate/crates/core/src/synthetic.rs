//! Synthetic light fields with known geometry.
//!
//! Every view is the same analytic texture translated by `delta` pixels per
//! grid step from the centre view, i.e. a fronto-parallel plane at disparity
//! `delta`. Refocusing at `alpha = delta` realigns all views.

use crate::field::{LightField, View};
use crate::scalar::to_u8;

fn hash(ix: i64, iy: i64, c: usize) -> f64 {
    let mut h = (ix as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (iy as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
        ^ (c as u64).wrapping_mul(0x1656_67b1_9e37_79f9);
    h ^= h >> 31;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 29;
    (h >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

fn smoothstep(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

/// Smooth value noise in [-1, 1] on a lattice of spacing `cell`.
fn value_noise(y: f64, x: f64, cell: f64, c: usize) -> f64 {
    let (fy, fx) = (y / cell, x / cell);
    let (iy, ix) = (fy.floor(), fx.floor());
    let (ty, tx) = (smoothstep(fy - iy), smoothstep(fx - ix));
    let (iy, ix) = (iy as i64, ix as i64);
    let top = hash(ix, iy, c) + tx * (hash(ix + 1, iy, c) - hash(ix, iy, c));
    let bottom = hash(ix, iy + 1, c) + tx * (hash(ix + 1, iy + 1, c) - hash(ix, iy + 1, c));
    top + ty * (bottom - top)
}

/// Texture value of channel `c` at continuous position `(y, x)`, roughly in 0..255.
pub fn texture(c: usize, y: f64, x: f64) -> f64 {
    let phase = c as f64;
    let v = 120.0
        + 40.0 * (0.19 * x + 0.11 * y + phase).sin()
        + 20.0 * (0.07 * x - 0.23 * y + 2.0 * phase).cos()
        + 30.0 * value_noise(y, x, 5.0, c)
        + 12.0 * value_noise(y, x, 2.0, c + 3)
        + 25.0 * ((x - 0.6 * y - 20.0) / 1.5).tanh();
    v.clamp(0.0, 255.0)
}

/// `rows x cols` views of [`texture`], view `(k, l)` shifted by
/// `delta * (k - kc, l - lc)` so that `L(k, l, y, x) = texture(y - delta*(k-kc), x - delta*(l-lc))`.
/// The disparity range is `delta - 1 ..= delta + 1`.
pub fn translated_plane(rows: usize, cols: usize, width: usize, height: usize, delta: f64) -> LightField {
    let kc = (rows as f64 - 1.0) / 2.0;
    let lc = (cols as f64 - 1.0) / 2.0;
    let mut views = Vec::with_capacity(rows * cols);
    for k in 0..rows {
        for l in 0..cols {
            let (dy, dx) = (delta * (k as f64 - kc), delta * (l as f64 - lc));
            let mut samples = Vec::with_capacity(width * height * 3);
            for y in 0..height {
                for x in 0..width {
                    for c in 0..3 {
                        let v = texture(c, y as f64 - dy, x as f64 - dx);
                        samples.push(to_u8(v).expect("finite texture"));
                    }
                }
            }
            views.push(View::new(width, height, samples).expect("sized samples"));
        }
    }
    LightField::new(rows, cols, views, delta - 1.0, delta + 1.0).expect("valid grid")
}

/// The unshifted texture as an 8-bit view, the ideal refocus at `alpha = delta`.
pub fn reference_view(width: usize, height: usize) -> View {
    let mut samples = Vec::with_capacity(width * height * 3);
    for y in 0..height {
        for x in 0..width {
            for c in 0..3 {
                samples.push(to_u8(texture(c, y as f64, x as f64)).expect("finite texture"));
            }
        }
    }
    View::new(width, height, samples).expect("sized samples")
}
