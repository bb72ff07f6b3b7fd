//! Separable orthonormal DCT on 8^d blocks.
//!
//! Forward applies the 8-point DCT-II along every axis and then scales by
//! `8^-((d-2)/2)`, which keeps coefficient magnitudes in the 2D range for 3D
//! and 4D blocks. A constant block of value `v` therefore has DC `8v` for any d.

use std::sync::OnceLock;

use crate::codec::blocks::{block_len, BLOCK_EDGE};
use crate::codec::Direction;
use crate::error::{Error, Result};
use crate::scalar::Real;

const N: usize = BLOCK_EDGE;

/// `basis[u][x] = c(u) cos((2x + 1) u pi / 16)` with `c(0) = sqrt(1/8)`, else `sqrt(2/8)`.
fn basis_f64() -> &'static [[f64; N]; N] {
    static BASIS: OnceLock<[[f64; N]; N]> = OnceLock::new();
    BASIS.get_or_init(|| {
        std::array::from_fn(|u| {
            let c = if u == 0 { (1.0 / N as f64).sqrt() } else { (2.0 / N as f64).sqrt() };
            std::array::from_fn(|x| {
                c * (((2 * x + 1) * u) as f64 * std::f64::consts::PI / (2 * N) as f64).cos()
            })
        })
    })
}

/// Orthonormal 1-D DCT-II basis value, exposed for oracles and diagnostics.
pub fn basis(u: usize, x: usize) -> f64 {
    basis_f64()[u][x]
}

/// Scale applied after the forward transform of a `d`-dimensional block.
pub fn gain(d: usize) -> f64 {
    (N as f64).powf(-((d as f64) - 2.0) / 2.0)
}

/// Transforms `block` in place; it must hold exactly `8^d` samples.
pub fn dct_in_place<T: Real>(block: &mut [T], d: usize, direction: Direction) -> Result<()> {
    if block.len() != block_len(d) {
        return Err(Error::Shape(format!(
            "{d}-d block needs {} samples, got {}",
            block_len(d),
            block.len()
        )));
    }
    let b = basis_f64();
    let m: [[T; N]; N] = match direction {
        Direction::Forward => std::array::from_fn(|u| std::array::from_fn(|x| T::of(b[u][x]))),
        Direction::Inverse => std::array::from_fn(|x| std::array::from_fn(|u| T::of(b[u][x]))),
    };
    let g = T::of(gain(d));
    if direction == Direction::Inverse && d != 2 {
        block.iter_mut().for_each(|v| *v = *v / g);
    }
    let mut line = [T::zero(); N];
    for axis in 0..d {
        let stride = N.pow((d - 1 - axis) as u32);
        let outer = block.len() / (stride * N);
        for o in 0..outer {
            for i in 0..stride {
                let base = o * stride * N + i;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = block[base + j * stride];
                }
                for (r, row) in m.iter().enumerate() {
                    let mut acc = T::zero();
                    for (coef, v) in row.iter().zip(&line) {
                        acc = acc + *coef * *v;
                    }
                    block[base + r * stride] = acc;
                }
            }
        }
    }
    if direction == Direction::Forward && d != 2 {
        block.iter_mut().for_each(|v| *v = *v * g);
    }
    Ok(())
}

pub fn dct<T: Real>(block: &[T], d: usize, direction: Direction) -> Result<Vec<T>> {
    let mut out = block.to_vec();
    dct_in_place(&mut out, d, direction)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_block(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
        (0..block_len(d)).map(|_| rng.gen_range(-128.0..128.0)).collect()
    }

    /// Direct 2-D definition: every coefficient as one double sum.
    fn naive_2d(x: &[f64]) -> Vec<f64> {
        let pi = std::f64::consts::PI;
        let c = |u: usize| if u == 0 { (0.125f64).sqrt() } else { 0.5 };
        let mut out = vec![0.0; 64];
        for u in 0..8 {
            for v in 0..8 {
                let mut s = 0.0;
                for i in 0..8 {
                    for j in 0..8 {
                        s += x[i * 8 + j]
                            * ((2 * i + 1) as f64 * u as f64 * pi / 16.0).cos()
                            * ((2 * j + 1) as f64 * v as f64 * pi / 16.0).cos();
                    }
                }
                out[u * 8 + v] = c(u) * c(v) * s;
            }
        }
        out
    }

    #[test]
    fn constant_block_dc() {
        for d in 2..=4 {
            let block = vec![5.0f64; block_len(d)];
            let c = dct(&block, d, Direction::Forward).unwrap();
            assert!((c[0] - 40.0).abs() < 1e-9, "d={d} dc={}", c[0]);
            assert!(c[1..].iter().all(|v| v.abs() < 1e-9));
        }
    }

    #[test]
    fn matches_naive_2d() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let x = random_block(&mut rng, 2);
            let fast = dct(&x, 2, Direction::Forward).unwrap();
            for (a, b) in fast.iter().zip(naive_2d(&x)) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn inverse_round_trip_and_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=4 {
            let x = random_block(&mut rng, d);
            let c = dct(&x, d, Direction::Forward).unwrap();
            let e_in: f64 = x.iter().map(|v| v * v).sum();
            let e_out: f64 = c.iter().map(|v| v * v).sum::<f64>() * 8f64.powi(d as i32 - 2);
            assert!((e_in - e_out).abs() / e_in < 1e-12, "parseval d={d}");
            let back = dct(&c, d, Direction::Inverse).unwrap();
            for (a, b) in x.iter().zip(&back) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn f32_round_trip() {
        let x: Vec<f32> = (0..512).map(|i| ((i * 37) % 255) as f32 - 128.0).collect();
        let c = dct(&x, 3, Direction::Forward).unwrap();
        let back = dct(&c, 3, Direction::Inverse).unwrap();
        assert!(x.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-3));
    }

    #[test]
    fn wrong_length_is_shape_error() {
        assert!(matches!(dct(&[0.0f64; 63], 2, Direction::Forward), Err(Error::Shape(_))));
    }
}
