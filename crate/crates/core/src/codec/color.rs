//! Full-range BT.601 RGB <-> YCbCr in real arithmetic.

use crate::codec::Direction;
use crate::field::Planar;
use crate::scalar::Real;

const FORWARD: [[f64; 3]; 3] = [
    [0.299, 0.587, 0.114],
    [-0.168736, -0.331264, 0.5],
    [0.5, -0.418688, -0.081312],
];
const OFFSET: [f64; 3] = [0.0, 128.0, 128.0];

fn inverse_matrix() -> [[f64; 3]; 3] {
    let m = FORWARD;
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let det = m[0][0] * cof(1, 2, 1, 2) - m[0][1] * cof(1, 2, 0, 2) + m[0][2] * cof(1, 2, 0, 1);
    [
        [cof(1, 2, 1, 2) / det, -cof(0, 2, 1, 2) / det, cof(0, 1, 1, 2) / det],
        [-cof(1, 2, 0, 2) / det, cof(0, 2, 0, 2) / det, -cof(0, 1, 0, 2) / det],
        [cof(1, 2, 0, 1) / det, -cof(0, 2, 0, 1) / det, cof(0, 1, 0, 1) / det],
    ]
}

/// Converts one triple. Forward maps RGB to YCbCr; inverse undoes it.
pub fn convert_pixel<T: Real>(px: [T; 3], direction: Direction) -> [T; 3] {
    match direction {
        Direction::Forward => std::array::from_fn(|r| {
            T::of(OFFSET[r])
                + T::of(FORWARD[r][0]) * px[0]
                + T::of(FORWARD[r][1]) * px[1]
                + T::of(FORWARD[r][2]) * px[2]
        }),
        Direction::Inverse => {
            let inv = inverse_matrix();
            let centred: [T; 3] = std::array::from_fn(|c| px[c] - T::of(OFFSET[c]));
            std::array::from_fn(|r| {
                T::of(inv[r][0]) * centred[0]
                    + T::of(inv[r][1]) * centred[1]
                    + T::of(inv[r][2]) * centred[2]
            })
        }
    }
}

pub fn color_transform<T: Real>(pf: &Planar<T>, direction: Direction) -> Planar<T> {
    let mut out = pf.clone();
    let n = pf.dims().len();
    let [a, b, c] = pf.planes();
    let mut converted: [Vec<T>; 3] = std::array::from_fn(|_| Vec::with_capacity(n));
    for i in 0..n {
        let px = convert_pixel([a[i], b[i], c[i]], direction);
        for (plane, v) in converted.iter_mut().zip(px) {
            plane.push(v);
        }
    }
    for (ch, plane) in converted.into_iter().enumerate() {
        out.plane_mut(ch).copy_from_slice(&plane);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn black_and_white() {
        let black = convert_pixel([0.0, 0.0, 0.0], Direction::Forward);
        assert!(close(black, [0.0, 128.0, 128.0], 1e-12));
        let white = convert_pixel([255.0, 255.0, 255.0], Direction::Forward);
        assert!(close(white, [255.0, 128.0, 128.0], 1e-9));
    }

    #[test]
    fn inverse_times_forward_is_identity() {
        let inv = inverse_matrix();
        for r in 0..3 {
            for c in 0..3 {
                let v: f64 = (0..3).map(|i| inv[r][i] * FORWARD[i][c]).sum();
                assert!((v - if r == c { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(r in 0.0..255.0f64, g in 0.0..255.0f64, b in 0.0..255.0f64) {
            let ycc = convert_pixel([r, g, b], Direction::Forward);
            let back = convert_pixel(ycc, Direction::Inverse);
            prop_assert!(close(back, [r, g, b], 1e-9));
        }
    }
}
