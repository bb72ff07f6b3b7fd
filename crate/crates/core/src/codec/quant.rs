//! Quantization tables for 8^d blocks and scalar quantization.

use crate::codec::blocks::{block_len, BLOCK_EDGE};
use crate::codec::ChannelClass;
use crate::scalar::Real;

/// ITU-T T.81 Annex K, Table K.1 (luminance), natural order.
pub const ANNEX_K_LUMA: [u8; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

/// ITU-T T.81 Annex K, Table K.2 (chrominance), natural order.
pub const ANNEX_K_CHROMA: [u8; 64] = [
    17, 18, 24, 47, 99, 99, 99, 99, //
    18, 21, 26, 66, 99, 99, 99, 99, //
    24, 26, 56, 99, 99, 99, 99, 99, //
    47, 66, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99,
];

/// Largest quantized AC magnitude; keeps AC size categories within 10.
pub const AC_LIMIT: i32 = 1023;
/// Quantized DC range; any DPCM difference then fits size category 12.
pub const DC_MIN: i32 = -2048;
pub const DC_MAX: i32 = 2047;

const MAX_FREQ_SUM: usize = 2 * (BLOCK_EDGE - 1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantTable {
    pub dimensionality: usize,
    pub class: ChannelClass,
    /// `8^d` divisors in row-major multi-index order, each in 1..=255.
    pub entries: Vec<u16>,
}

fn annex_k(class: ChannelClass) -> &'static [u8; 64] {
    match class {
        ChannelClass::Luma => &ANNEX_K_LUMA,
        ChannelClass::Chroma => &ANNEX_K_CHROMA,
    }
}

/// Mean of the 2-D base table along each anti-diagonal `u + v = r`, rounded.
pub fn diagonal_means(class: ChannelClass) -> [u16; MAX_FREQ_SUM + 1] {
    let base = annex_k(class);
    std::array::from_fn(|r| {
        let vals: Vec<f64> = (0..64)
            .filter(|i| i / 8 + i % 8 == r)
            .map(|i| f64::from(base[i]))
            .collect();
        (vals.iter().sum::<f64>() / vals.len() as f64).round() as u16
    })
}

/// libjpeg-style quality scaling: 5000/q below 50, 200 - 2q from 50 up.
pub fn quality_scale(quality: u8) -> u32 {
    let q = u32::from(quality.clamp(1, 100));
    if q < 50 {
        5000 / q
    } else {
        200 - 2 * q
    }
}

fn scale_entry(entry: u16, scale: u32) -> u16 {
    ((u32::from(entry) * scale + 50) / 100).clamp(1, 255) as u16
}

pub fn build_quant_table(d: usize, quality: u8, class: ChannelClass) -> QuantTable {
    let scale = quality_scale(quality);
    let entries = if d == 2 {
        annex_k(class).iter().map(|&e| scale_entry(u16::from(e), scale)).collect()
    } else {
        let g = diagonal_means(class);
        (0..block_len(d))
            .map(|i| {
                let mut rem = i;
                let mut sum = 0;
                for _ in 0..d {
                    sum += rem % BLOCK_EDGE;
                    rem /= BLOCK_EDGE;
                }
                scale_entry(g[sum.min(MAX_FREQ_SUM)], scale)
            })
            .collect()
    };
    QuantTable { dimensionality: d, class, entries }
}

/// Divides by the table, rounds half away from zero and clamps to the codable range.
/// Index 0 is the DC coefficient.
pub fn quantize<T: Real>(block: &[T], table: &QuantTable) -> Vec<i32> {
    debug_assert_eq!(block.len(), table.entries.len());
    block
        .iter()
        .zip(&table.entries)
        .enumerate()
        .map(|(i, (&c, &t))| {
            let q = (c.as_f64() / f64::from(t)).round();
            let (lo, hi) = if i == 0 { (DC_MIN, DC_MAX) } else { (-AC_LIMIT, AC_LIMIT) };
            q.clamp(f64::from(lo), f64::from(hi)) as i32
        })
        .collect()
}

pub fn dequantize<T: Real>(block: &[i32], table: &QuantTable) -> Vec<T> {
    block
        .iter()
        .zip(&table.entries)
        .map(|(&q, &t)| T::of(f64::from(q) * f64::from(t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_d_quality_50_is_annex_k() {
        let t = build_quant_table(2, 50, ChannelClass::Luma);
        assert_eq!(t.entries[0], 16);
        assert!(t.entries.iter().zip(ANNEX_K_LUMA).all(|(&a, b)| a == u16::from(b)));
        let c = build_quant_table(2, 50, ChannelClass::Chroma);
        assert_eq!(c.entries[0], 17);
    }

    #[test]
    fn quality_100_is_all_ones() {
        for d in 2..=4 {
            for class in [ChannelClass::Luma, ChannelClass::Chroma] {
                let t = build_quant_table(d, 100, class);
                assert_eq!(t.entries.len(), block_len(d));
                assert!(t.entries.iter().all(|&e| e == 1));
            }
        }
    }

    #[test]
    fn higher_dims_use_diagonal_means() {
        let g = diagonal_means(ChannelClass::Luma);
        assert_eq!(g[0], 16);
        // (11 + 12) / 2 = 11.5 rounds to 12
        assert_eq!(g[1], 12);
        assert_eq!(g[14], 99);
        let t = build_quant_table(3, 50, ChannelClass::Luma);
        assert_eq!(t.entries[0], 16);
        assert_eq!(t.entries[1], g[1]);
        // (7,7,7) sums past 14 and uses the last diagonal
        assert_eq!(t.entries[511], g[14]);
        assert!(t.entries.iter().all(|&e| (1..=255).contains(&e)));
    }

    #[test]
    fn low_quality_clamps_to_255() {
        let t = build_quant_table(2, 1, ChannelClass::Chroma);
        assert!(t.entries.iter().all(|&e| e == 255));
        assert_eq!(quality_scale(10), 500);
        assert_eq!(quality_scale(75), 50);
    }

    #[test]
    fn rounding_and_clamping() {
        let t = QuantTable { dimensionality: 2, class: ChannelClass::Luma, entries: vec![16; 64] };
        let mut block = vec![0.0f64; 64];
        block[0] = 33.0;
        block[1] = -24.0;
        block[2] = 1e6;
        block[3] = -1e6;
        let q = quantize(&block, &t);
        assert_eq!(&q[..4], &[2, -2, AC_LIMIT, -AC_LIMIT]);
        let back: Vec<f64> = dequantize(&q, &t);
        assert_eq!(back[0], 32.0);
        block[0] = -1e9;
        assert_eq!(quantize(&block, &t)[0], DC_MIN);
    }

    #[test]
    fn identity_table_rounds() {
        let t = build_quant_table(2, 100, ChannelClass::Luma);
        let block: Vec<f64> = (0..64).map(|i| i as f64 * 1.37 - 40.0).collect();
        let q = quantize(&block, &t);
        let back: Vec<f64> = dequantize(&q, &t);
        for (b, v) in back.iter().zip(&block) {
            assert_eq!(*b, v.round());
        }
    }
}
