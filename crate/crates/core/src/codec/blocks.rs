//! Padding an N-d array to whole blocks and splitting it into blocks.

use crate::scalar::Real;

/// Edge length of a transform block along every axis.
pub const BLOCK_EDGE: usize = 8;

/// Number of samples in a `d`-dimensional block.
pub fn block_len(d: usize) -> usize {
    BLOCK_EDGE.pow(d as u32)
}

/// Block counts along each axis after padding `shape` up to multiples of 8.
pub fn block_grid(shape: &[usize]) -> Vec<usize> {
    shape.iter().map(|&n| n.div_ceil(BLOCK_EDGE)).collect()
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for a in (0..shape.len().saturating_sub(1)).rev() {
        s[a] = s[a + 1] * shape[a + 1];
    }
    s
}

/// Visits every block element as (block index, element index within block,
/// source offset into the unpadded array). Padded positions map to the last
/// valid hyperplane along each axis.
fn for_each_element(shape: &[usize], mut f: impl FnMut(usize, usize, usize)) {
    let d = shape.len();
    let grid = block_grid(shape);
    let src_strides = strides(shape);
    let blen = block_len(d);
    let nblocks: usize = grid.iter().product();
    let mut bidx = vec![0usize; d];
    let mut eidx = vec![0usize; d];
    for b in 0..nblocks {
        let mut rem = b;
        for a in (0..d).rev() {
            bidx[a] = rem % grid[a];
            rem /= grid[a];
        }
        for e in 0..blen {
            let mut rem = e;
            for a in (0..d).rev() {
                eidx[a] = rem % BLOCK_EDGE;
                rem /= BLOCK_EDGE;
            }
            let mut off = 0;
            for a in 0..d {
                let pos = (bidx[a] * BLOCK_EDGE + eidx[a]).min(shape[a] - 1);
                off += pos * src_strides[a];
            }
            f(b, e, off);
        }
    }
}

/// Pads `data` (row-major over `shape`) by replicating the last hyperplane of
/// each axis and returns its blocks in row-major block order.
pub fn pad_and_partition<T: Real>(data: &[T], shape: &[usize]) -> Vec<Vec<T>> {
    assert_eq!(data.len(), shape.iter().product::<usize>(), "data does not match shape");
    assert!(shape.iter().all(|&n| n >= 1), "all dimensions must be positive");
    let blen = block_len(shape.len());
    let nblocks: usize = block_grid(shape).iter().product();
    let mut blocks = vec![vec![T::zero(); blen]; nblocks];
    for_each_element(shape, |b, e, off| blocks[b][e] = data[off]);
    blocks
}

/// Inverse of [`pad_and_partition`]: reassembles blocks and crops the padding.
pub fn reassemble<T: Real>(blocks: &[Vec<T>], shape: &[usize]) -> Vec<T> {
    let mut out = vec![T::zero(); shape.iter().product()];
    let grid = block_grid(shape);
    let d = shape.len();
    // Write only elements that are not padding, so replicated copies never
    // overwrite the original sample.
    for_each_element(shape, |b, e, off| {
        let mut rem_b = b;
        let mut rem_e = e;
        let mut inside = true;
        for a in (0..d).rev() {
            let pos = (rem_b % grid[a]) * BLOCK_EDGE + rem_e % BLOCK_EDGE;
            rem_b /= grid[a];
            rem_e /= BLOCK_EDGE;
            if pos >= shape[a] {
                inside = false;
                break;
            }
        }
        if inside {
            out[off] = blocks[b][e];
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_fit_has_one_block() {
        let data: Vec<f64> = (0..64).map(f64::from).collect();
        let blocks = pad_and_partition(&data, &[8, 8]);
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0], data);
    }

    #[test]
    fn replicates_last_row() {
        let data: Vec<f64> = (0..72).map(f64::from).collect();
        let blocks = pad_and_partition(&data, &[9, 8]);
        assert_eq!(blocks.len(), 2);
        // second block row 0 is source row 8; rows 1..8 replicate it
        for r in 0..8 {
            assert_eq!(&blocks[1][r * 8..r * 8 + 8], &data[64..72]);
        }
        assert_eq!(reassemble(&blocks, &[9, 8]), data);
    }

    #[test]
    fn four_d_block_count() {
        let shape = [15, 15, 16, 16];
        assert_eq!(block_grid(&shape), vec![2, 2, 2, 2]);
        let data: Vec<f32> = (0..shape.iter().product::<usize>()).map(|i| (i % 251) as f32).collect();
        let blocks = pad_and_partition(&data, &shape);
        assert_eq!(blocks.len(), 16);
        assert_eq!(reassemble(&blocks, &shape), data);
    }

    #[test]
    fn odd_shapes_round_trip() {
        for shape in [vec![1, 1], vec![3, 17], vec![2, 9, 5], vec![1, 3, 10, 4]] {
            let n: usize = shape.iter().product();
            let data: Vec<f64> = (0..n).map(|i| (i * 7 % 13) as f64).collect();
            let blocks = pad_and_partition(&data, &shape);
            assert_eq!(blocks.len(), block_grid(&shape).iter().product::<usize>());
            assert_eq!(reassemble(&blocks, &shape), data, "{shape:?}");
        }
    }
}
