//! Coefficient scan order generalised to d dimensions: ascending total
//! frequency, ties broken lexicographically on the multi-index.

use std::sync::OnceLock;

use crate::codec::blocks::{block_len, BLOCK_EDGE};

/// Flat (row-major) coefficient indices in scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagOrder {
    pub dimensionality: usize,
    pub order: Vec<usize>,
}

impl ZigzagOrder {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Multi-index of scan position `i`, most significant axis first.
    pub fn multi_index(&self, i: usize) -> Vec<usize> {
        multi_index(self.order[i], self.dimensionality)
    }
}

fn multi_index(mut flat: usize, d: usize) -> Vec<usize> {
    let mut idx = vec![0; d];
    for a in (0..d).rev() {
        idx[a] = flat % BLOCK_EDGE;
        flat /= BLOCK_EDGE;
    }
    idx
}

fn build(d: usize) -> ZigzagOrder {
    let mut order: Vec<usize> = (0..block_len(d)).collect();
    // Row-major flat index order is lexicographic order on the multi-index.
    order.sort_by_key(|&i| (multi_index(i, d).iter().sum::<usize>(), i));
    ZigzagOrder { dimensionality: d, order }
}

/// Cached scan order for `d` in 2..=4.
pub fn zigzag_order(d: usize) -> &'static ZigzagOrder {
    static ORDERS: [OnceLock<ZigzagOrder>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    assert!((2..=4).contains(&d), "dimensionality must be 2, 3 or 4");
    ORDERS[d - 2].get_or_init(|| build(d))
}
