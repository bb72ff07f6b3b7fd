//! View orderings for pseudo-sequence export.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ScanOrder {
    #[default]
    Raster,
    Spiral,
}

impl FromStr for ScanOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raster" => Ok(ScanOrder::Raster),
            "spiral" => Ok(ScanOrder::Spiral),
            _ => Err(format!("unknown scan order {s:?} (expected raster or spiral)")),
        }
    }
}

impl fmt::Display for ScanOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanOrder::Raster => "raster",
            ScanOrder::Spiral => "spiral",
        })
    }
}

/// Grid positions `(row, col)` in visiting order.
///
/// The spiral starts at the central view (rounding towards the top-left on
/// even grids), steps right, then down, left, up, with arm lengths
/// 1, 1, 2, 2, 3, 3, ...; positions outside the grid are skipped.
pub fn scan_sequence(rows: usize, cols: usize, order: ScanOrder) -> Vec<(usize, usize)> {
    let total = rows * cols;
    match order {
        ScanOrder::Raster => (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).collect(),
        ScanOrder::Spiral => {
            const STEPS: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];
            let mut out = Vec::with_capacity(total);
            if total == 0 {
                return out;
            }
            let (mut r, mut c) = (((rows - 1) / 2) as i64, ((cols - 1) / 2) as i64);
            out.push((r as usize, c as usize));
            let mut arm = 1;
            let mut dir = 0;
            while out.len() < total {
                for _ in 0..2 {
                    let (dr, dc) = STEPS[dir % 4];
                    for _ in 0..arm {
                        r += dr;
                        c += dc;
                        if (0..rows as i64).contains(&r) && (0..cols as i64).contains(&c) {
                            out.push((r as usize, c as usize));
                        }
                    }
                    dir += 1;
                }
                arm += 1;
            }
            out
        }
    }
}
