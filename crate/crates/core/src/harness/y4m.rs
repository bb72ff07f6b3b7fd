//! YUV4MPEG2 pseudo-sequences: one 4:4:4 full-range BT.601 frame per view.

use crate::codec::color::convert_pixel;
use crate::codec::Direction;
use crate::error::{Error, Result};
use crate::field::{LightField, View};
use crate::harness::scan::{scan_sequence, ScanOrder};
use crate::scalar::to_u8;

pub const FRAME_RATE: &str = "25:1";

pub fn y4m_header(width: usize, height: usize) -> String {
    format!("YUV4MPEG2 W{width} H{height} F{FRAME_RATE} Ip A1:1 C444\n")
}

pub fn export_y4m(lf: &LightField, order: ScanOrder) -> Vec<u8> {
    let (w, h) = (lf.width(), lf.height());
    let n = w * h;
    let mut out = y4m_header(w, h).into_bytes();
    out.reserve(lf.views().len() * (6 + 3 * n));
    let mut planes = vec![0u8; 3 * n];
    for (row, col) in scan_sequence(lf.grid_rows(), lf.grid_cols(), order) {
        for (i, px) in lf.view(row, col).samples().chunks_exact(3).enumerate() {
            let ycc = convert_pixel([px[0], px[1], px[2]].map(f64::from), Direction::Forward);
            for (c, v) in ycc.into_iter().enumerate() {
                planes[c * n + i] = to_u8(v).expect("finite");
            }
        }
        out.extend_from_slice(b"FRAME\n");
        out.extend_from_slice(&planes);
    }
    out
}

fn line<'a>(bytes: &'a [u8], pos: &mut usize, field: &'static str) -> Result<&'a str> {
    let rest = &bytes[*pos..];
    let nl = rest
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::format(field, "missing newline"))?;
    *pos += nl + 1;
    std::str::from_utf8(&rest[..nl]).map_err(|_| Error::format(field, "not ASCII"))
}

/// Reads a stream written by [`export_y4m`] back into a `rows x cols` grid.
pub fn import_y4m(bytes: &[u8], rows: usize, cols: usize, order: ScanOrder) -> Result<LightField> {
    let mut pos = 0;
    let header = line(bytes, &mut pos, "header")?;
    let mut tokens = header.split(' ');
    if tokens.next() != Some("YUV4MPEG2") {
        return Err(Error::format("header", "expected YUV4MPEG2 signature"));
    }
    let (mut width, mut height, mut colour) = (None, None, None);
    for tok in tokens.filter(|t| !t.is_empty()) {
        let (tag, val) = tok.split_at(1);
        match tag {
            "W" => width = val.parse::<usize>().ok(),
            "H" => height = val.parse::<usize>().ok(),
            "C" => colour = Some(val.to_owned()),
            _ => {}
        }
    }
    let width = width.filter(|&w| w > 0).ok_or_else(|| Error::format("header", "bad or missing W"))?;
    let height = height.filter(|&h| h > 0).ok_or_else(|| Error::format("header", "bad or missing H"))?;
    // C defaults to 420jpeg when absent.
    if colour.as_deref() != Some("444") {
        return Err(Error::format(
            "header",
            format!("colour space {:?} is not C444", colour.unwrap_or_else(|| "420jpeg".into())),
        ));
    }
    let n = width * height;
    let mut frames = Vec::new();
    while pos < bytes.len() {
        let tag = line(bytes, &mut pos, "frame")?;
        if tag.split(' ').next() != Some("FRAME") {
            return Err(Error::format("frame", format!("expected FRAME, got {tag:?}")));
        }
        let data = bytes
            .get(pos..pos + 3 * n)
            .ok_or_else(|| Error::format("frame", format!("frame {} truncated", frames.len())))?;
        pos += 3 * n;
        let mut samples = Vec::with_capacity(3 * n);
        for i in 0..n {
            let ycc = [data[i], data[n + i], data[2 * n + i]].map(f64::from);
            let rgb = convert_pixel(ycc, Direction::Inverse);
            samples.extend(rgb.map(|v| to_u8(v).expect("finite")));
        }
        frames.push(View::new(width, height, samples)?);
    }
    if frames.len() != rows * cols {
        return Err(Error::format(
            "frame",
            format!("{} frames for a {rows}x{cols} grid", frames.len()),
        ));
    }
    let mut slots: Vec<Option<View>> = vec![None; rows * cols];
    for ((r, c), view) in scan_sequence(rows, cols, order).into_iter().zip(frames) {
        slots[r * cols + c] = Some(view);
    }
    let views = slots.into_iter().map(|v| v.expect("scan covers grid")).collect();
    LightField::new(rows, cols, views, 0.0, 0.0)
}
