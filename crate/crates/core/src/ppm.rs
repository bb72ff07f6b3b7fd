//! Binary PPM (P6, maxval 255).

use crate::error::{Error, Result};
use crate::field::View;

/// Parses a P6 image. Header tokens may be separated by any whitespace and
/// `#` comments; exactly one whitespace byte separates maxval from the raster.
pub fn read_ppm(bytes: &[u8]) -> Result<View> {
    if bytes.len() < 2 || &bytes[..2] != b"P6" {
        return Err(Error::format("magic", "expected \"P6\""));
    }
    let mut pos = 2;
    let width = header_token(bytes, &mut pos, "width")?;
    let height = header_token(bytes, &mut pos, "height")?;
    let maxval = header_token(bytes, &mut pos, "maxval")?;
    if maxval != 255 {
        return Err(Error::format("maxval", format!("only 255 is supported, got {maxval}")));
    }
    if width == 0 || height == 0 {
        return Err(Error::format("width", format!("degenerate size {width}x{height}")));
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::format("maxval", "missing whitespace before raster")),
    }
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| Error::format("width", "image size overflows"))?;
    let raster = &bytes[pos..];
    if raster.len() < need {
        return Err(Error::format(
            "raster",
            format!("truncated: need {need} bytes, have {}", raster.len()),
        ));
    }
    View::new(width, height, raster[..need].to_vec())
}

pub fn write_ppm(view: &View) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", view.width(), view.height());
    let mut out = Vec::with_capacity(header.len() + view.samples().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(view.samples());
    out
}

fn header_token(bytes: &[u8], pos: &mut usize, field: &'static str) -> Result<usize> {
    let mut saw_separator = false;
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while let Some(&b) = bytes.get(*pos) {
                    *pos += 1;
                    if b == b'\n' || b == b'\r' {
                        break;
                    }
                }
                saw_separator = true;
            }
            Some(b) if b.is_ascii_whitespace() => {
                *pos += 1;
                saw_separator = true;
            }
            Some(_) => break,
            None => return Err(Error::format(field, "unexpected end of header")),
        }
    }
    if !saw_separator {
        return Err(Error::format(field, "missing separator"));
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::format(field, "expected a decimal integer"));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::format(field, "integer out of range"))
}
