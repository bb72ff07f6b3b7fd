//! JPEG-style lossy codec for light fields in 2, 3 or 4 dimensions.
//!
//! The same pipeline runs in every mode; only the array handed to the block
//! partitioner changes:
//!
//! * 2D: each view is coded as an independent `height x width` image,
//! * 3D: views are stacked in row-major grid order into a `(K*L) x height x width` volume,
//! * 4D: the native `K x L x height x width` array.
//!
//! Colour is converted to YCbCr without subsampling and level shifted by -128
//! before the transform. The container layout is described in `docs/bitstream.md`.

pub mod bitio;
pub mod blocks;
pub mod color;
pub mod dct;
pub mod entropy;
pub mod huffman;
pub mod quant;
pub mod zigzag;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Dims, LightField, Planar};
use crate::scalar::Real;

use self::blocks::{block_grid, pad_and_partition, reassemble, BLOCK_EDGE};
use self::color::color_transform;
use self::dct::dct_in_place;
use self::entropy::{entropy_decode, entropy_encode, Payload};
use self::quant::{build_quant_table, dequantize, quantize, QuantTable};
use self::zigzag::zigzag_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelClass {
    Luma,
    Chroma,
}

impl ChannelClass {
    /// Y uses luma tables, Cb and Cr chroma tables.
    pub fn of_channel(c: usize) -> Self {
        if c == 0 {
            ChannelClass::Luma
        } else {
            ChannelClass::Chroma
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodecConfig {
    dimensionality: u8,
    quality: u8,
}

impl CodecConfig {
    pub fn new(dimensionality: u8, quality: u8) -> Result<Self> {
        if !(2..=4).contains(&dimensionality) {
            return Err(Error::Param(format!("dimensionality must be 2, 3 or 4, got {dimensionality}")));
        }
        if !(1..=100).contains(&quality) {
            return Err(Error::Param(format!("quality must be in 1..=100, got {quality}")));
        }
        Ok(CodecConfig { dimensionality, quality })
    }

    pub fn dimensionality(&self) -> u8 {
        self.dimensionality
    }

    pub fn quality(&self) -> u8 {
        self.quality
    }

    pub fn block_edge(&self) -> usize {
        BLOCK_EDGE
    }
}

pub const MAGIC: &[u8; 4] = b"LFJ1";
pub const VERSION: u8 = 1;
/// Bytes before the first channel payload.
pub const HEADER_LEN: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub config: CodecConfig,
    pub grid_rows: u16,
    pub grid_cols: u16,
    pub width: u16,
    pub height: u16,
}

impl Header {
    pub fn dims(&self) -> Dims {
        Dims {
            grid_rows: usize::from(self.grid_rows),
            grid_cols: usize::from(self.grid_cols),
            height: usize::from(self.height),
            width: usize::from(self.width),
        }
    }
}

/// Header plus one entropy-coded payload per Y, Cb, Cr channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedStream {
    pub header: Header,
    pub channels: [Payload; 3],
}

impl EncodedStream {
    /// Serialized size in bytes.
    pub fn byte_len(&self) -> usize {
        HEADER_LEN + self.channels.iter().map(|p| 4 + p.bytes.len()).sum::<usize>()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let h = &self.header;
        let mut out = Vec::with_capacity(self.byte_len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&[
            VERSION,
            h.config.dimensionality,
            h.config.quality,
            BLOCK_EDGE as u8,
            0, // 4:4:4
            0, // reserved
        ]);
        for v in [h.grid_rows, h.grid_cols, h.width, h.height] {
            out.extend_from_slice(&v.to_be_bytes());
        }
        for p in &self.channels {
            out.extend_from_slice(&(p.bit_len as u32).to_be_bytes());
            out.extend_from_slice(&p.bytes);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |byte: usize, reason: String| Error::bitstream(byte as u64 * 8, reason);
        if bytes.len() < HEADER_LEN {
            return Err(bad(bytes.len(), format!("header needs {HEADER_LEN} bytes")));
        }
        if &bytes[..4] != MAGIC {
            return Err(bad(0, "bad magic, expected LFJ1".into()));
        }
        if bytes[4] != VERSION {
            return Err(bad(4, format!("unsupported version {}", bytes[4])));
        }
        let config = CodecConfig::new(bytes[5], bytes[6]).map_err(|e| bad(5, e.to_string()))?;
        if usize::from(bytes[7]) != BLOCK_EDGE {
            return Err(bad(7, format!("unsupported block edge {}", bytes[7])));
        }
        if bytes[8] != 0 {
            return Err(bad(8, format!("unsupported chroma mode {}", bytes[8])));
        }
        if bytes[9] != 0 {
            return Err(bad(9, "reserved byte is not zero".into()));
        }
        let u16_at = |i: usize| u16::from_be_bytes([bytes[i], bytes[i + 1]]);
        let header = Header {
            config,
            grid_rows: u16_at(10),
            grid_cols: u16_at(12),
            width: u16_at(14),
            height: u16_at(16),
        };
        if header.dims().is_empty() {
            return Err(bad(10, "zero dimension in header".into()));
        }
        let mut pos = HEADER_LEN;
        let mut channels: [Payload; 3] = Default::default();
        for (c, slot) in channels.iter_mut().enumerate() {
            let len_bytes = bytes
                .get(pos..pos + 4)
                .ok_or_else(|| bad(pos, format!("channel {c}: missing payload length")))?;
            let bit_len = u64::from(u32::from_be_bytes(len_bytes.try_into().unwrap()));
            pos += 4;
            let n = bit_len.div_ceil(8) as usize;
            let payload = bytes
                .get(pos..pos + n)
                .ok_or_else(|| bad(pos, format!("channel {c}: payload truncated")))?;
            *slot = Payload { bytes: payload.to_vec(), bit_len };
            pos += n;
        }
        if pos != bytes.len() {
            return Err(bad(pos, format!("{} trailing bytes", bytes.len() - pos)));
        }
        Ok(EncodedStream { header, channels })
    }
}

/// Shapes of the arrays one channel is split into for dimensionality `d`.
pub fn channel_shapes(d: u8, dims: Dims) -> Vec<Vec<usize>> {
    let Dims { grid_rows: k, grid_cols: l, height: h, width: w } = dims;
    match d {
        2 => vec![vec![h, w]; k * l],
        3 => vec![vec![k * l, h, w]],
        _ => vec![vec![k, l, h, w]],
    }
}

/// Blocks per channel for dimensionality `d`.
pub fn block_count(d: u8, dims: Dims) -> usize {
    channel_shapes(d, dims).iter().map(|s| block_grid(s).iter().product::<usize>()).sum()
}

fn forward_channel<T: Real>(
    plane: &[T],
    shapes: &[Vec<usize>],
    d: usize,
    table: &QuantTable,
) -> Vec<Vec<i32>> {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for shape in shapes {
        let n: usize = shape.iter().product();
        blocks.extend(pad_and_partition(&plane[offset..offset + n], shape));
        offset += n;
    }
    blocks
        .into_par_iter()
        .map(|mut b| {
            dct_in_place(&mut b, d, Direction::Forward).expect("partitioned blocks have 8^d samples");
            quantize(&b, table)
        })
        .collect()
}

fn inverse_channel<T: Real>(
    coefs: &[Vec<i32>],
    shapes: &[Vec<usize>],
    d: usize,
    table: &QuantTable,
) -> Vec<T> {
    let blocks: Vec<Vec<T>> = coefs
        .par_iter()
        .map(|q| {
            let mut b = dequantize::<T>(q, table);
            dct_in_place(&mut b, d, Direction::Inverse).expect("decoded blocks have 8^d samples");
            b
        })
        .collect();
    let mut plane = Vec::new();
    let mut next = 0;
    for shape in shapes {
        let nb: usize = block_grid(shape).iter().product();
        plane.extend(reassemble(&blocks[next..next + nb], shape));
        next += nb;
    }
    plane
}

fn dim_u16(v: usize, what: &str) -> Result<u16> {
    u16::try_from(v).map_err(|_| Error::Param(format!("{what} {v} exceeds 65535")))
}

/// Encodes with samples held in scalar type `T`.
pub fn encode_with<T: Real>(lf: &LightField, cfg: CodecConfig) -> Result<EncodedStream> {
    let header = Header {
        config: cfg,
        grid_rows: dim_u16(lf.grid_rows(), "grid_rows")?,
        grid_cols: dim_u16(lf.grid_cols(), "grid_cols")?,
        width: dim_u16(lf.width(), "width")?,
        height: dim_u16(lf.height(), "height")?,
    };
    let d = usize::from(cfg.dimensionality);
    let ycc = color_transform(&lf.to_planar::<T>(), Direction::Forward)
        .map(|v| v - T::of(128.0));
    let shapes = channel_shapes(cfg.dimensionality, ycc.dims());
    let order = zigzag_order(d);
    let payloads = (0..3)
        .into_par_iter()
        .map(|c| {
            let class = ChannelClass::of_channel(c);
            let table = build_quant_table(d, cfg.quality, class);
            let coefs = forward_channel(ycc.plane(c), &shapes, d, &table);
            entropy_encode(&coefs, order, class)
        })
        .collect::<Result<Vec<_>>>()?;
    let channels: [Payload; 3] = payloads.try_into().expect("three channels");
    if let Some(p) = channels.iter().find(|p| p.bit_len > u64::from(u32::MAX)) {
        return Err(Error::Param(format!("payload of {} bits exceeds u32 length field", p.bit_len)));
    }
    Ok(EncodedStream { header, channels })
}

/// Decodes with samples held in scalar type `T`. The result carries no
/// disparity metadata (the range is `0..0`).
pub fn decode_with<T: Real>(stream: &EncodedStream) -> Result<LightField> {
    let cfg = stream.header.config;
    let d = usize::from(cfg.dimensionality);
    let dims = stream.header.dims();
    let shapes = channel_shapes(cfg.dimensionality, dims);
    let nblocks = block_count(cfg.dimensionality, dims);
    let order = zigzag_order(d);
    let planes = (0..3)
        .into_par_iter()
        .map(|c| {
            let class = ChannelClass::of_channel(c);
            let table = build_quant_table(d, cfg.quality, class);
            let coefs = entropy_decode(&stream.channels[c], nblocks, order, class)?;
            Ok(inverse_channel::<T>(&coefs, &shapes, d, &table))
        })
        .collect::<Result<Vec<_>>>()?;
    let planes: [Vec<T>; 3] = planes.try_into().expect("three channels");
    let ycc = Planar::new(dims, planes)?.map(|v| v + T::of(128.0));
    LightField::from_planar(&color_transform(&ycc, Direction::Inverse))
}

pub fn encode(lf: &LightField, cfg: CodecConfig) -> Result<EncodedStream> {
    encode_with::<f64>(lf, cfg)
}

pub fn decode(stream: &EncodedStream) -> Result<LightField> {
    decode_with::<f64>(stream)
}

/// Container size in bits, header included, per light-field pixel.
pub fn bits_per_pixel(stream: &EncodedStream, dims: Dims) -> f64 {
    bits_per_pixel_for_len(stream.byte_len(), dims)
}

pub fn bits_per_pixel_for_len(byte_len: usize, dims: Dims) -> f64 {
    (byte_len * 8) as f64 / dims.len() as f64
}
