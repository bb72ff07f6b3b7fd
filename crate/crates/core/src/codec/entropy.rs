//! Baseline-JPEG style entropy coding of quantized blocks.
//!
//! DC coefficients are coded as the difference from the previous block's DC
//! (0 before the first block): a Huffman-coded size category followed by that
//! many magnitude bits. AC coefficients follow in scan order as
//! `(zero run, size)` symbols plus magnitude bits, with ZRL for sixteen zeros.
//! Every block ends with EOB, including blocks whose last coefficient is non-zero.

use crate::codec::bitio::{BitReader, BitWriter};
use crate::codec::huffman::{tables, HuffmanTable, EOB, ZRL};
use crate::codec::zigzag::ZigzagOrder;
use crate::codec::ChannelClass;
use crate::error::{Error, Result};

const MAX_DC_CATEGORY: u32 = 12;
const MAX_AC_CATEGORY: u32 = 10;

/// Entropy-coded blocks of one channel.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Payload {
    pub bytes: Vec<u8>,
    pub bit_len: u64,
}

/// Number of magnitude bits needed for `v`; 0 for 0.
pub fn size_category(v: i32) -> u32 {
    32 - v.unsigned_abs().leading_zeros()
}

/// Magnitude bits: `v` itself when positive, one's complement of `|v|` when negative.
fn magnitude_bits(v: i32, size: u32) -> u32 {
    if v >= 0 {
        v as u32
    } else {
        (v - 1) as u32 & ((1u32 << size) - 1)
    }
}

fn extend(bits: u32, size: u32) -> i32 {
    if size == 0 {
        0
    } else if bits >> (size - 1) == 1 {
        bits as i32
    } else {
        bits as i32 - ((1i32 << size) - 1)
    }
}

fn put(w: &mut BitWriter, table: &HuffmanTable, symbol: u8) -> Result<()> {
    let code = table
        .code(symbol)
        .ok_or_else(|| Error::Param(format!("symbol {symbol:#04x} has no code")))?;
    w.write(u32::from(code.bits), u32::from(code.len));
    Ok(())
}

pub fn entropy_encode(
    blocks: &[Vec<i32>],
    order: &ZigzagOrder,
    class: ChannelClass,
) -> Result<Payload> {
    let t = tables(class);
    let mut w = BitWriter::new();
    let mut prev_dc = 0i32;
    for (b, block) in blocks.iter().enumerate() {
        if block.len() != order.len() {
            return Err(Error::Shape(format!(
                "block {b} has {} coefficients, scan order has {}",
                block.len(),
                order.len()
            )));
        }
        let diff = block[0] - prev_dc;
        prev_dc = block[0];
        let size = size_category(diff);
        if size > MAX_DC_CATEGORY {
            return Err(Error::Param(format!("block {b}: DC difference {diff} is not codable")));
        }
        put(&mut w, &t.dc, size as u8)?;
        w.write(magnitude_bits(diff, size), size);

        let mut run = 0u32;
        for &idx in &order.order[1..] {
            let v = block[idx];
            if v == 0 {
                run += 1;
                continue;
            }
            while run > 15 {
                put(&mut w, &t.ac, ZRL)?;
                run -= 16;
            }
            let size = size_category(v);
            if size > MAX_AC_CATEGORY {
                return Err(Error::Param(format!("block {b}: AC value {v} is not codable")));
            }
            put(&mut w, &t.ac, ((run << 4) | size) as u8)?;
            w.write(magnitude_bits(v, size), size);
            run = 0;
        }
        put(&mut w, &t.ac, EOB)?;
    }
    let (bytes, bit_len) = w.finish();
    Ok(Payload { bytes, bit_len })
}

pub fn entropy_decode(
    payload: &Payload,
    block_count: usize,
    order: &ZigzagOrder,
    class: ChannelClass,
) -> Result<Vec<Vec<i32>>> {
    let t = tables(class);
    let n = order.len();
    let mut r = BitReader::new(&payload.bytes, payload.bit_len);
    let mut prev_dc = 0i32;
    let mut blocks = Vec::with_capacity(block_count);
    for _ in 0..block_count {
        let mut block = vec![0i32; n];
        let at = r.position();
        let size = u32::from(t.dc.decode(&mut r)?);
        if size > MAX_DC_CATEGORY {
            return Err(Error::bitstream(at, format!("DC size category {size}")));
        }
        prev_dc += extend(r.read_bits(size)?, size);
        block[0] = prev_dc;

        let mut k = 1;
        loop {
            let at = r.position();
            let symbol = t.ac.decode(&mut r)?;
            if symbol == EOB {
                break;
            }
            if k >= n {
                return Err(Error::bitstream(at, "missing EOB after last coefficient"));
            }
            if symbol == ZRL {
                k += 16;
                if k >= n {
                    return Err(Error::bitstream(at, "zero run past block end"));
                }
                continue;
            }
            let run = usize::from(symbol >> 4);
            let size = u32::from(symbol & 0x0f);
            k += run;
            if k >= n {
                return Err(Error::bitstream(at, "zero run past block end"));
            }
            block[order.order[k]] = extend(r.read_bits(size)?, size);
            k += 1;
        }
        blocks.push(block);
    }
    if r.remaining() != 0 {
        return Err(Error::bitstream(
            r.position(),
            format!("{} trailing bits after last block", r.remaining()),
        ));
    }
    Ok(blocks)
}
