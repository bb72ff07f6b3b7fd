//! MSB-first bit packing.

use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    acc: u64,
    pending: u32,
    total: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the low `len` bits of `bits`, most significant first.
    pub fn write(&mut self, bits: u32, len: u32) {
        debug_assert!(len <= 32);
        if len == 0 {
            return;
        }
        let masked = u64::from(bits) & ((1u64 << len) - 1);
        self.acc = (self.acc << len) | masked;
        self.pending += len;
        self.total += u64::from(len);
        while self.pending >= 8 {
            self.pending -= 8;
            self.bytes.push((self.acc >> self.pending) as u8);
        }
        self.acc &= (1u64 << self.pending) - 1;
    }

    pub fn bit_len(&self) -> u64 {
        self.total
    }

    /// Pads the final byte with 1-bits; returns the bytes and the unpadded bit length.
    pub fn finish(mut self) -> (Vec<u8>, u64) {
        if self.pending > 0 {
            let pad = 8 - self.pending;
            let byte = (self.acc << pad) | ((1u64 << pad) - 1);
            self.bytes.push(byte as u8);
        }
        (self.bytes, self.total)
    }
}

#[derive(Debug)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
    limit: u64,
}

impl<'a> BitReader<'a> {
    /// Reads at most `bit_len` bits from `bytes`.
    pub fn new(bytes: &'a [u8], bit_len: u64) -> Self {
        BitReader { bytes, pos: 0, limit: bit_len.min(bytes.len() as u64 * 8) }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.pos
    }

    pub fn read_bit(&mut self) -> Result<u32> {
        if self.pos >= self.limit {
            return Err(Error::bitstream(self.pos, "unexpected end of payload"));
        }
        let byte = self.bytes[(self.pos / 8) as usize];
        let bit = (byte >> (7 - (self.pos % 8))) & 1;
        self.pos += 1;
        Ok(u32::from(bit))
    }

    pub fn read_bits(&mut self, len: u32) -> Result<u32> {
        if u64::from(len) > self.remaining() {
            return Err(Error::bitstream(self.pos, "unexpected end of payload"));
        }
        let mut v = 0;
        for _ in 0..len {
            v = (v << 1) | self.read_bit()?;
        }
        Ok(v)
    }
}
