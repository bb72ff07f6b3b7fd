//! Fixed Huffman tables from ITU-T T.81 Annex K (K.3 to K.6).
//!
//! The DC tables carry one extra symbol, size category 12, assigned the next
//! canonical code at the longest Annex K code length (`111111111` for luma,
//! `11111111111` for chroma).

use std::sync::OnceLock;

use crate::codec::bitio::BitReader;
use crate::codec::ChannelClass;
use crate::error::{Error, Result};

const DC_LUMA_BITS: [u8; 16] = [0, 1, 5, 1, 1, 1, 1, 1, 2, 0, 0, 0, 0, 0, 0, 0];
const DC_CHROMA_BITS: [u8; 16] = [0, 3, 1, 1, 1, 1, 1, 1, 1, 1, 2, 0, 0, 0, 0, 0];
const DC_VALUES: [u8; 13] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

const AC_LUMA_BITS: [u8; 16] = [0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7d];
const AC_LUMA_VALUES: [u8; 162] = [
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
    0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xa1, 0x08, 0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0,
    0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2a, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
    0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
    0x6a, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3, 0xa4, 0xa5, 0xa6, 0xa7,
    0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5,
    0xc6, 0xc7, 0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
    0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4, 0xf5, 0xf6, 0xf7, 0xf8,
    0xf9, 0xfa,
];

const AC_CHROMA_BITS: [u8; 16] = [0, 2, 1, 2, 4, 4, 3, 4, 7, 5, 4, 4, 0, 1, 2, 0x77];
const AC_CHROMA_VALUES: [u8; 162] = [
    0x00, 0x01, 0x02, 0x03, 0x11, 0x04, 0x05, 0x21, 0x31, 0x06, 0x12, 0x41, 0x51, 0x07, 0x61, 0x71,
    0x13, 0x22, 0x32, 0x81, 0x08, 0x14, 0x42, 0x91, 0xa1, 0xb1, 0xc1, 0x09, 0x23, 0x33, 0x52, 0xf0,
    0x15, 0x62, 0x72, 0xd1, 0x0a, 0x16, 0x24, 0x34, 0xe1, 0x25, 0xf1, 0x17, 0x18, 0x19, 0x1a, 0x26,
    0x27, 0x28, 0x29, 0x2a, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48,
    0x49, 0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68,
    0x69, 0x6a, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x82, 0x83, 0x84, 0x85, 0x86, 0x87,
    0x88, 0x89, 0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3, 0xa4, 0xa5,
    0xa6, 0xa7, 0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3,
    0xc4, 0xc5, 0xc6, 0xc7, 0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda,
    0xe2, 0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf2, 0xf3, 0xf4, 0xf5, 0xf6, 0xf7, 0xf8,
    0xf9, 0xfa,
];

/// End of block.
pub const EOB: u8 = 0x00;
/// Run of sixteen zeros.
pub const ZRL: u8 = 0xf0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Code {
    pub bits: u16,
    pub len: u8,
}

/// Canonical Huffman code built from a BITS/HUFFVAL pair.
#[derive(Debug)]
pub struct HuffmanTable {
    encode: [Option<Code>; 256],
    // Per code length 1..=16: smallest and largest code, and index of the
    // first symbol of that length in `values`.
    min_code: [i32; 17],
    max_code: [i32; 17],
    first_index: [usize; 17],
    values: Vec<u8>,
}

impl HuffmanTable {
    fn new(bits: &[u8; 16], values: &[u8]) -> Self {
        assert_eq!(bits.iter().map(|&b| usize::from(b)).sum::<usize>(), values.len());
        let mut table = HuffmanTable {
            encode: [None; 256],
            min_code: [0; 17],
            max_code: [-1; 17],
            first_index: [0; 17],
            values: values.to_vec(),
        };
        let mut code = 0i32;
        let mut k = 0;
        for len in 1..=16 {
            let count = usize::from(bits[len - 1]);
            table.first_index[len] = k;
            table.min_code[len] = code;
            for _ in 0..count {
                table.encode[usize::from(values[k])] =
                    Some(Code { bits: code as u16, len: len as u8 });
                code += 1;
                k += 1;
            }
            table.max_code[len] = if count > 0 { code - 1 } else { -1 };
            code <<= 1;
        }
        table
    }

    pub fn code(&self, symbol: u8) -> Option<Code> {
        self.encode[usize::from(symbol)]
    }

    pub fn decode(&self, reader: &mut BitReader<'_>) -> Result<u8> {
        let start = reader.position();
        let mut code = 0i32;
        for len in 1..=16 {
            code = (code << 1) | reader.read_bit()? as i32;
            if code <= self.max_code[len] {
                let idx = self.first_index[len] + (code - self.min_code[len]) as usize;
                return Ok(self.values[idx]);
            }
        }
        Err(Error::bitstream(start, "invalid Huffman prefix"))
    }
}

pub struct TableSet {
    pub dc: HuffmanTable,
    pub ac: HuffmanTable,
}

pub fn tables(class: ChannelClass) -> &'static TableSet {
    static LUMA: OnceLock<TableSet> = OnceLock::new();
    static CHROMA: OnceLock<TableSet> = OnceLock::new();
    match class {
        ChannelClass::Luma => LUMA.get_or_init(|| TableSet {
            dc: HuffmanTable::new(&DC_LUMA_BITS, &DC_VALUES),
            ac: HuffmanTable::new(&AC_LUMA_BITS, &AC_LUMA_VALUES),
        }),
        ChannelClass::Chroma => CHROMA.get_or_init(|| TableSet {
            dc: HuffmanTable::new(&DC_CHROMA_BITS, &DC_VALUES),
            ac: HuffmanTable::new(&AC_CHROMA_BITS, &AC_CHROMA_VALUES),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code_str(c: Code) -> String {
        format!("{:0w$b}", c.bits, w = usize::from(c.len))
    }

    #[test]
    fn annex_k_codes() {
        let l = tables(ChannelClass::Luma);
        assert_eq!(code_str(l.dc.code(0).unwrap()), "00");
        assert_eq!(code_str(l.dc.code(5).unwrap()), "110");
        assert_eq!(code_str(l.dc.code(11).unwrap()), "111111110");
        assert_eq!(code_str(l.dc.code(12).unwrap()), "111111111");
        assert_eq!(code_str(l.ac.code(EOB).unwrap()), "1010");
        assert_eq!(code_str(l.ac.code(ZRL).unwrap()), "11111111001");
        assert_eq!(code_str(l.ac.code(0x01).unwrap()), "00");
        assert_eq!(code_str(l.ac.code(0xfa).unwrap()), "1111111111111110");

        let c = tables(ChannelClass::Chroma);
        assert_eq!(code_str(c.dc.code(0).unwrap()), "00");
        assert_eq!(code_str(c.dc.code(11).unwrap()), "11111111110");
        assert_eq!(code_str(c.dc.code(12).unwrap()), "11111111111");
        assert_eq!(code_str(c.ac.code(EOB).unwrap()), "00");
        assert_eq!(code_str(c.ac.code(ZRL).unwrap()), "1111111010");
    }

    #[test]
    fn every_run_size_pair_present() {
        for class in [ChannelClass::Luma, ChannelClass::Chroma] {
            let t = tables(class);
            for run in 0..16u8 {
                for size in 1..=10u8 {
                    assert!(t.ac.code((run << 4) | size).is_some());
                }
            }
            for cat in 0..=12 {
                assert!(t.dc.code(cat).is_some());
            }
        }
    }
}
