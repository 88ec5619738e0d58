//! The 9x9x9 symbol cube and the byte <-> symbol-triple codec built on it.
//!
//! The cube is an extended Polybius square in three dimensions. Each cell
//! `(x, y, z)` holds a pair of symbols drawn from the 81-character ASCII run
//! `'*'..='z'` (codes 42 through 122):
//!
//! ```text
//! cell(x, y, z) = (42 + 9x + y, 42 + 9y + z)
//! ```
//!
//! so `arr[0][0][0] = **`, `arr[0][3][0] = -E` and `arr[8][8][8] = zz`.
//!
//! A byte is encoded as a triple `(row digit, column digit, depth symbol)`.
//! The row and column locate the byte's symbol on the cube face; the depth
//! symbol is the second half of the cell at depth `z = (p + q) mod 9`, where
//! `p` is the byte's position in its block and `q` folds the bytes that fall
//! outside the printable alphabet back onto it. The depth symbol repeats the
//! column coordinate, which the decoder checks.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const CUBE_DIM: usize = 9;
/// First code of the cube alphabet, `'*'`.
pub const ALPHABET_BASE: u8 = 42;
/// Number of symbols in the cube alphabet.
pub const ALPHABET_LEN: u8 = 81;

pub const PLAIN_BLOCK_BYTES: usize = 31;
pub const EXPANDED_BLOCK_BYTES: usize = 93;

/// One cell of the cube: two symbol codes in `42..=122`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymbolPair {
    pub first: u8,
    pub second: u8,
}

impl SymbolPair {
    pub fn as_str(&self) -> String {
        [self.first as char, self.second as char].iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeMatrix {
    cells: Box<[[[SymbolPair; CUBE_DIM]; CUBE_DIM]; CUBE_DIM]>,
}

impl CubeMatrix {
    pub fn build() -> Self {
        let mut cells = Box::new(
            [[[SymbolPair { first: 0, second: 0 }; CUBE_DIM]; CUBE_DIM]; CUBE_DIM],
        );
        for (x, plane) in cells.iter_mut().enumerate() {
            for (y, line) in plane.iter_mut().enumerate() {
                for (z, cell) in line.iter_mut().enumerate() {
                    *cell = SymbolPair {
                        first: ALPHABET_BASE + (9 * x + y) as u8,
                        second: ALPHABET_BASE + (9 * y + z) as u8,
                    };
                }
            }
        }
        CubeMatrix { cells }
    }

    /// Panics if any coordinate is 9 or more.
    pub fn cell(&self, x: usize, y: usize, z: usize) -> SymbolPair {
        self.cells[x][y][z]
    }

    /// Text dump, one `arr[x][y][z] = <pair>` record per line after a title
    /// line. Records run in x, y, z order.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(20 * 730);
        out.push_str("The 3D Key Generating Matrix...\n");
        for x in 0..CUBE_DIM {
            for y in 0..CUBE_DIM {
                for z in 0..CUBE_DIM {
                    let _ = writeln!(out, "arr[{x}][{y}][{z}] = {}", self.cell(x, y, z).as_str());
                }
            }
        }
        out
    }

    /// Rebuilds a cube from [`CubeMatrix::dump`] output. Lines that are not
    /// `arr[..]` records are skipped; every one of the 729 cells must appear.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut cells = Box::new(
            [[[SymbolPair { first: 0, second: 0 }; CUBE_DIM]; CUBE_DIM]; CUBE_DIM],
        );
        let mut seen = vec![false; CUBE_DIM * CUBE_DIM * CUBE_DIM];
        for line in text.lines() {
            let Some(rest) = line.trim_start().strip_prefix("arr[") else {
                continue;
            };
            let bad = || Error::Format(format!("bad cube record: {line:?}"));
            let (coords, pair) = rest.split_once(" = ").ok_or_else(bad)?;
            let coords: Vec<usize> = coords
                .trim_end_matches(']')
                .split("][")
                .map(|c| c.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            let pair = pair.as_bytes();
            if coords.len() != 3 || coords.iter().any(|&c| c >= CUBE_DIM) || pair.len() != 2 {
                return Err(bad());
            }
            let (x, y, z) = (coords[0], coords[1], coords[2]);
            cells[x][y][z] = SymbolPair { first: pair[0], second: pair[1] };
            seen[(x * CUBE_DIM + y) * CUBE_DIM + z] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Format(format!("cube dump lacks cell #{missing}")));
        }
        Ok(CubeMatrix { cells })
    }
}

impl Default for CubeMatrix {
    fn default() -> Self {
        Self::build()
    }
}

/// Encoded form of one byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymbolTriple {
    /// `'0'..='8'`
    pub row_digit: u8,
    /// `'0'..='8'`
    pub col_digit: u8,
    /// `42..=122`
    pub depth_symbol: u8,
}

impl SymbolTriple {
    pub fn to_bytes(self) -> [u8; 3] {
        [self.row_digit, self.col_digit, self.depth_symbol]
    }

    pub fn from_bytes(b: [u8; 3]) -> Self {
        SymbolTriple { row_digit: b[0], col_digit: b[1], depth_symbol: b[2] }
    }
}

pub fn encode_byte(b: u8, position: usize) -> SymbolTriple {
    let v = b.wrapping_sub(ALPHABET_BASE);
    let i = v % ALPHABET_LEN;
    let q = v / ALPHABET_LEN;
    let (x, y) = (i / 9, i % 9);
    let z = ((position % 9) as u8 + q) % 9;
    SymbolTriple {
        row_digit: b'0' + x,
        col_digit: b'0' + y,
        depth_symbol: ALPHABET_BASE + 9 * y + z,
    }
}

pub fn decode_triple(t: SymbolTriple, position: usize) -> Result<u8> {
    let digit = |c: u8| (b'0'..=b'8').contains(&c).then(|| c - b'0');
    let x = digit(t.row_digit).ok_or_else(|| {
        Error::Range(format!("row digit {:#04x} outside '0'..'8'", t.row_digit))
    })?;
    if !(ALPHABET_BASE..ALPHABET_BASE + ALPHABET_LEN).contains(&t.depth_symbol) {
        return Err(Error::Range(format!(
            "depth symbol {:#04x} outside the cube alphabet",
            t.depth_symbol
        )));
    }
    let m = t.depth_symbol - ALPHABET_BASE;
    let (y_depth, z) = (m / 9, m % 9);
    let y = match digit(t.col_digit) {
        Some(y) if y == y_depth => y,
        _ => {
            return Err(Error::Integrity(format!(
                "column digit {:#04x} disagrees with depth symbol {:?}",
                t.col_digit, t.depth_symbol as char
            )))
        }
    };
    let q = (z + 9 - (position % 9) as u8) % 9;
    let v = 81 * u16::from(q) + 9 * u16::from(x) + u16::from(y);
    // q = 3 only covers v = 243..=255; anything above is not an encoder output
    if v > 255 {
        return Err(Error::Range(format!(
            "depth {z} is not valid for position {position} with cell ({x},{y})"
        )));
    }
    Ok((v as u8).wrapping_add(ALPHABET_BASE))
}

/// Expands 31 bytes into 31 triples (93 bytes); byte `p` is encoded at
/// position `p`.
pub fn encode_block(input: &[u8]) -> Result<[u8; EXPANDED_BLOCK_BYTES]> {
    if input.len() != PLAIN_BLOCK_BYTES {
        return Err(Error::length(PLAIN_BLOCK_BYTES, input.len()));
    }
    let mut out = [0u8; EXPANDED_BLOCK_BYTES];
    for (p, (&b, dst)) in input.iter().zip(out.chunks_exact_mut(3)).enumerate() {
        dst.copy_from_slice(&encode_byte(b, p).to_bytes());
    }
    Ok(out)
}

pub fn decode_block(input: &[u8]) -> Result<[u8; PLAIN_BLOCK_BYTES]> {
    if input.len() != EXPANDED_BLOCK_BYTES {
        return Err(Error::length(EXPANDED_BLOCK_BYTES, input.len()));
    }
    let mut out = [0u8; PLAIN_BLOCK_BYTES];
    for (p, (src, dst)) in input.chunks_exact(3).zip(out.iter_mut()).enumerate() {
        let t = SymbolTriple::from_bytes([src[0], src[1], src[2]]);
        *dst = decode_triple(t, p).map_err(|e| match e {
            Error::Integrity(m) => Error::Integrity(format!("triple {p}: {m}")),
            Error::Range(m) => Error::Range(format!("triple {p}: {m}")),
            other => other,
        })?;
    }
    Ok(out)
}
