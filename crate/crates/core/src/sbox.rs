//! Dynamic three-dimensional S-box over 12-bit nibble triples.
//!
//! An input `(a, b, c)` indexes the x, y and z axes of a 16x16x16 table. The
//! output keeps the y and z inputs as its first two nibbles and writes a
//! depth value that mixes `a` and `c` with the D offset 8 and the rotation
//! `R`:
//!
//! ```text
//! S_R(a, b, c) = (b, c, (a + c + 8 + R) mod 16)
//! ```
//!
//! Rotating the box relabels the z-output layer by one step per unit, so
//! `rotate(build(0), n) == build(n mod 16)`. Forward and inverse tables are
//! both materialized; a unit rotation moves every entry of both.

use crate::cube::EXPANDED_BLOCK_BYTES;
use crate::error::{Error, Result};

pub const SBOX_SIZE: usize = 4096;
pub const ROTATIONS: u8 = 16;
/// Where the D sequence starts: the (16/2 + 1)th hexadecimal digit.
const D_OFFSET: u8 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NibbleTriple {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

impl NibbleTriple {
    /// Panics if any component exceeds 15.
    pub fn new(a: u8, b: u8, c: u8) -> Self {
        assert!(a < 16 && b < 16 && c < 16, "nibble out of range");
        NibbleTriple { a, b, c }
    }

    pub fn from_index(i: u16) -> Self {
        NibbleTriple { a: ((i >> 8) & 15) as u8, b: ((i >> 4) & 15) as u8, c: (i & 15) as u8 }
    }

    pub fn index(self) -> u16 {
        (u16::from(self.a) << 8) | (u16::from(self.b) << 4) | u16::from(self.c)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SBox3D {
    rotation: u8,
    forward: Box<[u16; SBOX_SIZE]>,
    inverse: Box<[u16; SBOX_SIZE]>,
}

impl std::fmt::Debug for SBox3D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SBox3D").field("rotation", &self.rotation).finish_non_exhaustive()
    }
}

impl SBox3D {
    pub fn build(rotation: u8) -> Result<Self> {
        if rotation >= ROTATIONS {
            return Err(Error::Range(format!("S-box rotation {rotation} not in 0..16")));
        }
        let mut forward = Box::new([0u16; SBOX_SIZE]);
        let mut inverse = Box::new([0u16; SBOX_SIZE]);
        for i in 0..SBOX_SIZE as u16 {
            let t = NibbleTriple::from_index(i);
            let y3 = (t.a + t.c + D_OFFSET + rotation) & 15;
            let out = NibbleTriple { a: t.b, b: t.c, c: y3 }.index();
            forward[i as usize] = out;
            inverse[out as usize] = i;
        }
        Ok(SBox3D { rotation, forward, inverse })
    }

    pub fn rotation(&self) -> u8 {
        self.rotation
    }

    pub fn substitute(&self, t: NibbleTriple) -> NibbleTriple {
        NibbleTriple::from_index(self.forward[t.index() as usize])
    }

    pub fn invert(&self, t: NibbleTriple) -> NibbleTriple {
        NibbleTriple::from_index(self.inverse[t.index() as usize])
    }

    #[inline]
    pub fn forward_index(&self, i: u16) -> u16 {
        self.forward[i as usize]
    }

    #[inline]
    pub fn inverse_index(&self, i: u16) -> u16 {
        self.inverse[i as usize]
    }

    /// Applies `count` unit rotations in place. Each unit walks both tables,
    /// so the cost is linear in `count`; sixteen units return to the start.
    pub fn rotate_in_place(&mut self, count: usize) {
        for _ in 0..count {
            for out in self.forward.iter_mut() {
                *out = (*out & 0xFF0) | ((*out + 1) & 15);
            }
            // the inverse is keyed by output, so each z-run shifts up one slot
            for run in self.inverse.chunks_exact_mut(16) {
                run.rotate_right(1);
            }
            self.rotation = (self.rotation + 1) % ROTATIONS;
        }
    }

    pub fn rotate(&self, count: usize) -> Self {
        let mut out = self.clone();
        out.rotate_in_place(count);
        out
    }

    /// One line per input, `S[a][b][c] = Y1Y2Y3` with hex nibbles.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(SBOX_SIZE * 20);
        for i in 0..SBOX_SIZE as u16 {
            let t = NibbleTriple::from_index(i);
            let y = NibbleTriple::from_index(self.forward[i as usize]);
            out.push_str(&format!(
                "S[{:X}][{:X}][{:X}] = {:X}{:X}{:X}\n",
                t.a, t.b, t.c, y.a, y.b, y.c
            ));
        }
        out
    }

    /// Substitutes all 62 nibble triples of a 93-byte state in place.
    /// Nibbles are read high-first, so bytes `3g..3g+3` carry triples
    /// `2g` and `2g + 1`.
    pub fn sub_state(&self, state: &mut [u8]) -> Result<()> {
        self.apply(state, &self.forward)
    }

    pub fn inv_sub_state(&self, state: &mut [u8]) -> Result<()> {
        self.apply(state, &self.inverse)
    }

    fn apply(&self, state: &mut [u8], table: &[u16; SBOX_SIZE]) -> Result<()> {
        if state.len() != EXPANDED_BLOCK_BYTES {
            return Err(Error::length(EXPANDED_BLOCK_BYTES, state.len()));
        }
        for g in state.chunks_exact_mut(3) {
            let first = (u16::from(g[0]) << 4) | u16::from(g[1] >> 4);
            let second = (u16::from(g[1] & 15) << 8) | u16::from(g[2]);
            let (first, second) = (table[first as usize], table[second as usize]);
            g[0] = (first >> 4) as u8;
            g[1] = (((first & 15) << 4) | (second >> 8)) as u8;
            g[2] = second as u8;
        }
        Ok(())
    }
}
