//! The 243-bit block cipher.
//!
//! A block of 243 plaintext bits is zero-padded to 248 bits (31 bytes) and
//! expanded through the cube codec to 93 bytes. The master key goes through
//! the same expansion and is then rotated left by a keyed amount `rho`. The
//! expanded plaintext is XORed with that key and run through 16 rounds:
//!
//! ```text
//! odd round:  SubBytes, ShiftRows,             AddRoundKey
//! even round: SubBytes, ShiftRows, MixColumns, AddRoundKey
//! ```
//!
//! The 93-byte state is viewed as 3 rows of 31 bytes (`row r, column j` is
//! byte `31r + j`) by ShiftRows and MixColumns, and as 62 nibble triples by
//! SubBytes. Round key `r` is the expanded key rotated left by `47r mod 744`
//! bits.

use crate::cube::{self, EXPANDED_BLOCK_BYTES, PLAIN_BLOCK_BYTES};
use crate::error::{Error, Result};
use crate::rng::KeyedRng;
use crate::sbox::{SBox3D, ROTATIONS};

/// Plaintext bits per block, 3^5.
pub const BLOCK_BITS: usize = 243;
pub const STATE_BITS: usize = EXPANDED_BLOCK_BYTES * 8;
pub const ROUNDS: usize = 16;
pub const ROWS: usize = 3;
pub const COLUMNS: usize = 31;
const ROUND_KEY_STEP: usize = 47;

/// The 744-bit working state.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct State93(pub [u8; EXPANDED_BLOCK_BYTES]);

impl std::fmt::Debug for State93 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "State93(")?;
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

impl Default for State93 {
    fn default() -> Self {
        State93([0; EXPANDED_BLOCK_BYTES])
    }
}

impl State93 {
    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        let arr = bytes
            .try_into()
            .map_err(|_| Error::length(EXPANDED_BLOCK_BYTES, bytes.len()))?;
        Ok(State93(arr))
    }

    pub fn as_bytes(&self) -> &[u8; EXPANDED_BLOCK_BYTES] {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.0[COLUMNS * row + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: u8) {
        self.0[COLUMNS * row + col] = v;
    }

    pub fn xor_with(&mut self, other: &State93) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a ^= b;
        }
    }

    /// Row `r` moves left by `r` places: `new[r][j] = old[r][(j + r) mod 31]`.
    pub fn shift_rows(&mut self) {
        for r in 1..ROWS {
            self.0[COLUMNS * r..COLUMNS * (r + 1)].rotate_left(r);
        }
    }

    pub fn inv_shift_rows(&mut self) {
        for r in 1..ROWS {
            self.0[COLUMNS * r..COLUMNS * (r + 1)].rotate_right(r);
        }
    }

    /// Column `(u, v, w)` becomes `(u^v, v^w, u^v^w)`.
    pub fn mix_columns(&mut self) {
        for j in 0..COLUMNS {
            let (u, v, w) = (self.0[j], self.0[COLUMNS + j], self.0[2 * COLUMNS + j]);
            let (a, b, c) = mix_column(u, v, w);
            self.0[j] = a;
            self.0[COLUMNS + j] = b;
            self.0[2 * COLUMNS + j] = c;
        }
    }

    pub fn inv_mix_columns(&mut self) {
        for j in 0..COLUMNS {
            let (a, b, c) = (self.0[j], self.0[COLUMNS + j], self.0[2 * COLUMNS + j]);
            let (u, v, w) = inv_mix_column(a, b, c);
            self.0[j] = u;
            self.0[COLUMNS + j] = v;
            self.0[2 * COLUMNS + j] = w;
        }
    }

    /// Rotates the whole 744-bit string left by `n` bits, most significant
    /// bit of byte 0 first.
    pub fn rotl_bits(&self, n: usize) -> State93 {
        State93(rotl_bits(&self.0, n))
    }
}

#[inline]
pub fn mix_column(u: u8, v: u8, w: u8) -> (u8, u8, u8) {
    (u ^ v, v ^ w, u ^ v ^ w)
}

#[inline]
pub fn inv_mix_column(a: u8, b: u8, c: u8) -> (u8, u8, u8) {
    (b ^ c, a ^ b ^ c, a ^ c)
}

pub fn rotl_bits<const N: usize>(bytes: &[u8; N], n: usize) -> [u8; N] {
    let mut out = [0u8; N];
    if N == 0 {
        return out;
    }
    let n = n % (N * 8);
    let (q, s) = (n / 8, n % 8);
    for (i, o) in out.iter_mut().enumerate() {
        let hi = bytes[(i + q) % N];
        *o = if s == 0 {
            hi
        } else {
            let lo = bytes[(i + q + 1) % N];
            (hi << s) | (lo >> (8 - s))
        };
    }
    out
}

/// Packs the first `bit_len` bits of `packed` (MSB first) into a 31-byte
/// block: zero-extended to 243 bits, then five zero pad bits.
pub fn pad_block(packed: &[u8], bit_len: usize) -> Result<[u8; PLAIN_BLOCK_BYTES]> {
    if bit_len > BLOCK_BITS {
        return Err(Error::length(BLOCK_BITS, bit_len));
    }
    if packed.len() * 8 < bit_len {
        return Err(Error::length(bit_len.div_ceil(8), packed.len()));
    }
    let mut out = [0u8; PLAIN_BLOCK_BYTES];
    let full = bit_len / 8;
    out[..full].copy_from_slice(&packed[..full]);
    let rem = bit_len % 8;
    if rem != 0 {
        out[full] = packed[full] & (0xFF << (8 - rem));
    }
    Ok(out)
}

/// 243 key bits stored as 31 bytes whose last 5 bits are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct MasterKey([u8; PLAIN_BLOCK_BYTES]);

impl std::fmt::Debug for MasterKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("MasterKey(..)")
    }
}

impl MasterKey {
    pub const LEN: usize = PLAIN_BLOCK_BYTES;

    /// Rejects anything but 31 bytes with the five pad bits clear.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let arr: [u8; PLAIN_BLOCK_BYTES] = bytes.try_into().map_err(|_| {
            Error::KeyFormat(format!("key must be {} bytes, got {}", Self::LEN, bytes.len()))
        })?;
        if arr[PLAIN_BLOCK_BYTES - 1] & 0x1F != 0 {
            return Err(Error::KeyFormat("last 5 bits of the key must be zero".into()));
        }
        Ok(MasterKey(arr))
    }

    /// Takes 31 arbitrary bytes and clears the pad bits.
    pub fn from_bytes_masked(mut bytes: [u8; PLAIN_BLOCK_BYTES]) -> Self {
        bytes[PLAIN_BLOCK_BYTES - 1] &= 0xE0;
        MasterKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; PLAIN_BLOCK_BYTES] {
        &self.0
    }
}

/// Everything derived from a master key: expanded key, the two keyed
/// rotations and the round keys.
#[derive(Clone, Debug)]
pub struct ExpandedKey {
    k93: State93,
    rho: usize,
    sbox: SBox3D,
    round_keys: [State93; ROUNDS + 1],
}

impl ExpandedKey {
    /// Seeds the keyed generator from the 31 master-key bytes, draws the key
    /// rotation `rho` in `[0, 744)` and then the S-box rotation in `[0, 16)`.
    pub fn new(mk: &MasterKey) -> Result<Self> {
        let mut rng = KeyedRng::from_seed_bytes(mk.as_bytes())?;
        let rho = rng.next_below(STATE_BITS as u64)? as usize;
        let rotation = rng.next_below(u64::from(ROTATIONS))? as u8;
        Self::with_rotations(mk, rho, rotation)
    }

    /// Builds the schedule with explicit rotations instead of keyed draws.
    pub fn with_rotations(mk: &MasterKey, rho: usize, sbox_rotation: u8) -> Result<Self> {
        if rho >= STATE_BITS {
            return Err(Error::Range(format!("key rotation {rho} not in 0..{STATE_BITS}")));
        }
        let sbox = SBox3D::build(sbox_rotation)?;
        let k93 = State93(cube::encode_block(mk.as_bytes())?).rotl_bits(rho);
        let round_keys =
            std::array::from_fn(|r| k93.rotl_bits((ROUND_KEY_STEP * r) % STATE_BITS));
        Ok(ExpandedKey { k93, rho, sbox, round_keys })
    }

    pub fn k93(&self) -> &State93 {
        &self.k93
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn sbox_rotation(&self) -> u8 {
        self.sbox.rotation()
    }

    pub fn sbox(&self) -> &SBox3D {
        &self.sbox
    }

    pub fn round_key(&self, r: usize) -> &State93 {
        &self.round_keys[r]
    }

    pub fn round_keys(&self) -> &[State93; ROUNDS + 1] {
        &self.round_keys
    }

    pub fn encrypt_block(&self, p31: &[u8]) -> Result<[u8; EXPANDED_BLOCK_BYTES]> {
        self.encrypt_rounds(p31, true)
    }

    pub fn decrypt_block(&self, c93: &[u8]) -> Result<[u8; PLAIN_BLOCK_BYTES]> {
        let mut state = State93::from_slice(c93)?;
        for r in (1..=ROUNDS).rev() {
            state.xor_with(&self.round_keys[r]);
            if r % 2 == 0 {
                state.inv_mix_columns();
            }
            state.inv_shift_rows();
            self.sbox.inv_sub_state(&mut state.0)?;
        }
        state.xor_with(&self.round_keys[0]);
        cube::decode_block(&state.0)
    }

    pub(crate) fn encrypt_rounds(
        &self,
        p31: &[u8],
        mix: bool,
    ) -> Result<[u8; EXPANDED_BLOCK_BYTES]> {
        let mut state = State93(cube::encode_block(p31)?);
        state.xor_with(&self.round_keys[0]);
        for r in 1..=ROUNDS {
            self.sbox.sub_state(&mut state.0)?;
            state.shift_rows();
            if mix && r % 2 == 0 {
                state.mix_columns();
            }
            state.xor_with(&self.round_keys[r]);
        }
        Ok(state.0)
    }
}
