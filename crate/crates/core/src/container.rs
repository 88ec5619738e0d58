//! Codebook-mode streaming and the on-disk ciphertext container.
//!
//! Layout (all offsets in bytes):
//!
//! ```text
//! 0..4    magic "P3DK"
//! 4       version 0x01
//! 5       flags 0x00
//! 6..14   plaintext length in bits, u64 little-endian
//! 14..    ceil(bits / 243) ciphertext blocks of 93 bytes
//! ```
//!
//! Every block is encrypted independently under the same expanded key, so
//! equal plaintext blocks give equal ciphertext blocks. That weakness is
//! inherent to the mode and not hidden.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::cipher::{pad_block, ExpandedKey, MasterKey, BLOCK_BITS};
use crate::cube::{EXPANDED_BLOCK_BYTES, PLAIN_BLOCK_BYTES};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"P3DK";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherContainer {
    pub plain_bit_len: u64,
    pub blocks: Vec<[u8; EXPANDED_BLOCK_BYTES]>,
}

pub fn block_count(bit_len: u64) -> u64 {
    bit_len.div_ceil(BLOCK_BITS as u64)
}

impl CipherContainer {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.blocks.len() * EXPANDED_BLOCK_BYTES);
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(0x00);
        out.extend_from_slice(&self.plain_bit_len.to_le_bytes());
        for b in &self.blocks {
            out.extend_from_slice(b);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if bytes[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {:#04x}", bytes[4])));
        }
        if bytes[5] != 0 {
            return Err(Error::Format(format!("unknown flags {:#04x}", bytes[5])));
        }
        let plain_bit_len = u64::from_le_bytes(bytes[6..14].try_into().expect("8 bytes"));
        let payload = &bytes[HEADER_LEN..];
        let expected = block_count(plain_bit_len)
            .checked_mul(EXPANDED_BLOCK_BYTES as u64)
            .ok_or_else(|| Error::Format("bit length overflows".into()))?;
        if payload.len() as u64 != expected {
            return Err(Error::Length { expected: expected as usize, actual: payload.len() });
        }
        let blocks = payload
            .chunks_exact(EXPANDED_BLOCK_BYTES)
            .map(|c| c.try_into().expect("exact chunk"))
            .collect();
        Ok(CipherContainer { plain_bit_len, blocks })
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }
}

/// Copies bits `start..start + len` of `src` (MSB first) into a fresh
/// byte buffer, left aligned.
fn extract_bits(src: &[u8], start: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len.div_ceil(8)];
    let (q, s) = (start / 8, start % 8);
    for (i, o) in out.iter_mut().enumerate() {
        let hi = src.get(q + i).copied().unwrap_or(0);
        let lo = src.get(q + i + 1).copied().unwrap_or(0);
        *o = if s == 0 { hi } else { (hi << s) | (lo >> (8 - s)) };
    }
    if !len.is_multiple_of(8) {
        if let Some(last) = out.last_mut() {
            *last &= 0xFF << (8 - len % 8);
        }
    }
    out
}

/// ORs the first `len` bits of `src` into `dst` starting at bit `start`.
/// `dst` must be zero in that range.
fn deposit_bits(dst: &mut [u8], start: usize, src: &[u8], len: usize) {
    let (q, s) = (start / 8, start % 8);
    for (i, &b) in src.iter().enumerate().take(len.div_ceil(8)) {
        let b = if (i + 1) * 8 > len { b & (0xFF << ((i + 1) * 8 - len)) } else { b };
        if q + i < dst.len() {
            dst[q + i] |= b >> s;
        }
        if s != 0 && q + i + 1 < dst.len() {
            dst[q + i + 1] |= b << (8 - s);
        }
    }
}

pub fn encrypt_stream(plaintext: &[u8], mk: &MasterKey) -> Result<CipherContainer> {
    let ek = ExpandedKey::new(mk)?;
    encrypt_stream_with(plaintext, &ek)
}

pub fn encrypt_stream_with(plaintext: &[u8], ek: &ExpandedKey) -> Result<CipherContainer> {
    let bit_len = plaintext.len() * 8;
    let n = block_count(bit_len as u64) as usize;
    let mut blocks = Vec::with_capacity(n);
    for k in 0..n {
        let start = k * BLOCK_BITS;
        let len = BLOCK_BITS.min(bit_len - start);
        let chunk = extract_bits(plaintext, start, len);
        let p31 = pad_block(&chunk, len)?;
        blocks.push(ek.encrypt_block(&p31)?);
    }
    Ok(CipherContainer { plain_bit_len: bit_len as u64, blocks })
}

pub fn decrypt_stream(container: &CipherContainer, mk: &MasterKey) -> Result<Vec<u8>> {
    let ek = ExpandedKey::new(mk)?;
    decrypt_stream_with(container, &ek)
}

/// Inverts [`encrypt_stream_with`]. Nonzero padding bits in any block are
/// reported as an integrity failure.
pub fn decrypt_stream_with(container: &CipherContainer, ek: &ExpandedKey) -> Result<Vec<u8>> {
    let bit_len = usize::try_from(container.plain_bit_len)
        .map_err(|_| Error::Format("bit length too large for this platform".into()))?;
    if bit_len % 8 != 0 {
        return Err(Error::Format(format!("bit length {bit_len} is not whole bytes")));
    }
    let n = block_count(bit_len as u64) as usize;
    if container.blocks.len() != n {
        return Err(Error::Length { expected: n, actual: container.blocks.len() });
    }
    let mut out = vec![0u8; bit_len / 8];
    for (k, block) in container.blocks.iter().enumerate() {
        let start = k * BLOCK_BITS;
        let len = BLOCK_BITS.min(bit_len - start);
        let p31 = ek.decrypt_block(block)?;
        if pad_block(&p31, len)? != p31 {
            return Err(Error::Integrity(format!("block {k}: nonzero padding bits")));
        }
        deposit_bits(&mut out, start, &p31, len);
    }
    Ok(out)
}

/// Reads a key file: exactly 31 raw bytes, last 5 bits zero.
pub fn load_key(path: &Path) -> Result<MasterKey> {
    let bytes = fs::read(path)?;
    MasterKey::from_bytes(&bytes)
}

pub fn save_key(path: &Path, key: &MasterKey) -> Result<()> {
    fs::write(path, key.as_bytes())?;
    Ok(())
}

/// Fresh key from the operating system's entropy source.
pub fn generate_key() -> Result<MasterKey> {
    let mut bytes = [0u8; PLAIN_BLOCK_BYTES];
    getrandom::fill(&mut bytes)
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(MasterKey::from_bytes_masked(bytes))
}
