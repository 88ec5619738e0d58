//! A 243-bit substitution-permutation block cipher built from a 9x9x9
//! symbol-cube key codec and a dynamic three-dimensional S-box, with a
//! codebook-mode file container and a benchmark harness.
//!
//! **Not a vetted cipher.** Nothing here has been cryptanalysed; do not use
//! it to protect real data.
//!
//! ```
//! use p3dk::{decrypt_stream, encrypt_stream, MasterKey};
//!
//! let key = MasterKey::from_bytes_masked([0x2A; 31]);
//! let sealed = encrypt_stream(b"attack at dawn", &key).unwrap();
//! assert_eq!(decrypt_stream(&sealed, &key).unwrap(), b"attack at dawn");
//! ```

pub mod bench;
pub mod cipher;
pub mod cli;
pub mod container;
pub mod cube;
pub mod error;
pub mod rng;
pub mod sbox;

pub use cipher::{ExpandedKey, MasterKey, State93};
pub use container::{decrypt_stream, encrypt_stream, CipherContainer};
pub use cube::CubeMatrix;
pub use error::{Error, Result};
pub use rng::KeyedRng;
pub use sbox::{NibbleTriple, SBox3D};
