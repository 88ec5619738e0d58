//! Encrypt a file into a container and decrypt it again.
//!
//!     cargo run --example file_round_trip -- path/to/file

use std::fs;

use p3dk::container::{decrypt_stream, encrypt_stream, generate_key};
use p3dk::CipherContainer;

fn main() -> p3dk::Result<()> {
    let data = match std::env::args_os().nth(1) {
        Some(path) => fs::read(path)?,
        None => b"no file given, so here is a short message instead\n".to_vec(),
    };
    let key = generate_key()?;
    let sealed = encrypt_stream(&data, &key)?;
    let bytes = sealed.to_bytes();
    println!("{} bytes -> {} blocks, {} byte container", data.len(), sealed.blocks.len(), bytes.len());

    let parsed = CipherContainer::from_bytes(&bytes)?;
    let back = decrypt_stream(&parsed, &key)?;
    assert_eq!(back, data);
    println!("decrypted {} bytes, identical", back.len());
    Ok(())
}
