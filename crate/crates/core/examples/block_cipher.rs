//! Key expansion and a single 243-bit block.

use p3dk::cipher::pad_block;
use p3dk::{ExpandedKey, MasterKey};

fn hex(b: &[u8]) -> String {
    b.iter().map(|x| format!("{x:02x}")).collect()
}

fn main() -> p3dk::Result<()> {
    let mut raw = [0u8; 31];
    for (i, b) in raw.iter_mut().enumerate() {
        *b = (7 * i as u8).wrapping_add(3);
    }
    let key = MasterKey::from_bytes_masked(raw);
    let ek = ExpandedKey::new(&key)?;
    println!("key rotation {} bits, S-box rotation {}", ek.rho(), ek.sbox_rotation());

    let block = pad_block(b"Information and Communication T", 243)?;
    let c = ek.encrypt_block(&block)?;
    println!("plain  {}", hex(&block));
    println!("cipher {}", hex(&c));
    let p = ek.decrypt_block(&c)?;
    assert_eq!(p, block);
    println!("round trip ok");
    Ok(())
}
