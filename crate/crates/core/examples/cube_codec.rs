//! Expand a 31-byte block through the symbol cube and back.
//!
//!     cargo run --example cube_codec -- "some text"

use p3dk::cube::{decode_block, encode_block, encode_byte, CubeMatrix};

fn main() -> p3dk::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "Information and Communication".into());
    let mut block = [0u8; 31];
    let n = text.len().min(31);
    block[..n].copy_from_slice(&text.as_bytes()[..n]);

    let cube = CubeMatrix::build();
    println!("corner cells: {} {}", cube.cell(0, 0, 0).as_str(), cube.cell(8, 8, 8).as_str());

    for (p, &b) in block.iter().take(4).enumerate() {
        let t = encode_byte(b, p);
        println!("byte {p}: {b:#04x} -> {:?}", String::from_utf8_lossy(&t.to_bytes()));
    }

    let expanded = encode_block(&block)?;
    println!("expanded: {}", String::from_utf8_lossy(&expanded));
    let back = decode_block(&expanded)?;
    assert_eq!(back, block);
    println!("decoded:  {:?}", String::from_utf8_lossy(&back[..n]));
    Ok(())
}
