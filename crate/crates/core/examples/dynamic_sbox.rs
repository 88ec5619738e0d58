//! The 12-bit S-box and its rotations.

use p3dk::{NibbleTriple, SBox3D};

fn main() -> p3dk::Result<()> {
    let r: u8 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let sbox = SBox3D::build(r)?;
    for (a, b, c) in [(0, 0, 0), (1, 2, 3), (15, 15, 15)] {
        let x = NibbleTriple::new(a, b, c);
        let y = sbox.substitute(x);
        println!("R={r}: S({a:X},{b:X},{c:X}) = ({:X},{:X},{:X})", y.a, y.b, y.c);
        assert_eq!(sbox.invert(y), x);
    }

    // rotating in place lands on the same table as building directly
    let rotated = SBox3D::build(0)?.rotate(r as usize);
    assert!(rotated == sbox);
    println!("rotate(0, {r}) == build({r})");

    let mut state = [0x5Au8; 93];
    sbox.sub_state(&mut state)?;
    println!("substituted state starts {:02x?}", &state[..6]);
    sbox.inv_sub_state(&mut state)?;
    assert!(state.iter().all(|&b| b == 0x5A));
    Ok(())
}
