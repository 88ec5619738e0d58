use std::fs;
use std::path::Path;
use std::process::Command;

use p3dk::cli::{run_with, EXIT_FORMAT, EXIT_IO, EXIT_KEY, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("p3dk").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn keygen_encrypt_decrypt_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.bin");
    let plain = dir.path().join("f.txt");
    let sealed = dir.path().join("f.p3d");
    let back = dir.path().join("f.out");
    fs::write(&plain, b"The quick brown fox jumps over the lazy dog.\n".repeat(50)).unwrap();

    assert_eq!(run(&["keygen", "--out", p(&key)]).0, EXIT_OK);
    let k = fs::read(&key).unwrap();
    assert_eq!(k.len(), 31);
    assert_eq!(k[30] & 0x1F, 0);

    assert_eq!(run(&["encrypt", "--key", p(&key), "--in", p(&plain), "--out", p(&sealed)]).0, EXIT_OK);
    assert_eq!(&fs::read(&sealed).unwrap()[..4], b"P3DK");
    assert_eq!(run(&["decrypt", "--key", p(&key), "--in", p(&sealed), "--out", p(&back)]).0, EXIT_OK);
    assert_eq!(fs::read(&back).unwrap(), fs::read(&plain).unwrap());
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.bin");
    let plain = dir.path().join("f.txt");
    let sealed = dir.path().join("f.p3d");
    let back = dir.path().join("f.out");
    fs::write(&key, [0x40u8; 31]).unwrap();
    fs::write(&plain, b"some bytes").unwrap();
    assert_eq!(run(&["encrypt", "--key", p(&key), "--in", p(&plain), "--out", p(&sealed)]).0, EXIT_OK);

    // bad magic
    let mut bytes = fs::read(&sealed).unwrap();
    bytes[0] = b'Q';
    let bad = dir.path().join("bad.p3d");
    fs::write(&bad, &bytes).unwrap();
    let (code, _, err) = run(&["decrypt", "--key", p(&key), "--in", p(&bad), "--out", p(&back)]);
    assert_eq!(code, EXIT_FORMAT);
    assert_eq!(err.lines().count(), 1);

    // short key file
    let short = dir.path().join("short.bin");
    fs::write(&short, [0u8; 20]).unwrap();
    assert_eq!(run(&["decrypt", "--key", p(&short), "--in", p(&sealed), "--out", p(&back)]).0, EXIT_KEY);

    // pad bits set in key file
    let padded = dir.path().join("padded.bin");
    fs::write(&padded, [0x41u8; 31]).unwrap();
    assert_eq!(run(&["encrypt", "--key", p(&padded), "--in", p(&plain), "--out", p(&back)]).0, EXIT_KEY);

    // missing input
    let missing = dir.path().join("nope");
    assert_eq!(run(&["encrypt", "--key", p(&key), "--in", p(&missing), "--out", p(&back)]).0, EXIT_IO);

    // in == out refused, input untouched
    let before = fs::read(&plain).unwrap();
    assert_eq!(run(&["encrypt", "--key", p(&key), "--in", p(&plain), "--out", p(&plain)]).0, EXIT_USAGE);
    assert_eq!(fs::read(&plain).unwrap(), before);

    // wrong key
    let other = dir.path().join("other.bin");
    fs::write(&other, [0x80u8; 31]).unwrap();
    assert_eq!(run(&["decrypt", "--key", p(&other), "--in", p(&sealed), "--out", p(&back)]).0, EXIT_FORMAT);

    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["encrypt", "--key", p(&key)]).0, EXIT_USAGE);
}

#[test]
fn help_is_side_effect_free() {
    for sub in ["keygen", "encrypt", "decrypt", "bench", "avalanche", "dump-cube", "dump-sbox"] {
        let (code, out, _) = run(&[sub, "--help"]);
        assert_eq!(code, EXIT_OK, "{sub}");
        assert!(out.contains("Usage"), "{sub}");
        assert_eq!(run(&[sub, "--help"]).1, out);
    }
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn dumps() {
    let (code, out, _) = run(&["dump-cube"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("arr[0][0][0] = **\n"));
    assert!(out.contains("arr[8][8][8] = zz\n"));

    let (code, out, _) = run(&["dump-sbox", "--rotation", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 4096);
    assert!(out.starts_with("S[0][0][0] = 00A\n"));
    assert_eq!(run(&["dump-sbox", "--rotation", "16"]).0, EXIT_FORMAT);
}

#[test]
fn bench_and_avalanche_write_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let svg = dir.path().join("r.svg");
    let (code, _, _) = run(&["bench", "rotations", "--max-count", "4", "--trials", "3", "--out", p(&csv), "--svg", p(&svg)]);
    assert_eq!(code, EXIT_OK);
    let report = p3dk::bench::BenchReport::from_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 5);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let (code, _, _) = run(&["bench", "filesize", "--sizes", "1,2", "--trials", "1", "--out", p(&csv)]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = run(&["bench", "sboxgen", "--sizes", "3,243", "--trials", "1", "--out", p(&csv)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(run(&["bench", "sboxgen", "--sizes", "5", "--out", p(&csv)]).0, EXIT_USAGE);

    let (code, out, _) = run(&["avalanche", "--trials", "50", "--out", p(&csv)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("mean "));
    assert_eq!(run(&["avalanche", "--trials", "0", "--out", p(&csv)]).0, EXIT_USAGE);

    let nowhere = dir.path().join("missing-dir").join("x.csv");
    assert_eq!(run(&["avalanche", "--trials", "5", "--out", p(&nowhere)]).0, EXIT_IO);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_p3dk");
    let out = Command::new(exe).arg("dump-cube").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("arr[0][1][0] = +3"));

    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k.bin");
    fs::write(&key, [1u8; 5]).unwrap();
    let out = Command::new(exe)
        .args(["encrypt", "--key", p(&key), "--in", p(&key), "--out", p(&dir.path().join("o"))])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_KEY));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}
