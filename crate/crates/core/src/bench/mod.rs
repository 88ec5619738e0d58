//! Timing and diffusion experiments.
//!
//! * [`bench_filesize`]: stream encryption time against file size.
//! * [`bench_rotations`]: cost of rotating the dynamic S-box `n` times.
//! * [`bench_sboxgen`]: per-message S-box setup time against input bit length.
//! * [`avalanche`]: fraction of ciphertext bits flipped by a one-bit
//!   plaintext change.
//!
//! Timed sections are single-threaded, use a monotonic clock, run at least
//! one untimed warmup and report the median over trials. Inputs come from
//! fixed-seed generators so every run sees the same data.

mod report;

use std::hint::black_box;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub use report::{BenchReport, BenchRow};

use crate::cipher::{pad_block, ExpandedKey, MasterKey, BLOCK_BITS, STATE_BITS};
use crate::container::encrypt_stream;
use crate::cube::encode_byte;
use crate::error::{Error, Result};
use crate::rng::KeyedRng;
use crate::sbox::{SBox3D, ROTATIONS};

pub const DEFAULT_SIZES_KB: [usize; 5] = [20, 35, 155, 333, 512];
pub const DEFAULT_BIT_LENGTHS: [usize; 5] = [3, 9, 27, 81, 243];
pub const MAX_ROTATIONS: usize = 16;

const WARMUP: usize = 1;
const DATA_SEED: u64 = 0x5EED_F11E;
const AVALANCHE_SEED: u64 = 0xA7A1_A7C3;

/// Reference timings as printed for the proposed cipher; never compared
/// against, only carried along in report metadata.
const PUBLISHED_FILESIZE_S: &str = "20:28 35:58 155:261 100:468 300:468 512:501";
const PUBLISHED_ROTATIONS_MS: &str = "0:0.000 1:0.003 2:0.006 4:0.012 8:0.024 16:0.048";
const PUBLISHED_SBOXGEN_MS: &str = "3:0.0003 9:0.0057 81:0.0285 243:0.057";

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn stamp(report: &mut BenchReport, trials: usize) {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    report.meta("timestamp_unix", secs);
    report.meta("trials", trials);
    report.meta("warmup", WARMUP);
}

/// Ordinary least squares `y = slope * x + intercept`, with R².
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let r2 = if sxx > 0.0 && syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, intercept, r2)
}

/// Pseudo-random file contents of `len` bytes from the harness seed.
pub fn synthetic_data(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = KeyedRng::from_state(seed);
    let mut out = vec![0u8; len];
    rng.fill_bytes(&mut out);
    out
}

/// Median wall time (ms) to encrypt a synthetic file of each size, key
/// expansion included. Rows are sorted by size.
pub fn bench_filesize(sizes_kb: &[usize], key: &MasterKey, trials: usize) -> Result<BenchReport> {
    if sizes_kb.is_empty() {
        return Err(Error::Usage("no file sizes given".into()));
    }
    if sizes_kb.contains(&0) {
        return Err(Error::Usage("file sizes must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    let mut sizes = sizes_kb.to_vec();
    sizes.sort_unstable();

    let mut report = BenchReport::new("filesize", "file size (KB)", "ms");
    for &kb in &sizes {
        let data = synthetic_data(kb * 1024, DATA_SEED);
        for _ in 0..WARMUP {
            black_box(encrypt_stream(&data, key)?);
        }
        let mut times = Vec::with_capacity(trials);
        for _ in 0..trials {
            let t = Instant::now();
            black_box(encrypt_stream(black_box(&data), key)?);
            times.push(t.elapsed().as_secs_f64() * 1e3);
        }
        report.push(kb, median(times));
    }
    stamp(&mut report, trials);
    report.meta("published_reference_s", PUBLISHED_FILESIZE_S);
    Ok(report)
}

/// Median time (ms) of `n` unit rotations of the S-box for `n = 0..=max_count`.
/// Metadata carries the least-squares slope (ms per rotation) and R².
pub fn bench_rotations(max_count: usize, trials: usize) -> Result<BenchReport> {
    if max_count > MAX_ROTATIONS {
        return Err(Error::Usage(format!("rotation count {max_count} exceeds {MAX_ROTATIONS}")));
    }
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    // batch enough calls per sample that the clock resolution is negligible
    const REPS: usize = 64;
    let mut sbox = SBox3D::build(0).expect("rotation 0");
    let mut order_rng = KeyedRng::from_state(DATA_SEED);

    let counts: Vec<usize> = (0..=max_count).collect();
    let mut order: Vec<usize> = (0..counts.len()).collect();
    let mut samples = vec![Vec::with_capacity(trials); counts.len()];
    for round in 0..WARMUP + trials {
        // fresh order every round so periodic noise cannot favour one count
        for i in (1..order.len()).rev() {
            let j = order_rng.next_below(i as u64 + 1).expect("nonzero bound") as usize;
            order.swap(i, j);
        }
        for &i in &order {
            let n = counts[i];
            let t = Instant::now();
            for _ in 0..REPS {
                sbox.rotate_in_place(black_box(n));
            }
            let ms = t.elapsed().as_secs_f64() * 1e3 / REPS as f64;
            black_box(&sbox);
            if round >= WARMUP {
                samples[i].push(ms);
            }
        }
    }

    let mut report = BenchReport::new("rotations", "number of rotations", "ms");
    let medians: Vec<f64> = samples.into_iter().map(median).collect();
    for (&n, &m) in counts.iter().zip(&medians) {
        report.push(n, m);
    }
    let xs: Vec<f64> = counts.iter().map(|&n| n as f64).collect();
    let (slope, intercept, r2) = linear_fit(&xs, &medians);
    stamp(&mut report, trials);
    report.meta("reps_per_sample", REPS);
    report.meta("slope_ms_per_rotation", slope);
    report.meta("intercept_ms", intercept);
    report.meta("r_squared", r2);
    report.meta("published_reference_ms", PUBLISHED_ROTATIONS_MS);
    Ok(report)
}

/// Per-message S-box setup for an input of `bits` bits: pad to bytes, expand
/// through the cube, seed the keyed generator from the expansion, draw the
/// rotation and generate the S-box entries for every nibble triple of the
/// expanded input. Returns the generated `(input, output)` entries.
pub fn sboxgen_setup(input: &[u8], bits: usize) -> Result<Vec<(u16, u16)>> {
    let padded = pad_block(input, bits)?;
    let bytes = bits.div_ceil(8);
    let mut expanded = Vec::with_capacity(3 * bytes);
    for (p, &b) in padded[..bytes].iter().enumerate() {
        expanded.extend_from_slice(&encode_byte(b, p).to_bytes());
    }
    let mut rng = KeyedRng::from_seed_bytes(&expanded)?;
    let rotation = rng.next_below(u64::from(ROTATIONS))? as u16;
    let mut entries = Vec::with_capacity(2 * bytes);
    for g in expanded.chunks_exact(3) {
        let first = (u16::from(g[0]) << 4) | u16::from(g[1] >> 4);
        let second = (u16::from(g[1] & 15) << 8) | u16::from(g[2]);
        for t in [first, second] {
            let (a, b, c) = (t >> 8, (t >> 4) & 15, t & 15);
            let y3 = (a + c + 8 + rotation) & 15;
            entries.push((t, (b << 8) | (c << 4) | y3));
        }
    }
    Ok(entries)
}

/// Median time (ms) of [`sboxgen_setup`] for each bit length, which must be
/// a power of three no larger than 243. Rows are sorted by length. The cost
/// of materializing the complete 4096-entry table is reported alongside as
/// metadata.
pub fn bench_sboxgen(bit_lengths: &[usize], trials: usize) -> Result<BenchReport> {
    if bit_lengths.is_empty() {
        return Err(Error::Usage("no bit lengths given".into()));
    }
    if let Some(bad) = bit_lengths.iter().find(|l| !DEFAULT_BIT_LENGTHS.contains(l)) {
        return Err(Error::Usage(format!("bit length {bad} is not one of 3, 9, 27, 81, 243")));
    }
    if trials == 0 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }
    let mut lengths = bit_lengths.to_vec();
    lengths.sort_unstable();
    lengths.dedup();

    const REPS: usize = 2000;
    let input = synthetic_data(BLOCK_BITS.div_ceil(8), DATA_SEED);
    let mut samples = vec![Vec::with_capacity(trials); lengths.len()];
    for round in 0..WARMUP + trials {
        for (i, &bits) in lengths.iter().enumerate() {
            let t = Instant::now();
            for _ in 0..REPS {
                black_box(sboxgen_setup(black_box(&input), black_box(bits))?);
            }
            let ms = t.elapsed().as_secs_f64() * 1e3 / REPS as f64;
            if round >= WARMUP {
                samples[i].push(ms);
            }
        }
    }

    let mut full = Vec::with_capacity(trials);
    for _ in 0..trials.max(3) {
        let t = Instant::now();
        black_box(SBox3D::build(black_box(0))?);
        full.push(t.elapsed().as_secs_f64() * 1e3);
    }

    let mut report = BenchReport::new("sboxgen", "input length (bits)", "ms");
    for (&bits, s) in lengths.iter().zip(samples) {
        report.push(bits, median(s));
    }
    stamp(&mut report, trials);
    report.meta("reps_per_sample", REPS);
    report.meta("full_table_build_ms", median(full));
    report.meta("published_reference_ms", PUBLISHED_SBOXGEN_MS);
    Ok(report)
}

/// Diffusion statistic: for `key_count` random keys and `flips_per_key`
/// random 243-bit plaintexts each, flip one uniformly chosen plaintext bit
/// and count the changed ciphertext bits out of 744. Rows: mean, std, min,
/// max of that fraction. Deterministic for a given configuration.
pub fn avalanche(key_count: usize, flips_per_key: usize) -> Result<BenchReport> {
    if key_count == 0 || flips_per_key == 0 {
        return Err(Error::Usage("avalanche needs at least one key and one flip".into()));
    }
    let mut rng = KeyedRng::from_state(AVALANCHE_SEED);
    let mut fractions = Vec::with_capacity(key_count * flips_per_key);
    for _ in 0..key_count {
        let mut key = [0u8; 31];
        rng.fill_bytes(&mut key);
        let ek = ExpandedKey::new(&MasterKey::from_bytes_masked(key))?;
        for _ in 0..flips_per_key {
            let mut raw = [0u8; 31];
            rng.fill_bytes(&mut raw);
            let p = pad_block(&raw, BLOCK_BITS)?;
            let bit = rng.next_below(BLOCK_BITS as u64)? as usize;
            let mut q = p;
            q[bit / 8] ^= 0x80 >> (bit % 8);
            let (a, b) = (ek.encrypt_block(&p)?, ek.encrypt_block(&q)?);
            let changed: u32 = a.iter().zip(&b).map(|(x, y)| (x ^ y).count_ones()).sum();
            fractions.push(f64::from(changed) / STATE_BITS as f64);
        }
    }
    let n = fractions.len() as f64;
    let mean = fractions.iter().sum::<f64>() / n;
    let var = fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / n;
    let min = fractions.iter().copied().fold(f64::INFINITY, f64::min);
    let max = fractions.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let mut report = BenchReport::new("avalanche", "statistic", "fraction");
    report.push("mean", mean);
    report.push("std", var.sqrt());
    report.push("min", min);
    report.push("max", max);
    report.meta("keys", key_count);
    report.meta("flips_per_key", flips_per_key);
    report.meta("samples", fractions.len());
    report.meta("ciphertext_bits", STATE_BITS);
    report.meta("seed", format!("{AVALANCHE_SEED:#x}"));
    Ok(report)
}
