//! Command-line front end. The binary is a thin wrapper over [`run`].
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 format or integrity, 4 key.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchReport};
use crate::cipher::MasterKey;
use crate::container::{self, CipherContainer};
use crate::cube::CubeMatrix;
use crate::error::Error;
use crate::sbox::SBox3D;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_KEY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "p3dk", version, about = "243-bit cube-codec block cipher (experimental, not vetted)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a fresh 31-byte key from the system entropy source
    Keygen {
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a file into a P3DK container
    Encrypt(CryptArgs),
    /// Decrypt a P3DK container
    Decrypt(CryptArgs),
    /// Run a timing experiment and write CSV (and optionally SVG)
    Bench {
        #[arg(value_enum)]
        experiment: Experiment,
        /// Comma-separated file sizes in KB (filesize) or bit lengths (sboxgen)
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Highest rotation count (rotations)
        #[arg(long, default_value_t = bench::MAX_ROTATIONS)]
        max_count: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Key file for filesize; a fixed key is used when absent
        #[arg(long)]
        key: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Measure single-bit diffusion over random keys and plaintexts
    Avalanche {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the 9x9x9 symbol cube
    DumpCube,
    /// Print the S-box table for a rotation
    DumpSbox {
        #[arg(long, default_value_t = 0)]
        rotation: u8,
    },
}

#[derive(Debug, clap::Args)]
struct CryptArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Experiment {
    Filesize,
    Rotations,
    Sboxgen,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        Error::Format(_) | Error::Integrity(_) | Error::Range(_) | Error::Length { .. } => {
            EXIT_FORMAT
        }
        Error::KeyFormat(_) | Error::Seed => EXIT_KEY,
    }
}

/// Runs with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let first = e.render().to_string();
                    let line = first.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(err, "p3dk: {line}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "p3dk: {e}");
            exit_code(&e)
        }
    }
}

fn same_file(a: &Path, b: &Path) -> bool {
    if a == b {
        return true;
    }
    match (fs::canonicalize(a), fs::canonicalize(b)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

fn write_report(report: &BenchReport, csv: &Path, svg: Option<&Path>) -> Result<(), Error> {
    report.emit_csv(csv)?;
    if let Some(svg) = svg {
        report.emit_svg(svg)?;
    }
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Keygen { out: path } => {
            let key = container::generate_key()?;
            container::save_key(&path, &key)?;
        }
        Command::Encrypt(a) => {
            if same_file(&a.input, &a.out) {
                return Err(Error::Usage("--in and --out must differ".into()));
            }
            let key = container::load_key(&a.key)?;
            let data = fs::read(&a.input)?;
            let sealed = container::encrypt_stream(&data, &key)?;
            fs::write(&a.out, sealed.to_bytes())?;
        }
        Command::Decrypt(a) => {
            if same_file(&a.input, &a.out) {
                return Err(Error::Usage("--in and --out must differ".into()));
            }
            let key = container::load_key(&a.key)?;
            let sealed = CipherContainer::from_bytes(&fs::read(&a.input)?)?;
            let plain = container::decrypt_stream(&sealed, &key)?;
            fs::write(&a.out, plain)?;
        }
        Command::Bench { experiment, sizes, max_count, trials, key, out: csv, svg } => {
            let report = match experiment {
                Experiment::Filesize => {
                    let key = match key {
                        Some(p) => container::load_key(&p)?,
                        None => MasterKey::from_bytes_masked([0x2A; MasterKey::LEN]),
                    };
                    let sizes = sizes.unwrap_or_else(|| bench::DEFAULT_SIZES_KB.to_vec());
                    bench::bench_filesize(&sizes, &key, trials)?
                }
                Experiment::Rotations => bench::bench_rotations(max_count, trials)?,
                Experiment::Sboxgen => {
                    let sizes = sizes.unwrap_or_else(|| bench::DEFAULT_BIT_LENGTHS.to_vec());
                    bench::bench_sboxgen(&sizes, trials)?
                }
            };
            write_report(&report, &csv, svg.as_deref())?;
            for row in &report.rows {
                writeln!(out, "{:>8} {:.6} {}", row.label, row.value, report.unit)?;
            }
        }
        Command::Avalanche { trials, out: csv, svg } => {
            let report = bench::avalanche(trials, 1)?;
            write_report(&report, &csv, svg.as_deref())?;
            for row in &report.rows {
                writeln!(out, "{} {:.6}", row.label, row.value)?;
            }
        }
        Command::DumpCube => {
            out.write_all(CubeMatrix::build().dump().as_bytes())?;
        }
        Command::DumpSbox { rotation } => {
            out.write_all(SBox3D::build(rotation)?.dump().as_bytes())?;
        }
    }
    Ok(())
}
