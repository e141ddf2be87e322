//! Command-line front end.
//!
//! Exit codes: `0` success, `2` usage or input error, `3` a size budget was
//! exceeded. The default length budget (4096) can be overridden with
//! `--max-length` or the `PLOTKIN_WEF_MAX_LENGTH` environment variable.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{self, ChannelPoint};
use crate::codetree::{CodeTree, RmParams, TreeSpec};
use crate::enumerator::{format_rational, format_terms, WeightEnumerator};
use crate::error::Error;
use crate::oracle::{self, BinaryMatrix};
use crate::plotkin;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const MAX_LENGTH_ENV: &str = "PLOTKIN_WEF_MAX_LENGTH";
pub const MAX_DEPTH_ENV: &str = "PLOTKIN_WEF_MAX_DEPTH";

#[derive(Debug, Parser)]
#[command(
    name = "plotkin-wef",
    version,
    about = "Exact ensemble weight distributions of Plotkin-concatenated codes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Poly, global = true)]
    pub format: Format,
    /// Refuse to build codes longer than this
    #[arg(long, env = MAX_LENGTH_ENV, default_value_t = 4096, global = true)]
    pub max_length: usize,
    /// Report wall-clock time (stderr for poly/csv, a `timing_ms` field for json)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Poly,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ensemble spectrum of the Reed-Muller tree RM(r, m)
    Rm {
        #[arg(allow_negative_numbers = true)]
        r: i64,
        m: u32,
        /// Only compute weights 0..=W
        #[arg(long, value_name = "W")]
        partial: Option<usize>,
        #[arg(long, env = MAX_DEPTH_ENV, default_value_t = 12)]
        max_depth: u32,
    },
    /// Combine two component spectra (u side, then v side)
    Combine {
        a0: PathBuf,
        a1: PathBuf,
        #[arg(long, value_name = "W")]
        partial: Option<usize>,
        /// Component length, needed for plain-text polynomial inputs
        #[arg(long, value_name = "N")]
        length: Option<usize>,
    },
    /// Ground-truth spectrum from two generator matrices
    Oracle {
        g0: PathBuf,
        g1: PathBuf,
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Truncated union bound for BPSK over AWGN
    Bound {
        spectrum: PathBuf,
        #[arg(long)]
        rate: f64,
        /// Eb/N0 in dB
        #[arg(long, allow_negative_numbers = true)]
        ebn0: f64,
        #[arg(long, value_name = "W")]
        truncate: usize,
        #[arg(long, value_name = "N")]
        length: Option<usize>,
    },
    /// Describe a code tree given as JSON
    Tree {
        tree: PathBuf,
        /// Include the identity-interleaver generator matrix
        #[arg(long)]
        emit_generator: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    Exhaustive,
    Montecarlo,
}

/// What every command reports. Spectra are exact; only `bound`,
/// `std_errors` and `timing_ms` are floating point.
#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub command: &'static str,
    pub input: serde_json::Value,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u64>,
    pub min_positive_weight: Option<usize>,
    /// Highest weight computed when only part of the spectrum was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial: Option<usize>,
    pub spectrum: WeightEnumerator,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_errors: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<BinaryMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn budget(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_BUDGET,
        message: message.into(),
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let start = Instant::now();
    match execute(&cli, err) {
        Ok(mut record) => {
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            if cli.global.timing {
                match cli.global.format {
                    Format::Json => record.timing_ms = Some(elapsed),
                    _ => {
                        let _ = writeln!(err, "time: {elapsed:.3} ms");
                    }
                }
            }
            let text = render(&record, cli.global.format);
            match out.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(cli: &Cli, err: &mut dyn Write) -> Result<OutputRecord, CliError> {
    let max_length = cli.global.max_length;
    match &cli.command {
        Command::Rm {
            r,
            m,
            partial,
            max_depth,
        } => {
            if m > max_depth {
                return Err(budget(format!(
                    "depth {m} exceeds the maximum depth {max_depth}"
                )));
            }
            check_length(1usize.checked_shl(*m).unwrap_or(usize::MAX), max_length)?;
            let input = serde_json::to_value(TreeSpec::ReedMuller {
                rm: RmParams { r: *r, m: *m },
            })
            .expect("tree spec serializes");
            tree_record(
                "rm",
                input,
                &CodeTree::reed_muller(*r, *m)?,
                *partial,
                false,
            )
        }
        Command::Tree {
            tree,
            emit_generator,
        } => {
            let text = read(tree)?;
            let spec: TreeSpec = serde_json::from_str(&text)
                .map_err(|e| usage(format!("{}: malformed tree: {e}", tree.display())))?;
            check_length(
                1usize.checked_shl(spec.depth()).unwrap_or(usize::MAX),
                max_length,
            )?;
            let t = spec.build()?;
            let input = serde_json::to_value(&spec).expect("tree spec serializes");
            tree_record("tree", input, &t, None, *emit_generator)
        }
        Command::Combine {
            a0,
            a1,
            partial,
            length,
        } => {
            let e0 = load_enumerator(a0, *length)?;
            let e1 = load_enumerator(a1, *length)?;
            check_length(2 * e0.length().max(e1.length()), max_length)?;
            let input = serde_json::json!({
                "a0": serde_json::to_value(&e0).expect("enumerator serializes"),
                "a1": serde_json::to_value(&e1).expect("enumerator serializes"),
            });
            let (spectrum, partial) = match partial {
                None => (plotkin::combine(&e0, &e1)?, None),
                Some(w) => {
                    let head = plotkin::combine_partial(&e0, &e1, *w)?;
                    (pad_partial(head, 2 * e0.length()), Some(*w))
                }
            };
            Ok(record("combine", input, spectrum, partial))
        }
        Command::Oracle {
            g0,
            g1,
            mode,
            samples,
            seed,
        } => {
            let m0 = load_matrix(g0)?;
            let m1 = load_matrix(g1)?;
            for (path, m) in [(g0, &m0), (g1, &m1)] {
                let rank = m.rank();
                if rank < m.rows() {
                    let _ = writeln!(
                        err,
                        "warning: {} has dependent rows (rank {rank} of {}); counting its row space once",
                        path.display(),
                        m.rows()
                    );
                }
            }
            check_length(2 * m0.cols().max(m1.cols()), max_length)?;
            let mut input = serde_json::json!({
                "g0": serde_json::to_value(&m0).expect("matrix serializes"),
                "g1": serde_json::to_value(&m1).expect("matrix serializes"),
                "mode": mode,
            });
            match mode {
                OracleMode::Exhaustive => {
                    let a = oracle::ensemble_wef_exhaustive(&m0, &m1)?;
                    Ok(record("oracle", input, a, None))
                }
                OracleMode::Montecarlo => {
                    input["samples"] = (*samples).into();
                    input["seed"] = (*seed).into();
                    let est = oracle::ensemble_wef_montecarlo(&m0, &m1, *samples, *seed)?;
                    let mut rec = record("oracle", input, est.mean, None);
                    rec.std_errors = Some(est.std_errors);
                    Ok(rec)
                }
            }
        }
        Command::Bound {
            spectrum,
            rate,
            ebn0,
            truncate,
            length,
        } => {
            let a = load_enumerator(spectrum, *length)?;
            let ch = ChannelPoint::new(*rate, *ebn0)?;
            let value = bounds::truncated_union_bound(&a, *truncate, ch)?;
            let input = serde_json::json!({
                "spectrum": serde_json::to_value(&a).expect("enumerator serializes"),
                "rate": rate,
                "ebn0_db": ebn0,
                "truncate": truncate,
            });
            let mut rec = record("bound", input, a, None);
            rec.bound = Some(value);
            Ok(rec)
        }
    }
}

fn check_length(n: usize, max_length: usize) -> Result<(), CliError> {
    if n > max_length {
        return Err(budget(format!(
            "code length {n} exceeds the length budget {max_length} (raise with --max-length or {MAX_LENGTH_ENV})"
        )));
    }
    Ok(())
}

fn tree_record(
    command: &'static str,
    input: serde_json::Value,
    t: &CodeTree,
    partial: Option<usize>,
    emit_generator: bool,
) -> Result<OutputRecord, CliError> {
    let spectrum = match partial {
        None => t.ensemble_wef(),
        Some(w) => pad_partial(t.ensemble_wef_partial(w)?, t.length()),
    };
    let mut rec = record(command, input, spectrum, partial);
    rec.dimension = Some(t.dimension() as u64);
    if emit_generator {
        rec.generator = Some(t.generator_matrix());
    }
    Ok(rec)
}

fn pad_partial(mut head: Vec<BigRational>, n: usize) -> WeightEnumerator {
    head.resize(n + 1, BigRational::zero());
    WeightEnumerator::new(head).expect("combined coefficients are nonnegative")
}

fn record(
    command: &'static str,
    input: serde_json::Value,
    spectrum: WeightEnumerator,
    partial: Option<usize>,
) -> OutputRecord {
    OutputRecord {
        command,
        input,
        length: spectrum.length(),
        dimension: if partial.is_none() {
            spectrum.dimension()
        } else {
            None
        },
        min_positive_weight: spectrum.min_positive_weight(),
        partial,
        spectrum,
        std_errors: None,
        bound: None,
        generator: None,
        timing_ms: None,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Accepts enumerator JSON, a JSON output record (its `spectrum` field), or a
/// plain polynomial when `length` is given.
pub fn load_enumerator(path: &Path, length: Option<usize>) -> Result<WeightEnumerator, CliError> {
    let text = read(path)?;
    parse_enumerator_text(&text, length).map_err(|e| CliError {
        message: format!("{}: {}", path.display(), e.message),
        ..e
    })
}

pub fn parse_enumerator_text(
    text: &str,
    length: Option<usize>,
) -> Result<WeightEnumerator, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let mut value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| usage(format!("malformed JSON: {e}")))?;
        if let Some(spectrum) = value.get_mut("spectrum") {
            value = spectrum.take();
        }
        let a: WeightEnumerator =
            serde_json::from_value(value).map_err(|e| usage(format!("malformed spectrum: {e}")))?;
        return match length {
            Some(n) => Ok(a.padded(n)?),
            None => Ok(a),
        };
    }
    let n = length.ok_or_else(|| usage("plain polynomial input needs --length"))?;
    Ok(WeightEnumerator::parse_poly(trimmed, n)?)
}

fn load_matrix(path: &Path) -> Result<BinaryMatrix, CliError> {
    let text = read(path)?;
    BinaryMatrix::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn render(rec: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(rec).expect("record serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(rec),
        Format::Poly => render_poly(rec),
    }
}

fn shown_coeffs(rec: &OutputRecord) -> &[BigRational] {
    let c = rec.spectrum.coeffs();
    match rec.partial {
        Some(w) => &c[..=w],
        None => c,
    }
}

fn render_poly(rec: &OutputRecord) -> String {
    if let Some(b) = rec.bound {
        return format!("{b:.17e}\n");
    }
    let mut s = format_terms(shown_coeffs(rec).iter().enumerate());
    s.push('\n');
    if rec.command == "tree" {
        s.push_str(&format!("length: {}\n", rec.length));
        if let Some(k) = rec.dimension {
            s.push_str(&format!("dimension: {k}\n"));
        }
        if let Some(g) = &rec.generator {
            s.push_str(&format!("generator: {}\n", g.to_json()));
        }
    }
    if let Some(se) = &rec.std_errors {
        let parts: Vec<String> = rec
            .spectrum
            .coeffs()
            .iter()
            .zip(se)
            .enumerate()
            .filter(|(_, (c, _))| !c.is_zero())
            .map(|(w, (_, e))| format!("{w}:{e:.6e}"))
            .collect();
        s.push_str(&format!("stderr: {}\n", parts.join(" ")));
    }
    s
}

fn render_csv(rec: &OutputRecord) -> String {
    let mut s = String::from("weight,coefficient");
    if rec.std_errors.is_some() {
        s.push_str(",std_error");
    }
    s.push('\n');
    for (w, c) in shown_coeffs(rec).iter().enumerate() {
        s.push_str(&format!("{w},{}", format_rational(c)));
        if let Some(se) = &rec.std_errors {
            s.push_str(&format!(",{:e}", se[w]));
        }
        s.push('\n');
    }
    if let Some(b) = rec.bound {
        s.push_str(&format!("# bound,{b:.17e}\n"));
    }
    s
}
