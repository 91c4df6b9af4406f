//! Seeded Monte-Carlo frame-error-rate simulation.
//!
//! Every frame transmits the all-zero codeword. The noise of frame `k` is
//! drawn from a generator seeded by `(master seed, k)` alone, so results do
//! not depend on how frames are distributed over threads, and every decoder
//! run with the same master seed sees the same noise realizations.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::channel::{
    frame_seed, mix64, sigma2_to_snr, snr_to_sigma2, ChannelError, ChannelObservation,
};
use crate::code::{parse_qc_base, CodeError, ParityCheckCode};
use crate::decoder::DecodeError;
use crate::ops::{IterationProfile, OpCounters};
use crate::schedule::{DecodeOptions, Decoder, GroupRecord, SchedulerParams};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("reading {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("loading {path}")]
    Code {
        path: PathBuf,
        #[source]
        source: CodeError,
    },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("writing {path}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Where the parity-check matrix comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSource {
    Alist(PathBuf),
    /// QC base-matrix file; `z` overrides the lifting size in its header.
    Qc {
        base: PathBuf,
        z: Option<usize>,
    },
}

impl CodeSource {
    pub fn load(&self) -> Result<ParityCheckCode, SimError> {
        let read = |p: &Path| {
            fs::read_to_string(p).map_err(|source| SimError::Io {
                path: p.to_path_buf(),
                source,
            })
        };
        match self {
            CodeSource::Alist(path) => {
                ParityCheckCode::parse_alist(&read(path)?).map_err(|source| SimError::Code {
                    path: path.clone(),
                    source,
                })
            }
            CodeSource::Qc { base, z } => {
                let wrap = |source| SimError::Code {
                    path: base.clone(),
                    source,
                };
                let (matrix, file_z) = parse_qc_base(&read(base)?).map_err(wrap)?;
                ParityCheckCode::expand_qc(&matrix, z.unwrap_or(file_z)).map_err(wrap)
            }
        }
    }
}

/// Channel operating points.
#[derive(Debug, Clone, PartialEq)]
pub enum NoisePoints {
    /// `Eb/N0` in dB.
    EbN0Db(Vec<f64>),
    /// Raw noise variances.
    Sigma2(Vec<f64>),
}

impl NoisePoints {
    pub fn len(&self) -> usize {
        match self {
            NoisePoints::EbN0Db(v) | NoisePoints::Sigma2(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(Eb/N0 dB, σ²)` pairs at the given code rate.
    pub fn resolve(&self, rate: f64) -> Result<Vec<(f64, f64)>, ChannelError> {
        match self {
            NoisePoints::EbN0Db(v) => v
                .iter()
                .map(|&db| Ok((db, snr_to_sigma2(db, rate)?)))
                .collect(),
            NoisePoints::Sigma2(v) => v
                .iter()
                .map(|&s2| Ok((sigma2_to_snr(s2, rate)?, s2)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub params: SchedulerParams,
    pub points: NoisePoints,
    /// Upper limit on frames per point.
    pub frames: u64,
    /// Stop a point once this many frame errors have been seen.
    pub max_errors: Option<u64>,
    pub seed: u64,
    /// Tally the adaptive grouping's integer operations.
    pub count_ops: bool,
    /// Keep the group trace of frame 0 at each point.
    pub trace: bool,
}

impl SimConfig {
    pub const DEFAULT_FRAMES: u64 = 10_000_000;
    pub const DEFAULT_MAX_ERRORS: u64 = 200;

    pub fn new(params: SchedulerParams, points: NoisePoints) -> Self {
        Self {
            params,
            points,
            frames: Self::DEFAULT_FRAMES,
            max_errors: Some(Self::DEFAULT_MAX_ERRORS),
            seed: 0,
            count_ops: false,
            trace: false,
        }
    }

    pub fn validate(&self, code: &ParityCheckCode) -> Result<(), SimError> {
        if self.frames == 0 {
            return Err(SimError::Config("frames must be at least 1".into()));
        }
        if self.points.is_empty() {
            return Err(SimError::Config(
                "no SNR or noise-variance points given".into(),
            ));
        }
        if self.max_errors == Some(0) {
            return Err(SimError::Config("max errors must be at least 1".into()));
        }
        self.params
            .validate(code.n_vars())
            .map_err(DecodeError::from)?;
        Ok(())
    }
}

/// Outcome of one operating point.
#[derive(Debug, Clone, Default)]
pub struct PointResult {
    pub snr_db: f64,
    pub sigma2: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub n_vars: usize,
    pub iterations: u64,
    /// Sum of the extra integer operations over all frames and iterations.
    pub extra: OpCounters,
    pub counted: bool,
    pub seed: u64,
    /// Per-iteration operation averages, when counting.
    pub profile: IterationProfile,
    /// Group trace of frame 0, when tracing.
    pub trace: Vec<GroupRecord>,
}

impl PointResult {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.frames as f64
    }

    pub fn ber(&self) -> f64 {
        self.bit_errors as f64 / (self.frames as f64 * self.n_vars as f64)
    }

    /// Binomial standard error of [`fer`](Self::fer).
    pub fn fer_std_error(&self) -> f64 {
        let p = self.fer();
        (p * (1.0 - p) / self.frames as f64).sqrt()
    }

    pub fn mean_iterations(&self) -> f64 {
        self.iterations as f64 / self.frames as f64
    }

    /// Mean extra integer additions per iteration.
    pub fn mean_int_add(&self) -> f64 {
        self.extra.int_add as f64 / self.iterations as f64
    }

    /// Mean extra integer comparisons per iteration.
    pub fn mean_int_cmp(&self) -> f64 {
        self.extra.int_cmp as f64 / self.iterations as f64
    }
}

struct FrameOutcome {
    error: bool,
    bit_errors: u32,
    iterations: u32,
    ops: Vec<OpCounters>,
    trace: Vec<GroupRecord>,
}

const CHUNK: u64 = 256;

/// Simulates one operating point.
pub fn run_point(
    code: &ParityCheckCode,
    config: &SimConfig,
    snr_db: f64,
    sigma2: f64,
) -> Result<PointResult, SimError> {
    config.validate(code)?;
    let n = code.n_vars();
    let mut out = PointResult {
        snr_db,
        sigma2,
        n_vars: n,
        counted: config.count_ops,
        seed: config.seed,
        ..Default::default()
    };

    let mut next = 0u64;
    'chunks: while next < config.frames {
        let end = (next + CHUNK).min(config.frames);
        let outcomes = (next..end)
            .into_par_iter()
            .map_init(
                || Decoder::new(code, config.params.clone()),
                |decoder, k| -> Result<FrameOutcome, SimError> {
                    let decoder = decoder
                        .as_mut()
                        .map_err(|e| SimError::Config(e.to_string()))?;
                    simulate_frame(decoder, config, n, sigma2, k)
                },
            )
            .collect::<Result<Vec<_>, _>>()?;

        for f in outcomes {
            out.frames += 1;
            out.iterations += u64::from(f.iterations);
            out.bit_errors += u64::from(f.bit_errors);
            if f.error {
                out.frame_errors += 1;
            }
            if config.count_ops {
                for c in &f.ops {
                    out.extra += c.extra();
                }
                out.profile.add_frame(&f.ops);
            }
            if out.frames == 1 {
                out.trace = f.trace;
            }
            if config.max_errors.is_some_and(|m| out.frame_errors >= m) {
                break 'chunks;
            }
        }
        next = end;
    }
    Ok(out)
}

fn simulate_frame(
    decoder: &mut Decoder<'_>,
    config: &SimConfig,
    n: usize,
    sigma2: f64,
    k: u64,
) -> Result<FrameOutcome, SimError> {
    let obs = ChannelObservation::all_zero_frame(n, sigma2, config.seed, k)?;
    decoder.set_options(DecodeOptions {
        trace: config.trace && k == 0,
        cross_check: false,
    });
    let r = decoder.decode_llr(obs.channel_llr(), mix64(frame_seed(config.seed, k)))?;
    let bit_errors = r.bit_errors_vs_zero();
    Ok(FrameOutcome {
        error: !r.converged || bit_errors > 0,
        bit_errors: bit_errors as u32,
        iterations: r.iterations as u32,
        ops: if config.count_ops { r.ops } else { Vec::new() },
        trace: r.trace,
    })
}

/// Simulates every operating point in order.
pub fn run_sweep(code: &ParityCheckCode, config: &SimConfig) -> Result<Vec<PointResult>, SimError> {
    config.validate(code)?;
    config
        .points
        .resolve(code.rate())?
        .into_iter()
        .map(|(db, s2)| run_point(code, config, db, s2))
        .collect()
}

pub const CSV_HEADER: &str = "snr_db,sigma2,frames,frame_errors,fer,bit_errors,ber,mean_iters,mean_int_add,mean_int_cmp,seed";

/// Renders results as CSV. The integer-operation columns are empty when
/// counting was off.
pub fn to_csv(rows: &[PointResult]) -> String {
    let mut s = String::new();
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let (add, cmp) = if r.counted {
            (
                format!("{}", r.mean_int_add()),
                format!("{}", r.mean_int_cmp()),
            )
        } else {
            (String::new(), String::new())
        };
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.snr_db,
            r.sigma2,
            r.frames,
            r.frame_errors,
            r.fer(),
            r.bit_errors,
            r.ber(),
            r.mean_iterations(),
            add,
            cmp,
            r.seed
        );
    }
    s
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never observe a partial file.
pub fn write_atomically(path: &Path, contents: &str) -> Result<(), SimError> {
    let wrap = |source| SimError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(contents.as_bytes()).map_err(wrap)?;
    tmp.flush().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

/// Runs the sweep and writes its CSV to `path`.
pub fn run_sweep_to_csv(
    code: &ParityCheckCode,
    config: &SimConfig,
    path: &Path,
) -> Result<Vec<PointResult>, SimError> {
    let rows = run_sweep(code, config)?;
    write_atomically(path, &to_csv(&rows))?;
    Ok(rows)
}

/// Writes group traces, one `# snr_db <x> frame 0` header per point.
pub fn write_traces<W: Write>(w: &mut W, rows: &[PointResult]) -> io::Result<()> {
    for r in rows {
        writeln!(w, "# snr_db {} frame 0", r.snr_db)?;
        for g in &r.trace {
            g.write_line(w)?;
        }
    }
    Ok(())
}
