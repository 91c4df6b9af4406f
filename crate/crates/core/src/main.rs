use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser};

use agsldpc::schedule::{DecoderName, Variant};
use agsldpc::sim::{self, CodeSource, NoisePoints, SimConfig};

/// Monte-Carlo FER sweep for LDPC decoders with static and adaptive group schedules.
#[derive(Debug, Parser)]
#[command(name = "agsldpc", version)]
#[command(group(ArgGroup::new("source").required(true).args(["code", "qc"])))]
#[command(group(ArgGroup::new("noise").required(true).args(["snr", "sigma2"])))]
struct Cli {
    /// Parity-check matrix in alist format.
    #[arg(long, value_name = "ALIST")]
    code: Option<PathBuf>,
    /// Quasi-cyclic base matrix.
    #[arg(long, value_name = "BASE")]
    qc: Option<PathBuf>,
    /// Lifting size; overrides the one in the base-matrix header.
    #[arg(long, requires = "qc")]
    z: Option<usize>,
    #[arg(long, default_value = "agsbp1")]
    decoder: DecoderName,
    /// Group count for gsbp and gsms.
    #[arg(long, value_name = "G")]
    groups: Option<usize>,
    #[arg(long)]
    eta: Option<u32>,
    #[arg(long)]
    delta: Option<u32>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    max_group_size: Option<usize>,
    /// Comma-separated Eb/N0 values in dB.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    snr: Vec<f64>,
    /// Comma-separated noise variances.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sigma2: Vec<f64>,
    #[arg(long, default_value_t = SimConfig::DEFAULT_FRAMES)]
    frames: u64,
    #[arg(long, default_value_t = SimConfig::DEFAULT_MAX_ERRORS)]
    max_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tally the extra integer operations of adaptive grouping.
    #[arg(long)]
    count_ops: bool,
    /// Write the group sequence of frame 0 at each point to this file.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let source = match (cli.code, cli.qc) {
        (Some(p), _) => CodeSource::Alist(p),
        (None, Some(base)) => CodeSource::Qc { base, z: cli.z },
        (None, None) => unreachable!("clap enforces a code source"),
    };
    let code = source.load()?;

    let mut params = cli.decoder.params_for(&code).with_seed(cli.seed);
    if params.variant == Variant::GsStatic {
        match cli.groups {
            Some(g) => params.group_count = g,
            None => bail!("--groups is required for {}", cli.decoder),
        }
    }
    if let Some(eta) = cli.eta {
        params.eta = eta;
    }
    if let Some(delta) = cli.delta {
        params.delta = delta;
    }
    if let Some(l) = cli.max_iter {
        params.max_iter = l;
    }
    if cli.max_group_size.is_some() {
        params.max_group_size = cli.max_group_size;
    }

    let points = if cli.sigma2.is_empty() {
        NoisePoints::EbN0Db(cli.snr)
    } else {
        NoisePoints::Sigma2(cli.sigma2)
    };
    let mut config = SimConfig::new(params, points);
    config.frames = cli.frames;
    config.max_errors = Some(cli.max_errors);
    config.seed = cli.seed;
    config.count_ops = cli.count_ops;
    config.trace = cli.trace.is_some();

    let rows = sim::run_sweep(&code, &config)?;
    let csv = sim::to_csv(&rows);
    match &cli.out {
        Some(path) => sim::write_atomically(path, &csv)?,
        None => io::stdout().write_all(csv.as_bytes())?,
    }
    if let Some(path) = &cli.trace {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        sim::write_traces(&mut w, &rows)?;
        w.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
