//! Basic per-iteration complexity of the group-shuffled decoders, and the
//! averaged extra integer work of the adaptive ones at selected iterations.
//!
//! ```shell
//! cargo run --release -p agsldpc --example complexity_counts -- [frames] [snr_db]
//! ```

use std::path::Path;

use agsldpc::decoder::Kernel;
use agsldpc::ops::count_basic;
use agsldpc::schedule::DecoderName;
use agsldpc::sim::{run_sweep, CodeSource, NoisePoints, SimConfig};

const ITERATIONS: [usize; 4] = [5, 10, 15, 20];

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let frames: u64 = args
        .next()
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(20_000);
    let snr: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2.75);

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("codes/regular_1008_504_3_6.alist");
    let code = CodeSource::Alist(path).load()?;

    println!("basic operations per iteration");
    for (name, kernel) in [("GSBP", Kernel::Bp), ("GSMS", Kernel::Ms)] {
        let c = count_basic(&code, kernel);
        println!(
            "  {name}: add {} cmp {} phi {}",
            c.real_add, c.real_cmp, c.phi_eval
        );
    }

    println!("\nextra integer operations at {snr} dB, {frames} frames (AD / CP)");
    println!(
        "  iter {:>20} {:>20} {:>20} {:>20}",
        "agsbp1", "agsbp2", "agsms1", "agsms2"
    );
    let decoders = [
        DecoderName::Agsbp1,
        DecoderName::Agsbp2,
        DecoderName::Agsms1,
        DecoderName::Agsms2,
    ];
    let mut profiles = Vec::new();
    for d in decoders {
        let mut cfg = SimConfig::new(d.params_for(&code), NoisePoints::EbN0Db(vec![snr]));
        cfg.frames = frames;
        cfg.max_errors = None;
        cfg.count_ops = true;
        cfg.seed = 1;
        profiles.push(run_sweep(&code, &cfg)?.remove(0).profile);
    }
    for l in ITERATIONS {
        print!("  {l:>4}");
        for p in &profiles {
            match p.mean_extra(l) {
                Some((a, c)) => print!(" {:>9.0} / {:>6.0} ({:>4})", a, c, p.frames_at(l)),
                None => print!(" {:>20}", "-"),
            }
        }
        println!();
    }
    Ok(())
}
