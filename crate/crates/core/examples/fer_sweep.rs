//! Compares frame error rates of the static and adaptive schedules over a
//! short SNR sweep and writes one CSV per decoder.
//!
//! ```shell
//! cargo run --release -p agsldpc --example fer_sweep -- [frames] [out_dir]
//! ```

use std::path::{Path, PathBuf};

use agsldpc::schedule::{DecoderName, Variant};
use agsldpc::sim::{run_sweep_to_csv, CodeSource, NoisePoints, SimConfig};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let frames: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2000);
    let out_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("codes/regular_1008_504_3_6.alist");
    let code = CodeSource::Alist(path).load()?;
    let snrs = vec![1.5, 1.75, 2.0, 2.25];

    println!(
        "{:>9} {}",
        "decoder",
        snrs.iter().map(|s| format!("{s:>10}")).collect::<String>()
    );
    for d in DecoderName::ALL {
        let mut params = d.params_for(&code);
        if params.variant == Variant::GsStatic {
            params.group_count = 8;
        }
        let mut cfg = SimConfig::new(params, NoisePoints::EbN0Db(snrs.clone()));
        cfg.frames = frames;
        cfg.max_errors = Some(100);
        cfg.seed = 7;
        let out = out_dir.join(format!("fer_{d}.csv"));
        let rows = run_sweep_to_csv(&code, &cfg, &out)?;
        let fer: String = rows.iter().map(|r| format!("{:>10.2e}", r.fer())).collect();
        println!("{:>9} {fer}", d.to_string());
    }
    println!("\nCSV files in {}", out_dir.display());
    Ok(())
}
