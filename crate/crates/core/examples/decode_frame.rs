//! Decodes one noisy frame with every schedule and prints the adaptive group
//! sequence of the first iteration.
//!
//! ```shell
//! cargo run --release -p agsldpc --example decode_frame -- [snr_db] [frame]
//! ```

use std::io;
use std::path::Path;

use agsldpc::channel::{snr_to_sigma2, ChannelObservation};
use agsldpc::schedule::{DecodeOptions, Decoder, DecoderName, Variant};
use agsldpc::sim::CodeSource;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let snr: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2.0);
    let frame: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("codes/regular_1008_504_3_6.alist");
    let code = CodeSource::Alist(path).load()?;
    let obs = ChannelObservation::all_zero_frame(
        code.n_vars(),
        snr_to_sigma2(snr, code.rate())?,
        2024,
        frame,
    )?;
    let wrong = obs.channel_llr().iter().filter(|&&l| l < 0.0).count();
    println!("{snr} dB, frame {frame}: {wrong} channel hard decisions wrong\n");

    println!(
        "{:>9} {:>10} {:>6} {:>11}",
        "decoder", "converged", "iters", "bit errors"
    );
    for d in DecoderName::ALL {
        let mut params = d.params_for(&code);
        if params.variant == Variant::GsStatic {
            params.group_count = 8;
        }
        let mut dec = Decoder::new(&code, params)?.with_options(DecodeOptions {
            trace: true,
            cross_check: false,
        });
        let r = dec.decode(&obs)?;
        println!(
            "{:>9} {:>10} {:>6} {:>11}",
            d.to_string(),
            r.converged,
            r.iterations,
            r.bit_errors_vs_zero()
        );

        if d == DecoderName::Agsbp1 {
            println!("\n  agsbp1 iteration 1 (iter sub size members):");
            let mut out = io::stdout().lock();
            for g in r.trace.iter().filter(|g| g.iteration == 1).take(12) {
                print!("  {:?} ", g.kind);
                g.write_line(&mut out)?;
            }
            println!();
        }
    }
    Ok(())
}
