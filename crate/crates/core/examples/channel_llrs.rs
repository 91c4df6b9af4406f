//! BPSK over AWGN and the resulting channel LLRs.
//!
//! ```shell
//! cargo run --release -p agsldpc --example channel_llrs
//! ```

use agsldpc::channel::{awgn, frame_rng, modulate_bpsk, snr_to_sigma2, ChannelObservation};

fn main() -> anyhow::Result<()> {
    let rate = 0.5;
    for db in [0.0, 2.0, 2.75] {
        println!(
            "Eb/N0 {db} dB at rate {rate}: sigma^2 = {:.5}",
            snr_to_sigma2(db, rate)?
        );
    }

    let bits = [0u8, 1, 1, 0, 1, 0, 0, 0];
    let sigma2 = snr_to_sigma2(1.0, rate)?;
    let x = modulate_bpsk(&bits);
    let r = awgn(&x, sigma2, &mut frame_rng(42, 0));
    let obs = ChannelObservation::new(r, sigma2)?;
    println!("\n bit      x         r       llr");
    for (i, &b) in bits.iter().enumerate() {
        println!(
            "{b:>4} {:>6.1} {:>9.4} {:>9.4}",
            x[i],
            obs.received()[i],
            obs.channel_llr()[i]
        );
    }

    // Frame k of a run depends only on the master seed and k.
    let a = ChannelObservation::all_zero_frame(4, sigma2, 7, 3)?;
    let b = ChannelObservation::all_zero_frame(4, sigma2, 7, 3)?;
    assert_eq!(a, b);
    println!("\nframe 3 of seed 7: {:?}", a.received());
    Ok(())
}
