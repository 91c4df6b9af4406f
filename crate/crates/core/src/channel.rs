//! BPSK over a real AWGN channel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChannelError {
    #[error("code rate {0} outside (0, 1]")]
    Rate(f64),
    #[error("noise variance must be positive, got {0}")]
    NoiseVariance(f64),
}

/// Maps bit 0 to +1 and bit 1 to −1.
pub fn modulate_bpsk(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| 1.0 - 2.0 * f64::from(b & 1)).collect()
}

/// Adds i.i.d. zero-mean Gaussian noise of variance `noise_var`.
pub fn awgn<R: Rng + ?Sized>(signal: &[f64], noise_var: f64, rng: &mut R) -> Vec<f64> {
    debug_assert!(noise_var >= 0.0);
    let sigma = noise_var.sqrt();
    signal
        .iter()
        .map(|&x| {
            let w: f64 = rng.sample(StandardNormal);
            x + sigma * w
        })
        .collect()
}

/// Noise variance per real dimension for BPSK at the given `Eb/N0` (dB):
/// `σ² = 1 / (2·R·10^(Eb/N0 / 10))`.
pub fn snr_to_sigma2(ebn0_db: f64, rate: f64) -> Result<f64, ChannelError> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(ChannelError::Rate(rate));
    }
    Ok(1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0)))
}

/// Inverse of [`snr_to_sigma2`].
pub fn sigma2_to_snr(noise_var: f64, rate: f64) -> Result<f64, ChannelError> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(ChannelError::Rate(rate));
    }
    if noise_var.is_nan() || noise_var <= 0.0 {
        return Err(ChannelError::NoiseVariance(noise_var));
    }
    Ok(10.0 * (1.0 / (2.0 * rate * noise_var)).log10())
}

/// A received frame together with its intrinsic LLRs `λ_n = 2 r_n / σ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelObservation {
    received: Vec<f64>,
    noise_var: f64,
    channel_llr: Vec<f64>,
}

impl ChannelObservation {
    pub fn new(received: Vec<f64>, noise_var: f64) -> Result<Self, ChannelError> {
        if noise_var.is_nan() || noise_var <= 0.0 || noise_var.is_infinite() {
            return Err(ChannelError::NoiseVariance(noise_var));
        }
        let scale = 2.0 / noise_var;
        let channel_llr = received.iter().map(|&r| scale * r).collect();
        Ok(Self {
            received,
            noise_var,
            channel_llr,
        })
    }

    /// The all-zero codeword of length `n` sent through the channel, with
    /// noise drawn from the substream of `(master_seed, frame)`.
    pub fn all_zero_frame(
        n: usize,
        noise_var: f64,
        master_seed: u64,
        frame: u64,
    ) -> Result<Self, ChannelError> {
        let mut rng = frame_rng(master_seed, frame);
        let signal = vec![1.0; n];
        Self::new(awgn(&signal, noise_var, &mut rng), noise_var)
    }

    pub fn len(&self) -> usize {
        self.received.len()
    }

    pub fn is_empty(&self) -> bool {
        self.received.is_empty()
    }

    pub fn received(&self) -> &[f64] {
        &self.received
    }

    pub fn noise_var(&self) -> f64 {
        self.noise_var
    }

    pub fn channel_llr(&self) -> &[f64] {
        &self.channel_llr
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of frame `frame` under `master`: `master ⊕ mix(frame)`.
pub fn frame_seed(master: u64, frame: u64) -> u64 {
    master ^ mix64(frame)
}

/// Independent generator for one frame; frames can be simulated in any order.
pub fn frame_rng(master: u64, frame: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(frame_seed(master, frame))
}
