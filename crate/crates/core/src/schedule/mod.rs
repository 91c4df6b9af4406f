//! Decoding schedules: flooding, conventional group shuffled, and adaptive
//! group shuffled with grouping methods I and II.

mod driver;
mod grouping;
pub mod metrics;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::code::ParityCheckCode;
use crate::decoder::Kernel;

pub use driver::{decode, decode_with, DecodeOptions, DecodeResult, Decoder, GroupRecord};
pub use grouping::{GroupKind, MetricScratch};
pub use metrics::OmegaTable;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("max_iter must be at least 1")]
    MaxIter,
    #[error("group count {g} invalid for {n} variables")]
    GroupCount { g: usize, n: usize },
    #[error("max group size {cap} outside [1, {n}]")]
    Cap { cap: usize, n: usize },
    #[error("static groups of up to {size} variables exceed the group size cap {cap}")]
    StaticExceedsCap { size: usize, cap: usize },
    #[error("unknown decoder {0:?}")]
    UnknownDecoder(String),
}

/// Schedule family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// All variables in one group per iteration.
    Flooding,
    /// Fixed natural-order partition into `group_count` groups.
    GsStatic,
    /// Adaptive grouping by `F_n`, then `A_n` (method I, threshold `η`).
    AgsMethod1,
    /// Adaptive grouping by `E_n` (method II, threshold `δ`).
    AgsMethod2,
}

impl Variant {
    pub fn is_adaptive(self) -> bool {
        matches!(self, Variant::AgsMethod1 | Variant::AgsMethod2)
    }
}

/// How the "arbitrary" pick among equally ranked candidates is made.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
    /// Uniform among the remaining candidates, from the frame seed.
    SeededUniform,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulerParams {
    pub variant: Variant,
    pub kernel: Kernel,
    /// `G`, used by [`Variant::GsStatic`].
    pub group_count: usize,
    /// `η` for method I.
    pub eta: u32,
    /// `δ` for method II.
    pub delta: u32,
    /// `l_max`.
    pub max_iter: usize,
    /// Upper bound on the size of any group; `None` is unbounded.
    pub max_group_size: Option<usize>,
    pub seed: u64,
    pub tie_break: TieBreak,
}

impl SchedulerParams {
    fn base(variant: Variant, kernel: Kernel) -> Self {
        Self {
            variant,
            kernel,
            group_count: 1,
            eta: 1,
            delta: 1,
            max_iter: 25,
            max_group_size: None,
            seed: 0,
            tie_break: TieBreak::LowestIndex,
        }
    }

    pub fn flooding(kernel: Kernel) -> Self {
        Self::base(Variant::Flooding, kernel)
    }

    pub fn gs_static(kernel: Kernel, group_count: usize) -> Self {
        Self {
            group_count,
            ..Self::base(Variant::GsStatic, kernel)
        }
    }

    pub fn method_1(kernel: Kernel, eta: u32) -> Self {
        Self {
            eta,
            ..Self::base(Variant::AgsMethod1, kernel)
        }
    }

    pub fn method_2(kernel: Kernel, delta: u32) -> Self {
        Self {
            delta,
            ..Self::base(Variant::AgsMethod2, kernel)
        }
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_max_group_size(mut self, cap: Option<usize>) -> Self {
        self.max_group_size = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn validate(&self, n_vars: usize) -> Result<(), ParamError> {
        if self.max_iter == 0 {
            return Err(ParamError::MaxIter);
        }
        if let Some(cap) = self.max_group_size {
            if cap == 0 || cap > n_vars {
                return Err(ParamError::Cap { cap, n: n_vars });
            }
        }
        let static_size = match self.variant {
            Variant::GsStatic => {
                if self.group_count == 0 || self.group_count > n_vars {
                    return Err(ParamError::GroupCount {
                        g: self.group_count,
                        n: n_vars,
                    });
                }
                Some(n_vars - (self.group_count - 1) * (n_vars / self.group_count))
            }
            Variant::Flooding => Some(n_vars),
            _ => None,
        };
        if let (Some(size), Some(cap)) = (static_size, self.max_group_size) {
            if size > cap {
                return Err(ParamError::StaticExceedsCap { size, cap });
            }
        }
        Ok(())
    }
}

/// Decoder names as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecoderName {
    Flooding,
    Gsbp,
    Gsms,
    Agsbp1,
    Agsbp2,
    Agsms1,
    Agsms2,
}

impl DecoderName {
    pub const ALL: [DecoderName; 7] = [
        DecoderName::Flooding,
        DecoderName::Gsbp,
        DecoderName::Gsms,
        DecoderName::Agsbp1,
        DecoderName::Agsbp2,
        DecoderName::Agsms1,
        DecoderName::Agsms2,
    ];

    pub fn variant(self) -> Variant {
        match self {
            DecoderName::Flooding => Variant::Flooding,
            DecoderName::Gsbp | DecoderName::Gsms => Variant::GsStatic,
            DecoderName::Agsbp1 | DecoderName::Agsms1 => Variant::AgsMethod1,
            DecoderName::Agsbp2 | DecoderName::Agsms2 => Variant::AgsMethod2,
        }
    }

    pub fn kernel(self) -> Kernel {
        match self {
            DecoderName::Flooding
            | DecoderName::Gsbp
            | DecoderName::Agsbp1
            | DecoderName::Agsbp2 => Kernel::Bp,
            _ => Kernel::Ms,
        }
    }

    /// Parameters with the tuned thresholds and cap of a known code, or
    /// `η = δ = 1` and no cap otherwise. `group_count` is only meaningful for
    /// the static variants and is left at 1 for the caller to set.
    pub fn params_for(self, code: &ParityCheckCode) -> SchedulerParams {
        let known = KnownCode::identify(code);
        let mut p = SchedulerParams::base(self.variant(), self.kernel());
        if let Some(k) = known {
            let t = k.thresholds();
            match self {
                DecoderName::Agsbp1 => p.eta = t.agsbp_eta,
                DecoderName::Agsbp2 => p.delta = t.agsbp_delta,
                DecoderName::Agsms1 => p.eta = t.agsms_eta,
                DecoderName::Agsms2 => p.delta = t.agsms_delta,
                _ => {}
            }
            p.max_iter = k.max_iter();
            if self.variant().is_adaptive() {
                p.max_group_size = k.max_group_size();
            }
        }
        p
    }
}

impl fmt::Display for DecoderName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecoderName::Flooding => "flooding",
            DecoderName::Gsbp => "gsbp",
            DecoderName::Gsms => "gsms",
            DecoderName::Agsbp1 => "agsbp1",
            DecoderName::Agsbp2 => "agsbp2",
            DecoderName::Agsms1 => "agsms1",
            DecoderName::Agsms2 => "agsms2",
        };
        f.write_str(s)
    }
}

impl FromStr for DecoderName {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DecoderName::ALL
            .into_iter()
            .find(|d| d.to_string() == s)
            .ok_or_else(|| ParamError::UnknownDecoder(s.to_string()))
    }
}

/// Codes with tuned thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownCode {
    /// Regular (1008, 504), column weight 3.
    MacKay1008,
    /// Regular (816, 272), column weight 4.
    MacKay816,
    /// IEEE 802.11n rate-1/2 (1944, 972) QC code.
    Wifi1944,
}

/// Tuned integer thresholds of one code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub agsbp_eta: u32,
    pub agsbp_delta: u32,
    pub agsms_eta: u32,
    pub agsms_delta: u32,
}

impl KnownCode {
    /// Recognizes a code by its dimensions and column weights.
    pub fn identify(code: &ParityCheckCode) -> Option<Self> {
        match (
            code.n_vars(),
            code.n_checks(),
            code.is_var_regular(),
            code.max_var_deg(),
        ) {
            (1008, 504, true, 3) => Some(KnownCode::MacKay1008),
            (816, 544, true, 4) => Some(KnownCode::MacKay816),
            (1944, 972, false, _) => Some(KnownCode::Wifi1944),
            _ => None,
        }
    }

    pub fn thresholds(self) -> Thresholds {
        let (agsbp_eta, agsbp_delta, agsms_eta, agsms_delta) = match self {
            KnownCode::MacKay1008 => (1, 1, 1, 2),
            KnownCode::MacKay816 => (1, 2, 2, 2),
            KnownCode::Wifi1944 => (1, 4, 6, 6),
        };
        Thresholds {
            agsbp_eta,
            agsbp_delta,
            agsms_eta,
            agsms_delta,
        }
    }

    pub fn max_iter(self) -> usize {
        match self {
            KnownCode::Wifi1944 => 50,
            _ => 25,
        }
    }

    /// One third of the code length for the WiFi code.
    pub fn max_group_size(self) -> Option<usize> {
        match self {
            KnownCode::Wifi1944 => Some(648),
            _ => None,
        }
    }
}
