//! Group shuffled belief-propagation and min-sum decoding of LDPC codes with
//! adaptive variable-node grouping.
//!
//! The crate is organised bottom-up:
//!
//! * [`code`]: parity-check codes (alist, quasi-cyclic expansion) and the
//!   conventional static grouping.
//! * [`channel`]: BPSK over AWGN and channel LLRs.
//! * [`decoder`]: edge messages and the sum-product / min-sum kernels.
//! * [`schedule`]: the reliability metrics `E_n`, `F_n`, `A_n`, grouping
//!   methods I and II, and the decoding driver for every schedule.
//! * [`ops`]: operation counting.
//! * [`sim`]: seeded Monte-Carlo frame-error-rate sweeps written as CSV.
//!
//! ```
//! use agsldpc::channel::{snr_to_sigma2, ChannelObservation};
//! use agsldpc::construct::regular_peg;
//! use agsldpc::decoder::Kernel;
//! use agsldpc::schedule::{decode, SchedulerParams};
//!
//! let code = regular_peg(96, 48, 3, 6, 1).unwrap();
//! let sigma2 = snr_to_sigma2(4.0, code.rate()).unwrap();
//! let obs = ChannelObservation::all_zero_frame(code.n_vars(), sigma2, 7, 0).unwrap();
//! let result = decode(&code, &obs, &SchedulerParams::method_2(Kernel::Bp, 1)).unwrap();
//! assert!(result.iterations >= 1);
//! ```

pub mod channel;
pub mod code;
pub mod construct;
pub mod decoder;
pub mod ops;
pub mod schedule;
pub mod sim;
