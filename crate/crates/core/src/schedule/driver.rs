use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::grouping::{GroupKind, MetricScratch};
use super::{SchedulerParams, Variant};
use crate::channel::{mix64, ChannelObservation};
use crate::code::{conventional_groups, ParityCheckCode};
use crate::decoder::{DecodeError, DecoderState};
use crate::ops::OpCounters;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Record every group formed.
    pub trace: bool,
    /// Re-evaluate all metrics from scratch before each adaptive group
    /// formation and panic if the maintained values disagree. Slow.
    pub cross_check: bool,
}

/// One sub-iteration of the schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRecord {
    /// 1-based iteration `l`.
    pub iteration: usize,
    /// 1-based position of the group within its iteration.
    pub sub_iteration: usize,
    pub kind: GroupKind,
    /// Ascending variable indices.
    pub members: Vec<usize>,
}

impl GroupRecord {
    /// `iter sub_iter size member_indices...`
    pub fn write_line<W: Write>(&self, w: &mut W) -> io::Result<()> {
        write!(
            w,
            "{} {} {}",
            self.iteration,
            self.sub_iteration,
            self.members.len()
        )?;
        for m in &self.members {
            write!(w, " {m}")?;
        }
        writeln!(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub hard: Vec<u8>,
    /// The final hard decision satisfies every check.
    pub converged: bool,
    pub iterations: usize,
    /// Empty unless tracing was requested.
    pub trace: Vec<GroupRecord>,
    /// Operation counts of each executed iteration.
    pub ops: Vec<OpCounters>,
}

impl DecodeResult {
    pub fn bit_errors_vs_zero(&self) -> usize {
        self.hard.iter().filter(|&&b| b != 0).count()
    }
}

/// Reusable decoder bound to one code and parameter set.
#[derive(Debug, Clone)]
pub struct Decoder<'c> {
    code: &'c ParityCheckCode,
    params: SchedulerParams,
    options: DecodeOptions,
    state: DecoderState,
    scratch: MetricScratch,
    static_groups: Vec<Vec<usize>>,
    unupdated: Vec<usize>,
}

impl<'c> Decoder<'c> {
    pub fn new(code: &'c ParityCheckCode, params: SchedulerParams) -> Result<Self, DecodeError> {
        params.validate(code.n_vars())?;
        let static_groups = match params.variant {
            Variant::Flooding => vec![(0..code.n_vars()).collect()],
            Variant::GsStatic => conventional_groups(code.n_vars(), params.group_count)
                .expect("validated group count")
                .groups()
                .to_vec(),
            _ => Vec::new(),
        };
        let state = DecoderState::new(code, &vec![0.0; code.n_vars()], params.kernel, params.seed)?;
        Ok(Self {
            code,
            params,
            options: DecodeOptions::default(),
            state,
            scratch: MetricScratch::new(code),
            static_groups,
            unupdated: Vec::with_capacity(code.n_vars()),
        })
    }

    pub fn with_options(mut self, options: DecodeOptions) -> Self {
        self.options = options;
        self
    }

    pub fn set_options(&mut self, options: DecodeOptions) {
        self.options = options;
    }

    pub fn params(&self) -> &SchedulerParams {
        &self.params
    }

    /// State after the last decode.
    pub fn state(&self) -> &DecoderState {
        &self.state
    }

    /// Decodes with the tie-break seed from the parameters.
    pub fn decode(&mut self, obs: &ChannelObservation) -> Result<DecodeResult, DecodeError> {
        self.decode_llr(obs.channel_llr(), self.params.seed)
    }

    /// Decodes channel LLRs with an explicit tie-break seed.
    pub fn decode_llr(&mut self, llr: &[f64], seed: u64) -> Result<DecodeResult, DecodeError> {
        let code = self.code;
        let p = &self.params;
        self.state.reset(code, llr, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed ^ 0x005E_ED0F_6A0C));
        let cap = p.max_group_size.unwrap_or(code.n_vars());
        let mut trace = Vec::new();
        let mut ops = Vec::new();
        let mut converged = false;

        for l in 1..=p.max_iter {
            self.state.begin_iteration();
            let mut counters = OpCounters::default();
            let mut sub = 0;

            if p.variant.is_adaptive() {
                self.unupdated.clear();
                self.unupdated.extend(0..code.n_vars());
                while !self.unupdated.is_empty() {
                    sub += 1;
                    let kind = if p.variant == Variant::AgsMethod1 {
                        let k = self.scratch.method_1(
                            code,
                            &self.state,
                            &self.unupdated,
                            p.eta,
                            cap,
                            p.tie_break,
                            &mut rng,
                        );
                        counters += self.scratch.cost().method_1();
                        k
                    } else {
                        let k = self.scratch.method_2(
                            code,
                            &self.state,
                            &self.unupdated,
                            p.delta,
                            cap,
                            p.tie_break,
                            &mut rng,
                        );
                        counters += self.scratch.cost().method_2();
                        k
                    };
                    if self.options.cross_check {
                        self.scratch.cross_check(
                            code,
                            &self.state,
                            p.variant == Variant::AgsMethod1,
                            p.eta,
                        );
                    }
                    let group = self.scratch.group();
                    self.state.update_group(code, group, &mut counters)?;
                    if self.options.trace {
                        trace.push(GroupRecord {
                            iteration: l,
                            sub_iteration: sub,
                            kind,
                            members: group.to_vec(),
                        });
                    }
                    let updated = self.state.updated();
                    self.unupdated.retain(|&n| !updated[n]);
                }
            } else {
                for group in &self.static_groups {
                    sub += 1;
                    self.state.update_group(code, group, &mut counters)?;
                    if self.options.trace {
                        trace.push(GroupRecord {
                            iteration: l,
                            sub_iteration: sub,
                            kind: GroupKind::Static,
                            members: group.clone(),
                        });
                    }
                }
            }

            ops.push(counters);
            if self.state.is_codeword() {
                converged = true;
                break;
            }
        }

        Ok(DecodeResult {
            hard: self.state.hard().to_vec(),
            converged,
            iterations: ops.len(),
            trace,
            ops,
        })
    }
}

/// Decodes one observation.
pub fn decode(
    code: &ParityCheckCode,
    obs: &ChannelObservation,
    params: &SchedulerParams,
) -> Result<DecodeResult, DecodeError> {
    decode_with(code, obs, params, DecodeOptions::default())
}

pub fn decode_with(
    code: &ParityCheckCode,
    obs: &ChannelObservation,
    params: &SchedulerParams,
    options: DecodeOptions,
) -> Result<DecodeResult, DecodeError> {
    Decoder::new(code, params.clone())?
        .with_options(options)
        .decode(obs)
}
