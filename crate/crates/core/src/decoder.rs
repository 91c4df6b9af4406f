//! Edge-message storage and the BP / min-sum update kernels shared by every
//! schedule.
//!
//! Messages are stored per edge in the check-major order of
//! [`ParityCheckCode`]. A group update first recomputes every check-to-variable
//! message into the group from the variable-to-check messages as they stood on
//! entry, then refreshes the group's total LLRs, hard decisions, outgoing
//! messages and the affected syndrome bits.

use thiserror::Error;

use crate::channel::mix64;
use crate::code::ParityCheckCode;
use crate::ops::OpCounters;
use crate::schedule::ParamError;

/// Lower clamp of the φ argument; `φ(PHI_FLOOR) ≈ 28.3`.
pub const PHI_FLOOR: f64 = 1e-12;
/// Upper clamp of the φ argument; `φ(PHI_CEIL) ≈ 1.9e−13`.
pub const PHI_CEIL: f64 = 30.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("variable {0} was already updated in this iteration")]
    AlreadyUpdated(usize),
    #[error("variable index {0} out of range")]
    OutOfRange(usize),
    #[error("observation has {found} samples but the code has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Params(#[from] ParamError),
}

/// Check-node update rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// Log-domain sum-product.
    Bp,
    /// Plain min-sum, no scaling or offset.
    Ms,
}

/// `φ(x) = −ln tanh(x/2)`, with `x` clamped to `[PHI_FLOOR, PHI_CEIL]`.
#[inline]
pub fn phi(x: f64) -> f64 {
    let x = x.clamp(PHI_FLOOR, PHI_CEIL);
    // ln coth(x/2) = ln(1 + 2/(e^x − 1)); exp_m1 only where e^x − 1 cancels.
    let d = if x > 0.5 { x.exp() - 1.0 } else { x.exp_m1() };
    (2.0 / d).ln_1p()
}

/// Deterministic coin flips for zero-valued signs, derived from a frame seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TieBreaker {
    seed: u64,
}

impl TieBreaker {
    pub fn new(seed: u64) -> Self {
        Self { seed: mix64(seed) }
    }

    /// Pseudorandom bit for `key`; fixed for a given seed.
    #[inline]
    pub fn coin(&self, key: u64) -> bool {
        mix64(self.seed ^ key.wrapping_mul(0xD6E8_FEB8_6659_FD93)) & 1 == 1
    }
}

/// `BSGN(x) = (1 − sgn x)/2`: 0 for positive, 1 for negative, and a seeded
/// coin for zero.
#[inline]
pub fn bsgn(x: f64, ties: &TieBreaker, key: u64) -> u8 {
    if x > 0.0 {
        0
    } else if x < 0.0 {
        1
    } else {
        ties.coin(key) as u8
    }
}

/// Hard decisions `û_n = BSGN(L_n)`.
pub fn hard_decision(llr: &[f64], ties: &TieBreaker) -> Vec<u8> {
    llr.iter()
        .enumerate()
        .map(|(n, &l)| bsgn(l, ties, n as u64))
        .collect()
}

/// Sum-product check update over the other incoming messages. A zero input
/// counts as positive.
pub fn c2v_bp(others: &[f64]) -> f64 {
    let mut negative = false;
    let mut sum = 0.0;
    for &v in others {
        negative ^= v < 0.0;
        sum += phi(v.abs());
    }
    let mag = phi(sum);
    if negative {
        -mag
    } else {
        mag
    }
}

/// Min-sum check update over the other incoming messages. A zero input counts
/// as positive.
pub fn c2v_ms(others: &[f64]) -> f64 {
    let mut negative = false;
    let mut min = f64::INFINITY;
    for &v in others {
        negative ^= v < 0.0;
        min = min.min(v.abs());
    }
    if negative {
        -min
    } else {
        min
    }
}

#[derive(Debug, Clone, Default)]
struct UcnSet {
    list: Vec<usize>,
    pos: Vec<usize>,
}

impl UcnSet {
    const ABSENT: usize = usize::MAX;

    fn reset(&mut self, m: usize) {
        self.list.clear();
        self.pos.clear();
        self.pos.resize(m, Self::ABSENT);
    }

    fn toggle(&mut self, m: usize) {
        let p = self.pos[m];
        if p == Self::ABSENT {
            self.pos[m] = self.list.len();
            self.list.push(m);
        } else {
            let last = *self.list.last().unwrap();
            self.list.swap_remove(p);
            if last != m {
                self.pos[last] = p;
            }
            self.pos[m] = Self::ABSENT;
        }
    }
}

/// Per-frame decoder state.
#[derive(Debug, Clone)]
pub struct DecoderState {
    kernel: Kernel,
    llr: Vec<f64>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    // φ(|m^v|) per edge, BP only.
    v2c_phi: Vec<f64>,
    total_llr: Vec<f64>,
    hard: Vec<u8>,
    syndrome: Vec<u8>,
    ucn: UcnSet,
    // Σ_{m ∈ ℳ(n)} s_m per variable.
    ucn_per_var: Vec<u32>,
    updated: Vec<bool>,
    iteration: usize,
    ties: TieBreaker,
}

impl DecoderState {
    /// Initial state: `m^c ≡ 0`, `m^v_{n→m} = λ_n`, `L = λ`, `û = BSGN(λ)`.
    pub fn new(
        code: &ParityCheckCode,
        llr: &[f64],
        kernel: Kernel,
        seed: u64,
    ) -> Result<Self, DecodeError> {
        let mut s = Self {
            kernel,
            llr: Vec::new(),
            v2c: Vec::new(),
            c2v: Vec::new(),
            v2c_phi: Vec::new(),
            total_llr: Vec::new(),
            hard: Vec::new(),
            syndrome: Vec::new(),
            ucn: UcnSet::default(),
            ucn_per_var: Vec::new(),
            updated: Vec::new(),
            iteration: 0,
            ties: TieBreaker::new(seed),
        };
        s.reset(code, llr, seed)?;
        Ok(s)
    }

    /// Re-initializes for a new frame, reusing allocations.
    pub fn reset(
        &mut self,
        code: &ParityCheckCode,
        llr: &[f64],
        seed: u64,
    ) -> Result<(), DecodeError> {
        if llr.len() != code.n_vars() {
            return Err(DecodeError::DimensionMismatch {
                expected: code.n_vars(),
                found: llr.len(),
            });
        }
        let e = code.n_edges();
        self.ties = TieBreaker::new(seed);
        self.iteration = 0;
        self.llr.clear();
        self.llr.extend_from_slice(llr);
        self.v2c.clear();
        self.v2c.extend((0..e).map(|e| llr[code.edge_var(e)]));
        self.c2v.clear();
        self.c2v.resize(e, 0.0);
        self.v2c_phi.clear();
        if self.kernel == Kernel::Bp {
            self.v2c_phi.extend(self.v2c.iter().map(|v| phi(v.abs())));
        }
        self.total_llr.clear();
        self.total_llr.extend_from_slice(llr);
        self.hard.clear();
        let ties = self.ties;
        self.hard.extend(
            llr.iter()
                .enumerate()
                .map(|(n, &l)| bsgn(l, &ties, hard_key(e, n, 0))),
        );
        self.syndrome = code.syndrome(&self.hard);
        self.ucn.reset(code.n_checks());
        self.ucn_per_var.clear();
        self.ucn_per_var.resize(code.n_vars(), 0);
        for m in 0..code.n_checks() {
            if self.syndrome[m] == 1 {
                self.ucn.toggle(m);
                for &n in code.check_vars(m) {
                    self.ucn_per_var[n] += 1;
                }
            }
        }
        self.updated.clear();
        self.updated.resize(code.n_vars(), false);
        Ok(())
    }

    /// Starts a new iteration: `𝒱 = ∅`, `l ← l + 1`.
    pub fn begin_iteration(&mut self) {
        self.updated.fill(false);
        self.iteration += 1;
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn channel_llr(&self) -> &[f64] {
        &self.llr
    }

    pub fn v2c(&self) -> &[f64] {
        &self.v2c
    }

    pub fn c2v(&self) -> &[f64] {
        &self.c2v
    }

    pub fn total_llr(&self) -> &[f64] {
        &self.total_llr
    }

    pub fn hard(&self) -> &[u8] {
        &self.hard
    }

    pub fn syndrome(&self) -> &[u8] {
        &self.syndrome
    }

    /// Indices of unsatisfied checks, in no particular order.
    pub fn unsatisfied(&self) -> &[usize] {
        &self.ucn.list
    }

    /// Number of unsatisfied checks adjacent to each variable.
    pub fn unsatisfied_per_var(&self) -> &[u32] {
        &self.ucn_per_var
    }

    pub fn is_codeword(&self) -> bool {
        self.ucn.list.is_empty()
    }

    pub fn is_updated(&self, n: usize) -> bool {
        self.updated[n]
    }

    pub fn updated(&self) -> &[bool] {
        &self.updated
    }

    pub fn ties(&self) -> &TieBreaker {
        &self.ties
    }

    /// `BSGN(m^v_{n→m})` for edge `e`.
    #[inline]
    pub fn v2c_bit(&self, e: usize) -> u8 {
        bsgn(self.v2c[e], &self.ties, edge_key(e, self.iteration))
    }

    /// `BSGN(L_n)`.
    #[inline]
    pub fn llr_bit(&self, n: usize) -> u8 {
        self.hard[n]
    }

    /// Overwrites one variable-to-check message. Intended for tests that need
    /// arbitrary message configurations.
    pub fn set_v2c(&mut self, e: usize, value: f64) {
        self.v2c[e] = value;
        if self.kernel == Kernel::Bp {
            self.v2c_phi[e] = phi(value.abs());
        }
    }

    /// Check-to-variable message from the edge `e` (check `m`, variable `n`)
    /// computed from the current variable-to-check messages.
    #[inline]
    fn c2v_edge(&self, code: &ParityCheckCode, m: usize, e: usize) -> f64 {
        let mut negative = false;
        let range = code.check_edges(m);
        match self.kernel {
            Kernel::Bp => {
                let mut sum = 0.0;
                for e2 in range {
                    if e2 == e {
                        continue;
                    }
                    negative ^= self.v2c_bit(e2) == 1;
                    sum += self.v2c_phi[e2];
                }
                let mag = phi(sum);
                if negative {
                    -mag
                } else {
                    mag
                }
            }
            Kernel::Ms => {
                let mut min = f64::INFINITY;
                for e2 in range {
                    if e2 == e {
                        continue;
                    }
                    negative ^= self.v2c_bit(e2) == 1;
                    min = min.min(self.v2c[e2].abs());
                }
                if negative {
                    -min
                } else {
                    min
                }
            }
        }
    }

    fn edge_of(code: &ParityCheckCode, m: usize, n: usize) -> usize {
        code.check_edges(m)
            .find(|&e| code.edge_var(e) == n)
            .unwrap_or_else(|| panic!("variable {n} is not connected to check {m}"))
    }

    /// `m^c_{m→n}` by the sum-product rule from the current `m^v`.
    pub fn c2v_bp(&self, code: &ParityCheckCode, m: usize, n: usize) -> f64 {
        let e = Self::edge_of(code, m, n);
        let others: Vec<f64> = code
            .check_edges(m)
            .filter(|&e2| e2 != e)
            .map(|e2| self.signed_for_kernel(e2))
            .collect();
        c2v_bp(&others)
    }

    /// `m^c_{m→n}` by the min-sum rule from the current `m^v`.
    pub fn c2v_ms(&self, code: &ParityCheckCode, m: usize, n: usize) -> f64 {
        let e = Self::edge_of(code, m, n);
        let others: Vec<f64> = code
            .check_edges(m)
            .filter(|&e2| e2 != e)
            .map(|e2| self.signed_for_kernel(e2))
            .collect();
        c2v_ms(&others)
    }

    // Resolves a zero message to ±0 according to its coin so that the slice
    // kernels see the same sign as the edge kernel.
    fn signed_for_kernel(&self, e: usize) -> f64 {
        let v = self.v2c[e];
        if v == 0.0 && self.v2c_bit(e) == 1 {
            -f64::MIN_POSITIVE
        } else {
            v
        }
    }

    /// `λ_n + Σ_{m' ∈ ℳ(n)∖m} m^c_{m'→n}` from the stored check messages.
    pub fn extrinsic_v2c(&self, code: &ParityCheckCode, n: usize, m: usize) -> f64 {
        let mut acc = self.llr[n];
        for (&e, &m2) in code.var_edges(n).iter().zip(code.var_checks(n)) {
            if m2 != m {
                acc += self.c2v[e];
            }
        }
        acc
    }

    /// `λ_n + Σ_{m ∈ ℳ(n)} m^c_{m→n}` from the stored check messages.
    pub fn recompute_total_llr(&self, code: &ParityCheckCode, n: usize) -> f64 {
        self.llr[n] + code.var_edges(n).iter().map(|&e| self.c2v[e]).sum::<f64>()
    }

    /// Updates the variables of `group` in logical parallel: all check messages
    /// into the group are computed from the variable messages as of entry,
    /// then the group's LLRs, hard decisions, outgoing messages, and the
    /// syndrome bits of their checks are refreshed. Members move into `𝒱`.
    pub fn update_group(
        &mut self,
        code: &ParityCheckCode,
        group: &[usize],
        counters: &mut OpCounters,
    ) -> Result<(), DecodeError> {
        for (i, &n) in group.iter().enumerate() {
            let err = if n >= code.n_vars() {
                Some(DecodeError::OutOfRange(n))
            } else if self.updated[n] {
                Some(DecodeError::AlreadyUpdated(n))
            } else {
                None
            };
            if let Some(err) = err {
                for &p in &group[..i] {
                    self.updated[p] = false;
                }
                return Err(err);
            }
            self.updated[n] = true;
        }

        for &n in group {
            for &e in code.var_edges(n) {
                let m = code.edge_check(e);
                self.c2v[e] = self.c2v_edge(code, m, e);
                counters.check_message(self.kernel, code.check_deg(m));
            }
        }

        let n_edges = code.n_edges();
        for &n in group {
            let edges = code.var_edges(n);
            let total = self.llr[n] + edges.iter().map(|&e| self.c2v[e]).sum::<f64>();
            self.total_llr[n] = total;
            for &e in edges {
                let v = total - self.c2v[e];
                self.v2c[e] = v;
                if self.kernel == Kernel::Bp {
                    self.v2c_phi[e] = phi(v.abs());
                }
            }
            counters.var_update(edges.len());

            let bit = bsgn(total, &self.ties, hard_key(n_edges, n, self.iteration));
            if bit != self.hard[n] {
                self.hard[n] = bit;
                for &m in code.var_checks(n) {
                    self.syndrome[m] ^= 1;
                    self.ucn.toggle(m);
                    if self.syndrome[m] == 1 {
                        for &v in code.check_vars(m) {
                            self.ucn_per_var[v] += 1;
                        }
                    } else {
                        for &v in code.check_vars(m) {
                            self.ucn_per_var[v] -= 1;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[inline]
fn edge_key(e: usize, iteration: usize) -> u64 {
    ((iteration as u64) << 40) ^ e as u64
}

#[inline]
fn hard_key(n_edges: usize, n: usize, iteration: usize) -> u64 {
    ((iteration as u64) << 40) ^ (n_edges + n) as u64
}
