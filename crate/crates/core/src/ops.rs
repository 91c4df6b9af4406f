//! Operation counting.
//!
//! Counts follow fixed conventions evaluated on decoder events rather than on
//! the arithmetic actually executed:
//!
//! * BP check update, per outgoing message of a degree-`d` check: `d − 2`
//!   additions for the φ-sum and `d` φ evaluations (`d − 1` inputs and the
//!   outer one).
//! * Min-sum check update, per outgoing message: `d − 2` comparisons.
//! * Variable update, per variable of degree `d`: `d` additions for the total
//!   LLR and one subtraction per edge for the extrinsic message `L_n − m^c`.
//! * Adaptive grouping, per group formation: see [`Step2Cost`].
//!
//! Binary operations (checksums, XORs) are not counted.

use std::ops::{Add, AddAssign};

use crate::code::ParityCheckCode;
use crate::decoder::Kernel;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Real additions and subtractions.
    pub real_add: u64,
    /// Real comparisons (min-sum).
    pub real_cmp: u64,
    pub phi_eval: u64,
    /// Integer accumulations for the grouping metrics.
    pub int_add: u64,
    /// Integer comparisons for the grouping maxima.
    pub int_cmp: u64,
}

impl OpCounters {
    pub fn basic(&self) -> OpCounters {
        OpCounters {
            int_add: 0,
            int_cmp: 0,
            ..*self
        }
    }

    pub fn extra(&self) -> OpCounters {
        OpCounters {
            int_add: self.int_add,
            int_cmp: self.int_cmp,
            ..Default::default()
        }
    }

    #[inline]
    pub(crate) fn check_message(&mut self, kernel: Kernel, check_deg: usize) {
        let inner = check_deg.saturating_sub(2) as u64;
        match kernel {
            Kernel::Bp => {
                self.real_add += inner;
                self.phi_eval += check_deg as u64;
            }
            Kernel::Ms => self.real_cmp += inner,
        }
    }

    #[inline]
    pub(crate) fn var_update(&mut self, var_deg: usize) {
        self.real_add += 2 * var_deg as u64;
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, o: Self) {
        self.real_add += o.real_add;
        self.real_cmp += o.real_cmp;
        self.phi_eval += o.phi_eval;
        self.int_add += o.int_add;
        self.int_cmp += o.int_cmp;
    }
}

impl Add for OpCounters {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self += o;
        self
    }
}

/// Real-number operations of one full decoding iteration. Every schedule
/// updates each variable exactly once per iteration, so the count depends
/// only on the code and the check kernel.
pub fn count_basic(code: &ParityCheckCode, kernel: Kernel) -> OpCounters {
    let mut c = OpCounters::default();
    for n in 0..code.n_vars() {
        for &m in code.var_checks(n) {
            c.check_message(kernel, code.check_deg(m));
        }
        c.var_update(code.var_deg(n));
    }
    c
}

/// Integer work of one group formation.
///
/// * `E_n`: each unsatisfied check triggers the counters of its neighbours.
///   Method II needs `E` on `𝒱^c` only; method I also needs it on updated
///   neighbours for the per-check maxima, so every neighbour is triggered.
/// * `E*` (method II) or `F*` (method I): `|𝒱^c| − 1` comparisons.
/// * Method I, per-check maxima of `E` over unsatisfied checks:
///   `Σ (d^c(m) − 1)` comparisons; `F_n` is triggered like `E_n`, one addition
///   per credited variable.
/// * Method I, `A_n` over the argmax set `𝒮`: `Σ (d^v(n) − 1)` additions and
///   `|𝒮| − 1` comparisons for `A*`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Step2Cost {
    /// `Σ_{m : s_m = 1} d^c(m)`.
    pub ucn_degree_sum: u64,
    /// Unsatisfied-check neighbours that lie in `𝒱^c`, summed over checks.
    pub ucn_open_degree_sum: u64,
    /// Number of unsatisfied checks.
    pub ucn_count: u64,
    pub unupdated: u64,
    /// Increments made to the `F_n` counters.
    pub f_credits: u64,
    /// `|𝒮|` and `Σ_{n ∈ 𝒮} d^v(n)`, when `A` was evaluated.
    pub argmax_set: Option<(u64, u64)>,
}

impl Step2Cost {
    pub fn method_2(&self) -> OpCounters {
        OpCounters {
            int_add: self.ucn_open_degree_sum,
            int_cmp: self.unupdated.saturating_sub(1),
            ..Default::default()
        }
    }

    pub fn method_1(&self) -> OpCounters {
        let mut c = OpCounters {
            int_add: self.ucn_degree_sum + self.f_credits,
            int_cmp: (self.ucn_degree_sum - self.ucn_count) + self.unupdated.saturating_sub(1),
            ..Default::default()
        };
        if let Some((size, deg_sum)) = self.argmax_set {
            c.int_add += deg_sum - size;
            c.int_cmp += size.saturating_sub(1);
        }
        c
    }
}

/// Per-iteration averages over the frames that executed each iteration.
#[derive(Debug, Clone, Default)]
pub struct IterationProfile {
    sums: Vec<OpCounters>,
    frames: Vec<u64>,
}

impl IterationProfile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one frame's per-iteration counts (index 0 is iteration 1).
    pub fn add_frame(&mut self, per_iteration: &[OpCounters]) {
        if self.sums.len() < per_iteration.len() {
            self.sums.resize(per_iteration.len(), OpCounters::default());
            self.frames.resize(per_iteration.len(), 0);
        }
        for (i, c) in per_iteration.iter().enumerate() {
            self.sums[i] += *c;
            self.frames[i] += 1;
        }
    }

    pub fn merge(&mut self, other: &IterationProfile) {
        if self.sums.len() < other.sums.len() {
            self.sums.resize(other.sums.len(), OpCounters::default());
            self.frames.resize(other.sums.len(), 0);
        }
        for i in 0..other.sums.len() {
            self.sums[i] += other.sums[i];
            self.frames[i] += other.frames[i];
        }
    }

    /// Number of frames that ran iteration `iter` (1-based).
    pub fn frames_at(&self, iter: usize) -> u64 {
        iter.checked_sub(1)
            .and_then(|i| self.frames.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Mean `(int_add, int_cmp)` at iteration `iter` (1-based).
    pub fn mean_extra(&self, iter: usize) -> Option<(f64, f64)> {
        let i = iter.checked_sub(1)?;
        let frames = *self.frames.get(i)?;
        if frames == 0 {
            return None;
        }
        let s = self.sums[i];
        Some((
            s.int_add as f64 / frames as f64,
            s.int_cmp as f64 / frames as f64,
        ))
    }
}
