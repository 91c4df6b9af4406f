use rand::seq::SliceRandom;
use rand::Rng;

use super::metrics::{self, OmegaTable};
use super::TieBreak;
use crate::code::ParityCheckCode;
use crate::decoder::DecoderState;
use crate::ops::Step2Cost;

/// How a group was formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// A member of a fixed partition.
    Static,
    /// All (or the lowest-indexed `cap`) remaining variables, taken when no
    /// variable stands out (`F* = 0` or `E* < δ`).
    Remainder,
    /// Built by the argmax-and-remove loop; no two members share a check.
    Selected,
}

/// Working storage for the adaptive grouping methods.
///
/// `E_n` is read from the decoder's per-variable unsatisfied-check counts,
/// which the decoder keeps in step with every hard-decision flip. `F_n` is
/// accumulated only over unsatisfied checks, and `A_n` only over the argmax
/// set `𝒮`.
#[derive(Debug, Clone)]
pub struct MetricScratch {
    omega: OmegaTable,
    f_val: Vec<u32>,
    a_val: Vec<u32>,
    check_sign_xor: Vec<u8>,
    touched: Vec<usize>,
    argmax: Vec<usize>,
    candidates: Vec<usize>,
    blocked: Vec<u32>,
    stamp: u32,
    group: Vec<usize>,
    cost: Step2Cost,
}

impl MetricScratch {
    pub fn new(code: &ParityCheckCode) -> Self {
        Self {
            omega: OmegaTable::new(code),
            f_val: vec![0; code.n_vars()],
            a_val: vec![0; code.n_vars()],
            check_sign_xor: vec![0; code.n_checks()],
            touched: Vec::new(),
            argmax: Vec::new(),
            candidates: Vec::new(),
            blocked: vec![0; code.n_vars()],
            stamp: 0,
            group: Vec::new(),
            cost: Step2Cost::default(),
        }
    }

    pub fn omega(&self) -> &OmegaTable {
        &self.omega
    }

    /// Current `E_n`.
    #[inline]
    pub fn e(&self, state: &DecoderState, n: usize) -> u32 {
        self.omega.at(n, state.unsatisfied_per_var()[n] as usize)
    }

    /// `F_n` from the last method-I call; zero for variables outside `𝒱^c`.
    pub fn f_val(&self) -> &[u32] {
        &self.f_val
    }

    /// `A_n` from the last method-I call; meaningful on [`argmax_set`](Self::argmax_set) only.
    pub fn a_val(&self) -> &[u32] {
        &self.a_val
    }

    /// `𝒮` from the last method-I call (empty when `F* = 0`).
    pub fn argmax_set(&self) -> &[usize] {
        &self.argmax
    }

    /// Operation tally inputs of the last call.
    pub fn cost(&self) -> Step2Cost {
        self.cost
    }

    pub fn group(&self) -> &[usize] {
        &self.group
    }

    fn begin(&mut self, code: &ParityCheckCode, state: &DecoderState, unupdated: &[usize]) {
        let ucn = state.unsatisfied();
        self.cost = Step2Cost {
            ucn_degree_sum: ucn.iter().map(|&m| code.check_deg(m) as u64).sum(),
            ucn_open_degree_sum: ucn
                .iter()
                .map(|&m| {
                    code.check_vars(m)
                        .iter()
                        .filter(|&&n| !state.is_updated(n))
                        .count() as u64
                })
                .sum(),
            ucn_count: ucn.len() as u64,
            unupdated: unupdated.len() as u64,
            f_credits: 0,
            argmax_set: None,
        };
        self.group.clear();
    }

    fn take_remainder(&mut self, unupdated: &[usize], cap: usize) -> GroupKind {
        self.group
            .extend_from_slice(&unupdated[..cap.min(unupdated.len())]);
        GroupKind::Remainder
    }

    /// Adaptive grouping method II over the unupdated set `unupdated`
    /// (ascending). Returns the kind of group formed; the members are in
    /// [`group`](Self::group).
    #[allow(clippy::too_many_arguments)]
    pub fn method_2<R: Rng + ?Sized>(
        &mut self,
        code: &ParityCheckCode,
        state: &DecoderState,
        unupdated: &[usize],
        delta: u32,
        cap: usize,
        tie: TieBreak,
        rng: &mut R,
    ) -> GroupKind {
        self.begin(code, state, unupdated);
        let mut best = 0u32;
        self.candidates.clear();
        for &n in unupdated {
            let e = self.e(state, n);
            if e > best {
                best = e;
                self.candidates.clear();
            }
            if e == best {
                self.candidates.push(n);
            }
        }
        if best < delta {
            return self.take_remainder(unupdated, cap);
        }
        self.select(code, cap, tie, rng);
        GroupKind::Selected
    }

    /// Adaptive grouping method I over the unupdated set `unupdated`
    /// (ascending).
    #[allow(clippy::too_many_arguments)]
    pub fn method_1<R: Rng + ?Sized>(
        &mut self,
        code: &ParityCheckCode,
        state: &DecoderState,
        unupdated: &[usize],
        eta: u32,
        cap: usize,
        tie: TieBreak,
        rng: &mut R,
    ) -> GroupKind {
        self.begin(code, state, unupdated);
        for &n in &self.touched {
            self.f_val[n] = 0;
        }
        self.touched.clear();
        self.argmax.clear();

        // F_n: each unsatisfied check credits its unupdated E-maximizers.
        for &m in state.unsatisfied() {
            let vars = code.check_vars(m);
            let max = vars.iter().map(|&n| self.e(state, n)).max().unwrap_or(0);
            if max < eta {
                continue;
            }
            for &n in vars {
                if !state.is_updated(n) && self.e(state, n) == max {
                    if self.f_val[n] == 0 {
                        self.touched.push(n);
                    }
                    self.f_val[n] += 1;
                    self.cost.f_credits += 1;
                }
            }
        }
        let f_star = self
            .touched
            .iter()
            .map(|&n| self.f_val[n])
            .max()
            .unwrap_or(0);
        if f_star == 0 {
            return self.take_remainder(unupdated, cap);
        }
        self.argmax.extend(
            self.touched
                .iter()
                .copied()
                .filter(|&n| self.f_val[n] == f_star),
        );
        self.argmax.sort_unstable();

        // A_n over 𝒮 via T_m = ⊕ BSGN(m^v) over 𝒩(m).
        let mut a_star = 0;
        let mut deg_sum = 0;
        for &n in &self.argmax {
            let own = state.llr_bit(n);
            let mut count = 0;
            for &e in code.var_edges(n) {
                let m = code.edge_check(e);
                let t = code
                    .check_edges(m)
                    .fold(0u8, |acc, e2| acc ^ state.v2c_bit(e2));
                self.check_sign_xor[m] = t;
                if t ^ state.v2c_bit(e) ^ own == 1 {
                    count += 1;
                }
            }
            let a = self.omega.at(n, count);
            self.a_val[n] = a;
            a_star = a_star.max(a);
            deg_sum += code.var_deg(n) as u64;
        }
        self.cost.argmax_set = Some((self.argmax.len() as u64, deg_sum));

        self.candidates.clear();
        self.candidates.extend(
            self.argmax
                .iter()
                .copied()
                .filter(|&n| self.a_val[n] == a_star),
        );
        self.select(code, cap, tie, rng);
        GroupKind::Selected
    }

    // Repeatedly admits a candidate and drops every candidate sharing a check
    // with it, until none remain or the cap is reached.
    fn select<R: Rng + ?Sized>(
        &mut self,
        code: &ParityCheckCode,
        cap: usize,
        tie: TieBreak,
        rng: &mut R,
    ) {
        if tie == TieBreak::SeededUniform {
            self.candidates.shuffle(rng);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.blocked.fill(0);
            self.stamp = 1;
        }
        for &c in &self.candidates {
            if self.blocked[c] == self.stamp {
                continue;
            }
            self.group.push(c);
            if self.group.len() == cap {
                break;
            }
            for &m in code.var_checks(c) {
                for &n in code.check_vars(m) {
                    self.blocked[n] = self.stamp;
                }
            }
        }
        self.group.sort_unstable();
    }

    /// Compares the incrementally maintained metrics with a from-scratch
    /// evaluation. Panics on the first disagreement.
    pub fn cross_check(
        &self,
        code: &ParityCheckCode,
        state: &DecoderState,
        method_1: bool,
        eta: u32,
    ) {
        assert_eq!(
            state.syndrome(),
            &code.syndrome(state.hard())[..],
            "syndrome out of step with hard decisions"
        );
        let e_ref = metrics::compute_e(code, state.syndrome(), &self.omega);
        for (n, &e) in e_ref.iter().enumerate() {
            assert_eq!(self.e(state, n), e, "E_{n} mismatch");
        }
        if method_1 {
            let f_ref = metrics::compute_f(code, state.syndrome(), &e_ref, eta);
            for n in (0..code.n_vars()).filter(|&n| !state.is_updated(n)) {
                assert_eq!(self.f_val[n], f_ref[n], "F_{n} mismatch");
            }
            let a_ref = metrics::compute_a(code, state, &self.omega, &self.argmax);
            for (&n, &a) in self.argmax.iter().zip(&a_ref) {
                assert_eq!(self.a_val[n], a, "A_{n} mismatch");
            }
        }
    }
}
