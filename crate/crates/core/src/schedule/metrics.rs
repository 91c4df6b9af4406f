//! Integer reliability metrics, evaluated from scratch.
//!
//! These are the reference definitions. The grouping methods keep the same
//! quantities up to date from the decoder's incremental syndrome bookkeeping;
//! [`DecodeOptions::cross_check`](super::DecodeOptions) compares the two.

use thiserror::Error;

use crate::code::ParityCheckCode;
use crate::decoder::DecoderState;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("count {x} exceeds the degree {deg} of variable {n}")]
    CountOutOfRange { n: usize, x: usize, deg: usize },
}

/// Look-up table of `Ω_n(x) = ⌊x · d^v_max / d^v(n)⌋` for `x ∈ [0, d^v(n)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    offsets: Vec<usize>,
    values: Vec<u32>,
}

impl OmegaTable {
    pub fn new(code: &ParityCheckCode) -> Self {
        let dmax = code.max_var_deg();
        let mut offsets = Vec::with_capacity(code.n_vars() + 1);
        let mut values = Vec::new();
        for n in 0..code.n_vars() {
            offsets.push(values.len());
            let d = code.var_deg(n);
            for x in 0..=d {
                values.push((x * dmax).checked_div(d).unwrap_or(0) as u32);
            }
        }
        offsets.push(values.len());
        Self { offsets, values }
    }

    pub fn omega(&self, n: usize, x: usize) -> Result<u32, MetricError> {
        let deg = self.offsets[n + 1] - self.offsets[n] - 1;
        if x > deg {
            return Err(MetricError::CountOutOfRange { n, x, deg });
        }
        Ok(self.values[self.offsets[n] + x])
    }

    #[inline]
    pub(crate) fn at(&self, n: usize, x: usize) -> u32 {
        self.values[self.offsets[n] + x]
    }
}

/// `E_n = Ω_n(Σ_{m ∈ ℳ(n)} s_m)` for every variable, accumulated by letting
/// each unsatisfied check increment its neighbours.
pub fn compute_e(code: &ParityCheckCode, syndrome: &[u8], omega: &OmegaTable) -> Vec<u32> {
    let mut count = vec![0usize; code.n_vars()];
    for (m, &s) in syndrome.iter().enumerate() {
        if s == 1 {
            for &n in code.check_vars(m) {
                count[n] += 1;
            }
        }
    }
    count
        .iter()
        .enumerate()
        .map(|(n, &x)| omega.at(n, x))
        .collect()
}

/// `F_n = Σ_{m ∈ ℳ(n)} q_mn s_m` where `q_mn = 1` iff `E_n` attains the
/// maximum of `E` over `𝒩(m)` and `E_n ≥ η`. `e` must cover all variables.
pub fn compute_f(code: &ParityCheckCode, syndrome: &[u8], e: &[u32], eta: u32) -> Vec<u32> {
    let mut f = vec![0u32; code.n_vars()];
    for (m, &s) in syndrome.iter().enumerate() {
        if s == 0 {
            continue;
        }
        let max = code.check_vars(m).iter().map(|&n| e[n]).max().unwrap_or(0);
        for &n in code.check_vars(m) {
            if e[n] == max && e[n] >= eta {
                f[n] += 1;
            }
        }
    }
    f
}

/// `A_n = Ω_n(Σ_{m ∈ ℳ(n)} I^c_{m→n} ⊕ BSGN(L_n))` for each candidate, where
/// `I^c_{m→n}` is the XOR of the signs of the other messages into `m`. The
/// per-check aggregate `T_m` over all of `𝒩(m)` is formed once and the own
/// message's sign is removed.
pub fn compute_a(
    code: &ParityCheckCode,
    state: &DecoderState,
    omega: &OmegaTable,
    candidates: &[usize],
) -> Vec<u32> {
    let check_xor: Vec<u8> = (0..code.n_checks())
        .map(|m| {
            code.check_edges(m)
                .fold(0u8, |acc, e| acc ^ state.v2c_bit(e))
        })
        .collect();
    candidates
        .iter()
        .map(|&n| {
            let own = state.llr_bit(n);
            let count = code
                .var_edges(n)
                .iter()
                .filter(|&&e| {
                    let predicted = check_xor[code.edge_check(e)] ^ state.v2c_bit(e);
                    predicted ^ own == 1
                })
                .count();
            omega.at(n, count)
        })
        .collect()
}

/// [`compute_a`] with the message signs `BSGN(m^v_{n'→m})` replaced by the
/// decision signs `û_{n'} = BSGN(L_{n'})`, evaluated literally per excluded
/// neighbour.
pub fn compute_a_decision_signs(
    code: &ParityCheckCode,
    hard: &[u8],
    omega: &OmegaTable,
    candidates: &[usize],
) -> Vec<u32> {
    let bit = |n: usize| hard[n];
    candidates
        .iter()
        .map(|&n| {
            let own = bit(n);
            let count = code
                .var_checks(n)
                .iter()
                .filter(|&&m| {
                    let predicted = code
                        .check_vars(m)
                        .iter()
                        .filter(|&&v| v != n)
                        .fold(0u8, |acc, &v| acc ^ bit(v));
                    predicted ^ own == 1
                })
                .count();
            omega.at(n, count)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::Kernel;

    fn toy() -> ParityCheckCode {
        ParityCheckCode::from_checks(
            6,
            vec![vec![0, 1, 3], vec![1, 2, 4], vec![0, 4, 5], vec![2, 3, 5]],
        )
        .unwrap()
    }

    #[test]
    fn omega_map() {
        // Variable 0 has degree 3, variable 1 degree 4.
        let code =
            ParityCheckCode::from_checks(2, vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![1]])
                .unwrap();
        let om = OmegaTable::new(&code);
        assert_eq!(om.omega(0, 0), Ok(0));
        assert_eq!(om.omega(0, 2), Ok(2));
        assert_eq!(om.omega(0, 3), Ok(4));
        assert_eq!(om.omega(0, 1), Ok(1));
        assert_eq!(
            (0..=4).map(|x| om.omega(1, x).unwrap()).collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(
            om.omega(0, 4),
            Err(MetricError::CountOutOfRange { n: 0, x: 4, deg: 3 })
        );
    }

    #[test]
    fn toy_e_and_f() {
        let code = toy();
        let om = OmegaTable::new(&code);
        let s = [1, 0, 1, 0];
        let e = compute_e(&code, &s, &om);
        assert_eq!(e, vec![2, 1, 0, 1, 1, 1]);
        let f = compute_f(&code, &s, &e, 1);
        assert_eq!(f[0], 2);
        assert_eq!(f[1], 0);
        assert_eq!(f, vec![2, 0, 0, 0, 0, 0]);
        assert_eq!(compute_f(&code, &s, &e, 3), vec![0; 6]);
        assert_eq!(compute_e(&code, &[0; 4], &om), vec![0; 6]);
        assert_eq!(compute_f(&code, &[0; 4], &e, 0), vec![0; 6]);
    }

    #[test]
    fn a_endpoints() {
        let code = toy();
        let om = OmegaTable::new(&code);
        // All-positive state: every prediction agrees with L_n.
        let st = DecoderState::new(&code, &[1.0; 6], Kernel::Bp, 0).unwrap();
        assert_eq!(compute_a(&code, &st, &om, &[0, 1, 2, 3, 4, 5]), vec![0; 6]);
        // Single negative variable 0: its own neighbours see one disagreeing
        // sign on each check it shares with 0.
        let st = DecoderState::new(&code, &[-1.0, 1.0, 1.0, 1.0, 1.0, 1.0], Kernel::Bp, 0).unwrap();
        assert_eq!(
            compute_a(&code, &st, &om, &[0, 1, 2, 3, 4, 5]),
            vec![2, 1, 0, 1, 1, 1]
        );
        assert_eq!(
            compute_a_decision_signs(&code, st.hard(), &om, &[0, 1, 2, 3, 4, 5]),
            compute_e(&code, st.syndrome(), &om)
        );
    }
}
