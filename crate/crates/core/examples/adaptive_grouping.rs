//! Drives the adaptive grouping by hand on a toy code: metrics, the chosen
//! group, and the effect of one group update.
//!
//! ```shell
//! cargo run --release -p agsldpc --example adaptive_grouping
//! ```

use agsldpc::code::ParityCheckCode;
use agsldpc::decoder::{DecoderState, Kernel};
use agsldpc::ops::OpCounters;
use agsldpc::schedule::metrics::{compute_a, compute_e, compute_f};
use agsldpc::schedule::{MetricScratch, OmegaTable, TieBreak};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anyhow::Result<()> {
    let code = ParityCheckCode::from_checks(
        6,
        vec![vec![0, 1, 3], vec![1, 2, 4], vec![0, 4, 5], vec![2, 3, 5]],
    )?;
    // Variable 0 starts on the wrong side.
    let llr = [-0.9, 1.4, 0.6, 1.1, 2.2, 0.8];
    let mut state = DecoderState::new(&code, &llr, Kernel::Bp, 0)?;
    let omega = OmegaTable::new(&code);
    let mut scratch = MetricScratch::new(&code);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let eta = 1;

    state.begin_iteration();
    let mut unupdated: Vec<usize> = (0..code.n_vars()).collect();
    let mut sub = 0;
    while !unupdated.is_empty() {
        sub += 1;
        let e = compute_e(&code, state.syndrome(), &omega);
        let f = compute_f(&code, state.syndrome(), &e, eta);
        let a = compute_a(&code, &state, &omega, &unupdated);
        println!(
            "sub-iteration {sub}: unsatisfied checks {:?}",
            state.unsatisfied()
        );
        println!("  E {e:?}");
        println!("  F {f:?}");
        println!(
            "  A over unupdated {:?}",
            unupdated.iter().zip(&a).collect::<Vec<_>>()
        );

        let kind = scratch.method_1(
            &code,
            &state,
            &unupdated,
            eta,
            code.n_vars(),
            TieBreak::LowestIndex,
            &mut rng,
        );
        let group = scratch.group().to_vec();
        let cost = scratch.cost().method_1();
        println!(
            "  {kind:?} group {group:?}, extra ops add {} cmp {}",
            cost.int_add, cost.int_cmp
        );

        let mut counters = OpCounters::default();
        state.update_group(&code, &group, &mut counters)?;
        println!("  hard decisions now {:?}\n", state.hard());
        unupdated.retain(|&n| !state.is_updated(n));
    }
    println!("codeword after one iteration: {}", state.is_codeword());
    Ok(())
}
