#![allow(dead_code)]

use std::path::{Path, PathBuf};

use agsldpc::code::ParityCheckCode;
use agsldpc::sim::CodeSource;
use proptest::prelude::*;

pub fn codes_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("codes")
}

pub fn regular_1008() -> ParityCheckCode {
    CodeSource::Alist(codes_dir().join("regular_1008_504_3_6.alist"))
        .load()
        .unwrap()
}

pub fn regular_816() -> ParityCheckCode {
    CodeSource::Alist(codes_dir().join("regular_816_544_4_6.alist"))
        .load()
        .unwrap()
}

pub fn wifi_1944() -> ParityCheckCode {
    CodeSource::Qc {
        base: codes_dir().join("wifi_1944_r12.qc"),
        z: None,
    }
    .load()
    .unwrap()
}

pub fn bundled() -> Vec<(&'static str, ParityCheckCode)> {
    vec![
        ("1008x504", regular_1008()),
        ("816x544", regular_816()),
        ("wifi1944", wifi_1944()),
    ]
}

/// Random irregular codes with every node of degree at least one.
pub fn arb_code() -> impl Strategy<Value = ParityCheckCode> {
    (6usize..40, 0.2f64..0.7, any::<u64>()).prop_map(|(n, ratio, seed)| {
        use rand::seq::index::sample;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = ((n as f64 * ratio) as usize).max(2);
        let mut checks: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let d = rng.random_range(2..=6.min(n));
                sample(&mut rng, n, d).into_vec()
            })
            .collect();
        for v in 0..n {
            if !checks.iter().any(|c| c.contains(&v)) {
                let m0 = rng.random_range(0..m);
                checks[m0].push(v);
            }
        }
        ParityCheckCode::from_checks(n, checks).unwrap()
    })
}
