//! Regenerates the bundled regular codes in `codes/`.
//!
//! ```shell
//! cargo run --release -p agsldpc --example generate_codes
//! ```
//!
//! Both are progressive-edge-growth constructions with the length, rate and
//! degree profile of the corresponding MacKay database codes. A genuine
//! MacKay alist file can be used anywhere these are.

use std::fs;
use std::path::Path;

use agsldpc::construct::{girth, regular_peg};

/// `(file, N, M, dv, dc, first seed)`.
const CODES: [(&str, usize, usize, usize, usize, u64); 2] = [
    ("regular_1008_504_3_6.alist", 1008, 504, 3, 6, 504),
    ("regular_816_544_4_6.alist", 816, 544, 4, 6, 816),
];

/// Seeds are tried in order until the graph has no 4-cycles.
const MIN_GIRTH: usize = 6;

fn main() -> anyhow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("codes");
    for (file, n, m, dv, dc, seed) in CODES {
        let mut seed = seed;
        let code = loop {
            let code = regular_peg(n, m, dv, dc, seed)?;
            if girth(&code).is_none_or(|g| g >= MIN_GIRTH) {
                break code;
            }
            seed += 1000;
        };
        let path = dir.join(file);
        fs::write(&path, code.to_alist())?;
        println!(
            "{}: N={} M={} seed={} girth={:?}",
            path.display(),
            code.n_vars(),
            code.n_checks(),
            seed,
            girth(&code)
        );
    }
    Ok(())
}
