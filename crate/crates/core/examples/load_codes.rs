//! Loads the bundled codes and prints their structure.
//!
//! ```shell
//! cargo run --release -p agsldpc --example load_codes
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use agsldpc::code::ParityCheckCode;
use agsldpc::construct::girth;
use agsldpc::schedule::KnownCode;
use agsldpc::sim::CodeSource;

fn degree_profile(degs: impl Iterator<Item = usize>) -> String {
    let mut hist = BTreeMap::new();
    for d in degs {
        *hist.entry(d).or_insert(0usize) += 1;
    }
    hist.iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe(name: &str, code: &ParityCheckCode) {
    println!("{name}");
    println!(
        "  N={} M={} K={} rate={:.3} edges={}",
        code.n_vars(),
        code.n_checks(),
        code.dimension(),
        code.rate(),
        code.n_edges()
    );
    println!(
        "  variable degrees {}",
        degree_profile((0..code.n_vars()).map(|n| code.var_deg(n)))
    );
    println!(
        "  check degrees    {}",
        degree_profile((0..code.n_checks()).map(|m| code.check_deg(m)))
    );
    println!(
        "  girth {:?}, tuned profile {:?}",
        girth(code),
        KnownCode::identify(code)
    );
}

fn main() -> anyhow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("codes");
    for file in ["regular_1008_504_3_6.alist", "regular_816_544_4_6.alist"] {
        describe(file, &CodeSource::Alist(dir.join(file)).load()?);
    }
    let wifi = CodeSource::Qc {
        base: dir.join("wifi_1944_r12.qc"),
        z: None,
    };
    describe("wifi_1944_r12.qc", &wifi.load()?);

    // The same base matrix with a larger lifting size.
    let lifted = CodeSource::Qc {
        base: dir.join("wifi_1944_r12.qc"),
        z: Some(96),
    };
    describe("wifi_1944_r12.qc with z=96", &lifted.load()?);

    // Codes can also be built from check adjacency and written back as alist.
    let toy = ParityCheckCode::from_checks(
        6,
        vec![vec![0, 1, 3], vec![1, 2, 4], vec![0, 4, 5], vec![2, 3, 5]],
    )?;
    print!("\ntoy code as alist:\n{}", toy.to_alist());
    Ok(())
}
