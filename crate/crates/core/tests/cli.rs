mod common;

use std::fs;
use std::process::{Command, Output};

use agsldpc::sim::CSV_HEADER;

use common::codes_dir;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agsldpc"))
        .args(args)
        .output()
        .unwrap()
}

fn alist() -> String {
    codes_dir()
        .join("regular_1008_504_3_6.alist")
        .display()
        .to_string()
}

#[test]
fn sweep_to_file_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fer.csv");
    let trace = dir.path().join("trace.txt");
    let args = [
        "--code",
        &alist(),
        "--decoder",
        "agsbp2",
        "--snr",
        "1.5,2",
        "--frames",
        "40",
        "--seed",
        "5",
        "--count-ops",
        "--out",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ];
    let o = cli(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let first = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    let cols: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cols.len(), 11);
    assert_eq!(cols[0], "1.5");
    assert_eq!(cols[10], "5");
    assert!(!cols[8].is_empty());

    let t = fs::read_to_string(&trace).unwrap();
    assert!(t.starts_with("# snr_db 1.5 frame 0\n"));
    let first_group: Vec<usize> = t
        .lines()
        .nth(1)
        .unwrap()
        .split(' ')
        .map(|x| x.parse().unwrap())
        .collect();
    assert_eq!(&first_group[..2], &[1, 1]);
    assert_eq!(first_group[2], first_group.len() - 3);

    assert!(cli(&args).status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn qc_code_and_sigma2_to_stdout() {
    let base = codes_dir().join("wifi_1944_r12.qc");
    let o = cli(&[
        "--qc",
        base.to_str().unwrap(),
        "--z",
        "96",
        "--decoder",
        "gsms",
        "--groups",
        "4",
        "--sigma2",
        "0.01",
        "--frames",
        "3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = String::from_utf8(o.stdout).unwrap();
    let row: Vec<&str> = s.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[1], "0.01");
    assert_eq!(&row[2..4], &["3", "0"]);
    assert_eq!(row[8], "");
}

#[test]
fn usage_errors() {
    let a = alist();
    assert!(!cli(&[
        "--code",
        &a,
        "--decoder",
        "gsbp",
        "--snr",
        "1",
        "--frames",
        "1"
    ])
    .status
    .success());
    assert!(!cli(&["--code", &a, "--decoder", "nope", "--snr", "1"])
        .status
        .success());
    assert!(!cli(&["--code", &a]).status.success());
    assert!(!cli(&["--snr", "1"]).status.success());
    assert!(!cli(&["--code", &a, "--snr", "1", "--frames", "0"])
        .status
        .success());
    assert!(!cli(&["--code", "/nonexistent", "--snr", "1"])
        .status
        .success());
}
