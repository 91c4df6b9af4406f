//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
//! failure status if any criterion fails.
//!
//! ```shell
//! cargo test --release -p agsldpc --test acceptance
//! ```

mod common;

use std::process::ExitCode;
use std::time::Instant;

use agsldpc::channel::{snr_to_sigma2, ChannelObservation};
use agsldpc::code::ParityCheckCode;
use agsldpc::decoder::{c2v_bp, c2v_ms, phi, DecoderState, Kernel, PHI_FLOOR};
use agsldpc::ops::{count_basic, IterationProfile, OpCounters};
use agsldpc::schedule::metrics::{compute_a, compute_a_decision_signs, compute_e, compute_f};
use agsldpc::schedule::{
    decode_with, DecodeOptions, DecodeResult, DecoderName, GroupKind, OmegaTable, SchedulerParams,
    Variant,
};
use agsldpc::sim::{run_sweep, NoisePoints, PointResult, SimConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bundled, regular_1008};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 basic complexity per iteration", basic_complexity),
        ("2 decision-sign identity A = E", decision_sign_identity),
        ("3 invariant suite", invariant_suite),
        (
            "4 noiseless decode and termination",
            noiseless_and_termination,
        ),
        ("5 FER ordering at 2.0 and 2.25 dB", fer_ordering),
        ("6 mean iterations at 2.5 dB", convergence_speed),
        ("7 extra complexity at 2.75 dB", extra_complexity),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {name} ({:.1}s)",
            start.elapsed().as_secs_f64()
        );
        for line in o.detail.lines() {
            println!("    {line}");
        }
        if !o.pass {
            failed += 1;
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn basic_complexity() -> Outcome {
    let code = regular_1008();
    let bp = count_basic(&code, Kernel::Bp);
    let ms = count_basic(&code, Kernel::Ms);
    let pass = (bp.real_add, bp.real_cmp, bp.phi_eval) == (18_144, 0, 18_144)
        && (ms.real_add, ms.real_cmp, ms.phi_eval) == (6_048, 12_096, 0);
    Outcome::new(
        pass,
        format!(
            "BP add {} cmp {} phi {}; MS add {} cmp {} phi {}",
            bp.real_add, bp.real_cmp, bp.phi_eval, ms.real_add, ms.real_cmp, ms.phi_eval
        ),
    )
}

/// A decoder state after a random number of random group updates.
fn random_state(code: &ParityCheckCode, rng: &mut ChaCha8Rng) -> DecoderState {
    let n = code.n_vars();
    let sigma2 = snr_to_sigma2(rng.random_range(-1.0..3.0), code.rate()).unwrap();
    let obs =
        ChannelObservation::all_zero_frame(n, sigma2, rng.random(), rng.random_range(0..1000))
            .unwrap();
    let kernel = if rng.random() { Kernel::Bp } else { Kernel::Ms };
    let mut st = DecoderState::new(code, obs.channel_llr(), kernel, rng.random()).unwrap();
    let mut c = OpCounters::default();
    for _ in 0..rng.random_range(0..4) {
        st.begin_iteration();
        let p = rng.random_range(0.05..1.0);
        let group: Vec<usize> = (0..n).filter(|_| rng.random_bool(p)).collect();
        st.update_group(code, &group, &mut c).unwrap();
    }
    st
}

fn decision_sign_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut states = 0;
    let mut mismatches = 0;
    for (_, code) in bundled() {
        let om = OmegaTable::new(&code);
        let all: Vec<usize> = (0..code.n_vars()).collect();
        for _ in 0..340 {
            let st = random_state(&code, &mut rng);
            let e = compute_e(&code, st.syndrome(), &om);
            let a = compute_a_decision_signs(&code, st.hard(), &om, &all);
            mismatches += e.iter().zip(&a).filter(|(x, y)| x != y).count();
            states += 1;
        }
    }
    Outcome::new(
        mismatches == 0,
        format!("{states} states, {mismatches} mismatching variables"),
    )
}

fn shares_check(code: &ParityCheckCode, a: usize, b: usize) -> bool {
    code.var_checks(a)
        .iter()
        .any(|m| code.var_checks(b).contains(m))
}

/// Partition, non-adjacency and cap violations in a traced decode.
fn trace_violations(code: &ParityCheckCode, cap: usize, r: &DecodeResult) -> Vec<String> {
    let n = code.n_vars();
    let mut out = Vec::new();
    for l in 1..=r.iterations {
        let mut seen = vec![0u32; n];
        for g in r.trace.iter().filter(|g| g.iteration == l) {
            if g.members.is_empty() {
                out.push(format!("empty group in iteration {l}"));
            }
            if g.members.len() > cap {
                out.push(format!("group of {} exceeds cap {cap}", g.members.len()));
            }
            for &v in &g.members {
                seen[v] += 1;
            }
            if g.kind == GroupKind::Selected {
                for (i, &a) in g.members.iter().enumerate() {
                    if g.members[i + 1..].iter().any(|&b| shares_check(code, a, b)) {
                        out.push(format!(
                            "selected group in iteration {l} has adjacent members"
                        ));
                        break;
                    }
                }
            }
        }
        if seen.iter().any(|&s| s != 1) {
            out.push(format!("iteration {l} is not a partition"));
        }
    }
    out
}

fn params_with_groups(d: DecoderName, code: &ParityCheckCode, g: usize) -> SchedulerParams {
    let mut p = d.params_for(code);
    if p.variant == Variant::GsStatic {
        p.group_count = g;
    }
    p
}

fn invariant_suite() -> Outcome {
    let mut problems: Vec<String> = Vec::new();
    let mut detail = Vec::new();

    // φ involution on a log grid.
    let (lo, hi) = (PHI_FLOOR.ln(), 20f64.ln());
    let worst = (0..=10_000)
        .map(|i| (lo + (hi - lo) * i as f64 / 10_000.0).exp())
        .map(|x| (phi(phi(x)) - x).abs() / x)
        .fold(0.0, f64::max);
    if worst > 1e-9 {
        problems.push(format!("phi involution error {worst:e}"));
    }
    detail.push(format!("phi involution max relative error {worst:.2e}"));

    // Kernel properties over random message sets.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let msg = |rng: &mut ChaCha8Rng| {
        let v = 10f64.powf(rng.random_range(-3.0..1.3));
        if rng.random() {
            -v
        } else {
            v
        }
    };
    let mut dominance = 0;
    let mut degree_two = 0;
    for _ in 0..10_000 {
        let k = rng.random_range(1..12);
        let v: Vec<f64> = (0..k).map(|_| msg(&mut rng)).collect();
        if c2v_ms(&v).abs() < c2v_bp(&v).abs() * (1.0 - 1e-9) {
            dominance += 1;
        }
        let x = [msg(&mut rng)];
        if (c2v_bp(&x) - c2v_ms(&x)).abs() > 1e-9 * x[0].abs() {
            degree_two += 1;
        }
    }
    if dominance + degree_two > 0 {
        problems.push(format!(
            "{dominance} dominance and {degree_two} degree-2 violations"
        ));
    }
    detail.push("min-sum dominance and degree-2 equivalence over 1e4 draws".into());

    // Metric ranges and edge identity on random states.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut edge_err: f64 = 0.0;
    for (name, code) in bundled() {
        let om = OmegaTable::new(&code);
        let dmax = code.max_var_deg() as u32;
        let all: Vec<usize> = (0..code.n_vars()).collect();
        for _ in 0..30 {
            let st = random_state(&code, &mut rng);
            let e = compute_e(&code, st.syndrome(), &om);
            let f = compute_f(&code, st.syndrome(), &e, 1);
            let a = compute_a(&code, &st, &om, &all);
            for n in 0..code.n_vars() {
                if e[n] > dmax || a[n] > dmax || f[n] as usize > code.var_deg(n) {
                    problems.push(format!("{name}: metric out of range at variable {n}"));
                }
                if st.iteration() > 0 {
                    for &edge in code.var_edges(n) {
                        edge_err = edge_err
                            .max((st.v2c()[edge] + st.c2v()[edge] - st.total_llr()[n]).abs());
                    }
                }
            }
        }
    }
    if edge_err > 1e-9 {
        problems.push(format!("edge identity error {edge_err:e}"));
    }
    detail.push(format!(
        "metric ranges ok on 90 states; edge identity max error {edge_err:.2e}"
    ));

    // Traced decodes: partition, non-adjacency, cap, determinism.
    let mut decodes = 0;
    let mut max_wifi_group = 0;
    for (name, code) in bundled() {
        let sigma2 = snr_to_sigma2(1.25, code.rate()).unwrap();
        for d in DecoderName::ALL {
            let p = params_with_groups(d, &code, 8);
            let cap = p
                .max_group_size
                .filter(|_| p.variant.is_adaptive())
                .unwrap_or(code.n_vars());
            for frame in 0..4 {
                let obs =
                    ChannelObservation::all_zero_frame(code.n_vars(), sigma2, SEED, frame).unwrap();
                let opts = DecodeOptions {
                    trace: true,
                    cross_check: frame == 0,
                };
                let r = decode_with(&code, &obs, &p, opts).unwrap();
                for v in trace_violations(&code, cap, &r) {
                    problems.push(format!("{name} {d} frame {frame}: {v}"));
                }
                if name == "wifi1944" && p.variant.is_adaptive() {
                    max_wifi_group = max_wifi_group
                        .max(r.trace.iter().map(|g| g.members.len()).max().unwrap_or(0));
                }
                if decode_with(&code, &obs, &p, opts).unwrap() != r {
                    problems.push(format!("{name} {d} frame {frame}: repeat decode differs"));
                }
                decodes += 1;
            }
        }
    }
    if max_wifi_group > 648 {
        problems.push(format!("WiFi group of {max_wifi_group}"));
    }
    detail.push(format!(
        "{decodes} traced decodes checked for partition, non-adjacency, cap and determinism; largest WiFi group {max_wifi_group}"
    ));

    let pass = problems.is_empty();
    detail.extend(problems.into_iter().take(20));
    Outcome::new(pass, detail.join("\n"))
}

fn noiseless_and_termination() -> Outcome {
    let mut problems = Vec::new();
    let mut decodes = 0;
    for (name, code) in bundled() {
        let n = code.n_vars();
        for d in DecoderName::ALL {
            for g in [4, 8, 16] {
                let p = params_with_groups(d, &code, g);
                let obs = ChannelObservation::new(vec![1.0; n], 1e-3).unwrap();
                let r = decode_with(&code, &obs, &p, DecodeOptions::default()).unwrap();
                if !(r.converged && r.iterations == 1 && r.bit_errors_vs_zero() == 0) {
                    problems.push(format!(
                        "{name} {d}: noiseless frame took {} iterations",
                        r.iterations
                    ));
                }
                let sigma2 = snr_to_sigma2(0.5, code.rate()).unwrap();
                for frame in 0..3 {
                    let obs = ChannelObservation::all_zero_frame(n, sigma2, SEED, frame).unwrap();
                    let opts = DecodeOptions {
                        trace: true,
                        cross_check: false,
                    };
                    let r = decode_with(&code, &obs, &p, opts).unwrap();
                    let groups_ok = trace_violations(&code, n, &r).is_empty();
                    if r.iterations > p.max_iter || r.ops.len() != r.iterations || !groups_ok {
                        problems.push(format!("{name} {d} frame {frame}: bad termination"));
                    }
                    decodes += 1;
                }
                if p.variant != Variant::GsStatic {
                    break;
                }
            }
        }
    }
    let mut detail =
        format!("noiseless frames on every code and variant; {decodes} noisy decodes at 0.5 dB");
    for p in problems.iter().take(20) {
        detail.push('\n');
        detail.push_str(p);
    }
    Outcome::new(problems.is_empty(), detail)
}

fn point(
    code: &ParityCheckCode,
    params: SchedulerParams,
    snr: f64,
    frames: u64,
    count_ops: bool,
) -> PointResult {
    let mut cfg = SimConfig::new(params, NoisePoints::EbN0Db(vec![snr]));
    cfg.frames = frames;
    cfg.max_errors = None;
    cfg.seed = SEED;
    cfg.count_ops = count_ops;
    run_sweep(code, &cfg).unwrap().remove(0)
}

fn fer_ordering() -> Outcome {
    const FRAMES: u64 = 50_000;
    let code = regular_1008();
    let mut pass = true;
    let mut detail = Vec::new();
    for snr in [2.0, 2.25] {
        for (gs, ags) in [
            (
                DecoderName::Gsbp,
                [DecoderName::Agsbp1, DecoderName::Agsbp2],
            ),
            (
                DecoderName::Gsms,
                [DecoderName::Agsms1, DecoderName::Agsms2],
            ),
        ] {
            let (best_g, best) = [4, 8, 16]
                .into_iter()
                .map(|g| {
                    (
                        g,
                        point(&code, params_with_groups(gs, &code, g), snr, FRAMES, false),
                    )
                })
                .min_by(|a, b| a.1.fer().total_cmp(&b.1.fer()))
                .unwrap();
            for d in ags {
                let r = point(&code, d.params_for(&code), snr, FRAMES, false);
                let margin = best.fer() - r.fer();
                let se = (best.fer_std_error().powi(2) + r.fer_std_error().powi(2)).sqrt();
                let ok = margin > 2.0 * se;
                pass &= ok;
                detail.push(format!(
                    "{snr} dB: {d} FER {:.3e} vs {gs} (G={best_g}) {:.3e}; margin {:.2e}, 2 SE {:.2e} {}",
                    r.fer(),
                    best.fer(),
                    margin,
                    2.0 * se,
                    if ok { "ok" } else { "NOT MET" }
                ));
            }
        }
    }
    Outcome::new(pass, detail.join("\n"))
}

fn convergence_speed() -> Outcome {
    const FRAMES: u64 = 10_000;
    let code = regular_1008();
    let mut detail = Vec::new();
    let mut gs_best = f64::INFINITY;
    for g in [4, 8, 16] {
        let r = point(
            &code,
            params_with_groups(DecoderName::Gsbp, &code, g),
            2.5,
            FRAMES,
            false,
        );
        detail.push(format!(
            "gsbp G={g}: mean iterations {:.4}",
            r.mean_iterations()
        ));
        gs_best = gs_best.min(r.mean_iterations());
    }
    let mut pass = true;
    for d in [DecoderName::Agsbp1, DecoderName::Agsbp2] {
        let r = point(&code, d.params_for(&code), 2.5, FRAMES, false);
        let ok = r.mean_iterations() <= gs_best;
        pass &= ok;
        detail.push(format!(
            "{d}: mean iterations {:.4} {}",
            r.mean_iterations(),
            if ok { "ok" } else { "NOT MET" }
        ));
    }
    Outcome::new(pass, detail.join("\n"))
}

/// Extra-complexity entries `(AD, CP)` at 2.75 dB, in thousands, for
/// iterations 5, 10, 15 and 20.
const TABLE_275: [(DecoderName, [(f64, f64); 4]); 4] = [
    (
        DecoderName::Agsbp1,
        [(0.31, 5.16), (1.85, 13.8), (4.75, 26.0), (4.71, 27.3)],
    ),
    (
        DecoderName::Agsbp2,
        [(0.13, 4.97), (0.95, 14.6), (1.91, 22.7), (1.90, 24.1)],
    ),
    (
        DecoderName::Agsms1,
        [(0.65, 6.89), (3.97, 21.2), (7.04, 33.2), (8.33, 37.3)],
    ),
    (
        DecoderName::Agsms2,
        [(0.19, 3.85), (0.52, 4.87), (1.13, 6.46), (1.18, 6.82)],
    ),
];
const TABLE_ITERS: [usize; 4] = [5, 10, 15, 20];
const EXTRA_FRAMES: u64 = 200_000;

fn extra_complexity() -> Outcome {
    let code = regular_1008();
    let mut pass = true;
    let mut detail = Vec::new();
    let mut profiles: Vec<(DecoderName, IterationProfile)> = Vec::new();
    for (d, expected) in TABLE_275 {
        let profile = point(&code, d.params_for(&code), 2.75, EXTRA_FRAMES, true).profile;
        let mut cells = Vec::new();
        for (&l, &(ad, cp)) in TABLE_ITERS.iter().zip(&expected) {
            match profile.mean_extra(l) {
                Some((a, c)) => {
                    let (a, c) = (a / 1000.0, c / 1000.0);
                    let within = |got: f64, want: f64| got <= 3.0 * want && got >= want / 3.0;
                    let ok = within(a, ad) && within(c, cp);
                    pass &= ok;
                    cells.push(format!(
                        "l={l} AD {a:.2} ({ad}) CP {c:.2} ({cp}) n={}{}",
                        profile.frames_at(l),
                        if ok { "" } else { " NOT MET" }
                    ));
                }
                None => {
                    pass = false;
                    cells.push(format!("l={l} no frame reached this iteration NOT MET"));
                }
            }
        }
        detail.push(format!("{d}: {}", cells.join("; ")));
        profiles.push((d, profile));
    }
    let cp15 = |d: DecoderName| {
        profiles
            .iter()
            .find(|(x, _)| *x == d)
            .and_then(|(_, p)| p.mean_extra(15))
            .map(|(_, c)| c)
    };
    match (cp15(DecoderName::Agsbp1), cp15(DecoderName::Agsms2)) {
        (Some(a), Some(b)) => {
            let ok = a >= 2.0 * b;
            pass &= ok;
            detail.push(format!(
                "CP at l=15: agsbp1 {a:.0} vs agsms2 {b:.0}, ratio {:.2} {}",
                a / b,
                if ok { "ok" } else { "NOT MET" }
            ));
        }
        _ => {
            pass = false;
            detail.push("CP at l=15 not estimable for agsbp1 or agsms2 NOT MET".into());
        }
    }
    detail.push(format!(
        "{EXTRA_FRAMES} frames per decoder; reference values in parentheses, thousands"
    ));
    Outcome::new(pass, detail.join("\n"))
}
