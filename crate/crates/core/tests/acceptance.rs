//! Acceptance criteria. Each test writes one `criterion N: PASS|FAIL` line
//! straight to the stderr handle (not through `eprintln!`, which the test
//! harness captures) and then asserts the same verdict.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use codegraph::graph::recognize_threshold;
use codegraph::metric::{beta_bounds, general_bounds};
use codegraph::report::{sweep, Invariant, OracleMode, ReportOptions};
use codegraph::tau::TauResult;
use codegraph::*;

fn verdict(n: u32, pass: bool, detail: impl AsRef<str>) {
    let line = format!(
        "criterion {n}: {} {}\n",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    assert!(pass, "criterion {n} failed: {}", detail.as_ref());
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn oracle_beta(g: &Graph) -> u64 {
    exact_metric_dimension(g, &budget()).unwrap().beta
}

fn artifact(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn criterion_01_metric_dimension_worked_example() {
    let code = parse_code("0 1^2 0^3 1 0^2 1^2 0^3 1^4 0 1 0^3 1^4").unwrap();
    let ((t, c), elapsed) = timed(|| (beta_threshold(&code).value, beta_chain(&code).value));
    let pass = t == 18 && c == 17 && elapsed < Duration::from_millis(1);
    verdict(1, pass, format!("threshold {t} chain {c} in {elapsed:?}"));
}

#[test]
fn criterion_02_threshold_dimension_worked_example() {
    let (r, elapsed): (TauResult, _) = timed(|| tau_string(2359, 15).unwrap());
    let fits = |k: u32| 2359i64 - k as i64 <= (1i64 << k) - 1;
    let pass = r.value == Some(25) && r.witness_k == Some(11) && !fits(10) && elapsed < Duration::from_millis(1);
    verdict(
        2,
        pass,
        format!(
            "expected 25 with k = 11, got {:?} with k = {:?} in {elapsed:?} \
             (k = 10 fits: {}, k = 11 fits: {}, k = 12 fits: {})",
            r.value,
            r.witness_k,
            fits(10),
            fits(11),
            fits(12)
        ),
    );
}

#[test]
fn criterion_03_restricted_threshold_dimension_worked_examples() {
    let cases = [("0^3 1^2 0^8 1^2 0^5 1 0^6 1^4 0^7 1^2", 29, 22), ("0^2 1 0^4 1 0^6 1 0^8 1", 19, 12)];
    let mut pass = true;
    let mut detail = Vec::new();
    for (text, want_beta, want_tau_r) in cases {
        let code = parse_code(text).unwrap();
        let ((b, r), elapsed) = timed(|| (beta_threshold(&code).value, tau_r_code(&code).value));
        // Independent exact value through twin classes (graphs have up to 40 vertices).
        let exact = exact_metric_dimension_by_twins(&build_threshold(&code), 20).unwrap().beta;
        pass &= b == want_beta && r == want_tau_r && elapsed < Duration::from_millis(1);
        detail.push(format!(
            "[{text}: beta {b} (expected {want_beta}, exact {exact}), tau_r {r} (expected {want_tau_r}), {elapsed:?}]"
        ));
    }
    verdict(3, pass, detail.join(" "));
}

#[test]
fn criterion_04_chain_lambda_worked_example() {
    let p = ChainPartition::new(vec![5, 2, 3, 2, 4, 3, 3], vec![2, 2, 5, 3, 6, 2, 5]).unwrap();
    let (r, elapsed) = timed(|| lambda_chain(&p));
    let valid = verify_labeling(&p.graph(), &r.labeling).unwrap();
    let pass = r.span == 30 && valid && r.labeling.span == 30 && elapsed < Duration::from_millis(10);
    verdict(4, pass, format!("span {} labeling valid {valid} in {elapsed:?}", r.span));
}

#[test]
fn criterion_05_exact_families() {
    let start = Instant::now();
    let (mut wide, mut clique, mut bad) = (0, 0, Vec::new());
    for code in codes_up_to(10) {
        let blocks = code.blocks();
        let expected: u64 = if blocks.iter().all(|b| b.zeros > 1 && b.ones > 1) {
            wide += 1;
            blocks.iter().map(|b| b.len() as u64 - 2).sum()
        } else if blocks.iter().all(|b| b.zeros == 1) {
            clique += 1;
            blocks.iter().map(|b| b.ones as u64).sum()
        } else {
            continue;
        };
        let formula = beta_threshold(&code).value;
        let exact = oracle_beta(&build_threshold(&code));
        if formula != expected || exact != expected {
            bad.push(format!("{code}: expected {expected} formula {formula} oracle {exact}"));
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(300);
    verdict(
        5,
        pass,
        format!("{wide} wide codes, {clique} clique codes, {} mismatches {bad:?} in {elapsed:?}", bad.len()),
    );
}

#[test]
fn criterion_06_bounds_hold() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for code in codes_up_to(10) {
        let g = build_threshold(&code);
        let exact = oracle_beta(&g);
        let b = beta_bounds(&code);
        let diameter = distance_matrix(&g).unwrap().diameter() as u64;
        let (lo, hi) = general_bounds(g.n() as u64, diameter).unwrap();
        checked += 1;
        if !b.contains(exact) || exact < lo || exact > hi {
            bad.push(format!("{code}: {exact} vs [{}, {}] and [{lo}, {hi}]", b.lower, b.upper));
        }
    }
    verdict(6, bad.is_empty(), format!("{checked} codes, {} violations {bad:?}", bad.len()));
}

#[test]
fn criterion_07_chain_within_one_of_threshold() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for code in codes_up_to(10) {
        let t = oracle_beta(&build_threshold(&code));
        let c = oracle_beta(&build_chain(&code));
        checked += 1;
        if !(c == t || c + 1 == t) {
            bad.push(format!("{code}: threshold {t} chain {c}"));
        }
    }
    verdict(7, bad.is_empty(), format!("{checked} codes, {} violations {bad:?}", bad.len()));
}

#[test]
fn criterion_08_lambda_closed_forms() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut strings = 0;
    for n in 2..=10u32 {
        for s in 1..n {
            let code = GeneratingCode::from_blocks([(s, n - s)]).unwrap();
            let exact = exact_lambda(&build_threshold(&code), &budget()).unwrap();
            let formula = lambda_threshold(&code).span;
            strings += 1;
            if formula != exact.lambda || formula != 2 * (n - s) as u64 + s as u64 - 1 {
                bad.push(format!("threshold {code}: formula {formula} oracle {}", exact.lambda));
            }
        }
    }
    let mut partitions = 0;
    for code in codes_up_to(10) {
        let p = ChainPartition::from_code(&code);
        let g = p.graph();
        let r = lambda_chain(&p);
        let exact = exact_lambda(&g, &budget()).unwrap();
        partitions += 1;
        if r.span != exact.lambda {
            bad.push(format!("chain {code}: formula {} oracle {}", r.span, exact.lambda));
        }
        if !verify_labeling(&g, &r.labeling).unwrap() || !verify_labeling(&g, &exact.labeling).unwrap() {
            bad.push(format!("chain {code}: labeling rejected"));
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(600);
    verdict(
        8,
        pass,
        format!("{strings} strings, {partitions} partitions, {} mismatches {bad:?} in {elapsed:?}", bad.len()),
    );
}

#[test]
fn criterion_09_tau_oracle_agreement() {
    let b = budget();
    let mut single_bad = Vec::new();
    let mut singles = 0;
    // 0^7 1 has 21 non-edges, over the default cap.
    let wide = OracleBudget::new(b.max_n_beta, b.max_n_lambda, 21).unwrap();
    for s in 3..8u32 {
        for t in 1..=8 - s {
            let code = GeneratingCode::from_blocks([(s, t)]).unwrap();
            let exact = exact_tau(&build_threshold(&code), &wide).unwrap();
            let formula = tau_string(s, t).unwrap().value;
            singles += 1;
            if formula != Some(exact) {
                single_bad.push(format!("{code}: formula {formula:?} oracle {exact}"));
            }
        }
    }

    let mut restricted_bad = Vec::new();
    let mut witness_bad = Vec::new();
    let mut multi_tau = Vec::new();
    let mut codes = 0;
    for code in codes_up_to(8) {
        let g = build_threshold(&code);
        if g.non_edges().len() > b.max_nonedges_tau {
            continue;
        }
        codes += 1;
        let r = tau_r_code(&code);
        let exact = exact_tau_r(&g, &b).unwrap();
        if r.value != exact {
            restricted_bad.push(format!("{code}: formula {} via {} oracle {exact}", r.value, r.rewritten_code));
        }
        let h = build_threshold(&r.rewritten_code);
        if !recognize_threshold(&h) || h.n() != g.n() || !g.edges().iter().all(|&(u, v)| h.has_edge(u, v)) {
            witness_bad.push(code.to_string());
        }
        if code.num_blocks() > 1 {
            let formula = tau_code(&code);
            let exact = exact_tau(&g, &b).unwrap();
            if formula.value != Some(exact) {
                multi_tau.push(serde_json::json!({
                    "code": code.to_string(),
                    "formula": formula.value,
                    "clause": formula.clause,
                    "tried": formula.condition_trace,
                    "oracle": exact,
                }));
            }
        }
    }
    let path = artifact("tau-multi-string-discrepancies.json");
    std::fs::write(&path, serde_json::to_string_pretty(&multi_tau).unwrap()).unwrap();

    let pass = single_bad.is_empty() && restricted_bad.is_empty() && witness_bad.is_empty();
    verdict(
        9,
        pass,
        format!(
            "single strings {singles}, mismatches {single_bad:?}; restricted over {codes} codes, \
             mismatches {restricted_bad:?}; invalid witnesses {witness_bad:?}; \
             multi-string tau discrepancies recorded: {} ({})",
            multi_tau.len(),
            path.display()
        ),
    );
}

#[test]
fn criterion_10_full_sweep() {
    let options = ReportOptions {
        oracle: OracleMode::Require,
        invariants: vec![Invariant::Beta],
        ..ReportOptions::default()
    };
    let mut covered = 0;
    let mut detail = Vec::new();
    for family in [Family::Threshold, Family::Chain] {
        let s = sweep(10, family, &options).unwrap();
        let path = artifact(&format!("sweep-beta-{}.json", family.as_str()));
        std::fs::write(&path, serde_json::to_string_pretty(&s.summary).unwrap()).unwrap();
        covered += s.summary.exact_family_discrepancies;
        detail.push(format!(
            "{}: {} codes, {} discrepancies, {} exact-family ({})",
            family.as_str(),
            s.summary.codes_tested,
            s.summary.discrepancies.len(),
            s.summary.exact_family_discrepancies,
            path.display()
        ));
    }
    verdict(10, covered == 0, detail.join("; "));
}
