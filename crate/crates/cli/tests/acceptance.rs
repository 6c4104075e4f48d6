//! End-to-end acceptance run. One numbered check per shipped guarantee,
//! one PASS/FAIL line each, all executed in a single sequential test so
//! the timings are honest and the summary reads top to bottom.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use zerosum_core::egz::{egz_witness, ResidueSequence};
use zerosum_core::group::{
    canonicalize_subset, enumerate_affine_symmetries, GroupSpec, GroupSubset,
};
use zerosum_core::lemmas::{LemmaReport, Verdict};
use zerosum_core::partitions::count_box_partitions;
use zerosum_core::search::{
    compute_g, extremal_construction, find_zero_sum_subset, is_zero_sum_free, GResult, SearchConfig,
};
use zerosum_core::sumset::{restricted_sumset, ResidueSet};

const BIN: &str = env!("CARGO_BIN_EXE_zerosum");

struct Outcome {
    criterion: usize,
    passed: bool,
    detail: String,
}

fn check(results: &mut Vec<Outcome>, criterion: usize, passed: bool, detail: String) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} ({detail})");
    results.push(Outcome {
        criterion,
        passed,
        detail,
    });
}

fn cli(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn exact_g(spec: &str, workers: usize) -> (Option<usize>, bool, Duration) {
    let group = GroupSpec::parse(spec).unwrap();
    let config = SearchConfig {
        workers,
        ..SearchConfig::default()
    };
    let start = Instant::now();
    let result = compute_g(&group, &config).unwrap();
    let elapsed = start.elapsed();
    match result {
        GResult::Exact { g, outcome } => (Some(g), outcome.report.exhausted, elapsed),
        GResult::Bounds { .. } => (None, false, elapsed),
    }
}

// -- criterion 7 brute-force oracles ---------------------------------------

fn brute_restricted(residues: &[u32], k: usize, m: u32) -> Vec<u32> {
    let mut sums = vec![false; m as usize];
    fn rec(residues: &[u32], from: usize, left: usize, acc: u32, m: u32, sums: &mut [bool]) {
        if left == 0 {
            sums[acc as usize] = true;
            return;
        }
        for i in from..residues.len() {
            rec(residues, i + 1, left - 1, (acc + residues[i]) % m, m, sums);
        }
    }
    rec(residues, 0, k, 0, m, &mut sums);
    (0..m).filter(|&r| sums[r as usize]).collect()
}

fn restricted_sumset_matches_brute_force() -> Result<u64, String> {
    let mut compared = 0u64;
    for m in 2u32..=8 {
        for mask in 1u64..(1 << m) {
            let residues: Vec<u32> = (0..m).filter(|&r| mask >> r & 1 == 1).collect();
            let a = ResidueSet::from_residues(m, &residues).map_err(|e| e.to_string())?;
            for k in 0..=residues.len() {
                let got = restricted_sumset(&a, k)
                    .map_err(|e| e.to_string())?
                    .residues();
                let want = brute_restricted(&residues, k, m);
                if got != want {
                    return Err(format!(
                        "m={m} A={residues:?} k={k}: library {got:?} vs brute {want:?}"
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(compared)
}

fn brute_has_zero_sum_4set(coords: &[(u32, u32)]) -> bool {
    let n = coords.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let x = (coords[a].0 + coords[b].0 + coords[c].0 + coords[d].0) % 4;
                    let y = (coords[a].1 + coords[b].1 + coords[c].1 + coords[d].1) % 4;
                    if x == 0 && y == 0 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn zero_sum_search_matches_brute_force() -> Result<u64, String> {
    let group = GroupSpec::square(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0u64..10_000 {
        let size = rng.gen_range(1..=10);
        let mut indices: Vec<usize> = (0..16).collect();
        for i in 0..size {
            let j = rng.gen_range(i..16);
            indices.swap(i, j);
        }
        indices.truncate(size);
        let x = GroupSubset::from_indices(&group, &indices).map_err(|e| e.to_string())?;
        let coords: Vec<(u32, u32)> = x
            .elements()
            .iter()
            .map(|e| (e.coords()[0], e.coords()[1]))
            .collect();
        let want = brute_has_zero_sum_4set(&coords);
        let got = find_zero_sum_subset(&x, 4).map_err(|e| e.to_string())?;
        if want != got.is_some() {
            return Err(format!(
                "trial {trial}: set {x} brute {want} library {got:?}"
            ));
        }
        if let Some(w) = got {
            // membership, distinctness and the zero sum are re-verified here
            if w.len() != 4 {
                return Err(format!("trial {trial}: witness length {}", w.len()));
            }
            let mut seen = Vec::new();
            let (mut sx, mut sy) = (0u32, 0u32);
            for e in w.elements() {
                if !x.contains(e) || seen.contains(e) {
                    return Err(format!("trial {trial}: bad witness element {e}"));
                }
                seen.push(e.clone());
                sx = (sx + e.coords()[0]) % 4;
                sy = (sy + e.coords()[1]) % 4;
            }
            if (sx, sy) != (0, 0) {
                return Err(format!("trial {trial}: witness sums to ({sx},{sy})"));
            }
        }
    }
    Ok(10_000)
}

fn egz_always_succeeds() -> Result<u64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut checked = 0u64;
    for n in 2u32..=10 {
        for _ in 0..100_000 {
            let values: Vec<u32> = (0..2 * n - 1).map(|_| rng.gen_range(0..n)).collect();
            let seq = ResidueSequence::new(n, values).map_err(|e| e.to_string())?;
            let w =
                egz_witness(&seq, n).map_err(|e| format!("n={n} seq {seq}: no witness ({e})"))?;
            if w.len() != n as usize {
                return Err(format!("n={n} seq {seq}: witness length {}", w.len()));
            }
            let sum: u64 = w.values(&seq).iter().map(|&v| v as u64).sum();
            if !sum.is_multiple_of(n as u64) {
                return Err(format!("n={n} seq {seq}: witness sum {sum}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

// -- the run ----------------------------------------------------------------

#[test]
fn acceptance() {
    let mut results = Vec::new();

    // 1: g over the 3x3 and 4x4 grids, exact and fast.
    {
        let (g3, done3, t3) = exact_g("3x3", 1);
        let (g4, done4, t4) = exact_g("4x4", 1);
        let budget = Duration::from_secs(10);
        let ok = g3 == Some(5) && done3 && t3 < budget && g4 == Some(9) && done4 && t4 < budget;
        check(
            &mut results,
            1,
            ok,
            format!(
                "g(3x3)={g3:?} exhausted={done3} in {t3:?}; g(4x4)={g4:?} exhausted={done4} in {t4:?}"
            ),
        );
    }

    // 2: g over the 5x5 grid.
    {
        let (g5, done5, t5) = exact_g("5x5", 1);
        let ok = g5 == Some(9) && done5 && t5 < Duration::from_secs(300);
        check(
            &mut results,
            2,
            ok,
            format!("g(5x5)={g5:?} exhausted={done5} in {t5:?}"),
        );
    }

    // 3: g over the 6x6 grid with 8 workers, plus the witness set's orbit.
    // The workers=8 output is kept for the determinism comparison below.
    let json_w8: Vec<u8>;
    {
        let start = Instant::now();
        let out = cli(&["g", "--group", "6x6", "--workers", "8", "--format", "json"]);
        let elapsed = start.elapsed();
        json_w8 = out.stdout.clone();
        let parsed: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap_or(Value::Null);
        let g = parsed["g"].as_u64();
        let exhausted = parsed["exhausted"].as_bool().unwrap_or(false);
        let set_text = parsed["example_set"].as_str().unwrap_or("").to_string();

        let group = GroupSpec::square(6).unwrap();
        let syms = enumerate_affine_symmetries(&group).unwrap();
        let found = GroupSubset::parse(&group, &set_text).unwrap();
        let canon_found = canonicalize_subset(&found, &syms).unwrap();
        let canon_b = canonicalize_subset(&extremal_construction(6).unwrap(), &syms).unwrap();
        let orbit = if canon_found == canon_b {
            "free 12-set lies in the orbit of the two-full-rows construction".to_string()
        } else {
            format!("free 12-set in a different orbit, representative {canon_found}")
        };

        let ok = out.status.code() == Some(0)
            && g == Some(13)
            && exhausted
            && found.cardinality() == 12
            && is_zero_sum_free(&found).unwrap_or(false)
            && elapsed < Duration::from_secs(4 * 3600);
        check(
            &mut results,
            3,
            ok,
            format!("g(6x6)={g:?} exhausted={exhausted} in {elapsed:?}; {orbit}"),
        );
    }

    // 4: the doubled-row construction is zero-sum-free for every small n.
    {
        let mut ok = true;
        let mut worst = Duration::ZERO;
        for n in 3u32..=8 {
            let start = Instant::now();
            let b = extremal_construction(n).unwrap();
            let free = is_zero_sum_free(&b).unwrap();
            let t = start.elapsed();
            worst = worst.max(t);
            if !free || t >= Duration::from_secs(1) {
                ok = false;
            }
        }
        check(
            &mut results,
            4,
            ok,
            format!("constructions for n in 3..=8 all zero-sum-free, slowest {worst:?}"),
        );
    }

    // 5: the bounded-partition count and the CLI binomial.
    {
        let partitions = count_box_partitions(13, 6, 6);
        let out = cli(&["partitions", "--choose", "36,13", "--format", "json"]);
        let parsed: Value = serde_json::from_str(stdout_str(&out).trim()).unwrap_or(Value::Null);
        let binom = parsed["choose"].as_u64();
        let ok = partitions == 42 && binom == Some(2_310_789_600) && out.status.code() == Some(0);
        check(
            &mut results,
            5,
            ok,
            format!("count_box_partitions(13,6,6)={partitions}, C(36,13)={binom:?}"),
        );
    }

    // 6: the full verification sweep. Exhaustively enumerated statements
    // must come back PASS; the sampled ones must be clean on their
    // exhaustive portions; the modulus-4 boundary case must be recorded
    // with a definite verdict rather than assumed.
    {
        let start = Instant::now();
        let out = cli(&["verify", "--all", "--format", "json"]);
        let elapsed = start.elapsed();
        let reports: Vec<LemmaReport> =
            serde_json::from_str(stdout_str(&out).trim()).unwrap_or_default();
        let find = |id: &str| reports.iter().find(|r| r.id == id);

        let exhaustive = [
            "gp",
            "main",
            "gen",
            "psi_pair",
            "psi_k",
            "psi_bijection",
            "lp_sp",
            "lp_sp_global",
            "lp_i",
            "lp_ii",
            "lp_iii",
            "lp_iv",
            "fourzero",
            "maincor",
            "prop_334",
            "conjecture_small",
        ];
        let mut bad = Vec::new();
        for id in exhaustive {
            match find(id) {
                Some(r) if r.verdict == Verdict::Pass => {}
                Some(r) => bad.push(format!("{id}={}", r.verdict)),
                None => bad.push(format!("{id}=missing")),
            }
        }
        // sampled statements: no counterexample may surface anywhere, so in
        // particular their exhaustive small-modulus portions are clean
        for id in ["thm_full_row", "thm_row_minus_one"] {
            match find(id) {
                Some(r) if r.counterexamples.is_empty() && r.verdict != Verdict::Fail => {}
                Some(r) => bad.push(format!(
                    "{id} has {} counterexamples",
                    r.counterexamples.len()
                )),
                None => bad.push(format!("{id}=missing")),
            }
        }
        let boundary = match find("nonzero_acceptable") {
            Some(r) => {
                let clean_above_4 = r.counterexamples.iter().all(|c| c.starts_with("2n=4|"));
                if !clean_above_4 {
                    bad.push("nonzero_acceptable has a counterexample beyond 2n=4".into());
                }
                // definite verdict either way, with the outcome on record
                if r.verdict == Verdict::Partial {
                    bad.push("nonzero_acceptable verdict is indefinite".into());
                }
                format!(
                    "2n=4 outcome {} with {} counterexamples",
                    r.verdict,
                    r.counterexamples.len()
                )
            }
            None => {
                bad.push("nonzero_acceptable=missing".into());
                "missing".into()
            }
        };
        let ok = bad.is_empty() && elapsed < Duration::from_secs(900) && !reports.is_empty();
        let detail = if bad.is_empty() {
            format!(
                "{} reports in {elapsed:?}; exhaustive statements PASS; {boundary}",
                reports.len()
            )
        } else {
            format!("problems: {}", bad.join(", "))
        };
        check(&mut results, 6, ok, detail);
    }

    // 7: brute-force equivalence sweeps, zero tolerance.
    {
        let sumsets = restricted_sumset_matches_brute_force();
        let searches = zero_sum_search_matches_brute_force();
        let egz = egz_always_succeeds();
        let ok = sumsets.is_ok() && searches.is_ok() && egz.is_ok();
        let detail = match (&sumsets, &searches, &egz) {
            (Ok(a), Ok(b), Ok(c)) => {
                format!("{a} sumset comparisons, {b} subset searches, {c} witness checks, 0 discrepancies")
            }
            _ => format!(
                "sumset={:?} search={:?} egz={:?}",
                sumsets.err(),
                searches.err(),
                egz.err()
            ),
        };
        check(&mut results, 7, ok, detail);
    }

    // 8: the grid-6 report is byte-identical across worker counts and
    // across an interrupt/resume cycle.
    {
        let mut variants = Vec::new();
        for workers in ["1", "4"] {
            let out = cli(&[
                "g",
                "--group",
                "6x6",
                "--workers",
                workers,
                "--format",
                "json",
            ]);
            variants.push((format!("workers={workers}"), out.stdout));
        }
        variants.push(("workers=8".to_string(), json_w8.clone()));

        let dir = tempfile::tempdir().expect("tempdir");
        let ck = dir.path().join("ck");
        let first = cli(&[
            "g",
            "--group",
            "6x6",
            "--budget",
            "20000",
            "--checkpoint",
            ck.to_str().unwrap(),
            "--format",
            "json",
        ]);
        let mut resume_note = String::new();
        if first.status.code() == Some(3) {
            let resumed = cli(&[
                "g",
                "--group",
                "6x6",
                "--resume",
                ck.to_str().unwrap(),
                "--format",
                "json",
            ]);
            if resumed.status.code() == Some(0) {
                variants.push(("interrupt+resume".to_string(), resumed.stdout));
            } else {
                resume_note = format!("; resume exited {:?}", resumed.status.code());
            }
        } else {
            resume_note = format!("; interrupt run exited {:?}", first.status.code());
        }

        let reference = &variants[0].1;
        let mismatched: Vec<&str> = variants
            .iter()
            .filter(|(_, bytes)| bytes != reference)
            .map(|(name, _)| name.as_str())
            .collect();
        let ok = resume_note.is_empty()
            && mismatched.is_empty()
            && variants.len() == 4
            && !reference.is_empty();
        let detail = if ok {
            "identical bytes for workers 1, 4, 8 and an interrupt/resume cycle".to_string()
        } else {
            format!("mismatched variants {mismatched:?}{resume_note}")
        };
        check(&mut results, 8, ok, detail);
    }

    let failures: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("criterion {}: {}", r.criterion, r.detail))
        .collect();
    assert!(
        failures.is_empty(),
        "acceptance failures:\n{}",
        failures.join("\n")
    );
}
