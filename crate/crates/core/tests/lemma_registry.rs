//! End-to-end expectations for the statement registry: which ids pass,
//! which stay partial, and the one recorded failure.

use zerosum_core::lemmas::{
    list_statements, recheck_counterexample, verify_all, verify_statement, LemmaReport, Verdict,
    VerifyParams,
};

#[test]
fn verify_all_matches_the_expected_verdict_table() {
    let reports = verify_all(&VerifyParams::default()).unwrap();
    assert_eq!(reports.len(), 20);

    // Reports come back in registry order.
    let listed: Vec<&str> = list_statements().iter().map(|i| i.id).collect();
    let got: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(got, listed);

    for r in &reports {
        let expected = match r.id.as_str() {
            "lift" | "thm_full_row" | "thm_row_minus_one" => Verdict::Partial,
            "nonzero_acceptable" => Verdict::Fail,
            _ => Verdict::Pass,
        };
        assert_eq!(r.verdict, expected, "{}: {:?}", r.id, r.counterexamples);
        if r.verdict == Verdict::Partial {
            assert_eq!(r.seed, Some(0), "{}", r.id);
        }
        if r.id != "nonzero_acceptable" {
            assert!(r.counterexamples.is_empty(), "{}", r.id);
        }
        assert!(r.cases_checked > 0, "{}", r.id);
    }
}

#[test]
fn recorded_counterexamples_recheck_as_failures() {
    let r = verify_statement("nonzero_acceptable", &VerifyParams::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.counterexamples.iter().all(|c| c.starts_with("2n=4|")));
    for c in &r.counterexamples {
        assert!(
            !recheck_counterexample("nonzero_acceptable", c).unwrap(),
            "{c}"
        );
    }
}

#[test]
fn reports_round_trip_through_json() {
    for id in ["gp", "nonzero_acceptable", "thm_row_minus_one"] {
        let r = verify_statement(id, &VerifyParams::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: LemmaReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.id, r.id);
        assert_eq!(back.verdict, r.verdict);
        assert_eq!(back.cases_checked, r.cases_checked);
        assert_eq!(back.counterexamples, r.counterexamples);
        assert_eq!(back.seed, r.seed);
    }
}
