mod common;

use common::{fixture_json, report, run_with, stderr};
use serde_json::{json, Value};

fn octic_with(task: Value) -> Value {
    let mut c = fixture_json("octic.json");
    c["task"] = task;
    c
}

#[test]
fn totally_real_verdicts_exit_zero() {
    let (o, body) = run_with("verdicts", &fixture_json("real_quadratic.json"), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&body);
    let v = &r["verdict"]["verdict"];
    assert_eq!(v["fiber_tangent_dim"], 1);
    assert_eq!(v["ord_tangent_dim"], 1);
    assert_eq!(v["total_tangent_dim"], 2);
    assert_eq!(v["etale"]["status"], "false");
    assert!(r["coefficients"].is_null());
    assert_eq!(r["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn missing_m_is_a_schema_error() {
    let mut c = fixture_json("real_quadratic.json");
    c["fields"].as_object_mut().unwrap().remove("M");
    let (o, body) = run_with("verdicts", &c, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fields.M"), "{}", stderr(&o));
    assert!(body.is_none());
}

#[test]
fn non_monic_polynomial_is_named() {
    let mut c = fixture_json("real_quadratic.json");
    c["fields"]["M"]["poly"] = json!(["-1", "-1", "2"]);
    let (o, _) = run_with("verdicts", &c, &[]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("fields.M.poly") && e.contains("not monic"), "{e}");
}

#[test]
fn composite_p_is_a_schema_error() {
    let mut c = fixture_json("real_quadratic.json");
    c["arithmetic"]["p"] = json!(15);
    let (o, _) = run_with("verdicts", &c, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arithmetic.p"));
}

#[test]
fn index_divisor_is_an_arithmetic_error() {
    let c = json!({
        "fields": {"F": {"poly": ["0", "1"]}, "M": {"poly": ["-5", "0", "1"]}},
        "arithmetic": {"p": 2},
        "assertions": {"leopoldt_M": true, "p_regular": true, "stabilization": ["none"]}
    });
    let (o, _) = run_with("verdicts", &c, &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("index"), "{}", stderr(&o));
}

#[test]
fn declared_profile_mismatch_is_fatal() {
    let mut c = fixture_json("real_quadratic.json");
    c["assertions"]["profile"] = json!({"primes": [{"e": 1, "f": 2, "splits_in_m": false, "stab_class": "none"}]});
    let (o, _) = run_with("verdicts", &c, &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("disagrees"));
}

#[test]
fn range_lists_every_prime_with_a_classification() {
    let c = octic_with(json!({"mode": "coefficients"}));
    let (o, body) = run_with("coefficients", &c, &["--ell-min", "2", "--ell-max", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&body);
    let entries = r["coefficients"]["entries"].as_array().unwrap();
    let ells: Vec<u64> = entries.iter().map(|e| e["ell"].as_u64().unwrap()).collect();
    let primes: Vec<u64> = (2..=100u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
    assert_eq!(ells, primes);
    for e in entries {
        let ell = e["ell"].as_u64().unwrap();
        let want = match ell {
            2 | 5 | 11 => "excluded",
            _ if matches!(ell % 5, 1 | 4) => "split",
            _ => "inert",
        };
        assert_eq!(e["classification"], want, "ℓ = {ell}");
        if want == "excluded" {
            assert!(e["reason"].is_string());
        }
    }
    assert!(r["verdict"].is_null());
}

#[test]
fn all_split_primes_give_zero_row() {
    let c = octic_with(json!({"mode": "coefficients", "ell": [19, 29, 31, 41, 59, 61]}));
    let (o, body) = run_with("coefficients", &c, &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&body);
    for e in r["coefficients"]["entries"].as_array().unwrap() {
        assert_eq!(e["classification"], "split");
        assert!(e["value"]["valuation"].is_null() && e["value"]["unit_digits"].as_array().unwrap().is_empty());
    }
    assert!(r["diagnostics"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn bound_exceeded_is_a_partial_failure() {
    let c = octic_with(json!({"mode": "coefficients", "ell": [7, 19], "search": {"max_h": 0}}));
    let (o, body) = run_with("coefficients", &c, &[]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&body);
    let entries = r["coefficients"]["entries"].as_array().unwrap();
    assert!(entries[0]["failure"].as_str().unwrap().contains("no λ-unit"));
    assert_eq!(entries[1]["classification"], "split");
    assert!(entries[1]["failure"].is_null());
    let failures = r["diagnostics"]["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["ell"], 7);
}

#[test]
fn precision_flag_overrides_config() {
    let c = octic_with(json!({"mode": "coefficients", "ell": [7]}));
    let (o, body) = run_with("coefficients", &c, &["--precision", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&body);
    assert_eq!(r["setup"]["precision"], 12);
    let e = &r["coefficients"]["entries"][0];
    assert!(e["precision"].as_i64().unwrap() <= 12);
    assert!(e["invariance_ok"].as_bool().unwrap());
}

#[test]
fn ledger_lists_each_assumption_once() {
    let c = octic_with(json!({"mode": "both", "ell": [7, 19]}));
    let (o, body) = run_with("all", &c, &[]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&body);
    let ledger = r["diagnostics"]["assumptions_ledger"].as_array().unwrap();
    let mut names: Vec<&str> = ledger.iter().map(|e| e["assumption"].as_str().unwrap()).collect();
    let n = names.len();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), n);
    for want in ["Leopoldt conjecture for M", "p-regular", "M totally real", "ψ♥ nontrivial"] {
        assert!(names.contains(&want), "{want} missing");
    }
    assert!(ledger.iter().all(|e| ["computed", "asserted", "failed"].contains(&e["status"].as_str().unwrap())));
    assert_eq!(r["verdict"]["profile_source"], "computed+declared");
    assert!(!stderr(&o).is_empty(), "timings go to stderr");
}
