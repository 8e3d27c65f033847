//! End-to-end session tests: the worked example, nested commands,
//! determinism of the JSON rendering, and cache transparency.

use std::path::PathBuf;

use betti_cli_test_support::*;

// The binary crate exposes no library; drive the compiled binary directly.
mod betti_cli_test_support {
    use std::path::PathBuf;
    use std::process::{Command, Output};

    pub fn betti_bin() -> PathBuf {
        let mut p = PathBuf::from(env!("CARGO_BIN_EXE_betti"));
        assert!(p.exists(), "binary not built: {}", p.display());
        p = p.canonicalize().unwrap();
        p
    }

    pub fn run_session(body: &str, extra: &[&str]) -> Output {
        let dir = std::env::temp_dir().join(format!(
            "betti-cli-test-{}-{}",
            std::process::id(),
            fastrand()
        ));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("session.bet");
        std::fs::write(&file, body).unwrap();
        let out = Command::new(betti_bin())
            .arg("run")
            .arg(&file)
            .args(extra)
            .output()
            .expect("spawn betti");
        let _ = std::fs::remove_dir_all(&dir);
        out
    }

    static COUNTER: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(0);
    fn fastrand() -> u64 {
        COUNTER.fetch_add(1, std::sync::atomic::Ordering::Relaxed)
    }
}

const EXAMPLE_12: &str = "\
ring R = GF(32003)[x,y,z,w]/(x*y);
ideal a = (y, z, w);
module M = coker [[x]];
module N = coker [[y]];
depth(a, R);
depth(a, M);
tor(M, N, 4);
";

#[test]
fn example_session_reports_expected_values() {
    let out = run_session(EXAMPLE_12, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("depth = 2"), "{text}");
    assert!(text.contains("depth = 3"), "{text}");
    assert!(text.contains("Tor_1: 0"), "{text}");
    assert!(text.contains("Tor_2: nonzero"), "{text}");
}

#[test]
fn betti_of_resolved_residue_field() {
    let out = run_session(
        "ring R = GF(32003)[x,y]/(x*y);\nbetti(resolve(k, 10));\n",
        &[],
    );
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("total:     1    2    2    2    2    2    2    2    2    2    2"),
        "{text}"
    );
}

#[test]
fn empty_session_produces_no_reports() {
    let out = run_session("", &[]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn semantic_errors_and_exit_codes() {
    let out = run_session("module M = coker [[x]];", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no active ring"));

    let out = run_session("ring R = GF(4)[x];", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 is not prime"));

    let out = run_session("ring R = GF(7)[x]; ring S = GF(7)[y];", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("one ring"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("betti-json-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("session.bet");
    std::fs::write(&file, EXAMPLE_12).unwrap();
    let mut bodies = Vec::new();
    for run in 0..2 {
        let json = dir.join(format!("out{run}.json"));
        let st = std::process::Command::new(betti_bin())
            .args(["run"])
            .arg(&file)
            .arg("--json")
            .arg(&json)
            .output()
            .unwrap();
        assert!(st.status.success());
        bodies.push(std::fs::read(&json).unwrap());
    }
    assert_eq!(bodies[0], bodies[1], "byte-identical JSON across runs");
    let parsed: serde_json::Value = serde_json::from_slice(&bodies[0]).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 3);
    assert_eq!(parsed[0]["result"]["depth"], 2);
    assert_eq!(parsed[0]["result"]["witness_index"], 2);
    assert_eq!(parsed[0]["result"]["vanishing"], serde_json::json!([0, 1]));
    assert_eq!(parsed[1]["result"]["depth"], 3);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_transparency() {
    let dir = std::env::temp_dir().join(format!("betti-cache-trans-{}", std::process::id()));
    let cache = dir.join("cache");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("session.bet");
    std::fs::write(&file, EXAMPLE_12).unwrap();

    let run = |extra: &[&str]| -> Vec<u8> {
        let json: PathBuf = dir.join("out.json");
        let st = std::process::Command::new(betti_bin())
            .args(["run"])
            .arg(&file)
            .arg("--json")
            .arg(&json)
            .args(extra)
            .output()
            .unwrap();
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
        std::fs::read(&json).unwrap()
    };

    let without = run(&["--no-cache"]);
    let cold = run(&["--cache-dir", cache.to_str().unwrap()]);
    let warm = run(&["--cache-dir", cache.to_str().unwrap()]);
    assert_eq!(without, cold, "cache off vs cold cache");
    assert_eq!(cold, warm, "cold vs warm cache");
    assert!(
        std::fs::read_dir(&cache).unwrap().count() > 0,
        "cache directory is populated"
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn resource_cap_exit_code() {
    // An S-pair whose lcm exceeds the default monomial-degree cap of 40:
    // two dense degree-21 forms.
    let out = run_session(
        "ring R = GF(7)[x,y];\nmodule M = coker [[x^21 + y^21, x^20*y]];\nbetti(resolve(M, 2));\n",
        &[],
    );
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource cap"));
}

#[test]
fn prime_override_and_lex_order() {
    let src = "ring R = GF(32003)[x,y]/(x*y);\nbetti(resolve(k, 6));\n";
    let dir = std::env::temp_dir().join(format!("betti-flags-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("s.bet");
    std::fs::write(&file, src).unwrap();
    let json = dir.join("o.json");
    let run = |extra: &[&str]| -> serde_json::Value {
        let st = std::process::Command::new(betti_bin())
            .args(["run"])
            .arg(&file)
            .arg("--json")
            .arg(&json)
            .args(extra)
            .output()
            .unwrap();
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
        serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap()
    };
    let base = run(&[]);
    let overridden = run(&["--prime", "101"]);
    assert_eq!(base[0]["provenance"]["prime"], 32003);
    assert_eq!(overridden[0]["provenance"]["prime"], 101);
    // Betti numbers are order-independent.
    let lex = run(&["--order", "lex"]);
    assert_eq!(base[0]["result"]["totals"], lex[0]["result"]["totals"]);
    assert_eq!(lex[0]["provenance"]["order"], "lex");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn csv_output() {
    let dir = std::env::temp_dir().join(format!("betti-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("s.bet");
    std::fs::write(&file, "ring R = GF(32003)[x,y];\nbetti(resolve(k, 3));\n").unwrap();
    let csv = dir.join("o.csv");
    let st = std::process::Command::new(betti_bin())
        .args(["run"])
        .arg(&file)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(st.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("i,j,beta\n"), "{body}");
    assert!(body.contains("1,1,2\n"), "{body}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn splitting_and_audit_via_cli() {
    let src = "\
ring R = GF(32003)[x,y]/(x*y);
module N = coker [[x]];
verify_splitting(lemma42, N, 1, (x+y));
verify_splitting(cor44, N, 1, (x+y));
verify_splitting(prop28, N, 1, (x+y));
audit((x+y), coker [[y]], 1);
";
    let out = run_session(src, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("Betti-Hilbert equivalent").count(), 3, "{text}");
    assert!(text.contains("free part: R(-1)"), "{text}");
    assert!(text.contains("holds"), "{text}");
}

#[test]
fn shipped_sample_sessions_run_clean() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../sessions")
        .canonicalize()
        .unwrap();
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("bet") {
            continue;
        }
        count += 1;
        let out = std::process::Command::new(betti_bin())
            .arg("run")
            .arg(&path)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert!(count >= 3, "expected the shipped sessions, found {count}");
}

#[test]
fn module_valued_commands_and_probes() {
    let src = "\
ring R = GF(32003)[x,y]/(x*y);
module N = coker [[x]];
module M = syzygy(N, 1);
length(M);
transpose(N);
probe_rigidity(N, 2, 8, k, N);
";
    let out = run_session(src, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("length = infinite"), "{text}");
    assert!(text.contains("generator degrees [-1]"), "{text}");
    assert!(text.contains("no 2-Tor-rigidity violation"), "{text}");
}
