//! End-to-end tests against the compiled binary.

use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output};

fn vanlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vanlab"))
        .args(args)
        .env_remove("VANLAB_CACHE")
        .output()
        .expect("binary runs")
}

fn vanlab_with_cache(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vanlab"))
        .args(args)
        .env("VANLAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn analyze_rejects_non_primes() {
    for bad in ["4", "2", "1", "91"] {
        let out = vanlab(&["analyze", bad]);
        assert_eq!(code(&out), 1, "p={bad}");
        assert!(stderr(&out).contains("not an odd prime"), "p={bad}");
    }
}

#[test]
fn analyze_smallest_prime_passes() {
    let out = vanlab(&["analyze", "3"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dim V                  0"), "{text}");
    assert!(!text.contains("VIOLATION"), "{text}");
}

#[test]
fn analyze_37_json_fields() {
    let out = vanlab(&["analyze", "37", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["p"], 37);
    assert_eq!(v["index_of_irregularity"], 1);
    assert_eq!(v["irregular_pairs"], serde_json::json!([{"k": 32, "e": 1}]));
    assert_eq!(v["r_numbers"]["R"], 1);
    assert_eq!(v["r_numbers"]["r0"], 1);
    assert_eq!(v["dim_V"], 18);
    assert_eq!(v["s1_factors"], serde_json::json!([1]));
    assert_eq!(v["b_p"]["elementary_rank"], 17);
    assert_eq!(v["b_p"]["cyclic_factors"], serde_json::json!([2]));
    assert_eq!(v["s_p_image_dim"], 1);
    assert_eq!(v["cl_level2"], "omitted");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert_eq!(v["vandiver"][0]["k"], 32);
    assert_eq!(v["vandiver"][0]["status"], "witnessed");
    assert_eq!(v["vandiver"][0]["q"], 149);
}

#[test]
fn analyze_csv_matches_header() {
    let out = vanlab(&["analyze", "37", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,i,r0,dimV,e_list,checks_pass,vandiver_status")
    );
    assert_eq!(lines.next(), Some("37,1,1,18,32:1,true,witnessed"));
}

#[test]
fn vandiver_37_names_witness() {
    let out = vanlab(&["vandiver", "37"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("k=32: Witnessed q=149"), "{}", stdout(&out));
}

#[test]
fn vandiver_regular_prime_reports_nothing_to_test() {
    let out = vanlab(&["vandiver", "13"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("regular, nothing to test"));
}

#[test]
fn micro_rejects_large_primes() {
    let out = vanlab(&["micro", "11"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("only supports p in {3, 5, 7}"));
}

#[test]
fn micro_5_counts() {
    let out = vanlab(&["micro", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("|U|=500 |E1|=100"), "{text}");
    assert!(text.contains("e2_absorption=ok"), "{text}");
    assert!(text.trim_end().ends_with("OK"), "{text}");
}

#[test]
fn pairs_csv() {
    let out = vanlab(&["pairs", "37", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "k,e\n32,1\n");
}

#[test]
fn scan_rejects_bad_ranges() {
    for bad in ["2..10", "10..3", "foo", "5"] {
        let out = vanlab(&["scan", bad]);
        assert_eq!(code(&out), 1, "range {bad}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error:"), "range {bad}");
    }
}

#[test]
fn scan_output_independent_of_jobs() {
    for format in ["csv", "json", "table"] {
        let one = vanlab(&["scan", "3..60", "--jobs", "1", "--format", format]);
        let many = vanlab(&["scan", "3..60", "--jobs", "4", "--format", format]);
        assert_eq!(code(&one), 0);
        assert_eq!(one.stdout, many.stdout, "format {format}");
    }
}

#[test]
fn scan_csv_rows() {
    let out = vanlab(&["scan", "3..40", "--jobs", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,i,r0,dimV,e_list,checks_pass,vandiver_status");
    assert_eq!(lines[1], "3,0,0,0,,true,-");
    assert_eq!(*lines.last().unwrap(), "37,1,1,18,32:1,true,witnessed");
    assert_eq!(lines.len(), 1 + 11); // header + primes in 3..=40
    assert!(stderr(&out).contains("scanned 11 primes, 1 irregular, 0 identity violations"));
}

#[test]
fn scan_json_rows_parse() {
    let out = vanlab(&["scan", "3..30", "--jobs", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let ps: Vec<u64> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).expect("row is json")["p"]
            .as_u64()
            .unwrap())
        .collect();
    assert_eq!(ps, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
}

#[test]
fn scan_cache_reuse_is_invisible_in_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("scan.jsonl");
    let cold = vanlab_with_cache(&["scan", "3..60", "--jobs", "2", "--format", "csv"], &cache);
    assert_eq!(code(&cold), 0);
    assert!(cache.exists(), "cache file written");
    let warm = vanlab_with_cache(&["scan", "3..60", "--jobs", "2", "--format", "csv"], &cache);
    assert_eq!(code(&warm), 0);
    assert_eq!(cold.stdout, warm.stdout);

    // extending the range reuses old rows and appends only the new ones
    let before = std::fs::read_to_string(&cache).unwrap().lines().count();
    let wider = vanlab_with_cache(&["scan", "3..80", "--jobs", "2", "--format", "csv"], &cache);
    assert_eq!(code(&wider), 0);
    let after = std::fs::read_to_string(&cache).unwrap().lines().count();
    assert_eq!(after - before, 5); // 61, 67, 71, 73, 79
    let plain = vanlab(&["scan", "3..80", "--jobs", "2", "--format", "csv"]);
    assert_eq!(wider.stdout, plain.stdout);
}

#[test]
fn scan_tolerates_corrupt_cache_lines() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("scan.jsonl");
    let mut f = std::fs::File::create(&cache).unwrap();
    writeln!(f, "this is not json").unwrap();
    drop(f);
    let out = vanlab_with_cache(&["scan", "3..20", "--jobs", "1", "--format", "csv"], &cache);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("skipping"), "{}", stderr(&out));
    let plain = vanlab(&["scan", "3..20", "--jobs", "1", "--format", "csv"]);
    assert_eq!(out.stdout, plain.stdout);
}

#[test]
fn cache_flag_overrides_env() {
    let dir = tempfile::tempdir().unwrap();
    let flagged = dir.path().join("flag.jsonl");
    let envd = dir.path().join("env.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_vanlab"))
        .args(["scan", "3..10", "--cache"])
        .arg(&flagged)
        .env("VANLAB_CACHE", &envd)
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
    assert!(flagged.exists());
    assert!(!envd.exists());
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&vanlab(&["--help"])), 0);
    assert_eq!(code(&vanlab(&["--version"])), 0);
    assert!(stdout(&vanlab(&["--version"])).starts_with("vanlab "));
    assert_eq!(code(&vanlab(&["no-such-command"])), 1);
    assert_eq!(code(&vanlab(&[])), 1);
}
