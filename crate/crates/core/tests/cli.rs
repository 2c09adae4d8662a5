use std::fs;

use ppcount::cli::{run, EXIT_FIELD_SPEC, EXIT_MISMATCH, EXIT_OK, EXIT_RANGE, EXIT_USAGE};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn ppcount(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ppcount").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn count_prints_one_record() {
    let r = ppcount(&["count", "--field", "9", "--method", "inclexcl", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(r.out.trim()).unwrap();
    assert_eq!(v["N"], "42120");
    assert_eq!(v["method"], "inclusion-exclusion");
    assert!(v.get("elapsed_s").is_none());

    let r = ppcount(&["count", "--field", "2^3", "--method", "criterion", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out, "q,N,method,field\n8,5376,criterion,2^3/1,1,0,1\n");
}

#[test]
fn timings_are_opt_in() {
    let r = ppcount(&["count", "--field", "5", "--format", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(r.out.trim()).unwrap();
    assert!(v["elapsed_s"].is_f64());
}

#[test]
fn field_spec_errors_exit_4() {
    for bad in ["8^1", "6", "2^3/1,0,0,1", "abc", "2^3/1,1"] {
        let r = ppcount(&["count", "--field", bad]);
        assert_eq!(r.code, EXIT_FIELD_SPEC, "{bad}: {}", r.err);
    }
}

#[test]
fn range_errors_exit_3() {
    assert_eq!(ppcount(&["count", "--field", "16", "--method", "interpolation"]).code, EXIT_RANGE);
    assert_eq!(ppcount(&["count", "--field", "2", "--method", "permanent"]).code, EXIT_RANGE);
    assert_eq!(ppcount(&["count", "--field", "23"]).code, EXIT_RANGE);
    assert_eq!(ppcount(&["table", "--qmax", "21"]).code, EXIT_RANGE);
    assert_eq!(ppcount(&["bound-report", "--qmax", "17"]).code, EXIT_RANGE);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(ppcount(&["count"]).code, EXIT_USAGE);
    assert_eq!(ppcount(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(ppcount(&["count", "--field", "5", "--method", "magic"]).code, EXIT_USAGE);
    assert_eq!(ppcount(&["--help"]).code, EXIT_OK);
}

#[test]
fn table_reports_rows_and_the_q8_discrepancy() {
    let r = ppcount(&["table", "--qmax", "5", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(
        r.out,
        "q,N,(q-1)!,method,status\n\
         2,0,1,interpolation,match\n\
         3,0,2,interpolation,match\n\
         4,12,6,interpolation,match\n\
         5,20,24,interpolation,match\n"
    );

    let r = ppcount(&["table", "--qmax", "13", "--format", "json"]);
    assert_eq!(r.code, EXIT_MISMATCH);
    assert!(r.err.contains("q = 8: expected 5368, got 5376"));
    let last: serde_json::Value = serde_json::from_str(r.out.lines().last().unwrap()).unwrap();
    assert_eq!(last["q"], 13);
    assert_eq!(last["status"], "extended");
    assert_eq!(last["method"], "permanent");
}

#[test]
fn table_markdown_is_transposed() {
    let r = ppcount(&["table", "--qmax", "4"]);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "| q | 2 | 3 | 4 |");
    assert_eq!(lines[2], "| N | 0 | 0 | 12 |");
    assert_eq!(lines[3], "| (q-1)! | 1 | 2 | 6 |");
}

#[test]
fn verify_lists_suites() {
    let r = ppcount(&["verify", "--field", "5"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("| parseval | pass |"));

    let r = ppcount(&["verify", "--field", "2^4", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("inclusion-exclusion-exhaustive,skipped,\"skipped (range)\""));
    let statuses: Vec<&str> = r.out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(statuses.iter().filter(|s| **s == "skipped").count(), 1);
    assert!(statuses.iter().all(|s| *s != "fail"));

    let a = ppcount(&["verify", "--field", "7", "--seed", "42"]);
    let b = ppcount(&["verify", "--field", "7", "--seed", "42"]);
    assert_eq!(a.out, b.out);
}

#[test]
fn bound_report_rows() {
    let r = ppcount(&["bound-report", "--qmax", "11", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.lines().count(), 8);
    let rows: Vec<serde_json::Value> = r.out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let q4 = rows.iter().find(|v| v["q"] == 4).unwrap();
    assert_eq!(q4["deviation"], "6");
    assert!((q4["theorem_rhs"].as_f64().unwrap() - 21.05).abs() < 0.01);
    assert!(rows.iter().all(|v| v["empirical_constant"].as_f64().unwrap() < 1.3155));
}

#[test]
fn workers_flag_beats_environment() {
    std::env::set_var("PPCOUNT_WORKERS", "not-a-number");
    let a = ppcount(&["count", "--field", "9", "--method", "permanent"]);
    std::env::set_var("PPCOUNT_WORKERS", "2");
    let b = ppcount(&["count", "--field", "9", "--method", "permanent", "--workers", "1"]);
    std::env::remove_var("PPCOUNT_WORKERS");
    assert_eq!((a.code, b.code), (EXIT_OK, EXIT_OK));
    assert_eq!(a.out, b.out);
}

#[test]
fn cache_appends_and_guards() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.ndjson");
    let cache = path.to_str().unwrap();

    assert_eq!(ppcount(&["count", "--field", "7", "--cache", cache]).code, EXIT_OK);
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("\"N\":\"630\""));

    // a consistent hit is not appended again
    assert_eq!(ppcount(&["count", "--field", "7", "--cache", cache]).code, EXIT_OK);
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 1);

    fs::write(&path, "{\"q\":7,\"N\":\"631\",\"method\":\"criterion\",\"field\":\"7^1\"}\n").unwrap();
    let r = ppcount(&["count", "--field", "7", "--cache", cache]);
    assert_eq!(r.code, EXIT_MISMATCH);
    assert!(r.err.contains("631"));

    fs::write(&path, "not json\n").unwrap();
    assert_eq!(ppcount(&["count", "--field", "7", "--cache", cache]).code, EXIT_USAGE);
}
