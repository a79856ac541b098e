use std::fs;
use std::path::Path;
use std::process::Command;

use graph_energy::cli::run;
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("graph-energy").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

/// Byte offsets of `keys` in `json`, which must be increasing.
fn assert_key_order(json: &str, keys: &[&str]) {
    let pos: Vec<usize> = keys
        .iter()
        .map(|k| json.find(&format!("\"{k}\"")).unwrap_or_else(|| panic!("missing key {k}")))
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "key order {keys:?} in {json}");
}

#[test]
fn energy_of_identity_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let id2 = write(dir.path(), "id2.txt", "2 2\n1 0\n0 1\n");
    let (code, out, err) = invoke(&["energy", "--matrix", &id2]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "2.0\n", ""));

    let (code, out, _) = invoke(&["energy", "--matrix", &id2, "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["energy"], 2.0);
}

#[test]
fn certify_k4_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let (code, edges, _) = invoke(&["family", "--family", "complete:4"]);
    assert_eq!(code, 0);
    let k4 = write(dir.path(), "k4.edges", &edges);

    let (code, out, _) = invoke(&["certify", "--graph", &k4, "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["energy"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert_eq!(v["violations"], Value::Array(vec![]));
    assert_eq!(v["bounds"].as_array().unwrap().len(), 6);
    assert_key_order(&out, &["energy", "bounds", "violations", "tolerance"]);
    assert_key_order(&out, &["name", "applicable", "value", "diagnostics"]);

    let (code, text, _) = invoke(&["certify", "--family", "complete:4"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("energy           6.0\n"), "{text}");
    assert!(text.contains("violations       none"));
}

#[test]
fn certify_exits_2_on_violation() {
    let (code, out, _) = invoke(&["certify", "--family", "complete:4", "--tolerance", "-0.001"]);
    assert_eq!(code, 2);
    assert!(out.contains("VIOLATED"));
}

#[test]
fn bounds_lists_reports() {
    let (code, out, _) = invoke(&["bounds", "--family", "cycle:4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|b| b["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["KM_FIRST", "KM_ABSOLUTE", "THM1_UPPER", "THM2_ABSOLUTE", "WEAK_UPPER", "LOWB_LOWER", "SIGMA1_RAYLEIGH"]
    );
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "2 2\n1 0\n0 0\n");
    let (code, out, _) = invoke(&["bounds", "--matrix", &m]);
    assert_eq!(code, 0);
    assert!(out.contains("THM1_UPPER       inapplicable (entry_sum_at_least_cols_times_max)"), "{out}");
}

#[test]
fn family_writes_edge_list_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("petersen.edges");
    let (code, out, _) = invoke(&["family", "--family", "petersen", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let g = graph_energy::parse_edge_list(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((g.order(), g.size()), (10, 15));

    let (code, out, _) = invoke(&["family", "--family", "complete_bipartite:2:3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size"], 6);
}

#[test]
fn usage_and_input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.edges", "3\n0 1\n2 2\n");
    let (code, out, err) = invoke(&["energy", "--graph", &bad]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("line 3") && err.contains("self-loop"), "{err}");

    let malformed = write(dir.path(), "bad.txt", "2 2\n1 0\n0 zz\n");
    let (code, _, err) = invoke(&["energy", "--matrix", &malformed]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3") && err.contains("zz"), "{err}");

    let (code, _, err) = invoke(&["energy", "--matrix", "/nonexistent/file.txt"]);
    assert_eq!(code, 1);
    assert!(err.contains("/nonexistent/file.txt"));

    let (code, _, err) = invoke(&["transmogrify"]);
    assert_eq!(code, 1);
    assert!(err.contains("transmogrify"));

    let (code, _, err) = invoke(&["energy", "--family", "complete:3", "--bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("--bogus"));

    let (code, _, _) = invoke(&["energy"]);
    assert_eq!(code, 1);
    let (code, _, _) = invoke(&["energy", "--family", "complete:3", "--graph", &bad]);
    assert_eq!(code, 1);
    let (code, _, err) = invoke(&["search", "--n", "7", "--iterations", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("iterations"));
    let (code, _, _) = invoke(&["histogram", "--family", "cycle:5", "--bins", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn help_lists_flags_with_defaults() {
    for (sub, flags) in [
        ("energy", &["--matrix", "--graph", "--family", "--format", "--out"][..]),
        ("certify", &["--tolerance", "--format"][..]),
        ("montecarlo", &["--n", "--trials", "--seed", "--format"][..]),
        ("histogram", &["--n", "--seed", "--bins", "--graph", "--family"][..]),
        ("search", &["--n", "--seed", "--iterations"][..]),
        ("family", &["--family", "--out"][..]),
        ("bounds", &["--matrix", "--format"][..]),
    ] {
        let (code, out, _) = invoke(&[sub, "--help"]);
        assert_eq!(code, 0, "{sub}");
        for flag in flags {
            assert!(out.contains(flag), "{sub} help lacks {flag}");
        }
        for line in out.lines().filter(|l| l.trim_start().starts_with("--")) {
            if line.contains("--help") {
                continue;
            }
            // a flag's default is on its own line or the continuation below
            let idx = out.find(line).unwrap();
            let rest = &out[idx..];
            let block_end = rest[1..].find("\n  -").map_or(rest.len(), |e| e + 1);
            assert!(rest[..block_end].contains("default"), "{sub}: no default for {line}");
        }
    }
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["energy", "certify", "bounds", "family", "montecarlo", "histogram", "search"] {
        assert!(out.contains(sub));
    }
}

#[test]
fn histogram_csv_and_json() {
    let (code, csv, _) = invoke(&["histogram", "--family", "complete:2", "--bins", "2"]);
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("bin_lo,bin_hi,mass,reference_mass"));
    assert!(lines.next().unwrap().starts_with("-1.25,0.0,0.5,"));
    assert!(lines.next().unwrap().starts_with("0.0,1.25,0.5,"));

    let (code, out, _) = invoke(&["histogram", "--n", "40", "--seed", "3", "--bins", "10", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let mass: f64 = v["masses"].as_array().unwrap().iter().map(|m| m.as_f64().unwrap()).sum();
    assert!((mass - 1.0).abs() < 1e-12);
    assert_eq!(v["sample_count"], 40);
}

#[test]
fn search_and_montecarlo_are_reproducible() {
    let args = ["search", "--n", "7", "--seed", "4", "--iterations", "300", "--format", "json"];
    let (code, first, _) = invoke(&args);
    assert_eq!(code, 0);
    let (_, second, _) = invoke(&args);
    assert_eq!(first, second);
    assert_key_order(&first, &["n", "method", "best_energy", "km_absolute", "ratio", "evaluations", "seed", "best_graph"]);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["method"], "local");
    assert_eq!(v["seed"], 4);

    let (code, out, _) = invoke(&["search", "--n", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["method"], "exhaustive");
    assert_eq!(v["evaluations"], 64);

    let args = ["montecarlo", "--n", "30", "--trials", "3", "--seed", "1", "--format", "json"];
    let (code, first, _) = invoke(&args);
    assert_eq!(code, 0);
    let (_, second, _) = invoke(&args);
    assert_eq!(first, second);
    assert_key_order(
        &first,
        &["n", "trials", "seed", "mean_energy_ratio", "mean_sigma1_ratio", "max_sigma2_ratio", "per_trial"],
    );
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_graph-energy");
    let out = Command::new(exe).args(["energy", "--family", "cycle:4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "4.0\n");

    let out = Command::new(exe).args(["certify", "--family", "cycle:4", "--tolerance", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(exe).args(["nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = Command::new(exe).args(["--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
