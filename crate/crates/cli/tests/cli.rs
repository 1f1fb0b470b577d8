use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn kacq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kacq")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn row<'a>(table: &'a Value, alpha: &[u32]) -> &'a Value {
    let want: Vec<Value> = alpha.iter().map(|&x| Value::from(x)).collect();
    table["rows"].as_array().unwrap().iter().find(|r| r["alpha"].as_array().unwrap() == &want).expect("row present")
}

fn constant(v: &Value) -> String {
    let c = v.as_array().unwrap();
    assert!(c.len() <= 1, "not a constant: {v}");
    c.first().map_or("0/1".into(), |x| x.as_str().unwrap().to_string())
}

#[test]
fn compute_jordan_partition_counts() {
    let out = kacq(&["compute", "--config", &config("jordan.json"), "--bound", "4"]);
    assert!(out.status.success());
    let t = json(&out);
    for (n, p) in [(1, 1), (2, 2), (3, 3), (4, 5)] {
        let r = row(&t, &[n]);
        assert_eq!(constant(&r["A"]), "1/1");
        assert_eq!(constant(&r["I"]), "1/1");
        assert_eq!(constant(&r["M"]), format!("{p}/1"));
    }
}

#[test]
fn compute_kronecker_pattern() {
    let out = kacq(&["compute", "--config", &config("kronecker.json")]);
    assert!(out.status.success());
    let t = json(&out);
    for m in 0..=3u32 {
        for n in 0..=3u32 {
            if m + n == 0 {
                continue;
            }
            let expected = match m.abs_diff(n) {
                0 => "2/1",
                1 => "1/1",
                _ => "0/1",
            };
            assert_eq!(constant(&row(&t, &[m, n])["A"]), expected, "({m},{n})");
        }
    }
    // rows are in graded lexicographic order
    let alphas: Vec<(u64, u64)> =
        t["rows"].as_array().unwrap().iter().map(|r| (r["alpha"][0].as_u64().unwrap(), r["alpha"][1].as_u64().unwrap())).collect();
    let mut sorted = alphas.clone();
    sorted.sort_by_key(|&(a, b)| (a + b, a, b));
    assert_eq!(alphas, sorted);
}

#[test]
fn compute_free_cyclic_quiver() {
    let out = kacq(&["compute", "--config", &config("affine_a1_free.json"), "--bound", "1,1"]);
    assert!(out.status.success());
    let t = json(&out);
    assert_eq!(row(&t, &[1, 1])["A"], serde_json::json!(["1/1", "1/1"]));
}

#[test]
fn csv_output() {
    let out = kacq(&["compute", "--config", &config("jordan.json"), "--bound", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha_1,A,I,M,degree_ok,nonneg_ok,weyl_kac_ok");
    assert_eq!(lines[2], "2,1,1,2,true,true,true");
}

#[test]
fn verify_builtin_providers() {
    for (name, bound) in [("jordan.json", "6"), ("jordan_g2.json", "4"), ("kronecker.json", "3,3"), ("kronecker_g2.json", "3,3")] {
        let out = kacq(&["verify", "--config", &config(name), "--bound", bound]);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        let r = json(&out);
        assert_eq!(r["pass"], true);
    }
    let out = kacq(&["verify", "--config", &config("affine_a1_free.json")]);
    let r = json(&out);
    let case1 = &r["checks"][0];
    assert!(case1["name"].as_str().unwrap().contains("closed-form"));
    assert_eq!(case1["pass"], true);
}

#[test]
fn verify_reports_corrupted_table() {
    let dir = tempfile::tempdir().unwrap();
    // r for the nilpotent Kronecker relation with the (1,1) entry changed from 2q - 1 to 2q
    let text = r#"{"vertices": 2, "arrows": [[0, 1], [1, 0]], "provider": "table", "bound": [2, 2],
        "table": {"1,0": ["1"], "0,1": ["1"], "1,1": ["0", "2"], "2,0": ["1"], "0,2": ["1"],
                  "2,1": ["0", "0", "0", "1"], "1,2": ["0", "0", "0", "1"], "2,2": ["0", "0", "0", "0", "0", "0", "1"]}}"#;
    let path = write_config(dir.path(), "bad.json", text);
    let out = kacq(&["verify", "--config", &path]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let failed: Vec<&str> =
        r["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert!(failed.iter().any(|n| n.starts_with("product identity at (1,1)")), "{failed:?}");
}

#[test]
fn oracle_defaults_pass() {
    let out = kacq(&["oracle", "--config", &config("kronecker.json"), "--bound", "2,2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("fixed respecting representations over F_2 with f = [1, 1, 1]")));
    assert!(names.iter().any(|n| n.starts_with("M(2,2) at q=3")));
}

#[test]
fn oracle_budget_exit_code() {
    let out = kacq(&["oracle", "--config", &config("jordan.json")]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn oracle_field_override() {
    let out = kacq(&["oracle", "--config", &config("jordan.json"), "--bound", "2", "--fields", "4"]);
    assert!(out.status.success());
    let r = json(&out);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| !c["name"].as_str().unwrap().contains("q=2")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", "{\"vertices\": 2");
    assert_eq!(kacq(&["compute", "--config", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(kacq(&["compute", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
    let gap = write_config(
        dir.path(),
        "gap.json",
        r#"{"vertices": 1, "arrows": [[1]], "provider": "table", "table": {"1": ["0", "1"]}, "bound": [3]}"#,
    );
    let out = kacq(&["compute", "--config", &gap]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(2), (3)"));
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let cfg = config("kronecker.json");
    let first = kacq(&["compute", "--config", &cfg, "--bound", "2,2", "--cache", c]);
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache stored"));
    let second = kacq(&["compute", "--config", &cfg, "--bound", "2,2", "--cache", c]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));
    assert_eq!(first.stdout, second.stdout);

    let extended = kacq(&["compute", "--config", &cfg, "--bound", "2,3", "--cache", c]);
    assert!(String::from_utf8_lossy(&extended.stderr).contains("cache stored"));
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 2);

    for entry in std::fs::read_dir(&cache).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replace("2/1", "3/1")).unwrap();
    }
    let edited = kacq(&["compute", "--config", &cfg, "--bound", "2,2", "--cache", c]);
    let err = String::from_utf8_lossy(&edited.stderr);
    assert!(err.contains("checksum mismatch"), "{err}");
    assert_eq!(edited.stdout, first.stdout);
    assert!(edited.status.success());
}
