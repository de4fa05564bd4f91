//! CLI-level acceptance: byte determinism of every subcommand under a
//! fixed manifest (criterion 13), schema conformance of the JSON output,
//! and the documented exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_grothkit")
}

fn write_input(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("binary runs")
}

struct Fixtures {
    _dir: tempdir::TempDir,
    matrix: PathBuf,
    adjacency: PathBuf,
    digraph: PathBuf,
    tensor: PathBuf,
    centered_psd: PathBuf,
    bounded: PathBuf,
    zero_diag: PathBuf,
    hypothesis: PathBuf,
}

// minimal temp-dir helper to avoid a dev-dependency
mod tempdir {
    pub struct TempDir(std::path::PathBuf);
    impl TempDir {
        pub fn new(tag: &str) -> std::io::Result<Self> {
            let path =
                std::env::temp_dir().join(format!("grothkit-test-{tag}-{}", std::process::id()));
            std::fs::create_dir_all(&path)?;
            Ok(Self(path))
        }
        pub fn path(&self) -> &std::path::Path {
            &self.0
        }
    }
    impl Drop for TempDir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

fn fixtures() -> Fixtures {
    let dir = tempdir::TempDir::new("fixtures").unwrap();
    let d = dir.path().to_path_buf();
    let matrix = write_input(&d, "m.txt", "dense 3 3\n1 -2 0\n3 1 -1\n0 2 -3\n");
    let adjacency = write_input(
        &d,
        "adj.txt",
        "dense 4 4\n1 1 0 0\n1 1 0 0\n0 0 1 1\n0 0 1 1\n",
    );
    let digraph = write_input(&d, "g.txt", "graph 5 6\n0 1\n1 2\n2 3\n3 4\n0 2\n1 3\n");
    let tensor = write_input(
        &d,
        "t.txt",
        "tensor3 5 4\n0 1 2 1\n1 2 3 -1\n2 3 4 1\n0 3 4 1\n",
    );
    // 3×3 centered PSD: Gram of mean-centered rows
    let centered_psd = write_input(&d, "psd.txt", "dense 3 3\n2 -1 -1\n-1 2 -1\n-1 -1 2\n");
    let bounded = write_input(&d, "b.txt", "dense 3 3\n1 -1 0.5\n-0.5 1 -1\n0 1 -1\n");
    let zero_diag = write_input(&d, "zd.txt", "dense 3 3\n0 -2 1\n-2 0 3\n1 3 0\n");
    let hypothesis = write_input(&d, "hyp.txt", "dense 2 2\n2 1\n1 2\n");
    Fixtures {
        _dir: dir,
        matrix,
        adjacency,
        digraph,
        tensor,
        centered_psd,
        bounded,
        zero_diag,
        hypothesis,
    }
}

fn subcommand_invocations(f: &Fixtures) -> Vec<(&'static str, Vec<String>)> {
    let m = f.matrix.to_str().unwrap().to_string();
    let adj = f.adjacency.to_str().unwrap().to_string();
    let g = f.digraph.to_str().unwrap().to_string();
    let t = f.tensor.to_str().unwrap().to_string();
    let psd = f.centered_psd.to_str().unwrap().to_string();
    let b = f.bounded.to_str().unwrap().to_string();
    let zd = f.zero_diag.to_str().unwrap().to_string();
    let hyp = f.hypothesis.to_str().unwrap().to_string();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        (
            "cutnorm",
            s(&[
                "cutnorm",
                "--input",
                &m,
                "--trials",
                "16",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        (
            "infty1",
            s(&[
                "infty1",
                "--input",
                &m,
                "--trials",
                "16",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        (
            "regularity",
            s(&[
                "regularity",
                "--input",
                &adj,
                "--eps",
                "0.5",
                "--delta",
                "0.5",
                "--trials",
                "16",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        (
            "fk",
            s(&[
                "fk",
                "--input",
                &b,
                "--eps",
                "0.3",
                "--trials",
                "16",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        (
            "acyclic",
            s(&[
                "acyclic",
                "--input",
                &g,
                "--trials",
                "16",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        (
            "lin3",
            s(&["lin3", "--input", &t, "--restarts", "4", "--seed", "7"]),
        ),
        (
            "kernel",
            s(&[
                "kernel",
                "--input",
                &psd,
                "--identity",
                "3",
                "--trials",
                "32",
                "--seed",
                "7",
            ]),
        ),
        (
            "lp",
            s(&[
                "lp",
                "--input",
                &zd,
                "--p",
                "3",
                "--trials",
                "16",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        ("lp", s(&["lp", "--input", &zd, "--p", "1", "--m", "3"])),
        (
            "lp",
            s(&[
                "lp",
                "--input",
                &m,
                "--p",
                "2",
                "--r",
                "2",
                "--restarts",
                "4",
                "--seed",
                "7",
            ]),
        ),
        (
            "graph",
            s(&["graph", "--input", &g, "--trials", "16", "--seed", "7"]),
        ),
        ("oracle", s(&["oracle", "cutnorm", "--input", &m])),
        ("oracle", s(&["oracle", "infty1", "--input", &m])),
        ("oracle", s(&["oracle", "ground-state", "--input", &g])),
        (
            "oracle",
            s(&["oracle", "clust", "--input", &psd, "--identity", "2"]),
        ),
        ("oracle", s(&["oracle", "maxsat3", "--input", &t])),
        ("oracle", s(&["oracle", "mp", "--input", &zd, "--p", "2"])),
    ]
}

#[test]
fn criterion_13_byte_determinism() {
    let f = fixtures();
    let mut pass = true;
    let mut detail = String::new();
    for (name, args) in subcommand_invocations(&f) {
        for mode in [&[][..], &["--json"][..], &["--csv"][..]] {
            let mut full: Vec<String> = args.clone();
            full.extend(mode.iter().map(|s| s.to_string()));
            full.push("--threads".into());
            full.push("1".into());
            let argv: Vec<&str> = full.iter().map(|s| s.as_str()).collect();
            let first = run(&argv);
            let second = run(&argv);
            let ok =
                first.status.success() && second.status.success() && first.stdout == second.stdout;
            if !ok {
                pass = false;
                detail.push_str(&format!(
                    "{name} {:?} mode {:?}: status {:?}/{:?}\nstderr: {}\n",
                    args,
                    mode,
                    first.status,
                    second.status,
                    String::from_utf8_lossy(&first.stderr)
                ));
            }
        }
    }
    println!(
        "criterion 13 [{}] CLI byte determinism: identical bytes across reruns of every subcommand{}",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() { String::new() } else { format!("\n{detail}") }
    );
    assert!(pass, "{detail}");
}

#[test]
fn outputs_validate_against_published_schemas() {
    let f = fixtures();
    let schema_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas");
    for (name, args) in subcommand_invocations(&f) {
        let mut full = args.clone();
        full.push("--json".into());
        let argv: Vec<&str> = full.iter().map(|s| s.as_str()).collect();
        let out = run(&argv);
        assert!(
            out.status.success(),
            "{name} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let value: Value = serde_json::from_slice(&out.stdout)
            .unwrap_or_else(|e| panic!("{name}: invalid JSON: {e}"));
        let schema_text =
            std::fs::read_to_string(schema_dir.join(format!("{name}.schema.json"))).unwrap();
        let schema: Value = serde_json::from_str(&schema_text).unwrap();
        if let Err(e) = validate(&schema, &value) {
            panic!("{name}: schema violation: {e}\noutput: {value}");
        }
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let f = fixtures();
    let m = f.matrix.to_str().unwrap();

    // 0 on success
    assert_eq!(
        run(&["oracle", "cutnorm", "--input", m]).status.code(),
        Some(0)
    );

    // 2 on malformed input
    let dir = tempdir::TempDir::new("badinput").unwrap();
    let bad = write_input(dir.path(), "bad.txt", "dense 2 2\n1 2 nonsense 4\n");
    assert_eq!(
        run(&["cutnorm", "--input", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    // 2 on missing file
    assert_eq!(
        run(&["cutnorm", "--input", "/nonexistent/x.txt"])
            .status
            .code(),
        Some(2)
    );

    // 3 on the unsupported lp regime
    let out = run(&["lp", "--input", m, "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported regime"));

    // 3 on oracle budget overrun
    let big_entries = vec!["0"; 30 * 30].join(" ");
    let big = write_input(
        dir.path(),
        "big.txt",
        &format!("dense 30 30\n{big_entries}\n"),
    );
    assert_eq!(
        run(&["oracle", "cutnorm", "--input", big.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn wall_time_stays_off_stdout() {
    let f = fixtures();
    let m = f.matrix.to_str().unwrap();
    let out = run(&["oracle", "cutnorm", "--input", m]);
    assert!(!String::from_utf8_lossy(&out.stdout).contains("wall_time"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall_time_ms"));
}

// --- minimal JSON Schema validator (the subset the published schemas use:
// type, properties, required, items, enum, oneOf) ---

fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    if let Some(variants) = schema.get("oneOf").and_then(Value::as_array) {
        let mut errors = Vec::new();
        for variant in variants {
            match validate(variant, value) {
                Ok(()) => return Ok(()),
                Err(e) => errors.push(e),
            }
        }
        return Err(format!("no oneOf variant matched: {errors:?}"));
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{value} not in enum {allowed:?}"));
        }
    }
    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        if !names.iter().any(|t| type_matches(t, value)) {
            return Err(format!("{value} does not match type {names:?}"));
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if value.get(key).is_none() {
                return Err(format!("missing required key `{key}`"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        for (key, sub) in props {
            if let Some(inner) = value.get(key) {
                validate(sub, inner).map_err(|e| format!("{key}: {e}"))?;
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, inner) in arr.iter().enumerate() {
                validate(items, inner).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
    }
    Ok(())
}

fn type_matches(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "number" => value.is_number(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        _ => false,
    }
}
