use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn parastat(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_parastat"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", dir.to_str().unwrap()]);
    parastat(&full, &[])
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn table(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn classify_counts() {
    for (group, bich, cf) in [("Z2xZ2", 16, 8), ("Z3", 3, 1)] {
        let d = TempDir::new().unwrap();
        let o = run_in(d.path(), &["classify", "--group", group]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let r = json(&d.path().join("classify.json"));
        assert_eq!(r["bicharacter_count"], bich);
        assert_eq!(r["commutation_factor_count"], cf);
        assert_eq!(r["passed"], true);
        assert_eq!(r["factors"].as_array().unwrap().len(), cf);
    }
}

#[test]
fn classify_rejects_bad_group() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["classify", "--group", "Z0"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_examples() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["verify", "--kind", "PB", "--p", "2", "--cutoff", "6"]);
    assert_eq!(code(&o), 0);
    let r = json(&d.path().join("verify.json"));
    assert!(r["report"]["max_residual"].as_f64().unwrap() <= 1e-10);

    let o = run_in(d.path(), &["verify", "--kind", "PBF", "--p", "2", "--theta", "0,0;0,0"]);
    assert_eq!(code(&o), 1);
    let r = json(&d.path().join("verify.json"));
    let worst = r["report"]["worst_relation"].as_str().unwrap();
    assert!(worst.contains('b') && worst.contains('f'), "{worst}");
    assert!(String::from_utf8_lossy(&o.stdout).contains(worst));

    let o = run_in(d.path(), &["verify", "--kind", "PF", "--p", "3"]);
    assert_eq!(code(&o), 0);
    let r = json(&d.path().join("verify.json"));
    assert_eq!(r["report"]["max_residual"].as_f64().unwrap(), 0.0);
}

#[test]
fn verify_csv_and_search() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["verify", "--kind", "PBF", "--p", "2", "--theta", "search", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let (header, rows) = table(&d.path().join("verify.csv"));
    assert_eq!(header, ["relation", "row", "residual"]);
    assert!(rows.iter().all(|r| num(&r[2]) <= 1e-10));
}

/// `⟨m+1|B⁺|m⟩` for one paraboson mode: `√(m+p)` from even `m`, `√(m+1)` from odd.
fn pb_raising(p: usize, m: usize) -> f64 {
    if m.is_multiple_of(2) {
        ((m + p) as f64).sqrt()
    } else {
        ((m + 1) as f64).sqrt()
    }
}

#[test]
fn fock_single_mode_paraboson() {
    for p in [1usize, 2, 3] {
        let d = TempDir::new().unwrap();
        let o = run_in(d.path(), &["fock", "--kind", "PB", "--p", &p.to_string()]);
        assert_eq!(code(&o), 0);
        let (header, rows) = table(&d.path().join("matrix_elements.csv"));
        assert_eq!(header, ["generator", "bra", "ket", "re", "im", "reference", "deviation"]);
        let up: Vec<_> = rows.iter().filter(|r| r[0] == "b1+").collect();
        assert_eq!(up.len(), 6);
        for r in up {
            let ket: usize = r[2].parse().unwrap();
            assert_eq!(r[1].parse::<usize>().unwrap(), ket + 1);
            assert!((num(&r[3]) - pb_raising(p, ket)).abs() < 1e-10);
            assert!(num(&r[6]) < 1e-10);
        }
    }
}

#[test]
fn fock_ladder_manifest() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["fock", "--kind", "PBF", "--p", "2"]);
    assert_eq!(code(&o), 0);
    let b = json(&d.path().join("basis.json"));
    for s in b["sectors"].as_array().unwrap() {
        let (m, n) = (s["m"].as_u64().unwrap(), s["n"].as_u64().unwrap());
        let expected = if m == 0 || n == 0 || n == 2 { 1 } else { 2 };
        assert_eq!(s["dim"].as_u64().unwrap(), expected, "V({m},{n})");
    }
    assert_eq!(b["states"].as_array().unwrap().len() as u64, b["dimension"].as_u64().unwrap());
}

#[test]
fn fock_rejects_plain_kinds() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run_in(d.path(), &["fock", "--kind", "CCR"])), 2);
}

#[test]
fn jc_resonant_quench_is_sinusoidal() {
    let d = TempDir::new().unwrap();
    let lambda = 0.3;
    let o = run_in(
        d.path(),
        &["jc", "--p", "1", "--lambda", "0.3", "--t-max", "20", "--t-steps", "200", "--init", "1,0,0"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = table(&d.path().join("dynamics.csv"));
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (c10, c01) = (col("P_1_0"), col("P_0_1"));
    assert_eq!(rows.len(), 201);
    for r in &rows {
        let t = num(&r[0]);
        let c = (lambda * t).cos().powi(2);
        assert!((num(&r[c10]) - c).abs() < 1e-8);
        assert!((num(&r[c01]) - (1.0 - c)).abs() < 1e-8);
    }
    let m = json(&d.path().join("manifest.json"));
    assert_eq!(m["diagnostics"]["passed"], true);
}

#[test]
fn jc_without_coupling_is_flat() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["jc", "--lambda", "0", "--init", "2,1,0"]);
    assert_eq!(code(&o), 0);
    let (_, rows) = table(&d.path().join("dynamics.csv"));
    for r in &rows {
        for (a, b) in r[1..].iter().zip(&rows[0][1..]) {
            assert!((num(a) - num(b)).abs() < 1e-12);
        }
    }
}

#[test]
fn jc_rejects_complex_dyn_coupling() {
    let d = TempDir::new().unwrap();
    let o = run_in(d.path(), &["jc", "--lambda", "0.1+0.2j"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda"));
    let o = run_in(d.path(), &["jc", "--lambda", "0.1", "--lambda1", "0.1", "--lambda2", "0.1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn jc_init_file() {
    let d = TempDir::new().unwrap();
    let state = d.path().join("psi.txt");
    // p = 1, cutoff 4 has ten ladder states; put the walker on (0,1).
    let lines: Vec<String> = (0..10).map(|i| if i == 1 { "1,0" } else { "0,0" }.to_string()).collect();
    std::fs::write(&state, lines.join("\n")).unwrap();
    let o = run_in(
        d.path(),
        &["jc", "--p", "1", "--cutoff", "4", "--init-file", state.to_str().unwrap(), "--t-steps", "4"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::write(&state, "2,0\n").unwrap();
    let o = run_in(d.path(), &["jc", "--p", "1", "--cutoff", "4", "--init-file", state.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn config_file_precedence() {
    let d = TempDir::new().unwrap();
    let cfg = d.path().join("run.conf");
    std::fs::write(&cfg, "# quench\np = 3\ncutoff = 5\nlambda = 0.2\nt_steps = 10\n").unwrap();
    let o = run_in(d.path(), &["jc", "--config", cfg.to_str().unwrap(), "--p", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = json(&d.path().join("manifest.json"));
    assert_eq!(m["config"]["p"], 1);
    assert_eq!(m["config"]["cutoff"], 5);
    assert_eq!(m["config"]["t_steps"], 10);
    assert_eq!(m["config"]["hamiltonian"], "dyn");

    std::fs::write(&cfg, "speed = 3\n").unwrap();
    assert_eq!(code(&run_in(d.path(), &["jc", "--config", cfg.to_str().unwrap()])), 2);
}

#[test]
fn sizing_errors_exit_three() {
    let d = TempDir::new().unwrap();
    let out = d.path().to_str().unwrap();
    let o = parastat(&["jc", "--out", out], &[("PARASTAT_MAX_DIM", "10")]);
    assert_eq!(code(&o), 3);
    let o = parastat(&["verify", "--kind", "PB", "--p", "6", "--modes-b", "2", "--out", out], &[]);
    assert_eq!(code(&o), 3);
}

#[test]
fn bad_arguments_exit_two() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run_in(d.path(), &["verify", "--kind", "XYZ"])), 2);
    assert_eq!(code(&run_in(d.path(), &["verify", "--kind", "PB", "--tol", "0"])), 2);
    assert_eq!(code(&run_in(d.path(), &["verify", "--kind", "PB", "--format", "xml"])), 2);
    assert_eq!(code(&parastat(&["jc", "--nonsense"], &[])), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["classify", "--group", "Z2xZ2"],
        &["verify", "--kind", "PBF", "--theta", "search"],
        &["fock", "--kind", "PBF", "--p", "3"],
        &["jc", "--hamiltonian", "dynstar", "--lambda1", "0.1+0.05j", "--lambda2", "0.1-0.05j", "--p", "3"],
    ];
    for args in runs {
        let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
        let (oa, ob) = (run_in(a.path(), args), run_in(b.path(), args));
        assert_eq!(code(&oa), code(&ob));
        let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            let x = std::fs::read(a.path().join(&n)).unwrap();
            let y = std::fs::read(b.path().join(&n)).unwrap();
            assert_eq!(x, y, "{args:?}: {n:?} differs");
        }
    }
}
