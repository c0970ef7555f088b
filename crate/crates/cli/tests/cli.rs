use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_at-lab"));
    c.env_remove("AT_LAB_THREADS")
        .env_remove("AT_LAB_ENUM_CAP")
        .env_remove("AT_LAB_TIME_BUDGET");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", name]);
    let o = run(dir, &full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir.join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn gen_summaries() {
    let dir = TempDir::new().unwrap();
    for (args, summary) in [
        (vec!["hypercube", "3"], "vertices 8, edges 12"),
        (vec!["cycle", "5"], "vertices 5, edges 5"),
        (vec!["tree", "--pruefer", "1,1"], "vertices 4, edges 3"),
    ] {
        let mut full = vec!["gen"];
        full.extend(args);
        full.extend(["-o", "g.toml"]);
        let o = run(dir.path(), &full);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), summary);
    }
    // the Prüfer sequence 1,1 decodes to the star centred at 1
    let text = fs::read_to_string(dir.path().join("g.toml")).unwrap();
    assert!(text.contains("edges = [[0, 1], [1, 2], [1, 3]]"), "{text}");
}

#[test]
fn gen_to_stdout_is_a_document() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["gen", "path", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("format = \"at-lab-graph/1\""));
    assert_eq!(
        String::from_utf8_lossy(&o.stderr).trim(),
        "vertices 3, edges 2"
    );
}

#[test]
fn bad_parameters_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["gen", "cycle", "2"])), 2);
    assert_eq!(code(&run(dir.path(), &["gen", "hypercube"])), 2);
    assert_eq!(code(&run(dir.path(), &["gen", "tree"])), 2);
    assert_eq!(code(&run(dir.path(), &["gen", "wheel", "5"])), 2);
    assert_eq!(code(&run(dir.path(), &["at", "missing.toml"])), 2);
    assert_eq!(code(&run(dir.path(), &["theorems", "--claim", "nope"])), 2);
}

#[test]
fn product_and_corona_counts() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    gen(d, "q2.toml", &["hypercube", "2"]);
    gen(d, "p4.toml", &["path", "4"]);
    gen(d, "c3.toml", &["cycle", "3"]);
    gen(d, "c4.toml", &["cycle", "4"]);
    for (args, summary) in [
        (["product", "q2.toml", "p4.toml"], "vertices 16, edges 28"),
        (["corona", "c3.toml", "c4.toml"], "vertices 15, edges 27"),
        (["corona", "q2.toml", "p4.toml"], "vertices 20, edges 32"),
    ] {
        let mut full = args.to_vec();
        full.extend(["-o", "out.toml"]);
        let o = run(d, &full);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), summary);
    }
    let text = fs::read_to_string(d.join("out.toml")).unwrap();
    assert!(text.contains("generator = \"corona\""));
    assert!(text.contains("params = [\"hypercube(2)\", \"path(4)\"]"));
}

#[test]
fn at_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    gen(d, "q4.toml", &["hypercube", "4"]);
    gen(d, "c5.toml", &["cycle", "5"]);
    gen(d, "c3.toml", &["cycle", "3"]);
    let o = run(d, &["at", "--bipartite", "q4.toml"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("AT = 3\n"));
    let o = run(d, &["at", "--exact", "c5.toml"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("AT = 3\n"));
    assert!(stdout(&o).contains("refuted level 2: 2 orientations"));
    run(d, &["product", "c3.toml", "c3.toml", "-o", "t33.toml"]);
    let o = run(
        d,
        &["at", "--exact", "t33.toml", "--parallel", "--threads", "2"],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("AT = 4\n"));
    assert!(stdout(&o).contains("refuted level 3: 148 orientations"));
    let o = run(d, &["at", "--bipartite", "c5.toml"]);
    assert_eq!(code(&o), 2);
}

const PETERSEN: &str =
    "0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n";

#[test]
fn bounds_bracket_exits_three() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "petersen.txt", PETERSEN);
    let o = run(dir.path(), &["at", "--bounds", p.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).contains("lower: 3 (chromatic)"));
    assert!(stdout(&o).contains("AT = [3,4]"));
}

#[test]
fn diff_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    gen(d, "c4.toml", &["cycle", "4"]);
    gen(d, "c3.toml", &["cycle", "3"]);
    gen(d, "k2.toml", &["path", "2"]);
    write(d, "c4.arcs", "0 1\n1 2\n2 3\n3 0\n");
    write(d, "c3.arcs", "0 1\n1 2\n2 0\n");
    write(d, "k2.arcs", "1 0\n");
    for (g, a, expect) in [
        ("c4.toml", "c4.arcs", "even 2\nodd 0\ndiff 2\n"),
        ("c3.toml", "c3.arcs", "even 1\nodd 1\ndiff 0\n"),
        ("k2.toml", "k2.arcs", "even 1\nodd 0\ndiff 1\n"),
    ] {
        let o = run(d, &["diff", "--graph", g, "--arcs", a]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).starts_with(expect), "{}", stdout(&o));
    }
    write(d, "bad.arcs", "0 2\n");
    assert_eq!(
        code(&run(
            d,
            &["diff", "--graph", "c4.toml", "--arcs", "bad.arcs"]
        )),
        2
    );
}

fn certificate(level: usize, arcs: &str, diff: Option<&str>) -> String {
    let diff = diff
        .map(|d| format!("diff = \"{d}\"\n"))
        .unwrap_or_default();
    format!(
        "format = \"at-lab-certificate/1\"\nlevel = {level}\nmethod = \"enumeration\"\n{diff}arcs = {arcs}\n\n\
         [graph]\nformat = \"at-lab-graph/1\"\nlabels = [\"0\", \"1\", \"2\"]\nedges = [[0, 1], [1, 2], [0, 2]]\n"
    )
}

#[test]
fn verify_verdicts() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(
        d,
        "ok.toml",
        &certificate(3, "[[0, 1], [1, 2], [0, 2]]", Some("1")),
    );
    write(
        d,
        "cyclic.toml",
        &certificate(2, "[[0, 1], [1, 2], [2, 0]]", None),
    );
    write(
        d,
        "tight.toml",
        &certificate(2, "[[0, 1], [1, 2], [0, 2]]", None),
    );
    write(
        d,
        "wrongdiff.toml",
        &certificate(3, "[[0, 1], [1, 2], [0, 2]]", Some("5")),
    );
    let o = run(d, &["verify", "ok.toml"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("accepted: AT <= 3"));
    let o = run(d, &["verify", "cyclic.toml"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("diff = 0"));
    let o = run(d, &["verify", "tight.toml"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("outdegree 2"));
    assert_eq!(code(&run(d, &["verify", "wrongdiff.toml"])), 1);
}

#[test]
fn emitted_certificates_reverify() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    gen(d, "q3.toml", &["hypercube", "3"]);
    gen(d, "k4.toml", &["complete", "4"]);
    gen(d, "c7.toml", &["cycle", "7"]);
    write(d, "petersen.txt", PETERSEN);
    for (g, mode) in [
        ("q3.toml", "--bipartite"),
        ("q3.toml", "--exact"),
        ("k4.toml", "--exact"),
        ("c7.toml", "--exact"),
        ("petersen.txt", "--bounds"),
    ] {
        let o = run(d, &["at", mode, g, "--cert", "cert.toml"]);
        assert!(matches!(code(&o), 0 | 3), "{}", stdout(&o));
        let v = run(d, &["verify", "cert.toml"]);
        assert_eq!(code(&v), 0, "{g} {mode}: {}", stdout(&v));
        let again = run(d, &["diff", "--cert", "cert.toml"]);
        assert_eq!(code(&again), 0);
        assert!(!stdout(&again).contains("diff 0\n"));
    }
}

#[test]
fn theorem_tables() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let o = run(
        d,
        &["theorems", "--claim", "hypercube", "--n", "1..6", "--table"],
    );
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.contains(" pass ")));

    let o = run(
        d,
        &[
            "theorems",
            "--claim",
            "cube-tree",
            "--n",
            "1..4",
            "--trees",
            "catalog",
            "--table",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().skip(1).all(|r| r.contains(" pass ")));

    let o = run(
        d,
        &["theorems", "--claim", "toroidal", "--max", "4", "--table"],
    );
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let instances: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|r| r.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(instances, ["C3□C3", "C3□C4", "C4□C4"]);
}

#[test]
fn theorem_json_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = [
        "theorems",
        "--claim",
        "corona-bracket",
        "--claim",
        "chi-product",
    ];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let first = stdout(&a).lines().next().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["claim"], "corona-bracket");
    assert_eq!(v["outcome"], "pass");
    assert!(v.get("millis").is_none());
}

#[test]
fn failing_claims_exit_one() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        &[
            "theorems",
            "--claim",
            "not-choosable",
            "--n",
            "2",
            "--table",
        ],
    );
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn environment_sets_budgets_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    gen(d, "c4.toml", &["cycle", "4"]);
    write(d, "c4.arcs", "0 1\n1 2\n2 3\n3 0\n");
    let args = ["diff", "--graph", "c4.toml", "--arcs", "c4.arcs"];
    let o = bin()
        .current_dir(d)
        .env("AT_LAB_ENUM_CAP", "2")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "diff 2\nengine polynomial\n");
    let o = bin()
        .current_dir(d)
        .env("AT_LAB_ENUM_CAP", "2")
        .args(args)
        .args(["--enum-cap", "10"])
        .output()
        .unwrap();
    assert!(stdout(&o).ends_with("engine enumeration\n"));
    let o = bin()
        .current_dir(d)
        .env("AT_LAB_THREADS", "0")
        .args(["verify", "x"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
