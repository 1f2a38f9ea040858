//! End-to-end checks of the command-line surface: verbs, exit codes, golden
//! transcripts, JSON shape, format round trips and DOT determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ataz"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn ataz")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

#[test]
fn simulate_prints_the_worked_transcript() {
    let out = run(&[
        "simulate",
        "--ata",
        data("a1.ata").to_str().unwrap(),
        "--word",
        "(0.5,a)(0.7,a)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "ACCEPTED\n{(q0,0)} --0.5--> {(q0,0.5)} --a--> {(q0,0.5),(q1,0)} --0.7--> \
         {(q0,1.2),(q1,0.7)} --a--> {(q0,1.2),(q1,0),(q1,0.7)}\n"
    );
}

#[test]
fn simulate_rejects_with_exit_one() {
    let out = run(&[
        "simulate",
        "--ata",
        data("a1.ata").to_str().unwrap(),
        "--word",
        "(0.5,a)(1.0,a)",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "REJECTED\n");
}

#[test]
fn simulate_accepts_fraction_delays() {
    let out = run(&[
        "simulate",
        "--ata",
        data("a1.ata").to_str().unwrap(),
        "--word",
        "(1/3,a)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("{(q0,1/3),(q1,0)}"));
}

#[test]
fn sat_reports_nonempty_with_witness() {
    let out = run(&["sat", "--mtl", "(F a) U[1,2] c", "--letters", "b"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("NON-EMPTY\nwitness: "), "{text}");
}

#[test]
fn sat_reports_empty_for_contradictions() {
    let out = run(&["sat", "--mtl", "a & !a"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("EMPTY\n"));
}

#[test]
fn sat_json_is_deterministic() {
    let args = ["sat", "--mtl", "(F a) U[1,2] c", "--letters", "b", "--json"];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(a.trim()).unwrap();
    assert_eq!(v["verdict"], "non-empty");
    assert!(v["witness"].is_string());
    assert!(v["nodes"].is_number());
}

#[test]
fn empty_verb_exit_codes() {
    let out = run(&["empty", "--ata", data("a1.ata").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1)); // non-empty language

    let out = run(&["empty", "--ata", data("missing.ata").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_carry_positions_and_exit_three() {
    let dir = std::env::temp_dir().join("ataz-cli-err");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ata");
    std::fs::write(&bad, "ata T;\nalphabet a;\ninit q0\naccepting;\n").unwrap();
    let out = run(&["empty", "--ata", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("4:1") || err.contains("3:"), "diagnostic: {err}");
}

#[test]
fn entail_worked_example_and_witness() {
    let out = run(&[
        "entail",
        "--z",
        data("chain_small.zone").to_str().unwrap(),
        "--zprime",
        data("chain_large.zone").to_str().unwrap(),
        "--M",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ENTAILS\n");

    // swapped direction fails and prints a witness valuation
    let out = run(&[
        "entail",
        "--z",
        data("chain_large.zone").to_str().unwrap(),
        "--zprime",
        data("chain_small.zone").to_str().unwrap(),
        "--M",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("NOT-ENTAILS\n"), "{text}");
    assert!(text.contains("witness: q."), "{text}");
}

#[test]
fn gen_hard_entail_pipeline() {
    let dir = std::env::temp_dir().join("ataz-cli-genhard");
    std::fs::create_dir_all(&dir).unwrap();
    let cnf = dir.join("f.cnf");
    let z = dir.join("z.zone");
    let zp = dir.join("zp.zone");

    // satisfiable: not entailed
    std::fs::write(&cnf, "p cnf 5 2\n1 2 3 0\n-4 -1 -5 0\n").unwrap();
    let out = run(&[
        "gen-hard",
        "--cnf",
        cnf.to_str().unwrap(),
        "--z",
        z.to_str().unwrap(),
        "--zprime",
        zp.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "M 56\n");
    let out = run(&[
        "entail",
        "--z",
        z.to_str().unwrap(),
        "--zprime",
        zp.to_str().unwrap(),
        "--M",
        "56",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // unsatisfiable: entailed
    std::fs::write(&cnf, "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n").unwrap();
    run(&[
        "gen-hard",
        "--cnf",
        cnf.to_str().unwrap(),
        "--z",
        z.to_str().unwrap(),
        "--zprime",
        zp.to_str().unwrap(),
    ]);
    let out = run(&[
        "entail",
        "--z",
        z.to_str().unwrap(),
        "--zprime",
        zp.to_str().unwrap(),
        "--M",
        "56",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn modelcheck_verbs() {
    let out = run(&[
        "modelcheck",
        "--ta",
        data("spaced.ta").to_str().unwrap(),
        "--spec",
        data("a1.ata").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("EMPTY"));

    let out = run(&[
        "modelcheck",
        "--ta",
        data("trivial.ta").to_str().unwrap(),
        "--spec",
        data("a1.ata").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn translate_round_trips_through_empty() {
    let dir = std::env::temp_dir().join("ataz-cli-translate");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&["translate", "--mtl", "(F a) U[1,2] c", "--letters", "b"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# phi ="));
    let path = dir.join("translated.ata");
    std::fs::write(&path, &text).unwrap();
    let out = run(&["empty", "--ata", path.to_str().unwrap(), "--prune", "bounded"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dot_export_is_stable() {
    let dir = std::env::temp_dir().join("ataz-cli-dot");
    std::fs::create_dir_all(&dir).unwrap();
    let d1 = dir.join("g1.dot");
    let d2 = dir.join("g2.dot");
    for d in [&d1, &d2] {
        let out = run(&[
            "sat",
            "--mtl",
            "(F a) U[1,2] c",
            "--letters",
            "b",
            "--prune",
            "none",
            "--dot",
            d.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(1));
    }
    let g1 = std::fs::read_to_string(&d1).unwrap();
    let g2 = std::fs::read_to_string(&d2).unwrap();
    assert_eq!(g1, g2);
    assert!(g1.starts_with("digraph"));
    assert!(g1.contains("EMPTYNODE"));
}

#[test]
fn jobs_flag_keeps_verdicts() {
    for jobs in ["1", "4"] {
        let out = run(&[
            "empty",
            "--ata",
            data("a2.ata").to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert_eq!(out.status.code(), Some(1), "jobs={jobs}");
    }
}

#[test]
fn width_bound_verb() {
    let out = run(&["width-bound", "--mtl", "(F a) U[1,2] c"]);
    assert_eq!(stdout(&out), "width-bound: 1\n");
    let out = run(&["width-bound", "--mtl", "(a U[1,2] b) U[0,1] c", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["one_sided"], false);
    assert_eq!(v["width_bound"], serde_json::Value::Null);
}
