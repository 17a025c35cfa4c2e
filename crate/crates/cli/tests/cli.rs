use std::process::{Command, Output};

use garside::census::sample_rng;
use garside::conjugacy::{fast_rigid_conjugate, planted_instance, WitnessPattern};
use garside::Scheme;

const EXAMPLE: &str = "2 3 2 1 1 3 2 1 1 2 1 3 2 3 2 1 3 1 3 2 1";

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn certified_word() -> String {
    for i in 0.. {
        let p = WitnessPattern { j: 2, i: 1 };
        let x = planted_instance(4, 15, 0, p, &mut sample_rng(11, 15, i)).unwrap();
        if fast_rigid_conjugate(&x, &WitnessPattern::all(4), Scheme::default())
            .unwrap()
            .is_certified()
        {
            return x.to_word().to_string();
        }
    }
    unreachable!()
}

#[test]
fn nf_command() {
    let o = garside(&["nf", "1 2 1", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "D^1 |\n");
    let o = garside(&["nf", EXAMPLE, "--n", "4"]);
    assert_eq!(
        stdout(&o),
        "D^0 | 2 3 2 1 . 3 1 2 1 . 1 2 3 1 2 . 2 3 2 1 . 3 1 2 1\n"
    );
    let o = garside(&["nf", "-1 D", "--n", "3"]);
    assert_eq!(stdout(&o), "D^0 | 2 1\n");
}

#[test]
fn parse_and_parameter_errors() {
    assert_eq!(garside(&["nf", "1 x", "--n", "3"]).status.code(), Some(2));
    assert_eq!(garside(&["nf", "5", "--n", "3"]).status.code(), Some(3));
    assert_eq!(garside(&["nf", "1", "--n", "1"]).status.code(), Some(3));
    assert_eq!(
        garside(&["experiment", "bogus", "--n", "4", "--lengths", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        garside(&["rigid-conj", EXAMPLE, "--n", "4", "--scheme", "odd"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn rigid_conj_command() {
    let o = garside(&["rigid-conj", EXAMPLE, "--n", "4"]);
    let s = stdout(&o);
    assert!(
        s.contains("rigid: D^1 | 1 2 3 1 . 3 1 . 3 1 2 1 . 1 2 3 1 2"),
        "{s}"
    );
    assert!(s.contains("status: rigid-no-cert"));
    let o = garside(&["rigid-conj", EXAMPLE, "--n", "4", "--strict-paper"]);
    assert_eq!(stdout(&o), "I don't know\n");
    let o = garside(&["rigid-conj", "1 2 2", "--n", "3"]);
    assert_eq!(stdout(&o), "I don't know\n");
    let o = garside(&["rigid-conj", &certified_word(), "--n", "4"]);
    assert!(stdout(&o).contains("status: certified"));
}

#[test]
fn conjugacy_command() {
    let x = certified_word();
    let y = format!("-2 1 {x} -1 2");
    let o = garside(&["conjugacy", &x, &y, "--n", "4"]);
    let s = stdout(&o);
    assert!(o.status.success());
    assert!(s.starts_with("conjugate\n") || s == "I don't know\n", "{s}");
    let o = garside(&["conjugacy", &x, &format!("{x} 1"), "--n", "4"]);
    assert!(!stdout(&o).starts_with("conjugate\n"));
    assert_eq!(
        garside(&["conjugacy", "1", "1", "--n", "3", "--n2", "4"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn census_and_sampling() {
    let o = garside(&["census", "count", "--n", "3", "--length", "2"]);
    assert_eq!(stdout(&o), "sphere: 8\nball: 45\n");
    let o = garside(&["census", "growth", "--n", "3", "--length", "4"]);
    assert_eq!(stdout(&o), "2 2.000000000\n3 2.000000000\n4 2.000000000\n");
    assert_eq!(
        garside(&["census", "growth", "--n", "2", "--length", "4"])
            .status
            .code(),
        Some(3)
    );
    let args = [
        "sample",
        "sphere",
        "--n",
        "4",
        "--length",
        "6",
        "--samples",
        "5",
        "--seed",
        "8",
    ];
    let a = stdout(&garside(&args));
    assert_eq!(a, stdout(&garside(&args)));
    assert_eq!(a.lines().count(), 5);
    let o = garside(&[
        "sample",
        "ball",
        "--n",
        "3",
        "--length",
        "0",
        "--samples",
        "2",
    ]);
    assert_eq!(stdout(&o), "D^0 |\nD^0 |\n");
}

#[test]
fn experiment_output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.csv"));
        let o = garside(&[
            "experiment",
            "rigid-proportion",
            "--n",
            "4",
            "--lengths",
            "10,20",
            "--samples",
            "200",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let text = String::from_utf8(files[0].clone()).unwrap();
    assert!(text.starts_with("n,l,samples,successes,proportion,ci_low,ci_high,seed,elapsed_ms\n"));
    let seq = garside(&[
        "experiment",
        "rigid-proportion",
        "--n",
        "4",
        "--lengths",
        "10,20",
        "--samples",
        "200",
        "--seed",
        "42",
        "--sequential",
    ]);
    assert_eq!(seq.stdout, files[0]);
}

#[test]
fn pa_proportion_labels() {
    let dir = tempfile::tempdir().unwrap();
    let o = garside(&[
        "experiment",
        "pa-proportion",
        "--n",
        "4",
        "--lengths",
        "10",
        "--samples",
        "20",
    ]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("conjugate-to-rigid") && !err.contains("pseudo-Anosov"));
    let wf = dir.path().join("witness.txt");
    std::fs::write(&wf, "# one witness\n1 2\n").unwrap();
    let o = garside(&[
        "experiment",
        "pa-proportion",
        "--n",
        "4",
        "--lengths",
        "10",
        "--samples",
        "20",
        "--witness-file",
        wf.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stderr.clone())
        .unwrap()
        .contains("pseudo-Anosov"));
    assert!(stdout(&o).trim_start().starts_with('['));
}
