use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spinel_core::problems::maxcut::parse_stats_csv;
use spinel_core::{Polynomial, Trace, TrialHistogram};
use tempfile::TempDir;

fn spinel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinel"))
        .args(args)
        .env_remove("SPINEL_NEIGHBORHOOD_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_preset(dir: &TempDir, name: &str) -> PathBuf {
    let out = path(dir, &format!("{name}.txt"));
    let o = spinel(&["presets", "--name", name, "--output", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    out
}

#[test]
fn presets_writes_small_factor_hamiltonian() {
    let dir = TempDir::new().unwrap();
    let file = write_preset(&dir, "n291311_3");
    let text = fs::read_to_string(&file).unwrap();
    let h = Polynomial::parse_text(&text).unwrap();
    assert_eq!(h.terms().filter(|(m, _)| m.len() == 2).count(), 3);
    assert!(text.starts_with("c 3/2\n"));

    let listing = stdout(&spinel(&["presets"]));
    assert!(listing.lines().any(|l| l == "bit48_10"));
    let all = path(&dir, "all");
    assert!(spinel(&["presets", "--name", "all", "--output", s(&all)])
        .status
        .success());
    assert!(all.join("adder.txt").exists());
    assert_eq!(
        spinel(&["presets", "--name", "nope"]).status.code(),
        Some(1)
    );
}

#[test]
fn reduce_factor_preset_to_two_spins() {
    let dir = TempDir::new().unwrap();
    let input = write_preset(&dir, "n291311_3");
    let (out, trace) = (path(&dir, "out.txt"), path(&dir, "trace.txt"));
    let o = spinel(&[
        "reduce",
        "--input",
        s(&input),
        "--output",
        s(&out),
        "--trace",
        s(&trace),
        "--order",
        "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l == "c 1"), "{text}");
    assert!(text.lines().any(|l| l == "t -1 2 3"), "{text}");
    assert_eq!(
        Trace::parse_text(&fs::read_to_string(&trace).unwrap())
            .unwrap()
            .len(),
        1
    );

    let o = spinel(&[
        "backmap",
        "--trace",
        s(&trace),
        "--assign",
        "s2=+1 s3=+1",
        "--decode",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(
        line.contains("bits=1000001011 factor=523 cofactor=557"),
        "{line}"
    );
    let o = spinel(&[
        "backmap",
        "--trace",
        s(&trace),
        "--input",
        s(&out),
        "--decode",
    ]);
    let both = stdout(&o);
    assert!(
        both.contains("factor=523") && both.contains("factor=557"),
        "{both}"
    );
}

#[test]
fn empty_order_leaves_input_unchanged() {
    let dir = TempDir::new().unwrap();
    let input = write_preset(&dir, "worked_example");
    let out = path(&dir, "out.txt");
    let o = spinel(&["reduce", "--input", s(&input), "--output", s(&out)]);
    assert!(o.status.success());
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        fs::read_to_string(&input).unwrap()
    );
}

#[test]
fn greedy_reduction_of_ten_spin_factor_keeps_minimum() {
    let dir = TempDir::new().unwrap();
    let input = write_preset(&dir, "bit48_10");
    let out = path(&dir, "out.txt");
    let o = spinel(&[
        "reduce",
        "--input",
        s(&input),
        "--output",
        s(&out),
        "--order",
        "greedy",
        "--keep",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        Polynomial::parse_text(&fs::read_to_string(&out).unwrap())
            .unwrap()
            .num_variables(),
        2
    );
    let o = spinel(&["solve", "--input", s(&out)]);
    assert_eq!(stdout(&o).lines().next(), Some("-504"));
}

#[test]
fn solve_worked_example() {
    let dir = TempDir::new().unwrap();
    let input = write_preset(&dir, "worked_example");
    for method in ["brute", "eliminate"] {
        let o = spinel(&["solve", "--input", s(&input), "--method", method]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "-14\ns1=+1 s2=+1 s3=-1 s4=+1 s5=-1\n");
    }
}

#[test]
fn spectrum_of_single_coupling() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "h.txt");
    fs::write(&input, "t 1 1 2\n").unwrap();
    let o = spinel(&["spectrum", "--input", s(&input)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "energy,multiplicity\n-1,2\n1,2\n");
}

#[test]
fn maxcut_statistics_csv() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "stats.csv");
    let args = [
        "maxcut",
        "--n",
        "128",
        "--runs",
        "100",
        "--strategy",
        "2local",
        "--seed",
        "7",
        "--output",
        s(&out),
    ];
    let o = spinel(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let rows = parse_stats_csv(&text).unwrap();
    assert_eq!(rows.len(), 100);
    let mean = rows.iter().map(|r| r.removed_fraction).sum::<f64>() / 100.0;
    assert!(mean > 1.0 / 3.0, "mean {mean}");
    assert!(spinel(&args).status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), text);
}

#[test]
fn maxcut_verify_and_graph_input() {
    let o = spinel(&[
        "maxcut",
        "--n",
        "16",
        "--runs",
        "3",
        "--verify",
        "--strategy",
        "klocal",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stderr(&o).matches("verified").count(), 3);

    let dir = TempDir::new().unwrap();
    let graph = path(&dir, "k4.txt");
    fs::write(&graph, "n 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n").unwrap();
    let o = spinel(&["maxcut", "--input", s(&graph), "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("max cut 4 verified"));
    assert_eq!(spinel(&["maxcut", "--n", "7"]).status.code(), Some(1));
}

#[test]
fn mobius_scan_reports_critical_coupling() {
    let o = spinel(&["mobius", "--n", "8", "--grid", "1/4,3/8,1/2,5/8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("J* = 1/2"));
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.starts_with("j,min_energy"));

    let o = spinel(&["mobius", "--n", "8", "--j", "1"]);
    assert_eq!(Polynomial::parse_text(&stdout(&o)).unwrap().num_terms(), 12);
    assert_eq!(
        spinel(&["mobius", "--n", "8", "--grid", "1/8,1/4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn hopfield_histograms_parse_back() {
    let dir = TempDir::new().unwrap();
    let (pre, post) = (path(&dir, "pre.csv"), path(&dir, "post.csv"));
    let o = spinel(&[
        "hopfield",
        "--n",
        "8",
        "--p",
        "2",
        "--trials",
        "40",
        "--seed",
        "3",
        "--output",
        s(&pre),
        "--post-output",
        s(&post),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = TrialHistogram::parse_csv(&fs::read_to_string(&pre).unwrap()).unwrap();
    assert_eq!(rows.iter().map(|r| r.1).sum::<u64>(), 40);
    let rows = TrialHistogram::parse_csv(&fs::read_to_string(&post).unwrap()).unwrap();
    assert!(rows.iter().all(|r| r.2.len() == 6));
    assert!(stdout(&o).contains("pre: "));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "t 1 0 2\n").unwrap();
    assert_eq!(
        spinel(&["solve", "--input", s(&bad)]).status.code(),
        Some(1)
    );
    assert_eq!(
        spinel(&["solve", "--input", "/nonexistent"]).status.code(),
        Some(1)
    );
    assert_eq!(spinel(&["solve"]).status.code(), Some(1));

    let big = path(&dir, "big.txt");
    let text: String = (1..30).map(|i| format!("t 1 {i} {}\n", i + 1)).collect();
    fs::write(&big, text).unwrap();
    assert_eq!(
        spinel(&["solve", "--input", s(&big)]).status.code(),
        Some(3)
    );
    assert_eq!(
        spinel(&["spectrum", "--input", s(&big)]).status.code(),
        Some(3)
    );

    let input = write_preset(&dir, "bit48_10");
    let out = path(&dir, "out.txt");
    let refused = [
        "reduce",
        "--input",
        s(&input),
        "--output",
        s(&out),
        "--order",
        "greedy",
        "--max-neighborhood",
        "3",
    ];
    assert_eq!(spinel(&refused).status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_spinel"))
        .args([
            "reduce",
            "--input",
            s(&input),
            "--output",
            s(&out),
            "--order",
            "greedy",
        ])
        .env("SPINEL_NEIGHBORHOOD_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
