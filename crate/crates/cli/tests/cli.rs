use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn myerson(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_myerson"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_fixture() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p3.txt"), "n 3\n0 1\n1 2\n").unwrap();
    fs::write(dir.path().join("sq.spec"), "type=size n=3 seed=0 exponent=2\n").unwrap();
    dir
}

#[test]
fn exact_on_path_of_three() {
    let dir = path_fixture();
    let want = "0 2.66666666667\n1 3.66666666667\n2 2.66666666667\n";
    for method in ["connected", "subsets"] {
        let out = myerson(dir.path(), &["exact", "--graph", "p3.txt", "--game", "sq.spec", "--method", method]);
        assert_eq!(stdout(&out), want);
    }
}

#[test]
fn bound_values() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["bound", "--alg", "permutations", "--epsilon", "0.5", "--delta", "0.1", "--range", "10", "--n", "15"];
    let standard = myerson(dir.path(), &[&base[..], &["--formula", "standard"]].concat());
    assert_eq!(stdout(&standard), "600\n");
    let cube_root = myerson(dir.path(), &base);
    assert_eq!(stdout(&cube_root), "9\n");
    let degenerate = myerson(
        dir.path(),
        &["bound", "--alg", "hybrid", "--epsilon", "0.5", "--delta", "0.1", "--range", "10", "--n", "6", "--exact-levels", "2"],
    );
    assert_eq!(stdout(&degenerate), "0\n");
}

#[test]
fn cycle_file_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let out = myerson(dir.path(), &["gen-graph", "--model", "cycle", "--n", "4", "-o", "c4.txt"]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("c4.txt")).unwrap(), "n 4\n0 1\n0 3\n1 2\n2 3\n");
}

#[test]
fn generated_files_feed_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(myerson(d, &["gen-graph", "--model", "ba", "--n", "9", "--seed", "1", "-o", "g.txt"]).status.success());
    assert!(myerson(d, &["gen-game", "--spec", "type=submodular n=9 seed=2", "-o", "v.txt"]).status.success());
    assert!(myerson(d, &["gen-game", "--spec", "type=submodular n=9 seed=2", "--format", "spec", "-o", "v.spec"])
        .status
        .success());
    let exact = stdout(&myerson(d, &["exact", "--graph", "g.txt", "--game", "v.txt"]));
    assert_eq!(exact, stdout(&myerson(d, &["exact", "--graph", "g.txt", "--game", "v.spec"])));
    assert_eq!(exact.lines().count(), 9);
    let approx = stdout(&myerson(
        d,
        &["approx", "--alg", "hybrid", "--graph", "g.txt", "--game", "v.txt", "--samples", "20000", "--seed", "5"],
    ));
    let parse = |text: &str| -> Vec<f64> {
        text.lines().map(|l| l.split_once(' ').unwrap().1.parse().unwrap()).collect()
    };
    let l1: f64 = parse(&exact).iter().zip(parse(&approx)).map(|(a, b)| (a - b).abs()).sum();
    assert!(l1 < 0.1, "{l1}");
}

#[test]
fn omitted_seed_is_reported() {
    let dir = path_fixture();
    let out = myerson(dir.path(), &["approx", "--alg", "connected", "--graph", "p3.txt", "--game", "sq.spec", "--samples", "10"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    let seed = err.trim().strip_prefix("seed: ").expect("seed line");
    let replay = myerson(
        dir.path(),
        &["approx", "--alg", "connected", "--graph", "p3.txt", "--game", "sq.spec", "--samples", "10", "--seed", seed],
    );
    assert_eq!(stdout(&replay), String::from_utf8(out.stdout).unwrap());
}

#[test]
fn rejected_inputs_give_one_line_and_nonzero_exit() {
    let dir = path_fixture();
    let cases: [&[&str]; 8] = [
        &["frobnicate"],
        &["exact", "--graph", "p3.txt"],
        &["exact", "--graph", "missing.txt", "--game", "sq.spec"],
        &["approx", "--alg", "permutations", "--graph", "p3.txt", "--game", "sq.spec", "--samples", "0", "--seed", "1"],
        &["gen-graph", "--model", "cycle", "--n", "2"],
        &["gen-graph", "--model", "star", "--n", "4", "--edge-prob", "0.5"],
        &["bound", "--alg", "permutations", "--epsilon", "0", "--delta", "0.1", "--range", "1", "--n", "4"],
        &["exact", "--graph", "p3.txt", "--game", "sq.spec", "--bogus"],
    ];
    for args in cases {
        let out = myerson(dir.path(), args);
        assert!(!out.status.success(), "{args:?} succeeded");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn mismatched_sizes_are_rejected() {
    let dir = path_fixture();
    fs::write(dir.path().join("big.spec"), "type=uniform n=4 seed=1\n").unwrap();
    let out = myerson(dir.path(), &["exact", "--graph", "p3.txt", "--game", "big.spec"]);
    assert!(!out.status.success());
}

#[test]
fn bench_custom_grid_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "bench", "--grid", "custom", "--model", "erdos-renyi", "--edge-prob", "0.5", "--n", "7", "--games",
        "superadditive", "--seeds", "0..3", "--algs", "permutations,hybrid:1", "--samples", "100", "-o", "out.csv",
    ];
    assert!(myerson(dir.path(), &args).status.success());
    let csv = fs::read_to_string(dir.path().join("out.csv")).unwrap();
    let records = myerson::bench::parse_csv(&csv).unwrap();
    assert_eq!(records.len(), 3 * 2);
    assert!(records.iter().all(|r| r.samples == 100 && r.n == 7));
    assert!(myerson(dir.path(), &["bench", "--grid", "main", "--n", "9"]).status.code() != Some(0));
}
