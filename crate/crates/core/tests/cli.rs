use std::fs;
use std::process::{Command, Output};

fn thue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn seq_bits() {
    let o = thue(&["seq", "tm", "--count", "8", "--format", "bits"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "01101001\n");
}

#[test]
fn shevelev_verify_small() {
    let o = thue(&["shevelev", "verify", "--a-max", "4", "--periods", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out
        .lines()
        .next()
        .unwrap()
        .starts_with("a=1 v=0 period=2 observed=2"));
    assert!(out
        .lines()
        .nth(3)
        .unwrap()
        .starts_with("a=4 v=2 period=8 observed=8"));
}

#[test]
fn shevelev_sets_and_halving() {
    let o = thue(&["shevelev", "sets", "--a", "1", "--bound", "16"]);
    assert_eq!(stdout(&o), "B 0 2 3 4 6 8 10 11 12 14 15\nC 1 5 7 9 13\n");
    let o = thue(&["shevelev", "halving", "--a", "3", "--bound", "1000"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn series_check_passes() {
    let o = thue(&["series", "check", "--a", "7", "--degree", "4096"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for name in ["star", "decimation", "lacunary", "coefficients", "values"] {
        assert!(out.contains(&format!("{name} pass")), "{out}");
    }
}

#[test]
fn products_and_dirichlet() {
    let o = thue(&["products", "eval", "--which", "P", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("P value=0.7071067811"));
    let o = thue(&["dirichlet", "eval", "--re", "0", "--im", "9.0647"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("re="));
    let o = thue(&["dirichlet", "eval", "--re", "-1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn dirichlet_zeros_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("zeros.csv");
    let grid = dir.path().join("grid.csv");
    let o = thue(&[
        "dirichlet",
        "zeros",
        "--re-min",
        "-0.5",
        "--re-max",
        "0.5",
        "--im-min",
        "8.5",
        "--im-max",
        "9.7",
        "--step",
        "0.05",
        "--out",
        out.to_str().unwrap(),
        "--grid-out",
        grid.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,abs"));
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(row[0].abs() < 1e-6 && (row[1] - 9.064_720_283_654_388).abs() < 1e-6);
    assert_eq!(
        fs::read_to_string(&grid).unwrap().lines().count(),
        1 + 21 * 25
    );
}

#[test]
fn repetition_and_primes() {
    let o = thue(&["repetition", "cube", "--source", "tm", "--len", "4096"]);
    assert_eq!(stdout(&o), "none\n");
    let o = thue(&["repetition", "square", "--word", "0110"]);
    assert_eq!(stdout(&o), "position=1 period=1 factor=11\n");
    let o = thue(&[
        "primes", "parity", "--bound", "20", "--base", "2", "--mod", "2",
    ]);
    let out = stdout(&o);
    assert!(out.contains("residue=0 count=3"));
    assert!(out.contains("residue=1 count=5"));
}

#[test]
fn oeis_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b079523.txt");
    let p = path.to_str().unwrap();
    let o = thue(&["oeis", "export", "--a", "1", "--count", "200", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&path)
        .unwrap()
        .starts_with("1 1\n2 5\n3 7\n4 9\n"));
    let o = thue(&[
        "oeis", "compare", "--id", "A079523", "--file", p, "--a", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "A079523 match compared=200\n");

    // a file for C_1 does not match C_3
    let o = thue(&["oeis", "compare", "--file", p, "--a", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch index=1"));

    let o = thue(&["oeis", "compare", "--file", p, "--a", "1", "--offset", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("offset mismatch"));

    let signs = dir.path().join("u.txt");
    thue(&[
        "oeis",
        "export",
        "--seq",
        "u",
        "--count",
        "4",
        "--out",
        signs.to_str().unwrap(),
    ]);
    assert_eq!(
        fs::read_to_string(&signs).unwrap(),
        "0 1\n1 -1\n2 -1\n3 1\n"
    );
}

#[test]
fn exit_codes() {
    let o = thue(&["seq", "tm", "--nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--nope"));
    let o = thue(&[
        "oeis",
        "compare",
        "--file",
        "/nonexistent/b.txt",
        "--a",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = thue(&["shevelev", "verify", "--a-max", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = thue(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
}
