use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nanophrase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn v4_values() {
    let o = run(&["--preset", "gauss", "invariant", "--name", "v4", "ABACDCBD:aaaa"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "v4 = 1 (mod 2)");
    let o = run(&["--preset", "gauss", "invariant", "--name", "v4", "0:"]);
    assert_eq!(stdout(&o).trim(), "v4 = 0 (mod 2)");
}

#[test]
fn linking_matrix_from_a_data_file() {
    let dir = std::env::temp_dir().join(format!("nanophrase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("d.cfg");
    std::fs::write(&cfg, "alpha: a b\n").unwrap();
    let o = run(&["--data", cfg.to_str().unwrap(), "invariant", "--name", "linking", "AB|A|B:ab"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("l[1,2] = 1·a"), "{out}");
    assert!(out.contains("l[1,3] = 1·b"), "{out}");
    assert!(out.contains("l[2,3] = 0"), "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn groups() {
    for (n, want) in [("4", "Z (+) Z/2"), ("3", "Z"), ("0", "Z")] {
        let o = run(&["--preset", "gauss", "group", "-r", "1", "-n", n]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), want, "n = {n}");
    }
}

#[test]
fn equiv_bracket_verify() {
    let o = run(&["--preset", "gauss", "equiv", "AA:a", "0:"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "EQUIVALENT (1 move)");

    let o = run(&["--preset", "gauss", "equiv", "ABAB:aa", "0:", "--max-rank", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "UNKNOWN");

    let o = run(&["--preset", "gauss", "bracket", "ABAB:aa", "ABACBC:aaa"]);
    assert!(o.status.success());
    // ABACBC contains ABAB as the subwords on {A,B} and {B,C}
    assert_eq!(stdout(&o).trim(), "2");

    let o = run(&["--preset", "gauss", "verify", "--name", "v4", "--degree", "4", "--max-rank", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS"));
    let o = run(&["--preset", "gauss", "verify", "--name", "v4", "--degree", "3", "--max-rank", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn exit_codes() {
    let o = run(&["--preset", "gauss", "invariant", "--name", "v4", "AB:aa"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--preset", "nope", "group", "-r", "1", "-n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--preset", "vknot", "invariant", "--name", "t", "AB|AB:a+a+"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = [
        "--preset", "gauss", "--seed", "11", "invariance", "--name", "v4", "--samples", "200", "--max-rank", "4", "-r",
        "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).trim(), "v4: 0 violations in 200 samples");
    let unseeded: Vec<&str> = args.iter().copied().filter(|&a| a != "--seed" && a != "11").collect();
    assert_eq!(run(&unseeded).status.code(), Some(2));
}
