use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use toric_ustp_cli::run;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.display().to_string()
}

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toric-ustp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    std::io::Write::write_all(&mut f, contents.as_bytes()).unwrap();
    f
}

#[test]
fn classgroup_example() {
    let (code, out, _) = exec(&["classgroup", &fixture("a1.cone")]);
    assert_eq!(code, 0);
    assert!(out.contains("invariant factors: [2]; order: 2; exponent: 2\n"), "{out}");
}

#[test]
fn duval_example() {
    let (code, out, _) = exec(&["duval", "A", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("group: Z/4; D_min: 4; equation: xz - y^4\n"), "{out}");
    let (code, out, _) = exec(&["duval", "check-an", "12"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("A12: ok\nverdict: PASS\n"), "{out}");
}

#[test]
fn verify_failure_exit_code() {
    let (code, out, _) = exec(&["verify", &fixture("a1.cone"), "--ray", "0", "--D", "1", "--amax", "2"]);
    assert_eq!(code, 2);
    assert!(out.contains("verdict: FAIL\nwitness: a=2 monomial (2,-1)\n"), "{out}");

    let (code, out, _) = exec(&["verify", &fixture("a1.cone"), "--ray", "0", "--D", "2", "--amax", "3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("verdict: PASS\n"), "{out}");
}

#[test]
fn verify_with_multiplicities() {
    let (code, out, _) = exec(&[
        "verify", &fixture("a2.cone"), "--ray", "0", "--ray", "1", "--b", "1,2", "--D", "3", "--amax", "2",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("ideal: 1*P0 + 2*P1\n"), "{out}");
    assert!(out.starts_with("command: verify --ray 0 --ray 1 --b 1,2 --D 3 --amax 2\n"));
}

#[test]
fn multiplier_note_only_when_not_cyclic() {
    let (_, out, _) = exec(&["multiplier", &fixture("klein.cone")]);
    assert!(out.contains("D: 4\nD_min: 2\nnote:"), "{out}");
    let (_, out, _) = exec(&["multiplier", &fixture("a4.cone")]);
    assert!(out.contains("D: 5\nD_min: 5\n") && !out.contains("note:"), "{out}");
}

#[test]
fn cone_subcommands() {
    let (code, out, _) = exec(&["cone", "hilbert", &fixture("a2.cone")]);
    assert_eq!(code, 0);
    assert!(out.contains("hilbert basis (3 elements):\n  (0,1)\n  (1,0)\n  (3,-1)\n"), "{out}");
    let (code, out, _) = exec(&["cone", "dual", &fixture("a1.cone")]);
    assert_eq!(code, 0);
    assert!(out.contains("dual rays:\n  (0,1)\n  (2,-1)\n"), "{out}");
}

#[test]
fn cone_info_round_trips() {
    for name in ["a3.cone", "skew7.cone", "t123.cone", "cyc9.cone"] {
        let (code, first, _) = exec(&["cone", "info", &fixture(name)]);
        assert_eq!(code, 0);
        let dim = first.lines().find_map(|l| l.strip_prefix("dim: ")).unwrap();
        let mut echoed = format!("dim {dim}\n");
        for l in first.lines().skip_while(|l| *l != "rays:").skip(1) {
            match l.strip_prefix("  ") {
                Some(ray) => echoed += &format!("{ray}\n"),
                None => break,
            }
        }
        let f = write_temp(&echoed);
        let (_, second, _) = exec(&["cone", "info", f.path().to_str().unwrap()]);
        let strip_label = |s: &str| s.lines().filter(|l| !l.starts_with("label:")).collect::<Vec<_>>().join("\n");
        assert_eq!(strip_label(&first), strip_label(&second), "{name}");
    }
}

#[test]
fn json_input_matches_text() {
    let (_, text, _) = exec(&["classgroup", &fixture("a1.cone")]);
    let (code, json_in, _) = exec(&["classgroup", "--json", &fixture("a1.json")]);
    assert_eq!(code, 0);
    assert_eq!(text, json_in);

    let (_, out, _) = exec(&["classgroup", &fixture("a1.cone"), "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "classgroup");
    assert_eq!(v["body"][0], "invariant factors: [2]; order: 2; exponent: 2");
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", &fixture("cyc9.cone"), "--ray", "2", "--D", "3", "--amax", "3"];
    let first = exec(&args);
    for _ in 0..3 {
        assert_eq!(exec(&args), first);
    }
}

#[test]
fn input_errors_exit_one() {
    let bad_files = [
        "dim 2\n1 0\n0 0\n",
        "dim 2\n1 0\n-1 0\n0 1\n",
        "dim 2\n1 x\n",
        "dim 2\n",
        "nonsense",
        "dim 2\n1 0\n1 0 1\n",
        "dim 2\n4294967296 1\n0 1\n",
    ];
    for src in bad_files {
        let f = write_temp(src);
        let (code, out, err) = exec(&["classgroup", f.path().to_str().unwrap()]);
        assert_eq!(code, 1, "{src:?}");
        assert!(out.is_empty());
        assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err:?}");
    }
    let f = write_temp("dim 2\n1 0\n-1 0\n0 1\n");
    let (_, _, err) = exec(&["cone", "info", f.path().to_str().unwrap()]);
    assert!(err.contains("not strongly convex"), "{err}");

    let a1 = fixture("a1.cone");
    let usage = [
        vec!["verify", &a1, "--ray", "5", "--D", "1", "--amax", "1"],
        vec!["verify", &a1, "--ray", "0", "--ray", "0", "--D", "1", "--amax", "1"],
        vec!["verify", &a1, "--ray", "0", "--b", "1,2", "--D", "1", "--amax", "1"],
        vec!["verify", &a1, "--ray", "0", "--D", "1"],
        vec!["duval", "E", "9"],
        vec!["duval", "check-an", "0"],
        vec!["frobnicate"],
        vec!["cone", "info", "/does/not/exist.cone"],
    ];
    for args in usage {
        let (code, _, err) = exec(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err:?}");
    }
}

#[test]
fn non_simplicial_cone() {
    let f = write_temp("dim 3\n1 0 0\n0 1 0\n1 0 1\n0 1 1\n");
    let (code, out, _) = exec(&["classgroup", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("invariant factors: []; order: infinite; exponent: infinite\nfree rank: 1\n"), "{out}");
    let (code, _, err) = exec(&["cone", "hilbert", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: unsupported cone"), "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toric-ustp");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["verify", &fixture("a1.cone"), "--ray", "0", "--D", "1", "--amax", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = status(&["duval", "D", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("group: (Z/2)^2; D_min: 2;"));
    let o = status(&["classgroup"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn malformed_files_never_panic(src in "(dim|label|#|[-+]?[0-9]{1,12}|[ \t]|\n|x){0,40}") {
        let f = write_temp(&src);
        let (code, _, err) = exec(&["cone", "info", f.path().to_str().unwrap()]);
        prop_assert!(code == 0 || (code == 1 && err.starts_with("error: ")));
    }
}
