use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = vershik::cli::run(std::iter::once("vershik").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn derive_lists_return_words_and_tau() {
    let (code, out, _) = run(&["derive", "--sub", &data("chacon.sub")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("command: derive\n"));
    assert!(out.contains("return-words: 0 0s0 0s0s0 0110\n"));
    assert!(out.contains("tau.v4: v1 v2 v4 v4 v1 v2\n"));
}

#[test]
fn nesting_dot_has_eight_vertices_and_top_multiplicities() {
    let (code, out, _) =
        run(&["build-diagram", "--sub", &data("chacon.sub"), "--method", "nesting", "--format", "dot", "--depth", "1"]);
    assert_eq!(code, 0);
    let level1: Vec<&str> = out.lines().filter(|l| l.trim_start().starts_with("\"L1_") && l.ends_with("\";")).collect();
    assert_eq!(level1.len(), 8);
    let order = ["0.00", "0s.00", "0.0s0", "0s.0s0", "1.00", "0.11", "0.01", "1.10"];
    let want = [1, 1, 2, 2, 1, 1, 1, 1];
    for (name, k) in order.iter().zip(want) {
        let edges = out.lines().filter(|l| l.contains(&format!("\"L0_v0\" -> \"L1_{name}\""))).count();
        assert_eq!(edges, k, "{name}");
    }
}

#[test]
fn zero_steps_reports_start_only() {
    let (code, out, _) = run(&["vershik", "--sub", &data("chacon.sub"), "--method", "derivative", "--steps", "0"]);
    assert_eq!(code, 0);
    let results: Vec<&str> =
        out.lines().filter(|l| !l.starts_with("command") && !l.starts_with("input") && !l.starts_with("param.")).collect();
    assert_eq!(results.len(), 1);
    assert!(results[0].starts_with("start: "));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["derive"]).0, 2);
    assert_eq!(run(&["derive", "--sub", "/nonexistent.sub"]).0, 2);
    assert_eq!(run(&["lambda", "--sub", &data("chacon.sub")]).0, 2);
    assert_eq!(run(&["derive", "--sub", &data("chacon.sub"), "--cap", "3"]).0, 3);
    let (code, _, err) = run(&["derive", "--sub", &data("chacon.sub"), "--cap", "3"]);
    assert_eq!(code, 3);
    assert!(!err.is_empty());
}

#[test]
fn binary_matches_library_entry_point() {
    let path = data("thue_morse.sub");
    let out = Command::new(env!("CARGO_BIN_EXE_vershik")).args(["derive", "--sub", &path]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run(&["derive", "--sub", &path]).1);
    let bad = Command::new(env!("CARGO_BIN_EXE_vershik")).arg("frobnicate").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    for f in ["chacon.sub", "two_block.sub"] {
        let path = data(f);
        for cmd in ["analyze", "minimal", "nesting", "recognize", "jsymbol", "export"] {
            let a = run(&[cmd, "--sub", &path, "--depth", "2"]);
            assert_eq!(a, run(&[cmd, "--sub", &path, "--depth", "2"]), "{cmd} {f}");
        }
    }
}
