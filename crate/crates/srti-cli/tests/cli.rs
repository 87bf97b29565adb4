use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CYCLIC: &str = "a : b c\nb : c a\nc : a b\n";
const PAIR: &str = "a : b\nb : a\n";

fn srti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srti")).args(args).output().unwrap()
}

fn srti_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_srti"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cyclic_instance_has_no_solution_under_every_algorithm() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "cyc.txt", CYCLIC);
    for algo in ["brute", "tcw", "fes", "auto"] {
        let o = srti(&["solve", s(&inst), "--mode", "existence", "--algo", algo]);
        assert_eq!(code(&o), 1, "{algo}");
        assert_eq!(stdout(&o), "NONE\n");
    }
}

#[test]
fn pair_instance_perfect() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "pair.txt", PAIR);
    for algo in ["brute", "tcw", "fes"] {
        let o = srti(&["solve", s(&inst), "--mode", "perfect", "--algo", algo]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), "a b\n");
    }
}

#[test]
fn max_with_tcw_needs_approx() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "pair.txt", PAIR);
    let o = srti(&["solve", s(&inst), "--mode", "max", "--algo", "tcw"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--approx"));
    let o = srti(&["solve", s(&inst), "--mode", "max", "--algo", "tcw", "--approx"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "a b\n");
    let o = srti(&["solve", s(&inst), "--mode", "max", "--algo", "brute", "--approx"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.txt", "a : (b\n");
    assert_eq!(code(&srti(&["solve", s(&bad)])), 2);
    assert_eq!(code(&srti(&["solve", "/nonexistent/file"])), 2);
    assert_eq!(code(&srti(&["solve"])), 2);
    let inst = file(&dir, "pair.txt", PAIR);
    assert_eq!(code(&srti(&["solve", s(&inst), "--mode", "sideways"])), 2);
    assert_eq!(code(&srti_env(&["solve", s(&inst)], &[("SRTI_BRUTE_EDGE_CAP", "x")])), 2);
}

#[test]
fn auto_falls_back_when_brute_force_is_capped() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.txt");
    assert_eq!(code(&srti(&["gen", "random", "--n", "9", "--edge-prob", "0.5", "--seed", "3", "--out", s(&out)])), 0);
    let brute = srti(&["solve", s(&out), "--mode", "max", "--algo", "brute"]);
    let fes = srti_env(&["solve", s(&out), "--mode", "max"], &[("SRTI_BRUTE_EDGE_CAP", "0")]);
    assert!(String::from_utf8_lossy(&fes.stderr).contains("algo: fes"));
    assert_eq!(code(&brute), code(&fes));
    assert_eq!(stdout(&brute).lines().count(), stdout(&fes).lines().count());
    let tcw = srti_env(&["solve", s(&out), "--mode", "perfect"], &[("SRTI_BRUTE_EDGE_CAP", "0"), ("SRTI_THREADS", "2")]);
    assert!(String::from_utf8_lossy(&tcw.stderr).contains("algo: tcw"));
    assert!(String::from_utf8_lossy(&tcw.stderr).contains("threads 2"));
    let brute = srti(&["solve", s(&out), "--mode", "perfect", "--algo", "brute"]);
    assert_eq!(code(&tcw), code(&brute));
}

#[test]
fn solved_matchings_recheck_as_stable() {
    let dir = TempDir::new().unwrap();
    for seed in 0..12 {
        let inst = dir.path().join(format!("r{seed}.txt"));
        let o = srti(&["gen", "random", "--n", "8", "--edge-prob", "0.4", "--tie-prob", "0.3", "--seed", &seed.to_string(), "--out", s(&inst)]);
        assert_eq!(code(&o), 0);
        for (mode, algo, want) in [("existence", "tcw", ""), ("perfect", "tcw", "PERFECT"), ("max", "fes", "")] {
            let o = srti(&["solve", s(&inst), "--mode", mode, "--algo", algo]);
            if code(&o) == 1 {
                continue;
            }
            let m = file(&dir, "m.txt", &stdout(&o));
            let c = srti(&["check", s(&inst), s(&m)]);
            assert_eq!(code(&c), 0);
            let verdict = stdout(&c);
            assert!(verdict.starts_with(want) && !verdict.starts_with("UNSTABLE"), "{mode}: {verdict}");
        }
    }
}

#[test]
fn check_reports_blocking_pairs() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "pair.txt", PAIR);
    let empty = file(&dir, "empty.txt", "");
    let o = srti(&["check", s(&inst), s(&empty)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "UNSTABLE\na b\n");
    let full = file(&dir, "full.txt", "b a\n");
    let o = srti(&["check", s(&inst), s(&full)]);
    assert_eq!((code(&o), stdout(&o)), (0, "PERFECT\n".to_string()));
    let tri = file(&dir, "tri.txt", "a : b c\nb : a\nc : a\n");
    let ab = file(&dir, "ab.txt", "a b\n");
    assert_eq!(stdout(&srti(&["check", s(&tri), s(&ab)])), "STABLE\n");
    let invalid = file(&dir, "inv.txt", "a b\nb c\n");
    assert_eq!(code(&srti(&["check", s(&tri), s(&invalid)])), 2);
    let unknown = file(&dir, "unk.txt", "a z\n");
    assert_eq!(code(&srti(&["check", s(&tri), s(&unknown)])), 2);
}

#[test]
fn random_generation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    for (p, seed) in [(&a, "7"), (&b, "7"), (&c, "8")] {
        assert_eq!(code(&srti(&["gen", "random", "--n", "8", "--seed", seed, "--out", s(p)])), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read(dir.path().join("a.manifest")).unwrap(), fs::read(dir.path().join("b.manifest")).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    let o1 = srti(&["gen", "random", "--n", "8", "--seed", "7"]);
    assert_eq!(o1.stdout, fs::read(&a).unwrap());
    assert_eq!(code(&srti(&["gen", "random", "--n", "4", "--edge-prob", "1.5"])), 2);
}

#[test]
fn clique_td_manifest_and_witness() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.txt", "vertices 3\n1 2\n1 3\n2 3\n");
    let out = dir.path().join("td.txt");
    let wit = dir.path().join("td.witness");
    let o = srti(&["gen", "clique-td", "--graph", s(&g), "--k", "3", "--clique", "1,2,3", "--witness", s(&wit), "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    let manifest = fs::read_to_string(dir.path().join("td.txt.manifest")).unwrap();
    assert!(manifest.contains("target: 159\n"), "{manifest}");
    assert!(manifest.contains("witness_size: 159\n"));
    let c = srti(&["check", s(&out), s(&wit)]);
    assert_eq!(stdout(&c), "STABLE\n");
    let o = srti(&["gen", "clique-td", "--graph", s(&g), "--k", "1"]);
    assert_eq!(code(&o), 2);
    let o = srti(&["gen", "clique-td", "--graph", s(&g), "--k", "2", "--clique", "1,4", "--witness", s(&wit)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn clique_tcw_manifest_and_witness() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k3.txt", "vertices 3\n1 2\n1 3\n2 3\n");
    let out = dir.path().join("tcw.txt");
    let wit = dir.path().join("tcw.witness");
    let o = srti(&["gen", "clique-tcw", "--graph", s(&g), "--k", "2", "--clique", "2,3", "--witness", s(&wit), "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    let manifest = fs::read_to_string(dir.path().join("tcw.txt.manifest")).unwrap();
    for key in ["C: 224\n", "kappa: 1422\n", "target: 1877\n", "width: 10\n"] {
        assert!(manifest.contains(key), "{key} missing from\n{manifest}");
    }
    assert_eq!(stdout(&srti(&["check", s(&out), s(&wit)])), "STABLE\n");
}

#[test]
fn break_ties_first_gives_strict_lists() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "t.txt", "a : (b c)\nb : (a c)\nc : a b\n");
    for policy in ["first", "random"] {
        let o = srti(&["gen", "break-ties", s(&inst), "--policy", policy, "--seed", "4"]);
        assert_eq!(code(&o), 0);
        assert!(!stdout(&o).contains('('), "{}", stdout(&o));
    }
    let o = srti(&["gen", "break-ties", s(&inst), "--policy", "first"]);
    assert_eq!(stdout(&o), "a : b c\nb : a c\nc : a b\n");
}

#[test]
fn perfectize_and_existencefy_commands() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "tri.txt", "a : b c\nb : a\nc : a\n");
    let out = dir.path().join("p.txt");
    assert_eq!(code(&srti(&["gen", "perfectize", s(&inst), "--k", "1", "--out", s(&out)])), 0);
    assert_eq!(code(&srti(&["solve", s(&out), "--mode", "perfect"])), 0);
    let ex = dir.path().join("e.txt");
    assert_eq!(code(&srti(&["gen", "existencefy", s(&inst), "--out", s(&ex)])), 0);
    // The triangle-free star has no perfect matching, so the guarded instance has no stable one.
    assert_eq!(code(&srti(&["solve", s(&ex)])), 1);
}

#[test]
fn decomposition_commands() {
    let dir = TempDir::new().unwrap();
    let tree = file(&dir, "tree.txt", "a : b c\nb : a d\nc : a\nd : b\n");
    let o = srti(&["decomp", s(&tree), "--from-fes"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("width: 1\n"));
    let d = file(&dir, "d.txt", &stdout(&o));
    let v = srti(&["decomp", s(&tree), "--validate", s(&d)]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("width: 1\n"));
    let solved = srti(&["solve", s(&tree), "--algo", "tcw", "--decomp", s(&d)]);
    assert_eq!(code(&solved), 0);

    let corrupt = file(&dir, "bad.txt", &stdout(&o).replacen(" a", "", 1));
    let v = srti(&["decomp", s(&tree), "--validate", s(&corrupt)]);
    assert_eq!(code(&v), 1);
    assert!(String::from_utf8_lossy(&v.stderr).contains("no bag"));
    let garbage = file(&dir, "garbage.txt", "node x : a b\nnode x : c d\nroot x\n");
    assert_eq!(code(&srti(&["decomp", s(&tree), "--validate", s(&garbage)])), 1);

    let cycle = file(&dir, "c5.txt", "a : b e\nb : a c\nc : b d\nd : c e\ne : d a\n");
    let o = srti(&["decomp", s(&cycle), "--exact-tiny"]);
    assert_eq!((code(&o), stdout(&o)), (0, "tcw: 2\n".to_string()));
    assert_eq!(code(&srti(&["decomp", s(&cycle)])), 2);
    assert_eq!(code(&srti(&["decomp", s(&cycle), "--exact-tiny", "--nice"])), 2);
}
