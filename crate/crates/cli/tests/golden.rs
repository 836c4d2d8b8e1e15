//! Byte-for-byte comparison of `dold` output against `tests/golden/*.json`.
//! Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("betti_p_2_1", &["betti", "P(2,1)"]),
    ("betti_p_3_2", &["betti", "P(3,2)"]),
    ("betti_sphere_product", &["betti", "S(2)xCP(1)*S(4)xCP(2)"]),
    ("betti_s0", &["betti", "S(0)xCP(1)*S(2)xCP(3)"]),
    ("betti_rp_cp", &["betti", "RP(3)xCP(2)"]),
    ("lefschetz_s2_cp1", &["lefschetz", "S(2)xCP(1)", "--signs", "-/+"]),
    ("lefschetz_identity", &["lefschetz", "S(2)xCP(2)*S(4)xCP(1)", "--signs", "++/++"]),
    ("maxrank_s2_cp1", &["maxrank", "S(2)xCP(1)"]),
    ("maxrank_two_factors", &["maxrank", "S(2)xCP(1)*S(0)xCP(3)"]),
    ("maxrank_even", &["maxrank", "S(4)xCP(2)*S(2)xCP(2)"]),
    ("frk_sphere_2", &["frk", "S(2)xCP(1)*S(4)xCP(3)", "--prime", "2"]),
    ("frk_sphere_3", &["frk", "S(2)xCP(1)", "--prime", "3"]),
    ("frk_dold_2", &["frk", "P(2,1)*P(4,3)", "--prime", "2"]),
    ("frk_dold_odd_m", &["frk", "P(1,1)*P(2,3)", "--prime", "2"]),
    ("carlsson_sphere", &["carlsson", "S(2)xCP(1)*S(2)xCP(3)"]),
    ("carlsson_dold", &["carlsson", "P(2,1)*P(2,3)"]),
    ("conjecture_dold", &["conjecture", "P(3,1)*P(5,2)"]),
    ("ss_case1_1_1", &["ss", "case1", "--m", "1", "--n", "1"]),
    ("ss_case1_3_2", &["ss", "case1", "--m", "3", "--n", "2"]),
    ("ss_case2_3_1", &["ss", "case2", "--m", "3", "--n", "1", "--alpha", "0,0", "--beta", "0,0"]),
    ("ss_case2_1_3", &["ss", "case2", "--m", "1", "--n", "3", "--alpha", "1,0", "--beta", "0,1"]),
    ("ss_case2_h", &["ss", "case2", "--m", "3", "--n", "3", "--h", "x^8"]),
    ("coindex_dold_3_2", &["coindex", "--dold", "3", "2", "--case", "1"]),
    ("coindex_truncated", &["coindex", "--algebra", "@fixtures/truncated.json", "--class", "t"]),
    ("coindex_infinite", &["coindex", "--algebra", "@fixtures/polynomial.json", "--class", "t"]),
    ("involution_t1", &["involution", "--kind", "T1", "--m", "2", "--n", "1", "--samples", "256"]),
    ("involution_t2", &["involution", "--kind", "T2", "--m", "1", "--n", "2", "--samples", "256"]),
    ("involution_t3", &["involution", "--kind", "T3", "--m", "3", "--n", "1", "--samples", "256"]),
    ("involution_z4", &["involution", "--kind", "Z4", "--m", "1", "--n", "1", "--samples", "256"]),
    ("involution_z2z2", &["involution", "--kind", "Z2Z2", "--m", "2", "--n", "3", "--samples", "256"]),
    ("involution_control", &["involution", "--kind", "conjugation", "--m", "2", "--n", "2", "--samples", "256"]),
    ("rigidity_2_3", &["rigidity", "--size", "2", "--prime", "3", "--bound", "2"]),
];

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn resolve(arg: &str) -> String {
    match arg.strip_prefix('@') {
        Some(rel) => crate_dir().join("tests").join(rel).display().to_string(),
        None => arg.to_string(),
    }
}

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_dold"))
        .args(args.iter().map(|a| resolve(a)))
        .output()
        .expect("spawn dold");
    assert!(
        out.status.success(),
        "dold {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.json"))
}

fn check(name: &str, actual: &str, update: bool) -> Option<String> {
    let path = golden_path(name);
    if update {
        std::fs::write(&path, actual).expect("write golden");
        return None;
    }
    let expected = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(_) => return Some(format!("{name}: missing {}", path.display())),
    };
    (expected != actual).then(|| format!("{name}: output differs from {}", path.display()))
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let failures: Vec<String> = CASES
        .iter()
        .filter_map(|(name, args)| check(name, &run(args), update))
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn golden_directory_has_no_strays() {
    let known: Vec<PathBuf> = CASES.iter().map(|(name, _)| golden_path(name)).collect();
    let dir = crate_dir().join("tests/golden");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        assert!(known.contains(&path), "unreferenced golden file {}", path.display());
    }
}

#[test]
fn fixture_paths_do_not_leak_into_output() {
    let out = run(&["coindex", "--algebra", "@fixtures/truncated.json", "--class", "t"]);
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).display().to_string();
    assert!(!out.contains(&root));
}
