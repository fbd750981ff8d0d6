use std::fs;
use std::path::Path;

use proptest::prelude::*;
use twinning::format::{parse_building, write_building};
use twinning::Report;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twinning").chain(args.iter().copied());
    let code = twinning::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fano.bld");
    let (code, out, _) = run(&["gen", "pg2", "--q", "2", "-o", p(&file)]);
    assert_eq!(code, 0);
    assert!(out.contains("21 chambers"));
    let (code, out, _) = run(&["validate", "building", p(&file)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(Report::parse(&out).get("RESULT"), Some("pass"));

    let text = fs::read_to_string(&file).unwrap();
    fs::write(&file, text.replace("%building 1", "%building 9")).unwrap();
    assert_eq!(run(&["validate", "building", p(&file)]).0, 3);
    assert_eq!(run(&["validate", "building", p(&dir.path().join("missing"))]).0, 3);
    assert_eq!(run(&["gen", "pg2", "-o", p(&file)]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 3);
}

#[test]
fn broken_building_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("thin.bld");
    assert_eq!(run(&["gen", "thin", "--type", "A2", "-o", p(&file)]).0, 0);
    let text = fs::read_to_string(&file).unwrap();
    // A hexagon with commuting generators.
    fs::write(&file, text.replace("1 3\n3 1", "1 2\n2 1")).unwrap();
    let (code, out, _) = run(&["validate", "building", p(&file)]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(Report::parse(&out).get("RESULT"), Some("fail"));
}

#[test]
fn lco_on_symplectic_quadrangle_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w2.bld");
    assert_eq!(run(&["gen", "sp4", "--q", "2", "-o", p(&file)]).0, 0);
    let (code, out, _) = run(&["check", "lco", "--building", p(&file)]);
    assert_eq!(code, 1);
    assert!(out.contains("failure: residue"), "{out}");
    assert_eq!(Report::parse(&out).get("LCO"), Some("fail"));

    let fano = dir.path().join("fano.bld");
    run(&["gen", "pg2", "--q", "2", "-o", p(&fano)]);
    let (code, out, _) = run(&["check", "lsco", "--building", p(&fano)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(Report::parse(&out).get("LSCO"), Some("pass"));
}

#[test]
fn codistance_and_fop() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("fano.bld");
    let f = dir.path().join("seed.cod");
    run(&["gen", "pg2", "--q", "2", "-o", p(&b)]);
    let (code, out, _) = run(&["codist", "from-opposite", "--building", p(&b), "--chamber", "3", "-o", p(&f)]);
    assert_eq!(code, 0);
    assert!(out.contains("|f^op| = 8"));
    let (code, out, _) = run(&["validate", "codistance", p(&f), "--building", p(&b)]);
    assert_eq!(code, 0);
    assert_eq!(Report::parse(&out).get("FOP_SIZE"), Some("8"));
    let (code, out, _) = run(&["fop", "--codistance", p(&f), "--building", p(&b)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("components: 1"));

    let text = fs::read_to_string(&f).unwrap();
    let line = text.lines().find(|l| l.starts_with("0 ")).unwrap().to_string();
    let word = &line[2..];
    let loose = if word == "-" { "p p".to_string() } else { format!("{word} p p") };
    fs::write(&f, text.replace(&format!("\n{line}\n"), &format!("\n0 {loose}\n"))).unwrap();
    let (code, _, err) = run(&["validate", "codistance", p(&f), "--building", p(&b)]);
    assert_eq!(code, 0);
    assert!(err.contains("rewritten"), "{err}");

    let bad = if word == "-" { "p" } else { "-" };
    fs::write(&f, text.replace(&format!("\n{line}\n"), &format!("\n0 {bad}\n"))).unwrap();
    assert_eq!(run(&["validate", "codistance", p(&f), "--building", p(&b)]).0, 1);
    assert_eq!(run(&["codist", "from-opposite", "--building", p(&b), "--chamber", "21", "-o", p(&f)]).0, 3);
}

#[test]
fn twin_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("fano.bld");
    let f = dir.path().join("seed.cod");
    let out_dir = dir.path().join("twin");
    run(&["gen", "pg2", "--q", "2", "-o", p(&b)]);
    run(&["codist", "from-opposite", "--building", p(&b), "--chamber", "0", "-o", p(&f)]);
    let (code, out, _) = run(&["twin", "build", "--building", p(&b), "--codistance", p(&f), "-o", p(&out_dir)]);
    assert_eq!(code, 0, "{out}");
    let r = Report::parse(&out);
    assert_eq!(r.get("TW_AXIOMS"), Some("pass"));
    assert_eq!(r.get("ATLAS_SIZE"), Some("21"));
    assert_eq!(r.get("SEED_MATCH"), Some("pass"));
    let stored = fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert_eq!(stored, out.trim_end_matches('\n').to_string() + "\n");

    let (code, out, _) = run(&["twin", "verify", p(&out_dir)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(Report::parse(&out).get("RESULT"), Some("pass"));

    let plus = out_dir.join("plus.bld");
    let text = fs::read_to_string(&plus).unwrap();
    assert!(text.contains("name pg2q2_plus"));
    let (code, _, _) = run(&["twin", "build", "--building", p(&b), "--codistance", p(&f), "-o", p(&out_dir), "--cap", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn twin_build_refuses_quadrangle() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("w2.bld");
    let f = dir.path().join("seed.cod");
    let out_dir = dir.path().join("twin");
    run(&["gen", "sp4", "--q", "2", "-o", p(&b)]);
    run(&["codist", "from-opposite", "--building", p(&b), "--chamber", "0", "-o", p(&f)]);
    let (code, out, _) = run(&["twin", "build", "--building", p(&b), "--codistance", p(&f), "-o", p(&out_dir)]);
    assert_eq!(code, 1, "{out}");
    let r = Report::parse(&fs::read_to_string(out_dir.join("report.txt")).unwrap());
    assert_eq!(r.get("RESULT"), Some("fail"));
    assert_eq!(r.get("LCO"), Some("fail"));
}

#[test]
fn weyl_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("a3.bld");
    run(&["gen", "thin", "--type", "A3", "-o", p(&b)]);
    let (code, out, _) = run(&["weyl", "enumerate", "--building", p(&b)]);
    assert_eq!(code, 0);
    assert!(out.contains("|W| = 24"));
    assert!(out.contains("length 3: 6"));
}

fn digon_text(a: usize, b: usize) -> String {
    write_building("d", &twinning_core::catalog::digon(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn building_text_round_trip(a in 2usize..6, b in 2usize..6) {
        let text = digon_text(a, b);
        let back = parse_building(&text).unwrap();
        prop_assert_eq!(back.building.num_chambers(), a * b);
        prop_assert_eq!(write_building(&back.name, &back.building), text);
    }

    #[test]
    fn truncation_never_parses(a in 2usize..4, cut in 0usize..200) {
        let text = digon_text(a, 3);
        let cut = cut.min(text.len() - 2);
        let mut t = text[..cut].to_string();
        if !t.ends_with('\n') {
            t.push('\n');
        }
        prop_assert!(parse_building(&t).is_err());
    }
}
