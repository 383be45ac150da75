mod common;

use std::path::Path;

use common::data_path;
use shapesym::cli::run;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn shapesym(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("shapesym").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn data(name: &str) -> String {
    data_path(name).display().to_string()
}

fn path(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn rep_and_val() {
    let num = data("avoid_bb.num");
    let r = shapesym(&["rep", &num, "5"]);
    assert_eq!((r.code, r.out.as_str()), (0, "ba\n"));
    assert_eq!(shapesym(&["rep", &num, "0"]).out, "@eps\n");
    assert_eq!(shapesym(&["val", &num, "b"]).out, "2\n");
    assert_eq!(shapesym(&["val", &num, "@eps"]).out, "0\n");
    assert_eq!(shapesym(&["val", &num, "--count", "4"]).out, "8\n");
    let bad = shapesym(&["val", &num, "abb"]);
    assert_eq!(bad.code, 3);
    assert!(bad.err.contains("abb"), "{}", bad.err);
    assert_eq!(shapesym(&["rep", &num, "minus"]).code, 2);
    // a presentation file carries its numeration system
    assert_eq!(shapesym(&["rep", &data("pqrs.pres"), "7"]).out, "aab\n");
}

#[test]
fn windows() {
    let w = shapesym(&["window", &data("pqrs.pres"), "8", "2"]);
    assert_eq!(w.code, 0);
    assert_eq!(w.out, "p q q p q p q q\np p s s q s p s\n");
    let t = shapesym(&["--format", "tsv", "window", &data("shape_symmetric.morph"), "3", "1"]);
    assert_eq!(t.out, "a\tb\te\n");
    assert_eq!(shapesym(&["window", &data("shape_symmetric.morph"), "1", "1"]).out, "a\n");
    let wrong = shapesym(&["window", &data("shape_symmetric.morph"), "3"]);
    assert_eq!(wrong.code, 3);
}

#[test]
fn three_dimensional_windows_are_sliced() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cube.morph");
    let mut text = String::from("kind: morphism\ndim: 3\n");
    text.push_str("letter a shape 2 2 2\na b\nb b\nb b\nb a\n");
    text.push_str("letter b shape 2 2 2\nb b\nb b\nb b\nb b\n");
    text.push_str("seed: a\n");
    std::fs::write(&file, text).unwrap();
    let w = shapesym(&["window", &path(&file), "2", "2", "2"]);
    assert_eq!(w.code, 0, "{}", w.err);
    assert_eq!(w.out, "-- slice k=0\na b\nb b\n-- slice k=1\nb b\nb a\n");
    let c = shapesym(&["check", &path(&file)]);
    assert_eq!(c.code, 0, "{}", c.out);
}

#[test]
fn check_verdicts() {
    let good = shapesym(&["check", &data("shape_symmetric.morph")]);
    assert_eq!(good.code, 0);
    assert_eq!(good.out, "morphism: yes\nprolongable: yes\nshape-symmetric: yes\n");
    let bad = shapesym(&["check", &data("not_a_morphism.morph")]);
    assert_eq!(bad.code, 1);
    assert!(bad.out.starts_with("morphism: no (n=2"), "{}", bad.out);
    let other = shapesym(&["check", &data("shape_symmetric.morph"), "--seed", "b"]);
    assert_eq!(other.code, 1);
    assert!(other.out.contains("prolongable: no"), "{}", other.out);
    assert_eq!(shapesym(&["check", &data("shape_symmetric.morph"), "--seed", "z"]).code, 3);
}

#[test]
fn conversions_verify() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("shape_symmetric.pres");
    let c = shapesym(&["convert", "m2a", &data("shape_symmetric.morph"), "-o", &path(&pres)]);
    assert_eq!((c.code, c.out.as_str()), (0, ""));
    let v = shapesym(&["verify", &data("shape_symmetric.morph"), &path(&pres), "24", "24"]);
    assert_eq!((v.code, v.out.as_str()), (0, "OK\n"));

    let morph = dir.path().join("pqrs.morph");
    assert_eq!(shapesym(&["convert", "a2m", &data("pqrs.pres"), "-o", &path(&morph)]).code, 0);
    let v = shapesym(&["verify", &path(&morph), &data("pqrs.pres"), "24", "24"]);
    assert_eq!(v.out, "OK\n");
    let corner = shapesym(&["window", &path(&morph), "5", "3"]);
    assert_eq!(corner.out, "p q q p q\np p s s q\nq p s q s\n");

    // byte-stable output
    let again = shapesym(&["convert", "a2m", &data("pqrs.pres")]);
    assert_eq!(again.out, std::fs::read_to_string(&morph).unwrap());

    assert_eq!(shapesym(&["convert", "a2m", &data("shape_symmetric.morph")]).code, 2);
    assert_eq!(shapesym(&["convert", "m2a", &data("not_a_morphism.morph")]).code, 3);
}

#[test]
fn corrupted_pairs_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("recoded.morph");
    let text = std::fs::read_to_string(data_path("shape_symmetric.morph")).unwrap();
    std::fs::write(&file, format!("{text}coding: g=c\n")).unwrap();
    let v = shapesym(&["verify", &path(&file), &data("shape_symmetric.morph"), "4", "2"]);
    assert_eq!(v.code, 1);
    assert_eq!(v.out, "mismatch at (3,1): morphic c automatic g\n");
    let corner = shapesym(&["verify", &path(&file), &data("shape_symmetric.morph"), "1", "1"]);
    assert_eq!(corner.out, "OK\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.num");
    std::fs::write(&bad, "kind: numeration\nalphabet: a\nstates: s\ninitial: s\ns -a-> s\n").unwrap();
    let r = shapesym(&["rep", &path(&bad), "1"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 5"), "{}", r.err);

    let no_eps = dir.path().join("no_eps.pres");
    let text = std::fs::read_to_string(data_path("pqrs.pres"))
        .unwrap()
        .replace("finals: g h k", "finals: h k");
    std::fs::write(&no_eps, text).unwrap();
    let r = shapesym(&["convert", "a2m", &path(&no_eps)]);
    assert_eq!(r.code, 3, "{}", r.err);

    assert_eq!(shapesym(&["rep", "/nonexistent/file", "1"]).code, 2);
    assert_eq!(shapesym(&["frobnicate"]).code, 2);
    let help = shapesym(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("verify"));
}

#[test]
fn custom_pad_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("shape_symmetric.pres");
    let c = shapesym(&["--pad", "_", "convert", "m2a", &data("shape_symmetric.morph"), "-o", &path(&pres)]);
    assert_eq!(c.code, 0, "{}", c.err);
    let v = shapesym(&["--pad", "_", "verify", &path(&pres), &data("shape_symmetric.morph"), "12", "12"]);
    assert_eq!(v.out, "OK\n");
}
