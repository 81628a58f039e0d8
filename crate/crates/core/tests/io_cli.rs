mod common;

use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use spherical_mosaic::io::{parse_kmt, parse_smt, render_svg, serialize_kmt, serialize_smt};
use spherical_mosaic::knotid::{classify, KnotTable};
use spherical_mosaic::transforms::bundled;

use common::{witness_dir, witness_manifest};

fn smosaic(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_smosaic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("smosaic-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn witness_files_round_trip_and_classify() {
    let table = KnotTable::bundled();
    let manifest = witness_manifest();
    assert_eq!(manifest.len(), 36);
    for (knot, n, file) in manifest {
        let text = fs::read_to_string(witness_dir().join(&file)).unwrap();
        let m = parse_smt(&text).unwrap();
        assert_eq!(serialize_smt(&m), text, "{file}");
        assert_eq!(m.n(), n);
        assert!(m.is_suitably_connected(), "{file}");
        assert_eq!(classify(&m, table).unwrap().name, knot, "{file}");
    }
}

#[test]
fn bundled_classical_mosaics_round_trip() {
    for (_, _, k) in bundled::all() {
        let text = serialize_kmt(&k);
        assert_eq!(parse_kmt(&text).unwrap(), k);
    }
}

#[test]
fn svg_is_deterministic() {
    let text = fs::read_to_string(witness_dir().join("witness_818_n2.smt")).unwrap();
    let m = parse_smt(&text).unwrap();
    let svg = render_svg(&m);
    assert_eq!(svg, render_svg(&parse_smt(&text).unwrap()));
    assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
}

#[test]
fn cli_classifies_witnesses() {
    let path = witness_dir().join("witness_41_n1.smt");
    let out = smosaic(&["classify", path.to_str().unwrap()], None);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("4_1"));
}

#[test]
fn cli_maxcross_pipes_into_classify() {
    for alternating in [false, true] {
        let mut args = vec!["maxcross", "--n", "2", "--seed", "3"];
        if alternating {
            args.push("--alternating");
        }
        let built = smosaic(&args, None);
        assert!(built.status.success());
        let out = smosaic(&["classify", "-"], Some(&stdout(&built)));
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        assert!(!text.lines().next().unwrap().is_empty());
        assert!(text.contains("crossings: 19"));
    }
}

#[test]
fn cli_reports_dangling_arcs() {
    let p = scratch("dangling.smt", "smt v1 n=1\nU\n2\nL\n0\nF\n3\nR\n0\nB\n0\nD\n0\n");
    let out = smosaic(&["validate", p.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(U,0,0) Right"));
    assert!(err.contains("(R,0,0) Left"));
}

#[test]
fn cli_usage_errors_exit_one() {
    assert_eq!(smosaic(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(smosaic(&["classify", "/no/such/file.smt"], None).status.code(), Some(1));
    assert_eq!(smosaic(&["search", "--n", "2", "--knot", "9_1"], None).status.code(), Some(1));
    assert!(smosaic(&["--help"], None).status.success());
}

#[test]
fn cli_transforms_produce_smt() {
    let k = scratch("trefoil.kmt", &serialize_kmt(&bundled::trefoil_4()));
    let k = k.to_str().unwrap();
    for args in [
        vec!["embed", k, "--face", "R"],
        vec!["shrink", k, "--levels", "1", "--corner", "tr"],
        vec!["shrink", k, "--levels", "2"],
    ] {
        let out = smosaic(&args, None);
        assert!(out.status.success(), "{args:?}");
        let classified = smosaic(&["classify", "-"], Some(&stdout(&out)));
        assert!(stdout(&classified).starts_with("3_1"), "{args:?}");
    }
    let u = scratch("unknot.kmt", &serialize_kmt(&bundled::unknot_2()));
    let out = smosaic(&["reduce-tiling", u.to_str().unwrap(), "--pos", "1,0"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = parse_smt(&stdout(&out)).unwrap();
    assert_eq!(m.tiles().iter().filter(|t| !t.is_empty()).count(), 3);
    let bad = smosaic(&["reduce-tiling", u.to_str().unwrap(), "--pos", "0,0"], None);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn cli_enumerate_is_independent_of_jobs() {
    let a = scratch("a.csv", "");
    let b = scratch("b.csv", "");
    for (p, jobs) in [(&a, "1"), (&b, "3")] {
        let out = smosaic(&["enumerate", "--n", "1", "--require-knot", "--csv", p.to_str().unwrap(), "--jobs", jobs], None);
        assert!(out.status.success());
    }
    let csv = fs::read(&a).unwrap();
    assert_eq!(csv, fs::read(&b).unwrap());
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().next(), Some("canonical_smt,knot,mirror_flag,tiles,faces,crossings,jones"));
    assert_eq!(text.lines().count(), 150);
}

#[test]
fn cli_render_writes_svg_and_ascii() {
    let path = witness_dir().join("witness_01_n1.smt");
    let svg = scratch("u.svg", "");
    let out = smosaic(&["render", path.to_str().unwrap(), "--out", svg.to_str().unwrap()], None);
    assert!(out.status.success());
    let doc = fs::read_to_string(&svg).unwrap();
    assert_eq!(doc.matches(r#"class="strand""#).count(), 3);
    let ascii = smosaic(&["render", path.to_str().unwrap(), "--style", "ascii"], None);
    assert!(stdout(&ascii).contains("L   F   R   B"));
}

#[test]
fn cli_search_and_invariants() {
    let out = smosaic(&["search", "--n", "1", "--knot", "3_1", "--seed", "5"], None);
    assert!(out.status.success());
    let classified = smosaic(&["classify", "-"], Some(&stdout(&out)));
    assert!(stdout(&classified).starts_with("3_1"));
    let none = smosaic(&["search", "--n", "1", "--knot", "5_1"], None);
    assert_eq!(none.status.code(), Some(1));
    let inv = smosaic(&["invariants", "--knot", "0_1", "--nmax", "2"], None);
    let text = stdout(&inv);
    assert!(text.contains("sm: 1 (exhaustive)"));
    assert!(text.contains("sf_2: 1 (exhaustive)"));
}
