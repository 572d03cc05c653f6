#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn tilesum(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = tilesum::run(
        std::iter::once("tilesum").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn machine(name: &str) -> String {
    crate_dir()
        .join("machines")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

pub fn data(name: &str) -> String {
    crate_dir()
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

pub fn golden_dir() -> PathBuf {
    crate_dir().join("tests/golden")
}

fn ok(args: &[&str]) -> Outcome {
    let o = tilesum(args);
    assert_eq!(o.code, 0, "tilesum {args:?}: {}", o.stderr);
    o
}

/// Runs the pipeline into `dir` and returns the names of the files written,
/// all of which have a golden counterpart.
pub fn write_artifacts(dir: &Path) -> Vec<String> {
    let p = |name: &str| dir.join(name).display().to_string();
    let eraser = machine("eraser");
    let parity = machine("parity_eraser");

    ok(&[
        "tm",
        "normalize",
        "--tm",
        &eraser,
        "-o",
        &p("eraser.normalized.json"),
    ]);
    ok(&[
        "tile",
        "compile",
        "--tm",
        &eraser,
        "-o",
        &p("eraser.tiles.json"),
    ]);
    ok(&[
        "tile",
        "initial",
        "--tm",
        &eraser,
        "--input",
        "a",
        "-o",
        &p("eraser.a.initial.json"),
    ]);
    ok(&[
        "render",
        "--map",
        &p("eraser.a.initial.json"),
        "-o",
        &p("eraser.a.initial.txt"),
    ]);
    ok(&[
        "render",
        "--map",
        &p("eraser.a.initial.json"),
        "-o",
        &p("eraser.a.initial.svg"),
    ]);
    ok(&[
        "tile",
        "build",
        "--tm",
        &eraser,
        "--input",
        "a",
        "-o",
        &p("eraser.a.cert.json"),
    ]);
    ok(&[
        "render",
        "--cert",
        &p("eraser.a.cert.json"),
        "-o",
        &p("eraser.a.cert.txt"),
    ]);
    ok(&[
        "render",
        "--cert",
        &p("eraser.a.cert.json"),
        "-o",
        &p("eraser.a.cert.svg"),
    ]);

    ok(&[
        "tile",
        "search",
        "--tm",
        &parity,
        "--input",
        "bb",
        "-o",
        &p("parity.bb.search.json"),
    ]);
    ok(&[
        "render",
        "--cert",
        &p("parity.bb.search.json"),
        "-o",
        &p("parity.bb.search.txt"),
    ]);
    ok(&[
        "reduce",
        "semimodule",
        "--tm",
        &parity,
        "--input",
        "a",
        "-o",
        &p("parity.a.semimodule.json"),
    ]);
    ok(&[
        "solve",
        "semimodule",
        "--instance",
        &p("parity.a.semimodule.json"),
        "--tm",
        &parity,
        "--input",
        "a",
        "-o",
        &p("parity.a.witness.json"),
    ]);
    for flavor in ["wreath", "free-metabelian"] {
        ok(&[
            "reduce",
            "submonoid",
            "--instance",
            &p("parity.a.semimodule.json"),
            "--flavor",
            flavor,
            "--witness",
            &p("parity.a.witness.json"),
            "--certificate-out",
            &p(&format!("parity.a.{flavor}.certificate.json")),
            "-o",
            &p(&format!("parity.a.{flavor}.json")),
        ]);
    }
    ok(&[
        "reduce",
        "subset-sum",
        "--tm",
        &parity,
        "--input",
        "bb",
        "--ring",
        "Zmod:3",
        "-o",
        &p("parity.bb.subset.json"),
    ]);
    ok(&[
        "solve",
        "subset-sum",
        "--instance",
        &p("parity.bb.subset.json"),
        "--tm",
        &parity,
        "--input",
        "bb",
        "-o",
        &p("parity.bb.subset.witness.json"),
    ]);

    let lamps = data("two_lamps.json");
    ok(&[
        "reduce",
        "rational",
        "--instance",
        &lamps,
        "--nfa",
        &p("lamps.nfa.json"),
        "-o",
        &p("lamps.rational.json"),
    ]);
    ok(&[
        "solve",
        "rational",
        "--instance",
        &p("lamps.rational.json"),
        "--max-len",
        "10",
        "-o",
        &p("lamps.word.txt"),
    ]);

    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}
