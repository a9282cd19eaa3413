use std::collections::BTreeSet;
use std::process::Command;

use clap::Parser;
use permadiag_cli::{execute, Cli, Document};
use permadiag_core::OrderedPartition;
use permadiag_diagonal::{facets, DiagonalFace, Variant};

fn run(args: &[&str]) -> anyhow::Result<String> {
    let cli = Cli::try_parse_from(std::iter::once("permadiag").chain(args.iter().copied()))?;
    let out = execute(&cli)?;
    anyhow::ensure!(out.success, "command reported failure:\n{}", out.text);
    Ok(out.text)
}

#[test]
fn facet_export_has_eight_records_and_round_trips() {
    let json = run(&[
        "diagonal",
        "facets",
        "--n",
        "3",
        "--variant",
        "la",
        "--format",
        "json",
    ])
    .unwrap();
    let doc = Document::from_json(&json).unwrap();
    assert_eq!(doc.len(), 8);
    assert_eq!(doc.render(permadiag_cli::Format::Json).unwrap(), json);
    let sig: Vec<OrderedPartition> = doc.parse_column("sigma").unwrap();
    let tau: Vec<OrderedPartition> = doc.parse_column("tau").unwrap();
    let back: BTreeSet<DiagonalFace> = sig
        .into_iter()
        .zip(tau)
        .map(|(s, t)| DiagonalFace::new(s, t).unwrap())
        .collect();
    let direct: BTreeSet<DiagonalFace> = facets(3, Variant::La, 8).unwrap().into_iter().collect();
    assert_eq!(back, direct);
}

#[test]
fn export_converts_documents() {
    let dir = std::env::temp_dir().join(format!("permadiag-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("facets.json");
    let json = run(&[
        "diagonal",
        "facets",
        "--n",
        "4",
        "--variant",
        "su",
        "--format",
        "json",
    ])
    .unwrap();
    std::fs::write(&path, &json).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["export", p, "--format", "json"]).unwrap(), json);
    let csv = run(&["export", p, "--format", "csv"]).unwrap();
    assert_eq!(csv.lines().count(), 51);
    assert!(csv.starts_with("sigma,tau,dim_sigma,dim_tau\n"));
    let text = run(&["export", p]).unwrap();
    assert!(text.ends_with("# 50 rows\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "diagonal",
            "faces",
            "--n",
            "4",
            "--variant",
            "su",
            "--format",
            "csv",
        ][..],
        &[
            "arrangement",
            "faces",
            "--ell",
            "2",
            "--n",
            "3",
            "--format",
            "json",
        ],
        &["shifts", "lattice", "--perm", "4312", "--variant", "su"],
        &["cubic", "build", "--n", "3", "--variant", "la"],
        &["plot", "cubical3d-net", "--variant", "la"],
    ] {
        assert_eq!(run(args).unwrap(), run(args).unwrap(), "{args:?}");
    }
}

#[test]
fn arrangement_plot_counts() {
    let svg = run(&["plot", "arrangement2d", "--ell", "2"]).unwrap();
    assert_eq!(svg.matches("class=\"hyperplane\"").count(), 6);
    assert_eq!(svg.matches("class=\"vertex\"").count(), 8);
    assert_eq!(svg.matches("class=\"label\"").count(), 8);
}

#[test]
fn arrangement_commands() {
    let m = run(&["arrangement", "mobius", "--n", "2", "--format", "json"]).unwrap();
    assert_eq!(
        Document::from_json(&m).unwrap().params["polynomial"],
        "xy - 2x + 2"
    );
    let c = run(&[
        "arrangement",
        "count",
        "--ell",
        "3",
        "--n",
        "3",
        "--format",
        "csv",
    ])
    .unwrap();
    assert!(c.contains("vertices,21\n"), "{c}");
    let f = run(&["arrangement", "faces", "--n", "4", "--format", "csv"]).unwrap();
    assert_eq!(f.lines().count(), 750);
    assert!(run(&["arrangement", "faces", "--n", "6"]).is_err());
    let inline = run(&[
        "arrangement",
        "faces",
        "--n",
        "3",
        "--matrix",
        r#"[[0,0],[1,"3/2"]]"#,
    ])
    .unwrap();
    assert!(inline.ends_with("# 49 rows\n"), "{inline}");
    assert!(run(&["arrangement", "faces", "--n", "3", "--matrix", "[[0,0,0]]"]).is_err());
}

#[test]
fn shift_and_cubic_commands() {
    let n = run(&[
        "shifts",
        "normalize",
        "--face",
        "(2|13, 23|1)",
        "--variant",
        "su",
        "--format",
        "csv",
    ])
    .unwrap();
    assert!(
        n.starts_with("step,shift,face\n0,,\"(2|13, 23|1)\"\n"),
        "{n}"
    );
    let h = run(&["cubic", "hourglass", "--perm", "4|3|1|2", "--format", "csv"]).unwrap();
    assert_eq!(h.lines().filter(|l| l.starts_with("upper,")).count(), 4);
    assert!(h.contains("lower,4|3|12\n"));
    let s = run(&["cubic", "stepmatrix", "--perm", "3142"]).unwrap();
    assert!(s.contains("# cubic.stepmatrix"));
    assert!(run(&["cubic", "build", "--n", "7"]).is_err());
    assert!(run(&["shifts", "lattice", "--perm", "312", "--variant", "la-op"]).is_err());
    let c = run(&[
        "shifts", "closure", "--n", "5", "--mode", "pathm", "--format", "csv",
    ])
    .unwrap();
    assert_eq!(c.lines().count(), 433);
}

#[test]
fn caps_are_explicit_errors() {
    let e = run(&["diagonal", "facets", "--n", "5", "--max-n", "4"]).unwrap_err();
    assert!(e.to_string().contains("cap"), "{e}");
    assert!(run(&["diagonal", "faces", "--n", "7"]).is_err());
}

#[test]
fn verify_examples() {
    run(&["verify", "--suite", "arrangement", "--level", "fast"]).unwrap();
    let j = run(&[
        "verify", "--suite", "shifts", "--level", "fast", "--format", "json",
    ])
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    let checks: Vec<&serde_json::Value> = v
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .collect();
    let stat = checks.iter().find(|c| c["id"] == "c10.su.n5.sum").unwrap();
    assert_eq!(stat["got"], "432");
    let d = run(&[
        "verify",
        "--criterion",
        "5",
        "--level",
        "full",
        "--format",
        "csv",
    ])
    .unwrap();
    assert!(d.contains("c05.la.n7,true,65536,65536"), "{d}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_permadiag");
    let ok = Command::new(bin)
        .args(["verify", "--suite", "cubic"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("1/1 criteria passed"));
    let bad = Command::new(bin)
        .args(["diagonal", "facets", "--n", "3", "--variant", "nope"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
    let threads = Command::new(bin)
        .env("PERMADIAG_THREADS", "1")
        .args(["verify", "--suite", "arrangement"])
        .output()
        .unwrap();
    assert!(threads.status.success());
}
