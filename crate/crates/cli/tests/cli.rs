use std::process::Command;

use einkit::{main_with, render, Format};
use einkit_core::catalog::Catalog;
use einkit_core::orbits::{verify_catalog, Backend, OrbitReport, SampleConfig};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("einkit").chain(args.iter().copied()).map(String::from);
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "Table9:nothing"]).0, 2);
    assert_eq!(run(&["analyze", "Table1:exp(a+Y_E)⋉R12", "--param", "a=0"]).0, 3);
    assert_eq!(run(&["analyze", "AdS:G_lambda", "--param", "lambda=-1"]).0, 3);
    assert_eq!(run(&["analyze", "Compact:SO(3)", "--samples", "0"]).0, 3);
    assert_eq!(run(&["analyze", "Compact:SO(3)", "--format", "json", "--out", "/nonexistent-dir/x.json"]).0, 4);
    assert_eq!(run(&["verify-all", "--catalog", "/nonexistent-dir/c.json"]).0, 4);
    let (code, out, _) = run(&["analyze", "Compact:SO(3)"]);
    assert_eq!(code, 0);
    assert!(out.contains("claim ein has dim 2 (spacelike): pass"), "{out}");
}

#[test]
fn catalog_listing() {
    let (code, out, _) = run(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 60);
    let names: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), names.len());
    assert_eq!(run(&["catalog", "list", "--filter", "Table5:*"]).1.lines().count(), 4);
    assert_eq!(run(&["catalog", "list", "--filter", "["]).1.lines().count(), 0);
}

#[test]
fn catalog_export_roundtrips() {
    let (code, out, _) = run(&["catalog", "export"]);
    assert_eq!(code, 0);
    let back = Catalog::from_json(&out).unwrap();
    assert_eq!(back.to_json(), out);
    assert_eq!(back, Catalog::builtin());
}

#[test]
fn output_is_deterministic() {
    for fmt in ["json", "csv"] {
        let args = ["verify-all", "--filter", "Table6:*", "--samples", "40", "--format", fmt];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1, "{fmt}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_einkit");
    let go = |seed: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(bin);
        c.args(["analyze", "Table8:R+*×Y_H", "--samples", "30", "--format", "json"]).args(extra).env_remove("EINKIT_SEED");
        if let Some(s) = seed {
            c.env("EINKIT_SEED", s);
        }
        let o = c.output().unwrap();
        assert!(o.status.success());
        String::from_utf8(o.stdout).unwrap()
    };
    let by_env = go(Some("7"), &[]);
    assert_eq!(by_env, go(None, &["--seed", "7"]));
    assert_ne!(by_env, go(None, &[]));
}

#[test]
fn corrupted_row_is_named() {
    let mut cat = Catalog::builtin();
    let row = cat.entries.iter_mut().find(|s| s.name == "Table6:Y_H×Re3").unwrap();
    row.expected.orbit_summary[0].character = "degenerate".into();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, cat.to_json()).unwrap();
    let (code, _, err) = run(&["verify-all", "--catalog", path.to_str().unwrap(), "--filter", "Table6:*"]);
    assert_eq!(code, 1);
    assert!(err.lines().all(|l| l.starts_with("DISCREPANCY Table6:Y_H×Re3:")), "{err}");
    assert!(!err.is_empty());
}

#[test]
fn whole_catalog_reports() {
    let cfg = SampleConfig { random_count: 1, lightcone_count: 10, claim_samples: 2, ..SampleConfig::default() };
    let reports = verify_catalog(&Catalog::builtin(), Backend::Exact, &cfg).unwrap();
    let instances: usize = Catalog::builtin().entries.iter().map(|s| s.param_samples().unwrap().len()).sum();
    assert_eq!(reports.len(), instances);

    let csv = render(&reports, Format::Csv);
    assert_eq!(csv.lines().count(), instances + 1);
    assert_eq!(instances, 137);

    let json = render(&reports, Format::Json);
    let back: Vec<OrbitReport> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, reports);
    assert_eq!(render(&back, Format::Json), json);

    let md = render(&reports, Format::Md);
    let mut tables: Vec<&str> = reports.iter().map(|r| r.table.as_str()).collect();
    tables.sort();
    tables.dedup();
    let sections: Vec<&str> = md.lines().filter_map(|l| l.strip_prefix("## ")).collect();
    assert_eq!(sections.len(), tables.len());
    for t in tables {
        assert!(sections.contains(&t), "no section for {t}");
    }
}
