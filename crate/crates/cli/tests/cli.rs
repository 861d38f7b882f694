use std::path::Path;
use std::process::Command;

use clap::Parser;
use proptest::prelude::*;
use serde_json::Value;

use hessgkm::cohomology::SpanModel;
use hessgkm_cli::{run, Cli, CommandKind, RunConfig, Target};

fn hessgkm(cache: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hessgkm"))
        .args(args)
        .env("HESSGKM_CACHE_DIR", cache)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

#[test]
fn analyze_reports_lollipop_shape() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hessgkm(dir.path(), &["analyze", "2,3,4,4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["lollipop"], serde_json::json!({"a": 1, "b": 3}));
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["connected"], true);
}

#[test]
fn poincare_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hessgkm(dir.path(), &["poincare", "2,3,3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["direct"], "1+4q+q^2");
    assert_eq!(v["recursive"], "1+4q+q^2");
    assert_eq!(v["closed_form"], "1+4q+q^2");
    assert_eq!(v["agree"], true);
}

#[test]
fn classify_four() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hessgkm(dir.path(), &["classify", "-n", "4"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(v["generated_count"], 4);
    let bad: Vec<&str> = rows.iter().filter(|r| r["generated"] == false).map(|r| r["h"].as_str().unwrap()).collect();
    assert_eq!(bad, ["3,4,4,4"]);
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["check-gen2", "3,4,4,4"][..], &["graph", "2,3,3", "--dot"], &["hilbert", "3,4,4,4", "--pretty"]] {
        let (c1, cold) = hessgkm(dir.path(), args);
        let (c2, warm) = hessgkm(dir.path(), args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(cold, warm, "{args:?}");
    }
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 3);
    assert!(files.iter().all(|f| !f.to_string_lossy().starts_with(".tmp")));
}

#[test]
fn cache_is_used_on_second_run() {
    let dir = tempfile::tempdir().unwrap();
    let cli = Cli::parse_from(["hessgkm", "--cache-dir", dir.path().to_str().unwrap(), "poincare", "3,3,3"]);
    let config = RunConfig::from(cli);
    let (cold, hit1) = run(&config).unwrap();
    let (warm, hit2) = run(&config).unwrap();
    assert_eq!((hit1, hit2), (false, true));
    assert_eq!(cold, warm);
    let uncached = RunConfig { no_cache: true, ..config };
    assert_eq!(run(&uncached).unwrap(), (cold, false));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = hessgkm(dir.path(), &["analyze", "3,2,3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["error"]["kind"], "invalid_input");
    let (code, out) = hessgkm(dir.path(), &["check-gen2", "2,3,4,5,6,7,8,8"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["error"]["kind"], "too_large");
    let (code, _) = hessgkm(dir.path(), &["check-gen2", "1,2,3"]);
    assert_eq!(code, 1);
}

#[test]
fn graph_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (_, dot) = hessgkm(dir.path(), &["graph", "2,3,3", "--dot"]);
    assert!(dot.starts_with("graph gkm {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    let (_, js) = hessgkm(dir.path(), &["graph", "3,3,3"]);
    assert_eq!(json(&js)["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_small_sizes() {
    let dir = tempfile::tempdir().unwrap();
    for n in ["3", "4"] {
        let (code, out) = hessgkm(dir.path(), &["verify", "-n", n]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(json(&out)["all_passed"], true);
    }
}

fn arb_config() -> impl Strategy<Value = RunConfig> {
    let command = prop_oneof![
        Just(CommandKind::Analyze),
        Just(CommandKind::Poincare),
        Just(CommandKind::CheckGen2),
        Just(CommandKind::Classify),
        Just(CommandKind::Verify),
        Just(CommandKind::Graph),
        Just(CommandKind::Hilbert),
    ];
    let target = prop_oneof![(1usize..9).prop_map(Target::N), "[1-9](,[1-9]){0,6}".prop_map(Target::H)];
    let model = prop_oneof![Just(SpanModel::Line), Just(SpanModel::Full), Just(SpanModel::Modular)];
    (
        command,
        target,
        model,
        proptest::option::of(0usize..20),
        proptest::option::of(1usize..64),
        proptest::option::of("[a-z/]{1,12}"),
        any::<[bool; 5]>(),
    )
        .prop_map(|(command, target, model, max_degree, threads, dir, flags)| RunConfig {
            command,
            target,
            model,
            max_degree,
            threads,
            cache_dir: dir.map(Into::into),
            connected_only: flags[0],
            dot: flags[1],
            override_gate: flags[2],
            pretty: flags[3],
            no_cache: flags[4],
        })
}

proptest! {
    #[test]
    fn run_config_round_trips(config in arb_config()) {
        let text = serde_json::to_string(&config).unwrap();
        prop_assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), config);
    }
}

#[test]
fn parsed_flags_round_trip() {
    let cli = Cli::parse_from([
        "hessgkm",
        "--pretty",
        "--threads",
        "3",
        "classify",
        "-n",
        "5",
        "--modular",
        "--include-disconnected",
    ]);
    let config = RunConfig::from(cli);
    assert_eq!(config.command, CommandKind::Classify);
    assert_eq!(config.model, SpanModel::Modular);
    assert!(!config.connected_only && config.pretty);
    assert_eq!(config.threads, Some(3));
    let back: RunConfig = serde_json::from_str(&serde_json::to_string(&config).unwrap()).unwrap();
    assert_eq!(back, config);
}
