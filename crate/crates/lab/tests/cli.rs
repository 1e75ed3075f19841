use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn prodseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodseq")).args(args).env_remove("PRODSEQ_SEED").output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = prodseq(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn suite_report_schema() {
    let out = prodseq(&["verify", "--suite", "padic", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["suite"], "padic");
    assert_eq!(j["seed"], 5);
    for item in j["items"].as_array().unwrap() {
        for key in ["name", "verdict", "witness", "expected", "pass"] {
            assert!(item.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn analyze_writes_report_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("geo");
    let cfg = write(
        dir.path(),
        "geo.json",
        &format!(
            r#"{{"sequence":{{"rule":"circle-geometric","base":3}},"analysis":"cauchy-productive",
               "cfg":{{"tolerance":"1/4096","horizon":32,"seed":1}},"expected":"holds","output":"{}"}}"#,
            prefix.display()
        ),
    );
    let out = prodseq(&["analyze", "--config", &cfg, "--csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("geo.report.json")).unwrap()).unwrap();
    assert_eq!(report["verdict"]["status"], "holds");
    let csv = fs::read_to_string(dir.path().join("geo.trace.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("index,l,m,distance-num,distance-den"));
    assert_eq!(lines.count(), 32);
}

#[test]
fn deviating_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "sym.json",
        r#"{"sequence":{"rule":"sym-transpositions"},"analysis":"productive",
            "cfg":{"tolerance":"1/16","horizon":40,"seed":0},"expected":"holds"}"#,
    );
    let out = prodseq(&["analyze", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bad.json",
        r#"{"sequence":{"rule":"circle-geometric","base":2},"analysis":"f-cauchy-productive",
            "f":{"prefix":[1],"tail-rule":{"whenever":2}},"cfg":{"tolerance":"1/8","horizon":16,"seed":0}}"#,
    );
    let out = prodseq(&["analyze", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("f.tail-rule"), "{err}");
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "noseed.json",
        r#"{"sequence":{"rule":"padic-powers","p":3,"depth":30},"analysis":"f-cauchy-productive",
            "f":{"tail-rule":"omega"},"cfg":{"tolerance":{"p-power":{"p":3,"k":6}},"horizon":20}}"#,
    );
    assert_eq!(prodseq(&["analyze", "--config", &cfg]).status.code(), Some(2));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_prodseq"))
            .args(["analyze", "--config", &cfg])
            .env("PRODSEQ_SEED", "9")
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let j: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(j["cfg"]["seed"], 9);
}

#[test]
fn product_support_configs() {
    let dir = tempfile::tempdir().unwrap();
    let hp = write(
        dir.path(),
        "hp.json",
        r#"{"sequence":{"rule":"hp-generators","depth":8},"analysis":"support-criterion","cutoff":2,
            "cfg":{"tolerance":"1/1024","horizon":5,"seed":0,"trials":3},"expected":"holds"}"#,
    );
    assert_eq!(prodseq(&["analyze", "--config", &hp]).status.code(), Some(0));
    let ones = write(
        dir.path(),
        "ones.json",
        r#"{"group":{"kind":"product","factors":{"power":{"factor":{"kind":"cyclic","n":3},"len":4}}},
            "sequence":{"rule":"constant","value":[1,0,0,0]},"analysis":"support-criterion","cutoff":2,
            "cfg":{"tolerance":"1/4","horizon":12,"seed":0},"expected":"fails"}"#,
    );
    let out = prodseq(&["analyze", "--config", &ones]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn constructions_are_written() {
    let dir = tempfile::tempdir().unwrap();
    for what in ["hp", "cantor", "families"] {
        let path = dir.path().join(format!("{what}.json"));
        let out = prodseq(&["construct", what, "--depth", "4", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{what}: {}", String::from_utf8_lossy(&out.stderr));
        let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(j.is_object());
    }
    let tree: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("cantor.json")).unwrap()).unwrap();
    assert_eq!(tree["depth"], 4);
    assert_eq!(tree["checks"]["leaves-distinct"], true);
}
