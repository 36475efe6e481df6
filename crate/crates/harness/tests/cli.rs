use std::process::Command;

fn jspec() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jspec"))
}

#[test]
fn run_then_replay() {
    let path = std::env::temp_dir().join(format!("jspec-cli-{}.json", std::process::id()));
    let status = jspec()
        .args(["run", "--suite", "holder", "--algebra", "spin:3", "--trials", "20", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(jspec().arg("replay").arg(&path).status().unwrap().success());
}

#[test]
fn failing_campaign_exits_nonzero() {
    let out = jspec()
        .args(["run", "--suite", "theorem1", "--algebra", "rn:2", "--trials", "3", "--restarts", "8"])
        .args(["--grid", "1,inf", "--constant-scale", "0.25"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn cp_table_prints_csv() {
    let out = jspec().args(["cp-table", "--n", "2", "--grid", "1,inf", "--multistarts", "10"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, key, want) in [(lines[1], "2,1,", 2f64.sqrt()), (lines[2], "2,inf,", 2.0)] {
        assert!(line.starts_with(key), "{line}");
        let found: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!((found - want).abs() <= 1e-4, "{line}");
    }
}
