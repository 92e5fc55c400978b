use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigenbound"))
}

#[test]
fn list_prints_fourteen_suites() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 14);
    assert!(text.contains("dn1d") && text.contains("Eq. (DN)"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["bogus", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("squarewell1d"));

    let cfg = dir.path().join("empty.json");
    std::fs::write(&cfg, r#"{"eps_list": []}"#).unwrap();
    let out = bin().args(["squarewell1d", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let cfg = dir.path().join("frank.json");
    std::fs::write(&cfg, r#"{"constants": {"C_dq": 1e-6}}"#).unwrap();
    let out = bin().args(["frank", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["squarewell1d", "--eps", "0.1,0.05,0.02", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("squarewell1d.csv")).unwrap();
    assert!(csv.starts_with("eps,R,V0_re,V0_im,normL1,ratio_DN\n"));
    assert_eq!(csv.lines().count(), 4);
    assert!(dir.path().join("squarewell1d.summary.json").exists());
}

#[test]
fn malformed_config_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\n  \"q\": \"four\"\n}").unwrap();
    let out = bin().args(["radial3d", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = a.path().join("st.json");
    std::fs::write(&cfg, r#"{"d": 2, "grid": {"points": 64, "trials": 3}}"#).unwrap();
    for dir in [&a, &b] {
        let st = bin().args(["stein-tomas", "--seed", "9", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap().status;
        assert!(st.success());
    }
    let x = std::fs::read(a.path().join("stein-tomas.csv")).unwrap();
    let y = std::fs::read(b.path().join("stein-tomas.csv")).unwrap();
    assert_eq!(x, y);
}
