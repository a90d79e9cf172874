use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write_spec(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dua-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn dua(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dua")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const AB: &str = "n = 1\nalpha = 2\nbeta = -1\nphi = \"t1\"\n[field]\nkind = \"rational\"\n";
const RS23: &str = "n = 1\nr = 2\ns = 3\nphi = \"t1\"\n[field]\nkind = \"rational\"\n";
const RS32: &str = "n = 1\nr = 3\ns = 2\nphi = \"t1\"\n[field]\nkind = \"rational\"\n";

#[test]
fn relation_normalizes_to_zero() {
    let spec = write_spec("ab.toml", AB);
    let o = dua(&["normalize", "--spec", spec.to_str().unwrap(), "--expr", "d^2*u - 2*d*u*d + u*d^2 - t1*d"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn central_exit_codes() {
    let spec = write_spec("ab.toml", AB);
    let p = spec.to_str().unwrap();
    let o = dua(&["central", "--spec", p, "--expr", "t1"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "true".to_string()));
    assert_eq!(dua(&["central", "--spec", p, "--expr", "u"]).status.code(), Some(1));
}

#[test]
fn swapped_roots_give_witness_json() {
    let a = write_spec("x.toml", RS23);
    let b = write_spec("y.toml", RS32);
    let o = dua(&["iso", "--spec1", a.to_str().unwrap(), "--spec2", b.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "dua/1");
    assert_eq!(v["data"]["decision"], "isomorphic");
    assert!(v["data"]["witness"]["images"]["u"].is_array());
}

#[test]
fn parse_and_usage_errors_exit_two() {
    let spec = write_spec("ab.toml", AB);
    let p = spec.to_str().unwrap();
    let o = dua(&["normalize", "--spec", p, "--expr", "u*"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let nr = write_spec("noroots.toml", "n = 1\nalpha = 1\nbeta = 1\nphi = \"t1\"\n[field]\nkind = \"rational\"\n");
    let o = dua(&["normalize", "--spec", nr.to_str().unwrap(), "--expr", "H*K"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("roots r,s required"));
    assert_eq!(dua(&["normalize", "--expr", "u"]).status.code(), Some(2));
    assert_eq!(dua(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn automorphism_check() {
    let spec = write_spec("x.toml", RS23);
    let p = spec.to_str().unwrap();
    assert_eq!(dua(&["aut-check", "--spec", p, "--lambda", "2,3,6,0"]).status.code(), Some(0));
    assert_eq!(dua(&["aut-check", "--spec", p, "--lambda", "2,3,5,0"]).status.code(), Some(1));
}

#[test]
fn theta_image_json_uses_z_and_poly() {
    let spec = write_spec("x.toml", RS23);
    let o = dua(&["theta-check", "--spec", spec.to_str().unwrap(), "--max-degree", "3", "--expr", "d", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["data"]["image"][0]["z"], -1);
    assert_eq!(v["data"]["image"][0]["poly"], "1");
}

#[test]
fn structural_commands_succeed() {
    let spec = write_spec("x.toml", RS23);
    let p = spec.to_str().unwrap();
    for cmd in [
        vec!["center-gens", "--spec", p, "--max-degree", "3"],
        vec!["hk", "--spec", p, "--max-degree", "2"],
        vec!["gk", "--spec", p, "--max-degree", "10"],
        vec!["gwa-check", "--spec", p],
        vec!["specialize", "--spec", p, "--lambda", "3", "--expr", "d^2*u"],
        vec!["search-normal", "--spec", p, "--max-degree", "2"],
        vec!["confluence", "--spec", p],
        vec!["normal-check", "--spec", p, "--expr", "H"],
    ] {
        let o = dua(&cmd);
        assert_eq!(o.status.code(), Some(0), "{cmd:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn specialize_sets_gamma() {
    let spec = write_spec("x.toml", RS23);
    let o = dua(&["specialize", "--spec", spec.to_str().unwrap(), "--lambda", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["data"]["spec"]["phi"], "3");
    assert_eq!(v["data"]["spec"]["n"], 0);
}
