use std::path::PathBuf;
use std::process::{Command, Output};

fn proxlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proxlab"))
        .args(args)
        .env_remove("RUST_BACKTRACE")
        .output()
        .unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("proxlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const PARITY: &str = "protocol = parity\nn = 27\nk = 3\ninput = far\ntrials = 400\nadversary = exhaustive\n";

#[test]
fn run_requires_seed() {
    let cfg = scratch("p.cfg", PARITY);
    let out = proxlab(&["run", cfg.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn run_is_reproducible_and_writes_out() {
    let cfg = scratch("q.cfg", PARITY);
    let a = proxlab(&["run", cfg.to_str().unwrap(), "--seed", "7"]);
    let b = proxlab(&["run", cfg.to_str().unwrap(), "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("id,protocol,n,eps,k"));
    assert!(text.contains("exhaustive"));

    let target = cfg.with_file_name("out.csv");
    let c = proxlab(&["run", cfg.to_str().unwrap(), "--seed", "7", "--out", target.to_str().unwrap()]);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), text);
}

#[test]
fn overrides_and_unknown_keys() {
    let cfg = scratch("r.cfg", PARITY);
    let out = proxlab(&["run", cfg.to_str().unwrap(), "--seed", "1", "--trials", "10", "--c-amp", "30"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",10,adversarial"));
    let bad = proxlab(&["run", cfg.to_str().unwrap(), "--seed", "1", "--colour", "red"]);
    assert!(!bad.status.success());
}

#[test]
fn completeness_and_soundness_defaults() {
    let out = proxlab(&["completeness", "--protocol", "kmono", "--n", "64", "--k", "2", "--trials", "100"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains(",honest,1.000000,"));
    let out = proxlab(&["soundness", "--protocol", "parity", "--n", "16", "--k", "4", "--trials", "200"]);
    assert!(out.status.success());
}

#[test]
fn thrdeg_of_parity_table() {
    let mut table = String::new();
    for x in 0u32..8 {
        table.push_str(if x.count_ones() % 2 == 0 { "1\n" } else { "-1\n" });
    }
    let p = scratch("parity3.txt", &table);
    let out = proxlab(&["thrdeg", p.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("3,8,3,1,true,dual@2"), "{text}");
}

#[test]
fn codes_and_mixcheck_emit_csv() {
    let out = proxlab(&["codes", "--n", "10", "--dim", "6", "--seeds", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
    let out = proxlab(&["mixcheck", "--n", "16", "--seeds", "2", "--family", "bipartite"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{text}");
}

#[test]
fn sweep_prints_slopes() {
    let out = proxlab(&[
        "sweep", "--protocol", "parity", "--k", "n^2/3", "--input", "member", "--policy", "honest", "--trials", "20",
        "--values", "64,128,256",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("# slope max_modeled_queries vs n"));
}
