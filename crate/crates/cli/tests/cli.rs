use assert_cmd::Command;

fn simatch() -> Command {
    Command::cargo_bin("simatch").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = simatch().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "--family", "fib", "--t", "1", "--n", "4"]).lines().next(), Some("5"));
    assert_eq!(stdout(&["count", "--family", "dist", "--d", "2", "--n", "4"]).lines().next(), Some("14"));
    assert_eq!(stdout(&["count", "--family", "fib", "--t", "1", "--n", "0"]).lines().next(), Some("1"));
    let s = stdout(&["count", "--n", "200"]);
    assert!(s.contains("scientific=4.540e41"));
}

#[test]
fn estimate_is_reproducible() {
    let args = ["estimate", "--family", "fib", "--t", "1", "--algo", "random", "--n", "50", "--samples", "1000", "--seed", "7"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut more = args.to_vec();
    more.extend(["--workers", "3"]);
    assert_eq!(a.replace("\"workers\":1", "\"workers\":3"), stdout(&more));
}

#[test]
fn table_two_layout() {
    let s = stdout(&["table", "--id", "2"]);
    let labels: Vec<&str> = s.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(labels, ["n", "N*_r", "N^v_r", "N*_f", "N^v_f", "N*_g", "N^v_g", "n^7", "\"F_{n"]);
    assert!(s.starts_with("n,200,300,500,1000\n"));
}

#[test]
fn moments_greedy_n200() {
    let s = stdout(&["moments", "--family", "fib", "--t", "1", "--algo", "greedy", "--n", "200", "--asymptotic"]);
    let v: f64 = s.lines().find_map(|l| l.strip_prefix("n_star=")).unwrap().parse().unwrap();
    assert!((v / 75.0 - 1.0).abs() < 0.1, "{v}");
    let j = stdout(&["moments", "--algo", "greedy", "--n", "10", "--exact", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert!(v["result"]["second_moment_exact"].as_str().is_some());
    assert_eq!(v["config"]["command"], "moments");
}

#[test]
fn exact_sample_prints_fractions() {
    let s = stdout(&["sample", "--n", "4", "--order", "2,3,1,4", "--exact", "--seed", "3"]);
    assert!(s.contains("probability=1/"));
    assert!(s.contains("steps.1=i=2 options="));
}

#[test]
fn exit_codes() {
    simatch().args(["moments", "--n", "25", "--exact"]).assert().code(2);
    simatch().args(["table", "--id", "9"]).assert().code(2);
    simatch().args(["count", "--family", "fib", "--t", "0", "--n", "3"]).assert().code(2);
    simatch().args(["estimate", "--n", "5", "--algo", "fixed", "--order", "1,2"]).assert().code(2);
    simatch().env("SIMATCH_LIMITS", "nonsense").args(["count", "--n", "3"]).assert().code(2);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k3.txt");
    std::fs::write(&p, "3\n1 2 3\n1 2 3\n1 2 3\n").unwrap();
    simatch()
        .env("SIMATCH_LIMITS", "band=2,ryser=2")
        .args(["count", "--graph", p.to_str().unwrap()])
        .assert()
        .code(3);
    assert_eq!(stdout(&["count", "--graph", p.to_str().unwrap()]).lines().next(), Some("6"));
}

#[test]
fn constants_csv() {
    let s = stdout(&["constants"]);
    assert!(s.starts_with("name,value,provenance,printed\n"));
    assert!(s.contains("mu[fib2-fixed],"));
    assert!(s.contains(",slope-derived,"));
}

#[test]
fn crossover() {
    let s = stdout(&["crossover", "--family", "fib", "--t", "2", "--algo", "greedy"]);
    let n: f64 = s.lines().find_map(|l| l.strip_prefix("crossover_n=")).unwrap().parse().unwrap();
    assert!((n / 1549.0 - 1.0).abs() <= 0.02);
}
