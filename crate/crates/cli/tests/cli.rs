use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forest-shuffle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn shuffle_of_a_forest_with_a_vertex() {
    let o = run(&["shuffle", "a b", "c"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        "1/2 a b[c] + 1/2 a c[b] + 1/2 a[c] b + 1/2 b c[a]"
    );
    let o = run(&["--lambda", "1", "shuffle", "a b", "c"]);
    assert!(stdout(&o).contains("1/2 a*c b"));
}

#[test]
fn negative_weights_parse() {
    let o = run(&["shuffle", "a", "b", "--lambda", "-1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 a[b] - 1 a*b + 1 b[a]");
}

#[test]
fn products_and_pairing() {
    let o = run(&["shuffle", "a[b]", "c[d,e]", "--product", "diamond"]);
    assert!(stdout(&o).starts_with("1 a*c[b[d,e]]"));
    let o = run(&["pair", "a[c] b", "a b", "c"]);
    assert_eq!(stdout(&o).trim(), "1/2");
    let o = run(&["--json", "pair", "a[c] b", "a b", "c"]);
    assert_eq!(stdout(&o).trim(), r#"{"coeff":"1/2"}"#);
}

#[test]
fn coproducts() {
    let o = run(&["coproduct", "a[b]"]);
    assert_eq!(
        stdout(&o).trim(),
        "1 (()) (x) (a[b]) + 1 (a) (x) (b) + 1 (a[b]) (x) (())"
    );
    for mode in ["recursive", "combinatorial", "oracle"] {
        let o = run(&["dual", "a[b]", "--mode", mode]);
        assert_eq!(
            stdout(&o).trim(),
            "1 (()) (x) (a[b]) + 1 (a) (x) (b) + 1 (a[b]) (x) (()) + 1 (b) (x) (a)",
            "{mode}"
        );
    }
    let o = run(&["--json", "dual", "a[b]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn families_as_json() {
    let o = run(&["--json", "families", "a[b[c],d]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let fams = v.as_array().unwrap();
    assert_eq!(fams.len(), 6);
    assert!(fams
        .iter()
        .any(|f| f["c_gamma"] == "2/1" && f["t_gamma"] == "b" && f["t_complement"] == "a[c,d]"));
    let o = run(&["--json", "families", "a[b,c]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn grafting() {
    let o = run(&["graft", "a[b,c]", "d"]);
    assert_eq!(stdout(&o).trim(), "1 a[b,c[d]] + 1 a[b[d],c]");
    let o = run(&["graft", "a[b,c]", "d", "--op", "linear"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn primitive_counts() {
    let o = run(&["primitives", "--count", "23"]);
    let lines: Vec<_> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 24);
    assert_eq!(lines[23], "261335");
    let o = run(&["primitives", "--count", "3", "--csv"]);
    assert_eq!(stdout(&o), "n,p_n\n0,0\n1,1\n2,0\n3,1\n");
    let o = run(&["primitives", "--list", "5"]);
    assert_eq!(stdout(&o), "1[1,1,1,1]\n1[1,1[1,1]]\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["coproduct", "a b"]).status.code(), Some(2));
    assert_eq!(
        run(&["shuffle", "a", "b", "--lambda", "x"]).status.code(),
        Some(2)
    );
    let o = run(&["shuffle", "a[b", "c"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
    assert_eq!(run(&["primitives", "--list", "13"]).status.code(), Some(4));
    assert_eq!(
        run(&["dual", "a b c d e f g h i", "--mode", "oracle"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn verify_all_at_small_degree_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "all",
        "--max-degree",
        "5",
        "--seed",
        "42",
        "--json",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let reports: Vec<serde_json::Value> = stdout(&first)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(reports.len() > 30);
    assert!(reports
        .iter()
        .all(|r| r.get("duration").is_none() && r["seed"] == 42));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn rota_baxter_checks() {
    let o = run(&["rb", "--check", "morphism", "--samples", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("quasi-universal checks"));
    assert_eq!(text.matches("[PASS]").count(), 3);
    let o = run(&["rb", "--backend", "words", "--samples", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rb.words"));
}
