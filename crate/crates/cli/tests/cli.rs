use std::process::{Command, Output};

use serde_json::Value;

fn soergel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soergel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = soergel(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    soergel(args).status.code().unwrap()
}

#[test]
fn bruhat_relations() {
    assert_eq!(
        stdout(&["coxeter", "bruhat", "--system", "A2", "s0", "s1"]),
        "incomparable\n"
    );
    assert_eq!(
        stdout(&["coxeter", "bruhat", "--system", "A2", "s0", "s0.s1"]),
        "less\n"
    );
    assert_eq!(
        stdout(&["coxeter", "bruhat", "--system", "A2", "s1.s0.s1", "s0.s1"]),
        "greater\n"
    );
    assert_eq!(
        stdout(&["coxeter", "bruhat", "--system", "A2", "s1.s0.s1", "s0.s1.s0"]),
        "equal\n"
    );
}

#[test]
fn kl_expansion() {
    assert_eq!(
        stdout(&["hecke", "kl", "--system", "A2", "--element", "s0.s1.s0"]),
        "h[s0.s1.s0] + (v)*h[s1.s0] + (v)*h[s0.s1] + (v^2)*h[s0] + (v^2)*h[s1] + (v^3)\n"
    );
    let json: Value = serde_json::from_str(&stdout(&[
        "hecke",
        "kl",
        "--system",
        "A2",
        "--element",
        "s0.s1.s0",
        "--descent",
        "s1",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(json["e"], "v^3");
    assert_eq!(json["s0.s1.s0"], "1");
}

#[test]
fn products() {
    assert_eq!(
        stdout(&["hecke", "mult", "--system", "A2", "--basis", "std", "s0", "s0"]),
        "(v^-1 - v)*h[s0] + (1)\n"
    );
    let star = stdout(&["hecke", "star", "--system", "U3", "s0.s1", "s1.s2"]);
    assert!(star.starts_with("h[s0.s1.s2]"), "{star}");
    let dyer = stdout(&[
        "hecke",
        "dyer",
        "--system",
        "U3",
        "--gen",
        "s0",
        "--element",
        "s0.s1",
    ]);
    assert_eq!(dyer, "(v^-1 + v)*b[s0.s1]\n");
}

#[test]
fn element_listing_and_info() {
    let csv = stdout(&["coxeter", "elements", "--system", "A2", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 7);
    assert_eq!(csv.lines().next(), Some("element,length"));
    let info: Value = serde_json::from_str(&stdout(&[
        "coxeter", "info", "--system", "I2(inf)", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(info["order"], "inf");
    assert_eq!(info["coxeter_matrix"][0][1], "inf");
    assert_eq!(code(&["coxeter", "elements", "--system", "U2"]), 2);
}

#[test]
fn leaves_commands() {
    let json: Value = serde_json::from_str(&stdout(&[
        "leaves", "enum", "--system", "A2", "--word", "s0.s0", "--format", "json",
    ]))
    .unwrap();
    let leaves = json.as_array().unwrap();
    assert_eq!(leaves.len(), 4);
    assert_eq!(leaves[2]["labels"], serde_json::json!(["U1", "D0"]));
    let json: Value = serde_json::from_str(&stdout(&[
        "leaves", "homcount", "--system", "A2", "--word1", "s0", "--word2", "s0", "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(json["count"], "1 + v^2");
}

#[test]
fn bimodule_commands() {
    assert_eq!(
        stdout(&["bs", "rank", "--system", "A2", "--word", "s0.s1.s0"]).trim(),
        "v^-3 + 3*v^-1 + 3*v + v^3"
    );
    let d: Value =
        serde_json::from_str(&stdout(&["bs", "decompose-s3", "--format", "json"])).unwrap();
    assert_eq!(d["e_idempotent"], true);
    assert_eq!(d["image_e"], "v^-1 + v");
    assert_eq!(d["image_one_minus_e"], "v^-3 + 2*v^-1 + 2*v + v^3");
    let i: Value = serde_json::from_str(&stdout(&[
        "bs",
        "idempotent",
        "--system",
        "A3",
        "--s",
        "s1",
        "--r",
        "s0",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(i["image_e"], "v^-1 + v");
}

#[test]
fn rex_commands() {
    let w0 = "s0.s1.s0.s2.s1.s0";
    let report: Value = serde_json::from_str(&stdout(&[
        "rex",
        "forking",
        "--system",
        "A3",
        "--element",
        w0,
        "--strategies",
        "dfs,random:1",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(report["equal"], true);
    assert_eq!(report["nodes"], 16);
    assert_eq!(report["strategies"].as_array().unwrap().len(), 2);

    let dot = stdout(&["rex", "export", "--system", "A3", "--element", w0, "--dot"]);
    assert!(dot.starts_with("graph rex {\n"));
    assert!(dot.ends_with("}\n"));
    assert_eq!(dot.matches(" -- ").count(), 18);

    let graph: Value = serde_json::from_str(&stdout(&[
        "rex",
        "export",
        "--system",
        "A2",
        "--element",
        "s0.s1.s0",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(graph["nodes"], serde_json::json!(["s0.s1.s0", "s1.s0.s1"]));
    let text = stdout(&["rex", "build", "--system", "A2", "--element", "s1.s0.s1"]);
    assert!(
        text.starts_with("element s0.s1.s0: 2 nodes, 1 edges"),
        "{text}"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(
        code(&["hecke", "kl", "--system", "B7", "--element", "e"]),
        2
    );
    assert_eq!(
        code(&["hecke", "kl", "--system", "A2", "--element", "s4"]),
        2
    );
    assert_eq!(
        code(&[
            "hecke",
            "kl",
            "--system",
            "A2",
            "--element",
            "s0.s1",
            "--descent",
            "s1"
        ]),
        2
    );
    assert_eq!(code(&["bs", "rank", "--system", "U3", "--word", "s0"]), 3);
    assert_eq!(
        code(&[
            "hecke",
            "dyer",
            "--system",
            "A2",
            "--gen",
            "s0",
            "--element",
            "s1"
        ]),
        3
    );
    assert_eq!(
        code(&["rex", "forking", "--system", "I2(5)", "--element", "s0"]),
        3
    );
    assert_eq!(
        code(&[
            "rex",
            "forking",
            "--system",
            "A2",
            "--element",
            "s0",
            "--strategies",
            "zigzag"
        ]),
        2
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["hecke", "kl-table", "--system", "A3", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = [
        "rex",
        "forking",
        "--system",
        "A3",
        "--element",
        "s0.s1.s0.s2",
        "--format",
        "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn cache_is_transparent_and_verifiable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.jsonl");
    let cache = path.to_str().unwrap();
    let args = ["hecke", "kl-table", "--system", "A3", "--format", "csv"];
    let plain = stdout(&args);

    let mut with_cache = args.to_vec();
    with_cache.extend(["--cache", cache]);
    assert_eq!(stdout(&with_cache), plain);
    let contents = std::fs::read_to_string(&path).unwrap();
    let mut lines = contents.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["format"], "soergel-kl-cache");
    assert_eq!(lines.count(), 24);

    // served from the cache, and verified against recomputation
    assert_eq!(stdout(&with_cache), plain);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), contents);
    let mut verify = with_cache.clone();
    verify.push("--verify");
    assert_eq!(stdout(&verify), plain);

    // a tampered record is detected
    let tampered = contents.replacen("\"v^3\"", "\"2*v^3\"", 1);
    assert_ne!(tampered, contents);
    std::fs::write(&path, tampered).unwrap();
    assert_eq!(code(&verify), 4);
}

#[test]
fn help_lists_the_command_groups() {
    let help = stdout(&["--help"]);
    for group in ["coxeter", "hecke", "leaves", "bs", "rex"] {
        assert!(help.contains(group), "{group}");
    }
}
