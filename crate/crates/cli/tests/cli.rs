use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn dser(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dser"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

fn space(ring: &str, gram: Value, m: usize) -> Value {
    json!({"ring": ring, "gram": gram, "hyperbolic_rank": m})
}

#[test]
fn eval_of_empty_word_is_identity() {
    let input = json!({"space": space("QQ", json!([["2"]]), 1), "word": []});
    let out = dser(&["eval"], Some(&input.to_string()));
    assert_eq!(out.status.code(), Some(0));
    let m = stdout_json(&out);
    assert_eq!(m["entries"], json!([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]));
}

#[test]
fn eval_with_space_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let gram = dir.path().join("gram.json");
    std::fs::write(&gram, r#"[["2"]]"#).unwrap();
    let word = json!([{"kind": "CoordAlpha", "i": 1, "j": 1, "y": "1", "exp": 1}]);
    let out = dser(
        &["eval", "--ring", "QQ", "--gram", gram.to_str().unwrap(), "--hyperbolic-rank", "1"],
        Some(&word.to_string()),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["entries"],
        json!([["1", "0", "-1"], ["2", "1", "-1"], ["0", "0", "1"]])
    );
}

#[test]
fn factor_gives_seven_factor_palindrome() {
    let input = json!({
        "space": space("GF(10007)", json!([["1", "0"], ["0", "3"]]), 2),
        "hom": {"direction": "alpha", "entries": [["5", "17"], ["9999", "2"]]}
    });
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.json");
    std::fs::write(&path, input.to_string()).unwrap();
    let out = dser(&["factor", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["factors"], 7);
    let word = v["word"].as_array().unwrap();
    assert_eq!(word.len(), 7);
    for k in 0..3 {
        assert_eq!(word[k], word[6 - k]);
    }
    let back = dser(&["eval"], Some(&json!({"space": v["space"], "word": v["word"]}).to_string()));
    assert_eq!(back.status.code(), Some(0));
}

#[test]
fn dilate_case_1a_fixture() {
    let input = json!({
        "space": space("QQ[s,x][1/s]", json!([["2"]]), 2),
        "conj": {"kind": "alpha", "i": 1, "j": 1, "a": "x + 1", "r": 2},
        "target": {"kind": "alpha", "k": 2, "l": 1, "x": "x"}
    });
    let out = dser(&["dilate"], Some(&input.to_string()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let w = stdout_json(&out);
    assert_eq!(w["case"], "1a");
    assert_eq!(w["d"], 4);
    assert!(w["min_s_order"].as_i64().unwrap() >= 1);
    assert_eq!(w["verified"], true);
    // re-parse and re-emit
    let parsed: dser_core::wire::WitnessJson = serde_json::from_value(w.clone()).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), w);
}

#[test]
fn dilate_budget_too_small_is_usage_error() {
    let input = json!({
        "space": space("QQ[s,x][1/s]", json!([["2"]]), 2),
        "conj": {"kind": "alpha", "i": 1, "j": 1, "a": "x", "r": 1},
        "target": {"kind": "beta*", "k": 1, "l": 1, "x": "1"},
        "d": 3
    });
    let out = dser(&["dilate"], Some(&input.to_string()));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dilate_theta_word() {
    let input = json!({
        "space": space("QQ[s,x,X][1/s]", json!([["2"]]), 1),
        "theta": [{"kind": "CoordAlpha", "i": 1, "j": 1, "y": "x*X/s", "exp": 1}]
    });
    let out = dser(&["dilate"], Some(&input.to_string()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["d"], 2);
    assert_eq!(v["word"][0]["y"], "s*x*X");
}

#[test]
fn telescope_product() {
    let input = json!({
        "space": space("QQ[t,X]", json!([["2"]]), 1),
        "theta": [{"kind": "CoordAlpha", "i": 1, "j": 1, "y": "t*X"}, {"kind": "CoordBetaStar", "i": 1, "j": 1, "y": "X^2"}],
        "shares": [["t", "t"], ["2", "t - t^2"], ["1 - t", "1 - t"]]
    });
    let out = dser(&["telescope"], Some(&input.to_string()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["kappas"].as_array().unwrap().len(), 3);
    assert_eq!(v["verified"], true);

    let bad = json!({
        "space": input["space"], "theta": input["theta"], "shares": [["t", "1"]]
    });
    assert_eq!(dser(&["telescope"], Some(&bad.to_string())).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(dser(&["eval"], Some("{not json")).status.code(), Some(2));
    let bad_ring = json!({"space": space("ZZ", json!([["1"]]), 1), "word": []});
    assert_eq!(dser(&["eval"], Some(&bad_ring.to_string())).status.code(), Some(2));
    assert_eq!(dser(&["verify", "--identities", "nonsense"], None).status.code(), Some(2));
    assert_eq!(dser(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--samples", "4", "--seed", "9", "--identities", "membership,commutators,dilation"];
    let a = dser(&args, None);
    let b = dser(&args, None);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        if let Some(s) = v.get("summary") {
            assert_eq!(s["violated"], 0);
        } else {
            let r: dser_core::identities::IdentityReport = serde_json::from_value(v.clone()).unwrap();
            assert_eq!(serde_json::to_value(&r).unwrap(), v);
        }
    }
}

#[test]
fn verify_with_corrupted_generator_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.jsonl");
    let out = dser(
        &["verify", "--samples", "2", "--identities", "membership", "--inject-fault", "--out", out_path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(out_path).unwrap();
    let bad: Value = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|v| v["verdict"]["status"] == "violated")
        .unwrap();
    assert!(bad["verdict"]["row"].is_u64() && bad["verdict"]["col"].is_u64());
}

#[test]
fn verify_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.json");
    std::fs::write(
        &cfg,
        json!({"ring": "GF(10007)", "n_max": 2, "m_max": 2, "seed": 3, "identities": ["bridges"], "samples": 3}).to_string(),
    )
    .unwrap();
    let out = dser(&["verify", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
}
