use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use slowprov::modal::{check_proof, parse_formula, KripkeModel, ProofObject, Semantics};

fn slowprov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slowprov"))
        .args(args)
        .env_remove("SLOWPROV_BITCAP")
        .env_remove("SLOWPROV_STEPCAP")
        .env_remove("SLOWPROV_MODELSIZE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = slowprov(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("one JSON record")
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn ordinal_commands() {
    assert_eq!(stdout(&["ord", "fundseq", "e0", "0"]), "w");
    assert_eq!(stdout(&["ord", "cmp", "w^w", "w*9+7"]), "GT");
    assert_eq!(stdout(&["ord", "cmp", "w*2", "w+w"]), "EQ");
    assert_eq!(stdout(&["ord", "add", "3", "w"]), "w");
    assert_eq!(stdout(&["ord", "mul", "w", "2"]), "w*2");
    assert_eq!(stdout(&["ord", "stepdown", "w", "2", "--target", "0"]), "REACHED r=4: w,3,2,1,0");
    assert_eq!(stdout(&["ord", "stepdown", "w", "3", "--target", "5"]), "NOT_ON_PATH");
    assert!(stdout(&["ord", "stepdown", "e0", "3", "--max-steps", "10"]).starts_with("BUDGET steps=10"));
}

#[test]
fn hierarchy_commands() {
    assert_eq!(stdout(&["fgh", "eval", "1", "4"]), "9");
    assert_eq!(stdout(&["fgh", "eval", "1", "4", "--iter", "2"]), "19");
    assert_eq!(stdout(&["fgh", "l", "5"]), "2");
    assert_eq!(stdout(&["fgh", "r", "2"]), "5");
    assert_eq!(stdout(&["fgh", "r", "3"]), "BUDGET");
    assert_eq!(stdout(&["fgh", "cmpto", "2", "2", "100"]), "LE 23");
    assert_eq!(stdout(&["fgh", "cmpto", "2", "2", "22"]), "GT");
    assert_eq!(stdout(&["fgh", "cmpto", "e0", "3", "1000"]), "GT");
    assert_eq!(stdout(&["fgh", "shift", "5", "2"]), "1");
    assert_eq!(stdout(&["fgh", "shift", "--", "-1", "0"]), stdout(&["fgh", "eval", "e0", "1"]));
    assert_eq!(stdout(&["--bits", "fgh", "eval", "2", "2"]), "bits=5");
}

#[test]
fn budgets_come_from_flags_then_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_slowprov"));
        c.args(args).env_remove("SLOWPROV_BITCAP");
        if let Some(v) = env {
            c.env("SLOWPROV_BITCAP", v);
        }
        String::from_utf8(c.output().unwrap().stdout).unwrap().trim().to_string()
    };
    // F_2(5) = 383 needs nine bits.
    assert_eq!(run(None, &["fgh", "eval", "2", "5"]), "383");
    assert_eq!(run(Some("8"), &["fgh", "eval", "2", "5"]), "BUDGET");
    assert_eq!(run(Some("8"), &["--bitcap", "9", "fgh", "eval", "2", "5"]), "383");
    assert_eq!(run(None, &["--stepcap", "1", "fgh", "eval", "3", "1"]), "BUDGET");
}

#[test]
fn exit_codes() {
    assert_eq!(slowprov(&["ord", "cmp", "w^", "w"]).status.code(), Some(2));
    assert_eq!(slowprov(&["modal", "decide", "glt", "[]p ->"]).status.code(), Some(2));
    assert_eq!(slowprov(&["iter", "normalize", "Q p"]).status.code(), Some(2));
    assert_eq!(slowprov(&["fgh", "r", "3"]).status.code(), Some(0));
    assert_eq!(slowprov(&["--strict", "fgh", "r", "3"]).status.code(), Some(3));
    assert_eq!(slowprov(&["--strict", "fgh", "r", "2"]).status.code(), Some(0));
    let garbage = temp_file("{ not a model");
    let path = garbage.path().to_str().unwrap();
    assert_eq!(slowprov(&["modal", "eval", path, "0", "p"]).status.code(), Some(4));
    assert_eq!(slowprov(&["modal", "eval", "/nonexistent/model.json", "0", "p"]).status.code(), Some(4));
    let cyclic = temp_file(r#"{"worlds":["a","b"],"root":"a","prec":[["a","b"],["b","a"]]}"#);
    assert_eq!(
        slowprov(&["modal", "checkmodel", cyclic.path().to_str().unwrap(), "p"]).status.code(),
        Some(4)
    );
}

#[test]
fn modal_decisions() {
    assert_eq!(stdout(&["modal", "decide", "glt", "[.]p -> []p"]), "THEOREM");
    assert_eq!(stdout(&["modal", "decide", "gl2", "[]p <-> [.][.]p"]), "THEOREM");
    assert_eq!(stdout(&["modal", "decide", "gl", "[]([]p -> p) -> []p"]), "THEOREM");
    let out = stdout(&["modal", "decide", "glt", "[]p -> [.]p"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("COUNTERMODEL"));
    let world = lines.next().unwrap().strip_prefix("world: ").unwrap().to_string();
    let model = KripkeModel::from_json(&lines.collect::<Vec<_>>().join("\n")).unwrap();
    assert_eq!(model.size(), 2);
    let a = parse_formula("[]p -> [.]p").unwrap();
    assert_eq!(model.eval(model.world_index(&world).unwrap(), &a, Semantics::Glt), Ok(false));
    assert_eq!(first_line(&["modal", "decide", "glt", "[](p <-> [.]p) -> []p"]), "INCONCLUSIVE bound=5");
    assert_eq!(
        first_line(&["--model-size", "3", "modal", "decide", "glt", "[](p <-> [.]p) -> []p"]),
        "INCONCLUSIVE bound=3"
    );
}

#[test]
fn model_files_evaluate() {
    let model = temp_file(
        r#"{"worlds":["a","b","c"],"root":"a","prec":[["a","b"],["b","c"],["a","c"]],"val":{"p":["b"]}}"#,
    );
    let path = model.path().to_str().unwrap();
    // □ over the two-step relation reaches only c.
    assert_eq!(stdout(&["modal", "eval", path, "a", "[]p", "--sem", "gl2"]), "FALSE");
    assert_eq!(stdout(&["modal", "eval", path, "a", "[]~p", "--sem", "gl2"]), "TRUE");
    assert_eq!(stdout(&["modal", "eval", path, "0", "<.>p", "--sem", "gl2"]), "TRUE");
    assert_eq!(stdout(&["modal", "eval", path, "c", "[]false", "--sem", "gl"]), "TRUE");
    assert_eq!(stdout(&["modal", "checkmodel", path, "[.]p"]), "OK");
    assert_eq!(slowprov(&["modal", "eval", path, "z", "p"]).status.code(), Some(4));
}

#[test]
fn proofs_check() {
    let forward = temp_file(
        r#"{"system":"GLT","lines":[
            {"formula":"[.](p -> p)","rule":"Nec_tri","refs":[2]},
            {"formula":"p -> p","rule":"Taut"}]}"#,
    );
    assert!(stdout(&["modal", "checkproof", forward.path().to_str().unwrap()]).starts_with("ERROR line=1"));
    let ok = temp_file(
        r#"{"system":"GLT","lines":[
            {"formula":"p -> p","rule":"Taut"},
            {"formula":"[.](p -> p)","rule":"Nec_tri","refs":[1]},
            {"formula":"[.](p -> p) -> [](p -> p)","rule":"AxT1"},
            {"formula":"[](p -> p)","rule":"MP","refs":[2,3]}]}"#,
    );
    assert_eq!(stdout(&["modal", "checkproof", ok.path().to_str().unwrap()]), "OK");
    let nec_box = temp_file(
        r#"{"system":"GLT","lines":[
            {"formula":"p -> p","rule":"Taut"},
            {"formula":"[](p -> p)","rule":"Nec_box","refs":[1]}]}"#,
    );
    assert!(stdout(&["modal", "checkproof", nec_box.path().to_str().unwrap()]).starts_with("ERROR line=2"));
    let broken = temp_file(r#"{"system":"GLT","lines":[{"formula":"p ->","rule":"Taut"}]}"#);
    assert_eq!(slowprov(&["modal", "checkproof", broken.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn iteration_commands() {
    assert_eq!(stdout(&["iter", "normalize", "S2^w p"]), "B p");
    assert_eq!(stdout(&["iter", "normalize", "R R p"]), "B p");
    assert_eq!(stdout(&["iter", "normalize", "B S1^w p", "--absorb-s1"]), "B p");
    assert_eq!(stdout(&["iter", "normalize", "B S1^w p"]), "B S1^w p");
    assert_eq!(stdout(&["iter", "entails", "B p", "S1 p"]), "UNKNOWN");
    assert_eq!(stdout(&["iter", "entails", "S1 p", "B p"]), "YES");
}

#[test]
fn dev_commands() {
    assert_eq!(stdout(&["dev", "frames", "3"]).lines().count(), 3);
    assert_eq!(json(&["dev", "frames", "4"])["count"], 16);
    assert_eq!(stdout(&["dev", "oracle-f", "2", "3"]), "63");
    let a = "[.]([.]p -> p) -> [.]p";
    let one = stdout(&["--seed", "7", "dev", "random-model", a]);
    assert_eq!(one, stdout(&["--seed", "7", "dev", "random-model", a]));
    KripkeModel::from_json(&one).unwrap().validate_model(&parse_formula(a).unwrap()).unwrap();
}

#[test]
fn json_records_roundtrip_through_the_loaders() {
    let r = json(&["modal", "decide", "glt", "[]p -> [.]p"]);
    assert_eq!(r["command"], "modal decide");
    assert_eq!(r["verdict"], "COUNTERMODEL");
    let model = KripkeModel::from_json(&r["model"].to_string()).unwrap();
    assert_eq!(model.to_json_value(), r["model"]);

    let r = json(&["modal", "decide", "glt", "[]([]p -> p) -> []p"]);
    assert_eq!(r["verdict"], "THEOREM");
    if let Some(p) = r.get("proof") {
        let proof = ProofObject::from_json(&p.to_string()).unwrap();
        check_proof(&proof).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&proof.to_json()).unwrap(), *p);
    }

    let r = json(&["ord", "stepdown", "w", "2"]);
    assert_eq!(r["steps"], 4);
    assert_eq!(r["path"], serde_json::json!(["w", "3", "2", "1", "0"]));
    assert_eq!(json(&["fgh", "eval", "2", "3"])["value"], "63");
    assert_eq!(json(&["fgh", "r", "3"])["verdict"], "BUDGET");
    assert_eq!(json(&["iter", "normalize", "R^5 p"])["expr"], "B^2 R p");

    let out = slowprov(&["--format", "json", "ord", "cmp", "w^", "w"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(err["exit"], 2);
}
