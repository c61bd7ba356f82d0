use std::path::PathBuf;
use std::process::Command;

use dimerlab::cli::run;
use dimerlab::fixtures;
use dimerlab::format::{parse, parse_dimer, Parsed};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dimerlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = call(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dimerlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn inconsistent_torus_exits_one_with_witness() {
    let (code, v) = json(&["check", "dimex3.dimer"]);
    assert_eq!(code, 1);
    let c = &v["consistency"];
    assert_eq!(c["verdict"], "inconsistent");
    assert_eq!((c["witness"]["i"].as_u64(), c["witness"]["j"].as_u64()), (Some(3), Some(3)));
    assert_eq!(c["witness"]["arrow"], "x");
}

#[test]
fn consistent_models_exit_zero() {
    for f in ["dimex2.dimer", "dimex4.dimer", "c3.dimer", "toric.dimer"] {
        let (code, v) = json(&["check", f]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(v["consistency"]["verdict"], "consistent", "{f}");
    }
    let (code, v) = json(&["check", "dimex4.dimer"]);
    assert_eq!((code, v["surface"]["genus"].as_i64()), (0, Some(2)));
}

#[test]
fn quivers_report_their_surface_only() {
    let (code, v) = json(&["check", "pentagon.quiver"]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "quiver");
    assert_eq!(v["surface"]["genus"], 0);
    assert!(v["consistency"].is_null());
}

#[test]
fn mirror_of_c3_is_a_three_vertex_sphere() {
    let (code, text, _) = call(&["mirror", "c3.dimer"]);
    assert_eq!(code, 0);
    let p = scratch("c3_mirror.dimer", &text);
    let (code, v) = json(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 1, "sphere dimers are never consistent");
    assert_eq!(v["vertices"], 3);
    assert_eq!(v["surface"]["genus"], 0);
}

#[test]
fn mirror_twice_returns_the_input() {
    for name in fixtures::NAMES {
        let Parsed::Dimer(m) = fixtures::load(name) else { continue };
        let (code, once, _) = call(&["mirror", name]);
        assert_eq!(code, 0, "{name}");
        let p = scratch(&format!("once_{name}"), &once);
        let (code, twice, _) = call(&["mirror", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}");
        let back = parse_dimer(&twice).unwrap();
        assert!(back.same_up_to_vertex_names(&m), "{name}");
    }
}

#[test]
fn rectify_text_output_parses_back() {
    for name in ["torus2loop.quiver", "tetra.quiver", "pentagon.quiver", "dimex1.quiver"] {
        let (code, text, _) = call(&["rectify", name]);
        assert_eq!(code, 0, "{name}");
        assert!(matches!(parse(&text), Ok(Parsed::Dimer(_))), "{name}");
    }
    let (_, v) = json(&["rectify", "tetra.quiver"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    let zero = v["arrows"].as_array().unwrap().iter().filter(|a| a["degree"] == 0).count();
    assert_eq!(zero, 4);
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = call(&["check", "/nonexistent/model.dimer"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));

    let bad = scratch("bad.dimer", "dimer\nvertex 1\narrow a 1 2\n");
    let (code, _, err) = call(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.dimer"), "{err}");

    assert_eq!(call(&["mirror", "pentagon.quiver"]).0, 2);
    assert_eq!(call(&["zigzag", "dimex2.dimer", "--format", "dot"]).0, 2);
    assert_eq!(call(&["toric", "octahedron.dimer"]).0, 2);
    assert_eq!(call(&["toric", "toric.dimer", "--vertex-o", "nowhere"]).0, 2);
    assert_eq!(call(&["toric", "toric.dimer", "--cycle-x", "a"]).0, 2);
    assert_eq!(call(&["mf", "dimex2.dimer", "--matching", "a"]).0, 2);
    assert_eq!(call(&["twisted-demo", "pentagon.quiver", "--chord", "zz"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&[]).0, 2);
    assert_eq!(call(&["frobnicate", "c3.dimer"]).0, 2);
    assert_eq!(call(&["check", "c3.dimer", "--bound-arity", "0"]).0, 2);
    assert_eq!(call(&["check", "c3.dimer", "--format", "yaml"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("mirror-compare"));
}

#[test]
fn dot_output_lists_every_arrow() {
    let (code, out, _) = call(&["mirror", "dimex2.dimer", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("->").count(), 8);
}

#[test]
fn zigzag_cycles_of_dimex2() {
    let (code, v) = json(&["zigzag", "dimex2.dimer"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 4);
    for c in v["cycles"].as_array().unwrap() {
        assert_eq!(c["arrows"].as_array().unwrap().len(), 4);
    }
}

#[test]
fn gentle_verify_schema() {
    let (code, v) = json(&["gentle-verify", "c3.dimer", "--bound-arity", "4"]);
    assert_eq!(code, 0);
    assert!(v["checked"].as_u64().unwrap() > 0);
    assert_eq!(v["violations"], Value::Array(vec![]));
}

#[test]
fn hochschild_schema() {
    let (code, v) = json(&["hochschild", "c3.dimer"]);
    assert_eq!(code, 0);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    for e in entries {
        assert_eq!(e["dims"], serde_json::json!([0, 1, 1]));
        assert_eq!(e["generatorsOK"], true);
        assert_eq!(e["reliable"], true);
    }
}

#[test]
fn toric_schema_and_explicit_frame() {
    let (code, v) = json(&["toric", "toric.dimer", "--vertex-o", "1"]);
    assert_eq!(code, 0);
    assert_eq!((v["B"].as_i64(), v["I"].as_i64()), (Some(4), Some(1)));
    assert_eq!(v["stable"].as_array().unwrap().len(), 5);
    assert_eq!(v["triangles"].as_array().unwrap().len(), 4);
    assert_eq!(v["checks"]["q0Formula"], serde_json::json!([4, 4]));
    assert_eq!(v["checks"]["zigzagB"], serde_json::json!([4, 4]));
    assert_eq!(v["checks"]["genusI"], serde_json::json!([1, 1]));

    let (code, swapped) = json(&["toric", "toric.dimer", "--vertex-o", "1", "--cycle-x", "d,~c", "--cycle-y", "~a,b"]);
    assert_eq!(code, 0);
    assert_eq!(swapped["B"], v["B"]);
    let (code, _, err) = call(&["toric", "toric.dimer", "--vertex-o", "1", "--cycle-x", "d,~c", "--cycle-y", "d,~c"]);
    assert_eq!(code, 2);
    assert!(err.contains("dependent"));
}

#[test]
fn mf_report_with_a_reference_matching() {
    let (code, v) = json(&["mf", "dimex2.dimer"]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 64);
    assert_eq!(v["faces"]["mismatches"], Value::Array(vec![]));
    let (code, w) = json(&["mf", "dimex2.dimer", "--matching", "b,w"]);
    assert_eq!(code, 0);
    assert_eq!(w["concatenation"]["checked"], v["concatenation"]["checked"]);
}

#[test]
fn twisted_demo_on_the_pentagon() {
    let (code, v) = json(&["twisted-demo", "pentagon.quiver", "--chord", "b"]);
    assert_eq!(code, 0);
    let c = &v["chords"][0];
    assert_eq!(c["objects"], serde_json::json!(["b", "a1", "a2", "a3"]));
    assert_eq!((c["wValid"].clone(), c["first"].clone(), c["second"].clone()), (Value::Bool(true), Value::Bool(true), Value::Bool(true)));
}

#[test]
fn output_is_deterministic() {
    for args in [&["toric", "toric.dimer"][..], &["zigzag", "dimex3.dimer"], &["check", "dimex4.dimer"]] {
        assert_eq!(call(args), call(args));
    }
}

#[test]
fn binary_exit_codes_and_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_dimerlab");
    let status = |args: &[&str], threads: Option<&str>| {
        let mut c = Command::new(bin);
        c.args(args).current_dir(fixtures::dir());
        match threads {
            Some(t) => c.env("DIMERLAB_THREADS", t),
            None => c.env_remove("DIMERLAB_THREADS"),
        };
        c.output().unwrap().status.code()
    };
    assert_eq!(status(&["check", "dimex2.dimer"], None), Some(0));
    assert_eq!(status(&["check", "dimex3.dimer"], Some("1")), Some(1));
    assert_eq!(status(&["check", "nope.dimer"], None), Some(2));
    assert_eq!(status(&["check", "dimex2.dimer"], Some("0")), Some(2));
    assert_eq!(status(&["check", "dimex2.dimer"], Some("many")), Some(2));
}
