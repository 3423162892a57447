use std::io::Write;
use std::process::Command;
use std::time::Duration;

use qpair_cli::campaigns::{check_instance, run_verify, Mode, Tag};
use qpair_cli::codec::{elem_to_json, field_to_json, parse_elem, parse_field, parse_field_arg};
use qpair_cli::input::{parse_input, Object};
use qpair_cli::report::{InstanceResult, Verdict, VerificationReport};
use qpair_core::algebra::{find_zero_divisor, Splitting};
use qpair_core::forms::QuadraticForm;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn qp(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qp"))
        .args(args)
        .env("QP_WORKERS", "2")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_json(v: &Value) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

#[test]
fn parses_a_binary_form() {
    let doc = json!({"field": {"kind": "galois", "p": 2, "k": 1}, "form": {"upper": [[1, 1], [0, 1]]}});
    let input = parse_input(&doc, None).unwrap();
    let Object::Form(rho) = input.object else { panic!() };
    let f = input.field;
    assert_eq!(rho.upper(), QuadraticForm::binary(&f, f.one(), f.one()).upper());
}

#[test]
fn split_quaternion_defaults_to_gf2() {
    let input = parse_input(&json!({"quat": {"a": 0, "b": 1}}), None).unwrap();
    assert_eq!(input.field.to_string(), "GF(2)");
    let Object::Algebra(q) = input.object else { panic!() };
    assert!(matches!(find_zero_divisor(&q, 1).unwrap(), Splitting::Split(_)));
}

#[test]
fn malformed_modulus_names_its_path() {
    for modulus in [json!([1, 0, 1]), json!("x"), json!([1, "y", 1])] {
        let doc = json!({"field": {"kind": "galois", "p": 2, "k": 2, "modulus": modulus}, "quat": {"a": 0, "b": 1}});
        let e = parse_input(&doc, None).unwrap_err();
        assert!(e.path.starts_with("field.modulus"), "{e}");
    }
    let doc = json!({"field": {"kind": "quotient", "base": {"kind": "galois", "p": 2}, "modulus": [0, 0, 1]},
                     "quat": {"a": 0, "b": 1}});
    assert!(parse_input(&doc, None).unwrap_err().path.starts_with("field.modulus"));
}

#[test]
fn schema_errors_carry_positions() {
    let doc = json!({"tensor_qp": {"factors": [{"quat_inv": {"a": 1, "b": 0}}], "pair": {"quat_qp": {"c": 0, "d": 1}}}});
    let e = parse_input(&doc, None).unwrap_err();
    assert_eq!(e.path, "tensor_qp.factors[0].quat_inv");
    let doc = json!({"quat_inv": {"a": 1, "b": 1, "variant": "other"}});
    assert_eq!(parse_input(&doc, None).unwrap_err().path, "quat_inv.variant");
    let doc = json!({"adjoint": {"gram": [[1, 1], [0, 1]]}});
    assert!(parse_input(&doc, None).is_err());
}

#[test]
fn elements_round_trip_through_json() {
    let towers = [
        "GF(4)",
        "GF(3)(t)",
        r#"{"kind":"quotient","base":{"kind":"ratfun","base":{"kind":"galois","p":2},"var":"t"},"modulus":["t",1,1]}"#,
        r#"{"kind":"ratfun","base":{"kind":"galois","p":2,"k":2},"var":"s"}"#,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut next = || rng.next_u64();
    for t in towers {
        let f = parse_field_arg(t).unwrap();
        assert_eq!(parse_field(&field_to_json(&f), "field").unwrap(), f);
        for _ in 0..300 {
            let x = f.random_element(&mut next, 2);
            let j = elem_to_json(&f, &x);
            assert_eq!(parse_elem(&f, &j, "x").unwrap(), x, "{t}: {j}");
        }
    }
}

#[test]
fn exit_code_zero_when_all_pass() {
    let (code, out, _) = qp(&["verify", "symplectize", "--field", "GF(2)", "--exhaustive"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("4 pass, 0 fail, 0 inconclusive"));
}

#[test]
fn exit_code_two_when_only_inconclusive() {
    // the pair side cannot be searched exhaustively over GF(5) in dimension 4
    let inst = temp_json(&json!([{"form": {"upper": [[1, 0, 1, 3], [0, 2, 1, 0], [0, 0, 0, 3], [0, 0, 0, 3]]}}]));
    let (code, out, _) = qp(&["verify", "hypiffquad", "--field", "GF(5)", "--instances", inst.path().to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn exit_code_three_on_input_errors() {
    let (code, _, err) = qp(&["verify", "main", "--field", "F2(t)", "--exhaustive"]);
    assert_eq!(code, 3);
    assert!(err.contains("finite field"));
    let (code, _, _) = qp(&["verify", "nosuchtag", "--field", "GF(2)", "--exhaustive"]);
    assert_eq!(code, 3);
    let bad = temp_json(&json!({"field": {"kind": "galois", "p": 2, "k": 2, "modulus": [1, 0, 1]}, "quat": {"a": 0, "b": 1}}));
    let (code, _, err) = qp(&["build", bad.path().to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("field.modulus"), "{err}");
    let (code, _, _) = qp(&["verify", "main", "--field", "GF(2)"]);
    assert_eq!(code, 3);
}

#[test]
fn failing_report_exits_one_and_embeds_the_instance() {
    let f = parse_field_arg("GF(2)").unwrap();
    let doc = json!({"symplectize": {"a": 0, "b": 1, "c": 1, "d": 1}, "field": field_to_json(&f)});
    let r = VerificationReport {
        campaign: "t".into(),
        tag: "symplectize".into(),
        field: f.to_string(),
        tower: field_to_json(&f),
        mode: json!({}),
        bound: 2,
        instances: vec![InstanceResult {
            index: 0,
            description: String::new(),
            instance: doc.clone(),
            verdict: Verdict::Fail {
                counterexample: doc.clone(),
                reason: "planted".into(),
            },
            evidence: Value::Null,
            elapsed: Duration::ZERO,
        }],
        elapsed: Duration::ZERO,
    };
    assert_eq!(r.exit_code(), 1);
    let machine: Value = serde_json::from_str(&r.render_machine()).unwrap();
    let ce = &machine["instances"][0]["verdict"]["counterexample"];
    assert_eq!(ce, &doc);
    // the embedded document is enough to re-run the checker
    let again = check_instance(Tag::Symplectize, &f, ce, 2).unwrap();
    assert_eq!(again.verdict, Verdict::Pass);
}

#[test]
fn machine_reports_are_deterministic() {
    let args = ["verify", "explict", "--field", "GF(4)", "--random", "11", "40", "--format", "machine"];
    let (c1, a, _) = qp(&args);
    let out = Command::new(env!("CARGO_BIN_EXE_qp"))
        .args(args)
        .env("QP_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(c1, 0);
    assert_eq!(a, String::from_utf8(out.stdout).unwrap());
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["summary"]["total"], 40);
    assert!(v.get("elapsed").is_none());
}

#[test]
fn main_instances_pass_from_the_command_line() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/instances/main_f2t.json");
    let (code, out, _) = qp(&["verify", "main", "--field", "F2(t)", "--instances", path]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn decompose_and_recover_commands() {
    let doc = temp_json(&json!({
        "field": {"kind": "ratfun", "base": {"kind": "galois", "p": 2}, "var": "t"},
        "decomposition": {"factors": [{"quat_inv": {"a": "t", "b": "t", "variant": "canonical"}}],
                          "pair": {"quat_qp": {"c": "t", "d": "t"}}}
    }));
    let p = doc.path().to_str().unwrap();
    let (code, out, _) = qp(&["decompose", p, "--orthogonalize"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["factors"], json!(["orthogonal"]));
    assert_eq!(v["certificate"]["checked"], true);
    // [t·|·t) ⊠ [t·|·t) ≅ [0|·t) ⊗ [t‖·t²)
    assert_eq!(v["presentation"]["pair"]["quat_qp"]["d"]["num"], json!([0, 0, 1]));
    let (code, out, _) = qp(&["decompose", p, "--canonical"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["factors"], json!(["symplectic"]));
    let k = r#"{"kind":"quotient","base":{"kind":"ratfun","base":{"kind":"galois","p":2},"var":"t"},"modulus":["t",1,1]}"#;
    let (code, out, _) = qp(&["recover", p, "--splitting", k]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"]["status"], "pass");
    assert_eq!(v["result"]["result"], "confirmed");
}

#[test]
fn campaigns_reject_unsupported_fields() {
    let g5 = parse_field_arg("GF(5)").unwrap();
    assert!(run_verify(Tag::Main, &g5, &Mode::Random { seed: 1, count: 1 }, 2).is_err());
    assert!(run_verify(Tag::Pfisterinvar, &g5, &Mode::Random { seed: 1, count: 1 }, 2).is_err());
    let ft = parse_field_arg("F2(t)").unwrap();
    assert!(run_verify(Tag::Symplectize, &ft, &Mode::Exhaustive(String::new()), 2).is_err());
}

#[test]
fn odd_characteristic_campaigns() {
    let g3 = parse_field_arg("GF(3)").unwrap();
    for tag in [Tag::Explict, Tag::Choicef, Tag::DecompAssoc, Tag::Totdecompqp] {
        let r = run_verify(tag, &g3, &Mode::Random { seed: 5, count: 20 }, 2).unwrap();
        assert_eq!(r.summary().pass, 20, "{}", tag.name());
    }
}
