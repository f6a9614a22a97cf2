use std::io::Write;
use std::process::{Command, Stdio};

use torusq::exact::check_certificate;
use torusq::report::{Outcome, Report};

fn torusq(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_torusq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn report(args: &[&str]) -> Report {
    let (code, out, err) = torusq(args, None);
    assert_eq!(code, 0, "{err}");
    Report::from_json(&out).unwrap()
}

#[test]
fn every_command_succeeds_on_a_circle_action() {
    let w = ["--weights", "[[1,-1]]"];
    for cmd in ["normalize", "check", "admissible", "classify", "koszul", "diagram"] {
        let mut args = vec![cmd];
        args.extend(w);
        let r = report(&args);
        assert_eq!(r.input.weights, vec![vec![1, -1]]);
    }
    let r = report(&["quantize", "--weights", "[[1,-1]]", "--invariant", "z1*z2", "--invariant", "zb1*zb2", "--order", "2"]);
    let Outcome::Quantize(q) = r.output else { panic!() };
    assert_eq!(q.order, 2);
    assert_eq!(q.table.len(), 4);
}

#[test]
fn check_reports_cross_polytope_and_certificates_revalidate() {
    let r = report(&["check", "--weights", "[[1,-1,0,0],[0,0,1,-1]]"]);
    let Outcome::Check(c) = r.output else { panic!() };
    assert!(c.effective);
    assert_eq!(c.rank, 2);
    assert!(c.conditions.agree && c.conditions.sign_change.holds);
    assert!(!c.admissibility.admissible);
    assert_eq!(c.admissibility.violating_subset, Some(vec![1, 2]));
    for cert in c
        .conditions
        .sign_change
        .certificates
        .iter()
        .chain(&c.conditions.image_is_subspace.certificates)
        .chain(&c.conditions.zero_in_relint.certificates)
        .chain(c.admissibility.violation_certificate.iter())
    {
        assert!(check_certificate(&cert.lp, &cert.certificate));
    }
}

#[test]
fn job_spec_from_stdin_and_mu_flag() {
    let (code, out, _) = torusq(&["check", "-", "--mu", "1"], Some(r#"{"weights": [[1,1]]}"#));
    assert_eq!(code, 0);
    let Outcome::Check(c) = Report::from_json(&out).unwrap().output else { panic!() };
    assert!(!c.conditions.sign_change.holds);
    assert!(c.mu_in_relint.unwrap().holds);
    let (code, out, _) = torusq(&["check", "-", "--mu=-1"], Some(r#"{"weights": [[1,1]]}"#));
    assert_eq!(code, 0);
    let Outcome::Check(c) = Report::from_json(&out).unwrap().output else { panic!() };
    assert!(!c.mu_in_relint.unwrap().holds);
}

#[test]
fn classify_strings() {
    let r = report(&["classify", "--weights", "[[1,1,-1]]"]);
    let Outcome::Classify(c) = r.output else { panic!() };
    assert_eq!(c.link.description, "S^3 x S^1");
    let r = report(&["classify", "--weights", "[[1,0,-1,-1,1],[0,1,1,-1,-2]]"]);
    let Outcome::Classify(c) = r.output else { panic!() };
    assert_eq!(c.oddgon.unwrap().multiplicities, vec![1; 5]);
    assert_eq!(c.link.summands.len(), 5);
}

#[test]
fn exit_codes() {
    // validation errors
    assert_eq!(torusq(&["check", "--weights", "[[1,-1],[2]]"], None).0, 2);
    assert_eq!(torusq(&["check", "--weights", "[[1,-1]]", "--mu", "1,2"], None).0, 2);
    assert_eq!(torusq(&["check"], None).0, 2);
    assert_eq!(torusq(&["frobnicate", "--weights", "[[1]]"], None).0, 2);
    assert_eq!(torusq(&["check", "-"], Some("{not json")).0, 2);
    assert_eq!(torusq(&["quantize", "--weights", "[[1,-1]]", "--invariant", "z1"], None).0, 2);
    assert_eq!(torusq(&["quantize", "--weights", "[[1,-1]]", "--invariant", "z3"], None).0, 2);
    assert_eq!(torusq(&["quantize", "--weights", "[[1,-1]]", "--invariant", "z1*"], None).0, 2);
    // refused or unsupported
    assert_eq!(torusq(&["classify", "--weights", "[[1,0,0,-1],[0,1,0,-1],[0,0,1,-1]]"], None).0, 3);
    assert_eq!(torusq(&["classify", "--weights", "[[1,0,-1]]"], None).0, 3);
    assert_eq!(torusq(&["diagram", "--weights", "[[1],[1],[1]]"], None).0, 3);
    assert_eq!(torusq(&["admissible", "--weights", "[[1,-1,1,-1]]", "--budget", "2"], None).0, 3);
    assert_eq!(torusq(&["koszul", "--weights", "[[1,-1]]", "--mu", "1"], None).0, 3);
    // help is not an error
    let (code, out, _) = torusq(&["--help"], None);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn errors_are_json_documents() {
    let (code, out, err) = torusq(&["classify", "--weights", "[[1,2]]"], None);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["code"], 3);
    assert!(err.contains("not admissible"));
}

#[test]
fn diagram_writes_deterministic_file() {
    let dir = std::env::temp_dir().join(format!("torusq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("tri.svg");
    let path = p.to_str().unwrap();
    let r = report(&["diagram", "--weights", "[[1,0,-1],[0,1,-1]]", "--out", path]);
    let first = std::fs::read(&p).unwrap();
    report(&["diagram", "--weights", "[[1,0,-1],[0,1,-1]]", "--out", path]);
    assert_eq!(first, std::fs::read(&p).unwrap());
    let Outcome::Diagram(d) = r.output else { panic!() };
    assert_eq!(d.bytes, first.len());
    let svg = String::from_utf8(first).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("<polygon"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn koszul_table_for_rank_deficient_input() {
    let r = report(&["koszul", "--weights", "[[1,-1],[2,-2]]", "--maxdeg", "3"]);
    let Outcome::Koszul(t) = r.output else { panic!() };
    assert_eq!(t.dim(1, 2), 1);
    assert_eq!(t.maxdeg, 3);
}

#[test]
fn enumerate_feeds_quantize() {
    let r = report(&["quantize", "--weights", "[[1,-1]]", "--enumerate", "2", "--order", "1", "--seed", "3"]);
    let Outcome::Quantize(q) = r.output else { panic!() };
    assert_eq!(q.invariants.len(), 4);
    assert_eq!(q.table.len(), 16);
    assert!(q.associativity.unwrap().associative);
}
