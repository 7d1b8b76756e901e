use std::path::PathBuf;

use intervalcert::cli::run;
use intervalcert::interval::verify_interval_rep;
use intervalcert::io::{parse_input, InputFormat};
use intervalcert::probe::verify_probe_rep;
use intervalcert::{Certificate, ProbeCertificate};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("intervalcert").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn graph(name: &str) -> intervalcert::Graph {
    parse_input(&std::fs::read_to_string(data(name)).unwrap(), InputFormat::Auto).unwrap().into_graph().unwrap()
}

#[test]
fn interval_on_c4_is_no() {
    let (code, out, _) = cli(&["interval", &data("c4.txt")]);
    assert_eq!(code, 1);
    let cert: Certificate = serde_json::from_str(&out).unwrap();
    assert!(!cert.is_yes());
}

#[test]
fn probe_all_on_example_is_no() {
    let (code, out, _) = cli(&["probe", "--route", "all", &data("example_ef.txt")]);
    assert_eq!(code, 1);
    let certs: Vec<ProbeCertificate> = serde_json::from_str(&out).unwrap();
    assert_eq!(certs.len(), 3);
}

#[test]
fn single_routes_emit_one_certificate() {
    for route in ["qxl", "char1", "char2"] {
        let (code, out, _) = cli(&["probe", "--route", route, &data("c4.txt")]);
        assert_eq!(code, 0, "{route}");
        let cert: ProbeCertificate = serde_json::from_str(&out).unwrap();
        assert!(verify_probe_rep(&graph("c4.txt"), cert.intervals.as_ref().unwrap()).unwrap());
    }
}

#[test]
fn nonprobes_flag_overrides_input() {
    let (code, _, _) = cli(&["probe", "--nonprobes", "b,e,f", &data("example_ef.txt")]);
    assert_eq!(code, 0);
    let (code, _, err) = cli(&["probe", "--nonprobes", "e,c", &data("example_ef.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("nonprobes not independent: edge c-e"), "{err}");
}

#[test]
fn probe_needs_nonprobes() {
    let (code, _, err) = cli(&["probe", &data("k222.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("nonprobe"));
}

#[test]
fn yes_certificates_round_trip() {
    let path = data("example_plus_ef.txt");
    let (code, out, _) = cli(&["interval", &data("matrix_a.txt")]);
    assert_eq!(code, 2, "non-square matrix is not a graph: {out}");
    let tmp = std::env::temp_dir().join("intervalcert_path.txt");
    std::fs::write(&tmp, "a b\nb c\nc d\n").unwrap();
    let (code, out, _) = cli(&["interval", tmp.to_str().unwrap()]);
    assert_eq!(code, 0);
    let cert: Certificate = serde_json::from_str(&out).unwrap();
    let g = parse_input("a b\nb c\nc d\n", InputFormat::Auto).unwrap().into_graph().unwrap();
    assert!(verify_interval_rep(&g, cert.evidence.intervals.as_ref().unwrap()).unwrap());
    let (code, _, _) = cli(&["interval", &path]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["probe", "--route", "all", "example_bef.txt"],
        vec!["bigraph", "example_ef.txt"],
        vec!["represent", "matrix_a.txt"],
        vec!["ferrers", "--dim3", "example_bef.txt"],
    ] {
        let path = data(args[args.len() - 1]);
        let mut full: Vec<&str> = args[..args.len() - 1].to_vec();
        full.push(&path);
        let first = cli(&full);
        assert_eq!(first.0, 0, "{full:?}: {}", first.2);
        assert_eq!(cli(&full), first);
    }
}

#[test]
fn dot_output_matches_golden_file() {
    let (code, out, _) = cli(&["--format", "dot", "probe", "--route", "qxl", &data("c4.txt")]);
    assert_eq!(code, 0);
    let golden = std::fs::read_to_string(data("c4_qxl.dot")).unwrap();
    assert_eq!(out, golden);
}

#[test]
fn text_output_lists_intervals() {
    let (code, out, _) = cli(&["--format", "text", "represent", &data("matrix_a.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("row y1 [1,3]"));
    assert!(out.contains("col x5 [6,6]"));
}

#[test]
fn diagonalize_methods() {
    let (code, out, _) = cli(&["--format", "text", "diagonalize", &data("matrix_a.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    let (code, out, _) = cli(&["--format", "text", "diagonalize", "--easy", &data("matrix_a.txt")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn ferrers_modes() {
    let (code, out, _) = cli(&["ferrers", "--dim2", &data("c4.txt")]);
    assert_eq!(code, 1);
    assert!(out.contains("odd-cycle"), "{out}");
    let (code, _, _) = cli(&["ferrers", "--dim2", &data("matrix_a.txt")]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&["ferrers", "--dim3", &data("c4.txt")]);
    assert_eq!(code, 0);
    assert!(out.contains("factors"));
    let (code, _, _) = cli(&["ferrers", "--dim3", &data("example_ef.txt")]);
    assert_eq!(code, 1);
    let (code, _, _) = cli(&["ferrers", &data("c4.txt")]);
    assert_eq!(code, 2);
}

#[test]
fn split_check_and_oracle_compare() {
    assert_eq!(cli(&["split-check", &data("k222.txt")]).0, 1);
    assert_eq!(cli(&["split-check", &data("c4.txt")]).0, 0);
    let (code, out, _) = cli(&["oracle-compare", "--max-n", "4"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["disagreements"], serde_json::json!([]));
    assert_eq!(cli(&["oracle-compare", "--max-n", "9"]).0, 2);
}

#[test]
fn errors_exit_2() {
    assert_eq!(cli(&["interval", "--bogus", &data("c4.txt")]).0, 2);
    assert_eq!(cli(&["interval", "/no/such/file"]).0, 2);
    let tmp = std::env::temp_dir().join("intervalcert_bad.txt");
    std::fs::write(&tmp, "a b\na\n").unwrap();
    let (code, _, err) = cli(&["interval", tmp.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn json_graph_input() {
    let (code, out, _) = cli(&["bigraph", &data("example.json")]);
    assert_eq!(code, 0);
    let cert: Certificate = serde_json::from_str(&out).unwrap();
    assert!(cert.evidence.bigraph_intervals.is_some());
}
