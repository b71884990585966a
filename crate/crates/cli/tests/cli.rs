use clap::Parser;
use findim_cli::app::{run, Cli};
use findim_cli::commands::{self, PdOutput, RunConfig};
use findim_cli::expr::parse_module;
use findim_cli::report::{Pd, Report};
use findim_cli::spec::{load, parse_spec, SpecError};
use findim_core::homology::{Caps, Session};

const EXAMPLE: &str = include_str!("../examples/five_vertex.alg");

fn example_path() -> String {
    format!("{}/examples/five_vertex.alg", env!("CARGO_MANIFEST_DIR"))
}

fn cfg() -> RunConfig {
    RunConfig { seed: 0, caps: Caps::default(), window: 8 }
}

fn run_args(args: &[&str]) -> (String, i32) {
    let mut full = vec!["findim"];
    full.extend_from_slice(args);
    run(&Cli::try_parse_from(full).expect("args")).expect("run")
}

#[test]
fn a2_parses() {
    let spec = parse_spec("field 2\nvertices 1 2\narrows\n  a: 1 -> 2\n").unwrap();
    assert_eq!(spec.vertices.len(), 2);
    assert_eq!(spec.arrows.len(), 1);
    assert!(spec.relations.is_empty());
    let loaded = spec.build().unwrap();
    assert_eq!(loaded.algebra.dim(), 3);
}

#[test]
fn example_parses_with_its_relations() {
    let spec = parse_spec(EXAMPLE).unwrap();
    assert_eq!(spec.vertices.len(), 5);
    assert_eq!(spec.arrows.len(), 8);
    assert_eq!(spec.relations.len(), 7);
    let rendered: Vec<String> = spec
        .relations
        .iter()
        .map(|r| r.iter().map(|t| format!("{}:{}", t.coeff, t.arrows.join("*"))).collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(
        rendered,
        [
            "1:alpha*alpha*alpha",
            "1:alpha*beta",
            "1:rho*mu1*alpha",
            "1:rho*mu2*alpha",
            "1:mu1*beta",
            "1:mu2*beta",
            "1:gamma1*delta -1:gamma2*delta",
        ]
    );
    let loaded = spec.build().unwrap();
    assert_eq!(loaded.algebra.dim(), 33);
    assert_eq!(loaded.modules["T"].dims(), &[2, 0, 0, 0, 0]);
}

#[test]
fn non_parallel_relation_is_semantic_error() {
    let text = "field 2\nvertices 1 2 3\narrows\n  a: 1 -> 2\n  b: 2 -> 3\n  c: 2 -> 2\nrelations\n  a*b + a*c\n";
    match parse_spec(text) {
        Err(SpecError::Semantic { line, col, msg }) => {
            assert_eq!((line, col), (8, 9));
            assert!(msg.contains("not parallel"), "{msg}");
        }
        other => panic!("expected a semantic error, got {other:?}"),
    }
}

#[test]
fn semantic_errors_carry_positions() {
    let short = "field 2\nvertices 1\narrows\n  a: 1 -> 1\nrelations\n  a\n";
    assert!(matches!(parse_spec(short), Err(SpecError::Semantic { line: 6, col: 3, .. })));
    let dangling = "field 2\nvertices 1 2\narrows\n  a: 1 -> 7\n";
    assert!(matches!(parse_spec(dangling), Err(SpecError::Semantic { line: 4, col: 11, .. })));
    let dup = "field 2\nvertices 1 2\narrows\n  a: 1 -> 2\n  a: 2 -> 1\n";
    assert!(matches!(parse_spec(dup), Err(SpecError::Semantic { line: 5, .. })));
    let unknown_arrow = "field 2\nvertices 1 2\narrows\n  a: 1 -> 2\nrelations\n  a*z\n";
    assert!(matches!(parse_spec(unknown_arrow), Err(SpecError::Semantic { line: 6, .. })));
}

#[test]
fn syntax_errors_carry_positions() {
    assert_eq!(
        parse_spec("field 2\ncolour red\n"),
        Err(SpecError::Syntax { line: 2, col: 1, msg: "unknown key `colour`".into() })
    );
    assert!(matches!(
        parse_spec("field 2\nvertices 1\narrows\n  a 1 -> 1\n"),
        Err(SpecError::Syntax { line: 4, col: 3, .. })
    ));
    assert!(matches!(
        parse_spec("field 2\nvertices 1\nconfig\n  speed 3\n"),
        Err(SpecError::Syntax { line: 4, col: 3, .. })
    ));
    assert!(matches!(parse_spec("field two\n"), Err(SpecError::Syntax { line: 1, col: 7, .. })));
    // Same input, same error.
    let bad = "field 2\nvertices 1\narrows\n  a: 1 -> 1\nrelations\n  a**a\n";
    assert_eq!(parse_spec(bad), parse_spec(bad));
    assert!(matches!(parse_spec(bad), Err(SpecError::Syntax { line: 6, .. })));
}

#[test]
fn non_admissible_ideal_is_rejected() {
    // A loop with no relation gives an infinite-dimensional algebra.
    assert!(matches!(load("field 2\nvertices 1\narrows\n  a: 1 -> 1\n"), Err(SpecError::Algebra(_))));
}

#[test]
fn leading_sign_and_coefficients() {
    let spec = parse_spec("field 3\nvertices 1 2\narrows\n  a: 1 -> 2\n  b: 1 -> 2\nrelations\n  -a + 2*b\n");
    // Length-one terms are rejected, but only after the sign has parsed.
    assert!(matches!(spec, Err(SpecError::Semantic { line: 7, col: 4, .. })));
    let spec = parse_spec(
        "field 3\nvertices 1 2\narrows\n  a: 1 -> 1\n  b: 1 -> 2\nrelations\n  -a*b + 2*a*a*b\n  a*a*a\n",
    )
    .unwrap();
    assert_eq!(spec.relations[0][0].coeff, -1);
    assert_eq!(spec.relations[0][1].coeff, 2);
    spec.build().unwrap();
}

#[test]
fn canonical_text_ignores_comments_and_config() {
    let a = parse_spec(EXAMPLE).unwrap();
    let stripped: String =
        EXAMPLE.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}   # note\n")).collect();
    let b = parse_spec(&stripped.replace("seed 0", "seed 9")).unwrap();
    assert_eq!(a.canonical(), b.canonical());
}

#[test]
fn module_expressions() {
    let loaded = load(EXAMPLE).unwrap();
    let m = parse_module(&loaded, "Omega^3(S(1) + S(4))").unwrap();
    let parts = parse_module(&loaded, "Omega^3(S(1)) + Omega(Omega(Omega(S(4))))").unwrap();
    assert_eq!(m.dims(), parts.dims());
    assert_eq!(parse_module(&loaded, "Omega^0(S(2))").unwrap().total_dim(), 1);
    assert_eq!(parse_module(&loaded, "P(1)").unwrap().total_dim(), 10);
    assert_eq!(parse_module(&loaded, "T + T").unwrap().dims(), &[4, 0, 0, 0, 0]);
    let err = parse_module(&loaded, "S(9)").unwrap_err();
    assert_eq!(err.col, 3);
    assert!(parse_module(&loaded, "Omega(S(1)").is_err());
}

#[test]
fn report_contains_the_main_bound() {
    let loaded = load(EXAMPLE).unwrap();
    let mut s = Session::new(&loaded.algebra, 0, Caps::default());
    let out = commands::report(&mut s, &loaded, &cfg(), &[]).unwrap();
    assert!(out.text.contains("fin.dim Λ ≤ 5"), "{}", out.text);
    assert!(!out.unknown);
}

#[test]
fn report_json_round_trips() {
    let loaded = load(EXAMPLE).unwrap();
    let mut s = Session::new(&loaded.algebra, 0, Caps::default());
    let out = commands::report(&mut s, &loaded, &cfg(), &["S(1)".into(), "S(4)".into()]).unwrap();
    let text = serde_json::to_string_pretty(&out.json).unwrap();
    let parsed: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), out.json);
    assert_eq!(serde_json::to_string_pretty(&serde_json::to_value(&parsed).unwrap()).unwrap(), text);
    assert_eq!(parsed.schema, 1);
    assert_eq!(parsed.infinite_simples, Some(vec!["1".to_string(), "4".to_string()]));
}

#[test]
fn unknown_is_tagged_not_numeric() {
    let (out, code) = run_args(&["--caps", "1,10", "--format", "json", "report", &example_path()]);
    assert_eq!(code, 2);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert!(r.unknowns_present);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["alpha"]["status"], "unknown");
    assert!(v["alpha"]["explored"].is_u64());
    assert!(r.bounds.is_none());
}

#[test]
fn layerlength_of_p1() {
    let (out, code) = run_args(&["layerlength", &example_path(), "--module", "P(1)", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let l = &v["layers"];
    assert_eq!((l["ll_inf"].as_u64(), l["l_inf_radical"].as_u64(), l["l_inf_socle"].as_u64()), (Some(3), Some(5), Some(4)));
    assert_eq!(l["r_inf"], 2);
}

#[test]
fn pd_of_p1_is_zero() {
    let (out, code) = run_args(&["--format", "json", "pd", &example_path(), "--module", "P(1)"]);
    assert_eq!(code, 0);
    let pd: PdOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(pd.pd, Pd::Finite { value: 0 });
    let (text, _) = run_args(&["pd", &example_path(), "--module", "P(1)"]);
    assert_eq!(text, "pd P(1) = Finite(0)\n");
}

#[test]
fn syzygy_output_is_a_loadable_module() {
    let (text, code) = run_args(&["syzygy", &example_path(), "--module", "S(1)", "--power", "3"]);
    assert_eq!(code, 0);
    let block = &text[text.find("module Omega3").unwrap()..];
    let full = EXAMPLE.replace("config\n", &format!("{block}config\n"));
    let loaded = load(&full).unwrap();
    assert_eq!(loaded.modules["Omega3"].total_dim(), 9);
}

#[test]
fn cache_reuses_registry() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = run_args(&["--format", "json", "report", &example_path()]);
    let first = run_args(&["--cache", d, "--format", "json", "report", &example_path()]);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = run_args(&["--cache", d, "--format", "json", "report", &example_path()]);
    assert_eq!(plain, first);
    assert_eq!(first, second);
}

#[test]
fn corrupt_cache_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    run_args(&["--cache", d, "bounds", &example_path()]);
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&file, "{ not json").unwrap();
    let (text, code) = run_args(&["--cache", d, "bounds", &example_path()]);
    assert_eq!(code, 0);
    assert!(text.contains("fin.dim Λ ≤ 5"));
}

#[test]
fn selftest_on_example_passes() {
    let (out, code) = run_args(&[
        "--format", "json", "selftest", &example_path(), "--modules", "4", "--sequences", "4", "--oracle-dim", "3",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["modules"], 4);
}

#[test]
fn missing_file_is_an_error() {
    let cli = Cli::try_parse_from(["findim", "bounds", "/nonexistent/x.alg"]).unwrap();
    assert!(run(&cli).is_err());
    assert!(Cli::try_parse_from(["findim", "--caps", "x", "bounds", "f"]).is_err());
}
