use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn tetra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetra")).args(args).output().expect("run tetra")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// Value of the first `key=...` token in the report.
fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("{key}=");
    text.split_whitespace().find_map(|t| t.strip_prefix(prefix.as_str()))
}

fn complex(s: &str) -> (f64, f64) {
    let s = s.strip_suffix('i').expect("imaginary unit");
    let split = s[1..].rfind(['+', '-']).expect("sign") + 1;
    (s[..split].parse().unwrap(), s[split..].parse().unwrap())
}

#[test]
fn help_lists_every_subcommand() {
    let o = tetra(&["--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for cmd in ["te", "cocycle", "cube", "chi", "roseman", "quandle", "lattice", "closure"] {
        assert!(text.lines().any(|l| l.trim_start().starts_with(cmd)), "{cmd} missing from help");
    }
}

#[test]
fn electric_solution_satisfies_tetrahedron_equation() {
    let o = tetra(&["te", "verify", "--solution", "electric", "--p", "5", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "te=holds tuples=15625"));
}

#[test]
fn circle_has_unit_chi() {
    let graph = fixture("circle.graph");
    let o = tetra(&["chi", "--graph", &graph, "--solution", "electric", "--p", "5", "--k", "2", "--cocycle", "trivial", "--s", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "chi"), Some("1"));
}

#[test]
fn lattice_transfer_matches_direct_sum() {
    let base = ["lattice", "z", "--K", "2", "--L", "2", "--M", "2", "--character", "20:primitive"];
    let direct = tetra(&[&base[..], &["--via", "direct"]].concat());
    let transfer = tetra(&[&base[..], &["--via", "transfer"]].concat());
    assert!(direct.status.success() && transfer.status.success());
    let (a, b) = (stdout(&direct), stdout(&transfer));
    let (dr, di) = complex(field(&a, "z_direct").unwrap());
    let (tr, ti) = complex(field(&b, "z_transfer").unwrap());
    let scale = dr.hypot(di).max(1.0);
    assert!((dr - tr).hypot(di - ti) <= 1e-9 * scale, "{dr}+{di}i vs {tr}+{ti}i");
}

#[test]
fn config_line_records_defaults() {
    let o = tetra(&["te", "verify"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, "config command=te-verify solution=electric p=5 k=2 defaults=solution,p,k");
}

#[test]
fn false_verdict_exits_one() {
    let o = tetra(&["roseman", "check", "--move", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l == "move=6 verdict=false"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(tetra(&["te", "nope"]).status.code(), Some(2));
    assert_eq!(tetra(&["lattice", "z", "--K", "0", "--L", "1", "--M", "1"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tetramap");
    std::fs::write(&bad, "garbage\n").unwrap();
    let o = tetra(&["te", "verify", "--solution", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("error=syntax line=1"));
}

#[test]
fn guard_violations_name_the_guard() {
    let cases: [(&[&str], &str); 3] = [
        (&["lattice", "z", "--K", "2", "--L", "2", "--M", "2", "--guard", "lattice_direct=1000"], "lattice_direct"),
        (&["lattice", "z", "--K", "3", "--L", "1", "--M", "3", "--via", "transfer", "--exact"], "transfer_dim"),
        (&["cube", "homology", "--n", "3", "--guard", "cube_basis=100"], "cube_basis"),
    ];
    for (args, guard) in cases {
        let o = tetra(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let text = stdout(&o);
        assert_eq!(field(&text, "error"), Some("too-large"));
        assert_eq!(field(&text, "guard"), Some(guard));
        assert!(String::from_utf8_lossy(&o.stderr).contains(guard));
    }
    let o = tetra(&["te", "verify", "--guard", "no_such=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exact_output_is_independent_of_worker_count() {
    let diagram = fixture("three-spheres.diagram");
    let runs: Vec<Vec<&str>> = vec![
        vec!["te", "verify"],
        vec!["te", "transposes"],
        vec!["cocycle", "search"],
        vec!["cube", "homology", "--n", "2", "--coefficients", "7"],
        vec!["chi", "--graph", "fixture:tetrahedron-closed", "--cocycle", "monomial:-1,0,2,0"],
        vec!["roseman", "check", "--move", "7"],
        vec!["quandle", "state-sum", "--quandle", "s3:1", "--diagram", &diagram, "--theta", "coboundary:1,2,0"],
        vec!["lattice", "z", "--K", "2", "--L", "2", "--M", "1", "--via", "both", "--exact", "--cocycle", "monomial:-1,0,2,0"],
    ];
    for args in runs {
        let outputs: Vec<Output> = ["1", "2", "8"]
            .iter()
            .map(|w| tetra(&[&["--workers", w][..], &args[..]].concat()))
            .collect();
        for o in &outputs[1..] {
            assert_eq!(o.stdout, outputs[0].stdout, "{args:?}");
            assert_eq!(o.status.code(), outputs[0].status.code());
        }
    }
}

#[test]
fn bilinear_toy_cocycle_cancels_on_closed_lattice() {
    let o = tetra(&[
        "lattice", "z", "--K", "2", "--L", "2", "--M", "2", "--via", "both", "--exact", "--solution", "bilinear", "--cocycle",
        "form:3:0,0,0,1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "z_direct_exact"), Some("33777*1"));
    assert_eq!(field(&text, "z_transfer_exact"), Some("33777*1"));
    assert_eq!(field(&text, "agree_exact"), Some("true"));
}

#[test]
fn quandle_state_sum_on_fixture_file() {
    let diagram = fixture("three-spheres.diagram");
    let o = tetra(&["quandle", "state-sum", "--quandle", "s3:1", "--diagram", &diagram, "--theta", "zero"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "colorings"), Some("216"));
    assert_eq!(field(&text, "state_sum"), Some("216*1"));
}

#[test]
fn closure_of_reduced_set() {
    let o = tetra(&["closure", "--p", "5", "--k", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(field(&text, "set"), Some("{2,7,12,17,22}"));
    assert_eq!(field(&text, "negated_inversion"), Some("closed"));
}
