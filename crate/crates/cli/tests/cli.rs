use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropjac"))
        .args(args)
        .env_remove("TROPJAC_MAX_RANK")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

/// Runs with `--json` into a temporary file and returns its contents.
fn json_output(args: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    full.extend(["--json", &p]);
    stdout(&full);
    std::fs::read_to_string(&path).unwrap()
}

#[test]
fn nodal_cubic_is_z5() {
    assert_eq!(stdout(&["trojac", &data("nodal_cubic_n5.json")]), "Z/5\n");
}

#[test]
fn tree_has_betti_zero() {
    assert_eq!(stdout(&["betti", &data("tree.json")]), "0\n");
    assert_eq!(stdout(&["trojac", &data("tree.json")]), "0\n");
}

#[test]
fn specialize_outside_bounded_lattice_exits_2() {
    let (code, err) = exit_code(&[
        "specialize",
        &data("loop_10.json"),
        "--hom",
        &data("proj2.json"),
        "--cocycle",
        &data("f01.json"),
    ]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("not bounded monodromy"), "{err}");
    assert!(err.contains("g:1"), "witness cycle missing: {err}");
}

#[test]
fn specialize_inside_bounded_lattice_succeeds() {
    let out = stdout(&[
        "specialize",
        &data("loop_10.json"),
        "--hom",
        &data("proj2.json"),
        "--cocycle",
        &data("f20.json"),
    ]);
    assert_eq!(out, "(empty)\n");
}

#[test]
fn validation_failures_exit_1() {
    let (code, err) = exit_code(&["trojac", &data("not_sharp.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("monoid not sharp: rank(A) = 1 < k = 2"), "{err}");
    let (code, err) = exit_code(&["trojac", &data("rank9.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("TROPJAC_MAX_RANK"), "{err}");
    assert_eq!(exit_code(&["trojac", &data("missing.json")]).0, 1);
    assert_eq!(exit_code(&["torsion", &data("nodal_cubic_n5.json"), "--n", "0"]).0, 1);
    assert_eq!(exit_code(&["weil", "--n", "0", "--a", "1,0", "--b", "0,1"]).0, 1);
    assert_eq!(exit_code(&["extend", &data("z3.json"), "--residue-char", "4"]).0, 1);
}

#[test]
fn rank_limit_is_configurable() {
    let out = Command::new(env!("CARGO_BIN_EXE_tropjac"))
        .args(["betti", &data("rank9.json")])
        .env("TROPJAC_MAX_RANK", "9")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0\n");
}

#[test]
fn precondition_failures_exit_2() {
    let (code, err) = exit_code(&["critical-group", &data("theta_2_3.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("lengths 1"), "{err}");
    assert_eq!(exit_code(&["trojac", &data("loop_10.json"), "--verify"]).0, 2);
}

#[test]
fn verify_against_critical_group() {
    let out = stdout(&["trojac", &data("theta_2_3_4.json"), "--verify"]);
    assert_eq!(out, "Z/26\nverified: critical group of the unit subdivision is Z/26\n");
}

#[test]
fn torsion_and_critical_group() {
    assert_eq!(stdout(&["torsion", &data("nodal_cubic_n5.json"), "--n", "5"]), "Z/5\n");
    assert_eq!(stdout(&["torsion", &data("nodal_cubic_n5.json"), "--n", "3"]), "0\n");
    assert_eq!(stdout(&["critical-group", &data("unit_6cycle.json")]), "Z/6\n");
    assert_eq!(stdout(&["trojac", &data("loop_11_n2.json")]), "Z\n");
}

#[test]
fn pairing_of_theta_cycles() {
    let out = stdout(&[
        "pairing",
        &data("theta_2_3_4.json"),
        "--x",
        &data("cycle_e1_e2.json"),
        "--y",
        &data("cycle_e2_e3.json"),
    ]);
    assert_eq!(out, "(-3)\n");
    let (code, _) = exit_code(&["pairing", &data("theta_2_3_4.json"), "--x", &data("f01.json"), "--y", &data("f01.json")]);
    assert_eq!(code, 1);
}

#[test]
fn indicator_multidegree() {
    let out = stdout(&["multidegree", &data("unit_6cycle.json"), "--values", &data("indicator_v2.json")]);
    assert_eq!(out, "v0 0\nv1 1\nv2 -2\nv3 1\nv4 0\nv5 0\n");
}

#[test]
fn torsor_commands() {
    assert_eq!(
        stdout(&["classify", &data("mu5.json"), &data("nodal_cubic_n5.json")]),
        "G = μ_5\nG^D = Z/5\nHom(G^D, TroJac) = Z/5\nPic⁰-layer: Hom(G^D, Pic⁰) — not computed\n"
    );
    assert_eq!(
        stdout(&["extend", &data("z3.json"), "--residue-char", "3"]),
        "NotGuaranteed (Z/3: connected-to-discrete)\n"
    );
    assert_eq!(stdout(&["extend", &data("z3.json"), "--residue-char", "2"]), "GuaranteedUnique\n");
    assert_eq!(stdout(&["extend", &data("mu5.json"), "--residue-char", "5"]), "GuaranteedUnique\n");
    assert_eq!(stdout(&["dual", &data("mu5.json")]), "Z/5\n");
    assert_eq!(stdout(&["weil", "--n", "5", "--a", "2,3", "--b", "1,1"]), "4\n");
    assert_eq!(stdout(&["weil", "--n", "5", "--a", "-1,0", "--b", "0,1"]), "4\n");
    assert_eq!(stdout(&["alpha-p", "--h1", "1", "--p", "7", "--hom-dim", "0", "--alpha-power", "0"]), "α_7\n");
    assert_eq!(
        stdout(&["alpha-p", "--graph", &data("theta_2_3_4.json"), "--p", "3", "--p-rank", "1", "--hom-dim", "2", "--alpha-power", "2"]),
        "α_3^3 × G_a^2\n"
    );
}

#[test]
fn json_goldens() {
    let cases: [(&[&str], &str); 5] = [
        (&["trojac", &data("theta_2_3_4.json")], "trojac_theta_2_3_4.json"),
        (&["extend", &data("z3.json"), "--residue-char", "3"], "extend_z3_char3.json"),
        (
            &["multidegree", &data("unit_6cycle.json"), "--values", &data("indicator_v2.json")],
            "multidegree_indicator_v2.json",
        ),
        (&["classify", &data("mu5.json"), &data("nodal_cubic_n5.json")], "classify_mu5.json"),
        (&["subdivide", &data("theta_2_3.json"), "--unit"], "subdivide_theta_unit.json"),
    ];
    for (args, name) in cases {
        assert_eq!(json_output(args), golden(name), "{name}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["trojac".to_string(), data("theta_2_3_4.json")],
        vec!["pairing".to_string(), data("theta_2_3_4.json")],
        vec!["harmonic".to_string(), data("tree.json")],
        vec!["dual".to_string(), data("mixed.json")],
    ] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(json_output(&a), json_output(&a));
        assert_eq!(stdout(&a), stdout(&a));
    }
}

#[test]
fn subdivide_round_trips_through_trojac() {
    let dir = tempfile::tempdir().unwrap();
    for (graph, extra) in [
        ("theta_2_3_4.json", vec!["--edge", "e2", "--parts", "[1,1,1]"]),
        ("nodal_cubic_n5.json", vec!["--edge", "e0", "--parts", "[2,3]"]),
        ("theta_2_3.json", vec!["--unit"]),
        ("loop_11_n2.json", vec!["--edge", "g", "--parts", "[[1,0],[0,1]]"]),
    ] {
        let out = dir.path().join(format!("sub_{graph}"));
        let out_s = out.to_string_lossy().into_owned();
        let d = data(graph);
        let mut args = vec!["subdivide", &d];
        args.extend(extra.iter().copied());
        args.extend(["--json", &out_s]);
        stdout(&args);
        assert_eq!(stdout(&["trojac", &out_s]), stdout(&["trojac", &d]), "{graph}");
    }
}

#[test]
fn contract_writes_a_graph() {
    let out = json_output(&["contract", &data("loop_10.json"), "--hom", &data("proj2.json")]);
    assert!(out.contains("\"edges\": []"), "{out}");
}
