//! CLI contract tests: exit codes, determinism, and the documented
//! command shapes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trimatcat"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trimatcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn build_from_two_quivers_with_hom_bimodule() {
    let t = tmp("t.quiver");
    let u = tmp("u.quiver");
    std::fs::write(&t, "field Q\nvertex t\narrow a : t -> u\n").unwrap();
    std::fs::write(&u, "field Q\nvertex u\n").unwrap();
    let out = tmp("lambda_a2.json");
    let o = run(&[
        "build",
        "--tcat",
        t.to_str().unwrap(),
        "--ucat",
        u.to_str().unwrap(),
        "--bimod",
        "hom",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    // the build report lists End((t,u)) of dimension 3
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["end_dims"][0][0], "(t,u)");
    assert_eq!(report["end_dims"][0][1], 3);
    assert!(out.exists());
}

#[test]
fn build_rejects_malformed_quiver_with_line_diagnostic() {
    let t = tmp("bad.quiver");
    std::fs::write(&t, "field Q\nvertex t\narrow a : t -> nowhere\n").unwrap();
    let u = tmp("u2.quiver");
    std::fs::write(&u, "field Q\nvertex u\n").unwrap();
    let o = run(&[
        "build",
        "--tcat",
        t.to_str().unwrap(),
        "--ucat",
        u.to_str().unwrap(),
        "--bimod",
        "hom",
        "--out",
        tmp("never.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "diagnostic must carry the line: {}", err);
}

#[test]
fn check_reports_are_byte_identical_for_identical_configs() {
    let out1 = tmp("report_a.json");
    let out2 = tmp("report_b.json");
    for out in [&out1, &out2] {
        let o = run(&[
            "check",
            "--suite",
            "equivalence",
            "--seed",
            "7",
            "--trials",
            "5",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "identical configs must produce byte-identical reports");
}

#[test]
fn check_radical_over_prime_field_is_a_usage_error() {
    let o = run(&["check", "--suite", "radical", "--field", "f7", "--trials", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported field"));
}

#[test]
fn check_unknown_suite_is_a_usage_error() {
    let o = run(&["check", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn apply_one_point_extension_on_fixture() {
    let out = tmp("onepoint.json");
    let o = run(&[
        "apply", "one-point", "--quiver", "a3", "--source", "1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let w: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(w["m_dims"][0]["dim"], 1);
    assert_eq!(w["m_dims"][1]["dim"], 1);
    // not a source
    let o = run(&["apply", "one-point", "--quiver", "a3", "--source", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_torsion_pair_emits_h_table() {
    let out = tmp("torsion.json");
    let o = run(&[
        "apply", "torsion-pair", "--cat", "a2", "--u", "u", "--t", "t", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let w: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(w["equivalence"]["hom_maps"].as_array().unwrap().len() >= 3);
    // violating partition: validation failure
    let o = run(&["apply", "torsion-pair", "--cat", "a2", "--u", "t", "--t", "u"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_nu_check_on_generated_triple() {
    use rand::SeedableRng;
    let fixture =
        trimatcat::fixtures::lambda_fixture("a2", trimatcat::field::Field::Rationals).unwrap();
    let lambda_path = tmp("lambda_nu.json");
    std::fs::write(
        &lambda_path,
        serde_json::to_string_pretty(&trimatcat::json::lambda_to_json(&fixture.lambda)).unwrap(),
    )
    .unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let (tr, _) = trimatcat::comma::random_triple(&fixture.lambda.bimodule, &mut rng, 2).unwrap();
    let triple_path = tmp("triple_nu.json");
    std::fs::write(
        &triple_path,
        serde_json::to_string_pretty(&trimatcat::json::triple_to_json(&tr)).unwrap(),
    )
    .unwrap();
    let out = tmp("nu.json");
    let o = bin()
        .args(["apply", "nu-check", "--lambda"])
        .arg(&lambda_path)
        .args(["--triple"])
        .arg(&triple_path)
        .args(["--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let ledger: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(ledger["pass"], true);
}

#[test]
fn apply_hom_and_ext1_matrix() {
    let o = run(&["apply", "hom-matrix", "--cat", "a2"]);
    assert_eq!(o.status.code(), Some(0));
    let lj: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(lj["pairs"].as_array().unwrap().len(), 4);

    let o = run(&["apply", "ext1-matrix", "--quiver", "kronecker"]);
    assert_eq!(o.status.code(), Some(0));
    let lj: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // the Ext¹ bimodule has the single block Ext¹(S1, S2) of dim 2
    let spaces = lj["bimodule"]["spaces"].as_array().unwrap();
    assert_eq!(spaces.len(), 1);
    assert_eq!(spaces[0]["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn color_env_var_controls_ansi_output() {
    let o = bin()
        .args(["check", "--suite", "equivalence", "--trials", "2", "--out"])
        .arg(tmp("color1.json"))
        .env("TRIMATCAT_COLOR", "1")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("\x1b[32m"));
    let o = bin()
        .args(["check", "--suite", "equivalence", "--trials", "2", "--out"])
        .arg(tmp("color0.json"))
        .env("TRIMATCAT_COLOR", "0")
        .output()
        .unwrap();
    assert!(!String::from_utf8_lossy(&o.stderr).contains("\x1b[32m"));
}

#[test]
fn build_with_explicit_bimodule_json() {
    use trimatcat::field::Field;
    // serialize the A2 Hom-bimodule, rebuild Λ from the JSON file
    let fixture = trimatcat::fixtures::lambda_fixture("a2", Field::Rationals).unwrap();
    let bj = trimatcat::json::bimodule_to_json(&fixture.lambda.bimodule);
    let bimod_path = tmp("bimod.json");
    std::fs::write(&bimod_path, serde_json::to_string_pretty(&bj).unwrap()).unwrap();
    let t = tmp("tonly.quiver");
    let u = tmp("uonly.quiver");
    std::fs::write(&t, "field Q\nvertex t\n").unwrap();
    std::fs::write(&u, "field Q\nvertex u\n").unwrap();
    let out = tmp("lambda_from_bimod.json");
    let o = run(&[
        "build",
        "--tcat",
        t.to_str().unwrap(),
        "--ucat",
        u.to_str().unwrap(),
        "--bimod",
        bimod_path.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["end_dims"][0][1], 3);

    // a broken bimodule JSON is a validation failure (exit 2)
    let mut bad: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&bimod_path).unwrap()).unwrap();
    bad["left"][0]["matrix"][0][2] = "2".into();
    let bad_path = tmp("bimod_bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad).unwrap()).unwrap();
    let o = run(&[
        "build",
        "--tcat",
        t.to_str().unwrap(),
        "--ucat",
        u.to_str().unwrap(),
        "--bimod",
        bad_path.to_str().unwrap(),
        "--out",
        tmp("never2.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_dualize_transposes_a_module() {
    use std::sync::Arc;
    use trimatcat::field::Field;
    let fixture = trimatcat::fixtures::lambda_fixture("a3", Field::Rationals).unwrap();
    let lambda_path = tmp("lambda_dual.json");
    std::fs::write(
        &lambda_path,
        serde_json::to_string_pretty(&trimatcat::json::lambda_to_json(&fixture.lambda)).unwrap(),
    )
    .unwrap();
    // module over the 𝒯 side: the representable at vertex 1
    let rep = trimatcat::module::FiniteModule::representable(
        Arc::clone(&fixture.lambda.t_cat),
        0,
    );
    let module_path = tmp("module_dual.json");
    std::fs::write(
        &module_path,
        serde_json::to_string_pretty(&trimatcat::json::module_to_json(&rep)).unwrap(),
    )
    .unwrap();
    let out = tmp("dual.json");
    let o = bin()
        .args(["apply", "dualize", "--lambda"])
        .arg(&lambda_path)
        .args(["--module"])
        .arg(&module_path)
        .args(["--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let dual: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // dims preserved objectwise; labels are the coordinate duals
    assert_eq!(dual["values"][0]["basis"][0], "id_1*");
}
