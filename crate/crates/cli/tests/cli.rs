use std::process::Command;

use bcov_cli::artifact::{ElementArtifact, Object, SeriesArtifact};
use bcov_cli::{run_args, Format, RunConfig, Variant};
use bcov_fields::{YukawaOT, YukawaVariant};
use bcov_numeric::{rat, QSeries};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> bcov_cli::Outcome {
    run_args(std::iter::once("bcov").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stderr))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("bcov-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn genus_below_two_is_a_usage_error() {
    let o = run(&["solve-fg", "--genus", "1"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("q-expand --object F1"), "{}", o.stderr);
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        &["verify", "--bogus"][..],
        &["verify", "--yukawa-variant", "other"],
        &["q-expand", "--object", "t9"],
        &["q-expand"],
        &["gw", "--order", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).code, 2, "{args:?}");
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn config_errors_exit_2() {
    let p = tmp("unknown.toml");
    std::fs::write(&p, "order = 5\nsprinkles = true\n").unwrap();
    let o = run(&["verify", "--config", p.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("sprinkles"));
    let nested = tmp("nested.toml");
    std::fs::write(&nested, "[mirror]\nc2: 3\n").unwrap();
    assert_eq!(run(&["verify", "--config", nested.to_str().unwrap()]).code, 2);
    let missing = tmp("missing.toml");
    let o = run(&["verify", "--config", missing.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("missing.toml"));
}

#[test]
fn flags_override_config_file() {
    let p = tmp("run.toml");
    std::fs::write(&p, "order = 5\nchi = -100\n[mirror]\nc2h = 50\n").unwrap();
    let v = json(&["q-expand", "--object", "z", "--config", p.to_str().unwrap(), "--order", "4"]);
    let cfg = &v["manifest"]["config"];
    assert_eq!(cfg["order"], 4);
    assert_eq!(cfg["chi"], -100);
    assert_eq!(cfg["mirror"]["order"], 4);
    assert_eq!(v["results"]["z"]["order"], 4);
}

#[test]
fn manifest_lists_arbitrations() {
    let v = json(&["verify", "--module", "liealg", "--h", "1"]);
    let names: Vec<&str> = v["manifest"]["arbitration"].as_array().unwrap().iter().map(|a| a["name"].as_str().unwrap()).collect();
    for n in ["yukawa_variant", "mirror_normalization", "euler_characteristic", "genus1_normalization", "basis_change_31", "pairing_B"] {
        assert!(names.contains(&n), "{n}");
    }
    let norm = v["manifest"]["arbitration"].as_array().unwrap().iter().find(|a| a["name"] == "mirror_normalization").unwrap();
    assert_eq!(norm["chosen"], "c = 1/5, kappa = -25, mu = 1");
    assert_eq!(v["schema_version"], 1);
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn liealg_module_passes() {
    let o = run(&["verify", "--module", "liealg", "--h", "3"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("PASS liealg.h3.dim -- 23 elements, expected 23"));
    assert!(o.stdout.contains("PASS liealg.h3.closure"));
}

#[test]
fn default_verify_reports_only_the_pairing_failure() {
    let o = run(&["verify"]);
    assert_eq!(o.code, 1);
    let fails: Vec<&str> = o.stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 1, "{fails:?}");
    assert!(fails[0].starts_with("FAIL special.pairing_B [(3,4) = -g0*g*H1, (4,3) = g0*g*H1]"));
    assert!(o.stdout.contains("PASS special.pairing_B[H1=0]"));
}

#[test]
fn printed_variant_fails_fields() {
    let o = run(&["verify", "--module", "fields", "--yukawa-variant", "printed"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("FAIL fields.bracket[R_1,R_t11]"));
    // The arbitration line itself holds under either choice.
    assert!(o.stdout.contains("PASS fields.bracket.arbitration -- disc 49/49, printed 45/49"));
    assert!(run(&["verify", "--module", "fields"]).code == 0);
}

#[test]
fn solve_fg_parameter_counts() {
    let v = json(&["solve-fg", "--genus", "2"]);
    assert_eq!(v["results"]["F2.parameters"], 3);
    assert!(v["results"].get("F2.fixed_parameters").is_none());
    let v = json(&["solve-fg", "--genus", "2", "--fix-ambiguity", "--order", "4"]);
    let fixed = v["results"]["F2.fixed_parameters"].as_array().unwrap();
    assert_eq!(fixed.len(), 3);
    let boundary = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "F2.boundary").unwrap();
    assert_eq!(boundary["passed"], true);
    assert_eq!(boundary["detail"], "3 parameters before, 0 after");
    let v = json(&["solve-fg", "--genus", "3"]);
    assert_eq!(v["results"]["F3.parameters"], 5);
}

#[test]
fn gw_table() {
    let v = json(&["gw", "--genus", "2", "--order", "6"]);
    let g2 = &v["results"]["gv.g2"];
    assert_eq!(g2["4"], "534750");
    assert_eq!(g2["5"], "75478987900");
    assert_eq!(v["results"]["gv.g1"]["3"], "609250");
    assert_eq!(v["results"]["gv.g0"]["1"], "2875");
}

#[test]
fn export_z_to_order_three() {
    let o = run(&["export", "--object", "z", "--order", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("z: q - 770*q^2 + 171525*q^3 + O(q^4)\n"), "{}", o.stdout);
}

#[test]
fn export_round_trips() {
    let v = json(&["export", "--order", "5"]);
    let res = &v["results"];
    let z: SeriesArtifact = serde_json::from_value(res["z"].clone()).unwrap();
    let s = z.to_series().unwrap();
    assert_eq!(s, QSeries::from_ints(&[0, 1, -770, 171525, -81623000, -35423171250], 5));
    let y: ElementArtifact = serde_json::from_value(res["Y111"]["ot_element"].clone()).unwrap();
    assert_eq!(y.to_element().unwrap(), YukawaOT::new(YukawaVariant::Disc).value);
    let f1: SeriesArtifact = serde_json::from_value(res["F1"].clone()).unwrap();
    assert_eq!(f1.to_series().unwrap().coeff(0), &rat(-25, 12));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn tampered_artifact_is_rejected() {
    let v = json(&["export", "--object", "yukawa", "--order", "3"]);
    let mut a: SeriesArtifact = serde_json::from_value(v["results"]["yukawa"].clone()).unwrap();
    a.coeffs[1] = "2876".into();
    assert!(a.to_series().is_err());
}

#[test]
fn identical_config_gives_identical_bytes() {
    for args in [&["export", "--order", "4", "--format", "json"][..], &["verify", "--module", "anomaly"], &["gw", "--order", "5"]] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
}

#[test]
fn out_file_and_io_errors() {
    let p = tmp("z.json");
    let o = run(&["export", "--object", "z", "--order", "3", "--format", "json", "--out", p.to_str().unwrap()]);
    assert_eq!((o.code, o.stdout.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["results"]["z"]["text"], "q - 770*q^2 + 171525*q^3 + O(q^4)");
    let bad = "/nonexistent-dir/z.json";
    let o = run(&["export", "--object", "z", "--out", bad]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains(bad));
}

#[test]
fn timings_are_opt_in() {
    let v = json(&["verify", "--module", "special", "--timings"]);
    assert!(v["timings_ms"]["special"].is_u64());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_bcov");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["verify", "--module", "kernel", "--kernel-max-e0", "6"]), Some(0));
    assert_eq!(code(&["verify", "--module", "special"]), Some(1));
    assert_eq!(code(&["solve-fg", "--genus", "0"]), Some(2));
}

#[test]
fn object_names() {
    for o in ["y0", "z", "q", "t", "t0", "t6", "disc", "yukawa", "yukawa-wronskian", "F1", "Fg", "Y111"] {
        assert!(Object::parse(o).is_ok(), "{o}");
    }
    for o in ["t7", "T", "t00", "f1", ""] {
        assert!(Object::parse(o).is_err(), "{o}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_artifact_round_trip(cs in prop::collection::vec((-10_000i64..10_000, 1i64..50), 1..9), var in prop::sample::select(vec!['q', 'z'])) {
        let coeffs: Vec<_> = cs.iter().map(|&(p, q)| rat(p, q)).collect();
        let order = coeffs.len() - 1;
        let s = QSeries::new(coeffs, order);
        let a = SeriesArtifact::new(&s, var);
        let back: SeriesArtifact = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back.to_series().unwrap(), s);
    }

    #[test]
    fn run_config_toml_round_trip(
        genus in 2u32..6,
        order in 1usize..30,
        chi in -400i64..400,
        printed in any::<bool>(),
        json_fmt in any::<bool>(),
        max_degree in prop::option::of(1u32..12),
    ) {
        let cfg = RunConfig {
            genus,
            order,
            chi,
            yukawa_variant: if printed { Variant::Printed } else { Variant::Disc },
            format: if json_fmt { Format::Json } else { Format::Text },
            max_degree,
            ..RunConfig::default()
        };
        prop_assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }
}
