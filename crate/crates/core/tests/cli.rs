use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn khp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khp"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("run khp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn validate(schema: &str, out: &Output) -> Value {
    let path = root().join("schema").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).expect("schema compiles");
    let doc: Value = serde_json::from_slice(&out.stdout).expect("json output");
    let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{doc:#}");
    doc
}

#[test]
fn trefoil_table() {
    let o = khp(&["kh", "examples/trefoil.aw", "--field", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "# even homology, 3 crossings\n# ring Q\n# h q  rank torsion\n0 1  1 \n0 3  1 \n2 5  1 \n3 9  1 \n"
    );
}

#[test]
fn smith_one_crossing_passes() {
    let o = khp(&["smith", "examples/one_crossing.aw", "-p", "3", "--field", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim Kh(cover) = 4"), "{s}");
    assert!(s.contains("dim AKh(quotient) = 4"), "{s}");
    assert!(s.ends_with("smith: PASS\n"));
}

#[test]
fn equivariant_assignment_needs_odd_period() {
    let o = khp(&["edge-assign", "examples/hopf_cover.aw", "-p", "2", "--theory", "odd"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("equivariant edge assignment requires odd p"));
    let o = khp(&["edge-assign", "examples/hopf_cover.aw", "-p", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["kh", "examples/missing.aw"][..],
        &["smith", "examples/trefoil.aw", "-p", "4"],
        &["smith", "examples/trefoil.aw"],
        &["smith", "examples/trefoil.aw", "-p", "3", "--field", "Q"],
        &["tate", "examples/trefoil.aw", "-p", "2", "--theory", "odd"],
        &["kh", "examples/trefoil.aw", "--field", "4"],
        &["kh", "examples/trefoil.aw", "--flavor", "Z"],
        &["cover", "examples/trefoil.aw", "-p", "1"],
        &["frobnicate", "examples/trefoil.aw"],
    ] {
        assert_eq!(khp(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_reports_match_schemas() {
    let cases: [(&str, &[&str]); 12] = [
        ("ranks", &["kh", "examples/trefoil.aw", "--field", "Z", "--json"]),
        ("ranks", &["oddakh", "examples/figure_eight.aw", "--json"]),
        ("ranks", &["akh", "examples/one_crossing.aw", "-p", "3", "--field", "3", "--json"]),
        ("smith", &["smith", "examples/one_crossing.aw", "-p", "3", "--json"]),
        ("smith", &["smith", "examples/hopf_cover.aw", "-p", "2", "--theory", "odd", "--json"]),
        ("coherence", &["coherence", "examples/trefoil.aw", "--theory", "odd", "--json"]),
        ("coherence", &["coherence", "examples/one_crossing.aw", "-p", "3", "--theory", "odd", "--json"]),
        ("tate", &["tate", "examples/one_crossing.aw", "-p", "3", "--theta-window", "4", "--json"]),
        ("fixed", &["fixed", "examples/trefoil.aw", "-p", "3", "--theory", "odd", "--json"]),
        ("edge_assignment", &["edge-assign", "examples/trefoil.aw", "--flavor", "Y", "--json"]),
        ("edge_assignment", &["edge-assign", "examples/one_crossing.aw", "-p", "3", "--json"]),
        ("cover", &["cover", "examples/figure_eight.aw", "-p", "2", "--json"]),
    ];
    for (schema, args) in cases {
        let o = khp(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        validate(schema, &o);
    }
}

#[test]
fn smith_json_carries_both_dimensions() {
    let o = khp(&["smith", "examples/one_crossing.aw", "-p", "3", "--json"]);
    let doc = validate("smith", &o);
    assert_eq!(doc["cover_total"], 4);
    assert_eq!(doc["quotient_total"], 4);
    assert_eq!(doc["holds"], true);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["oddkh", "examples/figure_eight.aw", "--field", "Z"][..],
        &["coherence", "examples/trefoil.aw", "-p", "3", "--json"],
        &["smith", "examples/trefoil.aw", "-p", "3", "--theory", "odd", "--json"],
        &["fixed", "examples/figure_eight.aw", "-p", "2", "--json"],
    ] {
        let a = khp(args);
        let b = khp(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_does_not_change_ranks() {
    for verb in ["kh", "oddkh", "akh", "oddakh"] {
        let plain = khp(&[verb, "examples/figure_eight.aw", "--field", "Z"]);
        for seed in ["1", "2", "99"] {
            let seeded = khp(&[verb, "examples/figure_eight.aw", "--field", "Z", "--seed", seed]);
            assert_eq!(plain.stdout, seeded.stdout, "{verb} seed {seed}");
        }
    }
}

#[test]
fn cover_round_trips_through_the_parser() {
    let o = khp(&["cover", "examples/trefoil.aw", "-p", "2"]);
    let dir = std::env::temp_dir().join(format!("khp-cover-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cover.aw");
    std::fs::write(&path, &o.stdout).unwrap();
    let direct = khp(&["kh", "examples/trefoil.aw", "-p", "2"]);
    let via_file = khp(&["kh", path.to_str().unwrap()]);
    assert_eq!(direct.stdout, via_file.stdout);
    assert!(Path::new(&path).exists());
}
