use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfforge::coproduct::Which;
use hopfforge_cli::file::{parse_file, to_json, InstanceFile};
use hopfforge_cli::{classify, corpus_file, load_instance_str, verify, Options};
use serde_json::Value;

fn golden(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfforge"))
        .args(args)
        .output()
        .unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfforge"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn corpus_path(name: &str) -> String {
    golden(&format!("corpus/{name}.json")).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["checkId"] == id)
        .unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn corpus_matches_golden_files() {
    for name in hopfforge::corpus::names() {
        let expected = std::fs::read_to_string(corpus_path(&name)).unwrap();
        assert_eq!(corpus_file(&name).unwrap(), expected, "{name}");
    }
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "corpus",
        "s3",
        "pair-groupoid-2",
        "zint-window-4",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for name in ["s3", "pair-groupoid-2", "zint-window-4"] {
        let written = std::fs::read(dir.path().join(format!("{name}.json"))).unwrap();
        assert_eq!(written, std::fs::read(corpus_path(name)).unwrap());
    }
    assert_eq!(run(&["corpus", "no-such-instance"]).status.code(), Some(2));
}

#[test]
fn reports_match_golden_files() {
    for (name, cmd) in [
        ("s3", "classify"),
        ("pair-groupoid-2", "classify"),
        ("neg-broken-coassoc", "verify"),
        ("zint-window-4", "verify"),
    ] {
        let out = run(&[cmd, &corpus_path(name)]);
        let expected =
            std::fs::read_to_string(golden(&format!("reports/{name}.{cmd}.json"))).unwrap();
        assert_eq!(
            String::from_utf8(out.stdout).unwrap(),
            expected,
            "{name} {cmd}"
        );
    }
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", &corpus_path("s3")]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["verify", &corpus_path("neg-broken-coassoc")]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let c = check(&report, "coproduct.coassoc.T1T2");
    assert_eq!(c["status"], "fail");
    assert_eq!(c["witness"].as_str().unwrap().matches(',').count(), 2);

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus_path("s3")).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let out = run(&["verify", truncated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncated.json:"));

    let bad = dir.path().join("bad-label.json");
    std::fs::write(
        &bad,
        text.replace(
            "\"integrals\": {\n    \"left\": [\n      \"phi\"",
            "\"integrals\": {\n    \"left\": [\n      \"psi\"",
        ),
    )
    .unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undeclared functional"));

    assert_eq!(
        run(&["verify", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn dimension_cap() {
    let out = run_env(&["verify", &corpus_path("s3")], "HOPFFORGE_MAX_DIM", "3");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("HOPFFORGE_MAX_DIM"));
    let out = run_env(&["verify", &corpus_path("s3")], "HOPFFORGE_MAX_DIM", "6");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn classify_verdicts() {
    for (name, verdict, code) in [
        ("s3", "HopfInvertibleS", 0),
        ("pair-groupoid-2", "RegularWeakMHA", 0),
        ("neg-non-full", "Fail", 1),
    ] {
        let out = run(&["classify", &corpus_path(name)]);
        assert_eq!(out.status.code(), Some(code), "{name}");
        assert_eq!(json(&out)["classification"]["verdict"], verdict, "{name}");
    }
    let out = run(&[
        "classify",
        "--format",
        "text",
        &corpus_path("zint-window-2"),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("verdict: RegularMultiplierHopf (window-verified)"),
        "{text}"
    );
    assert!(text.contains("window-pass"));
}

#[test]
fn window_flag_overrides_the_file() {
    let base = json(&run(&["classify", &corpus_path("zint-window-2")]));
    assert_eq!(base["window"], 2);
    let out = json(&run(&[
        "classify",
        "--window",
        "3",
        &corpus_path("zint-window-2"),
    ]));
    assert_eq!(out["window"], 3);
    assert_eq!(out["classification"]["windowVerified"], true);
    assert!(json(&run(&["classify", &corpus_path("s3")]))["window"].is_null());
}

#[test]
fn parallel_runs_keep_input_order() {
    let files: Vec<String> = ["z2", "fun-z3", "pair-groupoid-2", "neg-non-integral"]
        .iter()
        .map(|n| corpus_path(n))
        .collect();
    let mut args = vec!["classify"];
    args.extend(files.iter().map(String::as_str));
    let serial = run(&args);
    let mut par = vec!["classify", "--jobs", "4"];
    par.extend(files.iter().map(String::as_str));
    let parallel = run(&par);
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(serial.status.code(), Some(1));
    let names: Vec<String> = json(&serial)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["instance"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        names,
        ["z2", "fun-z3", "pair-groupoid-2", "neg-non-integral"]
    );
}

/// Permutations of three points in the corpus order, and their inverses computed directly.
fn s3_inverses() -> Vec<usize> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    perms
        .iter()
        .map(|p| {
            let mut inv = [0; 3];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            perms.iter().position(|q| *q == inv).unwrap()
        })
        .collect()
}

#[test]
fn construct_antipode_counit_and_idempotent() {
    let out = run(&["construct", &corpus_path("s3"), "--emit", "antipode"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let images = doc["antipode"]["images"].as_array().unwrap();
    for (g, inv) in s3_inverses().into_iter().enumerate() {
        assert_eq!(images[g], serde_json::json!([g, [[inv, "1"]]]));
    }

    let out = run(&["construct", &corpus_path("fun-z4"), "--emit", "counit"]);
    let doc = json(&out);
    let values: Vec<(String, String)> =
        serde_json::from_value(doc["counit"]["values"].clone()).unwrap();
    assert_eq!(
        values,
        [
            ("d[e]", "1"),
            ("d[g1]", "0"),
            ("d[g2]", "0"),
            ("d[g3]", "0")
        ]
        .map(|(a, b)| (a.into(), b.into()))
    );

    // Re-load the emitted counit and check it against the coproduct.
    let text = std::fs::read_to_string(corpus_path("fun-z4")).unwrap();
    let mut file = parse_file("fun-z4", &text).unwrap();
    file.functionals.insert(
        "epsilon".into(),
        hopfforge_cli::file::FunctionalFile::Values(values),
    );
    let inst = file.to_instance("fun-z4").unwrap();
    let eps = inst.functional("epsilon").unwrap();
    assert_eq!(
        inst.coproduct.check_counit(eps, &inst.scope()).unwrap(),
        None
    );

    let out = run(&[
        "construct",
        &corpus_path("pair-groupoid-2"),
        "--emit",
        "E,F",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let unit_sum = serde_json::json!([[[0, 0], "1"], [[3, 3], "1"]]);
    assert_eq!(doc["E"], unit_sum);
    for f in ["F1", "F2", "F3", "F4"] {
        assert_eq!(doc["F"][f], unit_sum);
    }

    // Re-load the emitted idempotent as the supplied one.
    let text = std::fs::read_to_string(corpus_path("pair-groupoid-2")).unwrap();
    let mut file = parse_file("pg", &text).unwrap();
    file.e = Some(serde_json::from_value(doc["E"].clone()).unwrap());
    let inst = file.to_instance("pg").unwrap();
    let (report, code) = verify(&inst, "pg", &Options::default()).unwrap();
    assert_eq!(
        (report.classification.verdict.as_str(), code),
        ("RegularWeakMHA", 0)
    );

    let out = run(&["construct", &corpus_path("neg-no-e"), "--emit", "E"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["refutations"].is_array());
    assert_eq!(
        run(&["construct", &corpus_path("s3"), "--emit", "nothing"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn round_trip_reports_equal_in_memory_reports() {
    let opts = Options::default();
    for name in [
        "s3",
        "fun-s3",
        "pair-groupoid-2",
        "zint-window-2",
        "neg-non-faithful",
    ] {
        let bundle = hopfforge::corpus::generate(name).unwrap();
        let text = to_json(&InstanceFile::from_instance(&bundle.instance).unwrap());
        let loaded = load_instance_str(name, &text, &opts).unwrap();
        assert_eq!(
            verify(&bundle.instance, name, &opts).unwrap(),
            verify(&loaded, name, &opts).unwrap(),
            "{name}"
        );
        assert_eq!(
            classify(&bundle.instance, name, &opts).unwrap(),
            classify(&loaded, name, &opts).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn kernel_dimension_shows_in_the_report() {
    let out = run(&["classify", &corpus_path("pair-groupoid-2")]);
    let report = json(&out);
    let c = check(&report, &format!("kernel-formula.{}", Which::T1));
    assert_eq!(c["status"], "pass");
    assert!(c["detail"].as_str().unwrap().contains("kernel dimension 8"));
}
