use std::path::PathBuf;
use std::process::{Command, Output};

use locobs::algebra::engine::normalize_word;
use locobs::algebra::{lie_bracket, Expression, GaussRat, Gen, Rat};
use locobs::cli::{self, parse, Manifest, EXIT_CONFIG, EXIT_FAIL, EXIT_PARSE, EXIT_PASS};
use locobs::observables::{build, Observable};
use locobs::report::Status;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locobs")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("locobs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn round_trips(e: &Expression) {
    let printed = e.to_string();
    let back = parse(&printed).unwrap_or_else(|err| panic!("{err}\n{printed}"));
    assert_eq!(&back, e, "{printed}");
    assert_eq!(back.to_string(), printed);
}

fn observables() -> Vec<Observable> {
    let mut out = vec![Observable::S2, Observable::C1, Observable::C2, Observable::C3, Observable::Mass(-3)];
    for m in 0..4 {
        out.extend([
            Observable::W(m),
            Observable::X(m),
            Observable::Ext(m),
            Observable::V(m),
            Observable::Svec(m),
            Observable::Q(m),
            Observable::R(m),
        ]);
        for n in 0..4 {
            out.push(Observable::Stensor(m, n));
        }
    }
    out
}

#[test]
fn parse_examples() {
    assert_eq!(parse("(P[0], C[0])").unwrap(), Expression::gen(Gen::d()).scale_rat(-2, 1));
    let p0 = Expression::gen(Gen::p(0));
    let x0 = build(&Observable::X(0));
    assert_eq!(parse("dot(P[0], X[0])").unwrap(), p0.sym(&x0));
    let e = parse("P[4]").unwrap_err();
    assert_eq!((e.line, e.column), (1, 3));
}

#[test]
fn printed_observables_round_trip() {
    for o in observables() {
        round_trips(&build(&o));
    }
}

#[test]
fn printed_brackets_round_trip() {
    let gens: Vec<Gen> = Gen::all().collect();
    for a in &gens {
        for b in &gens {
            let e = lie_bracket(*a, *b);
            round_trips(&e);
            let text = format!("({a}, {b})");
            assert_eq!(parse(&text).unwrap(), e, "{text}");
        }
    }
}

#[test]
fn derived_names_parse_to_their_builders() {
    for o in observables() {
        let name = o.to_string();
        if name.starts_with(['c', 'M']) || name == "S2" {
            continue;
        }
        assert_eq!(parse(&name).unwrap(), build(&o), "{name}");
    }
}

#[test]
fn coefficients_round_trip() {
    for c in ["-3/2", "1/2*i", "-1/2*i", "(1-2*i)", "(-1/3+5/7*i)"] {
        let e = parse(&format!("{c}*hbar^2*C[0]^2*P[3]*M^-3")).unwrap();
        round_trips(&e);
    }
    let r = Rat::new(-5, 3);
    assert_eq!(parse("-5/3").unwrap(), Expression::scalar(GaussRat::real(r)));
}

fn gen() -> impl Strategy<Value = Gen> {
    (0..Gen::COUNT as u8).prop_map(Gen::from_id)
}

fn expression() -> impl Strategy<Value = Expression> {
    let mono = (prop::collection::vec(gen(), 0..=4), -3i32..=3, -2i32..=2, -4i128..=4, -4i128..=4, 1i128..=6)
        .prop_map(|(w, k, h, re, im, d)| {
            let c = GaussRat::new(Rat::new(re, d), Rat::new(im, d));
            normalize_word(&w, k).unwrap().hbar_shift(h).scale(c)
        });
    prop::collection::vec(mono, 0..5).prop_map(Expression::sum)
}

#[test]
fn print_parse_print_is_print() {
    let config = Config { cases: 500, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[8; 32]))
        .run(&expression(), |e| {
            let printed = e.to_string();
            let back = parse(&printed).map_err(|err| TestCaseError::fail(err.to_string()))?;
            prop_assert_eq!(back.to_string(), printed);
            prop_assert_eq!(back, e);
            Ok(())
        })
        .unwrap();
}

#[test]
fn manifest_defaults_and_unknown_keys() {
    let m = Manifest::from_json("{}").unwrap();
    let cfg = m.resolve().unwrap();
    assert_eq!((cfg.seed, cfg.ladder.twice_s_max, cfg.ladder.tol, cfg.geometry.pairs), (0, 12, 1e-10, 1000));
    assert!(cfg.selection.matches("XX") && cfg.selection.matches("geometry/spin"));
    assert!(Manifest::from_json(r#"{"suites": ["XX"], "colour": 1}"#).is_err());
    assert!(Manifest::from_json(r#"{"ladder": {"s_max": 6, "smax": 7}}"#).is_err());
    let m = Manifest::from_json(r#"{"ladder": {"s_min": "1/2", "s_max": 6.5, "c1": 0.3, "c2": "7/10"}}"#).unwrap();
    let l = m.resolve().unwrap().ladder;
    assert_eq!((l.twice_s_min, l.twice_s_max), (1, 13));
    assert_eq!(l.casimirs.c2, locobs::oracles::exact::q(7, 10));
    assert_eq!(l.casimirs.c1, locobs::oracles::exact::q(3, 10));
    for bad in [r#"{"ladder": {"s_max": 2}}"#, r#"{"ladder": {"s_min": 1}}"#, r#"{"ladder": {"s_max": 6.5}}"#, r#"{"geometry": {"eps": [0.5]}}"#, r#"{"suites": ["[x"]}"#] {
        assert!(Manifest::from_json(bad).unwrap().resolve().is_err(), "{bad}");
    }
}

#[test]
fn selecting_xx_gives_one_passing_report() {
    let cfg = Manifest::from_json(r#"{"suites": ["XX"]}"#).unwrap().resolve().unwrap();
    let reports = cli::run_checks(&cfg);
    assert_eq!(reports.len(), 1);
    assert_eq!((reports[0].id.as_str(), reports[0].status), ("XX", Status::Pass));
    assert_eq!(cli::exit_code(&reports), EXIT_PASS);
}

#[test]
fn pol_glob_selects_the_calculus_checks() {
    let cfg = Manifest::from_json(r#"{"suites": ["pol/*"]}"#).unwrap().resolve().unwrap();
    let ids = cli::selected_ids(&cfg.selection);
    assert_eq!(ids, ["pol/eigen", "pol/rotation", "pol/step", "pol/ApAm_AA", "pol/sign", "pol/final"]);
}

#[test]
fn catalog_ids_are_unique() {
    let ids: Vec<&str> = cli::catalog().iter().map(|e| e.0).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    assert!(ids.contains(&"XX") && ids.contains(&"CX") && ids.contains(&"oracle/ladder"));
}

#[test]
fn binary_exit_codes() {
    let o = bin(&["normalize", "(P[0], C[0])"]);
    assert_eq!((code(&o), String::from_utf8_lossy(&o.stdout).trim()), (EXIT_PASS, "-2*D"));
    assert_eq!(code(&bin(&["normalize", "P[4]"])), EXIT_PARSE);
    assert_eq!(code(&bin(&["comm", "P[0]", "Q[9]"])), EXIT_PARSE);
    let o = bin(&["comm", "D", "P[2]"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "P[2]");

    let m = tmp("smax2.json", r#"{"suites": ["oracle/ladder"], "ladder": {"s_max": 2}}"#);
    assert_eq!(code(&bin(&["check", "--manifest", m.to_str().unwrap()])), EXIT_CONFIG);
    let m = tmp("unknown.json", r#"{"suite": ["XX"]}"#);
    assert_eq!(code(&bin(&["check", "--manifest", m.to_str().unwrap()])), EXIT_CONFIG);
    assert_eq!(code(&bin(&["check", "no-such-id"])), EXIT_CONFIG);
    assert_eq!(code(&bin(&["oracle", "ladder", "--s-max", "2"])), EXIT_CONFIG);
    assert_eq!(code(&bin(&["check", "XX"])), EXIT_PASS);

    // Casimirs that the ladder cannot realise give an error report, not a crash.
    let m = tmp("inadmissible.json", r#"{"suites": ["oracle/ladder"], "ladder": {"c1": 0, "c2": 0, "c3": 2}}"#);
    assert_eq!(code(&bin(&["check", "--manifest", m.to_str().unwrap()])), EXIT_FAIL);

    let rays = tmp("short.rays", "1 1 0 0 0 0 0 0\n");
    assert_eq!(code(&bin(&["geometry", "--rays", rays.to_str().unwrap()])), EXIT_PARSE);
    let rays = tmp("parallel.rays", "1 1 0 0 0 0 0 0 0\n2 2 0 0 0 0 1 0 0\n");
    assert_eq!(code(&bin(&["geometry", "--rays", rays.to_str().unwrap()])), EXIT_CONFIG);
    let rays = tmp("skew.rays", "# p u sigma\n1 1 0 0 0 0 0 0 0\n1 0 1 0 0 0 0 1 0\n");
    assert_eq!(code(&bin(&["geometry", "--rays", rays.to_str().unwrap()])), EXIT_PASS);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let m = tmp(
        "repro.json",
        r#"{"suites": ["oracle/*", "geometry/*", "XX", "pol/step"], "seed": 7, "geometry": {"pairs": 60}, "format": "json"}"#,
    );
    let run = || {
        let o = bin(&["check", "--manifest", m.to_str().unwrap()]);
        assert_eq!(code(&o), EXIT_PASS, "{}", String::from_utf8_lossy(&o.stdout));
        o.stdout
    };
    let first = run();
    assert_eq!(first, run());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 10);
    for r in reports {
        let mut keys: Vec<&String> = r.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(keys, ["id", "ms", "paper_ref", "residual", "status"]);
        assert!(r["ms"].is_null());
    }
    let text = String::from_utf8(first).unwrap();
    let order: Vec<usize> = ["\"id\"", "\"paper_ref\"", "\"status\"", "\"residual\"", "\"ms\""].iter().map(|k| text.find(k).unwrap()).collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn json_file_and_timings() {
    let out = std::env::temp_dir().join(format!("locobs-cli-{}-t.json", std::process::id()));
    let o = bin(&["check", "oracle/so42", "--json", out.to_str().unwrap(), "--timings"]);
    assert_eq!(code(&o), EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v[0]["ms"].is_u64());
}
