use proptest::prelude::*;
use std::path::PathBuf;
use std::process::{Command, Output};
use tamed_cli::report::{AnalysisReport, SuiteEntry, TwistingSummary};
use tamed_cli::{analyze, EXIT_IDENTITY};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tamed"))
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.alg", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tamed-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json_report(path: &str) -> AnalysisReport {
    let out = run(&["analyze", path, "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    AnalysisReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

#[test]
fn solv6_report() {
    let r = json_report(&fixture("solv6"));
    assert_eq!(r.jminus_integrable, Some(false));
    assert_eq!(r.q_rank, Some(4));
    assert_eq!(r.imq_involutive, Some(true));
    assert_eq!(r.schouten_qq.as_deref(), Some("-2*e126"));
    assert!(r.twisting_solutions.as_ref().unwrap().count > 0);
    assert_eq!(r.frak_n_zero, Some(false));
    assert_eq!(r.skt, Some(true));
    assert!(r.identities_pass());
}

#[test]
fn hyperelliptic_report() {
    let r = json_report(&fixture("hyperelliptic"));
    assert_eq!(r.tames, Some(true));
    assert_eq!(r.jplus_integrable, Some(true));
    assert_eq!(r.jminus_integrable, Some(false));
    assert!(matches!(r.q_rank, Some(0) | Some(4)));
    let table: Vec<&str> = r.jminus_table.as_ref().unwrap().iter().map(String::as_str).collect();
    assert_eq!(table, ["-e2 + e3", "-e4", "-e1 - e4", "e2"]);
}

#[test]
fn torus_report_is_trivial() {
    let r = json_report(&fixture("torus4"));
    assert_eq!(r.jminus_table.as_ref().unwrap(), &["-e2", "e1", "-e4", "e3"]);
    assert_eq!(r.q_rank, Some(0));
    assert_eq!(r.schouten_qq.as_deref(), Some("0"));
    assert_eq!(r.frak_n_zero, Some(true));
    assert!(r.identities_pass());
}

#[test]
fn json_matches_library_and_round_trips() {
    for name in ["hyperelliptic", "solv6", "torus4"] {
        let path = fixture(name);
        let from_cli = json_report(&path);
        let lib = analyze(&std::fs::read_to_string(&path).unwrap()).report.unwrap();
        assert_eq!(from_cli, lib);
        assert_eq!(AnalysisReport::from_json(&lib.to_json()).unwrap(), lib);
    }
}

#[test]
fn output_is_deterministic() {
    let path = fixture("solv6");
    let a = run(&["analyze", &path]);
    let b = run(&["analyze", &path]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["analyze", &path, "--json"]);
    let b = run(&["analyze", &path, "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn several_files_print_in_argument_order() {
    let (h, s) = (fixture("hyperelliptic"), fixture("solv6"));
    let both = run(&["analyze", &s, &h]);
    assert_eq!(both.status.code(), Some(0));
    let one = run(&["analyze", &s]).stdout;
    let two = run(&["analyze", &h]).stdout;
    let mut expected = one.clone();
    expected.push(b'\n');
    expected.extend(two);
    assert_eq!(both.stdout, expected);
    let arr: Vec<AnalysisReport> =
        serde_json::from_slice(&run(&["analyze", &s, &h, "--json"]).stdout).unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0].schouten_qq.as_deref(), Some("-2*e126"));
}

#[test]
fn malformed_inputs_exit_with_position() {
    let cases = [
        ("bad_index.alg", "dim = 4\nd e5 = e12\n", "line 2, column 3"),
        ("missing_dim.alg", "d e1 = e23\n", "line 1, column 1"),
        ("duplicate.alg", "dim = 3\nd e1 = e23\nd e1 = e23\n", "line 3, column 1"),
    ];
    for (name, text, position) in cases {
        let p = scratch(name, text);
        let out = run(&["analyze", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(position), "{name}: {err}");
        let out = run(&["check", p.to_str().unwrap(), "--identity", "lemma41"]);
        assert_eq!(out.status.code(), Some(1), "{name}");
    }
}

#[test]
fn structural_failures_have_their_own_codes() {
    let jacobi = scratch(
        "jacobi.alg",
        "dim = 4\nd e1 = e23\nd e2 = e14\nJ(e1) = -e2\nJ(e2) = e1\nJ(e3) = -e4\nJ(e4) = e3\nOmega = e12 + e34\n",
    );
    let open = scratch(
        "not_closed.alg",
        "dim = 4\nd e4 = e12\nJ(e1) = -e2\nJ(e2) = e1\nJ(e3) = -e4\nJ(e4) = e3\nOmega = e12 + e34\n",
    );
    let untamed = scratch(
        "untamed.alg",
        "dim = 4\nJ(e1) = -e2\nJ(e2) = e1\nJ(e3) = -e4\nJ(e4) = e3\nOmega = -e12 - e34\n",
    );
    for (p, code) in [(&jacobi, 2), (&open, 3), (&untamed, 3)] {
        assert_eq!(run(&["analyze", p.to_str().unwrap()]).status.code(), Some(code), "{p:?}");
        let out = run(&["check", p.to_str().unwrap(), "--identity", "prop22"]);
        assert_eq!(out.status.code(), Some(code), "{p:?}");
    }
    let r = analyze(&std::fs::read_to_string(&open).unwrap()).report.unwrap();
    assert_eq!((r.omega_closed, r.tames), (Some(false), Some(true)));
}

#[test]
fn check_subcommand() {
    let out = run(&["check", &fixture("solv6"), "--identity", "lemma41"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", &fixture("hyperelliptic"), "--identity", "dim4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", &fixture("solv6"), "--identity", "schouten-modes"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<&str> = ["frame", "levi-civita", "invariant"]
        .iter()
        .map(|m| {
            let line = text.lines().find(|l| l.trim_start().starts_with(m)).unwrap();
            line.trim_start().trim_start_matches(m).trim()
        })
        .collect();
    assert!(values.iter().all(|v| *v == values[0] && !v.is_empty()), "{text}");
    let out = run(&["check", &fixture("solv6"), "--identity", "prop23"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn examples_subcommand() {
    let list = String::from_utf8(run(&["examples", "--list"]).stdout).unwrap();
    for name in ["hyperelliptic", "solv6", "torus4"] {
        assert!(list.contains(name));
        let emitted = run(&["examples", "--emit", name]).stdout;
        assert_eq!(emitted, std::fs::read(fixture(name)).unwrap());
    }
    assert_eq!(run(&["examples", "--emit", "nope"]).status.code(), Some(1));
}

#[test]
fn convention_ledger_is_printed() {
    let out = run(&["analyze", &fixture("torus4"), "--convention"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Sign conventions"));
    let out = run(&["analyze", &fixture("torus4"), "--convention", "--json"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("Schouten"));
    AnalysisReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
}

#[test]
fn failing_identity_means_exit_four() {
    let mut a = analyze(&std::fs::read_to_string(fixture("torus4")).unwrap());
    assert_eq!(a.exit_code(), 0);
    a.report.as_mut().unwrap().identity_suite.push(SuiteEntry {
        name: "synthetic".into(),
        status: "fail".into(),
        witness: Some("(e_1, e_2, e_3) = 1".into()),
    });
    assert_eq!(a.exit_code(), EXIT_IDENTITY);
}

fn opt<T: std::fmt::Debug + Clone + 'static>(s: impl Strategy<Value = T> + 'static) -> BoxedStrategy<Option<T>> {
    prop::option::of(s).boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reports_round_trip_through_json(
        digest in "[0-9a-f]{64}",
        flags in prop::collection::vec(opt(any::<bool>()), 10),
        rank in opt(0usize..12),
        table in opt(prop::collection::vec("-?[1-9]/[1-9]\\*e[1-6]", 1..6)),
        qq in opt("-?[0-9]+/[1-9]\\*e[1-6]{3}"),
        count in 0usize..5,
        rep in opt("[0-9]+/[1-9]\\*e[1-6]{3}"),
        suite in prop::collection::vec(("[a-z ]{1,12}", prop_oneof!["pass", "fail", "n/a"], opt("[a-z0-9 ]{1,8}")), 0..5),
    ) {
        let r = AnalysisReport {
            input_digest: digest,
            jacobi: flags[0].unwrap_or(true),
            omega_closed: flags[1],
            tames: flags[2],
            jplus_integrable: flags[3],
            jminus_table: table,
            jminus_integrable: flags[4],
            skt: flags[5],
            generalized_pair_valid: flags[6],
            q_rank: rank,
            imq_involutive: flags[7],
            imq_subalgebra: flags[8],
            schouten_qq: qq,
            twisting_solutions: Some(TwistingSummary { count, representative: rep }),
            beta2_twisted: flags[9].map(|b| if b { "yes".into() } else { "no".into() }),
            frak_n_zero: flags[9],
            identity_suite: suite.into_iter().map(|(name, status, witness)| SuiteEntry { name, status, witness }).collect(),
        };
        prop_assert_eq!(AnalysisReport::from_json(&r.to_json()).unwrap(), r);
    }
}
