mod common;

use std::fs;
use std::path::Path;

use hypword::automata::text::{parse_nfa, parse_transducer};
use hypword::cli::{run, Outcome, EXIT_COLLISION, EXIT_ERROR, EXIT_FALSE, EXIT_TRUE};
use hypword::grammar::text::parse_grammar;
use hypword::rewriting::text::parse_system;
use hypword::structures::{example_monoid, free_group_rank_one};

use common::data;

fn hypword(args: &[&str]) -> Outcome {
    run(std::iter::once("hypword").chain(args.iter().copied()))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reduce_and_equal() {
    let sys = data("example42.sys");
    let o = hypword(&["reduce", path(&sys), "a a b c d b c d"]);
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_TRUE, "_\n"));
    let o = hypword(&["reduce", path(&sys), "d c b a"]);
    assert_eq!(o.stdout, "d c b a\n");
    assert_eq!(hypword(&["equal", path(&sys), "a b c d", "_"]).code, EXIT_TRUE);
    assert_eq!(hypword(&["equal", path(&sys), "a b c d", "a"]).code, EXIT_FALSE);
}

#[test]
fn membership_from_system_or_compiled_grammar() {
    let dir = tempfile::tempdir().unwrap();
    let compiled = dir.path().join("example42.theta");
    let o = hypword(&["compile", path(&data("example42.sys")), "-o", path(&compiled)]);
    assert_eq!(o.code, EXIT_TRUE, "{}", o.stderr);
    assert_eq!(fs::read_to_string(&compiled).unwrap(), fs::read_to_string(data("example42.theta")).unwrap());
    for source in [data("example42.sys"), compiled] {
        let src = path(&source);
        assert_eq!(hypword(&["member-k", src, "a b b c d", "_"]).code, EXIT_FALSE);
        assert_eq!(hypword(&["member-k", src, "b a b c d", "b"]).code, EXIT_TRUE);
        assert_eq!(hypword(&["member-mul", src, "a b", "c d", "_"]).code, EXIT_TRUE);
        assert_eq!(hypword(&["member-mul", src, "a b", "c", "_"]).code, EXIT_FALSE);
    }
}

#[test]
fn confluence_reports() {
    let o = hypword(&["check-confluence", path(&data("free-group.sys")), "--max-len", "6"]);
    assert_eq!(o.code, EXIT_TRUE);
    assert!(o.stdout.starts_with("status: pass\n"));
    let o = hypword(&["check-confluence", path(&data("non-confluent.sys"))]);
    assert_eq!(o.code, EXIT_FALSE);
    assert!(o.stdout.contains("witness: a a a -> _ | a\n"), "{}", o.stdout);
}

#[test]
fn cross_section_exit_codes() {
    let sys = data("example42.sys");
    let o = hypword(&["cross-section", path(&sys), path(&data("candidates/all-words.aut")), "--max-len", "4"]);
    assert_eq!(o.code, EXIT_COLLISION);
    assert!(o.stdout.contains("witness: _ ~ a b c d = _\n"), "{}", o.stdout);

    let dir = tempfile::tempdir().unwrap();
    let empty_only = dir.path().join("empty.aut");
    fs::write(&empty_only, "states: q\nalphabet: x\ninitial: q\naccepting: q\n").unwrap();
    let o = hypword(&["cross-section", path(&data("x-squared.sys")), path(&empty_only), "--max-len", "2"]);
    assert_eq!(o.code, EXIT_TRUE);
    assert!(o.stdout.starts_with("status: inconclusive\n"));
    assert!(o.stdout.contains("witness: unwitnessed x\n"));
}

#[test]
fn change_generators_report() {
    let o = hypword(&[
        "change-gens",
        path(&data("structures/x-squared-reps.aut")),
        path(&data("maps/x-to-yyy.map")),
        "--target-system",
        path(&data("y-squared.sys")),
        "--max-len",
        "6",
    ]);
    assert_eq!(o.code, EXIT_TRUE, "{}", o.stderr);
    assert!(o.stdout.contains("status: pass\n"));
    assert!(o.stdout.contains("elements: 2\n"));
    let reps = parse_nfa(o.stdout.split("status:").next().unwrap()).unwrap();
    assert_eq!(reps.enumerate(6).len(), 2);

    let o = hypword(&["change-gens", path(&data("structures/free-b.aut")), path(&data("maps/b-to-xy.map"))]);
    assert_eq!(o.code, EXIT_TRUE, "{}", o.stderr);
    assert!(o.stdout.contains("status: pass\n"));
}

#[test]
fn example_system_text() {
    let o = hypword(&["example42"]);
    assert_eq!(o.stdout, fs::read_to_string(data("example42.sys")).unwrap());
    assert_eq!(parse_system(&o.stdout).unwrap(), example_monoid(1));
    let o = hypword(&["example42", "--alpha-min", "0"]);
    assert_eq!(parse_system(&o.stdout).unwrap(), example_monoid(0));
    assert_eq!(hypword(&["example42", "--alpha-min", "2"]).code, EXIT_ERROR);
}

#[test]
fn enumerate_grammars_and_automata() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("anbn.cfg");
    fs::write(&g, "start: S\nS -> a S b | _\nU -> U c\n").unwrap();
    let o = hypword(&["enumerate", path(&g), "--max-len", "4"]);
    assert_eq!(o.stdout, "_\na b\na a b b\n");
    let o = hypword(&["enumerate", path(&g), "--max-len", "4", "--trim"]);
    assert_eq!(o.stdout, "_\na b\na a b b\n");
    let o = hypword(&["enumerate", path(&data("structures/x-squared-reps.aut"))]);
    assert_eq!(o.stdout, "_\nx\n");
}

#[test]
fn errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sys");
    fs::write(&bad, "alphabet: a\nrhs eps:\nstart: S\nS -> a ->\n").unwrap();
    let o = hypword(&["reduce", path(&bad), "a"]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);

    let o = hypword(&["reduce", path(&data("example42.sys")), "a z"]);
    assert_eq!(o.code, EXIT_ERROR);
    let o = hypword(&["reduce", path(&dir.path().join("missing.sys")), "a"]);
    assert_eq!(o.code, EXIT_ERROR);
    assert_eq!(hypword(&["no-such-verb"]).code, EXIT_ERROR);
    let o = hypword(&["--help"]);
    assert_eq!(o.code, EXIT_TRUE);
    assert!(o.stdout.contains("cross-section"));
}

#[test]
fn file_formats_round_trip() {
    for name in ["example42.sys", "example42-alpha0.sys", "free-group.sys", "non-confluent.sys", "x-squared.sys", "y-squared.sys"] {
        let s = parse_system(&fs::read_to_string(data(name)).unwrap()).unwrap();
        assert_eq!(parse_system(&s.to_text()).unwrap(), s, "{name}");
    }
    assert_eq!(parse_system(&free_group_rank_one().to_text()).unwrap(), free_group_rank_one());
    for name in ["candidates/all-words.aut", "candidates/avoid-bcd-with-sink.aut", "structures/free-b.aut"] {
        let n = parse_nfa(&fs::read_to_string(data(name)).unwrap()).unwrap();
        assert_eq!(parse_nfa(&n.to_text()).unwrap().enumerate(6), n.enumerate(6), "{name}");
    }
    let t = parse_transducer("states: p q\ninput: b\noutput: x y\ninitial: p\naccepting: p\ntrans: p b/x,y p\n").unwrap();
    assert!(t.relates(&common::w("b b"), &common::w("x y x y")).unwrap());
    assert_eq!(parse_transducer(&t.to_text()).unwrap().to_text(), t.to_text());
    let g = parse_grammar("start: S\nS -> a S b | _\n").unwrap();
    assert_eq!(parse_grammar(&g.to_text()).unwrap(), g);
}

#[test]
fn output_is_deterministic() {
    let args: [&[&str]; 3] = [
        &["cross-section", "SYS", "CAND", "--max-len", "6"],
        &["check-confluence", "SYS", "--max-len", "5"],
        &["compile", "SYS"],
    ];
    let sys = data("example42.sys");
    let cand = data("candidates/avoid-bcd-with-sink.aut");
    for a in args {
        let a: Vec<&str> = a
            .iter()
            .map(|x| match *x {
                "SYS" => path(&sys),
                "CAND" => path(&cand),
                other => other,
            })
            .collect();
        assert_eq!(hypword(&a), hypword(&a));
    }
}
