use std::process::{Command, Output};

fn sublab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sublab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const HOL17_INVOLUTION: &str = "(2 17)(3 16)(4 15)(5 14)(6 13)(7 12)(8 11)(9 10)";

#[test]
fn a5_query_prints_two_step_witness() {
    let o = sublab(&[
        "query",
        "--group",
        "builtin:A5",
        "--subgroup",
        "(1 2)(3 4), (1 3)(2 4)",
        "--policy",
        "kpt",
        "--t",
        "2",
        "--witness",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("verdict=true"));
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("order=4 "));
    assert!(lines[2].starts_with("order=12 ") && lines[2].ends_with("[normal]"));
    assert!(lines[3].starts_with("order=60 ") && lines[3].ends_with("[p=5]"));
}

#[test]
fn hol17_query_is_false_for_t3() {
    let o = sublab(&[
        "query",
        "--group",
        "builtin:hol17",
        "--subgroup",
        HOL17_INVOLUTION,
        "--policy",
        "kpt",
        "--t",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = sublab(&[
        "query",
        "--group",
        "builtin:Hol17",
        "--subgroup",
        HOL17_INVOLUTION,
        "--policy",
        "kpsub",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn whole_group_has_empty_witness() {
    for policy in ["subnormal", "psub", "kpsub", "fsub:UK1", "kfsub:UK2"] {
        let o = sublab(&[
            "query",
            "--group",
            "builtin:S4",
            "--subgroup",
            "(1 2 3 4), (1 2)",
            "--policy",
            policy,
        ]);
        assert_eq!(o.status.code(), Some(0), "{policy}");
        assert_eq!(stdout(&o).lines().count(), 2);
    }
}

#[test]
fn bad_input_exits_with_two() {
    let cases: [&[&str]; 5] = [
        &[
            "query",
            "--group",
            "builtin:A4",
            "--subgroup",
            "(1 2)",
            "--policy",
            "psub",
        ],
        &[
            "query",
            "--group",
            "builtin:A4",
            "--subgroup",
            "(1 2",
            "--policy",
            "psub",
        ],
        &[
            "query",
            "--group",
            "builtin:A4",
            "--subgroup",
            "()",
            "--policy",
            "kpt",
        ],
        &[
            "query",
            "--group",
            "builtin:Nope",
            "--subgroup",
            "()",
            "--policy",
            "psub",
        ],
        &["verify", "--suite", "LEMMA_9_9"],
    ];
    for args in cases {
        let o = sublab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(sublab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for (path, jobs) in [(&a, "1"), (&b, "4")] {
        let o = sublab(&[
            "verify",
            "--suite",
            "LEMMA_2_2",
            "--t",
            "1,2",
            "--report",
            path.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let first = std::fs::read_to_string(&a).unwrap();
    assert_eq!(first, std::fs::read_to_string(&b).unwrap());
    assert!(first.starts_with("SUITE LEMMA_2_2\nCASE "));
    assert!(first
        .trim_end()
        .lines()
        .last()
        .unwrap()
        .starts_with("TOTAL pass="));
}

#[test]
fn verify_on_a_custom_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("s3.txt");
    std::fs::write(&group, "degree 3\ngen (1 2 3)\ngen (1 2)\n").unwrap();
    let list = dir.path().join("corpus.txt");
    std::fs::write(
        &list,
        format!("# two groups\nbuiltin:D5\nfile:{}\n", group.display()),
    )
    .unwrap();
    let o = sublab(&[
        "verify",
        "--suite",
        "theorem-3-4",
        "--corpus",
        list.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("CASE D5 t=1 Ht_eq_wUt0=pass"));
    assert!(text.contains("TOTAL pass=6 fail=0 skip=0"));

    let o = sublab(&[
        "verify",
        "--suite",
        "ORACLE_EQUIV",
        "--corpus",
        "builtin:A5,builtin:S3",
        "--t",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("CASE A5 t=- oracle=skip"));
}

#[test]
fn lattice_dot_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.dot");
    let o = sublab(&[
        "lattice",
        "--group",
        "builtin:S3",
        "--emit-lattice-dot",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("label=\"order=").count(), 6);
    assert_eq!(dot.matches("normal=1").count(), 3);
    assert_eq!(dot.matches("->").count(), 8);
}
