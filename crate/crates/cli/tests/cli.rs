use std::path::PathBuf;
use std::process::{Command, Output};

fn groupoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("groupoid-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn check_reports_each_property() {
    let o = groupoid(&[
        "check",
        "--file",
        "@W",
        "--property",
        "right-modular",
        "--property",
        "idempotent",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "right-modular: holds\nidempotent: holds\n");

    let o = groupoid(&["check", "--file", "@EX2_PRINTED", "--property", "associative"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "associative: fails at (a, 1, x)\n");
}

#[test]
fn missing_and_malformed_files_exit_2() {
    let o = groupoid(&["check", "--file", "/nonexistent/table.tbl"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = scratch("bad");
    let path = dir.join("bad.tbl");
    std::fs::write(&path, "2\n0 1\n1 9\n").unwrap();
    let o = groupoid(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    assert_eq!(
        groupoid(&["check", "--file", "@W", "--property", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(groupoid(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn exported_fixtures_read_back() {
    let dir = scratch("fixtures");
    let o = groupoid(&["fixtures", "export", "--output-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let w = dir.join("W.tbl");
    let o = groupoid(&[
        "check",
        "--file",
        w.to_str().unwrap(),
        "--property",
        "right-modular,idempotent,quasigroup",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let a = groupoid(&["canon", "--file", w.to_str().unwrap()]);
    let b = groupoid(&["canon", "--file", "@W"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), "4\n0 2 3 1\n3 1 0 2\n1 3 2 0\n2 0 1 3\n");
}

#[test]
fn iso_between_inflations_and_order_mismatch() {
    let dir = scratch("iso");
    let o = groupoid(&["extend", "--file", "@W"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let tables: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(tables.len(), 4);
    let (p1, p2) = (dir.join("c1.tbl"), dir.join("c2.tbl"));
    std::fs::write(&p1, tables[0]).unwrap();
    std::fs::write(&p2, tables[1]).unwrap();
    let o = groupoid(&["iso", "--first", p1.to_str().unwrap(), "--second", p2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x -> x"));

    let o = groupoid(&["iso", "--first", "@W", "--second", "@C1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not isomorphic\n");
}

#[test]
fn extend_with_dedupe_gives_one_table() {
    let o = groupoid(&["extend", "--file", "@W", "--dedupe"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).split("\n\n").count(), 1);
    // Extension needs a right modular base.
    assert_eq!(groupoid(&["extend", "--file", "@EX2_PRINTED"]).status.code(), Some(2));
}

#[test]
fn inflation_searches() {
    let o = groupoid(&["inflation", "--file", "@EX2_PRINTED", "--sub", "a,b,1", "--generalised"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("subgroupoid {a, b, 1}\nclass:\n"));

    let o = groupoid(&["inflation", "--file", "@EX2_PRINTED", "--sub", "a,b,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "none\n");

    let o = groupoid(&["inflation", "--file", "@W", "--sub", "auto"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "subgroupoid {1, 2, 3, 4}\nretraction:\n1 -> 1\n2 -> 2\n3 -> 3\n4 -> 4\n"
    );

    // Not closed: 1·2 = 3.
    assert_eq!(
        groupoid(&["inflation", "--file", "@W", "--sub", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_counts_and_capacity() {
    let o = groupoid(&["enumerate", "--order", "3", "--require", "right-modular", "--count"]);
    assert_eq!(stdout(&o), "105\n");
    let o = groupoid(&[
        "enumerate",
        "--order",
        "3",
        "--require",
        "right-modular,idempotent,non-associative",
        "--count",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "0\n");
    let o = groupoid(&[
        "enumerate",
        "--order",
        "4",
        "--require",
        "right-modular,idempotent,non-associative",
        "--dedupe",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4\n0 2 3 1\n3 1 0 2\n1 3 2 0\n2 0 1 3\n");
    let o = groupoid(&[
        "enumerate",
        "--order",
        "5",
        "--extend",
        "@W",
        "--values",
        "4",
        "--count",
    ]);
    assert_eq!(stdout(&o), "262144\n");
    assert_eq!(
        groupoid(&["enumerate", "--order", "6", "--count"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_identical_across_worker_counts() {
    for args in [
        vec![
            "hunt",
            "--mode",
            "right-modular",
            "--max-sub",
            "3",
            "--max-outside",
            "1",
        ],
        vec!["extend", "--file", "@W"],
        vec!["enumerate", "--order", "3", "--require", "right-modular"],
    ] {
        let one: Vec<&str> = ["--workers", "1"].iter().copied().chain(args.iter().copied()).collect();
        let four: Vec<&str> = ["--workers", "4"].iter().copied().chain(args.iter().copied()).collect();
        let (a, b) = (groupoid(&one), groupoid(&four));
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(stdout(&a), stdout(&b), "{args:?}");
    }
}

#[test]
fn hunt_prints_a_certificate() {
    let dir = scratch("hunt");
    let o = groupoid(&[
        "hunt",
        "--mode",
        "commutative-semigroup",
        "--max-sub",
        "2",
        "--max-outside",
        "1",
        "--output-dir",
        dir.to_str().unwrap(),
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("mode: commutative-semigroup\nbounds: |U| <= 2, |G \\ U| <= 1\n"));
    assert!(text.contains("tables checked: "));
    if text.contains("no counterexample within bounds") {
        assert_eq!(o.status.code(), Some(1));
    } else {
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(groupoid(&["hunt", "--mode", "bogus"]).status.code(), Some(2));
    assert_eq!(
        groupoid(&["hunt", "--max-sub", "4", "--max-outside", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn claim_table_passes_against_golden_counts() {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/golden/counts.txt");
    let o = groupoid(&["verify-paper", "--golden", golden]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(!text.contains("golden mismatch"));
    assert!(text.ends_with("12/12 claims pass\n"));
}
