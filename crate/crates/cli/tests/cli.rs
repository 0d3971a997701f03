use std::process::{Command, Output};

fn opavoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opavoid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_examples() {
    for (args, want) in [
        (&["count", "9", "5", "321", "--method", "gf"][..], "62085"),
        (&["count", "5", "5", "132", "--method", "oracle"][..], "42"),
        (&["count", "3", "5", "321"][..], "0"),
        (&["count", "7", "4", "213", "--method", "diagonal"][..], "2284"),
    ] {
        let o = opavoid(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn csv_table_has_the_triangle() {
    let o = opavoid(&["table", "--nmax", "10", "--pattern", "321", "--method", "double-sum", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    let filled: usize = rows.iter().map(|r| r.iter().skip(1).filter(|c| !c.is_empty()).count()).sum();
    assert_eq!(filled, 55);
    assert_eq!(&rows[9][10], "16796");
    assert_eq!(&rows[7][4], "8124");
    assert_eq!(&rows[0][2], "");
}

#[test]
fn single_cell_table() {
    let o = opavoid(&["table", "--nmax", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,1\n1,1\n");
}

#[test]
fn json_table_schema() {
    let o = opavoid(&["table", "--nmax", "4", "--method", "recurrence", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pattern"], "321");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 10);
    let last = entries.iter().find(|e| e["n"] == 4 && e["k"] == 3).unwrap();
    assert_eq!(last["count"], "27");
    assert_eq!(last["method"], "recurrence");
}

#[test]
fn oracle_and_inclusion_exclusion_print_the_same_counts() {
    let ie = opavoid(&["table", "--nmax", "8", "--pattern", "1234", "--method", "inclusion-exclusion"]);
    let oracle = opavoid(&["table", "--nmax", "8", "--pattern", "1234", "--method", "oracle"]);
    assert!(ie.status.success() && oracle.status.success());
    assert_eq!(stdout(&ie), stdout(&oracle));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "11", "3", "321", "--method", "oracle"][..],
        &["count", "4", "2", "1234", "--method", "gf"][..],
        &["count", "4", "2", "322"][..],
        &["table", "--method", "abacus"][..],
        &["verify", "nope"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(opavoid(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn raised_budget_warns_and_runs() {
    let o = opavoid(&["count", "11", "11", "321", "--method", "oracle", "--budget", "11"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "58786");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "appendix", "--n", "40"][..],
        &["verify", "wilf-s3", "--n", "8"][..],
        &["verify", "gf", "--K", "8", "--N", "14"][..],
        &["verify", "monotonicity"][..],
        &["verify", "bijection", "--n", "5"][..],
    ] {
        let o = opavoid(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).contains(": pass"));
    }
}

#[test]
fn diag_prints_polynomials_and_counts() {
    let o = opavoid(&["diag", "--rmax", "5", "--nmax", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Q_0 = 1\n"));
    assert!(text.contains("Q_1 = 3n^2\n"));
    assert!(text.contains("Q_2 = (9n^4 + 16n^3 + 5n^2 - 6n)/2\n"));
    assert!(text.contains("Q_5 = (81n^10 + 1440n^9"));
    assert!(text.contains("op(n+0,n), n = 0..6: 1, 1, 2, 5, 14, 42, 132"));
    assert!(text.contains("op(n+1,n), n = 0..6: 0, 1, 6, 27, 112, 450, 1782"));
}
