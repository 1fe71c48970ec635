use std::process::{Command, Output};

fn incrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_incrank"))
        .args(args)
        .env_remove("INCRANK_MEMORY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn rank_both_methods_match() {
    let out = incrank(&[
        "rank", "--m", "4", "--n", "2", "--i", "1", "--p", "2", "--method", "both",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "formula=3 oracle=3 MATCH\n");

    let out = incrank(&[
        "rank", "--m", "4", "--n", "2", "--i", "1", "--p", "3", "--method", "both",
    ]);
    assert_eq!(stdout(&out), "formula=4 oracle=4 MATCH\n");
}

#[test]
fn rank_formula_only_in_characteristic_zero() {
    let out = incrank(&["rank", "--m", "8", "--n", "3", "--i", "3", "--p", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "formula=56\n");
}

#[test]
fn rank_verbose_lists_terms() {
    let out = incrank(&["rank", "--m", "4", "--n", "2", "--i", "1", "--p", "2", "-v"]);
    let text = stdout(&out);
    assert!(text.contains("j=0 C(n-j,i-j)=2 excluded term=1"), "{text}");
    assert!(text.contains("j=1 C(n-j,i-j)=1 included term=3"), "{text}");
    assert!(text.ends_with("formula=3\n"));
}

#[test]
fn rank_streaming_agrees() {
    let out = incrank(&[
        "rank",
        "--m",
        "12",
        "--n",
        "5",
        "--i",
        "3",
        "--p",
        "3",
        "--method",
        "both",
        "--streaming",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with("MATCH\n"));
}

#[test]
fn usage_errors_exit_64() {
    let bad: [&[&str]; 6] = [
        &["rank", "--m", "4", "--n", "5", "--i", "1", "--p", "2"],
        &["rank", "--m", "4", "--n", "2", "--i", "1", "--p", "4"],
        &["rank", "--m", "4", "--n", "2", "--i", "1", "--p", "1"],
        &["rank", "--m", "4"],
        &["table", "--p", "4", "--max-m", "3"],
        &["filtration", "--m", "4", "--n", "1", "--i", "2", "--p", "2"],
    ];
    for args in bad {
        let out = incrank(args);
        assert_eq!(code(&out), 64, "{args:?}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(code(&incrank(&["verify", "--max-m", "0"])), 64);
    assert_eq!(code(&incrank(&["frobnicate"])), 64);
    assert_eq!(code(&incrank(&["--help"])), 0);
}

#[test]
fn memory_budget_exits_70() {
    let args = [
        "rank",
        "--m",
        "14",
        "--n",
        "7",
        "--i",
        "3",
        "--p",
        "2",
        "--method",
        "eliminate",
    ];
    let out = incrank(&[&args[..], &["--memory-budget", "1K"]].concat());
    assert_eq!(code(&out), 70);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--method formula"), "{err}");

    let out = Command::new(env!("CARGO_BIN_EXE_incrank"))
        .args(args)
        .env("INCRANK_MEMORY_BUDGET", "1K")
        .output()
        .unwrap();
    assert_eq!(code(&out), 70);

    // The flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_incrank"))
        .args(args)
        .args(["--memory-budget", "64M"])
        .env("INCRANK_MEMORY_BUDGET", "1K")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "oracle=364\n");
}

#[test]
fn verify_sweep_passes() {
    let out = incrank(&["verify", "--max-m", "8", "--primes", "2,3,5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "495 cases, 0 mismatches\n");

    let out = incrank(&["verify", "--max-m", "1"]);
    assert_eq!(stdout(&out), "12 cases, 0 mismatches\n");
}

#[test]
fn verify_detects_injected_fault() {
    let out = incrank(&["verify", "--max-m", "3", "--primes", "2", "--inject-fault"]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(
        text.contains("MISMATCH m=3 n=2 i=1 p=2 formula=3 oracle=2"),
        "{text}"
    );
    assert!(text.ends_with("20 cases, 20 mismatches\n"));
}

#[test]
fn verify_tableaux_are_seeded() {
    let args = [
        "verify",
        "--max-m",
        "2",
        "--primes",
        "0,2,3",
        "--tableaux",
        "25",
        "--seed",
        "7",
    ];
    let first = incrank(&args);
    assert_eq!(code(&first), 0);
    assert!(stdout(&first).contains("25 tableaux (seed 7)"));
    assert!(stdout(&first).contains(", 0 failures"));
    assert_eq!(stdout(&first), stdout(&incrank(&args)));
}

#[test]
fn table_csv_all_match() {
    let out = incrank(&["table", "--p", "2", "--max-m", "8", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,i,p,formula_rank,oracle_rank,match"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.ends_with(",true")), "{text}");
}

#[test]
fn table_characteristic_zero_is_full_rank() {
    let out = incrank(&[
        "table",
        "--p",
        "0",
        "--max-m",
        "6",
        "--format",
        "json",
        "--no-oracle",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"formula_rank\": 20"), "{text}");
    assert!(text.contains("\"oracle_rank\": null"));
}

#[test]
fn table_empty_range_is_header_only() {
    let out = incrank(&["table", "--p", "3", "--min-m", "5", "--max-m", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "m,n,i,p,formula_rank,oracle_rank,match\n");
}

#[test]
fn filtration_reports_layers() {
    let out = incrank(&["filtration", "--m", "4", "--n", "2", "--i", "1", "--p", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"dim_L\": 0"));
    assert!(text.contains("\"dim_L\": 3"));
    assert!(text.contains("\"match\": true"));

    let out = incrank(&[
        "filtration",
        "--m",
        "5",
        "--n",
        "2",
        "--i",
        "2",
        "--p",
        "0",
        "--format",
        "text",
    ]);
    assert_eq!(
        stdout(&out),
        "m=5 n=2 i=2 p=0\nj dim_P dim_L predicted_L included\n\
         0 10 1 1 true\n1 9 4 4 true\n2 5 5 5 true\ntotal=10 formula_total=10 MATCH\n"
    );
}

#[test]
fn dump_writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("incrank-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.txt");
    let out = incrank(&[
        "dump",
        "--m",
        "3",
        "--n",
        "2",
        "--i",
        "1",
        "--p",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "3 3 2\n1 1 0\n1 0 1\n0 1 1\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bench_ranks_are_stable_and_skip_dense_over_budget() {
    let args = ["bench", "--min-m", "10", "--max-m", "12"];
    let out = incrank(&args);
    assert_eq!(code(&out), 0);
    let ranks = |text: &str| -> Vec<String> {
        text.lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{} {} {} {}", f[4], f[5], f[8], f[11])
            })
            .collect()
    };
    let first = stdout(&out);
    assert_eq!(
        ranks(&first),
        ["36 36 36 true", "45 45 45 true", "55 55 55 true"]
    );
    assert_eq!(ranks(&first), ranks(&stdout(&incrank(&args))));

    let out = incrank(&[&args[..], &["--memory-budget", "30000"]].concat());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().contains(",36,"), "{text}");
    assert!(
        text.lines().nth(2).unwrap().contains("skipped(dense)"),
        "{text}"
    );
}
