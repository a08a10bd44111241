use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localfield"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn verify_stdin(json: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_localfield"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn order_exit_codes() {
    let o = run(&["order", "--matrix", "1,1;0,1"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("not semisimple"));
    let o = run(&["order", "--matrix", "0,-1;1,0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("finite order 2"));
    let o = run(&["order", "--eigenvalues", "[5,-6,5]"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("p = 5"));
    let o = run(&["order", "--eigenvalues", "-1;[1,0,1]"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("finite order 4"));
    assert_eq!(code(&run(&["order", "--matrix", "1,2;2,4"])), 1);
}

#[test]
fn witness_exit_codes() {
    assert_eq!(code(&run(&["witness", "[1,0,0,0,1]"])), 0);
    let o = run(&["witness", "[1,-1,-1]"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("complex root"));
    let o = run(&["witness", "5x^2 - 6x + 5"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("root_of_unity_order: none"));
    assert!(stdout(&o).contains("algebraic integer: false"));
    let o = run(&["witness", "x^2 + $"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 6"));
}

#[test]
fn integrate_prints_exact_bounds() {
    let o = run(&[
        "integrate",
        "--prime",
        "3",
        "--density",
        "x",
        "--root-index",
        "1",
        "--depth",
        "12",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("integral.lo = "));
    assert!(out.contains("(approximate)"));
    let o = run(&[
        "integrate",
        "--prime",
        "5",
        "--density",
        "7",
        "--depth",
        "3",
    ]);
    assert!(stdout(&o).contains("integral.lo = 1\n"));
    assert!(stdout(&o).contains("integral.hi = 1\n"));
}

#[test]
fn tile_balances() {
    let o = run(&["tile", "--prime", "3", "--scale", "1", "--range", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ledger total   = 242/27"));
}

#[test]
fn every_json_document_verifies() {
    let cases: &[&[&str]] = &[
        &["order", "--json", "--matrix", "1,1;0,1"],
        &["order", "--json", "--matrix", "0,1;1,1"],
        &["order", "--json", "--matrix", "0,0,1;1,0,0;0,1,0"],
        &["order", "--json", "--eigenvalues", "[5,-6,5]"],
        &["order", "--json", "--eigenvalues", "-1;x^2+1"],
        &["witness", "--json", "[5,-6,5]"],
        &["witness", "--json", "[1,-1,-1]"],
        &["witness", "--json", "[1,1,1]"],
        &["witness", "--json", "--box", "-2,0,-1/2,1/2", "[1,1,1,1]"],
        &[
            "integrate",
            "--json",
            "--prime",
            "2",
            "--density",
            "x^2 - 1",
            "--depth",
            "6",
        ],
        &[
            "integrate",
            "--json",
            "--prime",
            "3",
            "--density",
            "x",
            "--root-index",
            "2",
            "--depth",
            "6",
        ],
        &[
            "integrate",
            "--json",
            "--prime",
            "2",
            "--density",
            "x1*x2 + 2",
            "--depth",
            "4",
        ],
        &[
            "measure",
            "--json",
            "--prime",
            "3",
            "--center",
            "1",
            "--region-depth",
            "1",
            "--map",
            "x^2",
            "--depth",
            "5",
        ],
        &[
            "measure",
            "--json",
            "--prime",
            "2",
            "--center",
            "1,0",
            "--region-depth",
            "3",
        ],
        &[
            "tile", "--json", "--prime", "5", "--scale", "2", "--range", "3",
        ],
    ];
    for args in cases {
        let o = run(args);
        assert!(
            code(&o) == 0 || code(&o) == 2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v = verify_stdin(&stdout(&o));
        assert_eq!(code(&v), 0, "{args:?}: {}", stdout(&v));
    }
}

#[test]
fn tampered_and_malformed_documents() {
    let o = run(&["witness", "--json", "[5,-6,5]"]);
    let doc = stdout(&o).replacen(r#""prime": 5"#, r#""prime": 3"#, 1);
    assert_eq!(code(&verify_stdin(&doc)), 2);
    assert_eq!(code(&verify_stdin("{not json")), 1);
    let o = run(&["order", "--json", "--matrix", "0,-1;1,0"]);
    let doc = stdout(&o).replace(r#""order": 2"#, r#""order": 4"#);
    assert_eq!(code(&verify_stdin(&doc)), 2);
}
