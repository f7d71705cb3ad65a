use std::process::{Command, Output};

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer")).args(args).env("BRAUER_THREADS", "2").output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn double_centraliser_passes() {
    let o = brauer(&["verify", "double-centraliser", "--n", "2", "--s", "2", "--field", "q", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["actual"]["dim_group_span"], 14);
}

#[test]
fn dims_emits_csv() {
    let o = brauer(&["dims", "--n", "4", "--max-l", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "l,dim_poly,dim_ideal_piece,graded_dim,pass");
    assert_eq!(lines[3], "2,136,11,125,true");
    assert_eq!(lines[4], "3,816,160,656,true");
}

#[test]
fn faithfulness_reports_kernel_witness() {
    let o = brauer(&["verify", "faithfulness", "--n", "2", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let w = v[0]["witnesses"][0].as_str().unwrap();
    assert!(w.contains("u=2,v=2;[T1-T2,B1-B2]"), "{w}");
    assert_eq!(v[0]["actual"]["kernel_dim"], 1);
}

#[test]
fn invalid_input_exits_64() {
    for args in [
        &["--bogus"][..],
        &["verify", "schur", "--n", "2", "--s", "2"],
        &["verify", "faithfulness", "--n", "3", "--s", "2"],
        &["verify", "double-centraliser", "--n", "2", "--s", "2", "--field", "gf:4", "--seed", "1"],
        &["all"],
        &[],
    ] {
        let o = brauer(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn list_names_every_check() {
    let o = brauer(&["--list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["double-centraliser", "faithfulness", "homomorphism", "ideal", "schur", "associativity", "sign-twist", "pfaffian", "homogeneous-envelope", "tableaux"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn output_file_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("brauer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let o = brauer(&["verify", "schur", "--n", "2", "--s", "2", "--seed", "11", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tableaux_listing_and_formats() {
    let o = brauer(&["tableaux", "--shape", "1,1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("shape (1,1) m=2 count=5 weyl=5\n"));
    let o = brauer(&["--format", "csv", "verify", "sign-twist", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("check,n,s,field,seed,status,expected,actual\nsign-twist,"));
    let o = brauer(&["--format", "pretty", "tableaux"]);
    assert!(stdout(&o).starts_with("PASS"));
}
