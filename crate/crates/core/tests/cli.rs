use map_peel::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("map-peel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn quad_counts_as_csv() {
    let (code, out, _) = call(&["count", "quad", "--max-n", "6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,count\n2,1\n3,2\n4,9\n5,54\n6,378\n");
}

#[test]
fn tri_counts_as_json_use_strings() {
    let (code, out, _) = call(&["count", "tri", "--max-n", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let counts: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["1", "4", "32", "336"]);
    assert!(!out.contains('.'));
}

#[test]
fn output_is_byte_stable() {
    let args = ["count", "tri-boundary", "--max-n", "5", "--format", "json"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn two_boundary_row() {
    let (code, out, _) = call(&["count", "quad-two", "--n", "2", "--p", "1", "--q", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n,p,q,count\n2,1,1,1\n");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quad.csv");
    let (code, out, _) =
        call(&["count", "quad", "--max-n", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "n,count\n2,1\n3,2\n4,9\n");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(call(&["count", "quad", "--max-n", "1"]).0, 2);
    assert_eq!(call(&["verify", "--identity", "nope"]).0, 2);
    assert_eq!(call(&["oracle", "compare", "--family", "tri", "--max-n", "1"]).0, 2);
    assert_eq!(call(&["count", "hex"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn verify_reports() {
    let (code, out, _) = call(&["verify", "--identity", "quad-lastcar", "--order", "30", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["first_failure"].is_null());

    let (code, out, _) = call(&["verify", "--identity", "all", "--order", "12"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains(",pass,")).count(), 8);
}

#[test]
fn oracle_commands() {
    let (code, out, _) = call(&["oracle", "compare", "--family", "quad", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert!(out.ends_with(",agree\n"));
    let (code, out, _) = call(&["oracle", "roundtrip", "--family", "tri", "--max-n", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
}
