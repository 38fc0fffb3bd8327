use std::path::Path;
use std::process::{Command, Output};

fn nagell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagell")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const WORKED: &str = r#"{
  "quadrics": [
    [["1","1","0","0"],["1","2","-3","0"],["0","-3","0","-1"],["0","0","-1","3"]],
    [["-2","0","0","0"],["0","1","0","0"],["0","0","2","0"],["0","0","0","-1"]]
  ],
  "point": ["1","1","1","1"]
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn euler_three_two_ends_at_the_factored_curve() {
    let o = nagell(&["family", "--family", "euler", "--M", "3", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["final"]["factored"], "y^2 = x(x-3)(x-1)");
    assert_eq!(doc["inflection_shortcut"], true);
}

#[test]
fn worked_example_step_seven_table() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "worked.json", WORKED);
    let o = nagell(&["transform", "--input", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let step7 = doc["steps"].as_array().unwrap().iter().find(|s| s["stage"] == 7).unwrap();
    assert_eq!(step7["step"], "normalize");
    assert_eq!(doc["weierstrass"]["equation"], "y^2 = x^3 + 5988x^2 + 9222672x + 2682825616");
}

#[test]
fn klm_points_both_ways() {
    let base = ["map-point", "--family", "klm", "--k", "2", "--l", "3", "--m", "5"];
    let fwd = nagell(&[&base[..], &["--point", "1,1,-1,-1", "--format", "text"]].concat());
    assert_eq!(stdout(&fwd).trim(), "(0, 0, 1)");
    let back = nagell(&[&base[..], &["--point", "0,1,0", "--direction", "backward", "--format", "text"]].concat());
    assert_eq!(stdout(&back).trim(), "(1, 1, 1, 1)");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let asym = write(
        dir.path(),
        "asym.json",
        &WORKED.replace(r#"[["1","1","0","0"]"#, r#"[["1","7","0","0"]"#),
    );
    assert_eq!(nagell(&["transform", "--input", &asym]).status.code(), Some(2));
    let garbage = write(dir.path(), "garbage.json", "{\"quadrics\": 3}");
    assert_eq!(nagell(&["transform", "--input", &garbage]).status.code(), Some(2));

    // the point is not on both quadrics
    let off = write(dir.path(), "off.json", &WORKED.replace(r#"["1","1","1","1"]"#, r#"["1","0","0","0"]"#));
    let o = nagell(&["transform", "--input", &off]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["name"], "PointNotOnIntersection");

    let out = dir.path().to_str().unwrap();
    let o = nagell(&["plot", "--family", "euler", "--M", "3", "--N", "2", "--stage", "3", "--out", out]);
    assert_eq!(o.status.code(), Some(4));
    let o = nagell(&["transform", "--family", "euler", "--k", "1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = nagell(&["transform", "--family", "klm", "--k", "1", "--l", "1", "--m", "1", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    let args = ["transform", "--family", "klm", "--k", "2", "--l", "3", "--m", "5"];
    assert_eq!(nagell(&args).stdout, nagell(&args).stdout);
}

#[test]
fn plot_marks_the_distinguished_point() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "worked.json", WORKED);
    let out = dir.path().join("svg");
    let o = nagell(&["plot", "--input", &input, "--stage", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for view in ["affine", "projective"] {
        let text = std::fs::read_to_string(out.join(format!("stage-0-{view}.svg"))).unwrap();
        let svg = roxmltree::Document::parse(&text).unwrap();
        let dot = svg.descendants().find(|n| n.attribute("class") == Some("marked")).unwrap();
        assert_eq!(dot.attribute("data-point"), Some("(2, 2, 1)"), "{view}");
        assert!(svg.descendants().any(|n| n.attribute("class") == Some("curve")), "{view}");
    }
}

#[test]
fn explicit_window_without_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    // y² = x(x-3)(x-1) has no real points with x < 0
    let o = nagell(&[
        "plot", "--family", "euler", "--M", "3", "--N", "2", "--stage", "7", "--out", out, "--window", "-9,-5,-2,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("stage-7-affine.svg")).unwrap();
    let svg = roxmltree::Document::parse(&text).unwrap();
    assert!(!svg.descendants().any(|n| n.attribute("class") == Some("curve")));
}
