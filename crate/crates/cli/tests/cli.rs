//! End-to-end runs of the `tlu` binary: exit codes, file outputs, and
//! determinism of emitted artifacts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tlu_core::mlp::{io, Activation, Layer, Mlp};

const OR_CSV: &str = "x1,x2,f\n0,0,0\n0,1,1\n1,0,1\n1,1,1\n";
const XOR_CSV: &str = "x1,x2,f\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n";
const WORKED_CSV: &str = "x1,x2,f\n0,0,1\n0,1,1\n1,0,0\n1,1,0\n";

fn tlu(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlu"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

/// Minimal well-formedness check: every tag closes in order. Good enough for
/// markup that never puts `>` inside attribute values.
fn assert_well_formed_xml(text: &str) {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find('<') {
        let close = rest[open..].find('>').expect("unclosed tag bracket") + open;
        let tag = &rest[open + 1..close];
        rest = &rest[close + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            let top = stack.pop().unwrap_or_else(|| panic!("unmatched </{name}>"));
            assert_eq!(top, name, "mismatched closing tag");
        } else if tag.ends_with('/') || tag.starts_with('?') || tag.starts_with('!') {
            continue;
        } else {
            stack.push(tag.split_whitespace().next().unwrap().to_string());
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn separability_feasible_table_exits_zero_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "or.csv", OR_CSV);
    let out = tlu(dir.path(), &["separability", "or.csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("feasible\n"), "{text}");

    // The printed witness must satisfy all four inequalities.
    let witness_line = text.lines().nth(1).unwrap();
    let values: Vec<f64> = witness_line
        .split_whitespace()
        .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
        .collect();
    let (w1, w2, t) = (values[0], values[1], values[2]);
    assert!(0.0 < t && w2 > t && w1 > t && w1 + w2 > t, "{witness_line}");
    assert!(w1.abs() <= 1.0 && w2.abs() <= 1.0 && t.abs() <= 1.0);
}

#[test]
fn separability_xor_exits_two_naming_the_conflicting_inequalities() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "xor.csv", XOR_CSV);
    let out = tlu(dir.path(), &["separability", "xor.csv"]);
    assert_eq!(exit_code(&out), 2);
    let text = stdout(&out);
    assert!(text.starts_with("infeasible\n"), "{text}");
    for needed in ["w1>t", "w2>t", "w1+w2<t"] {
        assert!(text.contains(needed), "missing {needed} in {text}");
    }
}

#[test]
fn separability_malformed_csv_exits_one_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.csv", "x1,x2,f\n0,0,0\n0,2,1\n1,0,1\n1,1,1\n");
    let out = tlu(dir.path(), &["separability", "bad.csv"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn delta_worked_example_reproduces_the_published_run() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "table.csv", WORKED_CSV);
    let out = tlu(
        dir.path(),
        &[
            "delta", "table.csv", "--w", "0.2,-0.5", "--t", "0.1", "--e", "0.1", "--order",
            "gray", "--trace", "trace.csv",
        ],
    );
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("final: w1=-0.225 w2=-0.0875 t=-0.1875"), "{text}");
    assert!(text.contains("converged after 7 updates"), "{text}");

    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines.len(), 8); // header + 7 updates
    assert_eq!(lines[0], "iteration,column,E,d,w1,w2,t,touched");
    assert!(lines[1].starts_with("1,00,0.1,0.1,"));

    let expected_e_d = [
        (0.1, 0.1),
        (0.5, 0.3),
        (0.3, 0.2),
        (0.1, 0.1),
        (0.4, 0.25),
        (0.15, 0.125),
        (0.025, 0.0625),
    ];
    for (line, (e, d)) in lines[1..].iter().zip(expected_e_d) {
        let cells: Vec<&str> = line.split(',').collect();
        let e_got: f64 = cells[2].parse().unwrap();
        let d_got: f64 = cells[3].parse().unwrap();
        assert!((e_got - e).abs() < 1e-12, "{line}");
        assert!((d_got - d).abs() < 1e-12, "{line}");
    }
}

#[test]
fn delta_on_xor_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "xor.csv", XOR_CSV);
    let out = tlu(dir.path(), &["delta", "xor.csv", "--seed", "7"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stdout(&out).contains("without converging"));
}

#[test]
fn delta_with_an_already_correct_init_converges_with_an_empty_trace() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "or.csv", OR_CSV);
    let out = tlu(
        dir.path(),
        &[
            "delta", "or.csv", "--w", "0.7,0.7", "--t", "0.5", "--trace", "trace.csv",
        ],
    );
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("converged after 0 updates"));
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(trace.lines().count(), 1); // header only
}

#[test]
fn delta_rejects_mismatched_init_width() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "or.csv", OR_CSV);
    let out = tlu(dir.path(), &["delta", "or.csv", "--w", "0.5", "--t", "0.1"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn mlp_train_is_deterministic_and_eval_replays_its_outputs() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "xor.csv", XOR_CSV);
    let train_args = [
        "mlp", "train", "xor.csv", "--arch", "2,3,1", "--act", "tanh,identity", "--seed", "3",
        "--model", "a.mlp", "--loss-history", "a.csv",
    ];
    let out = tlu(dir.path(), &train_args);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("status=reached-target-loss"));

    let mut again = train_args;
    again[8] = "3"; // same seed
    let b_args: Vec<&str> = again
        .iter()
        .map(|s| match *s {
            "a.mlp" => "b.mlp",
            "a.csv" => "b.csv",
            other => other,
        })
        .collect();
    tlu(dir.path(), &b_args);
    let a = std::fs::read(dir.path().join("a.mlp")).unwrap();
    let b = std::fs::read(dir.path().join("b.mlp")).unwrap();
    assert_eq!(a, b, "same flags must write byte-identical models");
    let ha = std::fs::read(dir.path().join("a.csv")).unwrap();
    let hb = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(ha, hb);

    // Eval prints exactly the forward pass of the stored model.
    let eval = tlu(dir.path(), &["mlp", "eval", "xor.csv", "--model", "a.mlp"]);
    assert_eq!(exit_code(&eval), 0);
    let model = io::read_model(&std::fs::read_to_string(dir.path().join("a.mlp")).unwrap())
        .unwrap();
    let inputs = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]];
    let printed: Vec<f64> = stdout(&eval)
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(printed.len(), 4);
    for (input, got) in inputs.iter().zip(printed) {
        assert_eq!(got, model.predict(input).unwrap()[0]);
    }
}

#[test]
fn mlp_train_with_wrong_output_arity_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "xor.csv", XOR_CSV);
    let out = tlu(
        dir.path(),
        &["mlp", "train", "xor.csv", "--arch", "2,3", "--act", "tanh"],
    );
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("target"), "{}", stderr(&out));
}

fn stub_model(dir: &Path, name: &str, scores: &[f64]) -> PathBuf {
    let layer = Layer::new(
        vec![vec![0.0; 16]; scores.len()],
        scores.to_vec(),
        Activation::Identity,
    )
    .unwrap();
    let mlp = Mlp::from_layers(vec![layer]).unwrap();
    write(dir, name, &io::write_model(&mlp))
}

fn blank_pbm(dir: &Path) -> PathBuf {
    let rows: Vec<String> = (0..16).map(|_| "0".repeat(16)).collect();
    write(dir, "img.pbm", &format!("P1\n16 16\n{}\n", rows.join("\n")))
}

#[test]
fn classify_accepts_a_single_confident_class() {
    let dir = tempfile::tempdir().unwrap();
    stub_model(dir.path(), "m.mlp", &[0.1, 0.95, 0.1]);
    blank_pbm(dir.path());
    write(dir.path(), "labels.txt", "zero\none\ntwo\n");
    let out = tlu(
        dir.path(),
        &[
            "classify", "img.pbm", "--model", "m.mlp", "--labels", "labels.txt",
            "--encoding", "rowword16",
        ],
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "accepted one 0.95\n");
}

#[test]
fn classify_rejections_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    stub_model(dir.path(), "low.mlp", &[0.1, 0.1, 0.1]);
    stub_model(dir.path(), "tie.mlp", &[0.9, 0.1, 0.9]);
    blank_pbm(dir.path());
    write(dir.path(), "labels.txt", "zero\none\ntwo\n");

    let out = tlu(
        dir.path(),
        &[
            "classify", "img.pbm", "--model", "low.mlp", "--labels", "labels.txt",
            "--encoding", "rowword16",
        ],
    );
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stdout(&out), "rejected none-above-threshold\n");

    let out = tlu(
        dir.path(),
        &[
            "classify", "img.pbm", "--model", "tie.mlp", "--labels", "labels.txt",
            "--encoding", "rowword16",
        ],
    );
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stdout(&out), "rejected ambiguous zero 0.9 two 0.9\n");
}

#[test]
fn classify_respects_the_threshold_flag() {
    let dir = tempfile::tempdir().unwrap();
    stub_model(dir.path(), "m.mlp", &[0.1, 0.95, 0.1]);
    blank_pbm(dir.path());
    write(dir.path(), "labels.txt", "zero\none\ntwo\n");
    let out = tlu(
        dir.path(),
        &[
            "classify", "img.pbm", "--model", "m.mlp", "--labels", "labels.txt",
            "--encoding", "rowword16", "--threshold", "0.99",
        ],
    );
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stdout(&out), "rejected none-above-threshold\n");
}

#[test]
fn classify_with_a_broken_image_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    stub_model(dir.path(), "m.mlp", &[0.1]);
    write(dir.path(), "labels.txt", "only\n");
    write(dir.path(), "img.pbm", "P1\n8 8\n0\n");
    let out = tlu(
        dir.path(),
        &[
            "classify", "img.pbm", "--model", "m.mlp", "--labels", "labels.txt",
            "--encoding", "rowword16",
        ],
    );
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn plot_emits_well_formed_svg_with_one_glyph_per_row() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "or.csv", OR_CSV);
    let out = tlu(
        dir.path(),
        &["plot", "or.csv", "--unit", "0.7,0.7,0.5", "--out", "or.svg"],
    );
    assert_eq!(exit_code(&out), 0);
    let svg = std::fs::read_to_string(dir.path().join("or.svg")).unwrap();
    assert_well_formed_xml(&svg);
    assert_eq!(svg.matches("class=\"point").count(), 4);
    assert_eq!(svg.matches("class=\"point class1\"").count(), 3);
    assert_eq!(svg.matches("class=\"boundary\"").count(), 1);

    // Identical invocations write byte-identical artifacts.
    tlu(
        dir.path(),
        &["plot", "or.csv", "--unit", "0.7,0.7,0.5", "--out", "again.svg"],
    );
    assert_eq!(
        std::fs::read(dir.path().join("or.svg")).unwrap(),
        std::fs::read(dir.path().join("again.svg")).unwrap()
    );
}

#[test]
fn plot_without_a_unit_on_an_infeasible_table_draws_points_only() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "xor.csv", XOR_CSV);
    let out = tlu(dir.path(), &["plot", "xor.csv", "--out", "xor.svg"]);
    assert_eq!(exit_code(&out), 0);
    let svg = std::fs::read_to_string(dir.path().join("xor.svg")).unwrap();
    assert_well_formed_xml(&svg);
    assert_eq!(svg.matches("class=\"point").count(), 4);
    assert_eq!(svg.matches("class=\"boundary\"").count(), 0);
}

#[test]
fn plot_three_inputs_emits_the_hyperplane_mesh() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "fig.csv",
        "x1,x2,x3,f\n0,0,0,1\n0,0,1,1\n0,1,0,0\n0,1,1,0\n1,0,0,0\n1,0,1,1\n1,1,0,0\n1,1,1,0\n",
    );
    let out = tlu(
        dir.path(),
        &[
            "plot", "fig.csv", "--unit=-0.6,-1.5,0.6,-0.5", "--out", "mesh.csv",
            "--grid-steps", "4",
        ],
    );
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("mesh.csv")).unwrap();
    assert!(csv.starts_with("kind,x,y,z,class\n"));
    let z00: f64 = csv
        .lines()
        .find(|l| l.starts_with("mesh,0,0,"))
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((z00 - (-0.5 / 0.6)).abs() < 1e-12);
    assert_eq!(csv.lines().filter(|l| l.starts_with("mesh,")).count(), 25);
    assert_eq!(csv.lines().filter(|l| l.starts_with("corner,")).count(), 8);
}

#[test]
fn plot_rejects_unsupported_input_counts() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "one.csv", "x1,f\n0,0\n1,1\n");
    let out = tlu(dir.path(), &["plot", "one.csv", "--out", "x.svg"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn help_exits_zero_and_unknown_flags_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = tlu(dir.path(), &["--help"]);
    assert_eq!(exit_code(&out), 0);
    let out = tlu(dir.path(), &["separability", "--bogus"]);
    assert_eq!(exit_code(&out), 1);
}
