use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use adicol::dicolour::verify_acyclic_dicolouring;
use adicol::format::{parse_col, parse_digraph, parse_odg, write_odg};
use adicol::random::random_tournament;
use adicol::{Colouring, Digraph};
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn adicol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adicol")).args(args).output().expect("binary runs")
}

fn adicol_stdin(args: &[&str], stdin: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_adicol"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Text from the first `col` line on, which parses as a colouring.
fn col_block(text: &str) -> Colouring {
    let start = text.find("col ").expect("a COL block");
    parse_col(&text[start..]).unwrap()
}

fn is_acyclic_colouring(d: &Digraph, c: &Colouring) -> bool {
    verify_acyclic_dicolouring(d, c).unwrap().is_ok()
}

fn split_k4() -> String {
    let out = adicol(&["construct", "vertex-split", "--k", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    stdout(&out)
}

#[test]
fn rotational_pipeline_yields_valid_colouring() {
    let built = adicol(&["construct", "rn", "--n", "9"]);
    assert_eq!(code(&built), 0);
    let t = parse_odg(&stdout(&built)).unwrap();
    assert_eq!(t.n(), 9);
    assert!(t.is_tournament());

    let out = adicol_stdin(&["tour2col"], &built.stdout);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let c = col_block(&stdout(&out));
    assert!(c.k() <= 2);
    assert!(is_acyclic_colouring(&t, &c));
}

#[test]
fn verify_accepts_a_valid_pair_and_rejects_a_monochromatic_one() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "f.odg", &split_k4());
    let solved = adicol(&["solve", "--param", "adic", "--input", s(&d)]);
    let good = write(&dir, "f.col", &stdout(&solved)[stdout(&solved).find("col ").unwrap()..]);
    let out = adicol(&["verify", "--digraph", s(&d), "--colouring", s(&good)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "ok\n");

    let mono = write(&dir, "mono.col", &format!("col 8 1\n{}", (0..8).map(|v| format!("{v} 1\n")).collect::<String>()));
    let out = adicol(&["verify", "--digraph", s(&d), "--colouring", s(&mono)]);
    assert_eq!(code(&out), 2);
    let line = stdout(&out);
    let words: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(&words[..2], ["cycle", "monochromatic"]);
    let cycle: Vec<usize> = words[2..].iter().map(|w| w.parse().unwrap()).collect();
    let g = parse_odg(&split_k4()).unwrap();
    for i in 0..cycle.len() {
        assert!(g.has_arc(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
}

#[test]
fn verify_flags_alternating_cycles_only_in_acyclic_mode() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "c4.odg", "odg 4 4\n0 1\n1 2\n2 3\n3 0\n");
    let c = write(&dir, "c4.col", "col 4 2\n0 1\n1 2\n2 1\n3 2\n");
    let out = adicol(&["verify", "--digraph", s(&d), "--colouring", s(&c)]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout(&out), "cycle alternating 0 1 2 3\n");
    let out = adicol(&["verify", "--plain", "--digraph", s(&d), "--colouring", s(&c)]);
    assert_eq!(code(&out), 0);
}

#[test]
fn solve_split_k4_has_value_two() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d_k4.odg", &split_k4());
    let out = adicol(&["solve", "--param", "adic", "--input", s(&d)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("value 2\n"), "{text}");
    assert!(is_acyclic_colouring(&parse_odg(&split_k4()).unwrap(), &col_block(&text)));

    let out = adicol(&["solve", "--param", "adic", "--k", "1", "--input", s(&d)]);
    assert_eq!(code(&out), 2);
    assert_eq!(stdout(&out), "not-colourable 1\n");
}

#[test]
fn solve_chromatic_and_dichromatic() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.ug", "ug 5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let out = adicol(&["solve", "--param", "chi", "--input", s(&c5)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("value 3\n"));

    let digon = write(&dir, "digon.odg", "odg 2 2\n0 1\n1 0\n");
    let out = adicol(&["solve", "--param", "dic", "--input", s(&digon)]);
    assert!(stdout(&out).starts_with("value 2\n"));
    let out = adicol(&["solve", "--param", "adic", "--input", s(&digon)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("digon"));
}

#[test]
fn search_limit_exits_four() {
    let dir = TempDir::new().unwrap();
    let t = random_tournament(14, 9);
    let d = write(&dir, "t.odg", &write_odg(&t));
    let out = adicol(&["solve", "--param", "adic", "--limit", "2", "--input", s(&d)]);
    assert_eq!(code(&out), 4);
    assert_eq!(stdout(&out), "exceeds-limit\n");
}

#[test]
fn odg_mat_round_trip() {
    let dir = TempDir::new().unwrap();
    let odg = split_k4();
    let d = write(&dir, "d.odg", &odg);
    let out = adicol(&["convert", "--input", s(&d), "--to", "mat"]);
    assert_eq!(code(&out), 0);
    let m = write(&dir, "d.mat", &stdout(&out));
    let back = adicol(&["convert", "--input", s(&m), "--to", "odg"]);
    let strip = |t: &str| t.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&stdout(&back)), strip(&odg));
    assert_eq!(parse_digraph(&stdout(&back)).unwrap(), parse_digraph(&odg).unwrap());
}

#[test]
fn triangle_matrix_form() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.odg", "odg 3 3\n0 1\n1 2\n2 0\n");
    let out = adicol(&["convert", "--input", s(&c3), "--to", "mat"]);
    assert_eq!(stdout(&out), "mat 3\n0 1 0\n0 0 1\n1 0 0\n");
}

#[test]
fn lossy_conversions_are_refused() {
    let dir = TempDir::new().unwrap();
    let c3 = write(&dir, "c3.odg", "odg 3 3\n0 1\n1 2\n2 0\n");
    assert_eq!(code(&adicol(&["convert", "--input", s(&c3), "--to", "ug"])), 3);
    let p3 = write(&dir, "p3.ug", "ug 3 2\n0 1\n1 2\n");
    assert_eq!(code(&adicol(&["convert", "--input", s(&p3), "--to", "odg"])), 3);
    assert_eq!(stdout(&adicol(&["convert", "--input", s(&p3), "--to", "ug"])), "ug 3 2\n0 1\n1 2\n");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&adicol(&["frobnicate"])), 64);
    assert_eq!(code(&adicol(&[])), 64);
    let out = adicol(&["experiment", "partitionable", "--n", "10", "--ell", "4", "--trials", "5"]);
    assert_eq!(code(&out), 64, "randomised commands need an explicit seed");
    assert_eq!(code(&adicol(&["--version"])), 0);
}

#[test]
fn malformed_input_exits_3_with_line_number() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.odg", "# header next\nodg 3 2\n0 1\n1 x\n");
    let out = adicol(&["tour2col", "--input", s(&bad)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
    assert_eq!(code(&adicol(&["tour2col", "--input", "/nonexistent/file.odg"])), 3);
}

#[test]
fn undirected_input_to_digraph_command_is_rejected_with_hint() {
    let dir = TempDir::new().unwrap();
    let ug = write(&dir, "k3.ug", "ug 3 3\n0 1\n0 2\n1 2\n");
    let out = adicol(&["solve", "--param", "adic", "--input", s(&ug)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("undirected graph"), "{}", stderr(&out));
}

#[test]
fn tour2col_reports_non_light_arc() {
    let dir = TempDir::new().unwrap();
    // 0 -> 1, 1 dominates the triangle 2 3 4, which dominates 0.
    let mut arcs = vec![(0, 1), (2, 3), (3, 4), (4, 2)];
    for x in 2..5 {
        arcs.push((1, x));
        arcs.push((x, 0));
    }
    let t = Digraph::from_arcs(5, arcs).unwrap();
    let f = write(&dir, "t.odg", &write_odg(&t));
    let out = adicol(&["tour2col", "--certify", "--input", s(&f)]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    let first: Vec<&str> = text.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(&first[..2], ["not-light", "arc"]);
    let (u, v): (usize, usize) = (first[2].parse().unwrap(), first[3].parse().unwrap());
    assert!(t.has_arc(u, v));
    let inside = (t.out_neighbours(v) & t.in_neighbours(u)).to_vec();
    let has_triangle = inside.iter().any(|&a| {
        inside.iter().any(|&b| inside.iter().any(|&c| t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a)))
    });
    assert!(has_triangle);
    assert!(text.contains("# triangle"));
}

#[test]
fn tour2col_pair_mode() {
    let dir = TempDir::new().unwrap();
    let built = adicol(&["construct", "rn", "--n", "7"]);
    let f = write(&dir, "r7.odg", &stdout(&built));
    let t = parse_odg(&stdout(&built)).unwrap();
    for (a, b) in [(0, 2), (2, 0), (0, 4)] {
        let out = adicol(&["tour2col", "--input", s(&f), "--pair", &a.to_string(), &b.to_string()]);
        match code(&out) {
            0 => {
                let c = col_block(&stdout(&out));
                assert!(adicol::tournament::is_st_colouring(&t, a, b, &c).unwrap());
            }
            2 => assert_eq!(stdout(&out), format!("no-st-colouring {a} {b}\n")),
            other => panic!("exit {other}: {}", stderr(&out)),
        }
    }
}

#[test]
fn bounds_print_verified_certificates() {
    let dir = TempDir::new().unwrap();
    let t = random_tournament(60, 4);
    let f = write(&dir, "t.odg", &write_odg(&t));
    let out = adicol(&["bound", "matching", "--input", s(&f)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(is_acyclic_colouring(&t, &col_block(&stdout(&out))));

    let d = adicol::random::random_two_degenerate(40, 2);
    let f = write(&dir, "d.odg", &write_odg(&d));
    let out = adicol(&["bound", "degenerate2", "--input", s(&f), "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "degenerate-2col");
    let colours: Vec<u32> = serde_json::from_value(v["certificate"]["colours"].clone()).unwrap();
    assert!(is_acyclic_colouring(&d, &Colouring::new(colours, 2).unwrap()));
}

#[test]
fn experiments_are_reproducible_across_worker_counts() {
    let args = ["experiment", "partitionable", "--n", "16", "--ell", "8", "--trials", "60", "--seed", "7", "--json"];
    let one = adicol(&args);
    assert_eq!(code(&one), 0);
    let mut parallel = args.to_vec();
    parallel.extend(["--parallel", "3"]);
    assert_eq!(stdout(&one), stdout(&adicol(&parallel)));
    let v: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    for key in ["kind", "n", "params", "value", "frequency", "ci95", "seed"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["seed"], 7);
}

#[test]
fn manifest_records_input_digest_and_seed() {
    let dir = TempDir::new().unwrap();
    let text = split_k4();
    let d = write(&dir, "d.odg", &text);
    let manifest = dir.path().join("run.json");
    let out = adicol(&["solve", "--param", "adic", "--input", s(&d), "--manifest", s(&manifest)]);
    assert_eq!(code(&out), 0);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    let digest: String = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(m["inputs"][0]["sha256"], digest);
    assert_eq!(m["exit_code"], 0);
    assert_eq!(m["summary"]["value"], 2);
    assert!(m["wall_time_secs"].as_f64().unwrap() >= 0.0);

    let out = adicol(&["experiment", "candidate", "--k2", "2", "--k3", "1", "--trials", "50", "--seed", "3"]);
    let line = stderr(&out).lines().last().unwrap().to_string();
    let m: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(m["seed"], 3);
}

#[test]
fn dot_export_uses_fill_colours() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.odg", &split_k4());
    let dot = dir.path().join("d.dot");
    let out = adicol(&["solve", "--param", "adic", "--input", s(&d), "--dot", s(&dot)]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph G {"));
    assert_eq!(text.matches("fillcolor").count(), 8);
}

#[test]
fn every_construction_emits_parseable_odg_with_roles() {
    let dir = TempDir::new().unwrap();
    let tt2 = write(&dir, "tt2.odg", "odg 2 1\n0 1\n");
    let c3 = write(&dir, "c3.odg", "odg 3 3\n0 1\n1 2\n2 0\n");
    let k3 = write(&dir, "k3.ug", "ug 3 3\n0 1\n0 2\n1 2\n");
    let cases: Vec<(Vec<&str>, usize)> = vec![
        (vec!["tt", "--k", "4"], 4),
        (vec!["hero", "--k", "2"], 8),
        (vec!["rn", "--n", "5"], 5),
        (vec!["double-tt", "--k", "2"], 8),
        (vec!["gap", "--k", "2"], 0),
        (vec!["vertex-split", "--input", s(&k3)], 6),
        (vec!["split-reduction", "--input", s(&c3)], 0),
        (vec!["split-lift", "--input", s(&c3), s(&tt2)], 6),
        (vec!["gadget-w"], 8),
        (vec!["gadget-triangle"], 21),
        (vec!["ramsey3", "--s", "4"], 8),
        (vec!["arrow", "--input", s(&tt2), s(&c3)], 5),
        (vec!["delta", "--input", s(&tt2), s(&tt2), s(&c3)], 7),
        (vec!["substitute", "--input", s(&c3), s(&tt2), s(&tt2), s(&c3)], 7),
        (vec!["independent", "--n", "3"], 3),
    ];
    for (args, n) in cases {
        let mut full = vec!["construct"];
        full.extend(&args);
        let out = adicol(&full);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        let (d, roles) = parse_digraph(&stdout(&out)).unwrap();
        if n > 0 {
            assert_eq!(d.n(), n, "{args:?}");
        }
        assert!(roles.values().all(|&v| v < d.n()));
    }
    assert_eq!(code(&adicol(&["construct", "rn", "--n", "4"])), 3);
    assert_eq!(code(&adicol(&["construct", "tt"])), 3);
}

#[test]
fn construct_writes_output_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("w.odg");
    let out = adicol(&["construct", "gadget-w", "--output", s(&path)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let (d, roles) = parse_digraph(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(d.n(), 8);
    assert!(roles.contains_key("x") && roles.contains_key("y"));
}

#[test]
fn single_threaded_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let t = random_tournament(11, 21);
    let f = write(&dir, "t.odg", &write_odg(&t));
    for args in [vec!["tour2col", "--input", s(&f)], vec!["solve", "--param", "adic", "--input", s(&f)]] {
        assert_eq!(adicol(&args).stdout, adicol(&args).stdout);
    }
}
