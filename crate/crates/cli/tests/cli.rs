use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::TempDir;
use tpfree::extraction::forward_wired;
use tpfree::generators::{make_a_seed, make_config, make_wall};
use tpfree::graph::io::{to_graph6, to_json};
use tpfree::graph::GraphBuilder;
use tpfree::obstructions::{ConfigKind, Configuration};
use tpfree::strips::canonical_pyramid_strip;
use tpfree::Graph;
use tpfree_cli::{run, Exit};

fn tpfree(args: &[&str]) -> Exit {
    run(std::iter::once("tpfree").chain(args.iter().copied()))
}

fn json(e: &Exit) -> Value {
    assert_eq!(e.code, 0, "stderr: {}", e.stderr);
    serde_json::from_str(&e.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn pyramid_files(dir: &TempDir, lengths: [usize; 3]) -> (PathBuf, PathBuf, Graph) {
    let (g, c) = make_config(ConfigKind::Pyramid, lengths).unwrap();
    let Configuration::Pyramid(p) = c else { unreachable!() };
    let strip = canonical_pyramid_strip(&g, &p).unwrap();
    let gp = write(dir, "pyr.g6", &to_graph6(&g));
    let sp = write(dir, "pyr.json", &serde_json::to_string(&strip).unwrap());
    (gp, sp, g)
}

#[test]
fn gen_then_detect_theta() {
    let dir = TempDir::new().unwrap();
    let out = tpfree(&["gen", "--kind", "theta", "--lengths", "2,2,3"]);
    assert_eq!(out.code, 0);
    let gp = write(&dir, "theta.g6", &out.stdout);
    let v = json(&tpfree(&["detect", "--kind", "theta", "--in", s(&gp)]));
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["verified"], true);
    assert_eq!(v["witness"]["kind"], "theta");
    assert_eq!(v["witness"]["paths"].as_array().unwrap().len(), 3);
    let v = json(&tpfree(&["detect", "--kind", "prism", "--in", s(&gp)]));
    assert_eq!(v["outcome"], "absent");
}

#[test]
fn k23_is_a_theta_and_outside_the_class() {
    let dir = TempDir::new().unwrap();
    let gp = write(&dir, "k23.g6", &to_graph6(&Graph::complete_bipartite(2, 3)));
    let v = json(&tpfree(&["detect", "--kind", "theta", "--in", s(&gp)]));
    assert_eq!(v["witness"]["verified"], true);
    let v = json(&tpfree(&["class", "--t", "4", "--in", s(&gp)]));
    assert_eq!(v["outcome"], "non_member");
}

#[test]
fn wall_treewidth() {
    let dir = TempDir::new().unwrap();
    let gp = write(&dir, "wall3.json", &to_json(&make_wall(3).unwrap()));
    let v = json(&tpfree(&["tw", "--in", s(&gp)]));
    assert_eq!(v["treewidth"], 3);
    assert_eq!(v["verified"], true);
}

#[test]
fn input_errors_exit_one() {
    let e = tpfree(&["tw", "--bogus"]);
    assert_eq!(e.code, 1);
    assert!(e.stderr.contains("Usage"), "{}", e.stderr);
    assert_eq!(tpfree(&["gen", "--kind", "prism", "--lengths", "2,2"]).code, 1);
    let e = tpfree(&["tw", "--in", "/nonexistent/graph.g6"]);
    assert_eq!(e.code, 1);
    let e = tpfree(&["verify", "--lemma", "9.9"]);
    assert_eq!(e.code, 1);
    assert!(e.stderr.contains("corner-or-jewel") && e.stderr.contains("tree-extraction"));
}

#[test]
fn caps_exit_two() {
    let dir = TempDir::new().unwrap();
    let gp = write(&dir, "k21.g6", &to_graph6(&Graph::complete(21)));
    let e = tpfree(&["detect", "--kind", "strong-block", "--k", "3", "--in", s(&gp)]);
    assert_eq!(e.code, 2, "{}", e.stderr);
}

#[test]
fn verify_is_byte_deterministic() {
    let args = ["verify", "--lemma", "3.1", "--samples", "20", "--max-n", "10", "--seed", "7"];
    let a = tpfree(&args);
    let b = tpfree(&["verify", "--lemma", "corner-or-jewel", "--samples", "20", "--max-n", "10", "--seed", "7", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["outcome"], "pass");
    assert!(v["witness"]["instances"].as_u64().unwrap() > 0);
    let v = json(&tpfree(&["verify", "--lemma", "6.1", "--samples", "10", "--seed", "3"]));
    assert_eq!(v["outcome"], "pass");
    assert_eq!(v["witness"]["instances"], 10);
}

#[test]
fn strip_validate_and_saturate() {
    let dir = TempDir::new().unwrap();
    let (gp, sp, g) = pyramid_files(&dir, [3, 2, 4]);
    let v = json(&tpfree(&["strip", "validate", "--in", s(&gp), "--strip", s(&sp)]));
    assert_eq!(v["outcome"], "valid");
    assert_eq!(v["witness"]["rich"], true);
    let v = json(&tpfree(&["strip", "saturate", "--in", s(&gp), "--strip", s(&sp)]));
    assert_eq!(v["outcome"], "saturated");
    assert_eq!(v["verified"], true);

    // Dropping a base edge breaks completeness of the interfaces at the centre.
    let mut b = GraphBuilder::from_graph(&g);
    let (Ok((_, Configuration::Pyramid(p))),) = (make_config(ConfigKind::Pyramid, [3, 2, 4]),) else { unreachable!() };
    b.remove_edge(p.base[0], p.base[1]);
    let broken = write(&dir, "broken.g6", &to_graph6(&b.build()));
    let v = json(&tpfree(&["strip", "validate", "--in", s(&broken), "--strip", s(&sp)]));
    assert_eq!(v["outcome"], "invalid");
    assert_eq!(v["witness"]["axiom"], "S4");
    let e = tpfree(&["strip", "saturate", "--in", s(&broken), "--strip", s(&sp)]);
    assert_eq!(e.code, 1);
}

#[test]
fn separators_from_strips_and_seeds() {
    let dir = TempDir::new().unwrap();
    let (gp, sp, _) = pyramid_files(&dir, [3, 3, 3]);
    let v = json(&tpfree(&["sep", "--apex", "0", "--target", "3", "--strip", s(&sp), "--in", s(&gp)]));
    assert_eq!(v["outcome"], "separated");
    assert_eq!(v["verified"], true);
    assert!(v["witness"]["S"].is_array() && v["witness"]["bound"]["name"].is_string());

    let seed = make_a_seed(&"L.L".parse().unwrap()).unwrap();
    let gp = write(&dir, "seed.g6", &to_graph6(&seed.graph));
    let hp = write(&dir, "h.json", &serde_json::to_string(&seed.seed).unwrap());
    let far = (0..seed.graph.n())
        .find(|&x| x != seed.apex && !seed.graph.adjacent(seed.apex, x))
        .unwrap()
        .to_string();
    let apex = seed.apex.to_string();
    let v = json(&tpfree(&["sep", "--apex", &apex, "--target", &far, "--seed-set", s(&hp), "--in", s(&gp)]));
    assert_eq!(v["verified"], true);
}

#[test]
fn banana_and_tree_extraction() {
    let dir = TempDir::new().unwrap();
    let (g, ps) = forward_wired(7, |i, j| i < j);
    let gp = write(&dir, "w.g6", &to_graph6(&g));
    let paths: Vec<Vec<usize>> = ps.paths.iter().map(|p| p.vertices().to_vec()).collect();
    let pp = write(&dir, "p.json", &serde_json::to_string(&paths).unwrap());
    let base = ["--in", s(&gp), "--a", "0", "--b", "1", "--paths", s(&pp)];
    let v = json(&tpfree(&[&["tree", "banana", "--nu", "4"][..], &base].concat()));
    assert_eq!(v["outcome"], "selected");
    assert_eq!(v["verified"], true);
    let v = json(&tpfree(&[&["tree", "extract", "--d", "2", "--r", "2"][..], &base].concat()));
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["verified"], true);
    assert_eq!(v["witness"]["root"], 0);

    let (g, ps) = forward_wired(5, |_, _| false);
    let gp = write(&dir, "e.g6", &to_graph6(&g));
    let paths: Vec<Vec<usize>> = ps.paths.iter().map(|p| p.vertices().to_vec()).collect();
    let pp = write(&dir, "e.json", &serde_json::to_string(&paths).unwrap());
    let v = json(&tpfree(&["tree", "banana", "--nu", "3", "--in", s(&gp), "--a", "0", "--b", "1", "--paths", s(&pp)]));
    assert_eq!(v["outcome"], "failed");
    assert_eq!(v["witness"]["stage_number"], 3);
}

#[test]
fn trichotomy_and_connectifier() {
    let dir = TempDir::new().unwrap();
    let gp = write(&dir, "k33.g6", &to_graph6(&Graph::complete_bipartite(3, 3)));
    let v = json(&tpfree(&["tree", "kp", "--d", "2", "--r", "2", "--s", "3", "--t", "4", "--in", s(&gp)]));
    assert_eq!(v["outcome"], "biclique");
    assert_eq!(v["verified"], true);

    let gp = write(&dir, "p6.g6", &to_graph6(&Graph::path(6)));
    let sp = write(&dir, "s.json", "[0, 2, 5]");
    let v = json(&tpfree(&["tree", "connectify", "--set", s(&sp), "--h", "3", "--in", s(&gp)]));
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["witness"]["shape"], "path");
    assert_eq!(v["verified"], true);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.json");
    let e = tpfree(&["gen", "--kind", "wall", "--t", "2", "--format", "json", "--out", s(&out)]);
    assert_eq!(e.code, 0);
    assert!(e.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with('{'));
}
