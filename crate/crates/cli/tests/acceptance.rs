//! The acceptance criteria, one line each. Criteria recorded as unattainable
//! print FAIL with the reason and do not fail the run; any other failure
//! does.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use tpfree::generators::make_wall;
use tpfree::graph::{menger, treewidth, MengerOutcome};
use tpfree::obstructions::{find_strong_block, Outcome};
use tpfree::{Graph, VertexSet};
use tpfree_cli::harness::{
    banana_check, bound_j, check_apex_separators, check_jewel_bound, check_saturation, corner_or_jewel, in_class,
    path_trichotomy_with, sample_rng, saturated_suite, tree_check, HarnessConfig, Summary, Trial,
};
use tpfree::separators::{ramsey, sigma_bound, Quantity};

/// Criteria whose literal statement cannot hold; the reasons are printed.
const UNATTAINABLE: &[usize] = &[3, 4, 10];

const SEED: u64 = 20240611;

struct Line {
    id: usize,
    pass: bool,
    detail: String,
}

fn summary_text(s: &Summary) -> String {
    let first = s
        .first_counterexample
        .as_ref()
        .map(|c| format!("; first counterexample #{} {} ({})", c.index, c.graph6, c.detail))
        .unwrap_or_default();
    format!("{} instances, {} failed, {} skipped{first}", s.instances, s.failed, s.skipped)
}

fn wall_treewidth() -> Line {
    let start = Instant::now();
    let mut widths = Vec::new();
    let mut ok = true;
    for t in 2..=4 {
        let r = treewidth(&make_wall(t).unwrap()).unwrap();
        ok &= r.exact && r.width == t;
        widths.push(format!("t={t}: {}{}", r.width, if r.exact { "" } else { " (not exact)" }));
    }
    let took = start.elapsed();
    ok &= took < Duration::from_secs(60);
    Line { id: 1, pass: ok, detail: format!("{} in {:.1?}", widths.join(", "), took) }
}

fn single_vertices() -> Line {
    let start = Instant::now();
    let s = corner_or_jewel(&HarnessConfig { max_n: 13, ..HarnessConfig::default() });
    let took = start.elapsed();
    let classified = s.counters.get("trapped").copied().unwrap_or(0);
    let pass = s.ok() && s.instances >= 10_000 && took < Duration::from_secs(600);
    Line {
        id: 2,
        pass,
        detail: format!("{} ({classified} with a trapped apex) in {took:.1?}", summary_text(&s)),
    }
}

fn outside_paths() -> Line {
    let s = path_trichotomy_with(&HarnessConfig { max_n: 13, ..HarnessConfig::default() }, true);
    let several = path_trichotomy_with(&HarnessConfig { max_n: 13, ..HarnessConfig::default() }, false);
    Line {
        id: 3,
        pass: s.ok(),
        detail: format!(
            "exactly one: {}. At least one: {} instances, {} failed, {} with several outcomes",
            summary_text(&s),
            several.instances,
            several.failed,
            several.counters.get("several outcomes").copied().unwrap_or(0)
        ),
    }
}

fn tally(trials: impl Iterator<Item = Trial>) -> (usize, usize, Option<String>) {
    let (mut n, mut bad, mut first) = (0, 0, None);
    for t in trials {
        n += 1;
        if let Trial::Fail { detail, .. } | Trial::Broken { detail, .. } = t {
            bad += 1;
            first.get_or_insert(detail);
        }
    }
    (n, bad, first)
}

fn strip_suite() -> Vec<Line> {
    let suite = saturated_suite(&HarnessConfig { samples: 100, seed: SEED, ..HarnessConfig::default() });
    let c3 = suite.iter().filter(|i| in_class(&i.graph, Some(3))).count();
    let c4 = suite.iter().filter(|i| in_class(&i.graph, Some(4))).count();
    let (n, bad, first) = tally(suite.iter().map(check_saturation));
    let four = Line {
        id: 4,
        pass: c3 == suite.len() && bad == 0 && n >= 100,
        detail: format!(
            "{c3}/{} hosts in 𝒞_3 (every pyramid base is a triangle), {c4} in 𝒞_4; saturation sound on {}/{n}{}",
            suite.len(),
            n - bad,
            first.map(|d| format!("; first failure: {d}")).unwrap_or_default()
        ),
    };

    let r = ramsey(3, 3);
    let j = bound_j();
    let (n5, bad5, first5) = tally(suite.iter().map(check_jewel_bound));
    let largest = suite
        .iter()
        .filter_map(|i| i.saturation.as_ref().ok())
        .flat_map(|s| (0..s.strip.tree.n()).map(|v| s.jewels.at_vertex(v).len()))
        .max()
        .unwrap_or(0);
    let five = Line {
        id: 5,
        pass: r == Quantity::exact(6) && j == Quantity::exact(18) && bad5 == 0 && n5 >= 100,
        detail: format!(
            "R(3,3) = {r} (exhaustive), j(3,3) = {j}; largest |J_v| = {largest}; {bad5} breaches in {n5}{}",
            first5.map(|d| format!(": {d}")).unwrap_or_default()
        ),
    };

    let sigma = sigma_bound(3, 3);
    let (n6, bad6, first6) = tally(suite.iter().map(check_apex_separators));
    let six = Line {
        id: 6,
        pass: sigma == Quantity::exact(126) && bad6 == 0 && n6 >= 100,
        detail: format!(
            "σ(3,3) = {sigma}; {bad6} failures in {n6} instances{}",
            first6.map(|d| format!(": {d}")).unwrap_or_default()
        ),
    };
    vec![four, five, six]
}

/// Smallest vertex set separating `a` from `b`, by increasing size.
fn min_separator(g: &Graph, a: usize, b: usize) -> usize {
    let others: Vec<usize> = (0..g.n()).filter(|&v| v != a && v != b).collect();
    let reaches = |removed: &BTreeSet<usize>| {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] && !removed.contains(&w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen[b]
    };
    for size in 0..=others.len() {
        let mut found = false;
        for_each_subset(&others, size, &mut |s| found |= !reaches(s));
        if found {
            return size;
        }
    }
    unreachable!("removing everything but a and b separates them")
}

fn for_each_subset(items: &[usize], size: usize, f: &mut dyn FnMut(&BTreeSet<usize>)) {
    fn go(items: &[usize], size: usize, cur: &mut BTreeSet<usize>, f: &mut dyn FnMut(&BTreeSet<usize>)) {
        if cur.len() == size {
            f(cur);
            return;
        }
        if items.len() < size - cur.len() {
            return;
        }
        cur.insert(items[0]);
        go(&items[1..], size, cur, f);
        cur.remove(&items[0]);
        go(&items[1..], size, cur, f);
    }
    go(items, size, &mut BTreeSet::new(), f);
}

fn menger_agreement() -> Line {
    let (mut pairs, mut calls, mut bad) = (0, 0, Vec::new());
    for i in 0..500u64 {
        let mut rng = sample_rng(SEED, i);
        let n = rng.random_range(2..=12);
        let p = rng.random_range(0.15..0.6);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        for a in 0..n {
            for b in a + 1..n {
                if g.adjacent(a, b) {
                    continue;
                }
                pairs += 1;
                let kappa = min_separator(&g, a, b);
                for k in 1..=n - 1 {
                    calls += 1;
                    let ok = match menger(&g, a, b, k).unwrap() {
                        MengerOutcome::Paths(ps) => {
                            let interiors: Vec<usize> =
                                ps.paths.iter().flat_map(|p| p.interior().to_vec()).collect();
                            let distinct: VertexSet = interiors.iter().copied().collect();
                            kappa >= k
                                && ps.len() == k
                                && ps.validate(&g).is_ok()
                                && distinct.len() == interiors.len()
                        }
                        MengerOutcome::Separator { set, separation } => {
                            kappa < k
                                && set.len() < k
                                && separation.verify(&g).is_ok()
                                && separation.left.contains(&a) != separation.left.contains(&b)
                        }
                    };
                    if !ok && bad.len() < 3 {
                        bad.push(format!("n={n} a={a} b={b} k={k} κ={kappa}"));
                    }
                }
            }
        }
    }
    Line {
        id: 7,
        pass: bad.is_empty(),
        detail: format!("500 graphs, {pairs} non-adjacent pairs, {calls} calls; disagreements: {bad:?}"),
    }
}

fn trees() -> Line {
    let s = tree_check(&HarnessConfig { samples: 200, seed: SEED, ..HarnessConfig::default() });
    let split = format!("d=2: {}, d=3: {}", s.counters.get("d = 2").unwrap_or(&0), s.counters.get("d = 3").unwrap_or(&0));
    Line { id: 8, pass: s.ok() && s.instances == 200, detail: format!("{}; {split}", summary_text(&s)) }
}

fn bananas() -> Line {
    let cfg = HarnessConfig { samples: 200, seed: SEED, ..HarnessConfig::default() };
    let s = banana_check(&cfg);
    let again = banana_check(&HarnessConfig { jobs: 1, ..cfg });
    let deterministic = s == again;
    Line {
        id: 9,
        pass: s.ok() && deterministic && s.instances == 200,
        detail: format!(
            "{}; selected {}, stage 3 witnesses {}; repeat run identical: {deterministic}",
            summary_text(&s),
            s.counters.get("selected").unwrap_or(&0),
            s.counters.get("stage 3 witness").unwrap_or(&0)
        ),
    }
}

fn strong_blocks() -> Line {
    let k6 = Graph::complete(6);
    let block = find_strong_block(&k6, 3).unwrap();
    let k6_text = match &block {
        Outcome::Found(w) => format!("K_6 block {:?}, validation {:?}", w.block, w.validate(&k6, 3)),
        Outcome::Absent => "K_6: none (three pairs need six private interior vertices, K_6 has three to spare)".into(),
        Outcome::Inconclusive(why) => format!("K_6: inconclusive ({why})"),
    };
    let k6_ok = matches!(&block, Outcome::Found(w) if w.validate(&k6, 3).is_ok());
    let tree = Graph::from_edges(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
    let in_tree = find_strong_block(&tree, 2).unwrap();
    let tree_ok = matches!(in_tree, Outcome::Absent);
    Line { id: 10, pass: k6_ok && tree_ok, detail: format!("{k6_text}; tree: {in_tree:?}") }
}

fn main() -> ExitCode {
    let mut lines = vec![wall_treewidth(), single_vertices(), outside_paths()];
    lines.extend(strip_suite());
    lines.extend([menger_agreement(), trees(), bananas(), strong_blocks()]);
    let mut unexpected = false;
    for l in &lines {
        let known = UNATTAINABLE.contains(&l.id);
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let note = if !l.pass && known { " [recorded as unattainable]" } else { "" };
        println!("criterion {:>2}: {verdict}{note} {}", l.id, l.detail);
        unexpected |= !l.pass && !known;
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
