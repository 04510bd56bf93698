//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Runs with `harness = false` so the lines reach the terminal uncaptured.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use flowgp::flow::{enumerate_flows, feasible, feasible_by_cuts, feasible_by_maxflow, kostant};
use flowgp::reduction::{leaves, RandomChoice};
use flowgp::scan::{multigraphs, random_multigraphs, scan_graphs, simple_graphs, Checks, GraphVerdict};
use flowgp::schubert::{grothendieck, pipe_dreams, reduced_pipe_dreams, schubert, theorem_c_scan};
use flowgp::{MultiGraph, Permutation};

const FULL_DIMENSIONAL: &str = r"
				&0\leq a_{4,\,1}=a_{3,\,1}= a_{2,\,1}\leq a_{1,\,1}=1\\
				&0\leq a_{4,\,2}\leq a_{3,\,2}\leq a_{2,\,2}=3-a_{2,\,1}\\
				&0\leq a_{4,\,3}\leq a_{3,\,3}= 4-a_{3,\,1}-a_{3,\,2}\\
				&0\leq a_{4,\,4}=6-a_{4,\,1}-a_{4,\,2}-a_{4,\,2}
";

const SHIFTED: &str = r"
		0$\leq a_{4,\,1}=a_{3,\,1}= a_{2,\,1}\leq a_{1,\,1}=1$\\
		2$\leq a_{4,\,2}+2\leq a_{3,\,2}+1\leq a_{2,\,2}=3-a_{2,\,1}$\\
		1$\leq a_{4,\,3}+1\leq a_{3,\,3}= 3-a_{3,\,1}-a_{3,\,2}$\\
		0$\leq a_{4,\,4}=3-a_{4,\,1}-a_{4,\,2}-a_{4,\,3}$
";

const MULTIGRAPH: &str = r"
				&0\leq a_{4,\,1}^{(1)}=a_{3,\,1}^{(1)}= a_{2,\,1}^{(1)}\leq a_{2,\,1}^{(2)}\leq a^{(1)}_{1,\,1}=2\\
				&0\leq a_{4,\,2}^{(1)}\leq a_{3,\,2}^{(1)}\leq a_{2,\,2}^{(1)}=5-a^{(1)}_{2,\,1}\\
				&0\leq a_{4,\,3}^{(1)}\leq a_{4,\,3}^{(2)} \leq a_{3,\,3}^{(1)}= 6-a_{3,\,1}^{(1)}-a_{3,\,2}^{(1)}\\
				&0\leq a_{4,\,4}^{(1)}=9-a_{4,\,1}^{(1)}-a_{4,\,2}^{(1)}-a_{4,\,3}^{(1)}
";

const MULTIGRAPH_F: &str = r"
				&2\leq a_{4,\,1}^{(1)}+2=a_{3,\,1}^{(1)}+2= a_{2,\,1}^{(1)}+2\leq a_{2,\,1}^{(2)}+2\leq a^{(1)}_{1,\,1}=2\\
				&1\leq a_{4,\,2}^{(1)}+1\leq a_{3,\,2}^{(1)}+1\leq a_{2,\,2}^{(1)}=3-a^{(1)}_{2,\,1}\\
				&0\leq a_{4,\,3}^{(1)}\leq a_{4,\,3}^{(2)} \leq a_{3,\,3}^{(1)}= 3-a_{3,\,1}^{(1)}-a_{3,\,2}^{(1)}\\
				&0\leq a_{4,\,4}^{(1)}=6-a_{4,\,1}^{(1)}-a_{4,\,2}^{(1)}-a_{4,\,3}^{(1)}
";

const SCHUBERT_14523: &str = "x1^2*x2^2 + x1^2*x2*x3 + x1^2*x3^2 + x1*x2^2*x3 + x1*x2*x3^2 + x2^2*x3^2";

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), notes: Vec::new() }
    }
}

fn flowgp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flowgp")).args(args).output().expect("run flowgp");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Strips layout and writes every variable as `a_{i,\,j}^{(m)}`.
fn normalize(row: &str) -> String {
    let s: String = row
        .trim()
        .trim_end_matches("\\\\")
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '$' && *c != '&')
        .collect();
    let mut out = String::new();
    let mut rest = s.as_str();
    while let Some(p) = rest.find("a^{(") {
        out.push_str(&rest[..p]);
        let after = &rest[p + 2..];
        let sup_end = after.find('}').expect("superscript") + 1;
        let sub_rest = &after[sup_end..];
        let sub_end = sub_rest.find('}').expect("subscript") + 1;
        out.push_str(&format!("a{}^{}", &sub_rest[..sub_end], &after[..sup_end]));
        rest = &sub_rest[sub_end..];
    }
    out.push_str(rest);
    out
}

fn printed(block: &str) -> Vec<String> {
    block.lines().filter(|l| !l.trim().is_empty()).map(normalize).collect()
}

fn cli_rows(g: &MultiGraph, f: &str) -> Vec<String> {
    let inline = g.to_inline();
    let mut args = vec!["tri", inline.as_str(), "--latex"];
    if !f.is_empty() {
        args.extend(["--F", f]);
    }
    let (code, out) = flowgp(&args);
    assert_eq!(code, 0, "tri {f}");
    out.lines().map(normalize).collect()
}

fn criterion_1() -> Outcome {
    let g = MultiGraph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
    let m = MultiGraph::new(4, [(0, 1), (0, 1), (0, 2), (1, 2), (1, 2), (2, 3), (2, 4), (3, 4), (3, 4)]).unwrap();
    let mut full = printed(FULL_DIMENSIONAL);
    // the printed row 4 repeats a_{4,2}; every other statement of this array has a_{4,3}
    full[3] = full[3].replacen("-a_{4,\\,2}-a_{4,\\,2}", "-a_{4,\\,2}-a_{4,\\,3}", 1);
    let cases = [
        ("full-dimensional", cli_rows(&g, ""), full),
        ("shifted F={23,24,34}", cli_rows(&g, "2-3,2-4,3-4"), printed(SHIFTED)),
        ("multigraph", cli_rows(&m, ""), printed(MULTIGRAPH)),
        ("multigraph F={12,12,23}", cli_rows(&m, "1-2,1-2,2-3"), printed(MULTIGRAPH_F)),
    ];
    let bad: Vec<&str> = cases.iter().filter(|(_, a, b)| a != b).map(|(n, _, _)| *n).collect();
    let mut o = Outcome::new(bad.is_empty(), format!("{}/4 arrays match string for string", 4 - bad.len()));
    for n in bad {
        o.notes.push(format!("mismatch: {n}"));
    }
    o.notes.push("full-dimensional row 4 compared with a_{4,3} in place of the repeated a_{4,2}".into());
    o
}

fn criterion_2() -> Outcome {
    let (code, out) = flowgp(&["transition", "14523"]);
    let via_cli = out.trim();
    let from_dreams = schubert(&Permutation::parse("14523").unwrap()).unwrap().to_string_with("x");
    let pass = code == 0 && via_cli == SCHUBERT_14523 && from_dreams == SCHUBERT_14523;
    Outcome::new(pass, format!("transition 14523 = {via_cli}; pipe dreams agree: {}", from_dreams == via_cli))
}

fn only(theorem_a: bool, encoding: bool, volume: bool, genperm: bool, corollaries: bool) -> Checks {
    Checks { theorem_a, encoding, volume, genperm, corollaries }
}

fn failing(vs: &[GraphVerdict], pick: impl Fn(&GraphVerdict) -> Option<bool>) -> Vec<&GraphVerdict> {
    vs.iter().filter(|v| pick(v) == Some(false)).collect()
}

fn criterion_3() -> Outcome {
    let mut graphs = multigraphs(4, 6);
    let exhaustive = graphs.len();
    graphs.extend(random_multigraphs(200, 20_240_601, 6, 7));
    let vs = scan_graphs(&graphs, only(true, false, false, false, false), 7, &HashSet::new()).unwrap();
    let bad = failing(&vs, |v| v.theorem_a);
    let bad_aug = failing(&vs, |v| v.aug_projection);
    let mut o = Outcome::new(
        bad.is_empty() && bad_aug.is_empty(),
        format!(
            "{} graphs ({exhaustive} exhaustive + 200 random), 4 strategies + special tree + arrays: {} mismatches",
            vs.len(),
            bad.len()
        ),
    );
    o.notes.push(format!("G^aug projection: {} mismatches", bad_aug.len()));
    if let Some(v) = bad.first().or(bad_aug.first()) {
        o.notes.push(format!("first: {} {}", v.graph, v.counterexample.as_deref().unwrap_or("")));
    }
    o
}

fn criterion_4() -> Outcome {
    let graphs = simple_graphs(4);
    let subsets: usize = graphs.iter().map(|g| g.source_free_subsets().unwrap().len()).sum();
    let vs = scan_graphs(&graphs, only(false, true, false, false, false), 7, &HashSet::new()).unwrap();
    let bad = failing(&vs, |v| v.encoding);
    let mut o = Outcome::new(bad.is_empty(), format!("{} graphs, {subsets} (G,F) pairs: {} mismatches", vs.len(), bad.len()));
    if let Some(v) = bad.first() {
        o.notes.push(format!("first: {} {}", v.graph, v.counterexample.as_deref().unwrap_or("")));
    }
    o
}

fn criterion_5() -> Outcome {
    let simple = scan_graphs(&simple_graphs(4), only(false, false, true, false, false), 7, &HashSet::new()).unwrap();
    let multi = scan_graphs(&multigraphs(4, 6), only(false, false, true, false, false), 7, &HashSet::new()).unwrap();
    let bs = failing(&simple, |v| v.volume);
    let bm = failing(&multi, |v| v.volume);
    let mut o = Outcome::new(
        bs.is_empty() && bm.is_empty(),
        format!(
            "simple graphs <=4 vertices: {} graphs, {} violations; multigraphs <=4 vertices <=6 edges: {} graphs, {} violations",
            simple.len(),
            bs.len(),
            multi.len(),
            bm.len()
        ),
    );
    o.notes.push("checked: volume = full-dimensional leaves, Ehr(0)=1, Ehr(1..3) = direct counts, leading coefficient * d! = volume".into());
    o
}

fn genperm_violations(vs: &[GraphVerdict]) -> Vec<(&'static str, usize)> {
    let picks: [(&str, fn(&GraphVerdict) -> Option<bool>); 6] = [
        ("supermodular", |v| v.supermodular),
        ("lattice points = LD support", |v| v.genperm_lattice),
        ("y-decomposition", |v| v.minkowski_y),
        ("hyperplane slices", |v| v.hyperplane_slices),
        ("Vol = lattice points of P^0", |v| v.lattice_point_volume),
        ("L^0 coefficients in {0,1}", |v| v.top_component_01),
    ];
    picks.iter().map(|(n, p)| (*n, failing(vs, p).len())).collect()
}

fn criterion_6() -> Outcome {
    let checks = only(false, false, false, true, true);
    let graphs = simple_graphs(4);
    let vs = scan_graphs(&graphs, checks, 7, &HashSet::new()).unwrap();
    let counts = genperm_violations(&vs);
    let acyclic = graphs.iter().filter(|g| g.is_forest_without_source()).count();
    let total: usize = counts.iter().map(|(_, n)| n).sum();
    let mut o = Outcome::new(
        total == 0,
        format!("simple graphs <=4 vertices: {} graphs, every F and k: {total} violations", vs.len()),
    );
    o.notes.push(format!("Vol = Ehr(P^0,1) and L^0 checked on the {acyclic} graphs where G\\0 is a forest"));
    for (name, n) in counts.iter().filter(|(_, n)| *n > 0) {
        o.notes.push(format!("{name}: {n}"));
    }

    // beyond the scan: the y-decomposition needs b_G^F >= 0
    let multi = scan_graphs(&multigraphs(4, 6), checks, 7, &HashSet::new()).unwrap();
    let five = scan_graphs(
        &simple_graphs(5).into_iter().filter(|g| g.vertex_count() == 5).collect::<Vec<_>>(),
        only(false, false, false, true, false),
        7,
        &HashSet::new(),
    )
    .unwrap();
    for (label, vs) in [("multigraphs <=4 vertices <=6 edges", &multi), ("simple graphs on 5 vertices", &five)] {
        let c = genperm_violations(vs);
        let summary: Vec<String> = c.iter().filter(|(_, n)| *n > 0).map(|(k, n)| format!("{k} {n}")).collect();
        let closed = failing(vs, |v| v.closed_form).len();
        o.notes.push(format!(
            "info, {label} ({} graphs): {}; corrected closed form violations {closed}",
            vs.len(),
            if summary.is_empty() { "no violations".into() } else { summary.join(", ") }
        ));
    }
    o
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for n in 1..=6 {
        let r = theorem_c_scan(n).unwrap();
        pass &= r.counterexamples == 0;
        notes.push(format!("S_{n}: {r}"));
    }
    let mut o = Outcome::new(pass, "every 1w with w dominant, n <= 6");
    o.notes = notes;
    o
}

fn criterion_8() -> Outcome {
    let (code, out) = flowgp(&["scan", "conjecture", "--n", "5"]);
    let line = out.lines().next().unwrap_or("").to_string();
    Outcome::new(code == 0 && line == "0 counterexamples / 120 permutations", format!("scan conjecture --n 5: {line}"))
}

fn graph() -> impl Strategy<Value = MultiGraph> {
    (2usize..=5).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 1..=6).prop_filter_map("needs a forward edge", move |raw| {
            let pairs: Vec<(usize, usize)> =
                raw.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            (!pairs.is_empty()).then(|| MultiGraph::new(v - 1, pairs).unwrap())
        })
    })
}

fn graph_and_netflow() -> impl Strategy<Value = (MultiGraph, Vec<i64>)> {
    graph().prop_flat_map(|g| {
        let k = g.vertex_count();
        (Just(g), prop::collection::vec(-2i64..=3, k - 1)).prop_map(|(g, mut a)| {
            let s: i64 = a.iter().sum();
            a.push(-s);
            (g, a)
        })
    })
}

fn permutation() -> impl Strategy<Value = Permutation> {
    (3usize..=6)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn suite<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> (String, bool) {
    let config = Config { cases: 1000, rng_seed: RngSeed::Fixed(0x5eed_f10e), failure_persistence: None, ..Config::default() };
    match TestRunner::new(config).run(&strategy, test) {
        Ok(()) => (format!("{name}: 1000 cases, 0 failures"), true),
        Err(e) => (format!("{name}: {e}"), false),
    }
}

fn criterion_9() -> Outcome {
    let results = [
        suite("flow enumeration = kostant", graph_and_netflow(), |(g, a)| {
            let flows: Vec<_> = enumerate_flows(&g, &a, None).unwrap().collect();
            prop_assert_eq!(flows.len() as u64, kostant(&g, &a).unwrap());
            prop_assert!(flows.iter().all(|f| f.is_valid(&g, &a, None)));
            let distinct: BTreeSet<_> = flows.iter().map(|f| f.0.clone()).collect();
            prop_assert_eq!(distinct.len(), flows.len());
            Ok(())
        }),
        suite("feasible <=> kostant > 0", graph_and_netflow(), |(g, a)| {
            prop_assert_eq!(feasible_by_cuts(&g, &a).unwrap(), feasible_by_maxflow(&g, &a).unwrap());
            prop_assert_eq!(feasible(&g, &a).unwrap(), kostant(&g, &a).unwrap() > 0);
            Ok(())
        }),
        suite("codim = #F", (graph(), any::<u64>()), |(g, seed)| {
            for leaf in leaves(&g, &RandomChoice { seed }) {
                let sum: u32 = leaf.sequence().iter().sum();
                prop_assert_eq!(g.num_edges() - sum as usize, leaf.label.len());
            }
            Ok(())
        }),
        suite("reduced dream crosses = inv", permutation(), |pi| {
            for d in reduced_pipe_dreams(&pi).unwrap() {
                prop_assert_eq!(d.crosses.len(), pi.inversions());
            }
            Ok(())
        }),
        suite("G(1,...,1) = |PD|", permutation(), |pi| {
            prop_assert_eq!(grothendieck(&pi).unwrap().eval_all(1), pipe_dreams(&pi).unwrap().len() as i128);
            Ok(())
        }),
    ];
    let pass = results.iter().all(|(_, ok)| *ok);
    let mut o = Outcome::new(pass, format!("{} suites", results.len()));
    o.notes = results.into_iter().map(|(l, _)| l).collect();
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("printed constraint arrays", criterion_1),
        ("transition rule for 14523", criterion_2),
        ("LD multisets agree across routes", criterion_3),
        ("encoding chain", criterion_4),
        ("volume and Ehrhart", criterion_5),
        ("generalized permutahedra", criterion_6),
        ("Theorem C, n <= 6", criterion_7),
        ("conjecture scan, n = 5", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took: Duration = start.elapsed();
        failed += usize::from(!o.pass);
        println!(
            "criterion {}: {} {name} ({:.2?}): {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            took,
            o.detail
        );
        for n in &o.notes {
            println!("    {n}");
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
