//! Graph families for exhaustive and random scans, and the per-graph verdict
//! that bundles every graph-side check.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrays::{aug_projection, verify_encoding_chain};
use crate::error::Result;
use crate::graph::MultiGraph;
use crate::newton::{ld, verify_corollaries, verify_genperm, verify_volume};
use crate::reduction::{verify_theorem_a, LexFirst, RandomChoice, RightmostPair, SpecialOrder, Strategy};

fn pairs(vertices: usize) -> Vec<(usize, usize)> {
    (0..vertices).flat_map(|i| (i + 1..vertices).map(move |j| (i, j))).collect()
}

/// Every multigraph on `2..=max_vertices` vertices with `1..=max_edges` edges.
///
/// Vertices are ordered, so distinct edge multisets are distinct graphs.
pub fn multigraphs(max_vertices: usize, max_edges: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for v in 2..=max_vertices {
        let slots = pairs(v);
        let mut counts = vec![0usize; slots.len()];
        multisets(&slots, 0, max_edges, &mut counts, &mut |c| {
            if c.iter().any(|&x| x > 0) {
                let edges = slots
                    .iter()
                    .zip(c)
                    .flat_map(|(&p, &m)| std::iter::repeat_n(p, m));
                out.push(MultiGraph::new(v - 1, edges).expect("forward pairs"));
            }
        });
    }
    out
}

fn multisets(
    slots: &[(usize, usize)],
    k: usize,
    budget: usize,
    counts: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if k == slots.len() {
        visit(counts);
        return;
    }
    for m in 0..=budget {
        counts[k] = m;
        multisets(slots, k + 1, budget - m, counts, visit);
    }
    counts[k] = 0;
}

/// Every simple graph on `2..=max_vertices` vertices with at least one edge.
pub fn simple_graphs(max_vertices: usize) -> Vec<MultiGraph> {
    let mut out = Vec::new();
    for v in 2..=max_vertices {
        let slots = pairs(v);
        for mask in 1u32..1 << slots.len() {
            let edges = slots.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p);
            out.push(MultiGraph::new(v - 1, edges).expect("forward pairs"));
        }
    }
    out
}

/// `count` seeded multigraphs with `2..=max_vertices` vertices and `1..=max_edges` edges.
pub fn random_multigraphs(count: usize, seed: u64, max_vertices: usize, max_edges: usize) -> Vec<MultiGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.random_range(2..=max_vertices.max(2));
            let slots = pairs(v);
            let e = rng.random_range(1..=max_edges.max(1));
            let edges: Vec<(usize, usize)> = (0..e).map(|_| slots[rng.random_range(0..slots.len())]).collect();
            MultiGraph::new(v - 1, edges).expect("forward pairs")
        })
        .collect()
}

/// Reduction strategies used for Theorem A checks: three deterministic orders and
/// one seeded random order.
pub fn default_strategies(seed: u64) -> Vec<Box<dyn Strategy>> {
    vec![Box::new(SpecialOrder), Box::new(LexFirst), Box::new(RightmostPair), Box::new(RandomChoice { seed })]
}

/// Which statements [`check_graph`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Checks {
    pub theorem_a: bool,
    pub encoding: bool,
    pub volume: bool,
    pub genperm: bool,
    pub corollaries: bool,
}

impl Checks {
    pub fn all() -> Self {
        Checks { theorem_a: true, encoding: true, volume: true, genperm: true, corollaries: true }
    }
}

/// Outcome of every requested check on one graph. `None` means not run or not applicable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphVerdict {
    pub hash: String,
    pub graph: String,
    pub edges: usize,
    pub theorem_a: Option<bool>,
    /// `ψ` of capacitated flows on `G^aug` equals the aggregated `LD(G)`.
    pub aug_projection: Option<bool>,
    pub encoding: Option<bool>,
    pub volume: Option<bool>,
    pub supermodular: Option<bool>,
    pub genperm_lattice: Option<bool>,
    pub minkowski_y: Option<bool>,
    pub closed_form: Option<bool>,
    pub hyperplane_slices: Option<bool>,
    pub lattice_point_volume: Option<bool>,
    pub top_component_01: Option<bool>,
    pub counterexample: Option<String>,
}

impl GraphVerdict {
    /// All checks that ran came back true.
    pub fn holds(&self) -> bool {
        self.flags().iter().all(|(_, v)| v.unwrap_or(true))
    }

    pub fn flags(&self) -> [(&'static str, Option<bool>); 11] {
        [
            ("theorem_a", self.theorem_a),
            ("aug_projection", self.aug_projection),
            ("encoding", self.encoding),
            ("volume", self.volume),
            ("supermodular", self.supermodular),
            ("genperm_lattice", self.genperm_lattice),
            ("minkowski_y", self.minkowski_y),
            ("closed_form", self.closed_form),
            ("hyperplane_slices", self.hyperplane_slices),
            ("lattice_point_volume", self.lattice_point_volume),
            ("top_component_01", self.top_component_01),
        ]
    }

    fn note(&mut self, what: &str, detail: impl FnOnce() -> String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(format!("{what}: {}", detail()));
        }
    }
}

pub fn check_graph(g: &MultiGraph, checks: Checks, seed: u64) -> Result<GraphVerdict> {
    let mut v = GraphVerdict {
        hash: g.hash_hex(),
        graph: g.to_inline(),
        edges: g.num_edges(),
        ..Default::default()
    };
    if checks.theorem_a {
        let strategies = default_strategies(seed);
        let refs: Vec<&dyn Strategy> = strategies.iter().map(|s| s.as_ref()).collect();
        let r = verify_theorem_a(g, &refs)?;
        v.theorem_a = Some(r.holds);
        if !r.holds {
            v.note("theorem_a", || format!("{:?}", r.mismatch));
        }
        let aug = aug_projection(g)? == ld(g).aggregated();
        v.aug_projection = Some(aug);
        if !aug {
            v.note("aug_projection", || "ψ(G^aug flows) differs from LD(G)".into());
        }
    }
    if checks.encoding && g.is_simple() {
        let mut ok = true;
        for f in g.source_free_subsets()? {
            let r = verify_encoding_chain(g, &f)?;
            if !r.holds {
                ok = false;
                v.note("encoding", || r.counterexample.clone().unwrap_or_default());
            }
        }
        v.encoding = Some(ok);
    }
    if checks.volume {
        let r = verify_volume(g)?;
        v.volume = Some(r.holds);
        if !r.holds {
            v.note("volume", || format!("{r:?}"));
        }
    }
    if checks.genperm {
        let r = verify_genperm(g)?;
        v.supermodular = Some(r.supermodular);
        v.genperm_lattice = Some(r.f_lattice_points && r.level_lattice_points && r.emptiness_consistent);
        v.minkowski_y = Some(r.minkowski_y);
        v.closed_form = Some(r.closed_form);
        if let Some((k, msg)) = r.counterexamples.iter().find(|(k, _)| k.as_str() != "largest_closed_form") {
            v.note(k, || msg.clone());
        }
    }
    if checks.corollaries {
        let r = verify_corollaries(g)?;
        v.hyperplane_slices = Some(r.hyperplane_slices);
        v.lattice_point_volume = r.lattice_point_volume;
        v.top_component_01 = r.top_component_01;
        if let Some(c) = &r.counterexample {
            v.note("corollaries", || c.clone());
        }
    }
    Ok(v)
}

/// [`check_graph`] over `graphs` in parallel, skipping hashes in `skip`; output
/// keeps the input order.
pub fn scan_graphs(
    graphs: &[MultiGraph],
    checks: Checks,
    seed: u64,
    skip: &HashSet<String>,
) -> Result<Vec<GraphVerdict>> {
    let todo: Vec<&MultiGraph> = graphs.iter().filter(|g| !skip.contains(&g.hash_hex())).collect();
    todo.par_iter().map(|g| check_graph(g, checks, seed)).collect()
}
