//! Reductions `(i,j),(j,k) -> G1, G2, G3`, reduction trees and left-degree sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrays;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSubset, MultiGraph};

/// A reduction at vertex `j` of `incoming = (i,j)` and `outgoing = (j,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub incoming: Edge,
    pub outgoing: Edge,
}

impl Reduction {
    pub fn vertex(&self) -> usize {
        self.incoming.head
    }
}

/// The three graphs produced by one reduction, and the edge `(i,k)` they share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub children: [MultiGraph; 3],
    pub new_edge: Edge,
}

/// Reduces `g` on `e1 = (i,j)` and `e2 = (j,k)`.
///
/// `G1 = E - e2 + (i,k)`, `G2 = E - e1 + (i,k)`, `G3 = E - e1 - e2 + (i,k)`.
pub fn reduce(g: &MultiGraph, e1: Edge, e2: Edge) -> Result<Reduced> {
    if e1.head != e2.tail || !g.contains(&e1) || !g.contains(&e2) {
        return Err(Error::NotReducible(e1.tail, e1.head, e2.tail, e2.head));
    }
    let add = [(e1.tail, e2.head)];
    let (g1, created) = g.replace(&[e2], &add)?;
    let (g2, _) = g.replace(&[e1], &add)?;
    let (g3, _) = g.replace(&[e1, e2], &add)?;
    Ok(Reduced { children: [g1, g2, g3], new_edge: created[0] })
}

/// `Σ (head - tail)` over all edges.
pub fn potential(g: &MultiGraph) -> usize {
    g.edges().iter().map(Edge::length).sum()
}

/// True when no vertex has both an incoming and an outgoing edge.
pub fn is_leaf(g: &MultiGraph) -> bool {
    let mut has_in = vec![false; g.vertex_count()];
    for e in g.edges() {
        has_in[e.head] = true;
    }
    g.edges().iter().all(|e| !has_in[e.tail])
}

/// Every reducible pair of `g`, ordered by vertex, then incoming, then outgoing edge.
pub fn reducible_pairs(g: &MultiGraph) -> Vec<Reduction> {
    let mut out = Vec::new();
    for e1 in g.edges() {
        for e2 in g.out_edges(e1.head) {
            out.push(Reduction { incoming: *e1, outgoing: *e2 });
        }
    }
    out.sort_by_key(|r| (r.vertex(), r.incoming, r.outgoing));
    out
}

/// Chooses the next reduction of a graph; `None` exactly on leaves.
pub trait Strategy: Send + Sync {
    fn name(&self) -> String;
    fn choose(&self, g: &MultiGraph) -> Option<Reduction>;
}

/// The order that builds the special tree: the smallest head `u` receiving an
/// edge from a vertex `v` with incoming edges, the smallest such `v`, the longest
/// edge into `v`, lowest copy ids first.
#[derive(Clone, Copy, Debug, Default)]
pub struct SpecialOrder;

impl Strategy for SpecialOrder {
    fn name(&self) -> String {
        "special".into()
    }

    fn choose(&self, g: &MultiGraph) -> Option<Reduction> {
        let mut has_in = vec![false; g.vertex_count()];
        for e in g.edges() {
            has_in[e.head] = true;
        }
        let outgoing = g
            .edges()
            .iter()
            .filter(|e| has_in[e.tail])
            .min_by_key(|e| (e.head, e.tail, e.copy))?;
        let incoming = g.in_edges(outgoing.tail).min()?;
        Some(Reduction { incoming: *incoming, outgoing: *outgoing })
    }
}

/// First reducible pair in canonical order.
#[derive(Clone, Copy, Debug, Default)]
pub struct LexFirst;

impl Strategy for LexFirst {
    fn name(&self) -> String {
        "lex".into()
    }

    fn choose(&self, g: &MultiGraph) -> Option<Reduction> {
        reducible_pairs(g).first().copied()
    }
}

/// Last reducible pair in canonical order.
#[derive(Clone, Copy, Debug, Default)]
pub struct RightmostPair;

impl Strategy for RightmostPair {
    fn name(&self) -> String {
        "rightmost".into()
    }

    fn choose(&self, g: &MultiGraph) -> Option<Reduction> {
        reducible_pairs(g).last().copied()
    }
}

/// Uniform choice among reducible pairs, seeded by `seed` and the graph itself,
/// so a given graph always gets the same choice.
#[derive(Clone, Copy, Debug)]
pub struct RandomChoice {
    pub seed: u64,
}

impl Strategy for RandomChoice {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn choose(&self, g: &MultiGraph) -> Option<Reduction> {
        let pairs = reducible_pairs(g);
        if pairs.is_empty() {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ graph_fingerprint(g));
        Some(pairs[rng.random_range(0..pairs.len())])
    }
}

fn graph_fingerprint(g: &MultiGraph) -> u64 {
    // FNV-1a over the edge triples
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for e in g.edges() {
        for x in [e.tail as u64, e.head as u64, u64::from(e.copy)] {
            h ^= x;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Parses `special`, `lex`, `rightmost` or `random:SEED`.
pub fn strategy_from_name(name: &str) -> Result<Box<dyn Strategy>> {
    match name {
        "special" => Ok(Box::new(SpecialOrder)),
        "lex" => Ok(Box::new(LexFirst)),
        "rightmost" => Ok(Box::new(RightmostPair)),
        _ => {
            let seed = name
                .strip_prefix("random:")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("unknown strategy {name:?}")))?;
            Ok(Box::new(RandomChoice { seed }))
        }
    }
}

/// The root edges a (possibly newly created) edge descends from.
pub type Chain = Arc<[Edge]>;

/// Multiset of G3-labels on a root-to-leaf path, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FLabel(pub Vec<Chain>);

impl FLabel {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The label as an edge set when every label is a single root edge.
    pub fn as_edge_subset(&self) -> Option<EdgeSubset> {
        let mut set = std::collections::BTreeSet::new();
        for c in &self.0 {
            if c.len() != 1 || !set.insert(c[0]) {
                return None;
            }
        }
        Some(EdgeSubset(set))
    }

    pub fn from_subset(f: &EdgeSubset) -> FLabel {
        FLabel(f.iter().map(|e| Chain::from(vec![*e])).collect())
    }
}

impl fmt::Display for FLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            for (m, e) in c.iter().enumerate() {
                if m > 0 {
                    write!(f, "+")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "}}")
    }
}

impl Serialize for FLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Vec<Edge>> = self.0.iter().map(|c| c.to_vec()).collect();
        v.serialize(s)
    }
}

#[derive(Clone, Debug)]
struct Tracked {
    graph: MultiGraph,
    origin: BTreeMap<Edge, Chain>,
}

impl Tracked {
    fn root(g: &MultiGraph) -> Self {
        let origin = g.edges().iter().map(|e| (*e, Chain::from(vec![*e]))).collect();
        Tracked { graph: g.clone(), origin }
    }

    fn split(&self, r: &Reduction) -> ([Tracked; 3], Chain) {
        let red = reduce(&self.graph, r.incoming, r.outgoing).expect("strategy returned a valid pair");
        debug_assert!(potential(&red.children[0]) > potential(&self.graph));
        debug_assert!(potential(&red.children[1]) > potential(&self.graph));
        debug_assert!(red.children[2].num_edges() < self.graph.num_edges());
        let a = &self.origin[&r.incoming];
        let b = &self.origin[&r.outgoing];
        let chain: Chain = a.iter().chain(b.iter()).copied().collect::<Vec<_>>().into();
        let removed = [[r.outgoing], [r.incoming]];
        let [g1, g2, g3] = red.children;
        let make = |graph: MultiGraph, gone: &[Edge]| {
            let mut origin = self.origin.clone();
            for e in gone {
                origin.remove(e);
            }
            origin.insert(red.new_edge, chain.clone());
            Tracked { graph, origin }
        };
        (
            [
                make(g1, &removed[0]),
                make(g2, &removed[1]),
                make(g3, &[r.incoming, r.outgoing]),
            ],
            b.clone(),
        )
    }
}

/// A leaf of a reduction tree with its accumulated G3-labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub graph: MultiGraph,
    pub label: FLabel,
}

impl Leaf {
    /// `(indeg(1), ..., indeg(n))`.
    pub fn sequence(&self) -> Vec<u32> {
        left_degrees(&self.graph)
    }
}

pub fn left_degrees(g: &MultiGraph) -> Vec<u32> {
    let mut d = vec![0u32; g.n()];
    for e in g.edges() {
        d[e.head - 1] += 1;
    }
    d
}

/// Depth-first stream of leaves, children visited in the order G1, G2, G3.
pub struct Leaves<'s> {
    strategy: &'s dyn Strategy,
    stack: Vec<(Tracked, Vec<Chain>)>,
}

impl Iterator for Leaves<'_> {
    type Item = Leaf;

    fn next(&mut self) -> Option<Leaf> {
        while let Some((node, labels)) = self.stack.pop() {
            match self.strategy.choose(&node.graph) {
                None => {
                    let mut labels = labels;
                    labels.sort();
                    return Some(Leaf { graph: node.graph, label: FLabel(labels) });
                }
                Some(r) => {
                    let ([c1, c2, c3], label) = node.split(&r);
                    let mut with = labels.clone();
                    with.push(label);
                    self.stack.push((c3, with));
                    self.stack.push((c2, labels.clone()));
                    self.stack.push((c1, labels));
                }
            }
        }
        None
    }
}

/// Streams the leaves of the tree of `g` under `strategy` without storing the tree.
pub fn leaves<'s>(g: &MultiGraph, strategy: &'s dyn Strategy) -> Leaves<'s> {
    Leaves { strategy, stack: vec![(Tracked::root(g), Vec::new())] }
}

/// Node of a materialized [`ReductionTree`].
#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    pub graph: MultiGraph,
    pub reduction: Option<Reduction>,
    pub children: Option<[usize; 3]>,
    pub parent: Option<usize>,
    /// Label on the edge from the parent, present on G3 children.
    pub label: Option<Vec<Edge>>,
}

/// Fully materialized reduction tree; node 0 is the root.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionTree {
    pub nodes: Vec<TreeNode>,
}

pub const TREE_NODE_LIMIT: usize = 3_000_000;

impl ReductionTree {
    pub fn root(&self) -> &MultiGraph {
        &self.nodes[0].graph
    }

    pub fn leaf_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].children.is_none())
    }

    /// Labels on the path from the root to node `id`.
    pub fn path_label(&self, mut id: usize) -> FLabel {
        let mut labels = Vec::new();
        while let Some(p) = self.nodes[id].parent {
            if let Some(l) = &self.nodes[id].label {
                labels.push(Chain::from(l.clone()));
            }
            id = p;
        }
        labels.sort();
        FLabel(labels)
    }

    pub fn leaves(&self) -> Vec<Leaf> {
        self.leaf_ids()
            .map(|i| Leaf { graph: self.nodes[i].graph.clone(), label: self.path_label(i) })
            .collect()
    }

    /// JSON dump: one object per node with graph hash, reduction and label.
    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| {
                serde_json::json!({
                    "id": id,
                    "graph": n.graph.hash_hex(),
                    "edges": n.graph.num_edges(),
                    "reduction": n.reduction,
                    "children": n.children,
                    "label": n.label,
                })
            })
            .collect();
        serde_json::json!({ "nodes": nodes })
    }
}

/// Builds the full tree of `g` under `strategy`.
pub fn build_tree(g: &MultiGraph, strategy: &dyn Strategy) -> Result<ReductionTree> {
    let mut nodes = vec![TreeNode {
        graph: g.clone(),
        reduction: None,
        children: None,
        parent: None,
        label: None,
    }];
    let mut work = vec![(0usize, Tracked::root(g))];
    while let Some((id, node)) = work.pop() {
        let Some(r) = strategy.choose(&node.graph) else { continue };
        let (kids, label) = node.split(&r);
        let base = nodes.len();
        if base + 3 > TREE_NODE_LIMIT {
            return Err(Error::Limit { what: "reduction tree nodes", size: base + 3, limit: TREE_NODE_LIMIT });
        }
        for (k, kid) in kids.into_iter().enumerate() {
            nodes.push(TreeNode {
                graph: kid.graph.clone(),
                reduction: None,
                children: None,
                parent: Some(id),
                label: (k == 2).then(|| label.to_vec()),
            });
            work.push((base + k, kid));
        }
        nodes[id].reduction = Some(r);
        nodes[id].children = Some([base, base + 1, base + 2]);
    }
    Ok(ReductionTree { nodes })
}

/// The special tree `T(G)`.
pub fn special_tree(g: &MultiGraph) -> Result<ReductionTree> {
    build_tree(g, &SpecialOrder)
}

/// Multiset of `(sequence, label)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LdMultiset {
    pub n: usize,
    pub entries: BTreeMap<(Vec<u32>, FLabel), u64>,
}

/// Aggregated multiset: sequence to multiplicity.
pub type SeqCounts = BTreeMap<Vec<u32>, u64>;

impl LdMultiset {
    pub fn from_leaves(n: usize, leaves: impl IntoIterator<Item = Leaf>) -> Self {
        let mut entries = BTreeMap::new();
        for leaf in leaves {
            *entries.entry((leaf.sequence(), leaf.label)).or_insert(0) += 1;
        }
        LdMultiset { n, entries }
    }

    /// Streams the tree of `g` under `strategy`.
    pub fn of(g: &MultiGraph, strategy: &dyn Strategy) -> Self {
        Self::from_leaves(g.n(), leaves(g, strategy))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn aggregated(&self) -> SeqCounts {
        let mut out = SeqCounts::new();
        for ((s, _), m) in &self.entries {
            *out.entry(s.clone()).or_insert(0) += m;
        }
        out
    }

    /// Sequences whose label has exactly `k` members.
    pub fn with_codim(&self, k: usize) -> SeqCounts {
        let mut out = SeqCounts::new();
        for ((s, f), m) in &self.entries {
            if f.len() == k {
                *out.entry(s.clone()).or_insert(0) += m;
            }
        }
        out
    }

    /// Sequences labeled by exactly `f`.
    pub fn with_label(&self, f: &FLabel) -> SeqCounts {
        let mut out = SeqCounts::new();
        for ((s, l), m) in &self.entries {
            if l == f {
                *out.entry(s.clone()).or_insert(0) += m;
            }
        }
        out
    }

    /// Number of leaves with `codim = k`, for every `k`.
    pub fn codim_profile(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for ((_, f), m) in &self.entries {
            if out.len() <= f.len() {
                out.resize(f.len() + 1, 0);
            }
            out[f.len()] += m;
        }
        out
    }

    /// `{sequence, F, multiplicity}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((s, f), m)| {
                serde_json::json!({
                    "sequence": s,
                    "F": f.to_string(),
                    "codim": f.len(),
                    "multiplicity": m,
                })
            })
            .collect();
        serde_json::Value::Array(v)
    }
}

/// Left-degree multiset of a materialized tree.
pub fn ld_multiset(tree: &ReductionTree) -> LdMultiset {
    LdMultiset::from_leaves(tree.root().n(), tree.leaves())
}

/// First place two aggregated multisets disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LdMismatch {
    pub left: String,
    pub right: String,
    pub sequence: Vec<u32>,
    pub left_count: u64,
    pub right_count: u64,
}

pub fn first_difference(a: &SeqCounts, b: &SeqCounts) -> Option<(Vec<u32>, u64, u64)> {
    a.keys()
        .chain(b.keys())
        .filter(|k| a.get(*k) != b.get(*k))
        .min()
        .map(|k| (k.clone(), a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0)))
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteSummary {
    pub route: String,
    pub sequences: u64,
    pub full_dimensional: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub holds: bool,
    pub routes: Vec<RouteSummary>,
    /// Special-tree `LD(G,F)` equals the first columns of `Sol_G(F)` for every `F`.
    pub labels_agree: bool,
    pub mismatch: Option<LdMismatch>,
}

/// Compares the aggregated multisets of every strategy, the special tree and
/// the union of first columns of the array solutions.
pub fn verify_theorem_a(g: &MultiGraph, strategies: &[&dyn Strategy]) -> Result<TheoremAReport> {
    let mut routes: Vec<(String, SeqCounts, Vec<u64>)> = Vec::new();
    for s in strategies {
        let ld = LdMultiset::of(g, *s);
        routes.push((s.name(), ld.aggregated(), ld.codim_profile()));
    }
    let special = LdMultiset::of(g, &SpecialOrder);
    routes.push(("special-tree".into(), special.aggregated(), special.codim_profile()));

    let mut from_arrays = SeqCounts::new();
    let mut labels_agree = true;
    let mut label_mismatch = None;
    for f in g.source_free_subsets()? {
        let cols = arrays::first_columns(g, &f)?;
        let tree_side = special.with_label(&FLabel::from_subset(&f));
        if cols != tree_side {
            labels_agree = false;
            if label_mismatch.is_none() {
                if let Some((s, l, r)) = first_difference(&tree_side, &cols) {
                    label_mismatch = Some(LdMismatch {
                        left: format!("special-tree F={f}"),
                        right: format!("arrays F={f}"),
                        sequence: s,
                        left_count: l,
                        right_count: r,
                    });
                }
            }
        }
        for (s, m) in cols {
            *from_arrays.entry(s).or_insert(0) += m;
        }
    }
    let profile = special_profile(&from_arrays, g.num_edges());
    routes.push(("arrays".into(), from_arrays, profile));

    let mut mismatch = None;
    let (name0, base, prof0) = &routes[0];
    for (name, counts, prof) in &routes[1..] {
        if let Some((s, l, r)) = first_difference(base, counts) {
            mismatch = Some(LdMismatch {
                left: name0.clone(),
                right: name.clone(),
                sequence: s,
                left_count: l,
                right_count: r,
            });
            break;
        }
        debug_assert_eq!(prof0, prof);
    }
    let mismatch = mismatch.or(label_mismatch);
    Ok(TheoremAReport {
        holds: mismatch.is_none() && labels_agree,
        routes: routes
            .iter()
            .map(|(name, counts, prof)| RouteSummary {
                route: name.clone(),
                sequences: counts.values().sum(),
                full_dimensional: prof.first().copied().unwrap_or(0),
            })
            .collect(),
        labels_agree,
        mismatch,
    })
}

fn special_profile(counts: &SeqCounts, edges: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for (s, m) in counts {
        let k = edges - s.iter().map(|&x| x as usize).sum::<usize>();
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] += m;
    }
    out
}
