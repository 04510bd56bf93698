//! Directed multigraphs on `0..=n` with edges oriented from smaller to larger vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One copy of an edge `tail -> head`. Parallel edges differ in `copy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub copy: u32,
}

impl Edge {
    pub const fn new(tail: usize, head: usize, copy: u32) -> Self {
        Edge { tail, head, copy }
    }

    pub fn length(&self) -> usize {
        self.head - self.tail
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            write!(f, "({},{})", self.tail, self.head)
        } else {
            write!(f, "({},{})#{}", self.tail, self.head, self.copy)
        }
    }
}

/// Loopless directed multigraph on vertices `0..=n`.
///
/// Edges are kept sorted by `(tail, head, copy)`. Values are immutable; every
/// operation returns a new graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
}

/// Vertex names used by [`MultiGraph::tilde`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexLabel {
    Source,
    Vertex(usize),
    Sink,
}

/// A graph together with the original name of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: MultiGraph,
    pub labels: Vec<VertexLabel>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl MultiGraph {
    /// Graph on `0..=n` without edges.
    pub fn empty(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new() }
    }

    /// Builds a graph from `(tail, head)` pairs; parallel pairs get copy ids in input order.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut next: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        let mut edges = Vec::new();
        for (t, h) in pairs {
            let c = next.entry((t, h)).or_insert(0);
            edges.push(Edge::new(t, h, *c));
            *c += 1;
        }
        Self::from_edges(n, edges)
    }

    /// Builds a graph from explicit edge copies.
    pub fn from_edges(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if e.tail >= e.head || e.head > n {
                return Err(Error::BadEdge { tail: e.tail, head: e.head, n });
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].tail, w[0].head, w[0].copy));
            }
        }
        Ok(MultiGraph { n, edges })
    }

    /// Builds a graph from `(tail, head, multiplicity)` triples.
    pub fn with_multiplicities(
        n: usize,
        triples: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut pairs = Vec::new();
        for (t, h, m) in triples {
            for _ in 0..m {
                pairs.push((t, h));
            }
        }
        Self::new(n, pairs)
    }

    /// Largest vertex label.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn position(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    pub fn indeg(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    pub fn outdeg(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v).count()
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.head == v)
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.tail == v)
    }

    /// Number of parallel copies of `tail -> head`.
    pub fn multiplicity(&self, tail: usize, head: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.tail == tail && e.head == head)
            .count()
    }

    /// Number of edges leaving the vertex set `s`.
    pub fn outdeg_set(&self, s: &[usize]) -> usize {
        let inside: BTreeSet<usize> = s.iter().copied().collect();
        self.edges
            .iter()
            .filter(|e| inside.contains(&e.tail) && !inside.contains(&e.head))
            .count()
    }

    /// [`outdeg_set`](Self::outdeg_set) with the set given as a bit mask over vertices.
    pub fn outdeg_mask(&self, mask: u64) -> usize {
        self.edges
            .iter()
            .filter(|e| mask >> e.tail & 1 == 1 && mask >> e.head & 1 == 0)
            .count()
    }

    pub fn is_simple(&self) -> bool {
        self.edges
            .windows(2)
            .all(|w| (w[0].tail, w[0].head) != (w[1].tail, w[1].head))
    }

    /// Edges not incident to vertex 0.
    pub fn non_source_edges(&self) -> Vec<Edge> {
        self.edges.iter().copied().filter(|e| e.tail != 0).collect()
    }

    /// True when the underlying undirected multigraph has no cycle
    /// (parallel edges count as a cycle).
    pub fn is_forest(&self) -> bool {
        forest(self.n + 1, self.edges.iter().map(|e| (e.tail, e.head)))
    }

    /// Like [`is_forest`](Self::is_forest) but ignoring edges out of vertex 0.
    pub fn is_forest_without_source(&self) -> bool {
        forest(
            self.n + 1,
            self.edges.iter().filter(|e| e.tail != 0).map(|e| (e.tail, e.head)),
        )
    }

    /// Copy of `self` with copy ids renumbered `0..` within every parallel class.
    pub fn canonical(&self) -> MultiGraph {
        MultiGraph::new(self.n, self.edges.iter().map(|e| (e.tail, e.head)))
            .expect("edges already valid")
    }

    /// Graph with `remove` deleted and one new copy of each pair in `add`.
    /// Returns the new graph and the copies that were created.
    pub fn replace(&self, remove: &[Edge], add: &[(usize, usize)]) -> Result<(MultiGraph, Vec<Edge>)> {
        let mut edges = self.edges.clone();
        for r in remove {
            match edges.binary_search(r) {
                Ok(p) => {
                    edges.remove(p);
                }
                Err(_) => return Err(Error::UnknownEdge(r.tail, r.head, r.copy)),
            }
        }
        let mut created = Vec::new();
        for &(t, h) in add {
            let copy = self
                .edges
                .iter()
                .chain(created.iter())
                .filter(|e| e.tail == t && e.head == h)
                .map(|e| e.copy + 1)
                .max()
                .unwrap_or(0);
            let e = Edge::new(t, h, copy);
            created.push(e);
            edges.push(e);
        }
        Ok((MultiGraph::from_edges(self.n, edges)?, created))
    }

    /// The graph on `[0,n] ∪ {s,t}` with extra edges `s -> i` and `i -> t`.
    ///
    /// Vertex `s` becomes 0, vertex `i` becomes `i + 1` and `t` becomes `n + 2`.
    pub fn tilde(&self) -> Relabeled {
        let t = self.n + 2;
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(e.tail + 1, e.head + 1, e.copy))
            .collect();
        for i in 0..=self.n {
            edges.push(Edge::new(0, i + 1, 0));
            edges.push(Edge::new(i + 1, t, 0));
        }
        edges.sort_unstable();
        let mut labels = vec![VertexLabel::Source];
        labels.extend((0..=self.n).map(VertexLabel::Vertex));
        labels.push(VertexLabel::Sink);
        Relabeled { graph: MultiGraph { n: t, edges }, labels }
    }

    /// `tilde(G)` with `s` and `0` deleted: vertices `1..=n` become `0..n`, `t` becomes `n`.
    pub fn tilde_without_source(&self) -> MultiGraph {
        let n = self.n;
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| e.tail != 0)
            .map(|e| Edge::new(e.tail - 1, e.head - 1, e.copy))
            .collect();
        for j in 0..n {
            edges.push(Edge::new(j, n, 0));
        }
        edges.sort_unstable();
        MultiGraph { n, edges }
    }

    /// Deletes the given vertices with their edges and relabels the rest in order.
    pub fn delete_vertices(&self, vs: &[usize]) -> Result<MultiGraph> {
        for &v in vs {
            if v > self.n {
                return Err(Error::UnknownVertex { v, n: self.n });
            }
        }
        let gone: BTreeSet<usize> = vs.iter().copied().collect();
        if gone.len() == self.n + 1 {
            return Err(Error::Parse("cannot delete every vertex".into()));
        }
        let map = |v: usize| v - gone.range(..v).count();
        let edges = self
            .edges
            .iter()
            .filter(|e| !gone.contains(&e.tail) && !gone.contains(&e.head))
            .map(|e| Edge::new(map(e.tail), map(e.head), e.copy))
            .collect();
        MultiGraph::from_edges(self.n - gone.len(), edges)
    }

    /// Contracts `e`, deleting loops created by its parallel copies.
    ///
    /// The merged vertex sits at the head's position when that keeps every edge
    /// oriented forward, otherwise at the tail's position.
    pub fn contract_edge(&self, e: &Edge) -> Result<MultiGraph> {
        if !self.contains(e) {
            return Err(Error::UnknownEdge(e.tail, e.head, e.copy));
        }
        let (i, j) = (e.tail, e.head);
        let at_head = self.out_edges(i).all(|f| f.head >= j);
        let at_tail = self.in_edges(j).all(|f| f.tail <= i);
        let (keep, gone) = if at_head {
            (j, i)
        } else if at_tail {
            (i, j)
        } else {
            return Err(Error::ContractionOrientation(i, j));
        };
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        let mut edges = Vec::new();
        for f in &self.edges {
            let mv = |v: usize| if v == gone { keep } else { v };
            let (t, h) = (mv(f.tail), mv(f.head));
            if t == h {
                continue;
            }
            let (t, h) = (t - usize::from(t > gone), h - usize::from(h > gone));
            let c = counts.entry((t, h)).or_insert(0);
            edges.push(Edge::new(t, h, *c));
            *c += 1;
        }
        MultiGraph::from_edges(self.n - 1, edges)
    }

    /// Induced subgraph on `0..=i`.
    pub fn restrict(&self, i: usize) -> Result<MultiGraph> {
        if i > self.n {
            return Err(Error::UnknownVertex { v: i, n: self.n });
        }
        let edges = self.edges.iter().copied().filter(|e| e.head <= i).collect();
        Ok(MultiGraph { n: i, edges })
    }

    /// Mirror image: `(i, j) -> (n - j, n - i)`.
    pub fn mirror(&self) -> MultiGraph {
        let n = self.n;
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(n - e.head, n - e.tail, e.copy))
            .collect();
        edges.sort_unstable();
        MultiGraph { n, edges }
    }

    /// Vertices reachable from `i` by a directed path, `i` included.
    pub fn increasing_reach(&self, i: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([i]);
        let mut queue = VecDeque::from([i]);
        while let Some(v) = queue.pop_front() {
            for e in self.out_edges(v) {
                if seen.insert(e.head) {
                    queue.push_back(e.head);
                }
            }
        }
        seen
    }

    /// `(tail, head, multiplicity)` triples in canonical order.
    pub fn multiplicity_triples(&self) -> Vec<(usize, usize, u32)> {
        let mut out: Vec<(usize, usize, u32)> = Vec::new();
        for e in &self.edges {
            match out.last_mut() {
                Some(last) if (last.0, last.1) == (e.tail, e.head) => last.2 += 1,
                _ => out.push((e.tail, e.head, 1)),
            }
        }
        out
    }

    /// Text form: `n` on the first line, then `tail head [mult]` per line.
    /// Copy ids are not recorded.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (t, h, m) in self.multiplicity_triples() {
            if m == 1 {
                s.push_str(&format!("{t} {h}\n"));
            } else {
                s.push_str(&format!("{t} {h} {m}\n"));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<MultiGraph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph description".into()))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
        let mut triples = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse(format!("bad number {s:?} in {line:?}")))
            };
            match parts.len() {
                2 => triples.push((num(parts[0])?, num(parts[1])?, 1)),
                3 => triples.push((num(parts[0])?, num(parts[1])?, num(parts[2])? as u32)),
                _ => return Err(Error::Parse(format!("bad edge line {line:?}"))),
            }
        }
        MultiGraph::with_multiplicities(n, triples)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson { n: self.n, edges: self.multiplicity_triples() })
            .expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<MultiGraph> {
        let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        MultiGraph::with_multiplicities(g.n, g.edges)
    }

    /// Parses JSON, the text format, or the one-line form `n; t h [m]; ...`.
    pub fn parse(s: &str) -> Result<MultiGraph> {
        let s = s.trim();
        if s.starts_with('{') {
            MultiGraph::from_json(s)
        } else if s.contains('\n') {
            MultiGraph::from_text(s)
        } else {
            MultiGraph::from_text(&s.replace(';', "\n"))
        }
    }

    /// One-line form accepted by [`parse`](Self::parse).
    pub fn to_inline(&self) -> String {
        self.to_text().trim_end().replace('\n', ";")
    }

    /// Hex SHA-256 of the text form.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Every subset of the edges not incident to 0, as [`EdgeSubset`]s.
    pub fn source_free_subsets(&self) -> Result<Vec<EdgeSubset>> {
        let pool = self.non_source_edges();
        if pool.len() > 20 {
            return Err(Error::Limit { what: "edges outside the source", size: pool.len(), limit: 20 });
        }
        Ok((0u32..1 << pool.len())
            .map(|mask| {
                EdgeSubset(
                    pool.iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, e)| *e)
                        .collect(),
                )
            })
            .collect())
    }
}

fn forest(vertices: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_inline())
    }
}

impl Serialize for MultiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson { n: self.n, edges: self.multiplicity_triples() }.serialize(s)
    }
}

/// A set of edge copies avoiding vertex 0, used as the label set `F`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSubset(pub BTreeSet<Edge>);

impl EdgeSubset {
    pub fn empty() -> Self {
        EdgeSubset(BTreeSet::new())
    }

    /// Validates that every member is an edge of `g` with nonzero tail.
    pub fn for_graph(g: &MultiGraph, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            if !g.contains(&e) {
                return Err(Error::UnknownEdge(e.tail, e.head, e.copy));
            }
            if e.tail == 0 {
                return Err(Error::SourceEdgeInF(e.tail, e.head));
            }
            set.insert(e);
        }
        Ok(EdgeSubset(set))
    }

    /// Picks the first `count` copies of every listed pair.
    pub fn from_pairs(g: &MultiGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut chosen = Vec::new();
        for &(t, h) in pairs {
            let e = g
                .edges()
                .iter()
                .find(|e| e.tail == t && e.head == h && !chosen.contains(*e))
                .ok_or(Error::UnknownEdge(t, h, 0))?;
            chosen.push(*e);
        }
        Self::for_graph(g, chosen)
    }

    /// Parses `"t-h,t-h,..."` (repeat a pair to take another copy).
    pub fn parse(g: &MultiGraph, s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("bad edge {item:?}, expected t-h")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad edge {item:?}")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad edge {item:?}")))?;
            pairs.push((a, b));
        }
        Self::from_pairs(g, &pairs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.0.iter()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    /// Number of members with tail `j`.
    pub fn outdeg(&self, j: usize) -> usize {
        self.0.iter().filter(|e| e.tail == j).count()
    }

    /// `f_{i,j}`: members `(j,k)` with `k <= i`.
    pub fn offset(&self, i: usize, j: usize) -> usize {
        self.0.iter().filter(|e| e.tail == j && e.head <= i).count()
    }
}

impl fmt::Display for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> MultiGraph {
        MultiGraph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn path() -> MultiGraph {
        MultiGraph::new(2, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(path().indeg(1), 1);
        assert_eq!(example().indeg(2), 2);
        let g = MultiGraph::new(1, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.indeg(1), 2);
        assert_eq!(g.edges()[1], Edge::new(0, 1, 1));
    }

    #[test]
    fn outdeg_of_sets() {
        assert_eq!(path().outdeg_set(&[2]), 0);
        assert_eq!(path().outdeg_set(&[1]), 1);
        assert_eq!(example().outdeg_set(&[3, 4]), 0);
        assert_eq!(example().outdeg_mask(0b11000), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(MultiGraph::new(2, [(1, 1)]).is_err());
        assert!(MultiGraph::new(2, [(2, 1)]).is_err());
        assert!(MultiGraph::new(2, [(0, 3)]).is_err());
        let e = Edge::new(0, 1, 0);
        assert_eq!(
            MultiGraph::from_edges(1, vec![e, e]),
            Err(Error::DuplicateEdge(0, 1, 0))
        );
    }

    #[test]
    fn tilde_shapes() {
        let g = MultiGraph::empty(0).tilde();
        assert_eq!(g.graph.edges(), &[Edge::new(0, 1, 0), Edge::new(1, 2, 0)]);
        assert_eq!(g.labels, vec![VertexLabel::Source, VertexLabel::Vertex(0), VertexLabel::Sink]);
        let g = MultiGraph::new(1, [(0, 1)]).unwrap().tilde().graph;
        assert_eq!(g.num_edges(), 5);
        assert_eq!(example().tilde().graph.num_edges(), 6 + 2 * 5);
    }

    #[test]
    fn tilde_without_source_path() {
        let h = path().tilde_without_source();
        assert_eq!(h.n(), 2);
        assert_eq!(
            h.edges(),
            &[Edge::new(0, 1, 0), Edge::new(0, 2, 0), Edge::new(1, 2, 0)]
        );
    }

    #[test]
    fn contract_and_delete() {
        let c = path().contract_edge(&Edge::new(0, 1, 0)).unwrap();
        assert_eq!(c, MultiGraph::new(1, [(0, 1)]).unwrap());
        let d = example().delete_vertices(&[0]).unwrap();
        assert_eq!(d, MultiGraph::new(3, [(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap());
        let g = MultiGraph::new(2, [(0, 1), (0, 1), (1, 2)]).unwrap();
        let c = g.contract_edge(&Edge::new(0, 1, 0)).unwrap();
        assert_eq!(c, MultiGraph::new(1, [(0, 1)]).unwrap());
        assert!(path().contract_edge(&Edge::new(0, 2, 0)).is_err());
    }

    #[test]
    fn restrict_and_mirror() {
        let r = example().restrict(2).unwrap();
        assert_eq!(r, MultiGraph::new(2, [(0, 1), (0, 2), (1, 2)]).unwrap());
        assert_eq!(path().mirror(), path());
        let g = MultiGraph::new(3, [(0, 1), (0, 3), (1, 2)]).unwrap();
        assert_eq!(g.mirror(), MultiGraph::new(3, [(1, 2), (0, 3), (2, 3)]).unwrap());
    }

    #[test]
    fn reach() {
        assert_eq!(path().increasing_reach(1), BTreeSet::from([1, 2]));
        assert_eq!(path().increasing_reach(2), BTreeSet::from([2]));
        assert_eq!(example().increasing_reach(2), BTreeSet::from([2, 3, 4]));
    }

    #[test]
    fn text_and_json_roundtrip() {
        let g = MultiGraph::new(3, [(0, 1), (1, 2), (0, 1), (2, 3)]).unwrap();
        assert_eq!(g.to_text(), "3\n0 1 2\n1 2\n2 3\n");
        assert_eq!(MultiGraph::from_text(&g.to_text()).unwrap(), g);
        let js = g.to_json().to_string();
        assert_eq!(MultiGraph::from_json(&js).unwrap(), g);
        assert_eq!(MultiGraph::parse(&g.to_inline()).unwrap(), g);
        assert_eq!(MultiGraph::parse("3; 0 1 2; 1 2; 2 3").unwrap(), g);
    }

    #[test]
    fn forests() {
        assert!(path().is_forest());
        assert!(!example().is_forest());
        assert!(!MultiGraph::new(1, [(0, 1), (0, 1)]).unwrap().is_forest());
        let tri = MultiGraph::new(2, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(tri.is_forest_without_source());
    }

    #[test]
    fn edge_subsets() {
        let g = example();
        let f = EdgeSubset::parse(&g, "2-3,2-4,3-4").unwrap();
        assert_eq!(f.offset(3, 2), 1);
        assert_eq!(f.offset(4, 2), 2);
        assert_eq!(f.outdeg(3), 1);
        assert!(EdgeSubset::parse(&g, "0-1").is_err());
        assert!(EdgeSubset::parse(&g, "1-4").is_err());
        assert_eq!(g.source_free_subsets().unwrap().len(), 16);
    }
}
