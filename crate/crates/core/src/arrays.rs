//! Constraint arrays `Tri_G(F)`, their integer solutions, and the flow graphs
//! encoding them: `Gr(G)`, the augmented graph and the level graphs `G^(k)`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{enumerate_flows, kostant, kostant_capped};
use crate::graph::{Edge, EdgeSubset, MultiGraph};
use crate::reduction::SeqCounts;

/// Array variable `a_{level,column}^{(copy)}`, `copy >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Var {
    pub level: usize,
    pub column: usize,
    pub copy: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Link {
    Le,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainEntry {
    pub var: usize,
    pub shift: i64,
}

/// Row `j`: `left <= x_1 ~ x_2 ~ ... ~ a_{j,j} = constant - Σ subtract`,
/// where each `x` is a variable plus its shift and `~` is `links[t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrayRow {
    pub column: usize,
    pub left: i64,
    /// Entries left to right; the last one is the diagonal variable.
    pub chain: Vec<ChainEntry>,
    /// `links[0]` sits between `left` and `chain[0]`.
    pub links: Vec<Link>,
    pub constant: i64,
    pub subtract: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintArray {
    pub n: usize,
    pub vars: Vec<Var>,
    pub rows: Vec<ArrayRow>,
    /// Whether copy superscripts are printed (the graph has parallel edges).
    pub show_copies: bool,
}

/// One integer solution, indexed like [`ConstraintArray::vars`].
pub type Solution = Vec<i64>;

fn copies(g: &MultiGraph, j: usize, i: usize) -> usize {
    g.multiplicity(j, i).max(1)
}

/// Builds `Tri_G(F)`.
pub fn tri_array(g: &MultiGraph, f: &EdgeSubset) -> Result<ConstraintArray> {
    for e in f.iter() {
        if e.tail == 0 {
            return Err(Error::SourceEdgeInF(e.tail, e.head));
        }
        if !g.contains(e) {
            return Err(Error::UnknownEdge(e.tail, e.head, e.copy));
        }
    }
    let n = g.n();
    let mut vars = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    for j in 1..=n {
        for i in (j..=n).rev() {
            let k = if i == j { 1 } else { copies(g, j, i) };
            for m in 1..=k {
                index.insert((i, j, m), vars.len());
                vars.push(Var { level: i, column: j, copy: m });
            }
        }
    }
    let off = |i: usize, j: usize| f.offset(i, j) as i64;
    let mut rows = Vec::new();
    for j in 1..=n {
        let mut chain = Vec::new();
        let mut links = vec![Link::Le];
        for i in (j + 1..=n).rev() {
            let k = copies(g, j, i);
            for m in 1..=k {
                if m > 1 {
                    links.push(Link::Le);
                }
                chain.push(ChainEntry { var: index[&(i, j, m)], shift: off(i, j) });
            }
            links.push(if g.multiplicity(j, i) > 0 { Link::Le } else { Link::Eq });
        }
        chain.push(ChainEntry { var: index[&(j, j, 1)], shift: 0 });
        let restricted = g.edges().iter().filter(|e| e.head <= j).count() as i64;
        let constant = restricted - (1..j).map(|k| off(j, k)).sum::<i64>();
        rows.push(ArrayRow {
            column: j,
            left: off(n, j),
            chain,
            links,
            constant,
            subtract: (1..j).map(|k| index[&(j, k, 1)]).collect(),
        });
    }
    Ok(ConstraintArray { n, vars, rows, show_copies: !g.is_simple() })
}

impl ConstraintArray {
    fn var_latex(&self, v: usize) -> String {
        let x = self.vars[v];
        if self.show_copies {
            format!("a_{{{},\\,{}}}^{{({})}}", x.level, x.column, x.copy)
        } else {
            format!("a_{{{},\\,{}}}", x.level, x.column)
        }
    }

    fn var_plain(&self, v: usize) -> String {
        let x = self.vars[v];
        if self.show_copies {
            format!("a[{},{}]^({})", x.level, x.column, x.copy)
        } else {
            format!("a[{},{}]", x.level, x.column)
        }
    }

    fn render(&self, name: impl Fn(usize) -> String, le: &str, eq: &str, minus: &str) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                let mut s = row.left.to_string();
                for (entry, link) in row.chain.iter().zip(&row.links) {
                    s.push_str(if *link == Link::Le { le } else { eq });
                    s.push_str(&name(entry.var));
                    if entry.shift != 0 {
                        let _ = write!(s, "+{}", entry.shift);
                    }
                }
                let _ = write!(s, "{eq}{}", row.constant);
                for &v in &row.subtract {
                    s.push_str(minus);
                    s.push_str(&name(v));
                }
                s
            })
            .collect()
    }

    /// Rows in the LaTeX layout, e.g. `0\leq a_{4,\,2}\leq a_{3,\,2}\leq a_{2,\,2}=3-a_{2,\,1}`.
    pub fn to_latex(&self) -> Vec<String> {
        self.render(|v| self.var_latex(v), "\\leq ", "=", "-")
    }

    /// Rows as plain text, e.g. `0 <= a[4,2] <= a[3,2] <= a[2,2] = 3 - a[2,1]`.
    pub fn to_text(&self) -> Vec<String> {
        self.render(|v| self.var_plain(v), " <= ", " = ", " - ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "column": r.column,
                    "left": r.left,
                    "chain": r.chain.iter().map(|c| serde_json::json!({
                        "var": self.var_plain(c.var),
                        "shift": c.shift,
                    })).collect::<Vec<_>>(),
                    "links": r.links,
                    "constant": r.constant,
                    "subtract": r.subtract.iter().map(|&v| self.var_plain(v)).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "n": self.n, "rows": rows })
    }

    /// Indices of `a^{(1)}_{n,1}, ..., a^{(1)}_{n,n}`.
    pub fn first_column_vars(&self) -> Vec<usize> {
        (1..=self.n)
            .map(|j| {
                self.vars
                    .iter()
                    .position(|v| v.level == self.n && v.column == j && v.copy == 1)
                    .expect("first column variable")
            })
            .collect()
    }

    /// Calls `visit` on every solution: rows top to bottom, each row from the
    /// diagonal leftwards, each free value ascending.
    pub fn for_each_solution(&self, mut visit: impl FnMut(&Solution)) {
        let mut sol = vec![0i64; self.vars.len()];
        self.solve_row(0, &mut sol, &mut visit);
    }

    fn solve_row(&self, r: usize, sol: &mut Solution, visit: &mut impl FnMut(&Solution)) {
        let Some(row) = self.rows.get(r) else {
            visit(sol);
            return;
        };
        let diag = row.constant - row.subtract.iter().map(|&v| sol[v]).sum::<i64>();
        if diag < 0 {
            return;
        }
        let last = row.chain.len() - 1;
        sol[row.chain[last].var] = diag;
        self.solve_entry(r, last, sol, visit);
    }

    // `pos` has its value; fill `pos - 1` (or check the left constant).
    fn solve_entry(&self, r: usize, pos: usize, sol: &mut Solution, visit: &mut impl FnMut(&Solution)) {
        let row = &self.rows[r];
        let right = sol[row.chain[pos].var] + row.chain[pos].shift;
        if pos == 0 {
            if row.left <= right {
                self.solve_row(r + 1, sol, visit);
            }
            return;
        }
        let entry = row.chain[pos - 1];
        let hi = right - entry.shift;
        let lo = match row.links[pos] {
            Link::Le => 0,
            Link::Eq => hi,
        };
        for x in lo.max(0)..=hi {
            sol[entry.var] = x;
            self.solve_entry(r, pos - 1, sol, visit);
        }
    }

    /// `Sol_G(F)` in enumeration order.
    pub fn solutions(&self) -> Vec<Solution> {
        let mut out = Vec::new();
        self.for_each_solution(|s| out.push(s.clone()));
        out
    }

    /// Multiset of first columns.
    pub fn first_columns(&self) -> SeqCounts {
        let cols = self.first_column_vars();
        let mut out = SeqCounts::new();
        self.for_each_solution(|s| {
            *out.entry(cols.iter().map(|&v| s[v] as u32).collect()).or_insert(0) += 1;
        });
        out
    }

    /// Rows of a solution as `a_{i,j}^{(m)}` values, one vector per row in chain order.
    pub fn layout(&self, sol: &Solution) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| r.chain.iter().map(|c| sol[c.var]).collect())
            .collect()
    }
}

/// `ρ(Sol_G(F))` as a multiset.
pub fn first_columns(g: &MultiGraph, f: &EdgeSubset) -> Result<SeqCounts> {
    Ok(tri_array(g, f)?.first_columns())
}

/// `b_G^F`: `indeg(j) - outdeg_F(j)` for `j = 1..=n`, then `-#E(G \ F)`.
pub fn b_netflow(g: &MultiGraph, f: &EdgeSubset) -> Vec<i64> {
    let mut b: Vec<i64> = (1..=g.n())
        .map(|j| g.indeg(j) as i64 - f.outdeg(j) as i64)
        .collect();
    b.push(-((g.num_edges() - f.len()) as i64));
    b
}

/// Reads the values on the edges `(j, t)` of `tilde_without_source`.
pub fn psi(h: &MultiGraph, flow: &[u64]) -> Vec<u32> {
    let t = h.n();
    (0..t)
        .map(|j| flow[h.position(&Edge::new(j, t, 0)).expect("edge into t")] as u32)
        .collect()
}

/// `ψ` of all integer flows on `G̃\{s,0}` with netflow `b_G^F`.
pub fn psi_image(g: &MultiGraph, f: &EdgeSubset) -> Result<SeqCounts> {
    let h = g.tilde_without_source();
    let mut out = SeqCounts::new();
    for flow in enumerate_flows(&h, &b_netflow(g, f), None)? {
        *out.entry(psi(&h, &flow.0)).or_insert(0) += 1;
    }
    Ok(out)
}

/// `Gr(G)` with the bookkeeping to read array solutions off its flows.
#[derive(Clone, Debug)]
pub struct GrEncoding {
    pub graph: MultiGraph,
    /// Vertex names such as `v[3,1]^(2)`, in vertex order.
    pub names: Vec<String>,
    /// The a-edge carrying each array variable, indexed like `Tri_G(·).vars`.
    pub var_edges: Vec<Edge>,
    pub z_edges: Vec<Edge>,
    source: MultiGraph,
    first_copy_vertex: Vec<(usize, usize, usize)>,
    diagonal: Vec<usize>,
}

/// Builds `Gr(G)`. Parallel copies of `(j,i)` become a chain of vertices, each
/// with its own z-edge to `v_{i,i}`.
pub fn gr_graph(g: &MultiGraph) -> GrEncoding {
    let n = g.n();
    let template = tri_array(g, &EdgeSubset::empty()).expect("empty F is valid");
    let mut names = Vec::new();
    let mut vertex_of_var = vec![0usize; template.vars.len()];
    let mut first_copy_vertex = Vec::new();
    let mut diagonal = vec![0usize; n + 1];
    let mut columns: Vec<Vec<usize>> = Vec::new();
    for j in 1..=n {
        let mut col = Vec::new();
        let diag = template
            .vars
            .iter()
            .position(|v| v.level == j && v.column == j)
            .expect("diagonal variable");
        diagonal[j] = names.len();
        vertex_of_var[diag] = names.len();
        col.push(names.len());
        names.push(format!("v[{j},{j}]"));
        for i in j + 1..=n {
            let k = copies(g, j, i);
            for m in (1..=k).rev() {
                let var = template
                    .vars
                    .iter()
                    .position(|v| *v == Var { level: i, column: j, copy: m })
                    .expect("variable");
                if m == k {
                    first_copy_vertex.push((names.len(), i, j));
                }
                vertex_of_var[var] = names.len();
                col.push(names.len());
                names.push(if k > 1 { format!("v[{i},{j}]^({m})") } else { format!("v[{i},{j}]") });
            }
        }
        columns.push(col);
    }
    let last = names.len();
    names.push(format!("v[{},{}]", n + 1, n + 1));
    let mut pairs = Vec::new();
    let mut var_pairs = vec![(0, 0); template.vars.len()];
    for col in &columns {
        for (p, &v) in col.iter().enumerate() {
            let next = col.get(p + 1).copied().unwrap_or(last);
            let var = vertex_of_var.iter().position(|&x| x == v).expect("vertex carries a variable");
            var_pairs[var] = (v, next);
            pairs.push((v, next));
        }
    }
    let mut z_pairs = Vec::new();
    for (var, x) in template.vars.iter().enumerate() {
        if x.level > x.column && g.multiplicity(x.column, x.level) > 0 {
            z_pairs.push((vertex_of_var[var], diagonal[x.level]));
        }
    }
    pairs.extend(z_pairs.iter().copied());
    let graph = MultiGraph::new(last, pairs).expect("Gr(G) edges go forward");
    let as_edge = |(t, h): (usize, usize)| Edge::new(t, h, 0);
    GrEncoding {
        graph,
        names,
        var_edges: var_pairs.into_iter().map(as_edge).collect(),
        z_edges: z_pairs.into_iter().map(as_edge).collect(),
        source: g.clone(),
        first_copy_vertex,
        diagonal,
    }
}

impl GrEncoding {
    /// `a_G^F`.
    pub fn netflow(&self, f: &EdgeSubset) -> Vec<i64> {
        let g = &self.source;
        let n = g.n();
        let mut a = vec![0i64; self.graph.vertex_count()];
        for j in 1..=n {
            a[self.diagonal[j]] = g.indeg(j) as i64;
        }
        for &(v, i, j) in &self.first_copy_vertex {
            a[v] = f.offset(i - 1, j) as i64 - f.offset(i, j) as i64;
        }
        let shifted: i64 = (1..=n).map(|k| f.offset(n, k) as i64).sum();
        *a.last_mut().expect("final vertex") = shifted - g.num_edges() as i64;
        a
    }

    /// Array values read off a flow on `Gr(G)`.
    pub fn project(&self, flow: &[u64]) -> Solution {
        self.var_edges
            .iter()
            .map(|e| flow[self.graph.position(e).expect("a-edge")] as i64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EncodingReport {
    pub f: String,
    pub sol_count: u64,
    pub gr_count: u64,
    pub tilde_count: u64,
    /// Projections of flows on `Gr(G)` are exactly `Sol_G(F)`.
    pub projections_match: bool,
    /// `ρ(Sol_G(F)) = ψ(flows on G̃\{s,0})` as multisets.
    pub psi_match: bool,
    pub holds: bool,
    pub counterexample: Option<String>,
}

/// Checks `|Sol_G(F)| = K_{Gr(G)}(a_G^F) = K_{G̃\{s,0}}(b_G^F)` and the two projections.
pub fn verify_encoding_chain(g: &MultiGraph, f: &EdgeSubset) -> Result<EncodingReport> {
    let tri = tri_array(g, f)?;
    let sols = tri.solutions();
    let gr = gr_graph(g);
    let a = gr.netflow(f);
    let gr_count = kostant(&gr.graph, &a)?;
    let tilde_count = kostant(&g.tilde_without_source(), &b_netflow(g, f))?;

    let mut projected: Vec<Solution> = enumerate_flows(&gr.graph, &a, None)?
        .map(|fl| gr.project(&fl.0))
        .collect();
    projected.sort();
    let mut sorted = sols.clone();
    sorted.sort();
    let projections_match = projected == sorted;

    let cols = tri.first_columns();
    let image = psi_image(g, f)?;
    let psi_match = cols == image;

    let sol_count = sols.len() as u64;
    let counts_ok = sol_count == gr_count && gr_count == tilde_count;
    let counterexample = if !counts_ok {
        Some(format!("counts differ: Sol {sol_count}, Gr {gr_count}, tilde {tilde_count}"))
    } else if !projections_match {
        let extra = projected.iter().find(|p| !sorted.contains(p)).or_else(|| sorted.iter().find(|s| !projected.contains(s)));
        Some(format!("solution sets differ at {extra:?}"))
    } else if !psi_match {
        let d = crate::reduction::first_difference(&cols, &image);
        Some(format!("first-column multisets differ at {d:?}"))
    } else {
        None
    };
    Ok(EncodingReport {
        f: f.to_string(),
        sol_count,
        gr_count,
        tilde_count,
        projections_match,
        psi_match,
        holds: counterexample.is_none(),
        counterexample,
    })
}

/// `G^aug` or `G^(k)` with its edge classes.
#[derive(Clone, Debug)]
pub struct AugGraph {
    pub graph: MultiGraph,
    /// a-edge of `j = 1..=n` at index `j - 1`.
    pub a_edges: Vec<Edge>,
    /// `(y-edge, edge of G it stands for)`.
    pub y_edges: Vec<(Edge, Edge)>,
    /// `(z-edge, edge of G it stands for)`.
    pub z_edges: Vec<(Edge, Edge)>,
}

impl AugGraph {
    /// Unit-capacity edges.
    pub fn caps(&self) -> BTreeSet<Edge> {
        self.y_edges.iter().map(|(y, _)| *y).collect()
    }

    /// `a`-edge values of a flow.
    pub fn psi(&self, flow: &[u64]) -> Vec<u32> {
        self.a_edges
            .iter()
            .map(|e| flow[self.graph.position(e).expect("a-edge")] as u32)
            .collect()
    }
}

fn build_aug(g: &MultiGraph, t: usize, y_head: usize) -> AugGraph {
    let n = g.n();
    let mut edges = Vec::new();
    let a_edges: Vec<Edge> = (0..n).map(|j| Edge::new(j, t, 0)).collect();
    edges.extend(a_edges.iter().copied());
    let mut y_edges = Vec::new();
    let mut z_edges = Vec::new();
    for e in g.edges().iter().filter(|e| e.tail != 0) {
        let next = edges
            .iter()
            .filter(|x: &&Edge| x.tail == e.tail - 1 && x.head == y_head)
            .count() as u32;
        let y = Edge::new(e.tail - 1, y_head, next);
        edges.push(y);
        y_edges.push((y, *e));
        let z = Edge::new(e.tail - 1, e.head - 1, e.copy);
        edges.push(z);
        z_edges.push((z, *e));
    }
    AugGraph {
        graph: MultiGraph::from_edges(t, edges).expect("augmented edges are valid"),
        a_edges,
        y_edges,
        z_edges,
    }
}

/// `G^aug` on `[n] ∪ {t}`, relabeled `j -> j - 1`, `t -> n`; netflow is `b_G^∅`.
pub fn aug_graph(g: &MultiGraph) -> AugGraph {
    build_aug(g, g.n(), g.n())
}

/// `G^(k)` on `[1,n+1] ∪ {t}`, relabeled `j -> j - 1`, `t -> n + 1`, with its netflow
/// `(indeg(1), ..., indeg(n), -k, k - #E(G))`.
pub fn level_graph(g: &MultiGraph, k: i64) -> Result<(AugGraph, Vec<i64>)> {
    if k < 0 {
        return Err(Error::Parse(format!("level k must be nonnegative, got {k}")));
    }
    let n = g.n();
    let aug = build_aug(g, n + 1, n);
    let mut b: Vec<i64> = (1..=n).map(|j| g.indeg(j) as i64).collect();
    b.push(-k);
    b.push(k - g.num_edges() as i64);
    Ok((aug, b))
}

/// Multiset of `ψ` over capacitated flows on `G^aug` with netflow `b_G^∅`.
pub fn aug_projection(g: &MultiGraph) -> Result<SeqCounts> {
    let aug = aug_graph(g);
    let caps = aug.caps();
    let b = b_netflow(g, &EdgeSubset::empty());
    let mut out = SeqCounts::new();
    for flow in enumerate_flows(&aug.graph, &b, Some(&caps))? {
        *out.entry(aug.psi(&flow.0)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Multiset of `ψ` over capacitated flows on `G^(k)`.
pub fn level_projection(g: &MultiGraph, k: i64) -> Result<SeqCounts> {
    let (aug, b) = level_graph(g, k)?;
    let caps = aug.caps();
    let mut out = SeqCounts::new();
    for flow in enumerate_flows(&aug.graph, &b, Some(&caps))? {
        *out.entry(aug.psi(&flow.0)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Number of capacitated flows on `G^aug`.
pub fn aug_count(g: &MultiGraph) -> Result<u64> {
    let aug = aug_graph(g);
    kostant_capped(&aug.graph, &b_netflow(g, &EdgeSubset::empty()), Some(&aug.caps()))
}
