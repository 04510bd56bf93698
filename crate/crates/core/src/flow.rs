//! Integer flows, Kostant partition functions and flow feasibility.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, MultiGraph};

/// Net flow per vertex: outflow minus inflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NetflowVector(pub Vec<i64>);

impl NetflowVector {
    /// Parses comma separated integers.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad netflow entry {x:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(NetflowVector)
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for NetflowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Flow values aligned with the edges of the graph they were computed on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerFlow(pub Vec<u64>);

impl IntegerFlow {
    pub fn on(&self, g: &MultiGraph, e: &Edge) -> Option<u64> {
        g.position(e).map(|p| self.0[p])
    }

    /// Checks conservation and unit capacities.
    pub fn is_valid(&self, g: &MultiGraph, a: &[i64], caps: Option<&BTreeSet<Edge>>) -> bool {
        let mut net = vec![0i64; g.vertex_count()];
        for (e, &x) in g.edges().iter().zip(&self.0) {
            if caps.is_some_and(|c| c.contains(e)) && x > 1 {
                return false;
            }
            net[e.tail] += x as i64;
            net[e.head] -= x as i64;
        }
        net == a
    }
}

fn check_netflow(g: &MultiGraph, a: &[i64]) -> Result<()> {
    if a.len() != g.vertex_count() {
        return Err(Error::NetflowLength { expected: g.vertex_count(), got: a.len() });
    }
    Ok(())
}

/// Compositions of `total` into slots with upper bounds, lexicographically ascending.
#[derive(Clone, Debug)]
struct Composer {
    total: u64,
    caps: Vec<u64>,
    cur: Option<Vec<u64>>,
    exhausted: bool,
}

impl Composer {
    fn new(total: Option<u64>, caps: Vec<u64>) -> Self {
        Composer { total: total.unwrap_or(0), caps, cur: None, exhausted: total.is_none() }
    }

    fn fill(caps: &[u64], slots: &mut [u64], mut rem: u64) -> bool {
        for (s, c) in slots.iter_mut().zip(caps).rev() {
            *s = rem.min(*c);
            rem -= *s;
        }
        rem == 0
    }

    fn advance(&mut self) -> Option<&[u64]> {
        if self.exhausted {
            return None;
        }
        let k = self.caps.len();
        match &mut self.cur {
            None => {
                let mut c = vec![0; k];
                if !Self::fill(&self.caps, &mut c, self.total) {
                    self.exhausted = true;
                    return None;
                }
                self.cur = Some(c);
            }
            Some(c) => {
                let mut suffix = 0u64;
                let mut moved = false;
                for i in (0..k.saturating_sub(1)).rev() {
                    suffix += c[i + 1];
                    if suffix >= 1 && c[i] < self.caps[i] {
                        c[i] += 1;
                        Self::fill(&self.caps[i + 1..], &mut c[i + 1..], suffix - 1);
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    self.exhausted = true;
                    return None;
                }
            }
        }
        self.cur.as_deref()
    }
}

#[derive(Clone, Debug)]
struct Layout {
    a: Vec<i64>,
    out: Vec<Vec<usize>>,
    heads: Vec<usize>,
    cap: Vec<u64>,
    max_out: Vec<Option<u64>>,
}

impl Layout {
    fn new(g: &MultiGraph, a: &[i64], caps: Option<&BTreeSet<Edge>>) -> Self {
        let nv = g.vertex_count();
        let mut out = vec![Vec::new(); nv];
        let mut cap = Vec::with_capacity(g.num_edges());
        let mut max_out = vec![Some(0u64); nv];
        for (k, e) in g.edges().iter().enumerate() {
            out[e.tail].push(k);
            let c = if caps.is_some_and(|c| c.contains(e)) { 1 } else { u64::MAX };
            cap.push(c);
            max_out[e.tail] = match max_out[e.tail] {
                Some(m) if c != u64::MAX => Some(m + 1),
                _ => None,
            };
        }
        Layout {
            a: a.to_vec(),
            out,
            heads: g.edges().iter().map(|e| e.head).collect(),
            cap,
            max_out,
        }
    }

    fn composer(&self, v: usize, inflow: &[i64]) -> Composer {
        let r = self.a[v] + inflow[v];
        let caps = self.out[v].iter().map(|&k| self.cap[k]).collect();
        Composer::new(u64::try_from(r).ok(), caps)
    }

    fn apply(&self, v: usize, comp: &[u64], inflow: &mut [i64], sign: i64) {
        for (&k, &x) in self.out[v].iter().zip(comp) {
            inflow[self.heads[k]] += sign * x as i64;
        }
    }

    fn heads_ok(&self, v: usize, inflow: &[i64]) -> bool {
        self.out[v].iter().all(|&k| {
            let w = self.heads[k];
            match self.max_out[w] {
                Some(m) => self.a[w] + inflow[w] <= m as i64,
                None => true,
            }
        })
    }
}

/// Stream of integer flows in lexicographic order of the edge vector.
pub struct Flows {
    layout: Layout,
    inflow: Vec<i64>,
    values: Vec<u64>,
    stack: Vec<(usize, Composer, bool)>,
    started: bool,
    diagnostic: Option<String>,
}

impl Flows {
    /// Why the stream is empty without search, if it is.
    pub fn diagnostic(&self) -> Option<&str> {
        self.diagnostic.as_deref()
    }
}

impl Iterator for Flows {
    type Item = IntegerFlow;

    fn next(&mut self) -> Option<IntegerFlow> {
        if self.diagnostic.is_some() {
            return None;
        }
        let last = self.layout.a.len() - 1;
        if !self.started {
            self.started = true;
            let c = self.layout.composer(0, &self.inflow);
            self.stack.push((0, c, false));
        }
        loop {
            let (v, comp, applied) = self.stack.last_mut()?;
            let v = *v;
            if *applied {
                let cur = comp.cur.as_ref().expect("applied composition");
                self.layout.apply(v, cur, &mut self.inflow, -1);
                *applied = false;
            }
            let Some(next) = comp.advance() else {
                self.stack.pop();
                continue;
            };
            let next = next.to_vec();
            self.layout.apply(v, &next, &mut self.inflow, 1);
            for (&k, &x) in self.layout.out[v].iter().zip(&next) {
                self.values[k] = x;
            }
            self.stack.last_mut().expect("top").2 = true;
            if !self.layout.heads_ok(v, &self.inflow) {
                continue;
            }
            if v == last {
                return Some(IntegerFlow(self.values.clone()));
            }
            let c = self.layout.composer(v + 1, &self.inflow);
            self.stack.push((v + 1, c, false));
        }
    }
}

/// All integer flows on `g` with netflow `a`; `caps` marks edges limited to `0..=1`.
///
/// A netflow that does not sum to zero gives an empty stream with a diagnostic.
pub fn enumerate_flows(g: &MultiGraph, a: &[i64], caps: Option<&BTreeSet<Edge>>) -> Result<Flows> {
    check_netflow(g, a)?;
    let sum: i64 = a.iter().sum();
    Ok(Flows {
        layout: Layout::new(g, a, caps),
        inflow: vec![0; a.len()],
        values: vec![0; g.num_edges()],
        stack: Vec::new(),
        started: false,
        diagnostic: (sum != 0).then(|| format!("netflow sums to {sum}, not 0")),
    })
}

/// Kostant partition function `K_G(a)`, counted by memoized search over vertices.
pub fn kostant(g: &MultiGraph, a: &[i64]) -> Result<u64> {
    kostant_capped(g, a, None)
}

/// [`kostant`] with unit capacities on `caps`.
pub fn kostant_capped(g: &MultiGraph, a: &[i64], caps: Option<&BTreeSet<Edge>>) -> Result<u64> {
    check_netflow(g, a)?;
    if a.iter().sum::<i64>() != 0 {
        return Ok(0);
    }
    let layout = Layout::new(g, a, caps);
    let mut memo = HashMap::new();
    let mut inflow = vec![0i64; a.len()];
    Ok(count_from(&layout, 0, &mut inflow, &mut memo))
}

fn count_from(
    layout: &Layout,
    v: usize,
    inflow: &mut Vec<i64>,
    memo: &mut HashMap<(usize, Vec<i64>), u64>,
) -> u64 {
    let key = (v, inflow[v..].to_vec());
    if let Some(&c) = memo.get(&key) {
        return c;
    }
    let last = layout.a.len() - 1;
    let mut comp = layout.composer(v, inflow);
    let mut total = 0u64;
    while let Some(c) = comp.advance() {
        let c = c.to_vec();
        layout.apply(v, &c, inflow, 1);
        if layout.heads_ok(v, inflow) {
            total += if v == last { 1 } else { count_from(layout, v + 1, inflow, memo) };
        }
        layout.apply(v, &c, inflow, -1);
    }
    memo.insert(key, total);
    total
}

/// Feasibility by checking every vertex set closed under outgoing edges.
pub fn feasible_by_cuts(g: &MultiGraph, a: &[i64]) -> Result<bool> {
    check_netflow(g, a)?;
    let nv = g.vertex_count();
    if nv > 23 {
        return Err(Error::Limit { what: "vertices for subset enumeration", size: nv - 1, limit: 22 });
    }
    if a.iter().sum::<i64>() != 0 {
        return Ok(false);
    }
    for mask in 1u64..1 << nv {
        if g.outdeg_mask(mask) == 0 {
            let s: i64 = (0..nv).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).sum();
            if s > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Feasibility by max-flow from an auxiliary source to an auxiliary sink.
pub fn feasible_by_maxflow(g: &MultiGraph, a: &[i64]) -> Result<bool> {
    check_netflow(g, a)?;
    if a.iter().sum::<i64>() != 0 {
        return Ok(false);
    }
    let nv = g.vertex_count();
    let supply: i64 = a.iter().filter(|&&x| x > 0).sum();
    let (s, t) = (nv, nv + 1);
    let mut net = MaxFlow::new(nv + 2);
    for (i, &x) in a.iter().enumerate() {
        if x > 0 {
            net.add(s, i, x);
        } else if x < 0 {
            net.add(i, t, -x);
        }
    }
    for e in g.edges() {
        net.add(e.tail, e.head, supply);
    }
    Ok(net.run(s, t) == supply)
}

/// Feasibility of `F_G(a)`; both methods are run and must agree.
pub fn feasible(g: &MultiGraph, a: &[i64]) -> Result<bool> {
    let by_flow = feasible_by_maxflow(g, a)?;
    if g.vertex_count() <= 23 {
        let by_cuts = feasible_by_cuts(g, a)?;
        assert_eq!(by_cuts, by_flow, "feasibility methods disagree on {g} with {a:?}");
    }
    Ok(by_flow)
}

struct MaxFlow {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl MaxFlow {
    fn new(n: usize) -> Self {
        MaxFlow { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    // Edmonds-Karp
    fn run(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut prev: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                for &id in &self.adj[u] {
                    let v = self.to[id];
                    if !seen[v] && self.cap[id] > 0 {
                        seen[v] = true;
                        prev[v] = Some(id);
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while let Some(id) = prev[v] {
                push = push.min(self.cap[id]);
                v = self.to[id ^ 1];
            }
            let mut v = t;
            while let Some(id) = prev[v] {
                self.cap[id] -= push;
                self.cap[id ^ 1] += push;
                v = self.to[id ^ 1];
            }
            total += push;
        }
    }
}

/// Minimum of `Σ_{e ∈ weights} f(e)` over integer flows.
pub fn min_functional(
    g: &MultiGraph,
    a: &[i64],
    caps: Option<&BTreeSet<Edge>>,
    weights: &[Edge],
) -> Result<i64> {
    Ok(min_functionals(g, a, caps, &[weights.to_vec()])?[0])
}

/// Several minima computed in one pass over the flows.
pub fn min_functionals(
    g: &MultiGraph,
    a: &[i64],
    caps: Option<&BTreeSet<Edge>>,
    functionals: &[Vec<Edge>],
) -> Result<Vec<i64>> {
    let idx: Vec<Vec<usize>> = functionals
        .iter()
        .map(|w| {
            w.iter()
                .map(|e| g.position(e).ok_or(Error::UnknownEdge(e.tail, e.head, e.copy)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut best: Vec<Option<i64>> = vec![None; functionals.len()];
    for f in enumerate_flows(g, a, caps)? {
        for (b, w) in best.iter_mut().zip(&idx) {
            let v: i64 = w.iter().map(|&k| f.0[k] as i64).sum();
            *b = Some(b.map_or(v, |x| x.min(v)));
        }
    }
    best.into_iter().map(|b| b.ok_or(Error::Infeasible)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> MultiGraph {
        MultiGraph::new(2, [(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> MultiGraph {
        MultiGraph::new(2, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn path_has_one_flow() {
        let flows: Vec<_> = enumerate_flows(&path(), &[1, 0, -1], None).unwrap().collect();
        assert_eq!(flows, vec![IntegerFlow(vec![1, 1])]);
        assert_eq!(kostant(&path(), &[1, 0, -1]).unwrap(), 1);
    }

    #[test]
    fn triangle_has_two_flows() {
        let flows: Vec<_> = enumerate_flows(&triangle(), &[1, 0, -1], None).unwrap().collect();
        // edges in order (0,1),(0,2),(1,2)
        assert_eq!(flows, vec![IntegerFlow(vec![0, 1, 0]), IntegerFlow(vec![1, 0, 1])]);
        assert_eq!(kostant(&triangle(), &[1, 0, -1]).unwrap(), 2);
    }

    #[test]
    fn zero_netflow() {
        let g = MultiGraph::new(3, [(0, 1), (0, 3), (1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(enumerate_flows(&g, &[0; 4], None).unwrap().count(), 1);
        assert_eq!(kostant(&g, &[0; 4]).unwrap(), 1);
    }

    #[test]
    fn unbalanced_netflow_is_empty() {
        let f = enumerate_flows(&path(), &[1, 0, 0], None).unwrap();
        assert!(f.diagnostic().is_some());
        assert_eq!(f.count(), 0);
        assert!(enumerate_flows(&path(), &[1, 0], None).is_err());
    }

    #[test]
    fn capacities() {
        let g = MultiGraph::new(1, [(0, 1), (0, 1)]).unwrap();
        let caps: BTreeSet<Edge> = [Edge::new(0, 1, 1)].into();
        assert_eq!(enumerate_flows(&g, &[3, -3], Some(&caps)).unwrap().count(), 2);
        assert_eq!(kostant_capped(&g, &[3, -3], Some(&caps)).unwrap(), 2);
        assert_eq!(kostant(&g, &[3, -3]).unwrap(), 4);
        let both: BTreeSet<Edge> = g.edges().iter().copied().collect();
        assert_eq!(kostant_capped(&g, &[3, -3], Some(&both)).unwrap(), 0);
    }

    #[test]
    fn feasibility() {
        assert!(feasible(&path(), &[1, 0, -1]).unwrap());
        assert!(!feasible(&path(), &[-1, 1, 0]).unwrap());
        assert!(!feasible_by_cuts(&path(), &[-1, 1, 0]).unwrap());
        assert!(!feasible_by_maxflow(&path(), &[-1, 1, 0]).unwrap());
        assert!(feasible(&path(), &[0, 0, 0]).unwrap());
    }

    #[test]
    fn functionals_on_path_encoding() {
        let h = path().tilde_without_source();
        let a = [1, 1, -2];
        let into_t = |j| Edge::new(j, 2, 0);
        assert_eq!(min_functional(&h, &a, None, &[into_t(0)]).unwrap(), 0);
        assert_eq!(min_functional(&h, &a, None, &[into_t(1)]).unwrap(), 1);
        assert_eq!(min_functional(&h, &a, None, &[into_t(0), into_t(1)]).unwrap(), 2);
        assert_eq!(min_functional(&h, &[2, 0, -1], None, &[]), Err(Error::Infeasible));
    }

    #[test]
    fn composer_order() {
        let mut c = Composer::new(Some(2), vec![u64::MAX, 1, u64::MAX]);
        let mut all = Vec::new();
        while let Some(x) = c.advance() {
            all.push(x.to_vec());
        }
        assert_eq!(
            all,
            vec![vec![0, 0, 2], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0], vec![2, 0, 0]]
        );
        let mut none = Composer::new(Some(1), vec![]);
        assert!(none.advance().is_none());
        let mut empty = Composer::new(Some(0), vec![]);
        assert_eq!(empty.advance(), Some(&[][..]));
        assert!(empty.advance().is_none());
    }
}
