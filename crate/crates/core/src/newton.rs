//! Left- and right-degree polynomials, their Newton polytopes as generalized
//! permutahedra, saturation checks, and the volume and Ehrhart formulas.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arrays::{b_netflow, level_graph};
use crate::error::{Error, Result};
use crate::flow::{enumerate_flows, feasible, kostant, min_functionals};
use crate::genperm::{members, minkowski_to_z, GenPermSpec, MinkowskiSpec};
use crate::graph::{Edge, EdgeSubset, MultiGraph};
use crate::hull::hull_membership;
use crate::poly::{QPoly, SparsePolynomial};
use crate::reduction::{FLabel, LdMultiset, SeqCounts, SpecialOrder};

/// Left-degree multiset from the special tree.
pub fn ld(g: &MultiGraph) -> LdMultiset {
    LdMultiset::of(g, &SpecialOrder)
}

fn signed_poly(n: usize, counts: &SeqCounts, total_edges: usize) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(n);
    for (s, m) in counts {
        let codim = total_edges - s.iter().map(|&x| x as usize).sum::<usize>();
        let sign = if codim.is_multiple_of(2) { 1 } else { -1 };
        p.add_term(s.clone(), sign * *m as i64);
    }
    p
}

/// `L_G(t) = Σ_{α ∈ LD(G)} (-1)^{codim α} t^α`.
pub fn ld_polynomial(g: &MultiGraph) -> SparsePolynomial {
    signed_poly(g.n(), &ld(g).aggregated(), g.num_edges())
}

/// Degree `#E(G) - k` component `L_G^k`.
pub fn ld_component(g: &MultiGraph, k: usize) -> SparsePolynomial {
    signed_poly(g.n(), &ld(g).with_codim(k), g.num_edges())
}

/// `L_{G,F}`: sequences labeled by `F` in the special tree.
pub fn ld_f_polynomial(g: &MultiGraph, f: &EdgeSubset) -> SparsePolynomial {
    signed_poly(g.n(), &ld(g).with_label(&FLabel::from_subset(f)), g.num_edges())
}

/// `R_G(t_1, ..., t_n) = L_{G*}(t_n, ..., t_1)`; variable `i` tracks the
/// outdegree of vertex `i - 1`.
pub fn rd_polynomial(g: &MultiGraph) -> SparsePolynomial {
    ld_polynomial(&g.mirror()).reverse_vars()
}

/// [`rd_polynomial`] without the variables of vertices of outdegree zero.
pub fn reduced_rd(g: &MultiGraph) -> SparsePolynomial {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| g.outdeg(v) > 0).collect();
    rd_polynomial(g).keep_vars(&keep)
}

/// Masks over `[n]` of vertex sets with no edge leaving them.
pub fn closed_sets(g: &MultiGraph) -> Vec<u32> {
    let n = g.n();
    let mut out_mask = vec![0u32; n + 1];
    for e in g.edges().iter().filter(|e| e.tail > 0) {
        out_mask[e.tail] |= 1 << (e.head - 1);
    }
    (0..1u32 << n)
        .filter(|&s| members(s).iter().all(|&i| out_mask[i] & !s == 0))
        .collect()
}

fn into_t_edges(n: usize, t: usize, mask: u32) -> Vec<Edge> {
    (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| Edge::new(i - 1, t, 0)).collect()
}

/// `z_I^F`: minimum of `Σ_{i∈I} f(i,t)` over integer flows on `G̃\{s,0}` with netflow `b_G^F`.
pub fn z_parameters(g: &MultiGraph, f: &EdgeSubset) -> Result<GenPermSpec> {
    let n = g.n();
    let h = g.tilde_without_source();
    let functionals: Vec<Vec<Edge>> = (0..1u32 << n).map(|m| into_t_edges(n, n, m)).collect();
    let z = min_functionals(&h, &b_netflow(g, f), None, &functionals)?;
    GenPermSpec::new(n, z)
}

/// `z_I = max { Σ_{k∈S} b_k : S ⊆ I closed }`, the closed form of [`z_parameters`].
pub fn z_closed_form(g: &MultiGraph, f: &EdgeSubset) -> Result<GenPermSpec> {
    let b = b_netflow(g, f);
    let closed = closed_sets(g);
    let weight = |s: u32| members(s).iter().map(|&k| b[k - 1]).sum::<i64>();
    GenPermSpec::from_fn(g.n(), |i| {
        closed.iter().filter(|&&s| s & !i == 0).map(|&s| weight(s)).max().unwrap_or(0)
    })
}

/// `z_I = Σ_{k∈I'} b_k` with `I'` the largest closed subset of `I`.
/// Agrees with [`z_closed_form`] whenever `b >= 0`.
pub fn z_largest_closed(g: &MultiGraph, f: &EdgeSubset) -> Result<GenPermSpec> {
    let b = b_netflow(g, f);
    let closed = closed_sets(g);
    GenPermSpec::from_fn(g.n(), |i| {
        let largest = closed.iter().filter(|&&s| s & !i == 0).fold(0, |a, &s| a | s);
        members(largest).iter().map(|&k| b[k - 1]).sum()
    })
}

/// `z_I^{(k)}` from capacitated flows on `G^(k)`.
pub fn z_parameters_level(g: &MultiGraph, k: usize) -> Result<GenPermSpec> {
    let n = g.n();
    let (aug, b) = level_graph(g, k as i64)?;
    let functionals: Vec<Vec<Edge>> = (0..1u32 << n).map(|m| into_t_edges(n, n + 1, m)).collect();
    let z = min_functionals(&aug.graph, &b, Some(&aug.caps()), &functionals)?;
    GenPermSpec::new(n, z)
}

/// `y_J = b_k` when `J` is join-irreducible in the lattice of closed sets and covers
/// `J'` with `J \ J' = {k}`; other `y_J` are zero.
pub fn y_parameters(g: &MultiGraph, f: &EdgeSubset) -> Result<MinkowskiSpec> {
    let b = b_netflow(g, f);
    let closed = closed_sets(g);
    let set: BTreeSet<u32> = closed.iter().copied().collect();
    let mut y = BTreeMap::new();
    for &j in &closed {
        let below: Vec<u32> = closed.iter().copied().filter(|&s| s != j && s & !j == 0).collect();
        let covers: Vec<u32> = below
            .iter()
            .copied()
            .filter(|&s| !below.iter().any(|&t| t != s && s & !t == 0 && set.contains(&t)))
            .collect();
        if covers.len() == 1 {
            let diff = j & !covers[0];
            if diff.count_ones() != 1 {
                return Err(Error::CoverViolation { cover: members(j), below: members(covers[0]) });
            }
            let k = diff.trailing_zeros() as usize + 1;
            if b[k - 1] != 0 {
                y.insert(j, b[k - 1]);
            }
        }
    }
    Ok(MinkowskiSpec { n: g.n(), y })
}

/// Result of [`snp_check`] on one homogeneous component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    pub degree: u32,
    pub support: usize,
    /// The hull of the component's support is a generalized permutahedron.
    pub gp: bool,
    /// Every lattice point of that hull is in the support.
    pub saturated: bool,
    pub supermodular_violation: Option<(Vec<usize>, Vec<usize>)>,
    pub witness: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnpVerdict {
    pub snp: bool,
    pub components_gp: bool,
    pub levels: Vec<LevelVerdict>,
    /// A lattice point of the Newton polytope missing from the support.
    pub witness: Option<Vec<i64>>,
}

fn to_i64(p: &[u32]) -> Vec<i64> {
    p.iter().map(|&x| x as i64).collect()
}

/// Lattice points `x` of the bounding box of `pts` that satisfy every 0/1 and
/// 0/-1 direction bound of `pts`, optionally on a fixed coordinate sum.
fn direction_candidates(pts: &[Vec<i64>], level: Option<i64>) -> Vec<Vec<i64>> {
    let d = pts[0].len();
    let masks = 1u32 << d;
    let sums: Vec<(i64, i64)> = (0..masks)
        .map(|m| {
            let vals = pts.iter().map(|p| (0..d).filter(|b| m >> b & 1 == 1).map(|b| p[b]).sum::<i64>());
            let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
            (lo, hi)
        })
        .collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; d];
    fn rec(
        k: usize,
        x: &mut Vec<i64>,
        sums: &[(i64, i64)],
        level: Option<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let d = x.len();
        if k == d {
            if level.is_none_or(|l| x.iter().sum::<i64>() == l) {
                out.push(x.clone());
            }
            return;
        }
        let bit = 1u32 << k;
        let (lo, hi) = sums[bit as usize];
        for v in lo..=hi {
            x[k] = v;
            let ok = (0..bit).all(|rest| {
                let m = rest | bit;
                let s: i64 = (0..=k).filter(|b| m >> b & 1 == 1).map(|b| x[b]).sum();
                let (l, h) = sums[m as usize];
                s >= l && s <= h
            });
            if ok {
                rec(k + 1, x, sums, level, out);
            }
        }
    }
    if d == 0 {
        return vec![Vec::new()];
    }
    rec(0, &mut x, &sums, level, &mut out);
    out
}

fn check_level(degree: u32, pts: &[Vec<i64>]) -> Result<LevelVerdict> {
    let n = pts[0].len();
    let support: BTreeSet<&Vec<i64>> = pts.iter().collect();
    let spec = GenPermSpec::from_fn(n, |m| {
        pts.iter()
            .map(|p| members(m).iter().map(|&i| p[i - 1]).sum::<i64>())
            .min()
            .expect("nonempty level")
    })?;
    let mut verdict = LevelVerdict {
        degree,
        support: pts.len(),
        gp: true,
        saturated: true,
        supermodular_violation: None,
        witness: None,
    };
    match spec.supermodular_violation() {
        None => {
            for p in spec.lattice_points()? {
                if support.contains(&p) {
                    continue;
                }
                if hull_membership(&p, pts)? {
                    if verdict.saturated {
                        verdict.saturated = false;
                        verdict.witness = Some(p);
                    }
                } else {
                    verdict.gp = false;
                }
            }
        }
        Some((i, j)) => {
            verdict.gp = false;
            verdict.supermodular_violation = Some((members(i), members(j)));
            for p in direction_candidates(pts, Some(degree as i64)) {
                if !support.contains(&p) && hull_membership(&p, pts)? {
                    verdict.saturated = false;
                    verdict.witness = Some(p);
                    break;
                }
            }
        }
    }
    Ok(verdict)
}

/// Saturated-support test for `p` and generalized-permutahedron test for each
/// homogeneous component.
pub fn snp_check(p: &SparsePolynomial) -> Result<SnpVerdict> {
    if p.is_zero() {
        return Ok(SnpVerdict { snp: true, components_gp: true, levels: Vec::new(), witness: None });
    }
    let mut levels = Vec::new();
    for d in p.degrees() {
        let pts: Vec<Vec<i64>> = p.homogeneous_component(d).support().iter().map(|e| to_i64(e)).collect();
        levels.push(check_level(d, &pts)?);
    }
    let all: Vec<Vec<i64>> = p.support().iter().map(|e| to_i64(e)).collect();
    let support: BTreeSet<&Vec<i64>> = all.iter().collect();
    let mut witness = levels.iter().find_map(|l| l.witness.clone());
    if witness.is_none() {
        for q in direction_candidates(&all, None) {
            if !support.contains(&q) && hull_membership(&q, &all)? {
                witness = Some(q);
                break;
            }
        }
    }
    Ok(SnpVerdict {
        snp: witness.is_none(),
        components_gp: levels.iter().all(|l| l.gp),
        levels,
        witness,
    })
}

/// Normalized volume of `F_{G̃}`: `K_{G̃\{s,0}}(indeg(1), ..., indeg(n), -#E(G))`.
pub fn volume(g: &MultiGraph) -> Result<u64> {
    kostant(&g.tilde_without_source(), &b_netflow(g, &EdgeSubset::empty()))
}

/// Dimension of `F_{G̃}`: `#E(G̃) - #V(G̃) + 1`.
pub fn flow_polytope_dim(g: &MultiGraph) -> usize {
    g.num_edges() + g.n()
}

/// Ehrhart polynomial of `F_{G̃}` from the alternating sum over `F`.
pub fn ehrhart(g: &MultiGraph) -> Result<QPoly> {
    let d = flow_polytope_dim(g);
    let h = g.tilde_without_source();
    let mut by_size = vec![0u64; d + 1];
    for f in g.source_free_subsets()? {
        by_size[f.len()] += kostant(&h, &b_netflow(g, &f))?;
    }
    let mut out = QPoly(Vec::new());
    for i in 0..=d {
        let fi = by_size[d - i];
        if fi == 0 {
            continue;
        }
        let sign: i64 = if (d + i).is_multiple_of(2) { 1 } else { -1 };
        let c = BigRational::from_integer(BigInt::from(sign) * BigInt::from(fi));
        out = out.add(&QPoly::binomial_shifted(i).scale(&c));
    }
    Ok(out)
}

/// Lattice points of `t F_{G̃}`: `K_{G̃}(t, 0, ..., 0, -t)`.
pub fn dilation_count(g: &MultiGraph, t: u64) -> Result<u64> {
    let tg = g.tilde().graph;
    let mut a = vec![0i64; tg.vertex_count()];
    a[0] = t as i64;
    *a.last_mut().expect("sink") = -(t as i64);
    kostant(&tg, &a)
}

fn factorial(k: usize) -> BigRational {
    BigRational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// Volume and Ehrhart consistency: values at 0..=3 and the leading coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct VolumeReport {
    pub volume: u64,
    pub full_dimensional_leaves: u64,
    pub ehrhart: Vec<String>,
    pub dilations: Vec<(u64, String, u64)>,
    pub leading_matches_volume: bool,
    pub holds: bool,
}

pub fn verify_volume(g: &MultiGraph) -> Result<VolumeReport> {
    let volume = volume(g)?;
    let full = ld(g).codim_profile().first().copied().unwrap_or(0);
    let e = ehrhart(g)?;
    let mut dilations = Vec::new();
    let mut ok = e.eval(0) == BigRational::one();
    for t in 1..=3 {
        let direct = dilation_count(g, t)?;
        let value = e.eval(t as i64);
        ok &= value == BigRational::from_integer(BigInt::from(direct));
        dilations.push((t, value.to_string(), direct));
    }
    let d = flow_polytope_dim(g);
    let leading_matches_volume = e.degree() == Some(d)
        && e.leading() * factorial(d) == BigRational::from_integer(BigInt::from(volume));
    Ok(VolumeReport {
        volume,
        full_dimensional_leaves: full,
        ehrhart: e.coefficient_strings(),
        dilations,
        leading_matches_volume,
        holds: ok && leading_matches_volume && volume == full,
    })
}

fn support_set(counts: &SeqCounts) -> BTreeSet<Vec<i64>> {
    counts.keys().map(|s| to_i64(s)).collect()
}

/// Lattice points of `Newton(p)` on the hyperplane `Σ x = level`.
fn slice_points(all: &[Vec<i64>], level: i64) -> Result<BTreeSet<Vec<i64>>> {
    let mut out = BTreeSet::new();
    if all.is_empty() {
        return Ok(out);
    }
    for q in direction_candidates(all, Some(level)) {
        if hull_membership(&q, all)? {
            out.insert(q);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub levels_checked: usize,
    /// Each level's support, and the lattice points of the whole Newton polytope on
    /// that level, equal the lattice points of `P^z{z^(k)}`.
    pub hyperplane_slices: bool,
    /// `Vol F_{G̃}` equals the number of lattice points of `P_G^0`; `None` when
    /// `G \ 0` has an undirected cycle.
    pub lattice_point_volume: Option<bool>,
    /// Every coefficient of `L_G^0` is 1; `None` when `G \ 0` has an undirected cycle.
    pub top_component_01: Option<bool>,
    pub holds: bool,
    pub counterexample: Option<String>,
}

pub fn verify_corollaries(g: &MultiGraph) -> Result<CorollaryReport> {
    let ldm = ld(g);
    let all: Vec<Vec<i64>> = ldm.aggregated().keys().map(|s| to_i64(s)).collect();
    let e = g.num_edges();
    let mut counterexample = None;
    let mut levels_checked = 0;
    let mut z0_points = None;
    for k in 0..=g.non_source_edges().len() {
        let level = support_set(&ldm.with_codim(k));
        let expected = match z_parameters_level(g, k) {
            Ok(z) => match z.lattice_points() {
                Ok(p) => p.into_iter().collect::<BTreeSet<_>>(),
                Err(err) => {
                    counterexample.get_or_insert(format!("level {k}: {err}"));
                    continue;
                }
            },
            Err(Error::Infeasible) => BTreeSet::new(),
            Err(err) => return Err(err),
        };
        if k == 0 {
            z0_points = Some(expected.len() as u64);
        }
        levels_checked += 1;
        if level != expected {
            counterexample.get_or_insert(format!("level {k}: support {level:?} vs lattice points {expected:?}"));
        }
        let slice = slice_points(&all, (e - k) as i64)?;
        if slice != expected {
            counterexample.get_or_insert(format!("level {k}: slice {slice:?} vs lattice points {expected:?}"));
        }
    }
    let hyperplane_slices = counterexample.is_none();
    let forest = g.is_forest_without_source();
    let lattice_point_volume = if forest {
        let ok = Some(volume(g)?) == z0_points;
        if !ok {
            counterexample.get_or_insert(format!("volume {} vs {:?} lattice points", volume(g)?, z0_points));
        }
        Some(ok)
    } else {
        None
    };
    let top_component_01 = if forest {
        let ok = ldm.with_codim(0).values().all(|&m| m == 1);
        if !ok {
            counterexample.get_or_insert("L_G^0 has a coefficient above 1".into());
        }
        Some(ok)
    } else {
        None
    };
    Ok(CorollaryReport {
        levels_checked,
        hyperplane_slices,
        lattice_point_volume,
        top_component_01,
        holds: counterexample.is_none(),
        counterexample,
    })
}

/// Per-graph outcome of the generalized-permutahedron statements over all `F` and `k`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GenPermReport {
    pub subsets_checked: usize,
    pub empty_subsets: usize,
    /// `LD(G,F)` is empty exactly when `b_G^F` is infeasible.
    pub emptiness_consistent: bool,
    pub supermodular: bool,
    pub f_lattice_points: bool,
    pub level_lattice_points: bool,
    pub minkowski_y: bool,
    pub closed_form: bool,
    pub largest_closed_form: bool,
    pub negative_b_subsets: usize,
    pub counterexamples: BTreeMap<String, String>,
}

impl GenPermReport {
    fn fail(&mut self, key: &str, msg: String) {
        self.counterexamples.entry(key.into()).or_insert(msg);
    }
}

/// Checks, for every `F` and every `k`: supermodularity of `z`, lattice points
/// against left-degree supports, the `y` decomposition and the closed forms.
pub fn verify_genperm(g: &MultiGraph) -> Result<GenPermReport> {
    let ldm = ld(g);
    let h = g.tilde_without_source();
    let mut r = GenPermReport {
        emptiness_consistent: true,
        supermodular: true,
        f_lattice_points: true,
        level_lattice_points: true,
        minkowski_y: true,
        closed_form: true,
        largest_closed_form: true,
        ..Default::default()
    };
    for f in g.source_free_subsets()? {
        r.subsets_checked += 1;
        let b = b_netflow(g, &f);
        let support = support_set(&ldm.with_label(&FLabel::from_subset(&f)));
        let is_feasible = feasible(&h, &b)?;
        if support.is_empty() != !is_feasible {
            r.emptiness_consistent = false;
            r.fail("emptiness", format!("F={f}: support {} sequences, feasible {is_feasible}", support.len()));
        }
        if !is_feasible {
            r.empty_subsets += 1;
            continue;
        }
        if b[..g.n()].iter().any(|&x| x < 0) {
            r.negative_b_subsets += 1;
        }
        let z = z_parameters(g, &f)?;
        if let Some((i, j)) = z.supermodular_violation() {
            r.supermodular = false;
            r.fail("supermodular", format!("F={f}: I={:?} J={:?}", members(i), members(j)));
        } else {
            let pts: BTreeSet<Vec<i64>> = z.lattice_points()?.into_iter().collect();
            if pts != support {
                r.f_lattice_points = false;
                r.fail("f_lattice_points", format!("F={f}: {pts:?} vs {support:?}"));
            }
        }
        if z != z_closed_form(g, &f)? {
            r.closed_form = false;
            r.fail("closed_form", format!("F={f}: {:?}", z.values()));
        }
        let largest = z_largest_closed(g, &f)?;
        if z != largest {
            r.largest_closed_form = false;
            r.fail("largest_closed_form", format!("F={f}, b={b:?}: min-flow {:?} vs {:?}", z.values(), largest.values()));
        }
        let y = minkowski_to_z(&y_parameters(g, &f)?)?;
        if y != z {
            r.minkowski_y = false;
            r.fail("minkowski_y", format!("F={f}, b={b:?}: y gives {:?}, min-flow {:?}", y.values(), z.values()));
        }
    }
    for k in 0..=g.non_source_edges().len() {
        let support = support_set(&ldm.with_codim(k));
        match z_parameters_level(g, k) {
            Err(Error::Infeasible) => {
                if !support.is_empty() {
                    r.level_lattice_points = false;
                    r.fail("level_lattice_points", format!("k={k}: infeasible but support nonempty"));
                }
            }
            Err(e) => return Err(e),
            Ok(z) => {
                if let Some((i, j)) = z.supermodular_violation() {
                    r.supermodular = false;
                    r.fail("supermodular", format!("k={k}: I={:?} J={:?}", members(i), members(j)));
                    continue;
                }
                let pts: BTreeSet<Vec<i64>> = z.lattice_points()?.into_iter().collect();
                if pts != support {
                    r.level_lattice_points = false;
                    r.fail("level_lattice_points", format!("k={k}: {pts:?} vs {support:?}"));
                }
            }
        }
    }
    Ok(r)
}

/// Flows on `G̃\{s,0}` with netflow `b_G^F` projected to the `(j,t)` edges.
pub fn ld_f_support_from_flows(g: &MultiGraph, f: &EdgeSubset) -> Result<BTreeSet<Vec<i64>>> {
    let h = g.tilde_without_source();
    Ok(enumerate_flows(&h, &b_netflow(g, f), None)?
        .map(|fl| to_i64(&crate::arrays::psi(&h, &fl.0)))
        .collect())
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
    fn ld_polynomials() {
        let one = MultiGraph::new(1, [(0, 1)]).unwrap();
        assert_eq!(ld_polynomial(&one).to_string(), "t1");
        assert_eq!(ld_polynomial(&path()).to_string(), "t1*t2 + t2^2 - t2");
        assert_eq!(ld_component(&path(), 0).to_string(), "t1*t2 + t2^2");
        let f = EdgeSubset::parse(&path(), "1-2").unwrap();
        assert_eq!(ld_f_polynomial(&path(), &f).to_string(), "-t2");
    }

    #[test]
    fn empty_graph_polynomial_is_one() {
        let g = MultiGraph::empty(2);
        assert_eq!(ld_polynomial(&g), SparsePolynomial::one(2));
        assert!(snp_check(&ld_polynomial(&g)).unwrap().snp);
    }

    #[test]
    fn rd_polynomials() {
        let one = MultiGraph::new(1, [(0, 1)]).unwrap();
        assert_eq!(rd_polynomial(&one).to_string(), "t1");
        let g = MultiGraph::new(3, [(0, 2), (1, 2), (2, 3)]).unwrap();
        let r = rd_polynomial(&g);
        assert_eq!(r.nvars(), 3);
        let red = reduced_rd(&g);
        assert_eq!(red.nvars(), 3);
        let h = MultiGraph::new(3, [(0, 3), (2, 3)]).unwrap();
        assert_eq!(reduced_rd(&h).nvars(), 2);
        assert_eq!(reduced_rd(&h).to_string(), "t1*t2");
    }

    #[test]
    fn path_z_parameters() {
        let z = z_parameters(&path(), &EdgeSubset::empty()).unwrap();
        assert_eq!(z.values(), &[0, 0, 1, 2]);
        assert_eq!(z_closed_form(&path(), &EdgeSubset::empty()).unwrap(), z);
        assert_eq!(z_largest_closed(&path(), &EdgeSubset::empty()).unwrap(), z);
        let y = y_parameters(&path(), &EdgeSubset::empty()).unwrap();
        assert_eq!(y.y, [(0b10, 1), (0b11, 1)].into());
        assert_eq!(minkowski_to_z(&y).unwrap(), z);
    }

    #[test]
    fn z_total_is_remaining_edges() {
        let g = MultiGraph::new(3, [(0, 1), (1, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        for f in g.source_free_subsets().unwrap() {
            if let Ok(z) = z_parameters(&g, &f) {
                assert_eq!(z.z(0b111), (g.num_edges() - f.len()) as i64);
            }
        }
    }

    #[test]
    fn isolated_vertex_is_join_irreducible() {
        let g = MultiGraph::new(3, [(0, 1), (0, 2), (0, 2), (0, 3)]).unwrap();
        let y = y_parameters(&g, &EdgeSubset::empty()).unwrap();
        assert_eq!(y.y, [(0b001, 1), (0b010, 2), (0b100, 1)].into());
    }

    #[test]
    fn pitman_stanley_shape() {
        // transitive closure of G \ 0 is complete: y lands on {k..n}
        let g = MultiGraph::new(3, [(0, 1), (0, 1), (1, 2), (0, 3), (2, 3)]).unwrap();
        let y = y_parameters(&g, &EdgeSubset::empty()).unwrap();
        assert_eq!(y.y, [(0b111, 2), (0b110, 1), (0b100, 2)].into());
    }

    #[test]
    fn snp_small_cases() {
        let p = SparsePolynomial::from_terms(2, [(vec![0, 0], 1), (vec![1, 0], 1), (vec![0, 1], 1)]);
        assert!(snp_check(&p).unwrap().snp);
        let q = SparsePolynomial::from_terms(2, [(vec![2, 0], 1), (vec![0, 2], 1)]);
        let v = snp_check(&q).unwrap();
        assert!(!v.snp);
        assert_eq!(v.witness, Some(vec![1, 1]));
        assert!(v.components_gp);
    }

    #[test]
    fn non_gp_component() {
        // hull is a triangle with an edge not parallel to any e_i - e_j
        let p = SparsePolynomial::from_terms(3, [(vec![2, 0, 0], 1), (vec![0, 1, 1], 1), (vec![1, 1, 0], 1)]);
        let v = snp_check(&p).unwrap();
        assert!(!v.components_gp);
    }

    #[test]
    fn volume_and_ehrhart_single_edge() {
        let one = MultiGraph::new(1, [(0, 1)]).unwrap();
        assert_eq!(volume(&one).unwrap(), 1);
        let e = ehrhart(&one).unwrap();
        assert_eq!(e, QPoly::binomial_shifted(2));
        for t in 1..=3 {
            assert_eq!(
                e.eval(t as i64),
                BigRational::from_integer(BigInt::from(dilation_count(&one, t).unwrap()))
            );
        }
    }

    #[test]
    fn volume_reports() {
        for g in [path(), triangle()] {
            let r = verify_volume(&g).unwrap();
            assert!(r.holds, "{r:?}");
        }
        assert_eq!(volume(&triangle()).unwrap(), 2);
    }

    #[test]
    fn corollaries_on_small_graphs() {
        for g in [path(), triangle()] {
            let r = verify_corollaries(&g).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn genperm_on_small_graphs() {
        for g in [path(), triangle()] {
            let r = verify_genperm(&g).unwrap();
            assert!(r.counterexamples.is_empty(), "{r:?}");
        }
    }
}
