//! Permutations, pipe dreams, Schubert and Grothendieck polynomials.
//!
//! Pipe dreams of `π ∈ S_N` live in the `N × N` grid; crosses may sit at `(r, c)`
//! with `r + c <= N` (1-based). Strands enter at the top of each column and leave
//! on the left of each row, where row `r` must read `π(r)`.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton::snp_check;
use crate::poly::SparsePolynomial;

/// Largest `N` accepted by the pipe-dream enumerators.
pub const MAX_PIPE_SIZE: usize = 8;

/// One-line notation of a bijection of `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; entries.len() + 1];
        for &x in &entries {
            if x == 0 || x > entries.len() || seen[x] {
                return Err(Error::BadPermutation(format!("{entries:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// `"14523"`, or comma/space separated entries.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Option<Vec<usize>> = if s.contains([',', ' ']) {
            s.split([',', ' ']).filter(|t| !t.is_empty()).map(|t| t.parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        match entries {
            Some(e) if !e.is_empty() => Self::new(e),
            _ => Err(Error::BadPermutation(s.into())),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `π(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `c_i = #{j > i : π(j) < π(i)}`.
    pub fn lehmer_code(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &x)| self.0[i + 1..].iter().filter(|&&y| y < x).count())
            .collect()
    }

    pub fn inversions(&self) -> usize {
        self.lehmer_code().iter().sum()
    }

    /// Inverse of [`Permutation::lehmer_code`].
    pub fn from_code(code: &[usize]) -> Result<Self> {
        let mut free: Vec<usize> = (1..=code.len()).collect();
        let mut out = Vec::with_capacity(code.len());
        for &c in code {
            if c >= free.len() {
                return Err(Error::BadPermutation(format!("code {code:?}")));
            }
            out.push(free.remove(c));
        }
        Ok(Permutation(out))
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(Permutation)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            write!(f, "{}", self.0.iter().join(""))
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipeDream {
    /// 1-based `(row, column)` in row-major order.
    pub crosses: Vec<(usize, usize)>,
    pub permutation: Permutation,
    pub reduced: bool,
}

impl PipeDream {
    pub fn weight(&self, nvars: usize) -> SparsePolynomial {
        let mut e = vec![0u32; nvars];
        for &(r, _) in &self.crosses {
            e[r - 1] += 1;
        }
        SparsePolynomial::monomial(e, 1)
    }
}

fn pair_bit(a: usize, b: usize) -> u64 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    1 << ((a - 1) * MAX_PIPE_SIZE + (b - 1))
}

/// State of the strands between two rows.
#[derive(Clone)]
struct Strands {
    /// Strand label in each column, index `c - 1`.
    vertical: Vec<usize>,
    crossed: u64,
    reduced: bool,
}

impl Strands {
    fn new(n: usize) -> Self {
        Strands { vertical: (1..=n).collect(), crossed: 0, reduced: true }
    }

    /// Runs row `r` right to left with crosses at the columns in `cols_mask`
    /// (bit `c - 1`) and returns the label leaving on the left.
    fn row(&mut self, n: usize, r: usize, cols_mask: u32) -> usize {
        let last = n + 1 - r;
        let mut h = self.vertical[last - 1];
        for c in (1..last).rev() {
            let v = self.vertical[c - 1];
            let cross = cols_mask >> (c - 1) & 1 == 1;
            if cross && self.crossed & pair_bit(v, h) == 0 {
                self.crossed |= pair_bit(v, h);
            } else {
                if cross {
                    // a second crossing of the same strands is read as an elbow
                    self.reduced = false;
                }
                self.vertical[c - 1] = h;
                h = v;
            }
        }
        h
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_PIPE_SIZE {
        return Err(Error::Limit { what: "permutation size for pipe dreams", size: n, limit: MAX_PIPE_SIZE });
    }
    Ok(())
}

/// The permutation read off a cross-set, and whether it is reduced.
pub fn trace(n: usize, crosses: &[(usize, usize)]) -> Result<(Permutation, bool)> {
    check_size(n)?;
    let mut masks = vec![0u32; n + 1];
    for &(r, c) in crosses {
        if r == 0 || c == 0 || r + c > n {
            return Err(Error::Parse(format!("cross ({r},{c}) outside the staircase of size {n}")));
        }
        masks[r] |= 1 << (c - 1);
    }
    let mut s = Strands::new(n);
    let out: Vec<usize> = (1..=n).map(|r| s.row(n, r, masks[r])).collect();
    Ok((Permutation(out), s.reduced))
}

/// Every pipe dream of `π`, row by row with pruning on each row's exit label.
pub fn pipe_dreams(pi: &Permutation) -> Result<Vec<PipeDream>> {
    let n = pi.len();
    check_size(n)?;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    dream_rows(pi, 1, Strands::new(n), &mut chosen, &mut out);
    Ok(out)
}

fn dream_rows(
    pi: &Permutation,
    r: usize,
    state: Strands,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<PipeDream>,
) {
    let n = pi.len();
    if r > n {
        out.push(PipeDream { crosses: chosen.clone(), permutation: pi.clone(), reduced: state.reduced });
        return;
    }
    let cells = n - r;
    for mask in 0u32..1 << cells {
        let mut next = state.clone();
        if next.row(n, r, mask) != pi.at(r) {
            continue;
        }
        let before = chosen.len();
        chosen.extend((1..=cells).filter(|c| mask >> (c - 1) & 1 == 1).map(|c| (r, c)));
        dream_rows(pi, r + 1, next, chosen, out);
        chosen.truncate(before);
    }
}

pub fn reduced_pipe_dreams(pi: &Permutation) -> Result<Vec<PipeDream>> {
    Ok(pipe_dreams(pi)?.into_iter().filter(|d| d.reduced).collect())
}

fn nvars(pi: &Permutation) -> usize {
    pi.len().saturating_sub(1)
}

/// `𝔊_π = Σ_{P ∈ PD(π)} Π_{(i,j) ∈ cross(P)} t_i`, unsigned.
pub fn grothendieck(pi: &Permutation) -> Result<SparsePolynomial> {
    let nv = nvars(pi);
    Ok(pipe_dreams(pi)?.iter().fold(SparsePolynomial::zero(nv), |acc, d| acc.add(&d.weight(nv))))
}

/// `𝔖_π`: the reduced pipe dreams only.
pub fn schubert(pi: &Permutation) -> Result<SparsePolynomial> {
    let nv = nvars(pi);
    Ok(reduced_pipe_dreams(pi)?
        .iter()
        .fold(SparsePolynomial::zero(nv), |acc, d| acc.add(&d.weight(nv))))
}

/// For `π = 1π'` with `π'` dominant, the Lehmer code of `π'` without its zeros.
pub fn is_one_dominant(pi: &Permutation) -> Option<Vec<usize>> {
    if pi.is_empty() || pi.at(1) != 1 {
        return None;
    }
    let code = pi.lehmer_code();
    let tail = &code[1..];
    if tail.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    Some(tail.iter().copied().filter(|&c| c > 0).collect())
}

/// Column lengths of a partition given by its row lengths.
pub fn conjugate(lambda: &[usize]) -> Vec<usize> {
    let width = lambda.first().copied().unwrap_or(0);
    (1..=width).map(|c| lambda.iter().filter(|&&x| x >= c).count()).collect()
}

/// `𝔖_π` for `π = 1π'`, `π'` dominant, by the transition rule.
///
/// The partition `λ` in the rule lists the column lengths of the diagram of `π'`.
pub fn transition(pi: &Permutation) -> Result<SparsePolynomial> {
    let code = is_one_dominant(pi).ok_or_else(|| Error::NotOneDominant(pi.to_string()))?;
    let lambda = conjugate(&code);
    let width = lambda.iter().sum::<usize>() + lambda.len() + nvars(pi) + 2;
    let p = transition_partition(&lambda, width);
    let keep: Vec<usize> = (0..nvars(pi)).collect();
    Ok(p.keep_vars(&keep))
}

fn transition_partition(lambda: &[usize], width: usize) -> SparsePolynomial {
    let Some(&k) = lambda.last() else {
        return SparsePolynomial::one(width);
    };
    let z = lambda.len() as u32;
    let mut total = SparsePolynomial::zero(width);
    for l in 0..=k {
        let mu: Vec<usize> = lambda[..lambda.len() - 1]
            .iter()
            .map(|&x| x - (k - l))
            .filter(|&x| x > 0)
            .collect();
        let mut e = vec![0u32; width];
        for m in 1..=l {
            e[m - 1] += 1;
        }
        for p in l + 2..=k + 1 {
            e[p - 1] += z;
        }
        let phi: Vec<usize> = (1..=width)
            .map(|i| if i <= l + 1 { i - 1 } else { (i + k - l - 1).min(width - 1) })
            .collect();
        let inner = transition_partition(&mu, width);
        total = total.add(&SparsePolynomial::monomial(e, 1).mul(&inner.rename(width, &phi)));
    }
    total
}

/// Column counts `g_i(π)` of `core(π) ∪ {(1,1)}`; `core(π)` is not constructed here.
pub fn g_exponents(_pi: &Permutation) -> Result<Vec<u32>> {
    Err(Error::Unsupported("the core(π) column counts"))
}

/// Outcome of the polytopal-support checks on `𝔊_π`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub pi: Permutation,
    pub pipe_dreams: usize,
    pub snp: bool,
    pub components_gp: bool,
    pub schubert_01: bool,
    pub schubert_saturated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl PermutationReport {
    /// Polytopal support and GP components of `𝔊_π`.
    pub fn conjecture_holds(&self) -> bool {
        self.snp && self.components_gp
    }
}

fn report(pi: &Permutation) -> Result<PermutationReport> {
    let dreams = pipe_dreams(pi)?;
    let nv = nvars(pi);
    let g = dreams.iter().fold(SparsePolynomial::zero(nv), |acc, d| acc.add(&d.weight(nv)));
    let s = dreams
        .iter()
        .filter(|d| d.reduced)
        .fold(SparsePolynomial::zero(nv), |acc, d| acc.add(&d.weight(nv)));
    let gv = snp_check(&g)?;
    let sv = snp_check(&s)?;
    let schubert_01 = s.terms().values().all(|&c| c == 1);
    let mut counterexample = None;
    if let Some(w) = &gv.witness {
        counterexample = Some(format!("lattice point {w:?} of Newton(G) missing from the support"));
    } else if let Some(l) = gv.levels.iter().find(|l| !l.gp) {
        counterexample = Some(format!("degree {} component is not a generalized permutahedron", l.degree));
    }
    Ok(PermutationReport {
        pi: pi.clone(),
        pipe_dreams: dreams.len(),
        snp: gv.snp,
        components_gp: gv.components_gp,
        schubert_01,
        schubert_saturated: sv.snp && sv.components_gp,
        counterexample,
    })
}

/// Theorem C checks for `π = 1π'`, `π'` dominant.
pub fn verify_theorem_c(pi: &Permutation) -> Result<PermutationReport> {
    if is_one_dominant(pi).is_none() {
        return Err(Error::NotOneDominant(pi.to_string()));
    }
    let mut r = report(pi)?;
    if r.counterexample.is_none() && !r.schubert_01 {
        r.counterexample = Some("Schubert polynomial has a coefficient above 1".into());
    }
    if r.counterexample.is_none() && !r.schubert_saturated {
        r.counterexample = Some("Schubert support is not the lattice points of its hull".into());
    }
    Ok(r)
}

impl PermutationReport {
    pub fn theorem_c_holds(&self) -> bool {
        self.conjecture_holds() && self.schubert_01 && self.schubert_saturated
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub permutations: usize,
    pub counterexamples: usize,
    pub reports: Vec<PermutationReport>,
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} counterexamples / {} permutations", self.counterexamples, self.permutations)
    }
}

fn scan(perms: Vec<Permutation>, n: usize, check: fn(&Permutation) -> Result<PermutationReport>) -> Result<ScanReport> {
    check_size(n)?;
    let reports: Vec<PermutationReport> = perms.par_iter().map(check).collect::<Result<_>>()?;
    Ok(ScanReport {
        n,
        permutations: reports.len(),
        counterexamples: reports.iter().filter(|r| !r.conjecture_holds()).count(),
        reports,
    })
}

/// Polytopal support of `𝔊_π` and GP components for every `π ∈ S_n`.
pub fn conjecture_scan(n: usize) -> Result<ScanReport> {
    scan(Permutation::all(n).collect(), n, report)
}

/// [`verify_theorem_c`] for every `1π'` with `π'` dominant in `S_n`.
pub fn theorem_c_scan(n: usize) -> Result<ScanReport> {
    let perms = Permutation::all(n).filter(|p| is_one_dominant(p).is_some()).collect();
    let mut r = scan(perms, n, verify_theorem_c)?;
    r.counterexamples = r.reports.iter().filter(|x| !x.theorem_c_holds()).count();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn lehmer_roundtrip() {
        for q in Permutation::all(5) {
            assert_eq!(Permutation::from_code(&q.lehmer_code()).unwrap(), q);
        }
        assert_eq!(p("14523").lehmer_code(), vec![0, 2, 2, 0, 0]);
        assert!(Permutation::parse("1223").is_err());
        assert_eq!(p("3,1,2"), p("312"));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(3, &[]).unwrap(), (p("123"), true));
        assert_eq!(trace(2, &[(1, 1)]).unwrap(), (p("21"), true));
        assert_eq!(trace(4, &[(1, 1), (1, 3)]).unwrap(), (p("2143"), true));
        assert_eq!(trace(3, &[(1, 1), (2, 1)]).unwrap(), (p("231"), true));
        // strands 2 and 3 meet at (1,2) and again at (2,1)
        assert_eq!(trace(3, &[(1, 2), (2, 1)]).unwrap(), (p("132"), false));
    }

    #[test]
    fn identity_has_one_dream() {
        let d = pipe_dreams(&p("1234")).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].crosses.is_empty());
        assert_eq!(grothendieck(&p("1234")).unwrap(), SparsePolynomial::one(3));
    }

    #[test]
    fn schubert_14523() {
        assert_eq!(
            schubert(&p("14523")).unwrap().to_string_with("x"),
            "x1^2*x2^2 + x1^2*x2*x3 + x1^2*x3^2 + x1*x2^2*x3 + x1*x2*x3^2 + x2^2*x3^2"
        );
    }

    #[test]
    fn one_dominant() {
        assert_eq!(is_one_dominant(&p("14523")), Some(vec![2, 2]));
        assert_eq!(is_one_dominant(&p("1234")), Some(vec![]));
        assert_eq!(is_one_dominant(&p("21")), None);
        assert_eq!(is_one_dominant(&p("1243")), None);
        assert_eq!(is_one_dominant(&p("1324")), Some(vec![1]));
        assert_eq!(is_one_dominant(&p("1342")), Some(vec![1, 1]));
        assert_eq!(is_one_dominant(&p("1432")), Some(vec![2, 1]));
    }

    #[test]
    fn transition_matches_pipe_dreams() {
        for n in 1..=5 {
            for q in Permutation::all(n).filter(|q| is_one_dominant(q).is_some()) {
                assert_eq!(transition(&q).unwrap(), schubert(&q).unwrap(), "{q}");
            }
        }
        assert_eq!(transition(&p("1234")).unwrap(), SparsePolynomial::one(3));
        assert!(transition(&p("2134")).is_err());
    }

    #[test]
    fn stub_is_unsupported() {
        assert!(matches!(g_exponents(&p("14523")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn size_guard() {
        assert!(pipe_dreams(&Permutation::identity(9)).is_err());
    }
}
