//! Sparse multivariate polynomials with integer coefficients, and univariate
//! rational polynomials for Ehrhart counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exp: Vec<u32>, coeff: i64) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coeff);
        p
    }

    /// The variable `t_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coeff: i64) {
        assert_eq!(exp.len(), self.nvars, "exponent length");
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[u32]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    /// Distinct total degrees, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_component(&self, degree: u32) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Component of lowest degree (zero for the zero polynomial).
    pub fn lowest_component(&self) -> SparsePolynomial {
        match self.degrees().first() {
            Some(&d) => self.homogeneous_component(d),
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// Value with every variable set to `x`.
    pub fn eval_all(&self, x: i64) -> i128 {
        self.terms
            .iter()
            .map(|(e, c)| *c as i128 * (x as i128).pow(e.iter().sum()))
            .sum()
    }

    pub fn eval(&self, xs: &[i64]) -> i128 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(xs)
                    .fold(*c as i128, |acc, (p, x)| acc * (*x as i128).pow(*p))
            })
            .sum()
    }

    /// Moves variable `i` to position `map[i]` in a polynomial with `nvars` variables.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> SparsePolynomial {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, p) in e.iter().enumerate() {
                f[map[i]] += p;
            }
            out.add_term(f, *c);
        }
        out
    }

    /// `p(t_n, ..., t_1)`.
    pub fn reverse_vars(&self) -> SparsePolynomial {
        let n = self.nvars;
        let map: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        self.rename(n, &map)
    }

    /// Keeps only the listed variables, which must carry every nonzero exponent.
    pub fn keep_vars(&self, keep: &[usize]) -> SparsePolynomial {
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            debug_assert!(e
                .iter()
                .enumerate()
                .all(|(i, p)| *p == 0 || keep.contains(&i)));
            out.add_term(keep.iter().map(|&i| e[i]).collect(), *c);
        }
        out
    }

    /// Renders with variable names `{name}{i}`.
    pub fn to_string_with(&self, name: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut items: Vec<(&Vec<u32>, &i64)> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            let (da, db) = (a.0.iter().sum::<u32>(), b.0.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (k, (e, &c)) in items.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, p)| **p > 0)
                .map(|(i, p)| {
                    if *p == 1 {
                        format!("{name}{}", i + 1)
                    } else {
                        format!("{name}{}^{p}", i + 1)
                    }
                })
                .collect();
            let body = mono.join("*");
            let mag = c.abs();
            let term = match (mag, body.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => body,
                (_, false) => format!("{mag}*{body}"),
            };
            match (k, c < 0) {
                (0, false) => s.push_str(&term),
                (0, true) => s.push_str(&format!("-{term}")),
                (_, false) => s.push_str(&format!(" + {term}")),
                (_, true) => s.push_str(&format!(" - {term}")),
            }
        }
        s
    }

    /// `{n, terms: [{exp, coeff}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [u32],
            coeff: i64,
        }
        let terms: Vec<Term> = self.terms.iter().map(|(e, c)| Term { exp: e, coeff: *c }).collect();
        serde_json::json!({ "n": self.nvars, "terms": terms })
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with("t"))
    }
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<BigRational>);

impl QPoly {
    pub fn constant(c: BigRational) -> Self {
        QPoly(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let len = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        QPoly(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trimmed()
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return QPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    /// `binomial(t + i, i)` as a polynomial in `t`.
    pub fn binomial_shifted(i: usize) -> QPoly {
        let mut p = QPoly::constant(BigRational::one());
        for r in 1..=i {
            let r = BigRational::from_integer(BigInt::from(r));
            let factor = QPoly(vec![r.clone(), BigRational::one()]).scale(&r.recip());
            p = p.mul(&factor);
        }
        p
    }

    pub fn eval(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(BigInt::from(t));
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}
