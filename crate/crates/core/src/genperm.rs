//! Generalized permutahedra given by `z`-parameters or as Minkowski sums of simplices.
//!
//! Subsets of `[n]` are bit masks: element `i` is bit `i - 1`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_GENPERM_DIM: usize = 16;

/// Elements of `[n]` in a mask.
pub fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

fn mask_key(mask: u32) -> String {
    members(mask).iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `P_n^z({z_I})`: points with `Σ_{i∈I} t_i >= z_I` for all `I` and `Σ t_i = z_[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenPermSpec {
    n: usize,
    z: Vec<i64>,
}

impl GenPermSpec {
    /// `z` indexed by mask, `z[0]` must be 0.
    pub fn new(n: usize, z: Vec<i64>) -> Result<Self> {
        if n > MAX_GENPERM_DIM {
            return Err(Error::Limit { what: "generalized permutahedron dimension", size: n, limit: MAX_GENPERM_DIM });
        }
        if z.len() != 1 << n {
            return Err(Error::Dimension(z.len(), 1 << n));
        }
        if z[0] != 0 {
            return Err(Error::Parse("z of the empty set must be 0".into()));
        }
        Ok(GenPermSpec { n, z })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> i64) -> Result<Self> {
        let mut z: Vec<i64> = (0..1u32 << n).map(f).collect();
        if let Some(z0) = z.first_mut() {
            *z0 = 0;
        }
        Self::new(n, z)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self, mask: u32) -> i64 {
        self.z[mask as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.z
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// First pair `(I, J)` with `z_{I∪J} + z_{I∩J} < z_I + z_J`.
    pub fn supermodular_violation(&self) -> Option<(u32, u32)> {
        let size = 1u32 << self.n;
        for i in 0..size {
            for j in i + 1..size {
                if self.z(i | j) + self.z(i & j) < self.z(i) + self.z(j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check_supermodular(&self) -> Result<()> {
        match self.supermodular_violation() {
            None => Ok(()),
            Some((i, j)) => Err(Error::NotSupermodular { i: members(i), j: members(j) }),
        }
    }

    pub fn contains(&self, t: &[i64]) -> bool {
        if t.len() != self.n {
            return false;
        }
        let sum = |m: u32| members(m).iter().map(|&i| t[i - 1]).sum::<i64>();
        sum(self.full()) == self.z(self.full()) && (1..=self.full()).all(|m| sum(m) >= self.z(m))
    }

    /// Every integer point, in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        self.check_supermodular()?;
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Vec::new());
            return Ok(out);
        }
        let mut t = vec![0i64; self.n];
        self.extend(0, &mut t, &mut out);
        Ok(out)
    }

    fn extend(&self, k: usize, t: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let full = self.full();
        if k == self.n {
            if t.iter().sum::<i64>() == self.z(full) {
                out.push(t.clone());
            }
            return;
        }
        let bit = 1u32 << k;
        let lo = self.z(bit);
        let hi = self.z(full) - self.z(full & !bit);
        for x in lo..=hi {
            t[k] = x;
            // prefix constraints for subsets of {1..k+1} containing k+1
            let ok = (0..bit).all(|rest| {
                let m = rest | bit;
                let s: i64 = (0..=k).filter(|b| m >> b & 1 == 1).map(|b| t[b]).sum();
                s >= self.z(m) && s <= self.z(full) - self.z(full & !m)
            });
            if ok {
                self.extend(k + 1, t, out);
            }
        }
    }

    /// `{n, z: {"1,3": v, ...}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let z: BTreeMap<String, i64> = (1..=self.full()).map(|m| (mask_key(m), self.z(m))).collect();
        serde_json::json!({ "n": self.n, "z": z })
    }
}

/// `Σ_I y_I Δ_I`. Negative `y` are stored as given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinkowskiSpec {
    pub n: usize,
    pub y: BTreeMap<u32, i64>,
}

impl MinkowskiSpec {
    pub fn is_nonnegative(&self) -> bool {
        self.y.values().all(|&v| v >= 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let y: BTreeMap<String, i64> = self.y.iter().map(|(m, v)| (mask_key(*m), *v)).collect();
        serde_json::json!({ "n": self.n, "y": y })
    }
}

/// `z_I = Σ_{J ⊆ I} y_J`.
pub fn minkowski_to_z(spec: &MinkowskiSpec) -> Result<GenPermSpec> {
    GenPermSpec::from_fn(spec.n, |i| {
        spec.y.iter().filter(|(j, _)| *j & !i == 0).map(|(_, v)| v).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_spec_points() {
        // z_{1} = 0, z_{2} = 1, z_{12} = 2
        let s = GenPermSpec::new(2, vec![0, 0, 1, 2]).unwrap();
        assert_eq!(s.lattice_points().unwrap(), vec![vec![0, 2], vec![1, 1]]);
    }

    #[test]
    fn modular_spec_is_a_point() {
        let p = [3i64, 0, 2];
        let s = GenPermSpec::from_fn(3, |m| members(m).iter().map(|&i| p[i - 1]).sum()).unwrap();
        assert_eq!(s.lattice_points().unwrap(), vec![p.to_vec()]);
    }

    #[test]
    fn hypersimplex() {
        for n in 1..=5usize {
            for k in 0..=n {
                let s = GenPermSpec::from_fn(n, |m| (m.count_ones() as i64 - (n - k) as i64).max(0)).unwrap();
                let pts = s.lattice_points().unwrap();
                let binom = (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(pts.len(), binom);
                assert!(pts.iter().all(|p| p.iter().all(|&x| x == 0 || x == 1)));
            }
        }
    }

    #[test]
    fn non_supermodular_rejected() {
        let s = GenPermSpec::new(2, vec![0, 1, 1, 1]).unwrap();
        assert_eq!(s.supermodular_violation(), Some((1, 2)));
        assert!(matches!(s.lattice_points(), Err(Error::NotSupermodular { .. })));
    }

    #[test]
    fn simplex_from_y() {
        let spec = MinkowskiSpec { n: 3, y: [(0b111, 1)].into() };
        let z = minkowski_to_z(&spec).unwrap();
        for m in 1..7 {
            assert_eq!(z.z(m), 0);
        }
        assert_eq!(z.z(7), 1);
        assert_eq!(z.lattice_points().unwrap().len(), 3);
    }

    #[test]
    fn path_decomposition() {
        let spec = MinkowskiSpec { n: 2, y: [(0b11, 1), (0b10, 1)].into() };
        assert_eq!(minkowski_to_z(&spec).unwrap().values(), &[0, 0, 1, 2]);
    }

    #[test]
    fn contains_matches_enumeration() {
        let s = GenPermSpec::new(3, vec![0, 0, 0, 1, 0, 1, 1, 3]).unwrap();
        let pts = s.lattice_points().unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                let p = vec![a, b, 3 - a - b];
                assert_eq!(s.contains(&p), pts.contains(&p), "{p:?}");
            }
        }
    }
}
