//! Integer partitions: Jordan types of unipotent classes and labels of
//! symmetric-group irreducibles.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition stored with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts into decreasing order and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `sum (i-1) * lambda_i`.
    pub fn n_invariant(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Dominance order: `self >= other` iff every partial sum of `self`
    /// is at least the corresponding partial sum of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn dominance_cmp(&self, other: &Partition) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// `lambda / d` when `d` divides every part.
    pub fn d_quotient(&self, d: usize) -> Option<Partition> {
        if d == 0 || self.0.iter().any(|p| p % d != 0) {
            return None;
        }
        Some(Partition(self.0.iter().map(|p| p / d).collect()))
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// gcd of the parts (0 for the empty partition).
    pub fn parts_gcd(&self) -> usize {
        self.0.iter().fold(0, |g, &p| num_integer::gcd(g, p))
    }

    /// `sum (lambda'_j)^2`.
    pub fn transpose_square_sum(&self) -> usize {
        self.transpose().0.iter().map(|c| c * c).sum()
    }

    /// Order of the centralizer of a permutation of this cycle type.
    pub fn z_value(&self) -> u128 {
        let mut z: u128 = 1;
        for (p, m) in self.multiplicities() {
            z *= (p as u128).pow(m as u32);
            z *= (1..=m as u128).product::<u128>();
        }
        z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("partition part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse(format!("partition {s:?} has a zero part")));
        }
        Ok(Partition::new(parts))
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in reverse lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Family of the ambient group, for dimension bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    GL,
    SL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassDims {
    pub dim_c: usize,
    pub dim_z_of_u: usize,
    pub d_u: usize,
}

/// Dimensions attached to the unipotent class of Jordan type `lambda`.
pub fn class_dims(n: usize, lambda: &Partition, family: Family) -> Result<ClassDims> {
    if lambda.size() != n {
        return Err(Error::Invalid(format!("partition {lambda} is not a partition of {n}")));
    }
    let s = lambda.transpose_square_sum();
    let dim_c = n * n - s;
    let dim_z_of_u = match family {
        Family::GL => s,
        Family::SL => s - 1,
    };
    Ok(ClassDims { dim_c, dim_z_of_u, d_u: lambda.n_invariant() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p("2,1").transpose(), p("2,1"));
        assert_eq!(Partition::row(4).transpose(), Partition::column(4));
        assert_eq!(p("3,1").transpose(), p("2,1,1"));
    }

    #[test]
    fn n_invariant_examples() {
        assert_eq!(Partition::row(5).n_invariant(), 0);
        assert_eq!(Partition::column(5).n_invariant(), 10);
        assert_eq!(p("2,1").n_invariant(), 1);
    }

    #[test]
    fn dims_examples() {
        let c = class_dims(4, &Partition::row(4), Family::GL).unwrap();
        assert_eq!((c.dim_c, c.d_u), (12, 0));
        assert_eq!(class_dims(4, &Partition::column(4), Family::GL).unwrap().dim_c, 0);
        let c = class_dims(3, &p("2,1"), Family::GL).unwrap();
        assert_eq!((c.dim_z_of_u, c.dim_c, c.d_u), (5, 4, 1));
        assert!(class_dims(4, &p("2,1"), Family::GL).is_err());
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(p("4,2").d_quotient(2), Some(p("2,1")));
        assert_eq!(p("3,1").d_quotient(2), None);
        assert_eq!(p("3,3,3").d_quotient(3), Some(p("1,1,1")));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
