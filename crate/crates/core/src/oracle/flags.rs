//! Counting `u`-stable partial flags with regular subquotients, and fitting
//! polynomials to the counts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::field::{Elt, Field, Mat};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qpoly::Poly;

/// Refuse enumerations with more candidate vectors than this.
pub const FLAG_ENUMERATION_LIMIT: u64 = 5_000_000;

/// Number of chains `V_d < V_2d < ... < V` stable under the nilpotent of Jordan
/// type `lambda` on which it acts regularly on every `V_kd / V_(k-1)d`. For
/// `d = 1` this is the number of rational points of the Springer fibre.
pub fn count_flags(q: u32, lambda: &Partition, d: usize) -> Result<u128> {
    if d == 0 {
        return Err(Error::Invalid("step d must be positive".into()));
    }
    if lambda.parts().iter().any(|&p| p % d != 0) {
        return Err(Error::Invalid(format!("{d} does not divide every part of {lambda}")));
    }
    let f = Field::new(q)?;
    let free: usize = lambda.parts().iter().map(|&p| p.min(d)).sum();
    let size = (q as u64).checked_pow(free as u32).unwrap_or(u64::MAX);
    if size > FLAG_ENUMERATION_LIMIT {
        return Err(Error::Infeasible(format!(
            "flag count for {lambda}, d = {d}, q = {q} needs {q}^{free} candidates, limit {FLAG_ENUMERATION_LIMIT}"
        )));
    }
    let mut memo = HashMap::new();
    count_rec(&f, lambda, d, &mut memo)
}

fn count_rec(f: &Field, lambda: &Partition, d: usize, memo: &mut HashMap<Partition, u128>) -> Result<u128> {
    if lambda.is_empty() {
        return Ok(1);
    }
    if let Some(&c) = memo.get(lambda) {
        return Ok(c);
    }
    let tally = quotient_types(f, lambda, d);
    let q = f.q as u128;
    let generators = q.pow(d as u32) - q.pow(d as u32 - 1);
    let mut total = 0u128;
    for (mu, k) in tally {
        total += k as u128 * count_rec(f, &mu, d, memo)?;
    }
    if total % generators != 0 {
        return Err(Error::Internal(format!("flag count for {lambda} not divisible by {generators}")));
    }
    let c = total / generators;
    memo.insert(lambda.clone(), c);
    Ok(c)
}

/// For each cyclic vector `v` of a `d`-dimensional stable subspace
/// `W = <v, xv, ..., x^(d-1) v>` (so `x^d v = 0 != x^(d-1) v`), the Jordan type
/// of `x` on `V / W`, tallied.
fn quotient_types(f: &Field, lambda: &Partition, d: usize) -> HashMap<Partition, u64> {
    let parts = lambda.parts().to_vec();
    let n = lambda.size();
    let offsets: Vec<usize> = parts.iter().scan(0, |s, &p| {
        let o = *s;
        *s += p;
        Some(o)
    }).collect();
    // coordinates (k, j) with j <= d, j 1-based
    let free: Vec<(usize, usize)> =
        parts.iter().enumerate().flat_map(|(k, &p)| (1..=p.min(d)).map(move |j| (k, j))).collect();
    let q = f.q as u64;
    let total = q.pow(free.len() as u32);
    let top = parts[0];
    let offsets = &offsets;
    (0..total)
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Partition, u64>, idx| {
            let mut v = vec![0 as Elt; n];
            let mut x = idx;
            let mut leading = false;
            for &(k, j) in &free {
                let c = (x % q) as Elt;
                x /= q;
                v[offsets[k] + j - 1] = c;
                if j == d && c != 0 {
                    leading = true;
                }
            }
            if !leading {
                return acc;
            }
            // W spanned by x^i v; x shifts coordinates down by one inside each block
            let w: Vec<Vec<Elt>> = (0..d)
                .map(|i| {
                    let mut out = vec![0 as Elt; n];
                    for (k, &p) in parts.iter().enumerate() {
                        for j in 1..=p {
                            if j > i {
                                out[offsets[k] + j - 1 - i] = v[offsets[k] + j - 1];
                            }
                        }
                    }
                    out
                })
                .collect();
            // dim(x^s V + W) - d for s = 0, 1, ...; x^s V is spanned by coordinates j <= p - s
            let mut ranks = Vec::with_capacity(top + 1);
            for s in 0..=top {
                let img: usize = parts.iter().map(|&p| p.saturating_sub(s)).sum();
                let outside: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &p)| (p.saturating_sub(s) + 1..=p).map(move |j| offsets[k] + j - 1))
                    .collect();
                let mut m = Mat::zeros(d, outside.len());
                for (r, row) in w.iter().enumerate() {
                    for (c, &pos) in outside.iter().enumerate() {
                        m.set(r, c, row[pos]);
                    }
                }
                ranks.push(img + m.rank(f) - d);
            }
            // parts of length >= s: ranks[s-1] - ranks[s]
            let mut conj = Vec::new();
            for s in 1..=top {
                let c = ranks[s - 1] - ranks[s];
                if c > 0 {
                    conj.push(c);
                }
            }
            let mu = Partition::new(conj).transpose();
            *acc.entry(mu).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Result of [`interpolate_counts`].
#[derive(Clone, Debug, PartialEq)]
pub struct Interpolation {
    pub poly: Poly,
    pub integral: bool,
    pub nonnegative: bool,
    /// Whether points beyond the first `degree_bound + 1` lie on the curve.
    pub consistent: bool,
    pub degree: Option<usize>,
    pub expected_degree: Option<usize>,
}

impl Interpolation {
    pub fn ok(&self) -> bool {
        self.integral && self.nonnegative && self.consistent && self.expected_degree.is_none_or(|e| self.degree == Some(e))
    }

    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.integral {
            out.push("non-integer coefficient".to_string());
        }
        if !self.nonnegative {
            out.push("negative coefficient: no affine paving".to_string());
        }
        if !self.consistent {
            out.push("extra sample points do not fit".to_string());
        }
        if let Some(e) = self.expected_degree {
            if self.degree != Some(e) {
                out.push(format!("degree {:?}, expected {e}", self.degree));
            }
        }
        out
    }
}

/// Lagrange interpolation through the first `degree_bound + 1` points; the
/// rest are used as a check.
pub fn interpolate_counts(
    counts: &[(i64, i128)],
    degree_bound: usize,
    expected_degree: Option<usize>,
) -> Result<Interpolation> {
    if counts.len() < degree_bound + 1 {
        return Err(Error::Invalid(format!(
            "{} sample points cannot fix a polynomial of degree {degree_bound}",
            counts.len()
        )));
    }
    let (fit, rest) = counts.split_at(degree_bound + 1);
    let mut xs: Vec<i64> = fit.iter().map(|c| c.0).collect();
    xs.sort_unstable();
    xs.dedup();
    if xs.len() != fit.len() {
        return Err(Error::Invalid("repeated sample point".into()));
    }
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut poly = Poly::zero();
    for (i, &(xi, yi)) in fit.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in fit.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::from_coeffs(vec![big(-xj), BigRational::one()]);
                denom *= big(xi - xj);
            }
        }
        let c = BigRational::from_integer(BigInt::from(yi)) / denom;
        poly = &poly + &basis.scale(&c);
    }
    let consistent = rest.iter().all(|&(x, y)| poly.eval(&big(x)) == BigRational::from_integer(BigInt::from(y)));
    Ok(Interpolation {
        integral: poly.coeffs().iter().all(|c| c.is_integer()),
        nonnegative: poly.coeffs().iter().all(|c| !c.is_negative()),
        consistent,
        degree: poly.degree(),
        expected_degree,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn flag_examples() {
        for q in [2, 3, 4, 5] {
            assert_eq!(count_flags(q, &part("3"), 1).unwrap(), 1);
            assert_eq!(count_flags(q, &part("1,1"), 1).unwrap(), q as u128 + 1);
            // full flags of F_q^3
            assert_eq!(count_flags(q, &part("1,1,1"), 1).unwrap(), (1 + q as u128) * (1 + q as u128 + (q * q) as u128));
        }
        assert_eq!(count_flags(2, &part("2,1"), 1).unwrap(), 5);
        assert_eq!(count_flags(3, &part("2,2"), 2).unwrap(), 12);
        assert!(count_flags(2, &part("2,1"), 2).is_err());
        assert!(matches!(count_flags(97, &part("1,1,1,1,1,1"), 1), Err(Error::Infeasible(_))));
    }

    #[test]
    fn interpolation_examples() {
        let pts: Vec<(i64, i128)> = [2, 3, 4].iter().map(|&q| (q, count_flags(q as u32, &part("2,1"), 1).unwrap() as i128)).collect();
        let fit = interpolate_counts(&pts, 2, Some(1)).unwrap();
        assert_eq!(fit.poly, Poly::from_ints(&[1, 2]));
        assert!(fit.ok());
        let fit = interpolate_counts(&[(2, 1), (3, 1)], 1, Some(0)).unwrap();
        assert_eq!(fit.poly, Poly::one());
        assert!(interpolate_counts(&[(2, 1)], 1, None).is_err());
        let bad = interpolate_counts(&[(0, 1), (1, 0), (2, 1)], 2, None).unwrap();
        assert!(!bad.nonnegative);
        assert!(!bad.ok());
    }
}
