//! Characters of `S_m` from the action on polytabloids.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symgroup::Permutation;

pub const SPECHT_LIMIT: usize = 5;

type Q = Ratio<i64>;

/// Tableau as rows of entries `0..m`.
type Tableau = Vec<Vec<usize>>;

fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let m = shape.size();
    let mut out = Vec::new();
    for p in Permutation::all(m) {
        let mut t: Tableau = Vec::new();
        let mut pos = 0;
        for &len in shape.parts() {
            t.push(p.0[pos..pos + len].to_vec());
            pos += len;
        }
        let rows_ok = t.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = (1..t.len()).all(|i| (0..t[i].len()).all(|j| t[i - 1][j] < t[i][j]));
        if rows_ok && cols_ok {
            out.push(t);
        }
    }
    out
}

/// Row index of each entry: the tabloid of `t`.
fn tabloid(t: &Tableau, m: usize) -> Vec<usize> {
    let mut rows = vec![0; m];
    for (i, r) in t.iter().enumerate() {
        for &e in r {
            rows[e] = i;
        }
    }
    rows
}

/// Signed sum of tabloids over the column group of `t`.
fn polytabloid(t: &Tableau, m: usize, index: &HashMap<Vec<usize>, usize>) -> Vec<Q> {
    let mut v = vec![Q::zero(); index.len()];
    let ncols = t[0].len();
    let cols: Vec<Vec<usize>> = (0..ncols).map(|j| t.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect();
    // product of the symmetric groups on the columns
    let choices: Vec<Vec<Permutation>> = cols.iter().map(|c| Permutation::all(c.len())).collect();
    let mut stack = vec![0usize; ncols];
    loop {
        let mut rows = tabloid(t, m);
        let mut sign = 1i64;
        for (j, c) in cols.iter().enumerate() {
            let p = &choices[j][stack[j]];
            sign *= p.sign();
            for (i, &e) in c.iter().enumerate() {
                rows[e] = p.0[i];
            }
        }
        v[index[&rows]] += Q::from_integer(sign);
        // odometer over the column groups
        let mut k = 0;
        loop {
            if k == ncols {
                return v;
            }
            stack[k] += 1;
            if stack[k] < choices[k].len() {
                break;
            }
            stack[k] = 0;
            k += 1;
        }
    }
}

/// Solve `basis * c = target` for `c`; the columns of `basis` are independent.
fn coordinates(basis: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let rows = target.len();
    let cols = basis.len();
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut r: Vec<Q> = basis.iter().map(|b| b[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut r = 0;
    let mut piv = Vec::new();
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        let inv = Q::one() / a[r][c];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..=cols {
                    let t = a[r][j];
                    a[i][j] -= f * t;
                }
            }
        }
        piv.push(r);
        r += 1;
    }
    if (r..rows).any(|i| !a[i][cols].is_zero()) {
        return None;
    }
    Some(piv.iter().map(|&i| a[i][cols]).collect())
}

/// `chi^mu(rho)` as the trace of a permutation of cycle type `rho` on the
/// Specht module spanned by standard polytabloids.
pub fn brute_symmetric_character(mu: &Partition, rho: &Partition) -> Result<i64> {
    let m = mu.size();
    if rho.size() != m {
        return Err(Error::Invalid(format!("{mu} and {rho} have different sizes")));
    }
    if m > SPECHT_LIMIT {
        return Err(Error::Infeasible(format!("Specht module model limited to m <= {SPECHT_LIMIT}")));
    }
    if m == 0 {
        return Ok(1);
    }
    let mut index = HashMap::new();
    for p in Permutation::all(m) {
        let mut t: Tableau = Vec::new();
        let mut pos = 0;
        for &len in mu.parts() {
            t.push(p.0[pos..pos + len].to_vec());
            pos += len;
        }
        let key = tabloid(&t, m);
        let next = index.len();
        index.entry(key).or_insert(next);
    }
    let std = standard_tableaux(mu);
    let basis: Vec<Vec<Q>> = std.iter().map(|t| polytabloid(t, m, &index)).collect();
    let sigma = Permutation::with_cycle_type(rho);
    let mut trace = Q::zero();
    for (k, t) in std.iter().enumerate() {
        let moved: Tableau = t.iter().map(|r| r.iter().map(|&e| sigma.0[e]).collect()).collect();
        let image = polytabloid(&moved, m, &index);
        let c = coordinates(&basis, &image).ok_or_else(|| Error::Internal("polytabloid outside the Specht module".into()))?;
        trace += c[k];
    }
    if !trace.is_integer() {
        return Err(Error::Internal(format!("non-integral trace {trace}")));
    }
    Ok(trace.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn specht_examples() {
        assert_eq!(brute_symmetric_character(&p("3"), &p("2,1")).unwrap(), 1);
        assert_eq!(brute_symmetric_character(&p("2,1"), &p("1,1,1")).unwrap(), 2);
        assert_eq!(brute_symmetric_character(&p("2,2"), &p("2,2")).unwrap(), 2);
        assert_eq!(brute_symmetric_character(&p("1,1,1"), &p("2,1")).unwrap(), -1);
        assert!(brute_symmetric_character(&p("3,3"), &p("6")).is_err());
    }
}
