//! Symmetric groups: permutations, character tables (Murnaghan-Nakayama),
//! the a-function, traces of the preferred extension to the twisted group,
//! and restriction multiplicities to Young subgroups.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};

/// A permutation of `0..m`, acting as `i -> self.0[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// The longest element `i -> m-1-i`.
    pub fn longest(m: usize) -> Self {
        Permutation((0..m).rev().collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(self * o)(i) = self(o(i))`.
    pub fn compose(&self, o: &Permutation) -> Permutation {
        Permutation(o.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Permutation(v)
    }

    pub fn cycle_type(&self) -> Partition {
        let m = self.0.len();
        let mut seen = vec![false; m];
        let mut lens = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        Partition::new(lens)
    }

    /// Cycles in order of their smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.0.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = self.0[i];
            }
            out.push(c);
        }
        out
    }

    /// A permutation with the given cycle type, cycles on consecutive points.
    pub fn with_cycle_type(rho: &Partition) -> Permutation {
        let mut v = Vec::with_capacity(rho.size());
        let mut start = 0;
        for &c in rho.parts() {
            for k in 0..c {
                v.push(start + (k + 1) % c);
            }
            start += c;
        }
        Permutation(v)
    }

    pub fn sign(&self) -> i64 {
        let rho = self.cycle_type();
        if (rho.size() - rho.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `0..m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if cur.len() == used.len() {
                out.push(Permutation(cur.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; m], &mut out);
        out
    }
}

/// The character table of `S_m`.
///
/// Rows are irreducibles and columns are cycle types, both listed in the
/// order of [`partitions_of`].
#[derive(Debug)]
pub struct CharTable {
    pub m: usize,
    pub labels: Vec<Partition>,
    index: HashMap<Partition, usize>,
    pub values: Vec<Vec<i64>>,
}

impl CharTable {
    pub fn value(&self, mu: &Partition, rho: &Partition) -> Result<i64> {
        let i = self.index.get(mu).ok_or_else(|| size_err(mu, self.m))?;
        let j = self.index.get(rho).ok_or_else(|| size_err(rho, self.m))?;
        Ok(self.values[*i][*j])
    }

    /// Size of the conjugacy class of cycle type `rho`.
    pub fn class_size(&self, rho: &Partition) -> u128 {
        factorial(self.m) / rho.z_value()
    }

    /// CSV dump with a header row of cycle types.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["irrep\\class".to_string()];
        header.extend(self.labels.iter().map(|p| p.to_string()));
        w.write_record(&header).unwrap();
        for (i, mu) in self.labels.iter().enumerate() {
            let mut row = vec![mu.to_string()];
            row.extend(self.values[i].iter().map(|v| v.to_string()));
            w.write_record(&row).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

fn size_err(p: &Partition, m: usize) -> Error {
    Error::Invalid(format!("{p} is not a partition of {m}"))
}

pub fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// Cached character table of `S_m`; built once per `m`.
pub fn char_table(m: usize) -> Arc<CharTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(t) = guard.get(&m) {
        return t.clone();
    }
    let labels = partitions_of(m);
    let index = labels.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut memo = HashMap::new();
    let values = labels
        .iter()
        .map(|mu| labels.iter().map(|rho| mn_value(&beta_set(mu), rho.parts(), &mut memo)).collect())
        .collect();
    let t = Arc::new(CharTable { m, labels, index, values });
    guard.insert(m, t.clone());
    t
}

/// First-column hook lengths: `mu_i + (len - i - 1)`, a strictly decreasing set.
fn beta_set(mu: &Partition) -> Vec<usize> {
    let l = mu.len();
    mu.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect()
}

/// Murnaghan-Nakayama on beta-sets: removing a rim hook of length `r`
/// moves one bead from `b` to `b - r`; the sign counts beads jumped over.
fn mn_value(beta: &[usize], rho: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let key = (beta.to_vec(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[0];
    let rest = &rho[1..];
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.to_vec();
        nb[idx] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * mn_value(&nb, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `chi^mu(rho)`.
pub fn character_value(mu: &Partition, rho: &Partition) -> Result<i64> {
    if mu.size() != rho.size() {
        return Err(Error::Invalid(format!("irrep {mu} and class {rho} have different sizes")));
    }
    char_table(mu.size()).value(mu, rho)
}

/// Lusztig's a-function on `S_m`, equal to `n(mu)`.
pub fn a_value(mu: &Partition) -> usize {
    mu.n_invariant()
}

/// Trace of `w` (or of `w * sigma` in the twisted case) on the preferred
/// extension of `chi^mu`, where `sigma` acts as `(-1)^a(mu) * w0`.
pub fn twisted_trace(mu: &Partition, w: &Permutation, twisted: bool) -> Result<i64> {
    if mu.size() != w.degree() {
        return Err(Error::Invalid(format!("irrep {mu} and permutation of degree {} differ in size", w.degree())));
    }
    if !twisted {
        return character_value(mu, &w.cycle_type());
    }
    let ww0 = w.compose(&Permutation::longest(w.degree()));
    Ok(sign_pow(a_value(mu)) * character_value(mu, &ww0.cycle_type())?)
}

/// Same as [`twisted_trace`] but keyed by a cycle type: of `w` when untwisted,
/// of `w * w0` when twisted.
pub fn twisted_trace_class(mu: &Partition, rho: &Partition, twisted: bool) -> Result<i64> {
    let v = character_value(mu, rho)?;
    Ok(if twisted { sign_pow(a_value(mu)) * v } else { v })
}

pub fn sign_pow(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Multiplicity of `chi^{nu_1} x ... x chi^{nu_k}` in the restriction of
/// `chi^mu` to `S_{m_1} x ... x S_{m_k}`, by character inner product.
pub fn restriction_multiplicity(mu: &Partition, factors: &[Partition]) -> Result<i64> {
    let m: usize = factors.iter().map(|f| f.size()).sum();
    if m != mu.size() {
        return Err(Error::Invalid(format!("factor sizes sum to {m}, expected {}", mu.size())));
    }
    // iterate over tuples of cycle types, one per factor
    let classes: Vec<Vec<Partition>> = factors.iter().map(|f| partitions_of(f.size())).collect();
    let mut total: i128 = 0;
    let mut idx = vec![0usize; factors.len()];
    loop {
        let mut weight: i128 = 1;
        let mut parts = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            let rho = &classes[k][idx[k]];
            let t = char_table(f.size());
            weight *= t.class_size(rho) as i128 * t.value(f, rho)? as i128;
            parts.extend_from_slice(rho.parts());
        }
        total += weight * character_value(mu, &Partition::new(parts))? as i128;
        // odometer
        let mut k = 0;
        loop {
            if k == factors.len() {
                let order: i128 = factors.iter().map(|f| factorial(f.size()) as i128).product();
                debug_assert_eq!(total % order, 0);
                return Ok((total / order) as i64);
            }
            idx[k] += 1;
            if idx[k] < classes[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn character_examples() {
        for rho in partitions_of(4) {
            assert_eq!(character_value(&Partition::row(4), &rho).unwrap(), 1);
            let sign = if (4 - rho.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(character_value(&Partition::column(4), &rho).unwrap(), sign);
        }
        assert_eq!(character_value(&p("2,1"), &p("3")).unwrap(), -1);
        assert_eq!(character_value(&p("2,1"), &p("1,1,1")).unwrap(), 2);
        assert!(character_value(&p("2,1"), &p("2,2")).is_err());
    }

    #[test]
    fn a_values() {
        assert_eq!(a_value(&Partition::row(5)), 0);
        assert_eq!(a_value(&Partition::column(5)), 10);
        assert_eq!(a_value(&p("2,1")), 1);
    }

    #[test]
    fn twisted_examples() {
        let id3 = Permutation::identity(3);
        assert_eq!(twisted_trace(&Partition::row(3), &id3, true).unwrap(), 1);
        assert_eq!(twisted_trace(&Partition::column(2), &Permutation::identity(2), true).unwrap(), 1);
        assert_eq!(twisted_trace(&p("2,1"), &id3, false).unwrap(), 2);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction_multiplicity(&Partition::row(5), &[p("3"), p("2")]).unwrap(), 1);
        assert_eq!(restriction_multiplicity(&p("2,1"), &[p("2"), p("1")]).unwrap(), 1);
        assert_eq!(restriction_multiplicity(&p("2,1"), &[p("1,1"), p("1")]).unwrap(), 1);
        assert_eq!(restriction_multiplicity(&p("3"), &[p("1,1"), p("1")]).unwrap(), 0);
    }

    #[test]
    fn twisted_trace_is_twisted_class_function() {
        for m in 1..=5 {
            let w0 = Permutation::longest(m);
            let all = Permutation::all(m);
            for mu in partitions_of(m) {
                for w in &all {
                    let base = twisted_trace(&mu, w, true).unwrap();
                    for x in &all {
                        // x w sigma(x)^-1 with sigma(x) = w0 x w0
                        let sx = w0.compose(x).compose(&w0);
                        let conj = x.compose(w).compose(&sx.inverse());
                        assert_eq!(twisted_trace(&mu, &conj, true).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for m in 1..=7 {
            let t = char_table(m);
            for (i, _) in t.labels.iter().enumerate() {
                for (j, _) in t.labels.iter().enumerate() {
                    let s: i128 = t
                        .labels
                        .iter()
                        .enumerate()
                        .map(|(k, rho)| t.class_size(rho) as i128 * (t.values[i][k] * t.values[j][k]) as i128)
                        .sum();
                    let expect = if i == j { factorial(m) as i128 } else { 0 };
                    assert_eq!(s, expect);
                }
            }
        }
    }
}
