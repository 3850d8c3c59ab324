//! A second, naive flag counter over prime fields: builds every stable
//! subspace dimension by dimension, then counts chains. Shares nothing with
//! the library counter beyond the definition.

use std::collections::{HashMap, HashSet};

use gengreen::oracle::count_flags;
use gengreen::partitions::Partition;

type Space = Vec<Vec<u32>>;

fn rref(mut rows: Vec<Vec<u32>>, p: u32, n: usize) -> Space {
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(r, piv);
        let inv = (1..p).find(|k| k * rows[r][c] % p == 1).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] % p != 0 {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot) {
                    *a = (*a + p * p - f * b % p) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn shift(parts: &[usize], v: &[u32]) -> Vec<u32> {
    let mut out = vec![0; v.len()];
    let mut o = 0;
    for &len in parts {
        for j in 1..len {
            out[o + j - 1] = v[o + j];
        }
        o += len;
    }
    out
}

fn naive_count(parts: &[usize], d: usize, p: u32) -> u64 {
    let n: usize = parts.iter().sum();
    let vecs: Vec<Vec<u32>> = (1..p.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = k % p;
                    k /= p;
                    c
                })
                .collect()
        })
        .collect();
    let mut by_dim: Vec<HashSet<Space>> = vec![HashSet::from([Vec::new()])];
    for k in 1..=n {
        let mut next = HashSet::new();
        for s in &by_dim[k - 1] {
            for v in &vecs {
                let mut rows = s.clone();
                rows.push(v.clone());
                let t = rref(rows, p, n);
                if t.len() != k {
                    continue;
                }
                let stable = t.iter().all(|row| {
                    let mut rows = t.clone();
                    rows.push(shift(parts, row));
                    rref(rows, p, n).len() == k
                });
                if stable {
                    next.insert(t);
                }
            }
        }
        by_dim.push(next);
    }
    let mut counts: HashMap<Space, u64> = HashMap::from([(Vec::new(), 1)]);
    for k in (d..=n).step_by(d) {
        let mut next = HashMap::new();
        for t in &by_dim[k] {
            let mut total = 0;
            for (s, c) in &counts {
                let mut rows = t.clone();
                rows.extend(s.iter().cloned());
                if rref(rows, p, n).len() != k {
                    continue;
                }
                let mut rows = s.clone();
                rows.extend(t.iter().map(|row| shift(parts, row)));
                if rref(rows, p, n).len() - s.len() == d - 1 {
                    total += c;
                }
            }
            next.insert(t.clone(), total);
        }
        counts = next;
    }
    counts.values().sum()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn naive_counter_agrees() {
    for (lam, d) in [("2,1", 1), ("1,1,1", 1), ("2,2", 1), ("3,1", 1), ("2,2", 2), ("4,2", 2), ("3,3", 3)] {
        let l = part(lam);
        for p in [2u32, 3] {
            assert_eq!(naive_count(l.parts(), d, p) as u128, count_flags(p, &l, d).unwrap(), "{lam}, d = {d}, q = {p}");
        }
    }
}

#[test]
fn frozen_counts() {
    // produced by naive_count above
    assert_eq!(naive_count(&[2, 1], 1, 2), 5);
    assert_eq!(naive_count(&[2, 2], 2, 3), 12);
    assert_eq!(naive_count(&[4, 2], 2, 2), 11);
    assert_eq!(naive_count(&[4, 2], 2, 3), 25);
    // 3q^2 - q + 1 at q = 4, 5
    assert_eq!(count_flags(4, &part("4,2"), 2).unwrap(), 45);
    assert_eq!(count_flags(5, &part("4,2"), 2).unwrap(), 71);
}
