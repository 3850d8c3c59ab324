//! Finite fields `F_q` as lookup tables, and dense matrices over them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field order with tables.
pub const MAX_FIELD: u32 = 256;

/// `F_{p^k}` with elements `0..q`; element `i` is the polynomial whose base-`p`
/// digits are its coefficients, so `0` and `1` are the usual constants.
#[derive(Debug)]
pub struct Field {
    pub q: u32,
    pub p: u32,
    pub k: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// A generator of the multiplicative group.
    pub primitive: u16,
}

pub type Elt = u16;

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = q;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c != 0 {
            for j in 0..=k {
                // modulus is monic
                let t = (c * modulus[j]) % p;
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic irreducible of degree `k` over `F_p`, lowest coefficient first.
fn irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    // reject any candidate with a monic factor of degree <= k/2
    let count = p.pow(k);
    'cand: for tail in 0..count {
        let mut f = digits(tail, p, k);
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        for deg in 1..=k / 2 {
            for t in 0..p.pow(deg) {
                let mut g = digits(t, p, deg);
                g.push(1);
                if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                    continue 'cand;
                }
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (j, &gj) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p * p - (c * gj) % p) % p;
        }
        r.pop();
    }
    r
}

impl Field {
    /// Tables for `F_q`; errors unless `q` is a prime power up to [`MAX_FIELD`].
    pub fn new(q: u32) -> Result<Arc<Field>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
        let (p, k) = factor_prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD {
            return Err(Error::Infeasible(format!("field order {q} exceeds the table limit {MAX_FIELD}")));
        }
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&q) {
            return Ok(f.clone());
        }
        let modulus = irreducible(p, k);
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let ds: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, k)).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = ds[a].iter().zip(&ds[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s, p) as u16;
                mul[a * n + b] = undigits(&poly_mulmod(&ds[a], &ds[b], &modulus, p), p) as u16;
            }
        }
        let neg = (0..n).map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16).collect();
        let inv = (0..n).map(|a| if a == 0 { 0 } else { (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u16 }).collect();
        let mut f = Field { q, p, k, add, mul, neg, inv, primitive: 0 };
        f.primitive = (1..q as u16).find(|&g| f.order(g) == q - 1).unwrap();
        let f = Arc::new(f);
        cache.lock().unwrap().insert(q, f.clone());
        Ok(f)
    }

    pub fn zero(&self) -> Elt {
        0
    }

    pub fn one(&self) -> Elt {
        1
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg[b as usize])
    }

    pub fn neg(&self, a: Elt) -> Elt {
        self.neg[a as usize]
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer.
    pub fn from_int(&self, x: i64) -> Elt {
        x.rem_euclid(self.p as i64) as Elt
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elt) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `k` with `primitive^k = a`.
    pub fn log(&self, a: Elt) -> Option<u32> {
        let mut x: Elt = 1;
        for k in 0..self.q - 1 {
            if x == a {
                return Some(k);
            }
            x = self.mul(x, self.primitive);
        }
        None
    }
}

/// Dense square or rectangular matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Mat, f: &Field) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(t, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat, f: &Field) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, o: &Mat, f: &Field) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn scale(&self, c: Elt, f: &Field) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Entrywise map, e.g. a field automorphism.
    pub fn map(&self, g: impl Fn(Elt) -> Elt) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| g(a)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// Row echelon form in place; returns the pivot columns and the determinant
    /// factor (product of pivots times sign) for square input.
    fn eliminate(&mut self, f: &Field) -> (Vec<usize>, Elt) {
        let mut det = 1;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                det = 0;
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pr * self.cols + j);
                }
                det = f.neg(det);
            }
            let pv = self.get(r, c);
            det = f.mul(det, pv);
            let pinv = f.inv(pv);
            for j in 0..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, pinv));
            }
            for i in 0..self.rows {
                if i != r {
                    let fac = self.get(i, c);
                    if fac != 0 {
                        for j in 0..self.cols {
                            let v = f.sub(self.get(i, j), f.mul(fac, self.get(r, j)));
                            self.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if pivots.len() < self.rows.min(self.cols) {
            det = 0;
        }
        (pivots, det)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().eliminate(f).0.len()
    }

    pub fn det(&self, f: &Field) -> Elt {
        assert_eq!(self.rows, self.cols);
        self.clone().eliminate(f).1
    }

    pub fn inverse(&self, f: &Field) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (piv, _) = aug.eliminate(f);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Nilpotent Jordan matrix of the given block sizes: `x e_{k,j} = e_{k,j-1}`.
    pub fn jordan_nilpotent(blocks: &[usize]) -> Mat {
        let n = blocks.iter().sum();
        let mut m = Mat::zeros(n, n);
        let mut off = 0;
        for &b in blocks {
            for j in 1..b {
                m.set(off + j - 1, off + j, 1);
            }
            off += b;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 25, 27, 49] {
            let f = Field::new(q).unwrap();
            for a in 0..q as Elt {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, (q - 1) as u64), 1);
                }
                for b in 0..q as Elt {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            assert_eq!(f.order(f.primitive), q - 1);
        }
        assert!(Field::new(6).is_err());
        assert!(Field::new(1024).is_err());
    }

    #[test]
    fn matrix_inverse_and_det() {
        let f = Field::new(5).unwrap();
        let m = Mat { rows: 2, cols: 2, data: vec![1, 2, 3, 4] };
        assert_eq!(m.det(&f), f.from_int(-2));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f), Mat::identity(2));
        let s = Mat { rows: 2, cols: 2, data: vec![1, 2, 2, 4] };
        assert!(s.inverse(&f).is_none());
        assert_eq!(s.rank(&f), 1);
    }
}
