//! The twisting element `c_lambda` relating the projection `u'_lambda` of the
//! split element `u_lambda` to the split element `u_0` of the cuspidal class
//! of `L = S(GL_d^m)`, computed in explicit matrices.
//!
//! Everything is done with nilpotent matrices `x = u - 1` in the Lie algebra,
//! where the hermitian form is preserved in the infinitesimal sense
//! (`x* = -x`). Conjugacy of nilpotents is the same question as conjugacy of
//! the corresponding unipotents.
//!
//! Non-split: `V = F_{q^2}^n` with Jordan basis `v_{k,j}` in the order
//! `v_{1,1}, ..., v_{1,lambda_1}, v_{2,1}, ...` and the hermitian form
//! `(v_{k,j}, v_{k,j'}) = eps_k (-1)^j` when `j + j' = lambda_k + 1`, where
//! `eps_k = a_k` for odd `lambda_k` and `eps_k = a_k theta` (`theta^(q-1) = -1`)
//! for even `lambda_k`. Frobenius is `g -> (g*)^-1` composed with `x -> x^q`.
//!
//! `u_0` is built factor by factor from independent random choices, all of
//! determinant 1 so that the rational class in `L^F` is not moved: on a pair
//! of factors swapped by Frobenius it is the regular nilpotent in a random
//! `F_{q^2}`-basis of the first factor, transported to the second; on a factor
//! fixed by Frobenius it is the segment nilpotent conjugated by a random
//! special unitary element (Cayley transform of a random skew-hermitian matrix).
//! Then `h` with `h u_0 h^-1 = u'_lambda` is found in `GL_d^m` from cyclic
//! vectors, and the class of `h^-1 F(h)` in `A_L(u_0) = mu_d` is
//! `prod_t a_{t,0} * det(h)^((q+1)/d)` (the determinant term moves `h` into
//! `S(GL_d^m)`; the result does not depend on the choices).

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::field::{Elt, Field, Mat};
use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Output of [`compute_c_lambda`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CLambda {
    /// `c_lambda = omega_d^class`, `omega_d = g^((Q-1)/d)` for the table generator `g` of `F_Q`.
    pub class: u32,
    pub d: usize,
    /// `nu_{lambda, eta} = rho_0(c_lambda)`.
    pub nu: RootOfUnity,
}

#[derive(Clone, Debug)]
pub struct CLambdaConfig {
    pub twisted: bool,
    /// Signs `a_k`, one per part; missing entries are `+1`.
    pub signs: Vec<i8>,
    pub seed: u64,
}

impl Default for CLambdaConfig {
    fn default() -> Self {
        CLambdaConfig { twisted: true, signs: Vec::new(), seed: 0 }
    }
}

struct Setting {
    f: std::sync::Arc<Field>,
    q: u32,
    twisted: bool,
    gram: Mat,
    gram_inv: Mat,
}

impl Setting {
    fn conj(&self, m: &Mat) -> Mat {
        if self.twisted {
            m.map(|a| self.f.pow(a, self.q as u64))
        } else {
            m.clone()
        }
    }

    /// Frobenius on the Lie algebra.
    fn frob_lie(&self, x: &Mat) -> Mat {
        if !self.twisted {
            return self.conj(x);
        }
        let f = &*self.f;
        let t = self.gram_inv.mul(&x.transpose(), f).mul(&self.gram, f);
        self.conj(&t).scale(f.neg(1), f)
    }

    /// Frobenius on the group.
    fn frob(&self, g: &Mat) -> Result<Mat> {
        if !self.twisted {
            return Ok(self.conj(g));
        }
        let f = &*self.f;
        let inv = g.inverse(f).ok_or_else(|| Error::Internal("Frobenius of a singular matrix".into()))?;
        Ok(self.conj(&self.gram_inv.mul(&inv.transpose(), f).mul(&self.gram, f)))
    }
}

fn block(m: &Mat, r: std::ops::Range<usize>) -> Mat {
    let n = r.len();
    let mut out = Mat::zeros(n, n);
    for (i, a) in r.clone().enumerate() {
        for (j, b) in r.clone().enumerate() {
            out.set(i, j, m.get(a, b));
        }
    }
    out
}

fn put(m: &mut Mat, r: std::ops::Range<usize>, b: &Mat) {
    for (i, a) in r.clone().enumerate() {
        for (j, c) in r.clone().enumerate() {
            m.set(a, c, b.get(i, j));
        }
    }
}

/// Random matrix of determinant 1, with its inverse.
fn random_special(f: &Field, n: usize, rng: &mut StdRng) -> (Mat, Mat) {
    loop {
        let mut m = Mat::zeros(n, n);
        for x in m.data.iter_mut() {
            *x = rng.gen_range(0..f.q) as Elt;
        }
        let det = m.det(f);
        if det == 0 {
            continue;
        }
        let s = f.inv(det);
        for i in 0..n {
            let v = m.get(i, 0);
            m.set(i, 0, f.mul(v, s));
        }
        let inv = m.inverse(f).unwrap();
        return (m, inv);
    }
}

fn apply(m: &Mat, v: &[Elt], f: &Field) -> Vec<Elt> {
    (0..m.rows).map(|i| v.iter().enumerate().fold(0, |acc, (j, &x)| f.add(acc, f.mul(m.get(i, j), x)))).collect()
}

/// `c_lambda` and `nu_{lambda, eta}` for the series `d` at a concrete odd `q`.
pub fn compute_c_lambda(q: u32, lambda: &Partition, d: usize, cfg: &CLambdaConfig) -> Result<CLambda> {
    let n = lambda.size();
    if d == 0 || lambda.parts().iter().any(|&p| p % d != 0) {
        return Err(Error::Invalid(format!("{d} does not divide every part of {lambda}")));
    }
    let base = Field::new(q)?;
    if base.p == 2 {
        return Err(Error::Invalid("the hermitian model needs odd q".into()));
    }
    if d as u32 % base.p == 0 {
        return Err(Error::Invalid(format!("d = {d} is divisible by the characteristic")));
    }
    let modulus = if cfg.twisted { q + 1 } else { q - 1 };
    if modulus % d as u32 != 0 {
        return Err(Error::Invalid(format!(
            "the series d = {d} is not Frobenius-stable at q = {q}: need d | q {} 1",
            if cfg.twisted { "+" } else { "-" }
        )));
    }
    let big = if cfg.twisted { q * q } else { q };
    let f = Field::new(big).map_err(|e| match e {
        Error::Infeasible(m) => Error::Infeasible(format!("q = {q}: {m}")),
        other => other,
    })?;
    let fr = &*f;
    let parts = lambda.parts();
    let offsets: Vec<usize> = parts.iter().scan(0, |s, &p| {
        let o = *s;
        *s += p;
        Some(o)
    }).collect();
    let theta = fr.pow(f.primitive, ((q + 1) / 2) as u64);
    let mut gram = Mat::zeros(n, n);
    for (k, &p) in parts.iter().enumerate() {
        let a = fr.from_int(*cfg.signs.get(k).unwrap_or(&1) as i64);
        let eps = if cfg.twisted && p % 2 == 0 { fr.mul(a, theta) } else { a };
        for j in 1..=p {
            let jp = p + 1 - j;
            let v = if j % 2 == 0 { eps } else { fr.neg(eps) };
            gram.set(offsets[k] + j - 1, offsets[k] + jp - 1, v);
        }
    }
    let gram_inv = gram.inverse(fr).ok_or_else(|| Error::Internal("degenerate form".into()))?;
    let s = Setting { f: f.clone(), q, twisted: cfg.twisted, gram, gram_inv };
    if cfg.twisted && s.gram.transpose() != s.conj(&s.gram) {
        return Err(Error::Internal("form is not hermitian".into()));
    }

    let x_lambda = Mat::jordan_nilpotent(parts);
    if s.frob_lie(&x_lambda) != x_lambda {
        return Err(Error::Internal(format!("x_lambda for {lambda} is not rational")));
    }
    let m = n / d;
    let x_seg = Mat::jordan_nilpotent(&vec![d; m]);
    if s.frob_lie(&x_seg) != x_seg {
        return Err(Error::Internal("segment nilpotent is not rational".into()));
    }
    // segment t covers t*d .. (t+1)*d; Frobenius pairs segment s of part k with
    // segment (lambda_k/d - 1 - s) of the same part
    let mut partner = vec![0usize; m];
    let mut t = 0;
    for &p in parts {
        let c = p / d;
        for sidx in 0..c {
            partner[t + sidx] = if cfg.twisted { t + c - 1 - sidx } else { t + sidx };
        }
        t += c;
    }
    let seg = |t: usize| t * d..(t + 1) * d;
    let jordan = Mat::jordan_nilpotent(&[d]);

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut x0 = Mat::zeros(n, n);
    for t in 0..m {
        let tp = partner[t];
        if tp < t {
            continue;
        }
        if tp > t {
            let (mm, mi) = random_special(fr, d, &mut rng);
            let mut part = Mat::zeros(n, n);
            put(&mut part, seg(t), &mm.mul(&jordan, fr).mul(&mi, fr));
            let image = s.frob_lie(&part);
            x0 = x0.add(&part, fr).add(&image, fr);
        } else if cfg.twisted {
            // random unitary element of the segment's form
            let b = block(&s.gram, seg(t));
            let bi = b.inverse(fr).ok_or_else(|| Error::Internal("degenerate segment form".into()))?;
            let id = Mat::identity(d);
            let u = loop {
                let (r, _) = random_special(fr, d, &mut rng);
                let star = s.conj(&bi.mul(&r.transpose(), fr).mul(&b, fr));
                let a = r.sub(&star, fr);
                if let Some(inv) = id.sub(&a, fr).inverse(fr) {
                    let u = id.add(&a, fr).mul(&inv, fr);
                    // stay inside the special unitary group
                    if u.det(fr) == 1 {
                        break u;
                    }
                }
            };
            let ui = u.inverse(fr).unwrap();
            let xs = block(&x_seg, seg(t));
            put(&mut x0, seg(t), &u.mul(&xs, fr).mul(&ui, fr));
        } else {
            let (mm, mi) = random_special(fr, d, &mut rng);
            put(&mut x0, seg(t), &mm.mul(&jordan, fr).mul(&mi, fr));
        }
    }
    if s.frob_lie(&x0) != x0 {
        return Err(Error::Internal("constructed u_0 is not rational".into()));
    }

    // h maps the cyclic basis of x0 on each segment to the chain e_top, x' e_top, ...
    let mut h = Mat::zeros(n, n);
    let mut kernel_vectors = Vec::with_capacity(m);
    for t in 0..m {
        let xb = block(&x0, seg(t));
        let xs = block(&x_seg, seg(t));
        let mut top = Mat::identity(d);
        for _ in 0..d - 1 {
            top = top.mul(&xb, fr);
        }
        let w_idx = (0..d)
            .find(|&i| (0..d).any(|r| top.get(r, i) != 0))
            .ok_or_else(|| Error::Internal("u_0 is not regular in L".into()))?;
        let mut w = vec![0 as Elt; d];
        w[w_idx] = 1;
        let mut e = vec![0 as Elt; d];
        e[d - 1] = 1;
        let mut c = Mat::zeros(d, d);
        let mut c2 = Mat::zeros(d, d);
        for i in 0..d {
            for r in 0..d {
                c.set(r, i, w[r]);
                c2.set(r, i, e[r]);
            }
            if i + 1 < d {
                w = apply(&xb, &w, fr);
                e = apply(&xs, &e, fr);
            }
        }
        kernel_vectors.push(w);
        let ci = c.inverse(fr).ok_or_else(|| Error::Internal("no solution h: cyclic basis is singular".into()))?;
        put(&mut h, seg(t), &c2.mul(&ci, fr));
    }
    let hi = h.inverse(fr).ok_or_else(|| Error::Internal("no solution h".into()))?;
    if h.mul(&x0, fr).mul(&hi, fr) != x_seg {
        return Err(Error::Internal("no solution h: conjugation failed".into()));
    }
    let z = hi.mul(&s.frob(&h)?, fr);
    if z.mul(&x0, fr) != x0.mul(&z, fr) {
        return Err(Error::Internal("h^-1 F(h) does not centralize u_0".into()));
    }
    let mut prod: Elt = 1;
    for t in 0..m {
        let zb = block(&z, seg(t));
        let k = &kernel_vectors[t];
        let zk = apply(&zb, k, fr);
        let i = (0..d).find(|&i| k[i] != 0).unwrap();
        let a = fr.mul(zk[i], fr.inv(k[i]));
        if (0..d).any(|r| zk[r] != fr.mul(a, k[r])) {
            return Err(Error::Internal("kernel vector is not an eigenvector".into()));
        }
        prod = fr.mul(prod, a);
    }
    let det = h.det(fr);
    let e = (modulus / d as u32) as u64;
    let correction = if cfg.twisted { fr.pow(det, e) } else { fr.pow(fr.inv(det), e) };
    let c = fr.mul(prod, correction);
    if fr.pow(c, d as u64) != 1 {
        return Err(Error::Internal(format!("c_lambda = {c} is not a d-th root of unity")));
    }
    let step = (big - 1) / d as u32;
    let class = fr.log(c).unwrap() / step;
    Ok(CLambda { class, d, nu: RootOfUnity::new(class as i64, d as u32) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn regular_class_is_untwisted() {
        for (q, n, d) in [(3, 2, 2), (3, 4, 4), (3, 4, 2), (5, 3, 3), (5, 2, 2), (3, 3, 1)] {
            for seed in 0..3 {
                let cfg = CLambdaConfig { seed, ..Default::default() };
                let c = compute_c_lambda(q, &Partition::row(n), d, &cfg).unwrap();
                assert_eq!(c.class, 0, "q={q} n={n} d={d}");
                assert!(c.nu.is_one());
            }
        }
    }

    #[test]
    fn split_variant_is_untwisted() {
        let cfg = CLambdaConfig { twisted: false, ..Default::default() };
        assert_eq!(compute_c_lambda(5, &p("2,2"), 2, &cfg).unwrap().class, 0);
        assert_eq!(compute_c_lambda(7, &p("3,3"), 3, &cfg).unwrap().class, 0);
    }

    #[test]
    fn result_does_not_depend_on_random_choices() {
        let classes: Vec<u32> = (0..6)
            .map(|seed| compute_c_lambda(3, &p("2,2"), 2, &CLambdaConfig { seed, ..Default::default() }).unwrap().class)
            .collect();
        assert!(classes.windows(2).all(|w| w[0] == w[1]), "{classes:?}");
    }

    #[test]
    fn preconditions() {
        let cfg = CLambdaConfig::default();
        assert!(compute_c_lambda(3, &p("2,1"), 2, &cfg).is_err());
        assert!(compute_c_lambda(4, &p("2"), 2, &cfg).is_err());
        assert!(compute_c_lambda(5, &p("4"), 4, &cfg).is_err());
    }
}
