//! Elements of `Q(zeta_N)(q)`: rational functions in `q` whose coefficients
//! live in a cyclotomic field, stored in the power basis `1, z, ..., z^(phi(N)-1)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_rational::BigRational;

use crate::qpoly::RatQ;

/// Integer coefficients of the `N`-th cyclotomic polynomial, lowest first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // q^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// `z^k mod Phi_N` for `k = 0..N`, as integer vectors of length `phi(N)`.
fn power_table(n: u32) -> std::sync::Arc<Vec<Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<Vec<i64>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(t) = guard.get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..n {
        rows.push(cur.clone());
        // multiply by z, then reduce z^deg
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        for i in (1..deg).rev() {
            next[i] = cur[i - 1];
        }
        for i in 0..deg {
            next[i] -= top * phi[i];
        }
        cur = next;
    }
    let t = std::sync::Arc::new(rows);
    guard.insert(n, t.clone());
    t
}

/// The root of unity `zeta_order^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RootOfUnity {
    pub exp: u32,
    pub order: u32,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { exp: 0, order: 1 }
    }

    pub fn new(exp: i64, order: u32) -> Self {
        RootOfUnity { exp: exp.rem_euclid(order as i64) as u32, order }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { exp: 1, order: 2 }
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    /// Same root written with denominator `n` (which must be a multiple of the order).
    pub fn lift(&self, n: u32) -> Option<RootOfUnity> {
        (n % self.order == 0).then(|| RootOfUnity { exp: self.exp * (n / self.order), order: n })
    }

    pub fn mul(&self, o: &RootOfUnity) -> RootOfUnity {
        let n = self.order.lcm(&o.order);
        let a = self.lift(n).unwrap();
        let b = o.lift(n).unwrap();
        RootOfUnity::new((a.exp + b.exp) as i64, n).reduced()
    }

    /// Smallest order representation.
    pub fn reduced(&self) -> RootOfUnity {
        let g = self.exp.gcd(&self.order);
        if self.exp == 0 {
            return RootOfUnity::one();
        }
        RootOfUnity { exp: self.exp / g, order: self.order / g }
    }

    /// Integer coordinates in the power basis of `Q(zeta_n)`.
    pub fn coordinates(&self, n: u32) -> Option<Vec<i64>> {
        let r = self.lift(n)?;
        Some(power_table(n)[r.exp as usize].clone())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        match (r.exp, r.order) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (e, n) => write!(f, "zeta_{n}^{e}"),
        }
    }
}

/// An element of `Q(zeta_N)(q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<RatQ>,
}

impl Cyclo {
    pub fn zero(order: u32) -> Self {
        let phi = euler_phi(order) as usize;
        Cyclo { order, coeffs: vec![RatQ::zero(); phi] }
    }

    pub fn from_ratq(order: u32, r: RatQ) -> Self {
        let mut c = Cyclo::zero(order);
        c.coeffs[0] = r;
        c
    }

    /// `root * r`. The root's order must divide `order`.
    pub fn from_root(order: u32, root: &RootOfUnity, r: &RatQ) -> Self {
        let coords = root.coordinates(order).expect("root order must divide the field order");
        Cyclo { order, coeffs: coords.iter().map(|&k| r.scale_int(k)).collect() }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[RatQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value when it lies in `Q(q)`.
    pub fn as_ratq(&self) -> Option<&RatQ> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.order, o.order);
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, r: &RatQ) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|a| a * r).collect() }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        assert_eq!(self.order, o.order);
        let table = power_table(self.order);
        let n = self.order as usize;
        let mut out = vec![RatQ::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, &c) in table[(i + j) % n].iter().enumerate() {
                    if c != 0 {
                        out[k] = &out[k] + &ab.scale_int(c);
                    }
                }
            }
        }
        Cyclo { order: self.order, coeffs: out }
    }

    /// Multiply by a root of unity.
    pub fn mul_root(&self, root: &RootOfUnity) -> Cyclo {
        self.mul(&Cyclo::from_root(self.order, root, &RatQ::one()))
    }

    /// The Galois automorphism `z -> z^k`; `k` must be prime to the order.
    pub fn galois(&self, k: i64) -> Cyclo {
        let n = self.order as usize;
        let table = power_table(self.order);
        let mut out = vec![RatQ::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = ((i as i64) * k).rem_euclid(n as i64) as usize;
            for (j, &c) in table[e].iter().enumerate() {
                if c != 0 {
                    out[j] = &out[j] + &a.scale_int(c);
                }
            }
        }
        Cyclo { order: self.order, coeffs: out }
    }

    /// Apply `q -> -q` to every coefficient.
    pub fn substitute_neg_q(&self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c.substitute_neg_q()).collect() }
    }

    /// Values at `q = x` as rational coordinates in the power basis.
    pub fn evaluate(&self, x: &BigRational) -> crate::Result<Vec<BigRational>> {
        self.coeffs.iter().map(|c| c.evaluate(x)).collect()
    }

    /// Render as `c0 + (c1)*z + (c2)*z^2 ...` with zero terms omitted.
    pub fn render(&self, wire: bool) -> String {
        let show = |c: &RatQ| if wire { c.to_wire() } else { c.to_string() };
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => show(c),
                1 => format!("({})*z", show(c)),
                _ => format!("({})*z^{k}", show(c)),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_multiply() {
        for n in [1u32, 2, 3, 4, 5, 6, 12] {
            for a in 0..n {
                for b in 0..n {
                    let x = Cyclo::from_root(n, &RootOfUnity::new(a as i64, n), &RatQ::one());
                    let y = Cyclo::from_root(n, &RootOfUnity::new(b as i64, n), &RatQ::one());
                    let z = Cyclo::from_root(n, &RootOfUnity::new((a + b) as i64, n), &RatQ::one());
                    assert_eq!(x.mul(&y), z);
                }
            }
        }
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in 2u32..=8 {
            let mut s = Cyclo::zero(n);
            for a in 0..n {
                s = s.add(&Cyclo::from_root(n, &RootOfUnity::new(a as i64, n), &RatQ::one()));
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn minus_one_in_even_fields() {
        let m = Cyclo::from_root(4, &RootOfUnity::minus_one(), &RatQ::one());
        assert_eq!(m.as_ratq(), Some(&RatQ::from_int(-1)));
    }
}
