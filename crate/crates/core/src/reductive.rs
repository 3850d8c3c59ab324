//! Orders and dimensions for `GL_n`, `SL_n` and their unitary forms, their
//! Levi subgroups `S(GL_d^m)`, and the central tori of those Levis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{Family, Partition};
use crate::qpoly::{q_pow_minus, Poly, RatQ};
use crate::symgroup::Permutation;

/// Characteristic marker. Only divisibility of `n` by `p` is ever used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Characteristic {
    /// Coprime to everything in sight.
    Generic,
    Prime(u64),
}

impl FromStr for Characteristic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("generic") {
            return Ok(Characteristic::Generic);
        }
        let p: u64 = s.parse().map_err(|_| Error::Parse(format!("characteristic {s:?}")))?;
        if p < 2 || (2..p).take_while(|k| k * k <= p).any(|k| p % k == 0) {
            return Err(Error::Invalid(format!("characteristic {p} is not prime")));
        }
        Ok(Characteristic::Prime(p))
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Generic => write!(f, "generic"),
            Characteristic::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Largest divisor of `n` prime to `p`.
pub fn prime_to_p_part(n: usize, p: Characteristic) -> usize {
    match p {
        Characteristic::Generic => n,
        Characteristic::Prime(p) => {
            let mut m = n;
            while m % p as usize == 0 {
                m /= p as usize;
            }
            m
        }
    }
}

/// Which group, and which Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GroupKind {
    GlSplit,
    GlNonsplit,
    SlSplit,
    SlNonsplit,
}

impl GroupKind {
    pub fn new(family: Family, twisted: bool) -> Self {
        match (family, twisted) {
            (Family::GL, false) => GroupKind::GlSplit,
            (Family::GL, true) => GroupKind::GlNonsplit,
            (Family::SL, false) => GroupKind::SlSplit,
            (Family::SL, true) => GroupKind::SlNonsplit,
        }
    }

    pub fn family(self) -> Family {
        match self {
            GroupKind::GlSplit | GroupKind::GlNonsplit => Family::GL,
            GroupKind::SlSplit | GroupKind::SlNonsplit => Family::SL,
        }
    }

    pub fn twisted(self) -> bool {
        matches!(self, GroupKind::GlNonsplit | GroupKind::SlNonsplit)
    }

    /// Same group with the other Frobenius.
    pub fn partner(self) -> Self {
        GroupKind::new(self.family(), !self.twisted())
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::GlSplit => "GL",
            GroupKind::GlNonsplit => "U",
            GroupKind::SlSplit => "SL",
            GroupKind::SlNonsplit => "SU",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
    pub p: Characteristic,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, n: usize, p: Characteristic) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("rank parameter n must be at least 1".into()));
        }
        Ok(GroupSpec { kind, n, p })
    }

    pub fn family(&self) -> Family {
        self.kind.family()
    }

    pub fn twisted(&self) -> bool {
        self.kind.twisted()
    }

    pub fn with_kind(&self, kind: GroupKind) -> Self {
        GroupSpec { kind, ..*self }
    }

    /// Prime-to-`p` part of `n`; 1 for `GL`, whose centre is connected.
    pub fn n_prime(&self) -> usize {
        match self.family() {
            Family::GL => 1,
            Family::SL => prime_to_p_part(self.n, self.p),
        }
    }

    pub fn dim(&self) -> usize {
        match self.family() {
            Family::GL => self.n * self.n,
            Family::SL => self.n * self.n - 1,
        }
    }

    /// Rank of a maximal torus.
    pub fn torus_rank(&self) -> usize {
        match self.family() {
            Family::GL => self.n,
            Family::SL => self.n - 1,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.name(), self.n)
    }
}

/// The Levi subgroup with `m` diagonal blocks of size `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LeviSpec {
    pub d: usize,
    pub m: usize,
}

impl LeviSpec {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d == 0 || n % d != 0 {
            return Err(Error::Invalid(format!("{d} does not divide {n}")));
        }
        Ok(LeviSpec { d, m: n / d })
    }

    /// Dimension of the connected centre.
    pub fn center_dim(&self, family: Family) -> usize {
        match family {
            Family::GL => self.m,
            Family::SL => self.m - 1,
        }
    }

    pub fn dim(&self, family: Family) -> usize {
        let g = self.m * self.d * self.d;
        match family {
            Family::GL => g,
            Family::SL => g - 1,
        }
    }

    /// Dimension of the regular unipotent class of the Levi.
    pub fn regular_class_dim(&self) -> usize {
        self.m * (self.d * self.d - self.d)
    }
}

fn prod(fs: impl IntoIterator<Item = RatQ>) -> RatQ {
    fs.into_iter().product()
}

/// Order polynomial of the finite group.
pub fn group_order(spec: &GroupSpec) -> RatQ {
    let n = spec.n;
    let start = match spec.family() {
        Family::GL => 1,
        Family::SL => 2,
    };
    let sign = |i: usize| if spec.twisted() && i % 2 == 1 { -1 } else { 1 };
    RatQ::q_pow((n * (n - 1) / 2) as i64) * prod((start..=n).map(|i| q_pow_minus(i, sign(i))))
}

/// `det(q*Id - A)` for an integer matrix `A` of finite order.
///
/// Computed from the characteristic polynomial by Faddeev-LeVerrier.
pub fn twisted_torus_order(a: &[Vec<i64>]) -> Result<RatQ> {
    let r = a.len();
    if a.iter().any(|row| row.len() != r) {
        return Err(Error::Invalid("torus action matrix is not square".into()));
    }
    let am: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    // coefficients c[k] of q^k, c[r] = 1
    let mut c = vec![BigRational::zero(); r + 1];
    c[r] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); r]; r];
    for k in 1..=r {
        let mut next = mul(&am, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[r - k + 1];
        }
        mk = next;
        let amk = mul(&am, &mk);
        let tr = (0..r).fold(BigRational::zero(), |s, i| s + &amk[i][i]);
        c[r - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
    }
    Ok(RatQ::from_poly(Poly::from_coeffs(c)))
}

/// Matrix of a permutation of the `m` blocks acting on the cocharacter
/// lattice of the connected centre of the Levi.
///
/// For `GL` this is `Z^m`; for `SL` it is the sum-zero sublattice with basis
/// `e_i - e_{m-1}`.
pub fn center_lattice_action(family: Family, w: &Permutation) -> Vec<Vec<i64>> {
    let m = w.degree();
    match family {
        Family::GL => {
            let mut a = vec![vec![0; m]; m];
            for i in 0..m {
                a[w.0[i]][i] = 1;
            }
            a
        }
        Family::SL => {
            let r = m - 1;
            let mut a = vec![vec![0; r]; r];
            let last = w.0[m - 1];
            for i in 0..r {
                if w.0[i] != m - 1 {
                    a[w.0[i]][i] += 1;
                }
                if last != m - 1 {
                    a[last][i] -= 1;
                }
            }
            a
        }
    }
}

/// Order of the `F`-fixed points of the connected centre of the Levi twisted by `w`.
///
/// For split groups `rho` is the cycle type of `w`. For non-split groups the
/// Frobenius acts through `-w * w0`, and `rho` is the cycle type of `w * w0`.
pub fn levi_torus_order(spec: &GroupSpec, levi: &LeviSpec, rho: &Partition) -> Result<RatQ> {
    if rho.size() != levi.m {
        return Err(Error::Invalid(format!("cycle type {rho} is not a partition of {}", levi.m)));
    }
    let a = center_lattice_action(spec.family(), &Permutation::with_cycle_type(rho));
    let sign = if spec.twisted() { -1 } else { 1 };
    twisted_torus_order(&a.iter().map(|row| row.iter().map(|x| sign * x).collect()).collect::<Vec<_>>())
}

/// [`levi_torus_order`] for an explicit `w`; the twisted case forms `w * w0` itself.
pub fn levi_torus_order_perm(spec: &GroupSpec, levi: &LeviSpec, w: &Permutation) -> Result<RatQ> {
    if w.degree() != levi.m {
        return Err(Error::Invalid(format!("permutation degree {} differs from m = {}", w.degree(), levi.m)));
    }
    let (v, sign) = if spec.twisted() { (w.compose(&Permutation::longest(levi.m)), -1) } else { (w.clone(), 1) };
    let a = center_lattice_action(spec.family(), &v);
    twisted_torus_order(&a.iter().map(|row| row.iter().map(|x| sign * x).collect()).collect::<Vec<_>>())
}

/// Closed form of [`levi_torus_order`]: a product over the cycles of `rho`.
pub fn levi_torus_order_product(spec: &GroupSpec, rho: &Partition) -> RatQ {
    let t = spec.twisted();
    let factor = |c: usize| q_pow_minus(c, if t && c % 2 == 1 { -1 } else { 1 });
    let full = prod(rho.parts().iter().map(|&c| factor(c)));
    match spec.family() {
        Family::GL => full,
        Family::SL => full / factor(1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct A0R {
    pub a0: i64,
    pub r: i64,
    pub a0_plus_r: i64,
}

/// The shift `a0 = -dim Z_L - dim C` and the dimension `r`, with their sum.
pub fn a0_r(spec: &GroupSpec, levi: &LeviSpec, lambda: &Partition) -> Result<A0R> {
    if lambda.size() != spec.n || lambda.d_quotient(levi.d).is_none() {
        return Err(Error::Invalid(format!("{lambda} is not a {}-divisible partition of {}", levi.d, spec.n)));
    }
    let fam = spec.family();
    let dim_c = (spec.n * spec.n - lambda.transpose_square_sum()) as i64;
    let dim_zl = levi.center_dim(fam) as i64;
    let a0 = -dim_zl - dim_c;
    let r = spec.dim() as i64 - levi.dim(fam) as i64 + levi.regular_class_dim() as i64 + dim_zl;
    let s = a0 + r;
    if s % 2 != 0 {
        return Err(Error::Internal(format!("a0 + r = {s} is odd for {lambda}")));
    }
    Ok(A0R { a0, r, a0_plus_r: s })
}

/// Multiplier by which Frobenius acts on `Z/nZ`-valued central data:
/// `q` for split, `-q` for non-split.
pub fn frobenius_multiplier(twisted: bool, q_residue: i64, modulus: usize) -> i64 {
    let m = modulus.max(1) as i64;
    let t = if twisted { -q_residue } else { q_residue };
    t.rem_euclid(m)
}

/// `|Z_G(u)^F|` for the unipotent class of Jordan type `lambda`.
///
/// `GL` and `U` use the block formula `q^(sum lambda'^2 - sum m_i^2) prod |GL_{m_i}|`
/// (resp. `|U_{m_i}|`). For `SL`/`SU` the answer depends on the rational
/// form only through `gcd(n'_lambda, t - 1)` with `t` the Frobenius multiplier,
/// so `q_residue` (the residue of `q` modulo `n'`) is required there.
pub fn centralizer_order(spec: &GroupSpec, lambda: &Partition, q_residue: Option<i64>) -> Result<RatQ> {
    if lambda.size() != spec.n {
        return Err(Error::Invalid(format!("{lambda} is not a partition of {}", spec.n)));
    }
    let mults = lambda.multiplicities();
    let exp = lambda.transpose_square_sum() - mults.iter().map(|(_, m)| m * m).sum::<usize>();
    let gl_kind = GroupKind::new(Family::GL, spec.twisted());
    let blocks = prod(mults.iter().map(|&(_, m)| group_order(&GroupSpec { kind: gl_kind, n: m, p: spec.p })));
    let z_gl = RatQ::q_pow(exp as i64) * blocks;
    match spec.family() {
        Family::GL => Ok(z_gl),
        Family::SL => {
            let r = q_residue.ok_or_else(|| Error::Invalid("SL centralizer orders need the residue of q".into()))?;
            let np = prime_to_p_part(spec.n, spec.p);
            let order = num_integer::gcd(np, lambda.parts_gcd());
            let t = frobenius_multiplier(spec.twisted(), r, order);
            let k = num_integer::gcd(order as i64, t - 1) as i64;
            let k = if order == 1 { 1 } else { k };
            let torus = q_pow_minus(1, if spec.twisted() { -1 } else { 1 });
            Ok(z_gl.scale_int(k) / torus)
        }
    }
}

/// `dim Z_G(u)`.
pub fn centralizer_dim(spec: &GroupSpec, lambda: &Partition) -> usize {
    let s = lambda.transpose_square_sum();
    match spec.family() {
        Family::GL => s,
        Family::SL => s - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;

    fn p(s: &str) -> RatQ {
        s.parse().unwrap()
    }

    fn spec(kind: GroupKind, n: usize) -> GroupSpec {
        GroupSpec::new(kind, n, Characteristic::Generic).unwrap()
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(group_order(&spec(GroupKind::GlSplit, 1)), p("q-1"));
        assert_eq!(group_order(&spec(GroupKind::GlSplit, 2)), p("q(q-1)(q^2-1)"));
        assert_eq!(group_order(&spec(GroupKind::SlNonsplit, 2)), p("q(q^2-1)"));
        let gl2 = group_order(&spec(GroupKind::GlSplit, 2));
        for (q, v) in [(2, 6), (3, 48), (4, 180)] {
            assert_eq!(gl2.evaluate_int(q).unwrap(), BigRational::from_integer(v.into()));
        }
    }

    #[test]
    fn torus_examples() {
        assert_eq!(twisted_torus_order(&[vec![1]]).unwrap(), p("q-1"));
        assert_eq!(twisted_torus_order(&[vec![-1]]).unwrap(), p("q+1"));
        let cyc = center_lattice_action(Family::GL, &Permutation::with_cycle_type(&"4".parse().unwrap()));
        assert_eq!(twisted_torus_order(&cyc).unwrap(), p("q^4-1"));
        assert!(twisted_torus_order(&[vec![1, 0]]).is_err());
    }

    #[test]
    fn levi_torus_examples() {
        let gl = spec(GroupKind::GlSplit, 4);
        let l1 = LeviSpec::new(4, 1).unwrap();
        assert_eq!(levi_torus_order(&gl, &l1, &"1,1,1,1".parse().unwrap()).unwrap(), p("(q-1)^4"));
        let l2 = LeviSpec::new(4, 2).unwrap();
        assert_eq!(levi_torus_order(&gl, &l2, &"2".parse().unwrap()).unwrap(), p("q^2-1"));
        let sl = spec(GroupKind::SlSplit, 3);
        let l3 = LeviSpec::new(3, 1).unwrap();
        assert_eq!(levi_torus_order(&sl, &l3, &"1,1,1".parse().unwrap()).unwrap(), p("(q-1)^2"));
    }

    #[test]
    fn torus_product_matches_determinant() {
        for kind in [GroupKind::GlSplit, GroupKind::GlNonsplit, GroupKind::SlSplit, GroupKind::SlNonsplit] {
            for m in 1..=6 {
                let s = spec(kind, m);
                let l = LeviSpec::new(m, 1).unwrap();
                for rho in partitions_of(m) {
                    assert_eq!(levi_torus_order(&s, &l, &rho).unwrap(), levi_torus_order_product(&s, &rho), "{kind:?} {rho}");
                }
            }
        }
    }

    #[test]
    fn a0_r_examples() {
        let gl4 = spec(GroupKind::GlSplit, 4);
        let l1 = LeviSpec::new(4, 1).unwrap();
        assert_eq!(a0_r(&gl4, &l1, &"4".parse().unwrap()).unwrap().a0_plus_r, 0);
        assert_eq!(a0_r(&gl4, &l1, &"1,1,1,1".parse().unwrap()).unwrap().a0_plus_r, 12);
        let l2 = LeviSpec::new(4, 2).unwrap();
        assert_eq!(a0_r(&gl4, &l2, &"2,2".parse().unwrap()).unwrap().a0_plus_r, 4);
        assert!(a0_r(&gl4, &l2, &"3,1".parse().unwrap()).is_err());
    }

    #[test]
    fn characteristic_parsing() {
        assert_eq!("generic".parse::<Characteristic>().unwrap(), Characteristic::Generic);
        assert_eq!("3".parse::<Characteristic>().unwrap(), Characteristic::Prime(3));
        assert!("4".parse::<Characteristic>().is_err());
        assert_eq!(prime_to_p_part(12, Characteristic::Prime(2)), 3);
    }
}
