//! Generalized Springer data for `GL_n` and `SL_n`.
//!
//! A series of `SL_n` is fixed by a divisor `d` of `n'` (the prime-to-`p`
//! part of `n`): its cuspidal support is the Levi `S(GL_d^{n/d})`, and its
//! members are the unipotent classes whose Jordan type has every part
//! divisible by `d`, one local system each. `GL_n` has only `d = 1`.
//!
//! The central character of the series is fixed to `x -> zeta_d^x` on
//! `Z/n'`, so the local system on the class `lambda` is the character
//! `a -> zeta_d^a` of `A(u) = Z/n'_lambda`.

use std::cmp::Ordering;
use std::fmt;

use crate::cyclotomic::RootOfUnity;
use crate::error::{Error, Result};
use crate::partitions::{class_dims, partitions_of, Partition};
use crate::reductive::{a0_r, frobenius_multiplier, GroupSpec, LeviSpec};
use crate::symgroup::a_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SeriesLabel {
    pub d: usize,
    pub cuspidal: bool,
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}{}", self.d, if self.cuspidal { " (cuspidal)" } else { "" })
    }
}

/// One series per divisor of `n'`, in increasing order of `d`.
pub fn enumerate_series(spec: &GroupSpec) -> Vec<SeriesLabel> {
    let np = spec.n_prime();
    (1..=np)
        .filter(|d| np % d == 0)
        .map(|d| SeriesLabel { d, cuspidal: d == spec.n })
        .collect()
}

/// Look up the series with the given `d`.
pub fn series_for(spec: &GroupSpec, d: usize) -> Result<SeriesLabel> {
    enumerate_series(spec).into_iter().find(|s| s.d == d).ok_or_else(|| {
        Error::Invalid(format!("no series with d = {d} for {spec}: d must divide n' = {}", spec.n_prime()))
    })
}

/// One element `i = (lambda, rho)` of a series, with its invariants.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SpringerDatum {
    pub lambda: Partition,
    /// Irreducible of `S_m` attached to `i`: `lambda / d`.
    pub mu: Partition,
    /// Order of `A(u)`.
    pub component_order: usize,
    /// The local system is `a -> zeta_{component_order}^(rho_exp * a)`.
    pub rho_exp: usize,
    pub a_e: usize,
    pub d_u: usize,
    /// `a_e - d_u`.
    pub delta: i64,
    pub dim_c: usize,
    pub a0: i64,
    pub r: i64,
}

impl SpringerDatum {
    /// `(a0 + r) / 2`, the dimension of the partial flag variety of `u`.
    pub fn half_a0_r(&self) -> i64 {
        (self.a0 + self.r) / 2
    }

    pub fn rho(&self, a: usize) -> RootOfUnity {
        RootOfUnity::new((self.rho_exp * a) as i64, self.component_order as u32)
    }
}

/// `gcd(n', lambda_1, lambda_2, ...)`.
pub fn component_order(spec: &GroupSpec, lambda: &Partition) -> usize {
    num_integer::gcd(spec.n_prime(), lambda.parts_gcd())
}

/// Closure order of classes refined to a total order: increasing class
/// dimension, then dominance, then lexicographic on parts.
pub fn class_order(a: &Partition, da: usize, b: &Partition, db: usize) -> Ordering {
    da.cmp(&db)
        .then_with(|| match a.dominance_cmp(b) {
            Some(o) => o,
            None => Ordering::Equal,
        })
        .then_with(|| a.parts().cmp(b.parts()))
}

/// The members of a series, ordered by [`class_order`].
pub fn enumerate_block(spec: &GroupSpec, series: &SeriesLabel) -> Result<Vec<SpringerDatum>> {
    let n = spec.n;
    let d = series.d;
    let levi = LeviSpec::new(n, d)?;
    let mut out = Vec::new();
    for lambda in partitions_of(n) {
        let Some(mu) = lambda.d_quotient(d) else { continue };
        let dims = class_dims(n, &lambda, spec.family())?;
        let ar = a0_r(spec, &levi, &lambda)?;
        let order = component_order(spec, &lambda);
        if order % d != 0 {
            return Err(Error::Internal(format!("d = {d} does not divide |A(u)| = {order} for {lambda}")));
        }
        let a_e = a_value(&mu);
        out.push(SpringerDatum {
            rho_exp: (order / d) % order,
            component_order: order,
            delta: a_e as i64 - dims.d_u as i64,
            a_e,
            d_u: dims.d_u,
            dim_c: dims.dim_c,
            a0: ar.a0,
            r: ar.r,
            mu,
            lambda,
        });
    }
    out.sort_by(|a, b| class_order(&a.lambda, a.dim_c, &b.lambda, b.dim_c));
    Ok(out)
}

/// `A(u)` as `Z/order` with Frobenius acting by multiplication by `multiplier`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComponentGroup {
    pub order: usize,
    pub multiplier: i64,
}

impl ComponentGroup {
    /// Number of Frobenius-twisted classes: the order of `Z/order / (t-1)`.
    pub fn twist_class_count(&self) -> usize {
        if self.order <= 1 {
            return 1;
        }
        num_integer::gcd(self.order as i64, self.multiplier - 1) as usize
    }

    /// Class labels `0..count`; the class of `a` is `a mod count`.
    pub fn twist_classes(&self) -> Vec<usize> {
        (0..self.twist_class_count()).collect()
    }
}

fn check_unit(spec: &GroupSpec, q_residue: i64) -> Result<()> {
    let np = spec.n_prime() as i64;
    if np > 1 && num_integer::gcd(q_residue.rem_euclid(np), np) != 1 {
        return Err(Error::Invalid(format!("q residue {q_residue} is not a unit modulo n' = {np}")));
    }
    Ok(())
}

pub fn component_group(spec: &GroupSpec, lambda: &Partition, q_residue: i64) -> Result<ComponentGroup> {
    if lambda.size() != spec.n {
        return Err(Error::Invalid(format!("{lambda} is not a partition of {}", spec.n)));
    }
    check_unit(spec, q_residue)?;
    let order = component_order(spec, lambda);
    Ok(ComponentGroup { order, multiplier: frobenius_multiplier(spec.twisted(), q_residue, order) })
}

/// Whether Frobenius fixes the central character of the series.
pub fn series_is_stable(spec: &GroupSpec, series: &SeriesLabel, q_residue: i64) -> bool {
    let t = frobenius_multiplier(spec.twisted(), q_residue, spec.n_prime());
    (t - 1).rem_euclid(series.d as i64) == 0
}

/// A column of a Y-table: rational class `(lambda, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ClassColumn {
    pub lambda: Partition,
    /// Index of the datum with this Jordan type.
    pub datum: usize,
    pub a: usize,
}

impl fmt::Display for ClassColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.lambda, self.a)
    }
}

/// `Y^0_i(u_a)` for one series at one residue of `q`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Y0Table {
    pub series: SeriesLabel,
    pub q_residue: i64,
    /// Roots of unity live in `Q(zeta_field_order)`.
    pub field_order: u32,
    pub data: Vec<SpringerDatum>,
    pub columns: Vec<ClassColumn>,
    /// `values[i][c]`; `None` stands for zero.
    pub values: Vec<Vec<Option<RootOfUnity>>>,
}

impl Y0Table {
    /// Integer coordinates of an entry in the power basis of `Q(zeta_field_order)`.
    pub fn coordinates(&self, i: usize, c: usize) -> Vec<i64> {
        match self.values[i][c] {
            Some(r) => r.coordinates(self.field_order).unwrap(),
            None => vec![0; crate::cyclotomic::euler_phi(self.field_order) as usize],
        }
    }
}

pub fn y0_table(spec: &GroupSpec, series: &SeriesLabel, q_residue: i64) -> Result<Y0Table> {
    check_unit(spec, q_residue)?;
    if !series_is_stable(spec, series, q_residue) {
        return Err(Error::Invalid(format!(
            "series d = {} of {spec} is not Frobenius-stable when q = {q_residue} mod {}",
            series.d,
            spec.n_prime()
        )));
    }
    let data = enumerate_block(spec, series)?;
    let mut columns = Vec::new();
    for (i, datum) in data.iter().enumerate() {
        let cg = component_group(spec, &datum.lambda, q_residue)?;
        for a in cg.twist_classes() {
            columns.push(ClassColumn { lambda: datum.lambda.clone(), datum: i, a });
        }
    }
    let field_order = spec.n_prime() as u32;
    let values = (0..data.len())
        .map(|i| {
            columns
                .iter()
                .map(|c| (c.datum == i).then(|| data[i].rho(c.a).lift(field_order).unwrap()))
                .collect()
        })
        .collect();
    Ok(Y0Table { series: *series, q_residue, field_order, data, columns, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductive::{Characteristic, GroupKind};

    fn sl(n: usize, p: Characteristic) -> GroupSpec {
        GroupSpec::new(GroupKind::SlSplit, n, p).unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn series_examples() {
        let ds = |s: &GroupSpec| enumerate_series(s).iter().map(|x| x.d).collect::<Vec<_>>();
        let s3 = enumerate_series(&sl(3, Characteristic::Generic));
        assert_eq!(s3.iter().map(|x| (x.d, x.cuspidal)).collect::<Vec<_>>(), vec![(1, false), (3, true)]);
        assert_eq!(ds(&sl(4, Characteristic::Prime(2))), vec![1]);
        assert_eq!(ds(&sl(6, Characteristic::Generic)), vec![1, 2, 3, 6]);
        let gl = GroupSpec::new(GroupKind::GlSplit, 6, Characteristic::Generic).unwrap();
        assert_eq!(ds(&gl), vec![1]);
    }

    #[test]
    fn block_examples() {
        let g = Characteristic::Generic;
        let lam = |n, d| {
            enumerate_block(&sl(n, g), &series_for(&sl(n, g), d).unwrap())
                .unwrap()
                .into_iter()
                .map(|x| x.lambda.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(lam(2, 1), vec!["1,1", "2"]);
        assert_eq!(lam(4, 2), vec!["2,2", "4"]);
        assert_eq!(lam(3, 3), vec!["3"]);
    }

    #[test]
    fn component_examples() {
        let g = Characteristic::Generic;
        assert_eq!(component_group(&sl(5, g), &part("5"), 1).unwrap().order, 5);
        assert_eq!(component_group(&sl(3, g), &part("2,1"), 1).unwrap().order, 1);
        assert_eq!(component_group(&sl(4, Characteristic::Prime(3)), &part("2,2"), 1).unwrap().order, 2);
        assert!(component_group(&sl(4, g), &part("2,2"), 2).is_err());
    }

    #[test]
    fn y0_examples() {
        let s = sl(2, Characteristic::Prime(3));
        let t = y0_table(&s, &series_for(&s, 1).unwrap(), 1).unwrap();
        let reg = t.data.iter().position(|x| x.lambda == part("2")).unwrap();
        let vals: Vec<_> = t.columns.iter().zip(&t.values[reg]).filter(|(c, _)| c.datum == reg).map(|(_, v)| v.unwrap()).collect();
        assert_eq!(vals.len(), 2);
        assert!(vals.iter().all(|v| v.is_one()));

        let t2 = y0_table(&s, &series_for(&s, 2).unwrap(), 1).unwrap();
        assert_eq!(t2.values[0], vec![Some(RootOfUnity::one().lift(2).unwrap()), Some(RootOfUnity::minus_one())]);
        assert!(y0_table(&s, &series_for(&s, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn delta_and_rho_invariants() {
        for n in 1..=8 {
            let s = sl(n, Characteristic::Generic);
            for series in enumerate_series(&s) {
                for x in enumerate_block(&s, &series).unwrap() {
                    assert_eq!(x.delta, x.mu.n_invariant() as i64 - x.lambda.n_invariant() as i64);
                    if series.d == 1 {
                        assert_eq!(x.delta, 0);
                    }
                    // pullback of rho along Z/n' -> Z/n'_lambda has exact order d
                    let np = s.n_prime();
                    let pulled = RootOfUnity::new(x.rho_exp as i64, x.component_order as u32).reduced();
                    assert_eq!(pulled.order as usize, series.d);
                    assert_eq!(np % x.component_order, 0);
                    assert_eq!(x.half_a0_r() as usize, x.d_u);
                }
            }
        }
    }
}
