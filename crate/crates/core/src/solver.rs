//! The Omega matrix of a series and the solution of `tP * Lambda * P = Omega`
//! with `P` block upper unitriangular and `Lambda` block diagonal.

use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::partitions_of;
use crate::qpoly::RatQ;
use crate::reductive::{group_order, levi_torus_order, GroupSpec, LeviSpec};
use crate::springer::{enumerate_block, SeriesLabel, SpringerDatum};
use crate::symgroup::{char_table, factorial, twisted_trace_class};

pub type Matrix = Vec<Vec<RatQ>>;

pub const OMEGA_SCHEMA: &str = "omega-system/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub label: String,
    #[serde(rename = "dim_C")]
    pub dim_c: usize,
    pub block: usize,
}

/// One series: its ordered index set, `Omega`, and once solved `P` and `Lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaSystem {
    pub series: String,
    pub indices: Vec<IndexEntry>,
    /// Empty for externally supplied systems.
    pub data: Vec<SpringerDatum>,
    pub omega: Matrix,
    pub p: Option<Matrix>,
    pub lambda: Option<Matrix>,
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatQ::one() } else { RatQ::zero() }).collect()).collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let r = a.len();
    let c = a.first().map_or(0, |x| x.len());
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = b.len();
    let c = b.first().map_or(0, |x| x.len());
    a.iter()
        .map(|row| {
            (0..c)
                .map(|j| {
                    (0..k).filter(|&t| !row[t].is_zero() && !b[t][j].is_zero()).map(|t| &row[t] * &b[t][j]).sum()
                })
                .collect()
        })
        .collect()
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

fn sub_block(a: &Matrix, rows: &Range<usize>, cols: &Range<usize>) -> Matrix {
    rows.clone().map(|i| cols.clone().map(|j| a[i][j].clone()).collect()).collect()
}

fn put_block(a: &mut Matrix, rows: &Range<usize>, cols: &Range<usize>, b: &Matrix) {
    for (bi, i) in rows.clone().enumerate() {
        for (bj, j) in cols.clone().enumerate() {
            a[i][j] = b[bi][bj].clone();
        }
    }
}

/// Inverse by Gauss-Jordan elimination; `None` if singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Vec<Vec<RatQ>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RatQ::one() } else { RatQ::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].inv().ok()?;
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl OmegaSystem {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Contiguous index ranges sharing a block id.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut out: Vec<Range<usize>> = Vec::new();
        for (i, e) in self.indices.iter().enumerate() {
            match out.last_mut() {
                Some(r) if self.indices[r.start].block == e.block => r.end = i + 1,
                _ => out.push(i..i + 1),
            }
        }
        out
    }

    pub fn is_solved(&self) -> bool {
        self.p.is_some() && self.lambda.is_some()
    }

    fn validate(&self) -> Result<()> {
        let n = self.indices.len();
        if n == 0 {
            return Err(Error::Invalid("empty block list".into()));
        }
        if self.omega.len() != n || self.omega.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("omega must be {n}x{n}")));
        }
        for w in self.indices.windows(2) {
            if w[1].block < w[0].block || w[1].dim_c < w[0].dim_c {
                return Err(Error::Invalid(format!(
                    "indices {:?} and {:?} are not ordered by block and class dimension",
                    w[0].label, w[1].label
                )));
            }
            if w[1].block == w[0].block && w[1].dim_c != w[0].dim_c {
                return Err(Error::Invalid(format!("block {} mixes class dimensions", w[0].block)));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if self.omega[i][j] != self.omega[j][i] {
                    return Err(Error::Invalid(format!(
                        "omega is not symmetric at ({}, {})",
                        self.indices[i].label, self.indices[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Errors unless `Omega`, and `P`, `Lambda` when present, have integer polynomial entries.
    pub fn check_integral(&self) -> Result<()> {
        let mats = [("Omega", Some(&self.omega)), ("P", self.p.as_ref()), ("Lambda", self.lambda.as_ref())];
        for (name, m) in mats {
            let Some(m) = m else { continue };
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_integral_polynomial() {
                        return Err(Error::Internal(format!(
                            "{name}[{}][{}] = {x} is not a polynomial with integer coefficients in series {}",
                            self.indices[i].label, self.indices[j].label, self.series
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `tP Lambda P = Omega` and the shape constraints on `P` and `Lambda`.
    pub fn verify(&self) -> Result<()> {
        let (Some(p), Some(l)) = (&self.p, &self.lambda) else {
            return Err(Error::Invalid("system is not solved".into()));
        };
        let blocks = self.blocks();
        let block_of = |i: usize| blocks.iter().position(|r| r.contains(&i)).unwrap();
        for i in 0..self.len() {
            for j in 0..self.len() {
                let (bi, bj) = (block_of(i), block_of(j));
                let want_p = if bi == bj { Some(if i == j { RatQ::one() } else { RatQ::zero() }) } else { None };
                if let Some(w) = want_p {
                    if p[i][j] != w {
                        return Err(Error::Internal(format!("P is not unitriangular at ({i}, {j})")));
                    }
                }
                if bi > bj && !p[i][j].is_zero() {
                    return Err(Error::Internal(format!("P has a nonzero entry below the diagonal at ({i}, {j})")));
                }
                if bi != bj && !l[i][j].is_zero() {
                    return Err(Error::Internal(format!("Lambda has an off-block entry at ({i}, {j})")));
                }
            }
        }
        let prod = mat_mul(&mat_mul(&transpose(p), l), p);
        if prod != self.omega {
            return Err(Error::Internal(format!("tP Lambda P differs from Omega in series {}", self.series)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let enc = |m: &Matrix| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(|x| x.to_wire()).collect()).collect() };
        let mut v = serde_json::json!({
            "schema": OMEGA_SCHEMA,
            "series": self.series,
            "indices": self.indices,
            "omega": enc(&self.omega),
        });
        if let (Some(p), Some(l)) = (&self.p, &self.lambda) {
            v["P"] = serde_json::json!(enc(p));
            v["Lambda"] = serde_json::json!(enc(l));
        }
        v
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExternalDoc {
    #[serde(default)]
    schema: Option<String>,
    series: String,
    indices: Vec<IndexEntry>,
    omega: Vec<Vec<RatQ>>,
    #[serde(rename = "P", default)]
    p: Option<Vec<Vec<RatQ>>>,
    #[serde(rename = "Lambda", default)]
    lambda: Option<Vec<Vec<RatQ>>>,
}

/// Parse an `omega-system/v1` document. Any `P`/`Lambda` present are dropped;
/// the system comes back unsolved.
pub fn load_external_system(doc: &str) -> Result<OmegaSystem> {
    let d: ExternalDoc = serde_json::from_str(doc).map_err(|e| Error::Parse(format!("omega-system document: {e}")))?;
    if let Some(s) = &d.schema {
        if s != OMEGA_SCHEMA {
            return Err(Error::Invalid(format!("unsupported schema {s:?}, expected {OMEGA_SCHEMA:?}")));
        }
    }
    let _ = (d.p, d.lambda);
    let sys = OmegaSystem { series: d.series, indices: d.indices, data: Vec::new(), omega: d.omega, p: None, lambda: None };
    sys.validate()?;
    Ok(sys)
}

/// Build `Omega` for one series.
///
/// `omega_ij = |W|^-1 sum_w Tr(w sigma, E_i) Tr(w sigma, E_j) |G^F| / |Z_{L^w}^F| q^(-dim G - (a0_i + a0_j)/2)`,
/// summed over cycle types. In the twisted case the cycle type is that of
/// `w * w0` and the traces carry the sign `(-1)^a(E)`.
pub fn omega_matrix(spec: &GroupSpec, series: &SeriesLabel) -> Result<OmegaSystem> {
    let data = enumerate_block(spec, series)?;
    let levi = LeviSpec::new(spec.n, series.d)?;
    let twisted = spec.twisted();
    let g = group_order(spec);
    let classes = partitions_of(levi.m);
    let table = char_table(levi.m);
    let weights: Vec<RatQ> = classes
        .iter()
        .map(|rho| {
            let t = levi_torus_order(spec, &levi, rho)?;
            let size = BigRational::from_integer(BigInt::from(table.class_size(rho)));
            Ok((&g / &t).scale(&size))
        })
        .collect::<Result<_>>()?;
    let traces: Vec<Vec<i64>> = data
        .iter()
        .map(|x| classes.iter().map(|rho| twisted_trace_class(&x.mu, rho, twisted)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let w_order = BigRational::from_integer(BigInt::from(factorial(levi.m))).recip();
    let n = data.len();
    let mut omega = vec![vec![RatQ::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut s = RatQ::zero();
            for (k, w) in weights.iter().enumerate() {
                let c = traces[i][k] * traces[j][k];
                if c != 0 {
                    s = &s + &w.scale_int(c);
                }
            }
            let shift = data[i].a0 + data[j].a0;
            if shift % 2 != 0 {
                return Err(Error::Internal(format!("a0 parities differ within series {series}")));
            }
            let e = -(spec.dim() as i64) - shift / 2;
            let v = s.scale(&w_order) * RatQ::q_pow(e);
            if !v.is_integral_polynomial() {
                return Err(Error::Internal(format!(
                    "omega[{}][{}] = {v} is not an integer polynomial for {spec}, series {series}",
                    data[i].lambda, data[j].lambda
                )));
            }
            omega[j][i] = v.clone();
            omega[i][j] = v;
        }
    }
    let indices = data
        .iter()
        .enumerate()
        .map(|(i, x)| IndexEntry { label: x.lambda.to_string(), dim_c: x.dim_c, block: i })
        .collect();
    Ok(OmegaSystem {
        series: format!("{spec} {series}"),
        indices,
        data,
        omega,
        p: None,
        lambda: None,
    })
}

/// Block elimination for `tP Lambda P = Omega`; the result is verified by multiplication.
pub fn solve(system: &OmegaSystem) -> Result<OmegaSystem> {
    system.validate()?;
    let n = system.len();
    let blocks = system.blocks();
    let mut p = vec![vec![RatQ::zero(); n]; n];
    let mut lam = vec![vec![RatQ::zero(); n]; n];
    for r in &blocks {
        put_block(&mut p, r, r, &identity(r.len()));
    }
    for (a, ra) in blocks.iter().enumerate() {
        // Lambda_a = Omega_aa - sum_{b<a} tP_ba Lambda_b P_ba
        let mut la = sub_block(&system.omega, ra, ra);
        for rb in &blocks[..a] {
            let pba = sub_block(&p, rb, ra);
            let lb = sub_block(&lam, rb, rb);
            la = mat_sub(&la, &mat_mul(&mat_mul(&transpose(&pba), &lb), &pba));
        }
        let la_inv = inverse(&la).ok_or(Error::SingularBlock(a))?;
        put_block(&mut lam, ra, ra, &la);
        for rc in &blocks[a + 1..] {
            let mut rhs = sub_block(&system.omega, ra, rc);
            for rb in &blocks[..a] {
                let pba = sub_block(&p, rb, ra);
                let lb = sub_block(&lam, rb, rb);
                let pbc = sub_block(&p, rb, rc);
                rhs = mat_sub(&rhs, &mat_mul(&mat_mul(&transpose(&pba), &lb), &pbc));
            }
            put_block(&mut p, ra, rc, &mat_mul(&la_inv, &rhs));
        }
    }
    let out = OmegaSystem { p: Some(p), lambda: Some(lam), ..system.clone() };
    out.verify()?;
    Ok(out)
}

/// `omega_matrix` then `solve`, with the integrality of all three matrices enforced.
pub fn solve_series(spec: &GroupSpec, series: &SeriesLabel) -> Result<OmegaSystem> {
    let sys = solve(&omega_matrix(spec, series)?)?;
    sys.check_integral()?;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductive::{Characteristic, GroupKind};
    use crate::springer::{enumerate_series, series_for};

    fn p(s: &str) -> RatQ {
        s.parse().unwrap()
    }

    fn spec(kind: GroupKind, n: usize) -> GroupSpec {
        GroupSpec::new(kind, n, Characteristic::Generic).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()
    }

    fn external(omega: Matrix) -> OmegaSystem {
        let indices = (0..omega.len()).map(|i| IndexEntry { label: format!("x{i}"), dim_c: i, block: i }).collect();
        OmegaSystem { series: "test".into(), indices, data: Vec::new(), omega, p: None, lambda: None }
    }

    #[test]
    fn omega_examples() {
        let s = spec(GroupKind::GlSplit, 1);
        assert_eq!(omega_matrix(&s, &series_for(&s, 1).unwrap()).unwrap().omega, mat(&[&["1"]]));
        let s = spec(GroupKind::GlSplit, 2);
        let sys = omega_matrix(&s, &series_for(&s, 1).unwrap()).unwrap();
        assert_eq!(sys.omega, mat(&[&["1", "1"], &["1", "q^2"]]));
        let solved = solve(&sys).unwrap();
        assert_eq!(solved.p.unwrap(), mat(&[&["1", "1"], &["0", "1"]]));
        assert_eq!(solved.lambda.unwrap(), mat(&[&["1", "0"], &["0", "q^2-1"]]));
    }

    #[test]
    fn sl2_twisted_is_ennola_of_split() {
        let sp = spec(GroupKind::SlSplit, 2);
        let tw = spec(GroupKind::SlNonsplit, 2);
        let a = omega_matrix(&sp, &series_for(&sp, 1).unwrap()).unwrap();
        let b = omega_matrix(&tw, &series_for(&tw, 1).unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(b.omega[i][j], a.omega[i][j].substitute_neg_q());
            }
        }
    }

    #[test]
    fn trivial_systems() {
        let s = solve(&external(identity(3))).unwrap();
        assert_eq!(s.p.unwrap(), identity(3));
        assert_eq!(s.lambda.unwrap(), identity(3));
        let d = mat(&[&["2", "0", "0"], &["0", "q+1", "0"], &["0", "0", "1/3"]]);
        let s = solve(&external(d.clone())).unwrap();
        assert_eq!(s.p.unwrap(), identity(3));
        assert_eq!(s.lambda.unwrap(), d);
    }

    #[test]
    fn singular_block_is_reported() {
        let e = solve(&external(mat(&[&["0", "1"], &["1", "0"]]))).unwrap_err();
        assert_eq!(e, Error::SingularBlock(0));
    }

    #[test]
    fn genuine_blocks() {
        // a 2x2 block followed by a 1x1 block
        let omega = mat(&[&["2", "1", "3"], &["1", "1", "2"], &["3", "2", "q"]]);
        let mut sys = external(omega);
        sys.indices[1].block = 0;
        sys.indices[1].dim_c = 0;
        sys.indices[2].block = 1;
        let s = solve(&sys).unwrap();
        s.verify().unwrap();
        let l = s.lambda.unwrap();
        assert_eq!(l[0][1], p("1"));
        assert_eq!(l[2][2], p("q - 5"));
    }

    #[test]
    fn external_round_trip_and_rejections() {
        let s = spec(GroupKind::GlSplit, 3);
        let sys = omega_matrix(&s, &series_for(&s, 1).unwrap()).unwrap();
        let doc = serde_json::to_string(&sys.to_json()).unwrap();
        let loaded = load_external_system(&doc).unwrap();
        let a = solve(&sys).unwrap();
        let b = solve(&loaded).unwrap();
        assert_eq!(a.p, b.p);
        assert_eq!(a.lambda, b.lambda);

        let mut v = sys.to_json();
        v["omega"][0][1] = serde_json::json!("q + 7");
        assert!(load_external_system(&v.to_string()).is_err());
        let mut v = sys.to_json();
        v["indices"] = serde_json::json!([]);
        v["omega"] = serde_json::json!([]);
        assert!(load_external_system(&v.to_string()).is_err());
        let mut v = sys.to_json();
        v["indices"][0]["dim_C"] = serde_json::json!(100);
        assert!(load_external_system(&v.to_string()).is_err());
    }

    #[test]
    fn all_small_series_solve() {
        for kind in [GroupKind::GlSplit, GroupKind::GlNonsplit, GroupKind::SlSplit, GroupKind::SlNonsplit] {
            for n in 1..=4 {
                let s = spec(kind, n);
                for series in enumerate_series(&s) {
                    solve_series(&s, &series).unwrap();
                }
            }
        }
    }
}
