//! Generalized Green function tables and the split/non-split comparison.

use std::collections::BTreeMap;

use serde_json::json;

use crate::cyclotomic::{Cyclo, RootOfUnity};
use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition};
use crate::qpoly::RatQ;
use crate::reductive::{frobenius_multiplier, GroupKind, GroupSpec, LeviSpec};
use crate::solver::{solve_series, OmegaSystem};
use crate::springer::{series_is_stable, y0_table, ClassColumn, SeriesLabel, SpringerDatum, Y0Table};
use crate::symgroup::{sign_pow, twisted_trace_class};

pub const TABLE_SCHEMA: &str = "green-table/v1";

/// `nu_{lambda, eta}` supplied by the caller, keyed by Jordan type.
pub type NuInputs = BTreeMap<Partition, RootOfUnity>;

/// `gamma_i` for every member of the series, in block order.
///
/// Split forms give 1. Non-split forms give `nu_lambda * (-1)^delta_i`, where
/// `nu` defaults to 1 for `lambda = (n)` and for `d = 1` and must otherwise be
/// supplied.
pub fn gamma_values(spec: &GroupSpec, series: &SeriesLabel, data: &[SpringerDatum], nu: &NuInputs) -> Result<Vec<RootOfUnity>> {
    if !spec.twisted() {
        return Ok(vec![RootOfUnity::one(); data.len()]);
    }
    data.iter()
        .map(|x| {
            let v = match nu.get(&x.lambda) {
                Some(v) => *v,
                None if series.d == 1 || x.lambda == Partition::row(spec.n) => RootOfUnity::one(),
                None => return Err(Error::MissingNu(x.lambda.to_string())),
            };
            Ok(if x.delta % 2 == 0 { v } else { v.mul(&RootOfUnity::minus_one()) })
        })
        .collect()
}

/// A root of unity as an element of `Q(zeta_order)`. Roots of the form
/// `-zeta` with `zeta` of order dividing `order` are accepted too.
pub fn embed(order: u32, root: &RootOfUnity) -> Result<Cyclo> {
    let one = RatQ::one();
    let r = root.reduced();
    if order % r.order == 0 {
        return Ok(Cyclo::from_root(order, &r, &one));
    }
    let neg = r.mul(&RootOfUnity::minus_one()).reduced();
    if order % neg.order == 0 {
        return Ok(Cyclo::from_root(order, &neg, &one).neg());
    }
    Err(Error::Invalid(format!("root of unity {root} does not lie in Q(zeta_{order})")))
}

/// `X_i(u_a) = sum_j p_ji gamma_j Y0_j(u_a)`, as `x[i][column]`.
pub fn x_functions(system: &OmegaSystem, y0: &Y0Table, gammas: &[RootOfUnity]) -> Result<Vec<Vec<Cyclo>>> {
    let p = system.p.as_ref().ok_or_else(|| Error::Invalid("system is not solved".into()))?;
    let n = system.len();
    if y0.values.len() != n || gammas.len() != n || p.len() != n {
        return Err(Error::Invalid(format!(
            "dimension mismatch: system {n}, Y0 rows {}, gammas {}",
            y0.values.len(),
            gammas.len()
        )));
    }
    let order = y0.field_order;
    let scaled: Vec<Vec<Option<Cyclo>>> = (0..n)
        .map(|j| {
            y0.values[j]
                .iter()
                .map(|v| v.map(|y| embed(order, &gammas[j].mul(&y))).transpose())
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    Ok((0..n)
        .map(|i| {
            y0.columns
                .iter()
                .enumerate()
                .map(|(c, _)| {
                    let mut acc = Cyclo::zero(order);
                    for j in 0..n {
                        if let Some(y) = &scaled[j][c] {
                            if !p[j][i].is_zero() {
                                acc = acc.add(&y.scale(&p[j][i]));
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect())
}

/// Green functions of one series at one residue of `q`.
#[derive(Clone, Debug)]
pub struct GreenTable {
    pub spec: GroupSpec,
    pub series: SeriesLabel,
    pub q_residue: i64,
    /// Row labels: cycle type of `w` (split) or of `w * w0` (non-split).
    pub rows: Vec<Partition>,
    pub columns: Vec<ClassColumn>,
    pub entries: Vec<Vec<Cyclo>>,
    pub gammas: Vec<RootOfUnity>,
    /// Cuspidal series: one row, nothing induced.
    pub pass_through: bool,
}

impl GreenTable {
    pub fn field_order(&self) -> u32 {
        self.entries.first().and_then(|r| r.first()).map_or(1, |c| c.order())
    }

    pub fn entry(&self, row: &Partition, col: &str) -> Option<&Cyclo> {
        let r = self.rows.iter().position(|x| x == row)?;
        let c = self.columns.iter().position(|x| x.to_string() == col)?;
        Some(&self.entries[r][c])
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["w".to_string()];
        header.extend(self.columns.iter().map(|c| c.to_string()));
        w.write_record(&header).unwrap();
        for (r, row) in self.rows.iter().zip(&self.entries) {
            let mut rec = vec![r.to_string()];
            rec.extend(row.iter().map(|e| e.render(false)));
            w.write_record(&rec).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": TABLE_SCHEMA,
            "group": self.spec.to_string(),
            "series": self.series,
            "q_residue": self.q_residue,
            "field_order": self.field_order(),
            "pass_through": self.pass_through,
            "rows": self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "columns": self.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "gamma": self.gammas.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|r| r.iter().map(|e| e.render(true)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// The full table.
///
/// Entry `(w, (lambda, a))` is `sum_i (-1)^a(E_i) Tr(w w0^e, E_i) X_i(u_a) q^((a0+r)_i/2)`,
/// with `e = 1` for non-split forms. The global sign `(-1)^dim Z_L` carried by
/// `(-1)^a0` is dropped so that counts come out positive.
pub fn green_table(spec: &GroupSpec, series: &SeriesLabel, q_residue: i64, nu: &NuInputs) -> Result<GreenTable> {
    let system = solve_series(spec, series)?;
    green_table_from(spec, series, q_residue, nu, &system)
}

fn green_table_from(
    spec: &GroupSpec,
    series: &SeriesLabel,
    q_residue: i64,
    nu: &NuInputs,
    system: &OmegaSystem,
) -> Result<GreenTable> {
    let y0 = y0_table(spec, series, q_residue)?;
    let gammas = gamma_values(spec, series, &system.data, nu)?;
    let x = x_functions(system, &y0, &gammas)?;
    let levi = LeviSpec::new(spec.n, series.d)?;
    let rows = partitions_of(levi.m);
    let order = x.first().and_then(|r| r.first()).map_or(y0.field_order, |c| c.order());
    let powers: Vec<RatQ> = system.data.iter().map(|d| RatQ::q_pow(d.half_a0_r())).collect();
    let mut entries = Vec::with_capacity(rows.len());
    for rho in &rows {
        let traces: Vec<i64> =
            system.data.iter().map(|d| twisted_trace_class(&d.mu, rho, spec.twisted())).collect::<Result<_>>()?;
        let row = (0..y0.columns.len())
            .map(|c| {
                let mut acc = Cyclo::zero(order);
                for i in 0..system.len() {
                    if traces[i] != 0 && !x[i][c].is_zero() {
                        acc = acc.add(&x[i][c].scale(&powers[i].scale_int(traces[i])));
                    }
                }
                acc
            })
            .collect();
        entries.push(row);
    }
    Ok(GreenTable {
        spec: *spec,
        series: *series,
        q_residue,
        rows,
        columns: y0.columns,
        entries,
        gammas,
        pass_through: series.cuspidal,
    })
}

/// Whether every entry is fixed by `z -> z^t`, `t` the Frobenius multiplier.
pub fn is_frobenius_equivariant(table: &GreenTable) -> bool {
    let order = table.field_order();
    let t = frobenius_multiplier(table.spec.twisted(), table.q_residue, order as usize);
    table.entries.iter().flatten().all(|e| e.galois(t) == *e)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EnnolaItem {
    pub identity: String,
    pub pass: bool,
    /// First counterexample, or empty.
    pub detail: String,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct EnnolaReport {
    pub group: String,
    pub series: SeriesLabel,
    pub q_residue: i64,
    pub items: Vec<EnnolaItem>,
}

impl EnnolaReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

fn compare_matrix(
    name: &str,
    split: &[Vec<RatQ>],
    twisted: &[Vec<RatQ>],
    signs: &[i64],
    labels: &[String],
) -> EnnolaItem {
    for i in 0..split.len() {
        for j in 0..split.len() {
            let want = split[i][j].substitute_neg_q().scale_int(signs[i] * signs[j]);
            if twisted[i][j] != want {
                return EnnolaItem {
                    identity: name.into(),
                    pass: false,
                    detail: format!(
                        "at ({}, {}): non-split {} but split(-q) with signs gives {}",
                        labels[i], labels[j], twisted[i][j], want
                    ),
                };
            }
        }
    }
    EnnolaItem { identity: name.into(), pass: true, detail: String::new() }
}

/// Compares the non-split form with the split form at `q -> -q`.
///
/// Checks `Omega`, `P`, `Lambda` entrywise up to `(-1)^(delta_i + delta_j)`,
/// then the tables: the non-split table at residue `r` must equal
/// `nu_lambda` times the split table at residue `-r`, evaluated at `-q`,
/// with rows matched through `w -> w * w0` (both are labeled by the same
/// cycle type) and twist classes matched by label. `q_residue` defaults to
/// `n' - 1`.
pub fn ennola_check(spec: &GroupSpec, series: &SeriesLabel, q_residue: Option<i64>, nu: &NuInputs) -> Result<EnnolaReport> {
    let (split, twisted) = split_pair(spec);
    let np = spec.n_prime() as i64;
    let r = q_residue.unwrap_or(np - 1).rem_euclid(np.max(1));
    let ss = solve_series(&split, series)?;
    let st = solve_series(&twisted, series)?;
    let mut items = compare_systems(&ss, &st)?;
    items.push(compare_tables(&split, &twisted, series, r, nu, &ss, &st)?);
    Ok(EnnolaReport { group: split.to_string(), series: *series, q_residue: r, items })
}

/// Only the `Omega`, `P`, `Lambda` part of [`ennola_check`]; needs no `nu`.
pub fn ennola_matrices(spec: &GroupSpec, series: &SeriesLabel) -> Result<EnnolaReport> {
    let (split, twisted) = split_pair(spec);
    let ss = solve_series(&split, series)?;
    let st = solve_series(&twisted, series)?;
    let items = compare_systems(&ss, &st)?;
    Ok(EnnolaReport { group: split.to_string(), series: *series, q_residue: 0, items })
}

fn split_pair(spec: &GroupSpec) -> (GroupSpec, GroupSpec) {
    (spec.with_kind(GroupKind::new(spec.family(), false)), spec.with_kind(GroupKind::new(spec.family(), true)))
}

fn compare_systems(ss: &OmegaSystem, st: &OmegaSystem) -> Result<Vec<EnnolaItem>> {
    let labels: Vec<String> = ss.indices.iter().map(|x| x.label.clone()).collect();
    if labels != st.indices.iter().map(|x| x.label.clone()).collect::<Vec<_>>() {
        return Err(Error::Internal("split and non-split blocks are ordered differently".into()));
    }
    let signs: Vec<i64> = ss.data.iter().map(|d| sign_pow(d.delta.unsigned_abs() as usize)).collect();
    Ok(vec![
        compare_matrix("omega", &ss.omega, &st.omega, &signs, &labels),
        compare_matrix("P", ss.p.as_ref().unwrap(), st.p.as_ref().unwrap(), &signs, &labels),
        compare_matrix("Lambda", ss.lambda.as_ref().unwrap(), st.lambda.as_ref().unwrap(), &signs, &labels),
    ])
}

fn compare_tables(
    split: &GroupSpec,
    twisted: &GroupSpec,
    series: &SeriesLabel,
    r: i64,
    nu: &NuInputs,
    ss: &OmegaSystem,
    st: &OmegaSystem,
) -> Result<EnnolaItem> {
    let np = split.n_prime() as i64;
    let mut item = EnnolaItem { identity: "table".into(), pass: true, detail: String::new() };
    if !series_is_stable(twisted, series, r) {
        item.detail = format!("series is not Frobenius-stable at residue {r}; nothing to compare");
        return Ok(item);
    }
    let tt = green_table_from(twisted, series, r, nu, st)?;
    let ts = green_table_from(split, series, (-r).rem_euclid(np.max(1)), &NuInputs::new(), ss)?;
    if tt.rows != ts.rows || tt.columns != ts.columns {
        item.pass = false;
        item.detail = "row or column labels differ".into();
        return Ok(item);
    }
    for (ri, row) in tt.rows.iter().enumerate() {
        for (ci, col) in tt.columns.iter().enumerate() {
            let nu_l = nu.get(&col.lambda).copied().unwrap_or_else(RootOfUnity::one);
            let want = ts.entries[ri][ci].substitute_neg_q().mul(&embed(ts.field_order(), &nu_l)?);
            if tt.entries[ri][ci] != want {
                item.pass = false;
                item.detail =
                    format!("row {row}, column {col}: non-split {} but nu * split(-q) gives {}", tt.entries[ri][ci], want);
                return Ok(item);
            }
        }
    }
    Ok(item)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductive::Characteristic;
    use crate::springer::{enumerate_series, series_for};

    fn spec(kind: GroupKind, n: usize) -> GroupSpec {
        GroupSpec::new(kind, n, Characteristic::Generic).unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rat(e: &Cyclo) -> String {
        e.as_ratq().unwrap().to_string()
    }

    #[test]
    fn gl2_table() {
        let s = spec(GroupKind::GlSplit, 2);
        let t = green_table(&s, &series_for(&s, 1).unwrap(), 1, &NuInputs::new()).unwrap();
        let id = part("1,1");
        assert_eq!(rat(t.entry(&id, "1,1|0").unwrap()), "q + 1");
        assert_eq!(rat(t.entry(&id, "2|0").unwrap()), "1");
        let cox = part("2");
        assert_eq!(rat(t.entry(&cox, "1,1|0").unwrap()), "-q + 1");
        assert_eq!(rat(t.entry(&cox, "2|0").unwrap()), "1");
    }

    #[test]
    fn gl2_x_functions() {
        let s = spec(GroupKind::GlSplit, 2);
        let series = series_for(&s, 1).unwrap();
        let sys = solve_series(&s, &series).unwrap();
        let y0 = y0_table(&s, &series, 1).unwrap();
        let x = x_functions(&sys, &y0, &[RootOfUnity::one(); 2]).unwrap();
        // rows (1,1) then (2); columns (1,1) then (2)
        let show: Vec<Vec<String>> = x.iter().map(|r| r.iter().map(rat).collect()).collect();
        assert_eq!(show, vec![vec!["1", "0"], vec!["1", "1"]]);
    }

    #[test]
    fn regular_column_is_one() {
        for n in 1..=5 {
            let s = spec(GroupKind::GlSplit, n);
            let t = green_table(&s, &series_for(&s, 1).unwrap(), 1, &NuInputs::new()).unwrap();
            let id = Partition::column(n);
            assert_eq!(rat(t.entry(&id, &format!("{}|0", Partition::row(n))).unwrap()), "1");
        }
    }

    #[test]
    fn gamma_rules() {
        let s = spec(GroupKind::SlNonsplit, 4);
        let series = series_for(&s, 2).unwrap();
        let sys = solve_series(&s, &series).unwrap();
        assert_eq!(gamma_values(&s, &series, &sys.data, &NuInputs::new()), Err(Error::MissingNu("2,2".into())));
        let mut nu = NuInputs::new();
        nu.insert(part("2,2"), RootOfUnity::one());
        let g = gamma_values(&s, &series, &sys.data, &nu).unwrap();
        for (x, gi) in sys.data.iter().zip(&g) {
            assert_eq!(gi.reduced(), if x.delta % 2 == 0 { RootOfUnity::one() } else { RootOfUnity::minus_one() }.reduced());
        }
        let split = spec(GroupKind::SlSplit, 4);
        assert!(gamma_values(&split, &series, &sys.data, &NuInputs::new()).unwrap().iter().all(|g| g.is_one()));
    }

    #[test]
    fn cuspidal_is_pass_through() {
        let s = spec(GroupKind::SlSplit, 3);
        let t = green_table(&s, &series_for(&s, 3).unwrap(), 1, &NuInputs::new()).unwrap();
        assert!(t.pass_through);
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.columns.len(), 3);
    }

    #[test]
    fn ennola_small() {
        let mut nu = NuInputs::new();
        nu.insert(part("2,2"), RootOfUnity::one());
        for n in 1..=4 {
            let s = spec(GroupKind::SlSplit, n);
            for series in enumerate_series(&s) {
                let rep = ennola_check(&s, &series, None, &nu).unwrap();
                assert!(rep.passed(), "{n} {series}: {:?}", rep.items);
            }
        }
    }

    #[test]
    fn tables_are_frobenius_equivariant() {
        let s = spec(GroupKind::SlSplit, 4);
        for series in enumerate_series(&s) {
            for r in [1, 3] {
                if series_is_stable(&s, &series, r) {
                    let t = green_table(&s, &series, r, &NuInputs::new()).unwrap();
                    assert!(is_frobenius_equivariant(&t));
                }
            }
        }
    }
}
