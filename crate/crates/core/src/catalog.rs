//! Parameter formulas for every family, and the stored table of sporadic
//! rank 3 graphs with their published clique and coclique numbers.
//!
//! The table ships as `data/catalog.json` (schema `srg-separator-catalog/1`).
//! Each row stores `params`, the eigenvalue columns `s`, `r`, the bound
//! columns `delsarte`, `hoffman` (as `n` or `n/d` strings), `omega` and
//! `alpha` (`null` where unknown), a `shade` (`none`, `light`, `dark`), a
//! `provenance` and a `reference`. All derived columns are recomputed on load.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, ExactScalar};
use crate::families::{FamilySpec, PolarType};
use crate::graph::SrgParams;

pub const SCHEMA: &str = "srg-separator-catalog/1";

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameters for {spec}: {reason}")]
    InvalidParams { spec: String, reason: String },
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("corrupt table data in row {row}: {field} stored {stored}, computed {computed}")]
    CorruptTableData {
        row: u32,
        field: &'static str,
        stored: String,
        computed: String,
    },
    #[error("malformed catalog: {0}")]
    Malformed(String),
}

/// Where a known clique or coclique number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Printed in a published table.
    PublishedTable,
    /// Stated in a published proof or remark.
    PublishedProse,
    /// Computed by this crate's solver; re-derived in the test suite.
    SolverDerived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Known {
    pub value: u64,
    pub provenance: Provenance,
}

impl Known {
    fn new(value: u64, provenance: Provenance) -> Self {
        Known { value, provenance }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub spec: FamilySpec,
    pub params: SrgParams,
    pub known_omega: Option<Known>,
    pub known_alpha: Option<Known>,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shade {
    /// Both bounds integral.
    None,
    /// A fractional Delsarte or Hoffman bound.
    Light,
    /// Integral bounds, at least one not attained.
    Dark,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub row: u32,
    pub name: String,
    pub params: SrgParams,
    pub s: ExactScalar,
    pub r: ExactScalar,
    pub delsarte: ExactScalar,
    pub hoffman: ExactScalar,
    pub omega: Option<Known>,
    pub alpha: Option<Known>,
    pub shade: Shade,
    pub reference: String,
}

impl Table2Row {
    pub fn entry(&self) -> CatalogEntry {
        CatalogEntry {
            spec: FamilySpec::CatalogRow { row: self.row },
            params: self.params,
            known_omega: self.omega,
            known_alpha: self.alpha,
            source: format!("{} ({})", self.name, self.reference),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table6Row {
    pub row: u32,
    pub params: SrgParams,
    pub omega: u64,
    pub alpha: u64,
}

#[derive(Deserialize)]
struct RawCatalog {
    schema: String,
    table2: Vec<RawRow>,
    table6: Vec<RawTable6>,
    separating_rows: Vec<u32>,
}

#[derive(Deserialize)]
struct RawRow {
    row: u32,
    name: String,
    params: [u64; 4],
    s: i64,
    r: i64,
    delsarte: String,
    hoffman: String,
    omega: Option<u64>,
    alpha: Option<u64>,
    shade: Shade,
    provenance: Provenance,
    reference: String,
}

#[derive(Deserialize)]
struct RawTable6 {
    row: u32,
    omega: u64,
    alpha: u64,
}

/// The validated table contents.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub table2: Vec<Table2Row>,
    pub table6: Vec<Table6Row>,
    pub separating_rows: Vec<u32>,
}

fn corrupt(row: u32, field: &'static str, stored: impl ToString, computed: impl ToString) -> CatalogError {
    CatalogError::CorruptTableData {
        row,
        field,
        stored: stored.to_string(),
        computed: computed.to_string(),
    }
}

/// Parses and revalidates a catalog document.
pub fn load(json: &str) -> Result<Catalog, CatalogError> {
    let raw: RawCatalog = serde_json::from_str(json).map_err(|e| CatalogError::Malformed(e.to_string()))?;
    if raw.schema != SCHEMA {
        return Err(CatalogError::Malformed(format!("unsupported schema {:?}", raw.schema)));
    }
    let mut table2 = Vec::with_capacity(raw.table2.len());
    for (i, r) in raw.table2.into_iter().enumerate() {
        if r.row as usize != i + 1 {
            return Err(CatalogError::Malformed(format!("row {} out of order", r.row)));
        }
        let [nu, k, lambda, mu] = r.params;
        let params = SrgParams::new(nu, k, lambda, mu).map_err(|e| corrupt(r.row, "params", format!("{:?}", r.params), e))?;
        let report = bounds::BoundReport::new(&params);
        let check = |field: &'static str, stored: &ExactScalar, computed: &ExactScalar| {
            if stored == computed {
                Ok(())
            } else {
                Err(corrupt(r.row, field, stored, computed))
            }
        };
        let parse = |field: &'static str, text: &str| {
            text.parse::<ExactScalar>()
                .map_err(|_| corrupt(r.row, field, text, "unparseable"))
        };
        let s = ExactScalar::from_int(r.s);
        let rr = ExactScalar::from_int(r.r);
        let delsarte = parse("delsarte", &r.delsarte)?;
        let hoffman = parse("hoffman", &r.hoffman)?;
        check("s", &s, &report.s)?;
        check("r", &rr, &report.r)?;
        check("delsarte", &delsarte, &report.delsarte)?;
        check("hoffman", &hoffman, &report.hoffman)?;
        let fractional = !report.delsarte_integral || !report.hoffman_integral;
        if fractional != (r.shade == Shade::Light) {
            return Err(corrupt(r.row, "shade", format!("{:?}", r.shade), if fractional { "light" } else { "not light" }));
        }
        for (field, value, cap) in [("omega", r.omega, &report.delsarte), ("alpha", r.alpha, &report.hoffman)] {
            if let Some(v) = value {
                if ExactScalar::from_int(v as i64) > *cap {
                    return Err(corrupt(r.row, field, v, format!("bound {cap}")));
                }
            }
        }
        table2.push(Table2Row {
            row: r.row,
            name: r.name,
            params,
            s,
            r: rr,
            delsarte,
            hoffman,
            omega: r.omega.map(|v| Known::new(v, r.provenance)),
            alpha: r.alpha.map(|v| Known::new(v, r.provenance)),
            shade: r.shade,
            reference: r.reference,
        });
    }
    let table6 = raw
        .table6
        .into_iter()
        .map(|t| {
            let row = table2
                .get(t.row as usize - 1)
                .ok_or_else(|| CatalogError::Malformed(format!("table 6 refers to missing row {}", t.row)))?;
            Ok(Table6Row {
                row: t.row,
                params: row.params,
                omega: t.omega,
                alpha: t.alpha,
            })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(Catalog {
        table2,
        table6,
        separating_rows: raw.separating_rows,
    })
}

/// The shipped catalog, validated once per process.
pub fn catalog() -> Result<&'static Catalog, CatalogError> {
    static CATALOG: OnceLock<Result<Catalog, CatalogError>> = OnceLock::new();
    CATALOG.get_or_init(|| load(CATALOG_JSON)).as_ref().map_err(Clone::clone)
}

pub fn table2_rows() -> Result<&'static [Table2Row], CatalogError> {
    Ok(&catalog()?.table2)
}

pub fn table6_rows() -> Result<&'static [Table6Row], CatalogError> {
    Ok(&catalog()?.table6)
}

pub fn table2_row(row: u32) -> Result<&'static Table2Row, CatalogError> {
    table2_rows()?
        .get((row as usize).wrapping_sub(1))
        .ok_or_else(|| CatalogError::UnknownFamily(format!("table row {row}")))
}

fn bad(spec: &FamilySpec, reason: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParams {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn pw(q: i128, e: u32) -> i128 {
    q.pow(e)
}

/// Gaussian binomial `[n]_q = (q^n - 1)/(q - 1)`.
fn gauss1(q: i128, n: u32) -> i128 {
    (0..n).map(|i| q.pow(i)).sum()
}

fn to_u64(spec: &FamilySpec, x: i128) -> Result<u64, CatalogError> {
    u64::try_from(x).map_err(|_| bad(spec, format!("parameter {x} out of range")))
}

fn quad(spec: &FamilySpec, nu: i128, k: i128, lambda: i128, mu: i128) -> Result<SrgParams, CatalogError> {
    SrgParams::new(to_u64(spec, nu)?, to_u64(spec, k)?, to_u64(spec, lambda)?, to_u64(spec, mu)?)
        .map_err(|e| bad(spec, e.to_string()))
}

/// Parameters from the order, valency and both restricted eigenvalues.
fn from_eigs(spec: &FamilySpec, nu: i128, k: i128, r: i128, s: i128) -> Result<SrgParams, CatalogError> {
    quad(spec, nu, k, k + r + s + r * s, k + r * s)
}

/// Parameters from order, valency and smallest eigenvalue:
/// `r = k (nu - k + s) / (-k - s (nu - 1))`.
fn from_spectrum(spec: &FamilySpec, nu: i128, k: i128, s: i128) -> Result<SrgParams, CatalogError> {
    let num = k * (nu - k + s);
    let den = -k - s * (nu - 1);
    if den == 0 || num % den != 0 {
        return Err(bad(spec, "eigenvalue r is not an integer"));
    }
    from_eigs(spec, nu, k, num / den, s)
}

/// The polar space parameters `(Q, R)`: lines have `Q + 1` points and every
/// point of a rank 2 space lies on `R + 1` lines.
pub fn polar_orders(polar: PolarType, dim: u32, q: u64) -> (u64, u64) {
    match polar {
        PolarType::Qplus => (q, 1),
        PolarType::W | PolarType::Q => (q, q),
        PolarType::Qminus => (q, q * q),
        PolarType::H if dim % 2 == 1 => (q * q, q),
        PolarType::H => (q * q, q * q * q),
    }
}

/// Number of points of a polar space of rank `n` with orders `(Q, R)`.
fn polar_points(qq: i128, rr: i128, n: u32) -> i128 {
    if n == 0 {
        return 0;
    }
    gauss1(qq, n) * (qq.pow(n - 1) * rr + 1)
}

/// Exact SRG parameters of a family member.
pub fn params_for(spec: &FamilySpec) -> Result<SrgParams, CatalogError> {
    spec.validate().map_err(|e| bad(spec, e.to_string()))?;
    use FamilySpec::*;
    match *spec {
        Triangular { n } => {
            let n = n as i128;
            quad(spec, n * (n - 1) / 2, 2 * (n - 2), n - 2, 4)
        }
        Grid { n } => {
            let n = n as i128;
            quad(spec, n * n, 2 * (n - 1), n - 2, 2)
        }
        Paley { q } => paley_type(spec, q as i128),
        Peisert { p, t } => paley_type(spec, pw(p as i128, 2 * t)),
        VanLintSchrijver { p, e, t } => {
            let q = pw(p as i128, (e - 1) * t);
            let root = pw(p as i128, (e - 1) * t / 2);
            let e = e as i128;
            let (r, s) = if t % 2 == 0 {
                ((root - 1) / e, (-1 - (e - 1) * root) / e)
            } else {
                (((e - 1) * root - 1) / e, (-1 - root) / e)
            };
            let params = from_eigs(spec, q, (q - 1) / e, r, s)?;
            if params.mu == 0 {
                return Err(bad(spec, "disconnected: the e-th powers form a subfield"));
            }
            Ok(params)
        }
        Grassmann { q, n } => {
            let q = q as i128;
            let nu = gauss1(q, n) * gauss1(q, n - 1) / (q + 1);
            let k = q * (q + 1) * gauss1(q, n - 2);
            from_eigs(spec, nu, k, q * q * gauss1(q, n - 3) - 1, -q - 1)
        }
        BilinearForms { q, m } => {
            let q = q as i128;
            from_eigs(spec, pw(q, 2 * m), (q + 1) * (pw(q, m) - 1), pw(q, m) - q - 1, -(q + 1))
        }
        PolarCollinearity { polar, dim, q, dual } => {
            let n = polar.rank(dim).expect("validated");
            let (qq, rr) = polar_orders(polar, dim, q);
            let (qq, rr) = (qq as i128, rr as i128);
            if dual {
                // Collinearity graph of the dual generalized quadrangle.
                let (s, t) = (qq, rr);
                quad(spec, (t + 1) * (s * t + 1), t * (s + 1), t - 1, s + 1)
            } else {
                let nu = polar_points(qq, rr, n);
                let below = polar_points(qq, rr, n - 1);
                let k = qq * below;
                let lambda = qq - 1 + qq * qq * polar_points(qq, rr, n.saturating_sub(2));
                quad(spec, nu, k, lambda, below)
            }
        }
        No { epsilon, n, q } => {
            let eps = epsilon as i128;
            let q = q as i128;
            if n % 2 == 0 {
                let m = n / 2;
                match q {
                    2 => {
                        let nu = pw(2, 2 * m - 1) - eps * pw(2, m - 1);
                        let s = if eps > 0 { -pw(2, m - 1) - 1 } else { -pw(2, m - 2) - 1 };
                        from_spectrum(spec, nu, pw(2, 2 * m - 2) - 1, s)
                    }
                    _ => {
                        let nu = pw(3, m - 1) * (pw(3, m) - eps) / 2;
                        let k = pw(3, m - 1) * (pw(3, m - 1) - eps) / 2;
                        let s = if eps > 0 { -pw(3, m - 2) } else { -pw(3, m - 1) };
                        from_spectrum(spec, nu, k, s)
                    }
                }
            } else {
                let m = (n - 1) / 2;
                let nu = pw(q, m) * (pw(q, m) + eps) / 2;
                let k = (pw(q, m - 1) + eps) * (pw(q, m) - eps);
                let s = if eps > 0 {
                    -pw(q, m - 1) - 1
                } else {
                    -(q - 2) * pw(q, m - 1) - 1
                };
                from_spectrum(spec, nu, k, s)
            }
        }
        Nu { m } => {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let nu_of = |m: u32| pw(2, m - 1) * (pw(2, m) - if m % 2 == 0 { 1 } else { -1 }) / 3;
            let nu = nu_of(m);
            let k_perp = nu_of(m - 1);
            let (r, s) = if sign > 0 {
                (pw(2, m - 3), -pw(2, m - 2))
            } else {
                (pw(2, m - 2), -pw(2, m - 3))
            };
            Ok(from_eigs(spec, nu, k_perp, r, s)?.complement())
        }
        VoPlus { m, q } => {
            let q = q as i128;
            let k = (pw(q, m) - 1) * (pw(q, m - 1) + 1);
            from_eigs(spec, pw(q, 2 * m), k, pw(q, m) - pw(q, m - 1) - 1, -pw(q, m - 1) - 1)
        }
        VoMinus { m, q } => {
            let q = q as i128;
            let k = (pw(q, m) + 1) * (pw(q, m - 1) - 1);
            from_eigs(spec, pw(q, 2 * m), k, pw(q, m - 1) - 1, -(q - 1) * pw(q, m - 1) - 1)
        }
        VSz { q } => {
            let q = q as i128;
            quad(spec, pw(q, 4), (q - 1) * (q * q + 1), q - 2, q * (q - 1))
        }
        BvLS => quad(spec, 243, 22, 1, 2),
        HoffmanSingleton => quad(spec, 50, 7, 0, 1),
        Gewirtz => quad(spec, 56, 10, 0, 2),
        M22 => quad(spec, 77, 16, 0, 4),
        HigmanSims => quad(spec, 100, 22, 0, 6),
        DualPolarHalf5 { q } => {
            let q = q as i128;
            let nu = (pw(q, 4) + 1) * (pw(q, 3) + 1) * (q * q + 1) * (q + 1);
            from_spectrum(spec, nu, q * (q * q + 1) * gauss1(q, 5), -q * q - 1)
        }
        E6 { q } => {
            let q = q as i128;
            let nu = gauss1(q, 12) * gauss1(q, 9) / gauss1(q, 4);
            let k = q * (pw(q, 3) + 1) * gauss1(q, 8);
            from_spectrum(spec, nu, k, -pw(q, 3) - 1)
        }
        AffineHalfSpin { q } => {
            let q = q as i128;
            from_spectrum(spec, pw(q, 16), (pw(q, 8) - 1) * (pw(q, 3) + 1), -(pw(q, 3) + 1))
        }
        AlternatingForms { q } => {
            let q = q as i128;
            let k = (pw(q, 5) - 1) * (pw(q, 4) - 1) / (q * q - 1);
            let lambda = k - pw(q, 4) * (pw(q, 3) - 1) - 1;
            quad(spec, pw(q, 10), k, lambda, q * q * (q * q + 1))
        }
        CatalogRow { row } => Ok(table2_row(row)?.params),
    }
}

fn paley_type(spec: &FamilySpec, q: i128) -> Result<SrgParams, CatalogError> {
    quad(spec, q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4)
}

/// Clique and coclique numbers known for a family member, from published
/// statements or from solver runs recorded here.
pub fn known_values(spec: &FamilySpec) -> (Option<Known>, Option<Known>) {
    use FamilySpec::*;
    use Provenance::*;
    let prose = |v: u64| Some(Known::new(v, PublishedProse));
    match *spec {
        Triangular { n } => (prose(n - 1), prose(n / 2)),
        Grid { n } => (prose(n), prose(n)),
        E6 { q } => (prose(gauss1(q as i128, 6) as u64), None),
        AffineHalfSpin { q } => (prose(q.pow(4)), None),
        AlternatingForms { q } => (prose(q.pow(4)), prose(q.pow(5))),
        No { epsilon: -1, n: 6, q: 2 } => (prose(4), prose(5)),
        No { epsilon: -1, n: 6, q: 3 } => (prose(6), prose(15)),
        No { epsilon: 1, n: 6, q: 2 } => (prose(4), Some(Known::new(7, SolverDerived))),
        No { epsilon: 1, n: 8, q: 2 } => (prose(8), Some(Known::new(NO_PLUS_8_2_ALPHA, SolverDerived))),
        No { epsilon: 1, n: 10, q: 2 } => (prose(16), Some(Known::new(NO_PLUS_10_2_ALPHA, SolverDerived))),
        No { epsilon: 1, n, q: 3 } if n % 2 == 1 => {
            let m = (n - 1) / 2;
            (prose(3u64.pow(m)), prose(if m % 2 == 0 { 2 * m as u64 + 1 } else { 2 * m as u64 }))
        }
        No { epsilon: 1, n, q } if n % 2 == 1 => (prose(q.pow((n - 1) / 2)), None),
        Nu { m } => (None, prose(m as u64)),
        CatalogRow { row } => match table2_row(row) {
            Ok(r) => (r.omega, r.alpha),
            Err(_) => (None, None),
        },
        _ => (None, None),
    }
}

/// Coclique number of `NO^+_8(2)`, from an exact solver run.
pub const NO_PLUS_8_2_ALPHA: u64 = 8;
/// Coclique number of `NO^+_10(2)`, from an exact solver run.
pub const NO_PLUS_10_2_ALPHA: u64 = 9;

/// Full catalog entry for a family member.
pub fn entry(spec: &FamilySpec) -> Result<CatalogEntry, CatalogError> {
    if let FamilySpec::CatalogRow { row } = *spec {
        return Ok(table2_row(row)?.entry());
    }
    let params = params_for(spec)?;
    let (known_omega, known_alpha) = known_values(spec);
    Ok(CatalogEntry {
        spec: *spec,
        params,
        known_omega,
        known_alpha,
        source: spec.to_string(),
    })
}
