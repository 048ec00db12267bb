//! Explicit generators for the rank 3 graph families, each returning the graph
//! together with any clique/coclique structures known from its construction.

mod affine;
mod forms;
mod projective;
mod sporadic;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog;
use crate::gf::{self, Field, GfError};
use crate::graph::DenseGraph;

pub use forms::AdjacencyRule;
pub use projective::{nonsingular_rule, select_nonsingular_rule, NonsingularKind};

pub const DEFAULT_MAX_NU: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {constraint}")]
    InvalidParams { family: String, constraint: String },
    #[error("{spec} has {nu} vertices, above the cap of {cap}")]
    TooLarge { spec: String, nu: u64, cap: u64 },
    #[error("{0} has no explicit generator")]
    NotConstructible(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("missing parameter --{0}")]
    MissingParam(&'static str),
    #[error(transparent)]
    Field(#[from] GfError),
}

pub(crate) fn invalid(spec: &FamilySpec, constraint: impl Into<String>) -> FamilyError {
    FamilyError::InvalidParams {
        family: spec.to_string(),
        constraint: constraint.into(),
    }
}

/// Classical polar space types: symplectic, parabolic, hyperbolic, elliptic,
/// Hermitian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PolarType {
    W,
    Q,
    Qplus,
    Qminus,
    H,
}

impl PolarType {
    /// Rank of the polar space in projective dimension `dim`, or `None` when
    /// the dimension has the wrong parity for the type.
    pub fn rank(self, dim: u32) -> Option<u32> {
        match self {
            PolarType::W | PolarType::Qplus if dim % 2 == 1 => Some(dim.div_ceil(2)),
            PolarType::Q if dim % 2 == 0 => Some(dim / 2),
            PolarType::Qminus if dim % 2 == 1 => Some((dim - 1) / 2),
            PolarType::H => Some(dim.div_ceil(2)),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            PolarType::W => "W",
            PolarType::Q => "Q",
            PolarType::Qplus => "Q+",
            PolarType::Qminus => "Q-",
            PolarType::H => "H",
        }
    }

    fn parse(s: &str) -> Option<PolarType> {
        Some(match s.to_ascii_lowercase().as_str() {
            "w" => PolarType::W,
            "q" => PolarType::Q,
            "q+" | "qplus" => PolarType::Qplus,
            "q-" | "qminus" => PolarType::Qminus,
            "h" => PolarType::H,
            _ => return None,
        })
    }
}

/// A family member. For polar spaces `dim` is the projective dimension and,
/// for the Hermitian type, `q` is the square root of the field order.
/// For `No`, `n` is the vector space dimension (even `2m` or odd `2m + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Triangular { n: u64 },
    Grid { n: u64 },
    Paley { q: u64 },
    /// The Peisert graph of order `p^(2t)`.
    Peisert { p: u64, t: u32 },
    VanLintSchrijver { p: u64, e: u32, t: u32 },
    Grassmann { q: u64, n: u32 },
    BilinearForms { q: u64, m: u32 },
    PolarCollinearity { polar: PolarType, dim: u32, q: u64, dual: bool },
    #[serde(rename = "no")]
    No { epsilon: i8, n: u32, q: u64 },
    #[serde(rename = "nu")]
    Nu { m: u32 },
    #[serde(rename = "vo_plus")]
    VoPlus { m: u32, q: u64 },
    #[serde(rename = "vo_minus")]
    VoMinus { m: u32, q: u64 },
    #[serde(rename = "vsz")]
    VSz { q: u64 },
    #[serde(rename = "bvls")]
    BvLS,
    HoffmanSingleton,
    Gewirtz,
    #[serde(rename = "m22_77")]
    M22,
    HigmanSims,
    DualPolarHalf5 { q: u64 },
    E6 { q: u64 },
    AlternatingForms { q: u64 },
    AffineHalfSpin { q: u64 },
    CatalogRow { row: u32 },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match *self {
            Triangular { n } => write!(f, "T({n})"),
            Grid { n } => write!(f, "{n}x{n} grid"),
            Paley { q } => write!(f, "Paley({q})"),
            Peisert { p, t } => write!(f, "Peisert({p}^{})", 2 * t),
            VanLintSchrijver { p, e, t } => write!(f, "vLS({p},{e},{t})"),
            Grassmann { q, n } => write!(f, "J_{q}({n},2)"),
            BilinearForms { q, m } => write!(f, "H_{q}(2,{m})"),
            PolarCollinearity { polar, dim, q, dual } => {
                let field = if polar == PolarType::H {
                    format!("{q}^2")
                } else {
                    q.to_string()
                };
                write!(f, "{}({dim},{field}){}", polar.symbol(), if dual { "^D" } else { "" })
            }
            No { epsilon, n, q } => {
                write!(f, "NO^{}_{n}({q})", if epsilon > 0 { '+' } else { '-' })
            }
            Nu { m } => write!(f, "NU_{m}(2)"),
            VoPlus { m, q } => write!(f, "VO^+_{}({q})", 2 * m),
            VoMinus { m, q } => write!(f, "VO^-_{}({q})", 2 * m),
            VSz { q } => write!(f, "VSz({q})"),
            BvLS => write!(f, "Berlekamp-van Lint-Seidel"),
            HoffmanSingleton => write!(f, "Hoffman-Singleton"),
            Gewirtz => write!(f, "Gewirtz"),
            M22 => write!(f, "M22(77)"),
            HigmanSims => write!(f, "Higman-Sims"),
            DualPolarHalf5 { q } => write!(f, "D_5,5({q}) dual polar half"),
            E6 { q } => write!(f, "E_6,1({q})"),
            AlternatingForms { q } => write!(f, "Alt(5,{q})"),
            AffineHalfSpin { q } => write!(f, "VD_5,5({q})"),
            CatalogRow { row } => write!(f, "table row {row}"),
        }
    }
}

/// Clique and coclique structures known from a construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessHint {
    pub clique: Option<Vec<usize>>,
    pub coclique: Option<Vec<usize>>,
    pub provenance: String,
}

impl WitnessHint {
    pub fn none() -> Self {
        WitnessHint::default()
    }

    pub fn new(clique: Option<Vec<usize>>, coclique: Option<Vec<usize>>, provenance: &str) -> Self {
        WitnessHint {
            clique,
            coclique,
            provenance: provenance.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: DenseGraph,
    pub hint: WitnessHint,
}

fn is_prime_power(q: u64) -> bool {
    gf::prime_power(q).is_some()
}

impl FamilySpec {
    /// Checks the family's parameter constraints.
    pub fn validate(&self) -> Result<(), FamilyError> {
        use FamilySpec::*;
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(invalid(self, what)) };
        match *self {
            Triangular { n } => need(n >= 4, "n >= 4"),
            Grid { n } => need(n >= 2, "n >= 2"),
            Paley { q } => {
                need(is_prime_power(q), "q is a prime power")?;
                need(q % 4 == 1, "q = 1 mod 4")
            }
            Peisert { p, t } => {
                need(gf::is_prime(p), "p prime")?;
                need(p % 4 == 3, "p = 3 mod 4")?;
                need(t >= 1, "t >= 1")
            }
            VanLintSchrijver { p, e, t } => {
                need(gf::is_prime(p), "p prime")?;
                need(e >= 3 && gf::is_prime(e as u64), "e an odd prime")?;
                need(p % e as u64 != 0 && multiplicative_order_mod(p, e as u64) == e as u64 - 1, "p primitive mod e")?;
                need(t >= 1, "t >= 1")
            }
            Grassmann { q, n } => {
                need(is_prime_power(q), "q is a prime power")?;
                need(n >= 4, "n >= 4")
            }
            BilinearForms { q, m } => {
                need(is_prime_power(q), "q is a prime power")?;
                need(m >= 2, "m >= 2")
            }
            PolarCollinearity { polar, dim, q, dual } => {
                need(is_prime_power(q), "q is a prime power")?;
                let rank = polar
                    .rank(dim)
                    .ok_or_else(|| invalid(self, "dimension parity matches the polar type"))?;
                need(rank >= 2, "rank >= 2")?;
                need(!dual || rank == 2, "duals only in rank 2")
            }
            No { epsilon, n, q } => {
                need(epsilon == 1 || epsilon == -1, "epsilon = +1 or -1")?;
                if n % 2 == 0 {
                    need(q == 2 || q == 3, "q in {2, 3} for even dimension")?;
                    need(n >= 6, "m >= 3")
                } else {
                    need(q == 3 || q == 4 || q == 8, "q in {3, 4, 8} for odd dimension")?;
                    need(n >= 5, "m >= 2")
                }
            }
            Nu { m } => need(m >= 4, "m > 3"),
            VoPlus { m, q } | VoMinus { m, q } => {
                need(is_prime_power(q), "q is a prime power")?;
                need(m >= 2, "m >= 2")
            }
            VSz { q } => need(
                q >= 2 && q.is_power_of_two() && q.trailing_zeros() % 2 == 1,
                "q = 2^(2e+1)",
            ),
            BvLS | HoffmanSingleton | Gewirtz | M22 | HigmanSims => Ok(()),
            DualPolarHalf5 { q } | E6 { q } | AlternatingForms { q } | AffineHalfSpin { q } => {
                need(is_prime_power(q), "q is a prime power")
            }
            CatalogRow { row } => need((1..=53).contains(&row), "row in 1..=53"),
        }
    }

    /// Builds a spec from a family name and `name -> value` parameters, as
    /// used on the command line.
    pub fn from_params(family: &str, params: &BTreeMap<String, String>) -> Result<FamilySpec, FamilyError> {
        fn num<T: std::str::FromStr>(
            params: &BTreeMap<String, String>,
            key: &'static str,
        ) -> Result<T, FamilyError> {
            let raw = params.get(key).ok_or(FamilyError::MissingParam(key))?;
            raw.trim_start_matches('+')
                .parse()
                .map_err(|_| FamilyError::InvalidParams {
                    family: key.to_string(),
                    constraint: format!("cannot parse {raw:?}"),
                })
        }
        let flag = |key: &str| params.get(key).is_some_and(|v| v == "true" || v == "1");
        use FamilySpec::*;
        let spec = match family.to_ascii_lowercase().replace('-', "_").as_str() {
            "triangular" => Triangular { n: num(params, "n")? },
            "grid" => Grid { n: num(params, "n")? },
            "paley" => Paley { q: num(params, "q")? },
            "peisert" => Peisert { p: num(params, "p")?, t: num(params, "t")? },
            "vls" | "van_lint_schrijver" => VanLintSchrijver {
                p: num(params, "p")?,
                e: num(params, "e")?,
                t: num(params, "t")?,
            },
            "grassmann" => Grassmann { q: num(params, "q")?, n: num(params, "n")? },
            "bilinear" | "bilinear_forms" => BilinearForms { q: num(params, "q")?, m: num(params, "m")? },
            "polar" | "polar_collinearity" => {
                let raw = params.get("polar").ok_or(FamilyError::MissingParam("polar"))?;
                let polar = PolarType::parse(raw).ok_or_else(|| FamilyError::UnknownFamily(raw.clone()))?;
                PolarCollinearity {
                    polar,
                    dim: num(params, "dim")?,
                    q: num(params, "q")?,
                    dual: flag("dual"),
                }
            }
            "no" => No {
                epsilon: num(params, "epsilon")?,
                n: num(params, "n")?,
                q: num(params, "q")?,
            },
            "nu" => Nu { m: num(params, "m")? },
            "vo_plus" | "voplus" => VoPlus { m: num(params, "m")?, q: num(params, "q")? },
            "vo_minus" | "vominus" => VoMinus { m: num(params, "m")?, q: num(params, "q")? },
            "vo" => {
                let epsilon: i8 = num(params, "epsilon")?;
                let (m, q) = (num(params, "m")?, num(params, "q")?);
                if epsilon > 0 {
                    VoPlus { m, q }
                } else {
                    VoMinus { m, q }
                }
            }
            "vsz" => VSz { q: num(params, "q")? },
            "bvls" => BvLS,
            "hoffman_singleton" => HoffmanSingleton,
            "gewirtz" => Gewirtz,
            "m22" | "m22_77" => M22,
            "higman_sims" => HigmanSims,
            "dual_polar_half5" | "dual_polar" => DualPolarHalf5 { q: num(params, "q")? },
            "e6" => E6 { q: num(params, "q")? },
            "alt" | "alternating_forms" => AlternatingForms { q: num(params, "q")? },
            "vd55" | "affine_half_spin" => AffineHalfSpin { q: num(params, "q")? },
            "row" | "catalog_row" => CatalogRow { row: num(params, "row")? },
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// True when [`generate`] has an explicit construction for this spec.
    pub fn is_constructible(&self) -> bool {
        use FamilySpec::*;
        match *self {
            DualPolarHalf5 { .. } | E6 { .. } | AlternatingForms { .. } | AffineHalfSpin { .. } => false,
            CatalogRow { row } => sporadic::constructible_row(row).is_some(),
            _ => true,
        }
    }
}

pub(crate) fn multiplicative_order_mod(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
        if k > n {
            return 0;
        }
    }
    k
}

/// Generates a family member with at most `max_nu` vertices, validating the
/// witness hints before returning them.
pub fn generate_with_cap(spec: &FamilySpec, max_nu: u64) -> Result<Generated, FamilyError> {
    spec.validate()?;
    if !spec.is_constructible() {
        return Err(FamilyError::NotConstructible(spec.to_string()));
    }
    let params = catalog::params_for(spec).map_err(|e| invalid(spec, e.to_string()))?;
    if params.nu > max_nu {
        return Err(FamilyError::TooLarge {
            spec: spec.to_string(),
            nu: params.nu,
            cap: max_nu,
        });
    }
    use FamilySpec::*;
    let generated = match *spec {
        Triangular { .. } | Grid { .. } | BvLS | HoffmanSingleton | Gewirtz | M22 | HigmanSims | CatalogRow { .. } => {
            sporadic::generate(spec)?
        }
        Paley { .. } | Peisert { .. } | VanLintSchrijver { .. } | BilinearForms { .. } | VoPlus { .. }
        | VoMinus { .. } | VSz { .. } => affine::generate(spec)?,
        Grassmann { .. } | PolarCollinearity { .. } | No { .. } | Nu { .. } => projective::generate(spec)?,
        DualPolarHalf5 { .. } | E6 { .. } | AlternatingForms { .. } | AffineHalfSpin { .. } => {
            unreachable!("rejected above")
        }
    };
    let g = &generated.graph;
    if let Some(c) = &generated.hint.clique {
        assert!(g.is_clique(c).unwrap_or(false), "{spec}: clique hint fails validation");
    }
    if let Some(c) = &generated.hint.coclique {
        assert!(g.is_coclique(c).unwrap_or(false), "{spec}: coclique hint fails validation");
    }
    Ok(generated)
}

/// [`generate_with_cap`] with the default cap.
pub fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    generate_with_cap(spec, DEFAULT_MAX_NU)
}

/// Coordinates of vector `index` in `GF(q)^dim`, coordinate 0 most significant.
pub(crate) fn decode(mut index: usize, dim: usize, q: usize, out: &mut [u32]) {
    for slot in out[..dim].iter_mut().rev() {
        *slot = (index % q) as u32;
        index /= q;
    }
}

pub(crate) fn encode(v: &[u32], q: usize) -> usize {
    v.iter().fold(0, |acc, &c| acc * q + c as usize)
}

pub(crate) fn field_for(q: u64) -> Result<Field, FamilyError> {
    Ok(Field::with_order(q)?)
}

/// Every constructible spec with at most `max_nu` vertices from a fixed menu
/// of small parameters covering each family.
pub fn sweep(max_nu: u64) -> Vec<FamilySpec> {
    use FamilySpec::*;
    let mut out = Vec::new();
    out.extend((4..=16).map(|n| Triangular { n }));
    out.extend((2..=12).map(|n| Grid { n }));
    out.extend(
        [5u64, 9, 13, 17, 25, 29, 37, 41, 49, 53, 61, 81, 101, 121, 125, 169, 289, 343, 361, 625, 729]
            .into_iter()
            .filter(|&q| q % 4 == 1)
            .map(|q| Paley { q }),
    );
    out.extend([(3, 1), (3, 2), (3, 3), (7, 1), (11, 1), (19, 1), (23, 1)].map(|(p, t)| Peisert { p, t }));
    out.extend(
        [(2, 3, 2), (2, 3, 3), (2, 3, 4), (2, 3, 5), (5, 3, 1), (5, 3, 2), (2, 5, 2), (3, 5, 1), (11, 3, 1)]
            .map(|(p, e, t)| VanLintSchrijver { p, e, t }),
    );
    out.extend([(2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (4, 4), (5, 4)].map(|(q, n)| Grassmann { q, n }));
    out.extend(
        [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)].map(|(q, m)| BilinearForms { q, m }),
    );
    let polar = |polar, dim, q, dual| PolarCollinearity { polar, dim, q, dual };
    for q in [2, 3, 4, 5, 7] {
        out.push(polar(PolarType::W, 3, q, false));
        out.push(polar(PolarType::Q, 4, q, false));
        out.push(polar(PolarType::W, 3, q, true));
        out.push(polar(PolarType::Q, 4, q, true));
    }
    for q in [2, 3, 4] {
        out.push(polar(PolarType::Qplus, 3, q, false));
        out.push(polar(PolarType::Qplus, 3, q, true));
        out.push(polar(PolarType::Qminus, 5, q, false));
        out.push(polar(PolarType::Qminus, 5, q, true));
    }
    out.extend([
        polar(PolarType::W, 5, 2, false),
        polar(PolarType::W, 5, 3, false),
        polar(PolarType::W, 7, 2, false),
        polar(PolarType::Q, 6, 2, false),
        polar(PolarType::Q, 6, 3, false),
        polar(PolarType::Q, 8, 2, false),
        polar(PolarType::Qplus, 5, 2, false),
        polar(PolarType::Qplus, 5, 3, false),
        polar(PolarType::Qplus, 7, 2, false),
        polar(PolarType::Qplus, 7, 3, false),
        polar(PolarType::Qminus, 7, 2, false),
        polar(PolarType::H, 3, 2, false),
        polar(PolarType::H, 3, 2, true),
        polar(PolarType::H, 3, 3, false),
        polar(PolarType::H, 4, 2, false),
        polar(PolarType::H, 4, 2, true),
        polar(PolarType::H, 5, 2, false),
    ]);
    for epsilon in [1, -1] {
        for (n, q) in [(6, 2), (8, 2), (10, 2), (6, 3), (8, 3), (5, 3), (7, 3), (5, 4), (7, 4), (5, 8)] {
            out.push(No { epsilon, n, q });
        }
    }
    out.extend((4..=7).map(|m| Nu { m }));
    for (m, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2)] {
        out.push(VoPlus { m, q });
        out.push(VoMinus { m, q });
    }
    out.extend([VSz { q: 2 }, VSz { q: 8 }]);
    out.extend([BvLS, HoffmanSingleton, Gewirtz, M22, HigmanSims]);
    out.extend([13, 15, 16].map(|row| CatalogRow { row }));
    out.retain(|s| {
        s.validate().is_ok()
            && s.is_constructible()
            && catalog::params_for(s).is_ok_and(|p| p.nu <= max_nu)
    });
    out
}
