//! Graphs on projective points and lines: polar spaces, Grassmann graphs and
//! the nonsingular-point graphs NO and NU.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::gf::{Field, FieldElement};
use crate::graph::{DenseGraph, GraphBuilder};

use super::forms::{irreducible_quadratic, AdjacencyRule, Form, FormKind, PointSet};
use super::{decode, field_for, invalid, FamilyError, FamilySpec, Generated, PolarType, WitnessHint};

fn form_kind(polar: PolarType) -> FormKind {
    match polar {
        PolarType::W => FormKind::Symplectic,
        PolarType::Q => FormKind::Parabolic,
        PolarType::Qplus => FormKind::Hyperbolic,
        PolarType::Qminus => FormKind::Elliptic,
        PolarType::H => FormKind::Hermitian,
    }
}

pub(super) fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    match *spec {
        FamilySpec::PolarCollinearity { polar, dim, q, dual } => polar_graph(spec, polar, dim, q, dual),
        FamilySpec::Grassmann { q, n } => grassmann(spec, q, n as usize),
        FamilySpec::No { .. } | FamilySpec::Nu { .. } => {
            let kind = NonsingularKind::of(spec).expect("NO or NU spec");
            let graph = build_nonsingular(spec, checked_rule(kind))?;
            Ok(Generated {
                graph: graph.with_label(spec.to_string()),
                hint: WitnessHint::none(),
            })
        }
        _ => unreachable!("not a projective family"),
    }
}

fn polar_graph(spec: &FamilySpec, polar: PolarType, dim: u32, q: u64, dual: bool) -> Result<Generated, FamilyError> {
    let order = if polar == PolarType::H { q * q } else { q };
    let f = field_for(order)?;
    let d = dim as usize + 1;
    let form = Form::new(&f, form_kind(polar), d);
    let pts = PointSet::new(&f, d, |v| form.is_singular(v));
    let rank = polar.rank(dim).expect("validated") as usize;
    if !dual {
        let graph = DenseGraph::from_fn(pts.len(), |a, b| {
            form.polar(&pts.points[a], &pts.points[b]).is_zero()
        });
        let clique = pts.span(&f, &form.generator_basis(rank));
        let coclique = polar_ovoid(&f, polar, dim, q, &pts);
        let hint = WitnessHint::new(
            Some(clique),
            coclique,
            "points of a generator; ovoid from a nondegenerate hyperplane or elliptic quadric section",
        );
        return Ok(Generated { graph: graph.with_label(spec.to_string()), hint });
    }
    let mut lines = BTreeSet::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            if form.polar(&pts.points[a], &pts.points[b]).is_zero() {
                lines.insert(pts.line(&f, a, b));
            }
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().collect();
    let graph = lines_graph(pts.len(), &lines);
    let clique: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].contains(&0)).collect();
    let hint = WitnessHint::new(Some(clique), None, "lines through the first point");
    Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
}

/// Lines as vertices, adjacent when they share a point.
fn lines_graph(points: usize, lines: &[Vec<usize>]) -> DenseGraph {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); points];
    for (i, l) in lines.iter().enumerate() {
        for &p in l {
            through[p].push(i);
        }
    }
    let mut b = GraphBuilder::new(lines.len());
    for pencil in &through {
        for (i, &u) in pencil.iter().enumerate() {
            for &v in &pencil[i + 1..] {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Explicit ovoids for the point graphs where one is cheap to write down.
fn polar_ovoid(
    f: &Field,
    polar: PolarType,
    dim: u32,
    q: u64,
    pts: &PointSet,
) -> Option<Vec<usize>> {
    let select = |pred: &dyn Fn(&[FieldElement]) -> bool| -> Vec<usize> {
        (0..pts.len()).filter(|&i| pred(&pts.points[i])).collect()
    };
    match (polar, dim) {
        (PolarType::Q, 4) => {
            // x4 = c x0 + d x3 leaves x0^2 + c x0 x3 + d x3^2 + x1 x2: elliptic.
            let (c, d) = irreducible_quadratic(f);
            Some(select(&|v| v[4] == f.add(f.mul(c, v[0]), f.mul(d, v[3]))))
        }
        (PolarType::W, 3) if q % 2 == 0 => {
            // An elliptic quadric whose polarity is the symplectic form.
            let dd = f
                .elements()
                .find(|&d| f.elements().all(|t| !f.add(f.add(f.mul(t, t), t), d).is_zero()))
                .expect("char 2 has an irreducible x^2 + x + d");
            Some(select(&|v| {
                let n = f.add(f.add(f.mul(v[2], v[2]), f.mul(v[2], v[3])), f.mul(dd, f.mul(v[3], v[3])));
                f.add(f.mul(v[0], v[1]), n).is_zero()
            }))
        }
        (PolarType::H, 3) => Some(select(&|v| v[3].is_zero())),
        _ => None,
    }
}

/// Reduced row echelon form of the span of two independent vectors.
fn rref2(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut rows = [a.to_vec(), b.to_vec()];
    let n = a.len();
    let mut r = 0;
    for col in 0..n {
        if r == 2 {
            break;
        }
        let Some(piv) = (r..2).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let other = 1 - r;
        let c = rows[other][col];
        if !c.is_zero() {
            for j in 0..n {
                let t = f.mul(c, rows[r][j]);
                rows[other][j] = f.sub(rows[other][j], t);
            }
        }
        r += 1;
    }
    let [x, y] = rows;
    x.into_iter().chain(y).collect()
}

/// Lines of PG(n-1, q) ordered by their reduced echelon form.
fn grassmann(spec: &FamilySpec, q: u64, n: usize) -> Result<Generated, FamilyError> {
    let f = field_for(q)?;
    let pts = PointSet::new(&f, n, |_| true);
    let mut by_rref: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let line = pts.line(&f, a, b);
            if line[0] != a || line[1] != b {
                continue;
            }
            let key: Vec<u32> = rref2(&f, &pts.points[a], &pts.points[b]).iter().map(|x| x.index()).collect();
            by_rref.insert(key, line);
        }
    }
    let lines: Vec<Vec<usize>> = by_rref.into_values().collect();
    let graph = lines_graph(pts.len(), &lines);
    let position: BTreeMap<&[usize], usize> = lines.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect();
    let clique: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].contains(&0)).collect();
    let coclique = if n % 2 == 0 {
        let (c, d) = irreducible_quadratic(&f);
        // Block-diagonal companion matrix of x^2 + c x + d: no eigenvectors.
        let apply = |v: &[FieldElement]| -> Vec<FieldElement> {
            let mut w = vec![FieldElement::ZERO; n];
            for i in (0..n).step_by(2) {
                w[i] = f.neg(f.mul(d, v[i + 1]));
                w[i + 1] = f.sub(v[i], f.mul(c, v[i + 1]));
            }
            w
        };
        let mut spread = BTreeSet::new();
        for (i, v) in pts.points.iter().enumerate() {
            let j = pts.lookup(&f, &apply(v)).expect("all points present");
            let line = pts.line(&f, i, j);
            spread.insert(position[line.as_slice()]);
        }
        Some(spread.into_iter().collect())
    } else {
        None
    };
    let hint = WitnessHint::new(
        Some(clique),
        coclique,
        "lines through a point; Desarguesian line spread",
    );
    Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
}

/// The NO/NU subfamilies that share an adjacency rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NonsingularKind {
    /// `NO^eps_{2m}(q)`, q in {2, 3}.
    NoEven { epsilon: i8, q: u64 },
    /// `NO^eps_{2m+1}(q)`, q in {3, 4, 8}.
    NoOdd { epsilon: i8, q: u64 },
    Nu,
}

impl NonsingularKind {
    pub const ALL: [NonsingularKind; 11] = [
        NonsingularKind::NoEven { epsilon: 1, q: 2 },
        NonsingularKind::NoEven { epsilon: -1, q: 2 },
        NonsingularKind::NoEven { epsilon: 1, q: 3 },
        NonsingularKind::NoEven { epsilon: -1, q: 3 },
        NonsingularKind::NoOdd { epsilon: 1, q: 3 },
        NonsingularKind::NoOdd { epsilon: -1, q: 3 },
        NonsingularKind::NoOdd { epsilon: 1, q: 4 },
        NonsingularKind::NoOdd { epsilon: -1, q: 4 },
        NonsingularKind::NoOdd { epsilon: 1, q: 8 },
        NonsingularKind::NoOdd { epsilon: -1, q: 8 },
        NonsingularKind::Nu,
    ];

    pub fn of(spec: &FamilySpec) -> Option<NonsingularKind> {
        match *spec {
            FamilySpec::No { epsilon, n, q } if n % 2 == 0 => Some(NonsingularKind::NoEven { epsilon, q }),
            FamilySpec::No { epsilon, q, .. } => Some(NonsingularKind::NoOdd { epsilon, q }),
            FamilySpec::Nu { .. } => Some(NonsingularKind::Nu),
            _ => None,
        }
    }

    /// The smallest admissible member, used to select the adjacency rule.
    pub fn smallest(self) -> FamilySpec {
        match self {
            NonsingularKind::NoEven { epsilon, q } => FamilySpec::No { epsilon, n: 6, q },
            NonsingularKind::NoOdd { epsilon, q } => FamilySpec::No { epsilon, n: 5, q },
            NonsingularKind::Nu => FamilySpec::Nu { m: 4 },
        }
    }
}

/// The adjacency rule fixed for each kind by [`select_nonsingular_rule`].
pub fn nonsingular_rule(kind: NonsingularKind) -> AdjacencyRule {
    match kind {
        NonsingularKind::NoEven { .. } => AdjacencyRule::Perpendicular,
        NonsingularKind::NoOdd { q: 3, .. } => AdjacencyRule::NonPerpendicular,
        NonsingularKind::NoOdd { .. } => AdjacencyRule::Perpendicular,
        NonsingularKind::Nu => AdjacencyRule::NonPerpendicular,
    }
}

/// Builds the smallest member under both rules and returns the one whose
/// parameters match the catalog, or `None` if neither does.
pub fn select_nonsingular_rule(kind: NonsingularKind) -> Option<AdjacencyRule> {
    let spec = kind.smallest();
    let want = catalog::params_for(&spec).ok()?;
    [AdjacencyRule::Perpendicular, AdjacencyRule::NonPerpendicular]
        .into_iter()
        .find(|&rule| {
            build_nonsingular(&spec, rule)
                .ok()
                .and_then(|g| g.verify_srg().ok())
                .is_some_and(|p| p == want)
        })
}

/// The hard-coded rule, after checking once per process that the selection
/// protocol still agrees with it.
fn checked_rule(kind: NonsingularKind) -> AdjacencyRule {
    static CHECKED: OnceLock<std::sync::Mutex<BTreeSet<NonsingularKind>>> = OnceLock::new();
    let rule = nonsingular_rule(kind);
    let checked = CHECKED.get_or_init(Default::default);
    if !checked.lock().expect("not poisoned").contains(&kind) {
        let selected = select_nonsingular_rule(kind);
        assert_eq!(selected, Some(rule), "adjacency rule self-test failed for {kind:?}");
        checked.lock().expect("not poisoned").insert(kind);
    }
    rule
}

/// NO or NU graph under an explicit adjacency rule.
pub(crate) fn build_nonsingular(spec: &FamilySpec, rule: AdjacencyRule) -> Result<DenseGraph, FamilyError> {
    let want_perp = rule == AdjacencyRule::Perpendicular;
    match *spec {
        FamilySpec::No { n, q, .. } if n % 2 == 0 => {
            let FamilySpec::No { epsilon, .. } = *spec else { unreachable!() };
            let f = field_for(q)?;
            let kind = if epsilon > 0 { FormKind::Hyperbolic } else { FormKind::Elliptic };
            let form = Form::new(&f, kind, n as usize);
            let pts = PointSet::new(&f, n as usize, |v| form.quad(v) == FieldElement::ONE);
            Ok(DenseGraph::from_fn(pts.len(), |a, b| {
                form.polar(&pts.points[a], &pts.points[b]).is_zero() == want_perp
            }))
        }
        FamilySpec::No { n, q: 3, .. } => {
            let f = field_for(3)?;
            let form = Form::new(&f, FormKind::Parabolic, n as usize);
            let nu = catalog::params_for(spec).map_err(|e| invalid(spec, e.to_string()))?.nu as usize;
            let class = [FieldElement::ONE, f.from_int(-1)]
                .into_iter()
                .map(|c| PointSet::new(&f, n as usize, |v| form.quad(v) == c))
                .find(|p| p.len() == nu)
                .ok_or_else(|| invalid(spec, "no nonsingular point class of the catalog size"))?;
            Ok(DenseGraph::from_fn(class.len(), |a, b| {
                form.polar(&class.points[a], &class.points[b]).is_zero() == want_perp
            }))
        }
        FamilySpec::No { epsilon, n, q } => Ok(no_odd_even_char(epsilon, n as usize, q, want_perp)?),
        FamilySpec::Nu { m } => {
            let f = field_for(4)?;
            let form = Form::new(&f, FormKind::Hermitian, m as usize);
            let pts = PointSet::new(&f, m as usize, |v| !form.quad(v).is_zero());
            Ok(DenseGraph::from_fn(pts.len(), |a, b| {
                form.polar(&pts.points[a], &pts.points[b]).is_zero() == want_perp
            }))
        }
        _ => Err(invalid(spec, "not an NO or NU spec")),
    }
}

/// `NO^eps_{2m+1}(q)` for even q. Vertices are the hyperplanes
/// `x_0 = B(a, w)` of the parabolic quadric `x_0^2 + Q(w)` whose section
/// `Q(w) + B(a, w)^2` has type `eps`, indexed by `a` in vector order. Two
/// hyperplanes meet in a tangent section iff `Q(a + b) + B(a, b)^2 = 0`; the
/// `Perpendicular` rule joins exactly those pairs.
fn no_odd_even_char(epsilon: i8, n: usize, q: u64, tangent: bool) -> Result<DenseGraph, FamilyError> {
    let f = field_for(q)?;
    let dim = n - 1;
    let m = dim / 2;
    let form = Form::new(&f, FormKind::Hyperbolic, dim);
    let qu = q as usize;
    let total = qu.pow(dim as u32);
    let all: Vec<Vec<FieldElement>> = (0..total)
        .map(|code| {
            let mut digits = vec![0u32; dim];
            decode(code, dim, qu, &mut digits);
            digits.iter().map(|&d| f.element(d).expect("in range")).collect()
        })
        .collect();
    let quad: Vec<FieldElement> = all.iter().map(|v| form.quad(v)).collect();
    let plus_zeros = qu.pow(2 * m as u32 - 1) + qu.pow(m as u32) - qu.pow(m as u32 - 1);
    let vertices: Vec<usize> = (0..total)
        .filter(|&a| {
            let zeros = (0..total)
                .filter(|&w| {
                    let b = form.polar(&all[a], &all[w]);
                    f.add(quad[w], f.mul(b, b)).is_zero()
                })
                .count();
            (zeros == plus_zeros) == (epsilon > 0)
        })
        .collect();
    Ok(DenseGraph::from_fn(vertices.len(), |i, j| {
        let (a, b) = (&all[vertices[i]], &all[vertices[j]]);
        let sum: Vec<FieldElement> = a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect();
        let bab = form.polar(a, b);
        f.add(form.quad(&sum), f.mul(bab, bab)).is_zero() == tangent
    }))
}
