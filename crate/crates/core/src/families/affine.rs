//! Cayley graphs on the additive group of GF(q)^d.
//!
//! A vertex index is the base-q code of its coordinate vector (coordinate 0
//! most significant). Since every field element code is itself a base-p
//! number, the index is a base-p digit string and vector addition is digitwise
//! addition mod p.

use crate::gf::{Field, FieldElement};
use crate::graph::{DenseGraph, GraphBuilder};

use super::forms::{irreducible_quadratic, Form, FormKind};
use super::{decode, encode, field_for, invalid, FamilyError, FamilySpec, Generated, WitnessHint};

fn digit_add(mut u: usize, mut s: usize, p: usize) -> usize {
    if p == 2 {
        return u ^ s;
    }
    let (mut out, mut place) = (0usize, 1usize);
    while u > 0 || s > 0 {
        out += ((u % p + s % p) % p) * place;
        place *= p;
        u /= p;
        s /= p;
    }
    out
}

/// Cayley graph on `Z_p^D` with `nu = p^D` vertices; `connection` must be
/// closed under negation and omit zero.
pub(crate) fn cayley(nu: usize, p: usize, connection: &[usize]) -> DenseGraph {
    let mut b = GraphBuilder::new(nu);
    for u in 0..nu {
        for &s in connection {
            let v = digit_add(u, s, p);
            if u < v {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

fn codes(xs: &[FieldElement]) -> Vec<usize> {
    let mut out: Vec<usize> = xs.iter().map(|x| x.index() as usize).collect();
    out.sort_unstable();
    out
}

fn scaled(f: &Field, set: &[FieldElement], by: FieldElement) -> Vec<usize> {
    let v: Vec<FieldElement> = set.iter().map(|&x| f.mul(x, by)).collect();
    codes(&v)
}

/// Codes of the nonzero vectors of `GF(q)^dim` satisfying `keep`.
fn vectors(f: &Field, dim: usize, mut keep: impl FnMut(&[FieldElement]) -> bool) -> Vec<usize> {
    let q = f.order() as usize;
    let mut digits = vec![0u32; dim];
    let mut out = Vec::new();
    for code in 1..q.pow(dim as u32) {
        decode(code, dim, q, &mut digits);
        let v: Vec<FieldElement> = digits.iter().map(|&d| f.element(d).expect("in range")).collect();
        if keep(&v) {
            out.push(code);
        }
    }
    out
}

fn vec_code(v: &[FieldElement], q: usize) -> usize {
    let digits: Vec<u32> = v.iter().map(|x| x.index()).collect();
    encode(&digits, q)
}

pub(super) fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    use FamilySpec::*;
    match *spec {
        Paley { q } => {
            let f = field_for(q)?;
            let conn: Vec<usize> = f.power_classes(2)?.swap_remove(0).iter().map(|x| x.index() as usize).collect();
            let graph = cayley(q as usize, f.characteristic() as usize, &conn);
            let hint = if f.degree() % 2 == 0 {
                let k = f.subfield_elements(f.degree() / 2)?;
                WitnessHint::new(
                    Some(codes(&k)),
                    Some(scaled(&f, &k, f.primitive_element())),
                    "subfield clique; primitive multiple of the subfield as coclique",
                )
            } else {
                WitnessHint::none()
            };
            Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
        }
        Peisert { p, t } => {
            let q = p.pow(2 * t);
            let f = field_for(q)?;
            let classes = f.power_classes(4)?;
            let mut conn: Vec<usize> = classes[0].iter().chain(&classes[1]).map(|x| x.index() as usize).collect();
            conn.sort_unstable();
            let graph = cayley(q as usize, p as usize, &conn);
            let hint = if t % 2 == 1 {
                let k = f.subfield_elements(t)?;
                let g = f.primitive_element();
                WitnessHint::new(
                    Some(codes(&k)),
                    Some(scaled(&f, &k, f.mul(g, g))),
                    "subfield GF(p^t) clique; g^2 times the subfield as coclique",
                )
            } else {
                WitnessHint::none()
            };
            Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
        }
        VanLintSchrijver { p, e, t } => {
            let q = p.pow((e - 1) * t);
            let f = field_for(q)?;
            let conn: Vec<usize> = f.power_classes(e)?.swap_remove(0).iter().map(|x| x.index() as usize).collect();
            let graph = cayley(q as usize, p as usize, &conn);
            let hint = if t % 2 == 1 {
                let k = f.subfield_elements((e - 1) * t / 2)?;
                WitnessHint::new(
                    Some(codes(&k)),
                    Some(scaled(&f, &k, f.primitive_element())),
                    "subfield K clique; K times a non e-th power as coclique",
                )
            } else {
                WitnessHint::none()
            };
            Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
        }
        BilinearForms { q, m } => {
            let f = field_for(q)?;
            let m = m as usize;
            let conn = vectors(&f, 2 * m, |v| rank_one(&f, &v[..m], &v[m..]));
            let nu = (q as usize).pow(2 * m as u32);
            let graph = cayley(nu, f.characteristic() as usize, &conn);
            let qu = q as usize;
            let clique: Vec<usize> = (0..qu.pow(m as u32)).map(|x| x * qu.pow(m as u32)).collect();
            let a = companion(&f, m);
            let mut digits = vec![0u32; m];
            let mut coclique: Vec<usize> = (0..qu.pow(m as u32))
                .map(|x| {
                    decode(x, m, qu, &mut digits);
                    let xv: Vec<FieldElement> = digits.iter().map(|&d| f.element(d).expect("in range")).collect();
                    let xa = row_times(&f, &xv, &a);
                    x * qu.pow(m as u32) + vec_code(&xa, qu)
                })
                .collect();
            coclique.sort_unstable();
            let hint = WitnessHint::new(
                Some(clique),
                Some(coclique),
                "matrices with zero second row; graph of x -> xA for an irreducible companion matrix A",
            );
            Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
        }
        VoPlus { m, q } | VoMinus { m, q } => {
            let f = field_for(q)?;
            let dim = 2 * m as usize;
            let kind = if matches!(spec, VoPlus { .. }) {
                FormKind::Hyperbolic
            } else {
                FormKind::Elliptic
            };
            let form = Form::new(&f, kind, dim);
            let conn = vectors(&f, dim, |v| form.is_singular(v));
            let nu = (q as usize).pow(dim as u32);
            let graph = cayley(nu, f.characteristic() as usize, &conn);
            let hint = if kind == FormKind::Hyperbolic {
                let mut clique = vec![0];
                let basis = form.generator_basis(m as usize);
                clique.extend(span_codes(&f, &basis));
                clique.sort_unstable();
                WitnessHint::new(Some(clique), None, "maximal totally singular subspace")
            } else {
                WitnessHint::none()
            };
            Ok(Generated { graph: graph.with_label(spec.to_string()), hint })
        }
        VSz { q } => {
            let f = field_for(q)?;
            let e = (q.trailing_zeros() - 1) / 2;
            let sigma = |x: FieldElement| f.frobenius(x, e + 1);
            let qu = q as usize;
            let mut ovoid = vec![vec![FieldElement::ZERO, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]];
            for a in f.elements() {
                for b in f.elements() {
                    let a2 = f.mul(a, a);
                    let last = f.add(f.add(f.mul(a, b), f.mul(sigma(a), a2)), sigma(b));
                    ovoid.push(vec![FieldElement::ONE, a, b, last]);
                }
            }
            let mut conn = Vec::with_capacity(ovoid.len() * (qu - 1));
            for o in &ovoid {
                for l in f.elements().skip(1) {
                    let v: Vec<FieldElement> = o.iter().map(|&x| f.mul(l, x)).collect();
                    conn.push(vec_code(&v, qu));
                }
            }
            conn.sort_unstable();
            conn.dedup();
            if conn.len() != ovoid.len() * (qu - 1) {
                return Err(invalid(spec, "ovoid representatives are not projectively distinct"));
            }
            let graph = cayley(qu.pow(4), 2, &conn);
            Ok(Generated {
                graph: graph.with_label(spec.to_string()),
                hint: WitnessHint::none(),
            })
        }
        _ => unreachable!("not an affine family"),
    }
}

/// Codes of the nonzero vectors in the span of `basis`.
fn span_codes(f: &Field, basis: &[Vec<FieldElement>]) -> Vec<usize> {
    let q = f.order() as usize;
    let n = basis.len();
    let dim = basis[0].len();
    let mut coeffs = vec![0u32; n];
    let mut out = Vec::new();
    for code in 1..q.pow(n as u32) {
        decode(code, n, q, &mut coeffs);
        let mut v = vec![FieldElement::ZERO; dim];
        for (c, row) in coeffs.iter().zip(basis) {
            let c = f.element(*c).expect("in range");
            for (vi, &ri) in v.iter_mut().zip(row) {
                *vi = f.add(*vi, f.mul(c, ri));
            }
        }
        out.push(vec_code(&v, q));
    }
    out
}

/// Rank exactly one for the 2 x m matrix with rows `a`, `b`.
fn rank_one(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.iter().chain(b).all(|x| x.is_zero()) {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if f.mul(a[i], b[j]) != f.mul(a[j], b[i]) {
                return false;
            }
        }
    }
    true
}

/// Companion matrix of the smallest monic irreducible of degree `m` over the
/// field, found by trial division by all lower-degree monics.
fn companion(f: &Field, m: usize) -> Vec<Vec<FieldElement>> {
    let poly = if m == 2 {
        let (c, d) = irreducible_quadratic(f);
        vec![d, c]
    } else {
        smallest_irreducible(f, m)
    };
    // Rows act on row vectors: e_i A = e_{i+1} for i < m - 1, e_{m-1} A = -poly.
    let mut a = vec![vec![FieldElement::ZERO; m]; m];
    for i in 0..m - 1 {
        a[i][i + 1] = FieldElement::ONE;
    }
    for (j, &c) in poly.iter().enumerate() {
        a[m - 1][j] = f.neg(c);
    }
    a
}

fn row_times(f: &Field, x: &[FieldElement], a: &[Vec<FieldElement>]) -> Vec<FieldElement> {
    let m = x.len();
    (0..m)
        .map(|j| (0..m).fold(FieldElement::ZERO, |acc, i| f.add(acc, f.mul(x[i], a[i][j]))))
        .collect()
}

/// Low coefficients `c_0..c_{m-1}` of a monic irreducible of degree `m`.
fn smallest_irreducible(f: &Field, m: usize) -> Vec<FieldElement> {
    let q = f.order() as usize;
    let mut digits = vec![0u32; m];
    for code in 0..q.pow(m as u32) {
        decode(code, m, q, &mut digits);
        let low: Vec<FieldElement> = digits.iter().rev().map(|&d| f.element(d).expect("in range")).collect();
        if low[0].is_zero() {
            continue;
        }
        let mut poly = low.clone();
        poly.push(FieldElement::ONE);
        if is_irreducible(f, &poly) {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem(f: &Field, num: &[FieldElement], den: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = f.inv(den[dd]).expect("monic");
    while r.len() > dd {
        let c = f.mul(*r.last().expect("nonempty"), lead_inv);
        let shift = r.len() - 1 - dd;
        for (i, &d) in den.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, d));
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) && r.len() > dd {
            r.pop();
        }
    }
    r
}

fn is_irreducible(f: &Field, poly: &[FieldElement]) -> bool {
    let m = poly.len() - 1;
    let q = f.order() as usize;
    for d in 1..=m / 2 {
        let mut digits = vec![0u32; d];
        for code in 0..q.pow(d as u32) {
            decode(code, d, q, &mut digits);
            let mut div: Vec<FieldElement> = digits.iter().map(|&x| f.element(x).expect("in range")).collect();
            div.push(FieldElement::ONE);
            if poly_rem(f, poly, &div).iter().all(|x| x.is_zero()) {
                return false;
            }
        }
    }
    true
}
