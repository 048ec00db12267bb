//! Standard sesquilinear and quadratic forms over GF(q) and projective point
//! enumeration.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::gf::{Field, FieldElement};

use super::decode;

/// How two nonsingular points are joined in an NO/NU graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdjacencyRule {
    Perpendicular,
    NonPerpendicular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FormKind {
    Symplectic,
    /// `sum x_{2i} x_{2i+1}`.
    Hyperbolic,
    /// Hyperbolic with the last pair replaced by an anisotropic norm form.
    Elliptic,
    /// `x_0^2` plus a hyperbolic form on the remaining coordinates.
    Parabolic,
    /// `sum x_i^(r+1)` over GF(r^2).
    Hermitian,
}

/// A nondegenerate form on `GF(q)^dim` in one of the standard shapes.
pub(crate) struct Form<'a> {
    pub field: &'a Field,
    pub kind: FormKind,
    pub dim: usize,
    /// `(c, d)` with `x^2 + c x + d` irreducible; used by the elliptic shape.
    pub norm: (FieldElement, FieldElement),
    /// Square root of the field order, for the Hermitian shape.
    root: u64,
}

/// Smallest `(c, d)` (by element code) with `x^2 + c x + d` irreducible.
pub(crate) fn irreducible_quadratic(f: &Field) -> (FieldElement, FieldElement) {
    for c in f.elements() {
        for d in f.elements().skip(1) {
            let has_root = f.elements().any(|t| {
                let v = f.add(f.add(f.mul(t, t), f.mul(c, t)), d);
                v.is_zero()
            });
            if !has_root {
                return (c, d);
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

impl<'a> Form<'a> {
    pub fn new(field: &'a Field, kind: FormKind, dim: usize) -> Self {
        let norm = if kind == FormKind::Elliptic {
            irreducible_quadratic(field)
        } else {
            (FieldElement::ZERO, FieldElement::ZERO)
        };
        let root = if kind == FormKind::Hermitian {
            (field.order() as f64).sqrt().round() as u64
        } else {
            0
        };
        Form { field, kind, dim, norm, root }
    }

    fn conj(&self, x: FieldElement) -> FieldElement {
        self.field.pow(x, self.root)
    }

    /// First coordinate of the hyperbolic pairs.
    fn pair_start(&self) -> usize {
        usize::from(self.kind == FormKind::Parabolic)
    }

    /// `Q(x)` for quadratic shapes, `H(x, x)` for Hermitian; zero for
    /// symplectic.
    pub fn quad(&self, x: &[FieldElement]) -> FieldElement {
        let f = self.field;
        let mut acc = FieldElement::ZERO;
        match self.kind {
            FormKind::Symplectic => {}
            FormKind::Hermitian => {
                for &xi in &x[..self.dim] {
                    acc = f.add(acc, f.mul(xi, self.conj(xi)));
                }
            }
            FormKind::Hyperbolic | FormKind::Elliptic | FormKind::Parabolic => {
                let start = self.pair_start();
                if start == 1 {
                    acc = f.mul(x[0], x[0]);
                }
                let mut i = start;
                while i + 1 < self.dim {
                    let (a, b) = (x[i], x[i + 1]);
                    let term = if self.kind == FormKind::Elliptic && i + 2 == self.dim {
                        let (c, d) = self.norm;
                        f.add(f.add(f.mul(a, a), f.mul(c, f.mul(a, b))), f.mul(d, f.mul(b, b)))
                    } else {
                        f.mul(a, b)
                    };
                    acc = f.add(acc, term);
                    i += 2;
                }
            }
        }
        acc
    }

    /// The associated bilinear (or sesquilinear) form.
    pub fn polar(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let f = self.field;
        match self.kind {
            FormKind::Symplectic => {
                let mut acc = FieldElement::ZERO;
                for i in (0..self.dim).step_by(2) {
                    let t = f.sub(f.mul(x[i], y[i + 1]), f.mul(x[i + 1], y[i]));
                    acc = f.add(acc, t);
                }
                acc
            }
            FormKind::Hermitian => {
                let mut acc = FieldElement::ZERO;
                for i in 0..self.dim {
                    acc = f.add(acc, f.mul(x[i], self.conj(y[i])));
                }
                acc
            }
            _ => {
                let sum: Vec<FieldElement> = (0..self.dim).map(|i| f.add(x[i], y[i])).collect();
                f.sub(f.sub(self.quad(&sum), self.quad(x)), self.quad(y))
            }
        }
    }

    pub fn is_singular(&self, x: &[FieldElement]) -> bool {
        self.kind == FormKind::Symplectic || self.quad(x).is_zero()
    }

    /// Basis of a maximal totally singular subspace of dimension `rank`.
    pub fn generator_basis(&self, rank: usize) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let unit = |i: usize| {
            let mut v = vec![FieldElement::ZERO; self.dim];
            v[i] = FieldElement::ONE;
            v
        };
        match self.kind {
            FormKind::Hermitian => {
                // a^(r+1) = -1 makes e_{2i} + a e_{2i+1} isotropic.
                let minus_one = f.neg(FieldElement::ONE);
                let a = f
                    .elements()
                    .find(|&a| f.mul(a, self.conj(a)) == minus_one)
                    .expect("the norm map is onto");
                (0..rank)
                    .map(|i| {
                        let mut v = unit(2 * i);
                        v[2 * i + 1] = a;
                        v
                    })
                    .collect()
            }
            _ => {
                let start = self.pair_start();
                (0..rank).map(|i| unit(start + 2 * i)).collect()
            }
        }
    }
}

/// Scales `v` so its first nonzero coordinate is one; `false` for zero.
pub(crate) fn normalize(f: &Field, v: &mut [FieldElement]) -> bool {
    let Some(lead) = v.iter().copied().find(|x| !x.is_zero()) else {
        return false;
    };
    if lead != FieldElement::ONE {
        let inv = f.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}

/// Projective points of `PG(dim-1, q)` satisfying `keep`, as normalized
/// vectors in lexicographic order, with an index keyed by vector code.
pub(crate) struct PointSet {
    pub q: usize,
    pub dim: usize,
    pub points: Vec<Vec<FieldElement>>,
    pub index: HashMap<usize, usize>,
}

impl PointSet {
    pub fn new(f: &Field, dim: usize, mut keep: impl FnMut(&[FieldElement]) -> bool) -> Self {
        let q = f.order() as usize;
        let total = q.pow(dim as u32);
        let mut digits = vec![0u32; dim];
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for code in 1..total {
            decode(code, dim, q, &mut digits);
            let lead = digits.iter().find(|&&d| d != 0).copied();
            if lead != Some(1) {
                continue;
            }
            let v: Vec<FieldElement> = digits.iter().map(|&d| f.element(d).expect("in range")).collect();
            if keep(&v) {
                index.insert(code, points.len());
                points.push(v);
            }
        }
        PointSet { q, dim, points, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Index of the point spanned by `v`, if it is in the set.
    pub fn lookup(&self, f: &Field, v: &[FieldElement]) -> Option<usize> {
        let mut w = v.to_vec();
        if !normalize(f, &mut w) {
            return None;
        }
        let code = w.iter().fold(0usize, |acc, x| acc * self.q + x.index() as usize);
        self.index.get(&code).copied()
    }

    /// Sorted indices of the points on the line through points `a` and `b`
    /// that belong to the set.
    pub fn line(&self, f: &Field, a: usize, b: usize) -> Vec<usize> {
        let (x, y) = (&self.points[a], &self.points[b]);
        let mut out = vec![b];
        for t in f.elements() {
            let v: Vec<FieldElement> = x.iter().zip(y).map(|(&xi, &yi)| f.add(xi, f.mul(t, yi))).collect();
            if let Some(i) = self.lookup(f, &v) {
                out.push(i);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Sorted indices of the set's points in the span of `basis`.
    pub fn span(&self, f: &Field, basis: &[Vec<FieldElement>]) -> Vec<usize> {
        let q = f.order() as usize;
        let n = basis.len();
        let mut coeffs = vec![0u32; n];
        let mut out = Vec::new();
        for code in 1..q.pow(n as u32) {
            decode(code, n, q, &mut coeffs);
            let mut v = vec![FieldElement::ZERO; self.dim];
            for (c, row) in coeffs.iter().zip(basis) {
                let c = f.element(*c).expect("in range");
                for (vi, &ri) in v.iter_mut().zip(row) {
                    *vi = f.add(*vi, f.mul(c, ri));
                }
            }
            if let Some(i) = self.lookup(f, &v) {
                out.push(i);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
