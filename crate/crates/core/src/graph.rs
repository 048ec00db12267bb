//! Dense bitset graphs and exact strong-regularity checks.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {nu} vertices")]
    IndexOutOfRange { vertex: usize, nu: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error(
        "not strongly regular: pair ({u}, {v}) ({kind}) has {common} common neighbours, expected {expected}"
    )]
    NotStronglyRegular {
        u: usize,
        v: usize,
        kind: &'static str,
        common: usize,
        expected: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is complete")]
    CompleteGraph,
    #[error("invalid SRG parameters {0}")]
    InvalidParams(String),
    #[error("DIMACS parse error on line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

/// Parameters `(nu, k, lambda, mu)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub nu: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// Checks `k(k - lambda - 1) = (nu - k - 1) mu` and `lambda, mu <= k < nu`.
    pub fn new(nu: u64, k: u64, lambda: u64, mu: u64) -> Result<Self, GraphError> {
        let p = SrgParams { nu, k, lambda, mu };
        let ok = k < nu
            && lambda < k.max(1)
            && mu <= k
            && k >= lambda + 1
            && (k as u128) * ((k - lambda - 1) as u128) == ((nu - k - 1) as u128) * (mu as u128);
        if ok {
            Ok(p)
        } else {
            Err(GraphError::InvalidParams(p.to_string()))
        }
    }

    /// Parameters of the complementary graph.
    pub fn complement(&self) -> SrgParams {
        let SrgParams { nu, k, lambda, mu } = *self;
        SrgParams {
            nu,
            k: nu - k - 1,
            lambda: nu + mu - 2 - 2 * k,
            mu: nu + lambda - 2 * k,
        }
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.nu, self.k, self.lambda, self.mu)
    }
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Immutable simple graph on vertices `0..nu` with one adjacency bit-row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    nu: usize,
    words: usize,
    bits: Vec<u64>,
    label: Option<String>,
}

impl fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DenseGraph")
            .field("nu", &self.nu)
            .field("edges", &self.edge_count())
            .field("label", &self.label)
            .finish()
    }
}

/// Mutable edge accumulator for [`DenseGraph`].
pub struct GraphBuilder {
    nu: usize,
    words: usize,
    bits: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(nu: usize) -> Self {
        let words = words_for(nu);
        GraphBuilder {
            nu,
            words,
            bits: vec![0; nu * words],
        }
    }

    /// Adds the edge `{u, v}`; loops are ignored.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn build(self) -> DenseGraph {
        DenseGraph {
            nu: self.nu,
            words: self.words,
            bits: self.bits,
            label: None,
        }
    }
}

impl DenseGraph {
    pub fn from_edges(nu: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut b = GraphBuilder::new(nu);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= nu {
                    return Err(GraphError::IndexOutOfRange { vertex: w, nu });
                }
            }
            b.add_edge(u, v);
        }
        Ok(b.build())
    }

    /// Builds a graph from a symmetric adjacency predicate evaluated on `u < v`.
    pub fn from_fn(nu: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut b = GraphBuilder::new(nu);
        for u in 0..nu {
            for v in u + 1..nu {
                if adjacent(u, v) {
                    b.add_edge(u, v);
                }
            }
        }
        b.build()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn nu(&self) -> usize {
        self.nu
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    /// Adjacency bit-row of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(u))
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.nu).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> DenseGraph {
        let mut bits = self.bits.iter().map(|w| !w).collect::<Vec<_>>();
        let tail = self.nu % 64;
        for u in 0..self.nu {
            let row = &mut bits[u * self.words..(u + 1) * self.words];
            row[u / 64] &= !(1 << (u % 64));
            if tail != 0 {
                row[self.words - 1] &= (1u64 << tail) - 1;
            }
        }
        DenseGraph {
            nu: self.nu,
            words: self.words,
            bits,
            label: self.label.as_ref().map(|l| format!("complement of {l}")),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.nu == 0 {
            return true;
        }
        let mut seen = vec![false; self.nu];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.nu
    }

    fn check_indices(&self, set: &[usize]) -> Result<(), GraphError> {
        match set.iter().find(|&&v| v >= self.nu) {
            Some(&vertex) => Err(GraphError::IndexOutOfRange {
                vertex,
                nu: self.nu,
            }),
            None => Ok(()),
        }
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<DenseGraph, GraphError> {
        self.check_indices(vertices)?;
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    b.add_edge(i, j);
                }
            }
        }
        Ok(b.build())
    }

    /// True iff the vertices are distinct and pairwise adjacent.
    pub fn is_clique(&self, set: &[usize]) -> Result<bool, GraphError> {
        self.check_indices(set)?;
        Ok(set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v))
        }))
    }

    /// True iff the vertices are distinct and pairwise non-adjacent.
    pub fn is_coclique(&self, set: &[usize]) -> Result<bool, GraphError> {
        self.check_indices(set)?;
        Ok(set.iter().enumerate().all(|(i, &u)| {
            set[i + 1..].iter().all(|&v| u != v && !self.adjacent(u, v))
        }))
    }

    /// Exact check of the strongly regular conditions by bitset popcounts.
    ///
    /// Equivalent to `A^2 = kI + lambda A + mu (J - I - A)`.
    pub fn verify_srg(&self) -> Result<SrgParams, GraphError> {
        if self.nu == 0 {
            return Err(GraphError::Empty);
        }
        let k = self.degree(0);
        if k == self.nu - 1 {
            return Err(GraphError::CompleteGraph);
        }
        for u in 1..self.nu {
            let d = self.degree(u);
            if d != k {
                return Err(GraphError::NotRegular {
                    vertex: u,
                    degree: d,
                    expected: k,
                });
            }
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut lambda = None;
        let mut mu = None;
        for u in 0..self.nu {
            for v in u + 1..self.nu {
                let c = self.common_neighbors(u, v);
                let (slot, kind) = if self.adjacent(u, v) {
                    (&mut lambda, "adjacent")
                } else {
                    (&mut mu, "non-adjacent")
                };
                match *slot {
                    None => *slot = Some(c),
                    Some(expected) if expected != c => {
                        return Err(GraphError::NotStronglyRegular {
                            u,
                            v,
                            kind,
                            common: c,
                            expected,
                        })
                    }
                    _ => {}
                }
            }
        }
        // Connected and non-complete, so both pair types occur (unless nu <= 2,
        // which is excluded by the previous checks).
        let params = SrgParams {
            nu: self.nu as u64,
            k: k as u64,
            lambda: lambda.unwrap_or(0) as u64,
            mu: mu.unwrap_or(0) as u64,
        };
        Ok(params)
    }

    /// Order-independent hash of the edge set (depends on vertex labels only).
    pub fn checksum(&self) -> u64 {
        let mut acc = splitmix64(self.nu as u64);
        for (u, v) in self.edges() {
            acc = acc.wrapping_add(splitmix64(((u as u64) << 32) | v as u64));
        }
        acc
    }

    /// DIMACS ascii export: `p edge nu m` followed by 1-indexed `e u v` lines.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            out.push_str(&format!("c {label}\n"));
        }
        out.push_str(&format!("p edge {} {}\n", self.nu, self.edge_count()));
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<DenseGraph, GraphError> {
        let mut builder: Option<GraphBuilder> = None;
        let mut label = None;
        let mut declared_edges = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let err = |message: &str| GraphError::Dimacs {
                line: line_no,
                message: message.to_string(),
            };
            let mut parts = line.split_whitespace();
            match parts.next() {
                None => continue,
                Some("c") => {
                    if label.is_none() {
                        let rest = line.trim_start()[1..].trim();
                        if !rest.is_empty() {
                            label = Some(rest.to_string());
                        }
                    }
                }
                Some("p") => {
                    if builder.is_some() {
                        return Err(err("duplicate problem line"));
                    }
                    let fmt = parts.next().ok_or_else(|| err("missing format"))?;
                    if fmt != "edge" && fmt != "col" {
                        return Err(err("expected 'p edge'"));
                    }
                    let n: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("bad vertex count"))?;
                    declared_edges = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| err("bad edge count"))?;
                    builder = Some(GraphBuilder::new(n));
                }
                Some("e") => {
                    let b = builder.as_mut().ok_or_else(|| err("edge before problem line"))?;
                    let mut endpoint = || -> Result<usize, GraphError> {
                        let v: usize = parts
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| err("bad endpoint"))?;
                        if v == 0 || v > b.nu {
                            return Err(err("endpoint out of range"));
                        }
                        Ok(v - 1)
                    };
                    let u = endpoint()?;
                    let v = endpoint()?;
                    b.add_edge(u, v);
                }
                Some(_) => return Err(err("unrecognised line")),
            }
        }
        let b = builder.ok_or(GraphError::Dimacs {
            line: 0,
            message: "missing problem line".into(),
        })?;
        let mut g = b.build();
        if g.edge_count() != declared_edges {
            return Err(GraphError::Dimacs {
                line: 0,
                message: format!(
                    "problem line declares {declared_edges} edges, found {}",
                    g.edge_count()
                ),
            });
        }
        g.label = label;
        Ok(g)
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Cycle graph on `n` vertices.
pub fn cycle(n: usize) -> DenseGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    DenseGraph::from_edges(n, &edges)
        .expect("indices in range")
        .with_label(format!("C{n}"))
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> DenseGraph {
    DenseGraph::from_fn(n, |_, _| true).with_label(format!("K{n}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> DenseGraph {
        // Kneser graph K(5,2): 2-subsets adjacent when disjoint.
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        DenseGraph::from_fn(10, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            a != c && a != d && b != c && b != d
        })
    }

    fn brute_common(g: &DenseGraph, u: usize, v: usize) -> usize {
        (0..g.nu()).filter(|&w| g.adjacent(u, w) && g.adjacent(v, w)).count()
    }

    #[test]
    fn pentagon_is_srg() {
        assert_eq!(
            cycle(5).verify_srg().unwrap(),
            SrgParams::new(5, 2, 0, 1).unwrap()
        );
    }

    #[test]
    fn petersen_complement_is_t5() {
        let t5 = petersen().complement();
        let p = t5.verify_srg().unwrap();
        assert_eq!(p, SrgParams { nu: 10, k: 6, lambda: 3, mu: 4 });
        // Brute-force common-neighbour counts agree with the bitset version.
        for u in 0..10 {
            for v in u + 1..10 {
                let expected = if t5.adjacent(u, v) { 3 } else { 4 };
                assert_eq!(brute_common(&t5, u, v), expected);
            }
        }
        assert_eq!(petersen().verify_srg().unwrap().complement(), p);
    }

    #[test]
    fn complement_is_involution() {
        for g in [petersen(), cycle(7), cycle(64), cycle(65)] {
            assert_eq!(g.complement().complement().bits, g.bits);
        }
        // K4 minus a perfect matching is C4.
        let k4_minus = DenseGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = k4_minus.complement();
        assert_eq!(c.edge_count(), 2);
        assert!(c.adjacent(0, 2) && c.adjacent(1, 3));
    }

    #[test]
    fn rejects_degenerate_graphs() {
        assert_eq!(complete(4).verify_srg(), Err(GraphError::CompleteGraph));
        let two_triangles =
            DenseGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two_triangles.verify_srg(), Err(GraphError::Disconnected));
        let path = DenseGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(path.verify_srg(), Err(GraphError::NotRegular { .. })));
        assert!(matches!(
            cycle(6).verify_srg(),
            Err(GraphError::NotStronglyRegular { .. })
        ));
    }

    #[test]
    fn clique_and_coclique_checks() {
        let g = petersen().complement();
        for v in 0..10 {
            assert!(g.is_clique(&[v]).unwrap());
            assert!(g.is_coclique(&[v]).unwrap());
        }
        // Pairs containing 0 form a 4-clique in T(5).
        assert!(g.is_clique(&[0, 1, 2, 3]).unwrap());
        assert!(!g.is_coclique(&[0, 1]).unwrap());
        assert!(!g.is_clique(&[0, 0]).unwrap());
        assert_eq!(
            g.is_clique(&[0, 10]),
            Err(GraphError::IndexOutOfRange { vertex: 10, nu: 10 })
        );
    }

    #[test]
    fn rook_row_is_clique() {
        let rook = DenseGraph::from_fn(16, |u, v| u / 4 == v / 4 || u % 4 == v % 4);
        assert!(rook.is_clique(&[4, 5, 6, 7]).unwrap());
        assert_eq!(rook.verify_srg().unwrap(), SrgParams::new(16, 6, 2, 2).unwrap());
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = cycle(5);
        let h = g.induced_subgraph(&[4, 0, 1]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.adjacent(0, 1) && h.adjacent(1, 2) && !h.adjacent(0, 2));
    }

    #[test]
    fn dimacs_round_trip() {
        let g = petersen().with_label("petersen");
        let text = g.to_dimacs();
        assert!(text.contains("p edge 10 15"));
        let back = DenseGraph::from_dimacs(&text).unwrap();
        assert_eq!(back.checksum(), g.checksum());
        assert_eq!(back.label(), Some("petersen"));
        assert!(DenseGraph::from_dimacs("p edge 3 1\ne 1 4\n").is_err());
        assert!(DenseGraph::from_dimacs("p edge 3 2\ne 1 2\n").is_err());
    }

    #[test]
    fn checksum_ignores_construction_order() {
        let a = DenseGraph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let b = DenseGraph::from_edges(4, &[(3, 2), (2, 1), (1, 0)]).unwrap();
        assert_eq!(a.checksum(), b.checksum());
        assert_ne!(a.checksum(), cycle(4).checksum());
    }

    #[test]
    fn params_identity() {
        assert!(SrgParams::new(10, 4, 1, 1).is_err());
        assert!(SrgParams::new(50, 7, 0, 1).is_ok());
        let p = SrgParams::new(36, 14, 4, 6).unwrap();
        assert_eq!(p.complement().complement(), p);
    }
}
