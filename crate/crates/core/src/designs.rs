//! The binary and ternary Golay codes, the Witt design S(3,6,22), and coset
//! graphs of the ternary code.

use std::sync::OnceLock;

use thiserror::Error;

use crate::graph::{DenseGraph, GraphBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("coset graph requires the ternary Golay code [11,6,5]")]
    WrongCode,
}

/// A linear code over the prime field GF(p), given by a generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    p: u8,
    n: usize,
    generator: Vec<Vec<u8>>,
    declared_distance: usize,
}

// Extended binary Golay code: the 12 cyclic shifts of the quadratic-residue
// generator x^11+x^10+x^6+x^5+x^4+x^2+1 on 23 coordinates, with an overall
// parity bit in coordinate 23. Bit i of each word is coordinate i.
const GOLAY24_ROWS: [u32; 12] = [
    0x800c75, 0x8018ea, 0x8031d4, 0x8063a8, 0x80c750, 0x818ea0, 0x831d40, 0x863a80, 0x8c7500,
    0x98ea00, 0xb1d400, 0xe3a800,
];

// Ternary Golay code: the 6 cyclic shifts of x^5+x^4+2x^3+x^2+2 on 11
// coordinates, coefficients listed from the constant term.
const GOLAY11_GENERATOR: [u8; 6] = [2, 0, 1, 2, 1, 1];

impl LinearCode {
    /// Builds a code; rows of `generator` must be independent.
    pub fn new(p: u8, generator: Vec<Vec<u8>>, declared_distance: usize) -> Self {
        let n = generator.first().map_or(0, Vec::len);
        LinearCode {
            p,
            n,
            generator,
            declared_distance,
        }
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn declared_distance(&self) -> usize {
        self.declared_distance
    }

    pub fn generator(&self) -> &[Vec<u8>] {
        &self.generator
    }

    /// The codeword `sum_i message[i] * row_i`.
    pub fn encode(&self, message: &[u8]) -> Vec<u8> {
        let p = self.p as u32;
        let mut word = vec![0u32; self.n];
        for (&m, row) in message.iter().zip(&self.generator) {
            if m == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w += m as u32 * g as u32;
            }
        }
        word.into_iter().map(|w| (w % p) as u8).collect()
    }

    /// All `p^k` codewords, messages enumerated as base-p counters.
    pub fn codewords(&self) -> Vec<Vec<u8>> {
        let k = self.dimension();
        let count = (self.p as usize).pow(k as u32);
        let mut message = vec![0u8; k];
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(self.encode(&message));
            for digit in message.iter_mut() {
                *digit += 1;
                if *digit < self.p {
                    break;
                }
                *digit = 0;
            }
        }
        out
    }

    /// Number of codewords of each weight `0..=n`.
    pub fn weight_distribution(&self) -> Vec<usize> {
        let mut dist = vec![0; self.n + 1];
        for w in self.codewords() {
            dist[weight(&w)] += 1;
        }
        dist
    }

    pub fn minimum_distance(&self) -> usize {
        self.weight_distribution()
            .iter()
            .enumerate()
            .skip(1)
            .find(|&(_, &c)| c > 0)
            .map_or(0, |(w, _)| w)
    }

    /// Rank of the generator matrix equals its row count and the minimum
    /// weight equals the declared distance.
    pub fn validate(&self) -> bool {
        rref(&self.generator, self.p).1.len() == self.dimension()
            && self.minimum_distance() == self.declared_distance
    }

    /// A parity-check matrix with `n - k` rows, one per non-pivot column of
    /// the reduced generator matrix.
    pub fn parity_check(&self) -> Vec<Vec<u8>> {
        let (reduced, pivots) = rref(&self.generator, self.p);
        let p = self.p;
        (0..self.n)
            .filter(|j| !pivots.contains(j))
            .map(|j| {
                let mut row = vec![0u8; self.n];
                row[j] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    row[pc] = (p - reduced[i][j]) % p;
                }
                row
            })
            .collect()
    }

    /// `H v`, the syndrome of `v`.
    pub fn syndrome(&self, v: &[u8]) -> Vec<u8> {
        syndrome_with(&self.parity_check(), v, self.p)
    }
}

fn syndrome_with(h: &[Vec<u8>], v: &[u8], p: u8) -> Vec<u8> {
    h.iter()
        .map(|row| {
            let s: u32 = row.iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
            (s % p as u32) as u8
        })
        .collect()
}

pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Reduced row echelon form over GF(p) and its pivot columns.
fn rref(rows: &[Vec<u8>], p: u8) -> (Vec<Vec<u8>>, Vec<usize>) {
    let p32 = p as u32;
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let n = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = (1..p32).find(|&x| x * m[r][c] as u32 % p32 == 1).unwrap();
        for x in m[r].iter_mut() {
            *x = (*x as u32 * inv % p32) as u8;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] as u32;
                for j in 0..n {
                    let sub = f * m[r][j] as u32 % p32;
                    m[i][j] = ((m[i][j] as u32 + p32 - sub) % p32) as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// The extended binary Golay code [24,12,8].
pub fn golay_binary_extended() -> &'static LinearCode {
    static CODE: OnceLock<LinearCode> = OnceLock::new();
    CODE.get_or_init(|| {
        let rows = GOLAY24_ROWS
            .iter()
            .map(|&w| (0..24).map(|i| ((w >> i) & 1) as u8).collect())
            .collect();
        let code = LinearCode::new(2, rows, 8);
        assert!(code.validate(), "stored binary Golay generator is corrupt");
        code
    })
}

/// The perfect ternary Golay code [11,6,5].
pub fn golay_ternary() -> &'static LinearCode {
    static CODE: OnceLock<LinearCode> = OnceLock::new();
    CODE.get_or_init(|| {
        let rows = (0..6)
            .map(|shift| {
                let mut row = vec![0u8; 11];
                row[shift..shift + 6].copy_from_slice(&GOLAY11_GENERATOR);
                row
            })
            .collect();
        let code = LinearCode::new(3, rows, 5);
        assert!(code.validate(), "stored ternary Golay generator is corrupt");
        code
    })
}

/// Points `0..v` and a list of `k`-subsets, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDesign {
    pub v: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockDesign {
    /// True iff every `t`-subset of points lies in exactly one block.
    pub fn is_steiner(&self, t: usize) -> bool {
        let mut counts = std::collections::HashMap::new();
        for block in &self.blocks {
            for sub in subsets(block, t) {
                *counts.entry(sub).or_insert(0usize) += 1;
            }
        }
        counts.values().all(|&c| c == 1) && counts.len() == binomial(self.v, t)
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        let mut r = vec![0; self.v];
        for block in &self.blocks {
            for &x in block {
                r[x] += 1;
            }
        }
        r
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets(set: &[usize], t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..set.len() {
        for mut rest in subsets(&set[i + 1..], t - 1) {
            rest.insert(0, set[i]);
            out.push(rest);
        }
    }
    out
}

/// S(3,6,22): octads of the binary Golay code through coordinates 22 and 23,
/// with those two removed. Blocks are in lexicographic order.
pub fn witt_s_3_6_22() -> &'static BlockDesign {
    static DESIGN: OnceLock<BlockDesign> = OnceLock::new();
    DESIGN.get_or_init(|| {
        let mut blocks: Vec<Vec<usize>> = golay_binary_extended()
            .codewords()
            .into_iter()
            .filter(|w| weight(w) == 8 && w[22] == 1 && w[23] == 1)
            .map(|w| (0..22).filter(|&i| w[i] == 1).collect())
            .collect();
        blocks.sort();
        BlockDesign { v: 22, k: 6, blocks }
    })
}

fn is_ternary_golay(code: &LinearCode) -> bool {
    code.characteristic() == 3
        && code.length() == 11
        && code.dimension() == 6
        && code.minimum_distance() == 5
}

/// Syndromes `GF(3)^5` in vertex order: index `i` has digits of `i` in base 3,
/// most significant digit first.
fn syndrome_index(s: &[u8]) -> usize {
    s.iter().fold(0, |acc, &d| acc * 3 + d as usize)
}

fn index_syndrome(mut i: usize, len: usize) -> Vec<u8> {
    let mut s = vec![0u8; len];
    for d in s.iter_mut().rev() {
        *d = (i % 3) as u8;
        i /= 3;
    }
    s
}

/// Minimum-weight representative of each coset of the ternary Golay code,
/// indexed by syndrome; ties go to the lexicographically smallest vector.
pub fn coset_leaders(code: &LinearCode) -> Result<Vec<Vec<u8>>, DesignError> {
    if !is_ternary_golay(code) {
        return Err(DesignError::WrongCode);
    }
    let h = code.parity_check();
    let n = code.length();
    let mut leaders: Vec<Option<Vec<u8>>> = vec![None; 243];
    // Perfect code: weights 0, 1, 2 cover every syndrome exactly once.
    let mut candidates = vec![vec![0u8; n]];
    for i in 0..n {
        for a in 1..3 {
            let mut v = vec![0u8; n];
            v[i] = a;
            candidates.push(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for a in 1..3 {
                for b in 1..3 {
                    let mut v = vec![0u8; n];
                    v[i] = a;
                    v[j] = b;
                    candidates.push(v);
                }
            }
        }
    }
    candidates.sort_by(|x, y| weight(x).cmp(&weight(y)).then_with(|| x.cmp(y)));
    for v in candidates {
        let idx = syndrome_index(&syndrome_with(&h, &v, 3));
        leaders[idx].get_or_insert(v);
    }
    Ok(leaders.into_iter().map(|l| l.expect("perfect code")).collect())
}

/// The coset graph of the ternary Golay code: 243 syndromes, adjacent iff
/// their difference is the syndrome of a weight-1 vector.
pub fn coset_graph(code: &LinearCode) -> Result<DenseGraph, DesignError> {
    if !is_ternary_golay(code) {
        return Err(DesignError::WrongCode);
    }
    let h = code.parity_check();
    let r = h.len();
    let mut steps = Vec::new();
    for i in 0..code.length() {
        for a in 1..3u8 {
            let mut e = vec![0u8; code.length()];
            e[i] = a;
            steps.push(syndrome_with(&h, &e, 3));
        }
    }
    let mut builder = GraphBuilder::new(243);
    for u in 0..243 {
        let su = index_syndrome(u, r);
        for step in &steps {
            let sv: Vec<u8> = su.iter().zip(step).map(|(&a, &b)| (a + b) % 3).collect();
            let v = syndrome_index(&sv);
            if u < v {
                builder.add_edge(u, v);
            }
        }
    }
    Ok(builder.build().with_label("ternary Golay coset graph"))
}

/// Cayley graph on `GF(3)^5` where `u ~ v` iff the dual-code word
/// `(u - v) H` has the given weight. Weight 9 gives a (243, 110, 37, 60) graph.
pub fn dual_weight_graph(code: &LinearCode, target_weight: usize) -> Result<DenseGraph, DesignError> {
    if !is_ternary_golay(code) {
        return Err(DesignError::WrongCode);
    }
    let h = code.parity_check();
    let r = h.len();
    let connection: Vec<bool> = (0..243)
        .map(|i| {
            let coeffs = index_syndrome(i, r);
            let word: Vec<u8> = (0..code.length())
                .map(|j| {
                    let s: u32 = coeffs.iter().zip(&h).map(|(&c, row)| c as u32 * row[j] as u32).sum();
                    (s % 3) as u8
                })
                .collect();
            weight(&word) == target_weight
        })
        .collect();
    let graph = DenseGraph::from_fn(243, |u, v| {
        let a = index_syndrome(u, r);
        let b = index_syndrome(v, r);
        let d: Vec<u8> = a.iter().zip(&b).map(|(&x, &y)| (x + 3 - y) % 3).collect();
        connection[syndrome_index(&d)]
    });
    Ok(graph.with_label(format!("ternary Golay dual weight-{target_weight} graph")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_golay_weights() {
        let code = golay_binary_extended();
        assert_eq!((code.length(), code.dimension()), (24, 12));
        let dist = code.weight_distribution();
        assert_eq!(dist.iter().sum::<usize>(), 4096);
        assert_eq!(dist[8], 759);
        assert_eq!(code.minimum_distance(), 8);
    }

    #[test]
    fn ternary_golay_is_perfect() {
        let code = golay_ternary();
        assert_eq!(code.codewords().len(), 729);
        assert_eq!(code.minimum_distance(), 5);
        assert_eq!(729 * (1 + 22 + 220), 3usize.pow(11));
        let h = code.parity_check();
        assert_eq!(h.len(), 5);
        for w in code.codewords() {
            assert!(syndrome_with(&h, &w, 3).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn witt_design_counts() {
        let d = witt_s_3_6_22();
        assert_eq!(d.blocks.len(), 77);
        assert!(d.is_steiner(3));
        assert!(d.replication().iter().all(|&r| r == 21));
    }

    #[test]
    fn coset_leaders_cover_every_syndrome() {
        let leaders = coset_leaders(golay_ternary()).unwrap();
        assert_eq!(leaders.len(), 243);
        assert!(leaders[0].iter().all(|&x| x == 0));
        let by_weight = leaders.iter().fold([0; 3], |mut acc, l| {
            acc[weight(l)] += 1;
            acc
        });
        assert_eq!(by_weight, [1, 22, 220]);
    }

    #[test]
    fn wrong_code_is_rejected() {
        assert_eq!(coset_graph(golay_binary_extended()).unwrap_err(), DesignError::WrongCode);
    }
}
