//! Combinatorial families and named sporadic graphs.

use crate::designs::{self, witt_s_3_6_22};
use crate::graph::DenseGraph;

use super::{affine, FamilyError, FamilySpec, Generated, WitnessHint};

/// The named spec behind a constructible table row, or the row itself when
/// it is built directly here.
pub(super) fn constructible_row(row: u32) -> Option<FamilySpec> {
    Some(match row {
        3 => FamilySpec::HoffmanSingleton,
        4 => FamilySpec::Gewirtz,
        5 => FamilySpec::M22,
        6 => FamilySpec::HigmanSims,
        12 => FamilySpec::BvLS,
        16 => FamilySpec::BilinearForms { q: 2, m: 4 },
        13 | 15 => FamilySpec::CatalogRow { row },
        _ => return None,
    })
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // Pairs {i < j} in lexicographic order.
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

pub(super) fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    let label = spec.to_string();
    let (graph, hint) = match *spec {
        FamilySpec::Triangular { n } => {
            let n = n as usize;
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let g = DenseGraph::from_fn(pairs.len(), |a, b| {
                let (x, y) = (pairs[a], pairs[b]);
                x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1
            });
            let clique = (0..n - 1).collect();
            let coclique = (0..n / 2).map(|i| pair_index(n, 2 * i, 2 * i + 1)).collect();
            (g, WitnessHint::new(Some(clique), Some(coclique), "pairs through a point; a matching"))
        }
        FamilySpec::Grid { n } => {
            let n = n as usize;
            let g = DenseGraph::from_fn(n * n, |a, b| a / n == b / n || a % n == b % n);
            let clique = (0..n).collect();
            let coclique = (0..n).map(|i| i * n + i).collect();
            (g, WitnessHint::new(Some(clique), Some(coclique), "a row; the diagonal"))
        }
        FamilySpec::BvLS => {
            let g = designs::coset_graph(designs::golay_ternary()).expect("ternary Golay code");
            let v = g.neighbors(0).next().expect("nonempty");
            let w = g
                .neighbors(0)
                .find(|&w| w != v && g.adjacent(v, w))
                .expect("lambda = 1");
            let mut clique = vec![0, v, w];
            clique.sort_unstable();
            (g, WitnessHint::new(Some(clique), None, "a triangle through the zero syndrome"))
        }
        FamilySpec::HoffmanSingleton => (hoffman_singleton(), WitnessHint::none()),
        FamilySpec::Gewirtz => {
            let blocks: Vec<&Vec<usize>> = witt_s_3_6_22().blocks.iter().filter(|b| !b.contains(&0)).collect();
            let g = DenseGraph::from_fn(blocks.len(), |a, b| disjoint(blocks[a], blocks[b]));
            (g, WitnessHint::none())
        }
        FamilySpec::M22 => {
            let blocks = &witt_s_3_6_22().blocks;
            let g = DenseGraph::from_fn(blocks.len(), |a, b| disjoint(&blocks[a], &blocks[b]));
            // Blocks through a fixed point pairwise meet.
            let coclique = (0..blocks.len()).filter(|&i| blocks[i].contains(&0)).collect();
            (g, WitnessHint::new(None, Some(coclique), "blocks through a point"))
        }
        FamilySpec::HigmanSims => (higman_sims(), WitnessHint::none()),
        FamilySpec::CatalogRow { row } => match constructible_row(row) {
            Some(FamilySpec::CatalogRow { row: 13 }) => {
                let g = designs::dual_weight_graph(designs::golay_ternary(), 9).expect("ternary Golay code");
                (g, WitnessHint::none())
            }
            Some(FamilySpec::CatalogRow { row: 15 }) => (even_subsets_graph(), WitnessHint::none()),
            Some(named @ FamilySpec::BilinearForms { .. }) => {
                let mut out = affine::generate(&named)?;
                out.graph = out.graph.with_label(label);
                return Ok(out);
            }
            Some(named) => {
                let mut out = generate(&named)?;
                out.graph = out.graph.with_label(label);
                return Ok(out);
            }
            None => return Err(FamilyError::NotConstructible(label)),
        },
        _ => unreachable!("not a sporadic family"),
    };
    Ok(Generated { graph: graph.with_label(label), hint })
}

/// Robertson's construction: pentagons `P_h` and pentagrams `Q_i`, with
/// `P_h[j] ~ Q_i[h i + j]`.
fn hoffman_singleton() -> DenseGraph {
    let p = |h: usize, j: usize| 5 * h + j % 5;
    let q = |i: usize, j: usize| 25 + 5 * i + j % 5;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, j + 1)));
            edges.push((q(h, j), q(h, j + 2)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, h * i + j)));
            }
        }
    }
    DenseGraph::from_edges(50, &edges).expect("indices in range")
}

/// A point at infinity, the 22 points and the 77 blocks of S(3,6,22).
fn higman_sims() -> DenseGraph {
    let blocks = &witt_s_3_6_22().blocks;
    DenseGraph::from_fn(100, |a, b| match (a, b) {
        (0, 1..=22) => true,
        (1..=22, 1..=22) => false,
        (1..=22, _) => blocks[b - 23].contains(&(a - 1)),
        (0, _) => false,
        _ => disjoint(&blocks[a - 23], &blocks[b - 23]),
    })
}

/// Even subsets of a 10-set modulo complementation, joined when they differ
/// by a pair. Each class is represented by its member avoiding the last
/// point, as a 9-bit mask; vertices are in increasing mask order.
fn even_subsets_graph() -> DenseGraph {
    let masks: Vec<u32> = (0u32..512).filter(|m| m.count_ones() % 2 == 0).collect();
    DenseGraph::from_fn(masks.len(), |a, b| matches!((masks[a] ^ masks[b]).count_ones(), 2 | 8))
}
