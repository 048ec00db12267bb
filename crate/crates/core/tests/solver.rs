use proptest::prelude::*;
use srgsep::families::{generate, FamilySpec};
use srgsep::graph::{complete, cycle, DenseGraph};
use srgsep::solver::{max_clique, max_coclique, seed_search, solve, Budget, Mode, SolveOptions, SolveStatus};

fn brute_clique(g: &DenseGraph) -> usize {
    let n = g.nu();
    assert!(n <= 24);
    let adj: Vec<u32> = (0..n).map(|u| (0..n).filter(|&v| g.adjacent(u, v)).fold(0, |m, v| m | 1 << v)).collect();
    let mut best = 0;
    for set in 0u32..1 << n {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (0..n).filter(|&u| set >> u & 1 == 1).all(|u| set & !(1 << u) & !adj[u] == 0);
        if ok {
            best = size;
        }
    }
    best
}

fn graph_from_bits(n: usize, bits: &[bool]) -> DenseGraph {
    let mut it = bits.iter();
    DenseGraph::from_fn(n, |u, v| u < v && *it.next().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]
    #[test]
    fn matches_brute_force(n in 1usize..=18, bits in prop::collection::vec(any::<bool>(), 153)) {
        let g = graph_from_bits(n, &bits);
        let res = max_clique(&g, None, &Budget::default().with_threads(2)).unwrap();
        prop_assert_eq!(res.value as usize, brute_clique(&g));
        prop_assert_eq!(res.status, SolveStatus::Exact);
        prop_assert!(g.is_clique(&res.witness).unwrap());
        let co = max_coclique(&g, None, &Budget::default()).unwrap();
        prop_assert_eq!(co.value as usize, brute_clique(&g.complement()));
    }
}

#[test]
fn classic_graphs() {
    let b = Budget::default();
    assert_eq!(max_clique(&complete(7), None, &b).unwrap().value, 7);
    assert_eq!(max_clique(&cycle(5), None, &b).unwrap().value, 2);
    assert_eq!(max_coclique(&cycle(9), None, &b).unwrap().value, 4);
    let petersen = generate(&FamilySpec::Triangular { n: 5 }).unwrap().graph.complement();
    assert_eq!(max_coclique(&petersen, None, &b).unwrap().value, 4);
}

#[test]
fn spectral_cap_certifies() {
    let g = generate(&FamilySpec::Paley { q: 25 }).unwrap().graph;
    let res = max_clique(&g, Some(5), &Budget::default()).unwrap();
    assert_eq!((res.value, res.status), (5, SolveStatus::BoundCertified));
}

#[test]
fn cap_violation_is_an_error() {
    assert!(max_clique(&complete(6), Some(4), &Budget::default()).is_err());
}

#[test]
fn budget_exhaustion_reports_lower_bound() {
    let g = generate(&FamilySpec::HoffmanSingleton).unwrap().graph;
    let b = Budget { max_nodes: 3, ..Budget::default() };
    let res = max_coclique(&g, None, &b).unwrap();
    assert_eq!(res.status, SolveStatus::LowerBoundOnly);
    assert!(g.is_coclique(&res.witness).unwrap());
}

#[test]
fn deterministic_across_threads_and_runs() {
    let g = generate(&FamilySpec::Gewirtz).unwrap().graph;
    let run = |t: usize| {
        let r = max_coclique(&g, Some(16), &Budget::default().with_threads(t).with_seed(0)).unwrap();
        (r.value, r.status)
    };
    let first = run(1);
    assert_eq!(first, (16, SolveStatus::BoundCertified));
    assert_eq!(run(4), first);
    assert_eq!(run(1), first);
}

#[test]
fn seed_search_reaches_hoffman_bound() {
    let gen = generate(&FamilySpec::M22).unwrap();
    let set = seed_search(&gen.graph, 21, &gen.hint, Mode::Coclique, &Budget::default()).unwrap();
    assert_eq!(set.len(), 21);
    assert!(gen.graph.is_coclique(&set).unwrap());
}

#[test]
fn vertex_transitive_option_agrees() {
    let g = generate(&FamilySpec::No { epsilon: -1, n: 6, q: 2 }).unwrap().graph;
    let plain = solve(&g, Mode::Clique, &SolveOptions::default(), &Budget::default()).unwrap();
    let opts = SolveOptions { vertex_transitive: true, ..SolveOptions::default() };
    let vt = solve(&g, Mode::Clique, &opts, &Budget::default()).unwrap();
    assert_eq!(plain.value, vt.value);
}
