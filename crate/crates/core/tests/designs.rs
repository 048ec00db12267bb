use srgsep::designs::{coset_graph, golay_binary_extended, golay_ternary, weight, witt_s_3_6_22};

#[test]
fn binary_golay_weight_enumerator() {
    let c = golay_binary_extended();
    assert_eq!((c.length(), c.dimension()), (24, 12));
    let mut dist = vec![0usize; 25];
    for w in c.codewords() {
        dist[weight(&w)] += 1;
    }
    // 1 + 759 x^8 + 2576 x^12 + 759 x^16 + x^24
    let mut expect = vec![0usize; 25];
    expect[0] = 1;
    expect[8] = 759;
    expect[12] = 2576;
    expect[16] = 759;
    expect[24] = 1;
    assert_eq!(dist, expect);
}

#[test]
fn ternary_golay_is_perfect() {
    let c = golay_ternary();
    assert_eq!((c.length(), c.dimension(), c.minimum_distance()), (11, 6, 5));
    // Hamming balls of radius 2 tile the space: 3^6 * (1 + 2*11 + 4*55) = 3^11.
    let ball = 1 + 2 * 11 + 4 * 55;
    assert_eq!(3usize.pow(6) * ball, 3usize.pow(11));
    assert_eq!(c.codewords().len(), 729);
}

#[test]
fn witt_design_is_steiner() {
    let d = witt_s_3_6_22();
    assert_eq!((d.v, d.k, d.blocks.len()), (22, 6, 77));
    assert!(d.is_steiner(3));
    let mut seen = std::collections::HashSet::new();
    for b in &d.blocks {
        let mut b = b.clone();
        b.sort_unstable();
        assert!(seen.insert(b));
    }
    // Two blocks meet in 0 or 2 points.
    for (i, a) in d.blocks.iter().enumerate() {
        for b in &d.blocks[i + 1..] {
            let m = a.iter().filter(|x| b.contains(x)).count();
            assert!(m == 0 || m == 2);
        }
    }
}

#[test]
fn golay_coset_graph_parameters() {
    let g = coset_graph(golay_ternary()).unwrap();
    assert_eq!(g.nu(), 243);
    let p = g.verify_srg().unwrap();
    assert_eq!((p.k, p.lambda, p.mu), (22, 1, 2));
}
