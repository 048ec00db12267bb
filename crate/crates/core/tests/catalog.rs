use srgsep::bounds::{delsarte_bound, eigenvalues, hoffman_bound, BoundReport};
use srgsep::catalog::{known_values, params_for, table2_rows, table6_rows};
use srgsep::families::FamilySpec;

/// Eigenvalues and bounds in floating point straight from the parameters.
fn float_oracle(nu: f64, k: f64, l: f64, m: f64) -> (f64, f64, f64, f64) {
    let d = ((l - m) * (l - m) + 4.0 * (k - m)).sqrt();
    let r = (l - m + d) / 2.0;
    let s = (l - m - d) / 2.0;
    (s, r, 1.0 - k / s, nu * s / (s - k))
}

#[test]
fn table2_constants_agree_with_arithmetic() {
    let rows = table2_rows().unwrap();
    assert_eq!(rows.len(), 53);
    for row in rows {
        let p = row.params;
        let ev = eigenvalues(&p);
        assert_eq!(ev.s, row.s, "row {}", row.row);
        assert_eq!(ev.r, row.r, "row {}", row.row);
        assert_eq!(delsarte_bound(&p), row.delsarte, "row {}", row.row);
        assert_eq!(hoffman_bound(&p), row.hoffman, "row {}", row.row);
        let (s, r, del, hof) = float_oracle(p.nu as f64, p.k as f64, p.lambda as f64, p.mu as f64);
        let rel = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);
        assert!(rel(row.s.to_f64(), s) && rel(row.r.to_f64(), r), "row {}", row.row);
        assert!(rel(row.delsarte.to_f64(), del) && rel(row.hoffman.to_f64(), hof), "row {}", row.row);
    }
}

#[test]
fn known_values_respect_bounds() {
    for row in table2_rows().unwrap() {
        let b = BoundReport::new(&row.params);
        if let Some(w) = &row.omega {
            assert!(w.value <= b.clique_cap(), "row {}", row.row);
        }
        if let Some(a) = &row.alpha {
            assert!(a.value <= b.coclique_cap(), "row {}", row.row);
        }
    }
    for row in table6_rows().unwrap() {
        let b = BoundReport::new(&row.params);
        assert!(row.omega <= b.clique_cap() && row.alpha <= b.coclique_cap(), "row {}", row.row);
        assert!(row.omega * row.alpha <= row.params.nu);
    }
}

#[test]
fn closed_form_parameters() {
    use FamilySpec::*;
    let p = |s: FamilySpec| {
        let x = params_for(&s).unwrap();
        (x.nu, x.k, x.lambda, x.mu)
    };
    assert_eq!(p(Triangular { n: 9 }), (36, 14, 7, 4));
    assert_eq!(p(Paley { q: 29 }), (29, 14, 6, 7));
    assert_eq!(p(No { epsilon: -1, n: 6, q: 3 }), (126, 45, 12, 18));
    assert_eq!(p(BvLS), (243, 22, 1, 2));
    assert_eq!(p(HigmanSims), (100, 22, 0, 6));
    assert_eq!(p(Grassmann { q: 2, n: 5 }), (155, 42, 17, 9));
}

#[test]
fn known_values_for_no_minus_6_3() {
    let (w, a) = known_values(&FamilySpec::No { epsilon: -1, n: 6, q: 3 });
    assert_eq!((w.unwrap().value, a.unwrap().value), (6, 15));
}
