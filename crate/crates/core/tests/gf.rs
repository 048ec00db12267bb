use srgsep::gf::{prime_power, Field};

/// Schoolbook product of coefficient vectors reduced by a monic modulus.
fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for i in 0..=k {
            prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i] % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

#[test]
fn multiplication_matches_polynomial_oracle() {
    for (p, k) in [(2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (2, 6)] {
        let f = Field::new(p, k).unwrap();
        let m = f.modulus().to_vec();
        assert_eq!(m.len(), k as usize + 1);
        for a in f.elements() {
            for b in f.elements().step_by(3) {
                let expect = poly_mul_mod(&f.coeffs(a), &f.coeffs(b), &m, p as u32);
                assert_eq!(f.coeffs(f.mul(a, b)), expect, "GF({p}^{k})");
                let sum: Vec<u32> = f.coeffs(a).iter().zip(f.coeffs(b)).map(|(x, y)| (x + y) % p as u32).collect();
                assert_eq!(f.coeffs(f.add(a, b)), sum);
            }
        }
    }
}

#[test]
fn prime_fields_are_integers_mod_p() {
    for p in [2u64, 3, 5, 7, 11, 13, 101] {
        let f = Field::prime(p).unwrap();
        for a in 0..p {
            for b in 0..p {
                let x = f.from_int(a as i64);
                let y = f.from_int(b as i64);
                assert_eq!(f.mul(x, y), f.from_int((a * b % p) as i64));
                assert_eq!(f.sub(x, y), f.from_int(a as i64 - b as i64));
            }
        }
    }
}

#[test]
fn inverses_and_primitive_elements() {
    for q in [4u64, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 243, 256, 343] {
        let f = Field::with_order(q).unwrap();
        for a in f.elements().skip(1) {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), srgsep::gf::FieldElement::ONE);
        }
        assert!(f.inv(srgsep::gf::FieldElement::ZERO).is_err());
        assert_eq!(f.multiplicative_order(f.primitive_element()).unwrap(), q - 1);
    }
}

#[test]
fn frobenius_fixes_exactly_the_subfields() {
    let f = Field::new(2, 6).unwrap();
    for d in [1u32, 2, 3, 6] {
        let sub = f.subfield_elements(d).unwrap();
        assert_eq!(sub.len(), 1 << d);
        let fixed: Vec<_> = f.elements().filter(|&x| f.frobenius(x, d) == x).collect();
        assert_eq!(fixed, sub);
    }
    assert!(f.subfield_elements(4).is_err());
}

#[test]
fn power_classes_partition() {
    let f = Field::with_order(81).unwrap();
    let classes = f.power_classes(4).unwrap();
    assert_eq!(classes.len(), 4);
    let mut all: Vec<_> = classes.concat();
    all.sort_unstable();
    assert_eq!(all, f.elements().skip(1).collect::<Vec<_>>());
    for x in &classes[0] {
        assert!(f.is_eth_power(*x, 4));
    }
    // -1 is a square exactly when q = 1 mod 4.
    for q in [5u64, 7, 9, 11, 13, 27, 49] {
        let f = Field::with_order(q).unwrap();
        assert_eq!(f.is_square(f.from_int(-1)), q % 4 == 1, "q = {q}");
    }
}

#[test]
fn traces_are_balanced() {
    let f = Field::with_order(27).unwrap();
    let mut counts = [0; 3];
    for x in f.elements() {
        counts[f.absolute_trace(x) as usize] += 1;
    }
    assert_eq!(counts, [9, 9, 9]);
}

#[test]
fn prime_power_detection() {
    assert_eq!(prime_power(1), None);
    assert_eq!(prime_power(12), None);
    assert_eq!(prime_power(729), Some((3, 6)));
    assert_eq!(prime_power(2), Some((2, 1)));
    assert!(Field::with_order(10).is_err());
}
