use z2z8::codes::{
    binary_excess, classify_type, dual_bruteforce, halve_even, inner_product, phi_reduce, random_standard_form,
    span, Ambient, MixedWord, StandardFormMatrix,
};
use z2z8::mgn::{dual_type, dual_type_with_excess};
use z2z8::oracle::enumerate_subgroups;
use z2z8::{CodeType, TypeProfile, Z2Z4Profile};

fn z8_type(c: &z2z8::codes::Code) -> TypeProfile {
    match classify_type(c).unwrap() {
        CodeType::Z2Z8(p) => p,
        other => panic!("expected a Z2Z8 type, got {other}"),
    }
}

#[test]
fn cardinality_and_dual_type_on_every_subgroup() {
    for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let ambient_order = 1usize << (a + 3 * b);
        for c in enumerate_subgroups(a, b, 3).unwrap() {
            let d = dual_bruteforce(&c).unwrap();
            assert_eq!(c.len() * d.len(), ambient_order);
            let rho = binary_excess(&c).unwrap();
            assert_eq!(z8_type(&d), dual_type_with_excess(&z8_type(&c), rho).unwrap());
            assert_eq!(dual_bruteforce(&d).unwrap(), c);
        }
    }
}

#[test]
fn dual_type_without_excess_is_the_stripe_count() {
    for c in enumerate_subgroups(2, 2, 3).unwrap() {
        if binary_excess(&c).unwrap() == 0 {
            let d = dual_bruteforce(&c).unwrap();
            assert_eq!(z8_type(&d), dual_type(&z8_type(&c)).unwrap());
        }
    }
}

// span{(1|2)} is cyclic of order 4 and equal to its own dual, while the stripe
// count predicts an elementary abelian dual.
#[test]
fn stripe_count_dual_type_misses_order_four_binary_rows() {
    let amb = Ambient::z2z8(1, 1);
    let c = span(amb, &[MixedWord::new(vec![1], vec![2], 3).unwrap()]).unwrap();
    let d = dual_bruteforce(&c).unwrap();
    assert_eq!(d, c);
    let p = z8_type(&c);
    assert_eq!(p, TypeProfile::new(1, 1, 0, 0, 1, 0));
    assert_eq!(binary_excess(&c).unwrap(), 1);
    assert_eq!(dual_type(&p).unwrap(), TypeProfile::new(1, 1, 1, 0, 0, 1));
    assert_ne!(z8_type(&d), dual_type(&p).unwrap());
}

#[test]
fn z2z4_duals_have_complementary_size() {
    for (a, b) in [(1, 1), (2, 2)] {
        for c in enumerate_subgroups(a, b, 2).unwrap() {
            let d = dual_bruteforce(&c).unwrap();
            assert_eq!(c.len() * d.len(), 1usize << (a + 2 * b));
        }
    }
}

#[test]
fn standard_forms_round_trip_through_classification() {
    for a in 0..=3 {
        for b in 0..=3 {
            for p in TypeProfile::all(a, b) {
                for seed in 0..20 {
                    let m = random_standard_form(&p, seed).unwrap();
                    let code = span(m.ambient(), &m.assemble()).unwrap();
                    assert_eq!(code.len() as u64, 1 << p.log2_size(), "{p} seed {seed}");
                    assert_eq!(z8_type(&code), p, "seed {seed}");
                }
            }
        }
    }
}

#[test]
fn z2z4_standard_forms_round_trip() {
    for a in 0..=3 {
        for b in 0..=3 {
            for p in Z2Z4Profile::all(a, b) {
                for seed in 0..5 {
                    let m = StandardFormMatrix::random(CodeType::Z2Z4(p), seed).unwrap();
                    let code = span(m.ambient(), &m.assemble()).unwrap();
                    assert_eq!(classify_type(&code).unwrap(), CodeType::Z2Z4(p));
                }
            }
        }
    }
}

#[test]
fn parity_rows_orthogonal_on_seeded_draws() {
    for p in [TypeProfile::new(2, 2, 1, 1, 1, 0), TypeProfile::new(3, 3, 1, 1, 1, 1)] {
        for seed in 0..200 {
            let m = random_standard_form(&p, seed).unwrap();
            let h = m.parity_check().unwrap();
            for g in m.assemble() {
                for r in h.rows() {
                    assert_eq!(inner_product(&g, r).unwrap(), 0, "{p} seed {seed}");
                }
            }
        }
    }
}

#[test]
fn parity_check_generates_the_dual() {
    for a in 0..=2 {
        for b in 0..=3 {
            for p in TypeProfile::all(a, b) {
                let m = random_standard_form(&p, u64::from(a * 10 + b)).unwrap();
                let code = span(m.ambient(), &m.assemble()).unwrap();
                let from_h = span(m.ambient(), m.parity_check().unwrap().rows()).unwrap();
                assert_eq!(from_h, dual_bruteforce(&code).unwrap(), "{p}");
            }
        }
    }
}

#[test]
fn phi_images_are_codes() {
    for (a, b) in [(1, 1), (2, 1)] {
        for c in enumerate_subgroups(a, b, 3).unwrap() {
            let img = phi_reduce(&c).unwrap();
            let regenerated = span(img.ambient(), &img.words().collect::<Vec<_>>()).unwrap();
            assert_eq!(regenerated, img);
            assert!(classify_type(&img).is_ok());
        }
    }
}

// Codes with no order-8 generator live inside Z2^a x (2 Z8)^b; halving sends
// type (k0, 0, k2, k3) to the Z2Z4 type (k0, k2, k3).
#[test]
fn halving_follows_the_index_map() {
    for a in 0..=3 {
        for b in 0..=3 {
            for p in TypeProfile::all(a, b).filter(|p| p.k1 == 0) {
                for seed in 0..5 {
                    let m = random_standard_form(&p, seed).unwrap();
                    let code = span(m.ambient(), &m.assemble()).unwrap();
                    let half = halve_even(&code).unwrap();
                    let expect = Z2Z4Profile::new(a, b, p.k0, p.k2, p.k3);
                    assert_eq!(classify_type(&half).unwrap(), CodeType::Z2Z4(expect));
                }
            }
        }
    }
}

// Plain reduction mod 4 kills the order-2 Z8 generators, so its image is
// elementary abelian of rank k0 + k2.
#[test]
fn phi_on_k1_zero_types_drops_order_two_part() {
    for p in TypeProfile::all(2, 2).filter(|p| p.k1 == 0) {
        let m = random_standard_form(&p, 1).unwrap();
        let code = span(m.ambient(), &m.assemble()).unwrap();
        let img = phi_reduce(&code).unwrap();
        assert_eq!(img.len() as u64, 1 << (p.k0 + p.k2));
        let CodeType::Z2Z4(t) = classify_type(&img).unwrap() else {
            panic!("phi lands in Z2Z4");
        };
        assert_eq!(t.k1, 0);
    }
}
