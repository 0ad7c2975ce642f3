use qtetra_core::quiver::{builtin_quiver, BuiltinQuiver};
use qtetra_core::weylcalc::*;
use rand::{Rng, SeedableRng};

fn m(n: usize, s: &str) -> Form {
    parse_mono(n, s).unwrap().form
}

#[test]
fn printed_pi_examples() {
    let w = [1, 1, 1];
    let p = make_p(&w, 1, 2, 3, &q(0)).unwrap();
    assert_eq!(p.image(Gen::P(2)), &m(3, "p1 p3"));
    let w4 = [1, 2, 1, 2];
    let pk = make_pk(&w4, 1, 2, 3, 4, &q(0), &q(0)).unwrap();
    assert_eq!(pk.image(Gen::U(1)), &m(4, "u1 u2 -u4"));
    assert_eq!(pk.image(Gen::P(2)), &m(4, "p4 2p1 k2 k4^-1"));
}

#[test]
fn phi_tables_and_commutation() {
    let a = build_phi(PhiName::A2_121);
    assert_eq!(a.images[3].form, m(3, "k1 k3^-1 p1 u1 p3 -u3 -p2"));
    let c2 = build_phi(PhiName::C2_1212);
    assert_eq!(c2.images[1].form, m(4, "k2 k4^-1 p2 u2 p4 -u4 -2p3"));
    let c3 = build_phi(PhiName::C3_123123123);
    assert_eq!(c3.images[6].form, m(9, "k5 k8^-1 p5 u5 p8 -u8 -p6 -p7"));
    for (n, s) in [
        (PhiName::A2_121, BuiltinQuiver::J121),
        (PhiName::A2_212, BuiltinQuiver::J212),
        (PhiName::C2_1212, BuiltinQuiver::J1212),
        (PhiName::C2_2121, BuiltinQuiver::J2121),
        (PhiName::A3_123121, BuiltinQuiver::J123121),
        (PhiName::C3_123123123, BuiltinQuiver::J123123123),
    ] {
        assert!(check_phi_commutation(&build_phi(n), &builtin_quiver(s)), "{n:?}");
    }
    let mut bad = build_phi(PhiName::A2_121);
    bad.images[0].form = m(3, "k2^-1 p2 -u2");
    assert!(!check_phi_commutation(&bad, &builtin_quiver(BuiltinQuiver::J121)));
    assert!("B9".parse::<PhiName>().is_err());
}

#[test]
fn printed_q_prefactor_is_weyl_normalization() {
    // q^{-1} φ(Y7) φ(Y8) has no leftover q-power
    let phi = build_phi(PhiName::A3_123121);
    let y78 = phi.images[6].mul(&phi.images[7], &phi.weights).unwrap().scale_q(-1);
    assert_eq!(y78, phi.image_of(&[0, 0, 0, 0, 0, 0, 1, 1, 0]));
}

#[test]
fn tetrahedron_and_reflection_at_zero() {
    assert!(verify_pi_tetrahedron(&q(0)).unwrap());
    assert!(verify_p_tetrahedron(&q(0)).unwrap());
    assert!(verify_pi_reflection(&Params::default()).unwrap());
    assert!(verify_p_reflection(&Params::default()).unwrap());
    assert!(verify_rho_braid());
    assert!(verify_p123_composition().unwrap());
}

#[test]
fn wrong_word_fails() {
    let w = TETRA_WEIGHTS;
    let a = AffineOp::product(&[make_p(&w, 4, 5, 6, &q(0)).unwrap(), make_p(&w, 1, 2, 4, &q(0)).unwrap()]);
    let b = AffineOp::product(&[make_p(&w, 1, 2, 4, &q(0)).unwrap(), make_p(&w, 4, 5, 6, &q(0)).unwrap()]);
    assert_ne!(a, b);
}

#[test]
fn random_parameter_sweeps() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..25 {
        let mut r = || qr(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        let p = Params { alpha: r(), beta: r(), gamma: r() };
        assert!(verify_pi_tetrahedron(&p.alpha).unwrap());
        assert!(verify_p_tetrahedron(&p.alpha).unwrap());
        assert!(verify_pi_reflection(&p).unwrap());
        assert!(verify_p_reflection(&p).unwrap());
        assert!(verify_ad_faithfulness(&p).unwrap());
    }
}

#[test]
fn composition_matches_substitution_oracle() {
    // compose two P's and compare against substituting by hand
    let w = [1, 1, 1];
    let a = make_p(&w, 1, 2, 3, &q(0)).unwrap();
    let b = make_p(&w, 1, 3, 2, &q(0)).unwrap();
    let ab = a.compose(&b);
    for g in [Gen::P(1), Gen::P(2), Gen::P(3), Gen::U(1), Gen::U(2), Gen::U(3)] {
        assert_eq!(ab.image(g), &a.apply(b.image(g)));
    }
    assert!(ab.preserves_symplectic());
}

#[test]
fn diagrams() {
    let r = verify_diagram(DiagramCase::R).unwrap();
    assert!(r.holds);
    let y1 = parse_mono(3, "k2^-1 p2 -p1 -u2").unwrap().to_string();
    let y2 = parse_mono(3, "k1 k2 k3^-1 p1 u1 u2 -u3").unwrap().to_string();
    assert_eq!((r.rows[0].1.clone(), r.rows[0].2.clone()), (y1.clone(), y1));
    assert_eq!((r.rows[1].1.clone(), r.rows[1].2.clone()), (y2.clone(), y2));
    let k = verify_diagram(DiagramCase::K).unwrap();
    assert!(k.holds);
    assert_eq!(k.rows.len(), 6);
}

#[test]
fn tetra_chain_items() {
    let w = TETRA_WEIGHTS;
    let phi = build_phi(PhiName::A3_123121);
    let p456 = [OpIdx::R(4, 5, 6)];
    let p456_236 = [OpIdx::R(4, 5, 6), OpIdx::R(2, 3, 6)];
    let p3 = [OpIdx::R(4, 5, 6), OpIdx::R(2, 3, 6), OpIdx::R(1, 3, 5)];
    // (a)
    let a = conjugate_back(&w, &p456, &phi.images[3].form).unwrap();
    assert_eq!(a, m(6, "k2 k6^-1 p2 u2 p6 -u6 -p3"));
    // (b), with its printed intermediate step
    let y78 = phi.image_of(&[0, 0, 0, 0, 0, 0, 1, 1, 0]).form;
    assert_eq!(conjugate_back(&w, &p456, &y78).unwrap(), m(6, "k1 k5^-1 p1 u1 p5 -u5 -p2 -p6"));
    assert_eq!(conjugate_back(&w, &p456_236, &y78).unwrap(), m(6, "k1 k5^-1 p1 u1 p5 -u5 -p3"));
    // (c)
    let y7 = &phi.images[6].form;
    // the intermediate step: π456^{-1} sends p4 to p4 − λ56, hence κ5^{-1}κ6
    assert_eq!(conjugate_back(&w, &p456, y7).unwrap(), m(6, "k1 k4^-1 k5^-1 k6 p1 u1 p4 -u4 -u5 u6 -p2"));
    assert_eq!(conjugate_back(&w, &p3, y7).unwrap(), m(6, "k1 k4^-1 p1 u1 p4 -u4 -p2"));
    // identity conjugation
    assert_eq!(conjugate_back(&w, &[], y7).unwrap(), *y7);
}

#[test]
fn full_chains() {
    for case in [ChainCase::Tetra, ChainCase::Reflection] {
        for side in [Side::L, Side::R] {
            let o = verify_full_conjugation_chain(side, case).unwrap();
            assert!(o.holds, "{case:?} {side:?}: {:?}", o.steps);
        }
    }
}
