use qtetra_core::qseries::{verify_qbinomial_duality, LaurentQ, RatQ};
use qtetra_core::qweylrep::*;
use rand::{Rng, SeedableRng};

fn a3(v: &[i64]) -> [i64; 3] {
    [v[0], v[1], v[2]]
}
fn a4(v: &[i64]) -> [i64; 4] {
    [v[0], v[1], v[2], v[3]]
}

#[test]
fn printed_and_derived_examples() {
    let mq = RatQ::from_frac(&LaurentQ::monomial((-1).into(), 1), &LaurentQ::one_minus_q_pow(2)).unwrap();
    assert_eq!(r_elem_u([0, 2, 0], [1, 1, 1], [0; 3]), mq);
    assert_eq!(oracle_elem(OpKind::R, Basis::U, &[0, 2, 0], &[1, 1, 1], &[0; 3]).unwrap(), mq);
    assert_eq!(k_elem_u([0; 4], [-1, 1, -1, 0]), mq);
    assert_eq!(oracle_elem(OpKind::K, Basis::U, &[0; 4], &[-1, 1, -1, 0], &[0; 4]).unwrap(), mq);
    // conservation
    assert!(r_elem_u([0, 0, 1], [0; 3], [0; 3]).is_zero());
    assert!(k_elem_u([1, 0, 0, 0], [0; 4]).is_zero());
    assert!(oracle_elem(OpKind::K, Basis::U, &[0; 4], &[0; 4], &[1, 0, 0, 0]).is_err());
}

#[test]
fn r_closed_forms_match_oracle_small_window() {
    for basis in [Basis::U, Basis::P] {
        let o = Oracle::new(RepOperator::r123(), basis).unwrap();
        for n in window(3, 1) {
            for a in window(3, 1) {
                for b in window(3, 1) {
                    let cl = match basis {
                        Basis::U => r_elem_u(a3(&a), a3(&b), a3(&n)),
                        Basis::P => r_elem_p(a3(&a), a3(&b), a3(&n)),
                    };
                    assert_eq!(cl, o.elem(&a, &b, &n).unwrap(), "{basis:?} {a:?} {b:?} {n:?}");
                }
            }
        }
    }
}

#[test]
fn k_closed_forms_match_oracle_small_window() {
    for basis in [Basis::U, Basis::P] {
        let o = Oracle::new(RepOperator::k1234(), basis).unwrap();
        let w = window(4, 1);
        for a in &w {
            for b in &w {
                let ch = match basis {
                    Basis::U => k_elem_u_checked(a4(a), a4(b)),
                    Basis::P => k_elem_p_checked(a4(a), a4(b)),
                };
                let want = o.elem(a, b, &[0; 4]).unwrap();
                match ch.to_ratq() {
                    Some(v) => assert_eq!(v, want, "{basis:?} {a:?} {b:?}"),
                    None => assert!(want.is_zero()),
                }
            }
        }
    }
}

#[test]
fn tetrahedron_rep_window_and_spectral() {
    let pair = WordPair::tetra(Basis::U, &[0; 6]).unwrap();
    let rep = sweep_window(&pair, 1).unwrap();
    assert!(rep.ok(), "{:?}", rep.failures);
    assert!(rep.nonzero > 1000);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let n: Vec<i64> = (0..6).map(|_| rng.gen_range(-1..=1)).collect();
        let rep = sweep_window(&WordPair::tetra(Basis::U, &n).unwrap(), 1).unwrap();
        assert!(rep.ok(), "{n:?}");
    }
}

#[test]
fn tetrahedron_rep_p_basis_spot() {
    let pair = WordPair::tetra(Basis::P, &[0, 1, -1, 0, 1, 0]).unwrap();
    let mut nonzero = 0;
    let w = window(6, 1);
    for a in w.iter().step_by(37) {
        for c in w.iter().step_by(41) {
            let o = pair.compare(a, c, 0).unwrap();
            assert!(o.holds, "{a:?} {c:?}");
            nonzero += usize::from(o.lhs_paths > 0);
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn conservation_violation_gives_zero() {
    let pair = WordPair::tetra(Basis::U, &[0; 6]).unwrap();
    // a1+a2+a3 != c1+c2+c3
    let (l, r) = pair.values(&[1, 0, 0, 0, 0, 0], &[0; 6]).unwrap();
    assert!(l.is_zero() && r.is_zero());
    let refl = WordPair::reflection().unwrap();
    let (l, r) = refl.values(&[0, 0, 1, 0, 0, 0, 0, 0, 0], &[0; 9]).unwrap();
    assert!(l.is_zero() && r.is_zero());
}

#[test]
fn qbinomial_duality_is_the_distilled_tetrahedron() {
    let pair = WordPair::tetra(Basis::U, &[0; 6]).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for a in window(6, 1) {
        for c in window(6, 1).iter().step_by(5) {
            if seen.len() >= 3 {
                break;
            }
            let a6: [i64; 6] = a.clone().try_into().unwrap();
            let c6: [i64; 6] = c.clone().try_into().unwrap();
            let (l, _) = pair.values(&a6, &c6).unwrap();
            let rst = duality_parameters(&a6, &c6);
            if l.is_zero() || seen.contains(&rst) {
                continue;
            }
            assert!(qbinomial_spot_check(&a6, &c6).unwrap(), "{a6:?} {c6:?}");
            assert!(verify_qbinomial_duality(rst.0, rst.1, rst.2));
            seen.insert(rst);
        }
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn reflection_rep_sample_and_enlargement() {
    let pair = WordPair::reflection().unwrap();
    let laws = pair.lhs.conservation_laws();
    assert_eq!(laws.len(), 3);
    let buckets = law_buckets(&laws, 9, 1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut nonzero = 0;
    for _ in 0..400 {
        let b = &buckets[rng.gen_range(0..buckets.len())];
        let a = &b[rng.gen_range(0..b.len())];
        let c = &b[rng.gen_range(0..b.len())];
        let o = pair.compare(a, c, 0).unwrap();
        assert!(o.holds, "{a:?} {c:?}");
        if o.lhs_paths > 0 {
            nonzero += 1;
            assert!(pair.enlargement_stable(a, c, 2).unwrap());
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn mismatched_sides_are_detected() {
    use qtetra_core::weylcalc::{OpIdx::R, TETRA_LHS, TETRA_RHS};
    // same words, spectral parameters disagree between the sides
    let lhs = Network::new(&TETRA_RHS, &[1; 6], Basis::U, &[0; 6]).unwrap();
    let rhs = Network::new(&TETRA_LHS, &[1; 6], Basis::U, &[1, 0, 0, 0, 0, 0]).unwrap();
    let rep = sweep_window(&WordPair { lhs, rhs }, 1).unwrap();
    assert!(!rep.ok());
    assert!(!rep.failures.is_empty());
    // this ordering has an unbounded internal sum; propagation says so
    let bad = Network::new(&[R(4, 5, 6), R(1, 3, 5), R(2, 3, 6), R(1, 2, 4)], &[1; 6], Basis::U, &[0; 6]).unwrap();
    assert!(matches!(bad.contract(&[0; 6], &[0; 6], 0), Err(qtetra_core::Error::Propagation(_))));
}
