use proptest::prelude::*;
use qtetra_core::qseries::*;
use qtetra_core::Error;

fn small_ratq() -> impl Strategy<Value = RatQ> {
    (prop::collection::vec(-3i64..=3, 1..4), -3i64..=3, prop::collection::vec(1i64..=4, 0..3)).prop_map(|(cs, lo, dens)| {
        let mut r = RatQ::from_laurent(LaurentQ::from_ints(lo, &cs));
        for k in dens {
            r = r.div(&RatQ::from_laurent(LaurentQ::one_minus_q_pow(k))).unwrap();
        }
        r
    })
}

#[test]
fn pochhammer_values() {
    // (q;q)_2 = (1-q)(1-q^2)
    let p = qpochhammer(1, 1, 2).unwrap();
    assert_eq!(p, RatQ::from_laurent(LaurentQ::from_ints(0, &[1, -1, -1, 1])));
    // (q^-2;q)_3 passes through 1 - q^0
    assert!(qpochhammer(1, -2, 3).unwrap().is_zero());
    // negative length with a vanishing factor is a pole
    assert_eq!(qpochhammer(1, 1, -1), Err(Error::Pole));
    assert_eq!(qpochhammer(2, 4, -1).unwrap(), RatQ::from_laurent(LaurentQ::one_minus_q_pow(2)).inv().unwrap());
}

#[test]
fn psi_coefficients() {
    // Ψ_q(U) = Σ (-q)^n U^n / (q²;q²)_n and its inverse Σ q^{n²} U^n / (q²;q²)_n
    let one_minus_q2 = RatQ::from_laurent(LaurentQ::one_minus_q_pow(2));
    assert_eq!(psi_series_coeff(1, false, 1), RatQ::monomial(-1, 1).div(&one_minus_q2).unwrap());
    assert_eq!(psi_series_coeff(1, true, 1), RatQ::monomial(1, 1).div(&one_minus_q2).unwrap());
    assert!(psi_series_coeff(0, false, 2).is_one());
}

#[test]
fn duality_grid() {
    for r in 0..=4 {
        for s in 0..=4 {
            for t in 0..=4 {
                assert!(verify_qbinomial_duality(r, s, t), "({r},{s},{t})");
            }
        }
    }
    assert!(verify_qbinomial_duality(-3, 2, 5));
}

#[test]
fn non_cyclotomic_division_is_refused() {
    let p = LaurentQ::from_ints(0, &[1, 1, -1]);
    assert!(matches!(RatQ::from_frac(&LaurentQ::one(), &p), Err(Error::NonCyclotomic(_))));
}

proptest! {
    #[test]
    fn field_axioms(a in small_ratq(), b in small_ratq(), c in small_ratq()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        // inverses exist exactly when the numerator is cyclotomic up to a monomial
        match a.inv() {
            Ok(i) => prop_assert!(a.mul(&i).is_one()),
            Err(e) => prop_assert!(a.is_zero() || matches!(e, Error::NonCyclotomic(_)), "{e:?}"),
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in small_ratq(), b in small_ratq(), q in 0.2f64..0.8) {
        let tol = 1e-8 * (1.0 + a.eval_f64(q).abs() * b.eval_f64(q).abs());
        prop_assert!((a.mul(&b).eval_f64(q) - a.eval_f64(q) * b.eval_f64(q)).abs() < tol);
        prop_assert!((a.add(&b).eval_f64(q) - a.eval_f64(q) - b.eval_f64(q)).abs() < tol);
    }

    #[test]
    fn pochhammer_splits(z in -6i64..=6, m in 0i64..=4, n in 0i64..=4, base in 1i64..=3) {
        // (x;q)_{m+n} = (x;q)_m (x q^m;q)_n
        let whole = qpochhammer(base, z, m + n).unwrap();
        let split = qpochhammer(base, z, m).unwrap().mul(&qpochhammer(base, z + m * base, n).unwrap());
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn random_duality(r in -3i64..=8, s in -3i64..=8, t in -3i64..=8) {
        prop_assert!(verify_qbinomial_duality(r, s, t));
    }
}
