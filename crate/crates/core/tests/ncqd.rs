use num_complex::Complex64 as C;
use proptest::prelude::*;
use qtetra_core::ncqd::*;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

#[test]
fn printed_examples() {
    for b in [0.7, 0.9] {
        let d = Dilog::with_b(b).unwrap();
        let p0 = d.phi(c(0.0, 0.0)).unwrap();
        let eta = d.eta();
        let want = (C::new(0.0, -std::f64::consts::PI) * (1.0 - 2.0 * eta * eta) / 6.0).exp();
        assert!((p0 * p0 - want).norm() < 1e-10);
        assert!((d.phi(c(-15.0, 0.0)).unwrap() - 1.0).norm() < 1e-10);
        for z in [c(0.2, 0.1), c(-0.7, -0.2), c(1.1, 0.0)] {
            let l = d.phi(z - C::i() * b / 2.0).unwrap() / d.phi(z + C::i() * b / 2.0).unwrap();
            let r = 1.0 + (2.0 * std::f64::consts::PI * z * b).exp();
            assert!((l - r).norm() < 1e-9 * r.norm().max(1.0));
        }
    }
}

#[test]
fn k_constant_verbatim() {
    let p = ModularParams::real(1.0).unwrap();
    // η = 1: K = e^{−5iπ/12}
    assert!((p.k_const() - (C::new(0.0, -5.0 * std::f64::consts::PI / 12.0)).exp()).norm() < 1e-15);
    assert!((p.eta_tilde - C::new(1.5, 0.0)).norm() < 1e-15);
}

#[test]
fn identity_grid_complex_b_as_well() {
    for b in [c(0.7, 0.0), c(0.9, 0.0), c(1.0, 0.1)] {
        let d = Dilog::new(ModularParams::new(b).unwrap());
        for id in [Identity::Inversion, Identity::RecursionB, Identity::RecursionBinv, Identity::Ram1, Identity::Ram2] {
            for a in default_samples(&d, id) {
                let r = check_identity(&d, id, &a).unwrap();
                assert!(r.residual < 1e-8, "{b} {id:?} {a:?}: {}", r.residual);
            }
        }
    }
}

#[test]
fn ramanujan_and_heine() {
    let d = Dilog::with_b(0.8).unwrap();
    for a in default_samples(&d, Identity::RamanujanFull) {
        assert!(check_identity(&d, Identity::RamanujanFull, &a).unwrap().residual < 1e-8);
    }
    let a = &default_samples(&d, Identity::Heine)[0];
    assert!(check_identity(&d, Identity::Heine, a).unwrap().residual < 1e-8);
    // poles not separated
    let bad = [c(0.3, 0.2), c(-0.1, 0.1), c(0.2, -0.2), c(0.25, 0.1)];
    assert!(check_identity(&d, Identity::Heine, &bad).is_err());
}

#[test]
fn wrong_constant_is_detected() {
    // ram1 with K replaced by 1 must fail
    let d = Dilog::with_b(0.8).unwrap();
    let a = &default_samples(&d, Identity::Ram1)[0];
    let r = check_identity(&d, Identity::Ram1, a).unwrap();
    let k = d.params.k_const();
    assert!((r.lhs - r.rhs * k).norm() > 1e-3);
}

#[test]
fn product_form_cross_check() {
    let d = Dilog::new(ModularParams::new(c(1.0, 0.1)).unwrap());
    for z in [c(0.1, 0.2), c(-0.5, -0.3), c(0.8, 0.05)] {
        let (a, b) = (d.phi(z).unwrap(), d.phi_product(z).unwrap());
        assert!((a - b).norm() < 1e-9 * b.norm(), "{z}");
    }
}

#[test]
fn r_kernels() {
    let d = Dilog::with_b(0.8).unwrap();
    let ell = [0.3, 0.8, -0.4];
    let k = kernel_r_coord(&d, &[0.1, 0.4, -0.3], &[0.5, -0.2, -0.1], &ell, c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
    let shown: Vec<String> = k.constraints.iter().map(|x| x.to_string()).collect();
    assert_eq!(shown, ["δ(x2-x'1-x'3)", "δ(-x1-x3+x'2)"]);
    // x2 = x'1 + x'3 and x'2 = x1 + x3
    assert!(k.on_support);
    let off = kernel_r_coord(&d, &[0.1, 0.4, -0.3], &[0.5, 0.0, -0.1], &ell, c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
    assert!(!off.on_support);
    assert_eq!(r_coord_form(c(1.0, 0.0), c(-1.0, 0.0)), r_coord_printed_form());
    // p2 = p'3 puts φ on its pole at iη
    assert!(kernel_r_mom(&d, &[0.1, 0.2, 0.3], &[0.0, 0.3, 0.2], &ell, c(1.0, 0.0), c(-1.0, 0.0)).is_err());
    let m = kernel_r_mom(&d, &[0.1, 0.2, 0.3], &[0.05, 0.25, 0.25], &ell, c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
    let shown: Vec<String> = m.constraints.iter().map(|x| x.to_string()).collect();
    assert_eq!(shown, ["δ(p1+p2-p'1-p'2)", "δ(p2+p3-p'2-p'3)"]);
    assert!(m.on_support);
    // ℓ drops out at ξ = ζ = 0
    let a = kernel_r_mom(&d, &[0.1, 0.2, 0.3], &[0.05, 0.25, 0.25], &[0.0; 3], c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    let b = kernel_r_mom(&d, &[0.1, 0.2, 0.3], &[0.05, 0.25, 0.25], &ell, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    assert!((a.amplitude - b.amplitude).norm() < 1e-14);
}

#[test]
fn fourier_transform_of_coordinate_kernel() {
    let d = Dilog::with_b(0.8).unwrap();
    let f = fourier_cross_check(&d, [0.2, -0.1, 0.3], 0.4, 0.25, &[0.3, 0.8, -0.4], c(1.0, 0.0), c(-1.0, 0.5)).unwrap();
    assert!(f.residual < 1e-4, "{f:?}");
    // a different momentum point must not agree with the first transform
    let g = fourier_cross_check(&d, [0.5, -0.1, 0.3], 0.4, 0.25, &[0.3, 0.8, -0.4], c(1.0, 0.0), c(-1.0, 0.5)).unwrap();
    assert!((g.momentum - f.transformed).norm() > 1e-3);
    assert!(fourier_cross_check(&d, [0.0; 3], 0.0, 0.25, &[0.0; 3], c(1.0, 0.0), c(-1.0, 0.0)).is_err());
}

#[test]
fn k_kernels() {
    let d = Dilog::with_b(0.8).unwrap();
    let x = [0.1, 0.3, -0.2, 0.4];
    let xp = [0.25, 0.5, -0.35, 0.2];
    let k = kernel_k_coord(&d, &x, &xp).unwrap();
    let shown: Vec<String> = k.constraints.iter().map(|x| x.to_string()).collect();
    assert_eq!(shown, ["δ(x1+x3-x'1-x'3)", "δ(x2+x4-x'2-x'4)"]);
    assert!(k.on_support);
    assert_eq!(k.symbolic_constant.as_deref(), Some("varrho'_x"));
    let p = [0.1, 0.2, 0.3, -0.1];
    let pp = [0.25, 0.15, 0.2, 0.15];
    let m = kernel_k_mom(&d, &p, &pp).unwrap();
    let shown: Vec<String> = m.constraints.iter().map(|x| x.to_string()).collect();
    assert_eq!(shown, ["δ(p1+p2+p3-p'1-p'2-p'3)", "δ(p2+2p3+p4-p'2-2p'3-p'4)"]);
    assert!(m.on_support);
    assert!(m.amplitude.is_finite() && m.amplitude.norm() > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn inversion_in_strip(x in -2.0f64..2.0, y in -0.8f64..0.8, b in 0.6f64..1.2) {
        let d = Dilog::with_b(b).unwrap();
        let r = check_identity(&d, Identity::Inversion, &[c(x, y * d.eta().re)]).unwrap();
        prop_assert!(r.residual < 1e-8);
    }

    #[test]
    fn extension_matches_direct(x in -2.0f64..2.0, y in 0.5f64..0.9, b in 0.6f64..1.2) {
        let d = Dilog::with_b(b).unwrap();
        let z = c(x, y * d.eta().re);
        let (a, e) = (d.phi(z).unwrap(), d.phi_direct(z).unwrap());
        prop_assert!((a - e).norm() < 1e-8 * e.norm().max(1.0));
    }
}
