use num_complex::Complex64;
use orbifold_core::localode::{
    equivariance_fourier_check, equivariant_projection, leading_exponent, mode_ode_crosscheck, mode_series_solve,
    ode_c2_estimate, sample_circle, LocalBeltramiData,
};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn data(m: u32) -> LocalBeltramiData {
    LocalBeltramiData::new(
        m,
        vec![c(0.8, 0.3), c(-0.2, 0.4), c(0.1, -0.1)],
        vec![c(-0.5, 0.9), c(0.3, 0.0), c(0.05, 0.2)],
    )
    .unwrap()
}

#[test]
fn c2_from_series_and_from_ode() {
    for m in [2u32, 3, 4, 5, 7] {
        let d = data(m);
        let c0 = c(0.7, -0.4);
        let sol = mode_series_solve(&d, 0, c0, 0.5).unwrap();
        let expected = if m == 2 {
            let mu0 = d.mu(c(0.0, 0.0));
            let nu0 = d.nu(c(0.0, 0.0));
            2.0 * c0 - 4.0 * mu0 * nu0.conj()
        } else {
            2.0 * c0
        };
        assert!((sol.c2() - expected).norm() < 1e-12, "m = {m}");
        assert!((ode_c2_estimate(&d, c0).unwrap() - expected).norm() < 1e-8, "m = {m}");
    }
}

#[test]
fn series_agrees_with_integrator() {
    for m in [2u32, 3, 5] {
        let d = data(m);
        for n in [0i64, m as i64, -(m as i64), 2 * m as i64] {
            let sol = mode_series_solve(&d, n, c(0.3, 0.2), 0.85).unwrap();
            let dev = mode_ode_crosscheck(&sol, 0.05, 0.85).unwrap();
            assert!(dev < 1e-8, "m = {m}, n = {n}: {dev}");
        }
    }
}

#[test]
fn modes_vanish_to_order_n() {
    for m in [2u32, 3, 5] {
        let d = data(m);
        for n in [m as i64, -(m as i64), 2 * m as i64, -2 * (m as i64)] {
            let sol = mode_series_solve(&d, n, c(1.0, 0.0), 0.5).unwrap();
            let p = leading_exponent(&sol, 1e-3).unwrap();
            assert!((p - n.abs() as f64).abs() < 1e-3, "m = {m}, n = {n}: exponent {p}");
            assert!(sol.coeffs[..n.unsigned_abs() as usize].iter().all(|x| x.norm() == 0.0));
        }
    }
}

#[test]
fn fourier_coefficients_off_the_lattice_vanish() {
    for m in [2u32, 3, 5] {
        let d = data(m);
        let samples = sample_circle(|u| d.mu(u), 0.6, 128);
        let rep = equivariance_fourier_check(&samples, 0.6, m, 24).unwrap();
        assert!(rep.max_spurious < 1e-10, "m = {m}: {}", rep.max_spurious);
        for (j, a) in d.a.iter().enumerate() {
            let n = (j as i64 + 1) * m as i64;
            let got = rep.coefficients.iter().find(|(k, _)| *k == n).unwrap().1;
            assert!((got - a).norm() < 1e-10);
        }
    }
}

#[test]
fn projection_removes_off_lattice_terms() {
    let m = 3u32;
    let phi = |u: Complex64| u.conj().powi(4) + 0.3 * u.conj() + c(0.2, 0.1) * u.conj().powi(2);
    let samples = sample_circle(
        |u| equivariant_projection(&phi, m, u) * 4.0 / (1.0 - u.norm_sqr()).powi(2),
        0.5,
        64,
    );
    // the projection keeps ū^{n−2} with n ≡ 0 mod m: here ū⁴ and ū
    let scaled: Vec<Complex64> = samples.iter().map(|s| s * (1.0 - 0.25f64).powi(2) / 4.0).collect();
    let rep = equivariance_fourier_check(&scaled, 0.5, m, 12).unwrap();
    assert!(rep.max_spurious < 1e-12, "{}", rep.max_spurious);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansion_transforms_with_omega_squared(m in 2u32..8, re in -1.0f64..1.0, im in -1.0f64..1.0, r in 0.01f64..0.9, t in 0.0f64..std::f64::consts::TAU) {
        let d = LocalBeltramiData::new(m, vec![c(re, im), c(im, 0.5)], vec![]).unwrap();
        let u = Complex64::from_polar(r, t);
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / m as f64);
        prop_assert!((d.mu(w * u) - w * w * d.mu(u)).norm() < 1e-12);
    }

    #[test]
    fn recursion_is_linear_in_c0(m in 3u32..8, x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let d = data(m);
        let a = mode_series_solve(&d, 0, c(x, 0.0), 0.5).unwrap();
        let b = mode_series_solve(&d, 0, c(0.0, y), 0.5).unwrap();
        let ab = mode_series_solve(&d, 0, c(x, y), 0.5).unwrap();
        let zero = mode_series_solve(&d, 0, c(0.0, 0.0), 0.5).unwrap();
        for p in 0..20 {
            let lin = a.coeffs[p] + b.coeffs[p] - zero.coeffs[p];
            prop_assert!((ab.coeffs[p] - lin).norm() < 1e-9 * (1.0 + lin.norm()));
        }
    }
}
