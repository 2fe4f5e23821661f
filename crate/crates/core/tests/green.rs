mod common;

use common::test_points;
use num_complex::Complex64;
use orbifold_core::groups::{builtin_orbifold_0_1_222, builtin_punctured_torus};
use orbifold_core::kernels::{laplacian0_fd, GreenFunction, DEFAULT_FD_STEP};
use orbifold_core::Error;

#[test]
fn symmetric_and_invariant_within_tail() {
    for g in [builtin_punctured_torus().unwrap(), builtin_orbifold_0_1_222().unwrap()] {
        let green = GreenFunction::new(&g, 9).unwrap();
        let pts = test_points();
        for pair in pts.windows(2).take(4) {
            let (z, zp) = (pair[0], pair[1]);
            let a = green.eval(z, zp).unwrap();
            let b = green.eval(zp, z).unwrap();
            assert!(
                (a.value - b.value).abs() <= a.tail.max(b.tail),
                "{}: symmetry {a:?} {b:?}",
                g.id
            );
            for gen in &g.generators {
                let m = gen.matrix.to_float();
                let c = green.eval(m.apply(z), zp).unwrap();
                let d = green.eval(z, m.inverse().apply(zp)).unwrap();
                assert!(
                    (a.value - c.value).abs() <= a.tail.max(c.tail),
                    "{}: invariance in z",
                    g.id
                );
                assert!(
                    (a.value - d.value).abs() <= a.tail.max(d.tail),
                    "{}: invariance in z'",
                    g.id
                );
            }
        }
    }
}

#[test]
fn resolvent_equation_away_from_the_orbit() {
    for g in [builtin_punctured_torus().unwrap(), builtin_orbifold_0_1_222().unwrap()] {
        let green = GreenFunction::new(&g, 6).unwrap();
        let zp = Complex64::new(0.5, 3.0);
        for z in test_points() {
            let f = |w: Complex64| green.eval(w, zp).unwrap().value;
            let v = f(z);
            let resid = (laplacian0_fd(f, z, DEFAULT_FD_STEP) + 0.5 * v).abs() / v.abs();
            assert!(resid < 1e-3, "{} at {z}: {resid}", g.id);
        }
    }
}

#[test]
fn collision_with_the_orbit_is_an_error() {
    let g = builtin_orbifold_0_1_222().unwrap();
    let green = GreenFunction::new(&g, 6).unwrap();
    let z = Complex64::new(0.1, 0.9);
    let t2 = g.generators[1].matrix.to_float();
    assert!(matches!(green.eval(z, t2.apply(z)), Err(Error::OrbitCollision { .. })));
}
