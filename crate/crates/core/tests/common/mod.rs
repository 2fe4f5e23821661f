#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub const ZETA3: f64 = 1.2020569031595942;

fn sigma_m3(n: u64) -> f64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as f64).powi(-3)).sum()
}

/// Fourier expansion of the PSL(2,Z) Eisenstein series at s = 2, with
/// K_{3/2}(a) = sqrt(pi/2a) e^{-a} (1 + 1/a).
pub fn e_modular_s2(z: Complex64) -> f64 {
    let (x, y) = (z.re, z.im);
    let zeta4 = PI.powi(4) / 90.0;
    let mut s = 0.0;
    for n in 1..400u64 {
        let a = 2.0 * PI * n as f64 * y;
        if a > 700.0 {
            break;
        }
        let k = (PI / (2.0 * a)).sqrt() * (-a).exp() * (1.0 + 1.0 / a);
        s += 2.0 * (n as f64).powf(1.5) * sigma_m3(n) * k * (2.0 * PI * n as f64 * x).cos();
    }
    y * y + 45.0 * ZETA3 / PI.powi(3) / y + 2.0 * PI * PI * y.sqrt() / zeta4 * s
}

/// Interior test points away from the real axis.
pub fn test_points() -> Vec<Complex64> {
    vec![
        Complex64::new(0.1, 0.9),
        Complex64::new(-0.37, 1.6),
        Complex64::new(0.2, 0.55),
        Complex64::new(0.45, 1.1),
        Complex64::new(-0.12, 0.7),
        Complex64::new(0.31, 2.3),
        Complex64::new(-0.44, 0.95),
        Complex64::new(0.05, 1.35),
        Complex64::new(0.27, 0.8),
        Complex64::new(-0.2, 1.9),
    ]
}
