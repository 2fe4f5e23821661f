use num_complex::Complex64;

pub const DEFAULT_FD_STEP: f64 = 1e-3;

/// Five-point approximation of `Δ₀ f = −(y²/4)(f_xx + f_yy)` at `z`.
pub fn laplacian0_fd<F: FnMut(Complex64) -> f64>(mut f: F, z: Complex64, h: f64) -> f64 {
    let c = f(z);
    let sum = f(z + h) + f(z - h) + f(z + Complex64::new(0.0, h)) + f(z - Complex64::new(0.0, h));
    -0.25 * z.im * z.im * (sum - 4.0 * c) / (h * h)
}
