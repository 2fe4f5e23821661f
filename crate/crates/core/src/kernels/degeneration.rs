use core::f64::consts::PI;

use num_complex::Complex64;

use super::{Eisenstein, GreenFunction};
use crate::moebius::Moebius;
use crate::spectra::TruncatedSumResult;
use crate::{Error, Result};

/// The elliptic element of order `m` fixing `i m/(2π)`:
/// `[[cos θ, (m/2π) sin θ], [−(2π/m) sin θ, cos θ]]`, `θ = 2π/m`.
pub fn tm_family(m: u32) -> Result<Moebius> {
    if m < 2 {
        return Err(Error::InvalidParameter(alloc::format!(
            "order must be at least 2, got {m}"
        )));
    }
    let mf = m as f64;
    let theta = 2.0 * PI / mf;
    let (s, c) = (libm::sin(theta), libm::cos(theta));
    Moebius::normalized(c, mf / (2.0 * PI) * s, -(2.0 * PI / mf) * s, c)
}

/// `4 y^{1−s} / (2s − 1)`.
pub fn fay_prefactor(s: f64, y: f64) -> f64 {
    4.0 * libm::pow(y, 1.0 - s) / (2.0 * s - 1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FayReport {
    pub y: f64,
    pub zp: Complex64,
    pub green: TruncatedSumResult,
    pub eisenstein: TruncatedSumResult,
    /// `(3Y/4) G(iY, z′) / E(z′, 2)`.
    pub ratio: f64,
}

impl FayReport {
    pub fn deviation(&self) -> f64 {
        (self.ratio - 1.0).abs()
    }
}

/// Compares `G(iY, z′)` with its cusp asymptotics `(4/(3Y)) E(z′, 2)`.
/// `z′` and `iY` are cusp-frame coordinates; both sums use the same
/// coset list.
pub fn fay_ratio(green: &GreenFunction, eis: &Eisenstein, zp: Complex64, y: f64) -> Result<FayReport> {
    if !(y > zp.im + 1.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "need Y > Im z' + 1, got Y = {y}, z' = {zp}"
        )));
    }
    let gv = green.eval_frame(Complex64::new(0.0, y), zp)?;
    let ev = eis.eval_frame(zp, 2.0)?;
    Ok(FayReport {
        y,
        zp,
        ratio: gv.value / (fay_prefactor(2.0, y) * ev.value),
        green: gv,
        eisenstein: ev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Classification;

    #[test]
    fn t4_matrix_and_fixpoint() {
        let t = tm_family(4).unwrap();
        let [a, b, c, d] = t.entries();
        assert!(a.abs() < 1e-15 && d.abs() < 1e-15);
        assert!((b - 2.0 / PI).abs() < 1e-15);
        assert!((c + PI / 2.0).abs() < 1e-15);
        let p = t.fixpoint_elliptic().unwrap().to_upper();
        assert!((p - Complex64::new(0.0, 2.0 / PI)).norm() < 1e-12);
    }

    #[test]
    fn order_and_limit() {
        // θ = 2π/m is a rotation by 4π/m, so T_2 = −I
        assert_eq!(tm_family(2).unwrap().classify(), Classification::Identity);
        for m in 2..=60u32 {
            let t = tm_family(m).unwrap();
            if m > 2 {
                assert_eq!(t.classify(), Classification::Elliptic);
            }
            assert!(t.pow(m as i64).approx_eq(&Moebius::IDENTITY, 1e-10));
        }
        let translation = Moebius::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for m in [50u32, 100, 200, 400] {
            let err = tm_family(m).unwrap().max_abs_diff(&translation);
            assert!(err < 10.0 / m as f64 && err < prev);
            prev = err;
        }
    }

    #[test]
    fn prefactor_at_two() {
        for y in [1.0, 6.0, 12.5] {
            assert!((fay_prefactor(2.0, y) - 4.0 / (3.0 * y)).abs() < 1e-15);
        }
    }
}
