use core::f64::consts::PI;

use crate::{Error, Result};

/// `Q₁(x) = (x/2) log((x+1)/(x−1)) − 1` given `t = x − 1 > 0`.
///
/// Near the diagonal the logarithm is formed from `t` directly; for
/// `x ≥ 2` the series `Σ_{k≥1} x^{−2k}/(2k+1)` avoids the cancellation.
pub fn legendre_q1_from_t(t: f64) -> f64 {
    let x = 1.0 + t;
    if t < 1.0 {
        0.5 * x * libm::log1p(2.0 / t) - 1.0
    } else {
        series_q1(1.0 / x)
    }
}

fn series_q1(u: f64) -> f64 {
    let u2 = u * u;
    let mut term = u2;
    let mut sum: f64 = 0.0;
    let mut k = 1.0;
    while term > 1e-18 * sum.max(f64::MIN_POSITIVE) {
        sum += term / (2.0 * k + 1.0);
        term *= u2;
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    sum
}

pub fn legendre_q1(x: f64) -> f64 {
    legendre_q1_from_t(x - 1.0)
}

/// The free resolvent kernel of `Δ₀ + ½` at geodesic distance `d`:
/// `(2/π) Q₁(cosh d)`.
pub fn free_resolvent_s2(d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "distance must be positive, got {d}"
        )));
    }
    if d > 20.0 {
        // sech d without overflow
        let e = libm::exp(-d);
        return Ok(2.0 / PI * series_q1(2.0 * e / (1.0 + e * e)));
    }
    // cosh d − 1 = 2 sinh²(d/2)
    let s = libm::sinh(0.5 * d);
    Ok(2.0 / PI * legendre_q1_from_t(2.0 * s * s))
}

/// The same kernel as a function of `t = cosh d − 1`.
#[inline]
pub fn free_resolvent_from_t(t: f64) -> f64 {
    2.0 / PI * legendre_q1_from_t(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_distance_asymptotics() {
        for d in [10.0f64, 12.0] {
            let v = free_resolvent_s2(d).unwrap();
            let asym = 2.0 / PI * (4.0 / 3.0) * (-2.0 * d).exp();
            assert!((v / asym - 1.0).abs() < 1e-7, "{d}: {v} vs {asym}");
        }
    }

    #[test]
    fn branches_agree() {
        for t in [0.5, 0.999, 1.0, 1.001, 3.0] {
            let x: f64 = 1.0 + t;
            let closed = 0.5 * x * ((x + 1.0) / (x - 1.0)).ln() - 1.0;
            assert!((legendre_q1_from_t(t) - closed).abs() < 1e-14);
        }
        let d = 20.0f64;
        let a = free_resolvent_s2(d * (1.0 - 1e-15)).unwrap();
        let b = free_resolvent_s2(d * (1.0 + 1e-15)).unwrap();
        assert!((a / b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positive_and_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 1..2000 {
            let d = i as f64 * 0.02;
            let v = free_resolvent_s2(d).unwrap();
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
    }

    #[test]
    fn logarithmic_singularity() {
        for d in [1e-6, 1e-4, 1e-2] {
            let v = free_resolvent_s2(d).unwrap() + 2.0 / PI * libm::log(d);
            assert!(v.abs() < 1.0);
        }
        assert!(free_resolvent_s2(0.0).is_err());
    }
}
