//! `F(z, w) = Σ_n Q(z, w + n)`, the free kernel summed over unit
//! translations.

use core::f64::consts::PI;

use num_complex::Complex64;

use super::free::free_resolvent_from_t;
use crate::sum::CompensatedSum;

/// Below this `|Im z − Im w|` the Fourier series is replaced by the
/// direct translate sum.
const DIRECT_GAP: f64 = 2e-3;
/// Fourier terms are kept while `e^{−2πm|Δy|}` exceeds `e^{−FOURIER_EXP}`.
const FOURIER_EXP: f64 = 40.0;

/// `cosh t − sinh t / t`.
fn g(t: f64) -> f64 {
    if t < 0.5 {
        // Σ_{k≥1} 2k t^{2k} / (2k+1)!
        let t2 = t * t;
        let mut term = t2 / 3.0;
        let mut sum = 0.0;
        let mut k = 1.0f64;
        while term > 1e-18 * sum || sum == 0.0 {
            sum += term;
            term *= t2 / (2.0 * k * (2.0 * k + 3.0));
            k += 1.0;
            if term == 0.0 {
                break;
            }
        }
        sum
    } else {
        libm::cosh(t) - libm::sinh(t) / t
    }
}

/// Fourier coefficient `F_m` for `a = 2πm`, `y_lo ≤ y_hi`.
fn mode(a: f64, y_lo: f64, y_hi: f64) -> f64 {
    let t = a * y_lo;
    let tail = 1.0 + 1.0 / (a * y_hi);
    if t < 0.5 {
        4.0 / a * g(t) * libm::exp(-a * y_hi) * tail
    } else {
        // g(t) e^{−a y_hi} with the growing exponential folded in
        let grow = 0.5 * libm::exp(-a * (y_hi - y_lo)) * (1.0 - 1.0 / t);
        let decay = 0.5 * libm::exp(-a * (y_hi + y_lo)) * (1.0 + 1.0 / t);
        4.0 / a * (grow + decay) * tail
    }
}

/// The zero mode `(4/3) y_lo² / y_hi`.
pub fn zero_mode(y: f64, yp: f64) -> f64 {
    let (lo, hi) = if y < yp { (y, yp) } else { (yp, y) };
    4.0 / 3.0 * lo * lo / hi
}

/// `F(z, w)` for points of ℍ, in the frame where the translations are
/// `z ↦ z + n`.
pub fn periodized_kernel(z: Complex64, w: Complex64) -> f64 {
    let gap = (z.im - w.im).abs();
    if gap < DIRECT_GAP {
        return direct_sum(z, w);
    }
    let (lo, hi) = if z.im < w.im { (z.im, w.im) } else { (w.im, z.im) };
    let dx = z.re - w.re;
    let terms = libm::ceil(FOURIER_EXP / (2.0 * PI * gap)) as usize;
    let mut acc = CompensatedSum::new();
    for m in (1..=terms).rev() {
        let a = 2.0 * PI * m as f64;
        acc.add(2.0 * mode(a, lo, hi) * libm::cos(a * dx));
    }
    acc.add(zero_mode(z.im, w.im));
    acc.value()
}

/// `Σ_{|n − n₀| ≤ N} Q(z, w + n)` plus the `n⁻⁴` tail of the far translates.
fn direct_sum(z: Complex64, w: Complex64) -> f64 {
    let yy = z.im * w.im;
    let n_terms = libm::fmax(2000.0, 50.0 * libm::sqrt(yy)) as i64;
    let shift = libm::round(z.re - w.re);
    let dx = z.re - w.re - shift;
    let dy2 = (z.im - w.im) * (z.im - w.im);
    let mut terms: alloc::vec::Vec<f64> = (-n_terms..=n_terms)
        .map(|n| {
            let u = dx - n as f64;
            free_resolvent_from_t((u * u + dy2) / (2.0 * yy))
        })
        .collect();
    terms.sort_by(|a, b| a.total_cmp(b));
    let mut acc: CompensatedSum = terms.into_iter().collect();
    // Q ≈ (8/(3π)) y² y'² / (n − dx)⁴ for large |n|
    let c = 8.0 / (3.0 * PI) * yy * yy;
    let edge = n_terms as f64 + 0.5;
    acc.add(c / 3.0 * (1.0 / libm::pow(edge + dx, 3.0) + 1.0 / libm::pow(edge - dx, 3.0)));
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_series_matches_closed_form() {
        for t in [0.3, 0.45, 0.4999] {
            let closed = libm::cosh(t) - libm::sinh(t) / t;
            assert!((g(t) - closed).abs() < 1e-15, "{t}");
        }
        let t2 = 1e-8;
        assert!((g(1e-4) - (t2 / 3.0 + t2 * t2 / 30.0)).abs() < 1e-23);
    }

    #[test]
    fn fourier_and_direct_sums_agree() {
        let cases = [
            (Complex64::new(0.1, 1.0), Complex64::new(0.4, 1.3)),
            (Complex64::new(0.0, 0.7), Complex64::new(0.25, 0.2)),
            (Complex64::new(0.3, 2.0), Complex64::new(-0.1, 1.99)),
            (Complex64::new(0.45, 0.05), Complex64::new(0.0, 0.06)),
        ];
        for (z, w) in cases {
            let f = {
                let gap = (z.im - w.im).abs();
                let (lo, hi) = if z.im < w.im { (z.im, w.im) } else { (w.im, z.im) };
                let terms = (FOURIER_EXP / (2.0 * PI * gap)).ceil() as usize;
                let mut s = zero_mode(z.im, w.im);
                for m in 1..=terms {
                    let a = 2.0 * PI * m as f64;
                    s += 2.0 * mode(a, lo, hi) * (a * (z.re - w.re)).cos();
                }
                s
            };
            let d = direct_sum(z, w);
            assert!((f - d).abs() < 1e-10 * d.abs().max(1.0), "{z} {w}: {f} vs {d}");
        }
    }

    #[test]
    fn periodic_and_symmetric() {
        let z = Complex64::new(0.2, 0.9);
        let w = Complex64::new(-0.3, 0.4);
        let a = periodized_kernel(z, w);
        assert!((a - periodized_kernel(z + 3.0, w)).abs() < 1e-12);
        assert!((a - periodized_kernel(w, z)).abs() < 1e-12);
    }
}
