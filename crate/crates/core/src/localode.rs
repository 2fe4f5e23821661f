//! Radial analysis of `(Δ₀ + ½) f = μ ν̄` near a cone point of order `m`,
//! in the disk coordinate `u = r e^{iθ}` centred at the fixed point.
//!
//! With `μ(u) = ((1−|u|²)²/4) Σ_j ā_{jm} ū^{jm−2}` and likewise `ν` with
//! coefficients `b`, the Fourier mode `f_n` solves
//!
//! ```text
//! −(1−r²)² (f″ + f′/r − n² f/r²) + 8 f = (1−r²)⁴ Σ_{(j−i)m = n} ā_{im} b_{jm} r^{(i+j)m−4}
//! ```
//!
//! (the equation multiplied by 16). Writing `f = Σ c_p r^p` gives the
//! three-term recursion
//! `c_{p+2} ((p+2)² − n²) = (8 + 2(p² − n²)) c_p − ((p−2)² − n²) c_{p−2} − s_p`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist only with std
use num_traits::Float;

use crate::ode::DormandPrince;
use crate::{Error, Result};

const MAX_TERMS: usize = 20_000;

/// Truncated local expansions of two Beltrami differentials at a cone
/// point: `a[j-1] = a_{jm}`, `b[j-1] = b_{jm}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBeltramiData {
    pub m: u32,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl LocalBeltramiData {
    pub fn new(m: u32, a: Vec<Complex64>, b: Vec<Complex64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(alloc::format!(
                "cone order must be at least 2, got {m}"
            )));
        }
        Ok(Self { m, a, b })
    }

    fn eval_expansion(&self, coeffs: &[Complex64], u: Complex64) -> Complex64 {
        let ub = u.conj();
        let w = 0.25 * (1.0 - u.norm_sqr()).powi(2);
        let s: Complex64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.conj() * ub.powi(((j as i32) + 1) * self.m as i32 - 2))
            .sum();
        w * s
    }

    pub fn mu(&self, u: Complex64) -> Complex64 {
        self.eval_expansion(&self.a, u)
    }

    pub fn nu(&self, u: Complex64) -> Complex64 {
        self.eval_expansion(&self.b, u)
    }

    /// Source terms `(coefficient, exponent)` of mode `n` before the
    /// `(1−r²)⁴` factor: `ā_{im} b_{jm} r^{(i+j)m−4}` with `(j−i)m = n`.
    pub fn source_terms(&self, n: i64) -> Result<Vec<(Complex64, i64)>> {
        let m = self.m as i64;
        if n.rem_euclid(m) != 0 {
            return Err(Error::ModeNotMultiple { n, m: self.m });
        }
        let shift = n / m;
        let mut out = Vec::new();
        for (i0, a) in self.a.iter().enumerate() {
            let i = i0 as i64 + 1;
            let j = i + shift;
            if j < 1 || j as usize > self.b.len() {
                continue;
            }
            let exponent = (i + j) * m - 4;
            // same exponent written as 2im + n − 4
            if exponent != 2 * i * m + n - 4 {
                return Err(Error::Construction(alloc::format!(
                    "source exponent mismatch for i = {i}, n = {n}"
                )));
            }
            out.push((a.conj() * self.b[j as usize - 1], exponent));
        }
        Ok(out)
    }
}

/// Coefficients `s_p` of `(1−r²)⁴ Σ c r^e`, indexed by `p`.
fn source_series(terms: &[(Complex64, i64)], len: usize) -> Vec<Complex64> {
    const BINOM4: [f64; 5] = [1.0, -4.0, 6.0, -4.0, 1.0];
    let mut s = alloc::vec![Complex64::new(0.0, 0.0); len];
    for &(c, e) in terms {
        for (k, w) in BINOM4.iter().enumerate() {
            let p = e + 2 * k as i64;
            if p >= 0 && (p as usize) < len {
                s[p as usize] += c * *w;
            }
        }
    }
    s
}

/// Regular power-series solution of one Fourier mode.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub m: u32,
    pub n: i64,
    /// `c_p` for `p = 0, 1, …`.
    pub coeffs: Vec<Complex64>,
    source: Vec<(Complex64, i64)>,
}

impl RadialSolution {
    /// `c₀` (for `n = 0`) or the coefficient of `r^{|n|}`.
    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.n.unsigned_abs() as usize]
    }

    pub fn c0(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn c2(&self) -> Complex64 {
        self.coeffs[2]
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::SeriesRadius { r });
        }
        Ok(())
    }

    /// `(f(r), f′(r))`, summing until the terms are negligible.
    pub fn eval_with_derivative(&self, r: f64) -> Result<(Complex64, Complex64)> {
        self.check_radius(r)?;
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = Complex64::new(0.0, 0.0);
        let k = self.n.unsigned_abs() as usize;
        let lead = libm::pow(r, k as f64);
        let mut rp = 1.0;
        for (p, c) in self.coeffs.iter().enumerate() {
            if p > 0 {
                df += *c * (p as f64) * rp;
                rp *= r;
            }
            f += *c * rp;
            // relative to the leading power r^{|n|}
            if p > k + 8 && rp < 1e-18 * lead {
                break;
            }
        }
        Ok((f, df))
    }

    pub fn eval(&self, r: f64) -> Result<Complex64> {
        Ok(self.eval_with_derivative(r)?.0)
    }

    /// The right-hand side of the mode equation at radius `r`.
    pub fn source_at(&self, r: f64) -> Complex64 {
        source_value(&self.source, r)
    }
}

fn terms_for_radius(r_max: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&r_max) {
        return Err(Error::SeriesRadius { r: r_max });
    }
    // the regular solution grows at most like (1−r)^{−1}
    let needed = if r_max == 0.0 {
        8.0
    } else {
        45.0 / -libm::log(r_max) + 8.0
    };
    Ok((libm::ceil(needed) as usize).clamp(16, MAX_TERMS))
}

/// Power-series solution of mode `n` with free coefficient `c_lead`
/// (`c₀` for `n = 0`, the coefficient of `r^{|n|}` otherwise), accurate on
/// `[0, r_max]`.
pub fn mode_series_solve(data: &LocalBeltramiData, n: i64, c_lead: Complex64, r_max: f64) -> Result<RadialSolution> {
    let len = terms_for_radius(r_max)? + 2;
    let source = data.source_terms(n)?;
    let s = source_series(&source, len);
    let k = n.unsigned_abs() as usize;
    if k >= len {
        return Err(Error::InvalidParameter(alloc::format!(
            "mode {n} needs more than {len} terms"
        )));
    }
    let parity = k % 2;
    for (p, sp) in s.iter().enumerate() {
        if p % 2 != parity && sp.norm() > 1e-12 {
            return Err(Error::Construction(alloc::format!(
                "source has a residual at r^{p} of the wrong parity"
            )));
        }
        if p + 2 <= k && sp.norm() > 0.0 {
            return Err(Error::Construction(alloc::format!(
                "source term r^{p} obstructs the regular solution"
            )));
        }
    }
    let n2 = (n * n) as f64;
    let mut c = alloc::vec![Complex64::new(0.0, 0.0); len];
    c[k] = c_lead;
    let mut p = k;
    while p + 2 < len {
        let pf = p as f64;
        let prev = if p >= 2 {
            c[p - 2] * ((pf - 2.0).powi(2) - n2)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let num = c[p] * (8.0 + 2.0 * (pf * pf - n2)) - prev - s[p];
        c[p + 2] = num / ((pf + 2.0).powi(2) - n2);
        p += 2;
    }
    Ok(RadialSolution {
        m: data.m,
        n,
        coeffs: c,
        source,
    })
}

fn source_value(source: &[(Complex64, i64)], r: f64) -> Complex64 {
    let w = (1.0 - r * r).powi(4);
    source
        .iter()
        .map(|(c, e)| *c * libm::pow(r, *e as f64))
        .sum::<Complex64>()
        * w
}

/// `f″ = −f′/r + n² f/r² + (8 f − S(r)) / (1−r²)²` as a real 4-vector system.
fn mode_rhs(n: i64, source: &[(Complex64, i64)]) -> impl Fn(f64, &[f64; 4]) -> [f64; 4] + '_ {
    let n2 = (n * n) as f64;
    move |r: f64, y: &[f64; 4]| {
        let f = Complex64::new(y[0], y[1]);
        let df = Complex64::new(y[2], y[3]);
        let q = (1.0 - r * r).powi(2);
        let d2 = -df / r + f * (n2 / (r * r)) + (f * 8.0 - source_value(source, r)) / q;
        [df.re, df.im, d2.re, d2.im]
    }
}

/// Largest deviation between the series and an adaptive Runge–Kutta
/// integration of the same mode equation started from series data at `r0`,
/// sampled at 32 points of `[r0, r1]`.
pub fn mode_ode_crosscheck(sol: &RadialSolution, r0: f64, r1: f64) -> Result<f64> {
    if r1 > 0.9 {
        return Err(Error::InvalidParameter(alloc::format!("r1 = {r1} exceeds 0.9")));
    }
    if !(0.0 < r0 && r0 < r1) {
        return Err(Error::InvalidParameter(alloc::format!(
            "need 0 < r0 < r1, got {r0}, {r1}"
        )));
    }
    let rhs = mode_rhs(sol.n, &sol.source);
    let (f0, df0) = sol.eval_with_derivative(r0)?;
    let scale = sol.coeffs.iter().take(8).map(|c| c.norm()).fold(1e-300, f64::max);
    let integrator = DormandPrince::new(1e-12, 1e-14 * scale);
    let mut y = [f0.re, f0.im, df0.re, df0.im];
    let mut r = r0;
    let mut dev: f64 = 0.0;
    for i in 1..=32 {
        let next = r0 + (r1 - r0) * i as f64 / 32.0;
        y = integrator.integrate(&rhs, r, y, next)?;
        r = next;
        let f = sol.eval(r)?;
        dev = dev.max((Complex64::new(y[0], y[1]) - f).norm());
    }
    Ok(dev)
}

/// `c₂` of the radial mode `n = 0` obtained without the recursion: the
/// equation is integrated from `r = 10⁻⁸` with `f = c₀`, `f′ = 0`, and
/// `f′/(2r) ≈ c₂ + 2c₄r²` is fitted by least squares on `[10⁻³, 10⁻²]`.
pub fn ode_c2_estimate(data: &LocalBeltramiData, c0: Complex64) -> Result<Complex64> {
    let source = data.source_terms(0)?;
    let rhs = mode_rhs(0, &source);
    let integrator = DormandPrince::new(1e-13, 1e-20);
    let (r_start, r_lo, r_hi, samples) = (1e-8, 1e-3, 1e-2, 24);
    let mut y = integrator.integrate(&rhs, r_start, [c0.re, c0.im, 0.0, 0.0], r_lo)?;
    let mut r = r_lo;
    let (mut s00, mut s01, mut s11) = (0.0, 0.0, 0.0);
    let mut b0 = Complex64::new(0.0, 0.0);
    let mut b1 = Complex64::new(0.0, 0.0);
    for i in 0..samples {
        let next = r_lo + (r_hi - r_lo) * i as f64 / (samples - 1) as f64;
        y = integrator.integrate(&rhs, r, y, next)?;
        r = next;
        let v = Complex64::new(y[2], y[3]) / (2.0 * r);
        let x = r * r;
        s00 += 1.0;
        s01 += x;
        s11 += x * x;
        b0 += v;
        b1 += v * x;
    }
    let det = s00 * s11 - s01 * s01;
    Ok((b0 * s11 - b1 * s01) / det)
}

/// Least-squares fit of `f(r) − c₀ ≈ c₂ r² + d r⁴` on `[r_lo, r_hi]`.
pub fn fit_c2(sol: &RadialSolution, r_lo: f64, r_hi: f64, samples: usize) -> Result<Complex64> {
    let c0 = sol.c0();
    // normal equations for the basis (r², r⁴)
    let (mut s44, mut s46, mut s88) = (0.0, 0.0, 0.0);
    let mut rhs2 = Complex64::new(0.0, 0.0);
    let mut rhs4 = Complex64::new(0.0, 0.0);
    for i in 0..samples {
        let r = r_lo + (r_hi - r_lo) * i as f64 / (samples - 1) as f64;
        let (x2, x4) = (r * r, r * r * r * r);
        let y = sol.eval(r)? - c0;
        s44 += x2 * x2;
        s46 += x2 * x4;
        s88 += x4 * x4;
        rhs2 += y * x2;
        rhs4 += y * x4;
    }
    let det = s44 * s88 - s46 * s46;
    Ok((rhs2 * s88 - rhs4 * s46) / det)
}

/// Local slope `d log|f| / d log r` between `r` and `r/10`.
pub fn leading_exponent(sol: &RadialSolution, r: f64) -> Result<f64> {
    let hi = sol.eval(r)?.norm();
    let lo = sol.eval(r / 10.0)?.norm();
    Ok(libm::log10(hi / lo))
}

/// Discrete Fourier analysis of `μ` on the circle `|u| = r`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivarianceReport {
    pub m: u32,
    /// Recovered `(n, a_n)` for `n − 2` in the resolvable frequency band.
    pub coefficients: Vec<(i64, Complex64)>,
    /// `max |a_n|` over `n ≢ 0 (mod m)`.
    pub max_spurious: f64,
}

/// Recovers `a_n` from samples `μ(r e^{2πik/K})`, `k = 0..K`, using
/// `conj((4/(1−r²)²) μ) = Σ a_n r^{n−2} e^{i(n−2)θ}`.
pub fn equivariance_fourier_check(
    samples: &[Complex64],
    r: f64,
    m: u32,
    max_index: usize,
) -> Result<EquivarianceReport> {
    let k_count = samples.len();
    if k_count < 4 * max_index.max(1) {
        return Err(Error::InsufficientSampling {
            samples: k_count,
            max_index,
        });
    }
    if !(0.0 < r && r < 1.0) {
        return Err(Error::SeriesRadius { r });
    }
    let scale = 4.0 / (1.0 - r * r).powi(2);
    let h: Vec<Complex64> = samples.iter().map(|s| (s * scale).conj()).collect();
    let mut coefficients = Vec::new();
    let mut max_spurious: f64 = 0.0;
    let band = max_index as i64;
    for freq in -band..=band {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, hk) in h.iter().enumerate() {
            let t = -2.0 * PI * (freq * k as i64).rem_euclid(k_count as i64) as f64 / k_count as f64;
            acc += hk * Complex64::new(libm::cos(t), libm::sin(t));
        }
        let n = freq + 2;
        let a_n = acc / (k_count as f64) / libm::pow(r, freq as f64);
        if n.rem_euclid(m as i64) != 0 {
            max_spurious = max_spurious.max(a_n.norm());
        }
        coefficients.push((n, a_n));
    }
    Ok(EquivarianceReport {
        m,
        coefficients,
        max_spurious,
    })
}

/// Samples of `φ` on the circle `|u| = r` at `count` equally spaced angles.
pub fn sample_circle<F: FnMut(Complex64) -> Complex64>(mut phi: F, r: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / count as f64;
            phi(Complex64::new(r * libm::cos(t), r * libm::sin(t)))
        })
        .collect()
}

/// `(Pφ)(u) = (1/m) Σ_j φ(ω^j u) ω^{−2j}`, which satisfies
/// `(Pφ)(ωu) = ω² (Pφ)(u)`, the transformation law of the expansion above.
pub fn equivariant_projection<F: Fn(Complex64) -> Complex64>(phi: &F, m: u32, u: Complex64) -> Complex64 {
    let mf = m as f64;
    (0..m)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / mf;
            let w = Complex64::new(libm::cos(t), libm::sin(t));
            phi(w * u) * w.powi(-2)
        })
        .sum::<Complex64>()
        / mf
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn c2_for_m_greater_than_two() {
        let data = LocalBeltramiData::new(3, vec![c(0.7, -0.2), c(0.1, 0.3)], vec![c(-0.4, 0.5), c(0.2, 0.0)]).unwrap();
        let sol = mode_series_solve(&data, 0, c(1.3, 0.0), 0.5).unwrap();
        assert!((sol.c2() - 2.0 * sol.c0()).norm() < 1e-12);
    }

    #[test]
    fn c2_for_m_two() {
        let a2 = c(0.8, 0.3);
        let b2 = c(-0.5, 0.9);
        let data = LocalBeltramiData::new(2, vec![a2, c(0.1, 0.1)], vec![b2, c(0.0, -0.2)]).unwrap();
        let c0 = c(0.4, 0.0);
        let sol = mode_series_solve(&data, 0, c0, 0.5).unwrap();
        let mu0 = data.mu(c(0.0, 0.0));
        let nubar0 = data.nu(c(0.0, 0.0)).conj();
        assert!((mu0 - a2.conj() / 4.0).norm() < 1e-15);
        assert!((nubar0 - b2 / 4.0).norm() < 1e-15);
        assert!((sol.c2() - (2.0 * c0 - 4.0 * mu0 * nubar0)).norm() < 1e-12);
    }

    #[test]
    fn series_satisfies_equation() {
        let data = LocalBeltramiData::new(3, vec![c(0.5, 0.5), c(-0.3, 0.1)], vec![c(0.2, -0.6), c(0.4, 0.4)]).unwrap();
        for n in [0i64, 3, -3] {
            let sol = mode_series_solve(&data, n, c(0.9, -0.1), 0.8).unwrap();
            let r = 0.4;
            let h = 1e-4;
            let f = |x: f64| sol.eval(x).unwrap();
            let d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
            let d1 = (f(r + h) - f(r - h)) / (2.0 * h);
            let lhs = -(1.0 - r * r).powi(2) / 16.0 * (d2 + d1 / r - f(r) * ((n * n) as f64 / (r * r))) + f(r) / 2.0;
            let rhs = sol.source_at(r) / 16.0;
            assert!((lhs - rhs).norm() < 1e-6, "n = {n}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn rejects_bad_modes_and_radii() {
        let data = LocalBeltramiData::new(3, vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(
            mode_series_solve(&data, 2, c(1.0, 0.0), 0.5),
            Err(Error::ModeNotMultiple { n: 2, m: 3 })
        );
        assert!(matches!(
            mode_series_solve(&data, 0, c(1.0, 0.0), 1.0),
            Err(Error::SeriesRadius { .. })
        ));
        let sol = mode_series_solve(&data, 0, c(1.0, 0.0), 0.5).unwrap();
        assert!(mode_ode_crosscheck(&sol, 0.01, 0.95).is_err());
    }

    #[test]
    fn ode_reproduces_c2() {
        let a = vec![c(0.8, 0.3), c(0.1, 0.1)];
        let b = vec![c(-0.5, 0.9), c(0.0, -0.2)];
        for m in [2, 3, 5] {
            let data = LocalBeltramiData::new(m, a.clone(), b.clone()).unwrap();
            let c0 = c(0.4, -0.2);
            let series = mode_series_solve(&data, 0, c0, 0.5).unwrap().c2();
            let ode = ode_c2_estimate(&data, c0).unwrap();
            assert!((series - ode).norm() < 1e-8, "m = {m}: {series} vs {ode}");
        }
    }

    #[test]
    fn homogeneous_crosscheck() {
        let data = LocalBeltramiData::new(3, vec![], vec![]).unwrap();
        let sol = mode_series_solve(&data, 0, c(1.0, 0.0), 0.5).unwrap();
        assert!(mode_ode_crosscheck(&sol, 0.01, 0.5).unwrap() < 1e-10);
    }

    #[test]
    fn single_mode_fourier() {
        let data = LocalBeltramiData::new(3, vec![c(1.0, 0.0)], vec![]).unwrap();
        let samples = sample_circle(|u| data.mu(u), 0.5, 64);
        let rep = equivariance_fourier_check(&samples, 0.5, 3, 12).unwrap();
        assert!(rep.max_spurious < 1e-10);
        let a3 = rep.coefficients.iter().find(|(n, _)| *n == 3).unwrap().1;
        assert!((a3 - c(1.0, 0.0)).norm() < 1e-12);
        assert!(equivariance_fourier_check(&samples[..20], 0.5, 3, 12).is_err());
    }

    #[test]
    fn expansion_transformation_law() {
        let data = LocalBeltramiData::new(4, vec![c(0.3, 0.2), c(-0.1, 0.5)], vec![]).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 4.0);
        let u = c(0.31, -0.22);
        assert!((data.mu(w * u) - w * w * data.mu(u)).norm() < 1e-14);
        assert_eq!(data.mu(c(0.0, 0.0)), c(0.0, 0.0));
    }
}
