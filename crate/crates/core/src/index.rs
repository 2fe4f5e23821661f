//! Closed-form index arithmetic: Bernoulli weights, root-of-unity sums,
//! first Chern form coefficients, Riemann–Roch dimensions and areas.
//!
//! Coefficients are kept exactly: the WP coefficient as a rational
//! multiple of `1/π²`, elliptic coefficients as rational multiples of
//! `1/π`, the cusp coefficient as a rational.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::groups::Signature;
use crate::{Error, Result};

type Q = Ratio<i64>;

fn to_f64(r: Q) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn bernoulli2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

pub fn bernoulli2_exact(x: Q) -> Q {
    x * x - x + Q::new(1, 6)
}

/// Fractional part `{x} ∈ [0, 1)`.
pub fn fract(x: Q) -> Q {
    x - x.floor()
}

/// `{k/m}` exactly.
fn frac_km(k: i64, m: i64) -> Q {
    Q::new(k.rem_euclid(m), m)
}

/// Direct and closed-form evaluations of
/// `Σ_{i=1}^{m−1} ω^{i(k+1)} / (1 − ω^i)²`, `ω = e^{2πi/m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSumReport {
    pub m: u32,
    pub k: i64,
    pub direct: Complex64,
    /// `−(m² − 1)/12 + k̄(m − k̄)/2`.
    pub closed: Q,
    /// `−(m²/2)(B₂({k/m}) − 1/(6m²))`.
    pub bernoulli_form: Q,
    pub difference: f64,
    /// `Σ 1/(1 − ω^i)` and its closed form `(m − 1)/2`.
    pub first_identity: (Complex64, Q),
    /// `Σ ω^i/(1 − ω^i)²` and its closed form `−(m² − 1)/12`.
    pub second_identity: (Complex64, Q),
}

impl RootSumReport {
    pub fn max_error(&self) -> f64 {
        let d = |z: Complex64, q: Q| (z - Complex64::new(to_f64(q), 0.0)).norm();
        self.difference
            .max(d(self.first_identity.0, self.first_identity.1))
            .max(d(self.second_identity.0, self.second_identity.1))
            .max(if self.closed == self.bernoulli_form {
                0.0
            } else {
                f64::INFINITY
            })
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_error() < tol
    }
}

fn root_of_unity(m: i64, e: i64) -> Complex64 {
    let t = 2.0 * PI * e.rem_euclid(m) as f64 / m as f64;
    Complex64::new(libm::cos(t), libm::sin(t))
}

pub fn rootsum_identity(m: u32, k: i64) -> Result<RootSumReport> {
    if m < 2 {
        return Err(Error::InvalidParameter(alloc::format!("m must be at least 2, got {m}")));
    }
    let mi = m as i64;
    let mut direct = Complex64::new(0.0, 0.0);
    let mut first = Complex64::new(0.0, 0.0);
    let mut second = Complex64::new(0.0, 0.0);
    for i in 1..mi {
        let w = root_of_unity(mi, i);
        let denom = (Complex64::new(1.0, 0.0) - w).powi(2);
        direct += root_of_unity(mi, i * (k + 1)) / denom;
        first += Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - w);
        second += w / denom;
    }
    let kb = k.rem_euclid(mi);
    let closed = Q::new(-(mi * mi - 1), 12) + Q::new(kb * (mi - kb), 2);
    let bernoulli_form = -Q::new(mi * mi, 2) * (bernoulli2_exact(frac_km(k, mi)) - Q::new(1, 6 * mi * mi));
    Ok(RootSumReport {
        m,
        k,
        direct,
        difference: (direct - Complex64::new(to_f64(closed), 0.0)).norm(),
        closed,
        bernoulli_form,
        first_identity: (first, Q::new(mi - 1, 2)),
        second_identity: (second, Q::new(-(mi * mi - 1), 12)),
    })
}

/// `−(m/4)(B₂({k/m}) − 1/(6m²))`, the coefficient of `ω^ell/π` at a cone
/// point of order `m`.
pub fn elliptic_coefficient_exact(m: u32, k: i64) -> Q {
    let mi = m as i64;
    -Q::new(mi, 4) * (bernoulli2_exact(frac_km(k, mi)) - Q::new(1, 6 * mi * mi))
}

pub fn elliptic_coefficient(m: u32, k: i64) -> f64 {
    to_f64(elliptic_coefficient_exact(m, k)) / PI
}

/// Coefficients of `ω_WP`, `ω_cusp` and each `ω_j^ell` in the first Chern
/// form of the determinant bundle of weight `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernCoefficients {
    pub k: i64,
    pub signature: Signature,
    /// WP coefficient times `π²`.
    pub wp_exact: Q,
    pub cusp_exact: Q,
    /// Elliptic coefficients times `π`, one per cone point.
    pub ell_exact: Vec<Q>,
    pub wp: f64,
    pub cusp: f64,
    pub ell: Vec<f64>,
}

impl ChernCoefficients {
    /// Exact equality of all coefficients (ignores `k`).
    pub fn same_coefficients(&self, o: &ChernCoefficients) -> bool {
        self.wp_exact == o.wp_exact && self.cusp_exact == o.cusp_exact && self.ell_exact == o.ell_exact
    }
}

/// For `k ≥ 1` this is the bundle `λₖ`; for `k ≤ 0` it is `λ₋|k|`, whose
/// coefficients use `(6k² + 6k + 1)/12π²` and `B₂({|k|/m})`.
pub fn chern_coefficients(sig: &Signature, k: i64) -> ChernCoefficients {
    let (wp_exact, shift) = if k >= 1 {
        (Q::new(6 * k * k - 6 * k + 1, 12), k - 1)
    } else {
        let a = -k;
        (Q::new(6 * a * a + 6 * a + 1, 12), a)
    };
    let ell_exact: Vec<Q> = sig
        .orders()
        .iter()
        .map(|&m| elliptic_coefficient_exact(m, shift))
        .collect();
    let cusp_exact = Q::new(-1, 9);
    ChernCoefficients {
        k,
        signature: sig.clone(),
        wp: to_f64(wp_exact) / (PI * PI),
        cusp: to_f64(cusp_exact),
        ell: ell_exact.iter().map(|q| to_f64(*q) / PI).collect(),
        wp_exact,
        cusp_exact,
        ell_exact,
    }
}

/// `dim Ω^{k,0}` from the orbifold Riemann–Roch formula.
pub fn dim_omega_k(sig: &Signature, k: i64) -> i64 {
    let g = sig.genus() as i64;
    let n = sig.cusps() as i64;
    match k {
        k if k > 1 => {
            let cone: i64 = sig
                .orders()
                .iter()
                .map(|&m| {
                    (Q::from_integer(k) * (Q::one() - Q::new(1, m as i64)))
                        .floor()
                        .to_integer()
                })
                .sum();
            (2 * k - 1) * (g - 1) + (k - 1) * n + cone
        }
        1 => g,
        0 => 1,
        _ => 0,
    }
}

/// `3g − 3 + n + l`.
pub fn teichmuller_dimension(sig: &Signature) -> i64 {
    3 * sig.genus() as i64 - 3 + sig.cusps() as i64 + sig.cone_points() as i64
}

pub fn area(sig: &Signature) -> f64 {
    sig.area()
}

/// Comparison of `2 c₁(λₖ)` on the (0;1;2,2,2) orbifold with `c₁(λ′ₖ)` on
/// its (1;1) double cover, using `ω′_WP = 2ω_WP` and `ω′_cusp = 2ω_cusp`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverRelationReport {
    pub k: i64,
    /// `2·wp − 2·wp′` (times `π²`).
    pub wp_residual: Q,
    /// `2·cusp − 2·cusp′`.
    pub cusp_residual: Q,
    /// Per-cone-point elliptic coefficient of the difference (times `π`).
    pub ell_residual: Vec<Q>,
    /// `(−1)^k/8`.
    pub expected_ell: Q,
}

impl CoverRelationReport {
    pub fn holds(&self) -> bool {
        self.wp_residual.is_zero()
            && self.cusp_residual.is_zero()
            && self.ell_residual.iter().all(|e| *e == self.expected_ell)
    }
}

pub fn example_0_1_222_relations(k: i64) -> Result<CoverRelationReport> {
    if k < 1 {
        return Err(Error::InvalidParameter(alloc::format!("k must be positive, got {k}")));
    }
    let base = chern_coefficients(&Signature::new(0, 1, alloc::vec![2, 2, 2])?, k);
    let cover = chern_coefficients(&Signature::new(1, 1, alloc::vec![])?, k);
    let two = Q::from_integer(2);
    Ok(CoverRelationReport {
        k,
        wp_residual: two * base.wp_exact - two * cover.wp_exact,
        cusp_residual: two * base.cusp_exact - two * cover.cusp_exact,
        ell_residual: base.ell_exact.iter().map(|e| two * *e).collect(),
        expected_ell: if k % 2 == 0 { Q::new(1, 8) } else { Q::new(-1, 8) },
    })
}
