//! Möbius transformations of the upper half-plane and the unit disk.
//!
//! Two scalar backends are provided: [`IntMoebius`] carries exact `i128`
//! entries (every built-in group lives here) and [`Moebius`] carries `f64`
//! entries for conjugated or rescaled maps. Both store the matrix in a
//! canonical sign, so `M` and `-M` compare and hash identically.

use alloc::format;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent float methods exist only with std
use num_traits::Float;

use crate::{Error, Result};

/// Tolerance for the determinant, the parabolic test and the identity test
/// of floating maps.
pub const FLOAT_TOL: f64 = 1e-12;

/// Trace trichotomy of a non-trivial element of PSL(2, ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

fn classify_abs_trace(t: f64, tol: f64) -> Classification {
    if (t - 2.0).abs() <= tol {
        Classification::Parabolic
    } else if t < 2.0 {
        Classification::Elliptic
    } else {
        Classification::Hyperbolic
    }
}

/// Norm `N > 1` with `N + 1/N = |tr|`, and `log N`.
///
/// With this normalisation the translation length of the element is
/// `2 log N`; the reported length is `log N` throughout.
pub fn norm_from_trace(trace: f64) -> Result<(f64, f64)> {
    let t = trace.abs();
    if t <= 2.0 {
        return Err(Error::NotHyperbolic { trace: t });
    }
    let n = 0.5 * (t + ((t - 2.0) * (t + 2.0)).sqrt());
    Ok((n, (0.5 * t).acosh()))
}

fn canonical_sign_f(mut e: [f64; 4]) -> [f64; 4] {
    let first = e.iter().copied().find(|x| *x != 0.0).unwrap_or(1.0);
    if first < 0.0 {
        for x in &mut e {
            *x = -*x;
        }
    }
    e
}

/// A floating-point element of PSL(2, ℝ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a map, requiring `|ad - bc - 1| < 1e-12`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det - 1.0).abs().lt(&FLOAT_TOL) || ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(Error::Determinant { det });
        }
        Ok(Self::from_entries_unchecked([a, b, c, d]))
    }

    /// Rescales a matrix of positive determinant to determinant one.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Determinant { det });
        }
        let s = det.sqrt().recip();
        Ok(Self::from_entries_unchecked([a * s, b * s, c * s, d * s]))
    }

    pub(crate) fn from_entries_unchecked(e: [f64; 4]) -> Self {
        let [a, b, c, d] = canonical_sign_f(e);
        Self { a, b, c, d }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn compose(&self, o: &Moebius) -> Moebius {
        Self::from_entries_unchecked([
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        ])
    }

    pub fn inverse(&self) -> Moebius {
        Self::from_entries_unchecked([self.d, -self.b, -self.c, self.a])
    }

    /// `self^n` by repeated squaring; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Moebius {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Moebius::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `self ∘ m ∘ self⁻¹`.
    pub fn conjugate(&self, m: &Moebius) -> Moebius {
        self.compose(m).compose(&self.inverse())
    }

    /// Sign-insensitive entrywise comparison.
    pub fn approx_eq(&self, o: &Moebius, tol: f64) -> bool {
        let close = |s: f64| {
            (self.a - s * o.a).abs() <= tol
                && (self.b - s * o.b).abs() <= tol
                && (self.c - s * o.c).abs() <= tol
                && (self.d - s * o.d).abs() <= tol
        };
        close(1.0) || close(-1.0)
    }

    /// Largest entrywise deviation from `o`, minimised over the sign of `o`.
    pub fn max_abs_diff(&self, o: &Moebius) -> f64 {
        let dev = |s: f64| {
            (self.a - s * o.a)
                .abs()
                .max((self.b - s * o.b).abs())
                .max((self.c - s * o.c).abs())
                .max((self.d - s * o.d).abs())
        };
        dev(1.0).min(dev(-1.0))
    }

    pub fn classify(&self) -> Classification {
        if self.approx_eq(&Moebius::IDENTITY, FLOAT_TOL) {
            return Classification::Identity;
        }
        classify_abs_trace(self.trace().abs(), FLOAT_TOL)
    }

    /// Smallest `m ≤ max_order` with `self^m = ±I`, for elliptic maps.
    pub fn elliptic_order(&self, max_order: u32) -> Option<u32> {
        if self.classify() != Classification::Elliptic {
            return None;
        }
        let turn = (0.5 * self.trace().abs()).acos() / PI;
        (2..=max_order).find(|&m| {
            let x = turn * f64::from(m);
            (x - x.round()).abs() < 1e-9
        })
    }

    pub fn norm_and_length(&self) -> Result<(f64, f64)> {
        if self.classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic {
                trace: self.trace().abs(),
            });
        }
        norm_from_trace(self.trace())
    }

    /// Fixed point in ℍ of an elliptic map.
    pub fn fixpoint_elliptic(&self) -> Result<HyperbolicPoint> {
        if self.classify() != Classification::Elliptic {
            return Err(Error::NotElliptic {
                trace: self.trace().abs(),
            });
        }
        // c z² + (d - a) z - b = 0, c ≠ 0 for elliptic maps
        let disc = (self.d - self.a) * (self.d - self.a) + 4.0 * self.b * self.c;
        let re = (self.a - self.d) / (2.0 * self.c);
        let im = (-disc).sqrt() / (2.0 * self.c.abs());
        HyperbolicPoint::upper(Complex64::new(re, im))
    }

    /// `(a z + b) / (c z + d)` on a raw complex number.
    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    /// Imaginary part of `self(z)` for `z ∈ ℍ`: `Im z / |cz + d|²`.
    #[inline]
    pub fn im_of_image(&self, z: Complex64) -> f64 {
        let den = z * self.c + self.d;
        z.im / den.norm_sqr()
    }

    pub fn act(&self, p: HyperbolicPoint) -> Result<HyperbolicPoint> {
        let z = p.to_upper();
        let den = z * self.c + self.d;
        if den.norm_sqr() == 0.0 {
            return Err(Error::Pole);
        }
        let w = (z * self.a + self.b) / den;
        match p {
            HyperbolicPoint::Upper(_) => HyperbolicPoint::upper(w),
            HyperbolicPoint::Disk(_) => HyperbolicPoint::upper(w).map(|q| HyperbolicPoint::Disk(q.to_disk())),
        }
    }

    /// `cosh d(z, M z)` from the matrix: conjugate `z` to `i`, then take
    /// half the squared Frobenius norm.
    pub fn displacement_cosh(&self, z: Complex64) -> f64 {
        let sy = z.im.sqrt();
        let p = Moebius::from_entries_unchecked([sy, z.re / sy, 0.0, 1.0 / sy]);
        let m = p.inverse().compose(self).compose(&p);
        let [a, b, c, d] = m.entries();
        0.5 * (a * a + b * b + c * c + d * d)
    }
}

/// An exact element of PSL(2, ℤ) ⊂ PSL(2, ℝ), stored in canonical sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMoebius {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

impl IntMoebius {
    pub const IDENTITY: IntMoebius = IntMoebius { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let det = a
            .checked_mul(d)
            .and_then(|ad| b.checked_mul(c).and_then(|bc| ad.checked_sub(bc)))
            .ok_or(Error::Overflow)?;
        if det != 1 {
            return Err(Error::Determinant { det: det as f64 });
        }
        Ok(Self::canonical([a, b, c, d]))
    }

    /// Caller guarantees `det = 1` and canonical sign.
    pub(crate) const fn from_canonical_entries(e: [i128; 4]) -> Self {
        Self {
            a: e[0],
            b: e[1],
            c: e[2],
            d: e[3],
        }
    }

    fn canonical(mut e: [i128; 4]) -> Self {
        if e.iter().copied().find(|x| *x != 0).unwrap_or(1) < 0 {
            for x in &mut e {
                *x = -*x;
            }
        }
        let [a, b, c, d] = e;
        Self { a, b, c, d }
    }

    pub fn entries(&self) -> [i128; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn compose(&self, o: &IntMoebius) -> Result<IntMoebius> {
        let dot = |x: i128, y: i128, u: i128, v: i128| -> Result<i128> {
            x.checked_mul(y)
                .and_then(|p| u.checked_mul(v).and_then(|q| p.checked_add(q)))
                .ok_or(Error::Overflow)
        };
        Ok(Self::canonical([
            dot(self.a, o.a, self.b, o.c)?,
            dot(self.a, o.b, self.b, o.d)?,
            dot(self.c, o.a, self.d, o.c)?,
            dot(self.c, o.b, self.d, o.d)?,
        ]))
    }

    pub fn inverse(&self) -> IntMoebius {
        Self::canonical([self.d, -self.b, -self.c, self.a])
    }

    pub fn pow(&self, n: i64) -> Result<IntMoebius> {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = IntMoebius::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn conjugate(&self, m: &IntMoebius) -> Result<IntMoebius> {
        self.compose(m)?.compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMoebius::IDENTITY
    }

    pub fn classify(&self) -> Classification {
        if self.is_identity() {
            return Classification::Identity;
        }
        match self.trace().abs().cmp(&2) {
            Ordering::Less => Classification::Elliptic,
            Ordering::Equal => Classification::Parabolic,
            Ordering::Greater => Classification::Hyperbolic,
        }
    }

    pub fn norm_and_length(&self) -> Result<(f64, f64)> {
        if self.classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic {
                trace: self.trace().abs() as f64,
            });
        }
        norm_from_trace(self.trace() as f64)
    }

    pub fn to_float(&self) -> Moebius {
        Moebius::from_entries_unchecked([self.a as f64, self.b as f64, self.c as f64, self.d as f64])
    }

    /// Image of the boundary point `p/q` (with `q = 0` meaning ∞) as a
    /// reduced projective pair with non-negative denominator.
    pub fn act_on_rational(&self, p: i128, q: i128) -> Result<(i128, i128)> {
        let num = self
            .a
            .checked_mul(p)
            .zip(self.b.checked_mul(q))
            .and_then(|(x, y)| x.checked_add(y));
        let den = self
            .c
            .checked_mul(p)
            .zip(self.d.checked_mul(q))
            .and_then(|(x, y)| x.checked_add(y));
        let (num, den) = num.zip(den).ok_or(Error::Overflow)?;
        Ok(reduce_projective(num, den))
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Reduced representative of a point of ℙ¹(ℚ).
pub fn reduce_projective(num: i128, den: i128) -> (i128, i128) {
    let g = gcd_i128(num, den);
    let (mut n, mut d) = if g == 0 { (1, 0) } else { (num / g, den / g) };
    if d < 0 || (d == 0 && n < 0) {
        n = -n;
        d = -d;
    }
    (n, d)
}

impl core::fmt::Display for IntMoebius {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A point of the hyperbolic plane in one of its two models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HyperbolicPoint {
    /// `z` with `Im z > 0`.
    Upper(Complex64),
    /// `u` with `|u| < 1`.
    Disk(Complex64),
}

impl HyperbolicPoint {
    pub fn upper(z: Complex64) -> Result<Self> {
        if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(Self::Upper(z))
        } else {
            Err(Error::InvalidPoint(format!("{z} is not in the upper half-plane")))
        }
    }

    pub fn disk(u: Complex64) -> Result<Self> {
        if u.norm_sqr() < 1.0 {
            Ok(Self::Disk(u))
        } else {
            Err(Error::InvalidPoint(format!("{u} is not in the open unit disk")))
        }
    }

    /// Upper half-plane coordinate, via `z = i(1 + u)/(1 - u)` for disk points.
    pub fn to_upper(&self) -> Complex64 {
        match *self {
            Self::Upper(z) => z,
            Self::Disk(u) => Complex64::i() * (Complex64::new(1.0, 0.0) + u) / (Complex64::new(1.0, 0.0) - u),
        }
    }

    /// Disk coordinate, via `u = (z - i)/(z + i)` for half-plane points.
    pub fn to_disk(&self) -> Complex64 {
        match *self {
            Self::Upper(z) => (z - Complex64::i()) / (z + Complex64::i()),
            Self::Disk(u) => u,
        }
    }
}

/// `cosh d(z, w) - 1 = |z - w|² / (2 Im z Im w)` for points of ℍ.
#[inline]
pub fn cosh_distance_minus_one(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm_sqr() / (2.0 * z.im * w.im)
}

/// Hyperbolic distance, computed as `2 asinh(|z - w| / (2 √(y y')))`.
pub fn hyperbolic_distance(p: &HyperbolicPoint, q: &HyperbolicPoint) -> f64 {
    let z = p.to_upper();
    let w = q.to_upper();
    2.0 * ((z - w).norm() / (2.0 * (z.im * w.im).sqrt())).asinh()
}

/// A Möbius map of the unit disk with complex entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl DiskMap {
    pub fn apply(&self, u: Complex64) -> Complex64 {
        (self.a * u + self.b) / (self.c * u + self.d)
    }

    /// If the map fixes 0 and ∞, the multiplier `a/d` of `u ↦ (a/d) u`.
    pub fn rotation_multiplier(&self, tol: f64) -> Option<Complex64> {
        let scale = self.a.norm().max(self.d.norm());
        if self.b.norm() <= tol * scale && self.c.norm() <= tol * scale {
            Some(self.a / self.d)
        } else {
            None
        }
    }
}

/// The isometry `u = (z - z₀)/(z - z̄₀)` from ℍ to 𝔻 sending `z₀` to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CayleyMap {
    z0: Complex64,
}

impl CayleyMap {
    pub fn new(z0: HyperbolicPoint) -> Self {
        Self { z0: z0.to_upper() }
    }

    pub fn base(&self) -> Complex64 {
        self.z0
    }

    pub fn to_disk(&self, z: Complex64) -> Complex64 {
        (z - self.z0) / (z - self.z0.conj())
    }

    pub fn to_upper(&self, u: Complex64) -> Complex64 {
        (self.z0 - self.z0.conj() * u) / (Complex64::new(1.0, 0.0) - u)
    }

    /// The conjugate `C M C⁻¹` acting on the disk.
    pub fn conjugate(&self, m: &Moebius) -> DiskMap {
        let one = Complex64::new(1.0, 0.0);
        let (z0, z0b) = (self.z0, self.z0.conj());
        // C = [[1, -z0], [1, -z0b]], C⁻¹ ∝ [[-z0b, z0], [-1, 1]]
        let [a, b, c, d] = m.entries();
        let ma = [one * a, one * b, one * c, one * d];
        let left = [
            ma[0] - z0 * ma[2],
            ma[1] - z0 * ma[3],
            ma[0] - z0b * ma[2],
            ma[1] - z0b * ma[3],
        ];
        let inv = [-z0b, z0, -one, one];
        let det = z0 - z0b;
        DiskMap {
            a: (left[0] * inv[0] + left[1] * inv[2]) / det,
            b: (left[0] * inv[1] + left[1] * inv[3]) / det,
            c: (left[2] * inv[0] + left[3] * inv[2]) / det,
            d: (left[2] * inv[1] + left[3] * inv[3]) / det,
        }
    }
}
