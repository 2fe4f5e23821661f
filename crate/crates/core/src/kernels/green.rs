use alloc::vec::Vec;

use num_complex::Complex64;

use super::free::free_resolvent_from_t;
use super::periodized::periodized_kernel;
use super::{ascending_sum, CuspUnfolding};
use crate::groups::{word_ball, PresentedGroup};
use crate::moebius::{cosh_distance_minus_one, Moebius};
use crate::spectra::TruncatedSumResult;
use crate::{Error, Result};

/// Smallest admissible distance between `z` and the orbit of `z′`.
pub const ORBIT_TOL: f64 = 1e-6;

fn check_upper(z: Complex64) -> Result<()> {
    if z.im > 0.0 && z.im.is_finite() && z.re.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidPoint(alloc::format!(
            "{z} is not in the upper half-plane"
        )))
    }
}

fn collision(t: f64) -> Result<()> {
    // t = cosh d − 1 ≈ d²/2
    let d = libm::acosh(1.0 + t);
    if d < ORBIT_TOL {
        Err(Error::OrbitCollision { distance: d })
    } else {
        Ok(())
    }
}

/// `G(z, z′) = Σ_{γ∈Γ} Q(z, γz′)` at `s = 2`, evaluated coset by coset.
#[derive(Debug, Clone)]
pub struct GreenFunction {
    pub unfolding: CuspUnfolding,
}

impl GreenFunction {
    pub fn new(g: &PresentedGroup, radius: usize) -> Result<Self> {
        Ok(Self {
            unfolding: CuspUnfolding::new(g, radius)?,
        })
    }

    pub fn eval(&self, z: Complex64, zp: Complex64) -> Result<TruncatedSumResult> {
        check_upper(z)?;
        check_upper(zp)?;
        let u = &self.unfolding;
        self.eval_frame(u.to_frame(z), u.to_frame(zp))
    }

    /// Both points given in the cusp frame.
    pub fn eval_frame(&self, zf: Complex64, wf: Complex64) -> Result<TruncatedSumResult> {
        let u = &self.unfolding;
        let zp = u.from_frame(wf);
        u.sum(|r| {
            let w = r.frame.apply(zp);
            let shift = libm::round(zf.re - w.re);
            collision(cosh_distance_minus_one(zf, w + shift))?;
            Ok(periodized_kernel(zf, w))
        })
    }
}

pub fn green_function(g: &PresentedGroup, z: Complex64, zp: Complex64, radius: usize) -> Result<TruncatedSumResult> {
    GreenFunction::new(g, radius)?.eval(z, zp)
}

/// `Σ Q(z, γz′)` over the given elements, without unfolding.
pub fn green_sum_over<'a, I>(elements: I, z: Complex64, zp: Complex64) -> Result<f64>
where
    I: IntoIterator<Item = &'a Moebius>,
{
    let mut terms = Vec::new();
    for m in elements {
        let t = cosh_distance_minus_one(z, m.apply(zp));
        collision(t)?;
        terms.push(free_resolvent_from_t(t));
    }
    Ok(ascending_sum(terms, &[], 0).value)
}

/// `Σ_{γ in ball(L)} Q(z, γz′)`: the sum over the word ball itself.
pub fn green_function_word_ball(
    g: &PresentedGroup,
    z: Complex64,
    zp: Complex64,
    radius: usize,
) -> Result<TruncatedSumResult> {
    check_upper(z)?;
    check_upper(zp)?;
    let ball = word_ball(g, radius)?;
    let mut all = Vec::with_capacity(ball.len());
    let mut lengths = Vec::with_capacity(ball.len());
    for (w, m) in &ball.elements {
        let t = cosh_distance_minus_one(z, m.to_float().apply(zp));
        collision(t)?;
        all.push(free_resolvent_from_t(t));
        lengths.push(w.len());
    }
    Ok(ascending_sum(all, &lengths, radius))
}

/// `G(z_j, z)` for the `j`-th cone point `z_j`: the weight of the elliptic
/// pairing at that cone point.
pub fn elliptic_kernel(
    green: &GreenFunction,
    g: &PresentedGroup,
    j: usize,
    z: Complex64,
) -> Result<TruncatedSumResult> {
    let pts = g.cone_points();
    let zj = *pts
        .get(j)
        .ok_or_else(|| Error::InvalidParameter(alloc::format!("group {} has no cone point {j}", g.id)))?;
    green.eval(zj, z)
}
