//! Resolvent kernels at `s = 2`, Eisenstein series and the automorphic
//! Green function, plus the elliptic degeneration family.
//!
//! Automorphic sums are unfolded along the cusp: `Γ` is split into cosets
//! `⟨S⟩γ` and the sum over each coset is the translation-periodised free
//! kernel `F` evaluated in the cusp frame. The cosets come from a word
//! ball; the truncation tail extrapolates the last two shells of word length.

mod degeneration;
mod eisenstein;
mod fd;
mod free;
mod green;
mod periodized;

pub use degeneration::{fay_prefactor, fay_ratio, tm_family, FayReport};
pub use eisenstein::{eisenstein, Eisenstein};
pub use fd::{laplacian0_fd, DEFAULT_FD_STEP};
pub use free::{free_resolvent_from_t, free_resolvent_s2, legendre_q1, legendre_q1_from_t};
pub use green::{elliptic_kernel, green_function, green_function_word_ball, green_sum_over, GreenFunction, ORBIT_TOL};
pub use periodized::{periodized_kernel, zero_mode};

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::groups::{cusp_coset_reps, CosetRep, PresentedGroup};
use crate::moebius::Moebius;
use crate::spectra::TruncatedSumResult;
use crate::sum::CompensatedSum;
use crate::Result;

/// Coset representatives of `⟨S⟩\Γ` from a word ball, with the cusp
/// scaling map.
#[derive(Debug, Clone)]
pub struct CuspUnfolding {
    pub radius: usize,
    pub reps: Vec<CosetRep>,
    pub sigma: Moebius,
}

impl CuspUnfolding {
    pub fn new(g: &PresentedGroup, radius: usize) -> Result<Self> {
        Ok(Self {
            radius,
            reps: cusp_coset_reps(g, radius)?,
            sigma: g.cusp()?.scaling,
        })
    }

    /// Point in the cusp frame.
    pub fn to_frame(&self, z: Complex64) -> Complex64 {
        self.sigma.inverse().apply(z)
    }

    pub fn from_frame(&self, w: Complex64) -> Complex64 {
        self.sigma.apply(w)
    }

    /// Sums `term(rep)` over all cosets in ascending magnitude; see
    /// [`ascending_sum`] for the tail.
    pub(crate) fn sum<F: FnMut(&CosetRep) -> Result<f64>>(&self, mut term: F) -> Result<TruncatedSumResult> {
        let mut all = Vec::with_capacity(self.reps.len());
        let mut lengths = Vec::with_capacity(self.reps.len());
        for r in &self.reps {
            all.push(term(r)?);
            lengths.push(r.word.len());
        }
        Ok(ascending_sum(all, &lengths, self.radius))
    }
}

/// Compensated sum in ascending magnitude. The tail extrapolates the
/// last two shells of word length, `t₁ = Σ_{L−2 < len ≤ L}` and
/// `t₀ = Σ_{L−4 < len ≤ L−2}`, geometrically: `t₁ / (1 − q)` with
/// `q = t₁/t₀` clamped to `[0, 0.95]` (`t₁` alone when `t₀` is empty).
pub(crate) fn ascending_sum(mut all: Vec<f64>, lengths: &[usize], radius: usize) -> TruncatedSumResult {
    let shell = |lo: usize, hi: usize| {
        let mut v: Vec<f64> = all
            .iter()
            .zip(lengths)
            .filter(|(_, l)| **l > lo && **l <= hi)
            .map(|(t, _)| *t)
            .collect();
        v.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        v.into_iter().collect::<CompensatedSum>().value().abs()
    };
    let t1 = if radius > 0 {
        shell(radius.saturating_sub(2), radius)
    } else {
        0.0
    };
    let t0 = if radius > 2 {
        shell(radius.saturating_sub(4), radius - 2)
    } else {
        0.0
    };
    let tail = if t0 > 0.0 {
        t1 / (1.0 - (t1 / t0).clamp(0.0, 0.95))
    } else {
        t1
    };
    all.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let terms = all.len();
    let value = all.into_iter().collect::<CompensatedSum>().value();
    TruncatedSumResult {
        value,
        log_value: None,
        n_max: None,
        i_max: None,
        radius: Some(radius),
        terms,
        tail,
    }
}
