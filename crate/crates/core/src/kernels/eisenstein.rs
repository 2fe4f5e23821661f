use num_complex::Complex64;

use super::CuspUnfolding;
use crate::groups::PresentedGroup;
use crate::spectra::TruncatedSumResult;
use crate::{Error, Result};

/// `E(z, s) = Σ_{γ ∈ ⟨S⟩\Γ} Im(σ⁻¹γz)^s` over the cosets of a word ball.
#[derive(Debug, Clone)]
pub struct Eisenstein {
    pub unfolding: CuspUnfolding,
}

impl Eisenstein {
    pub fn new(g: &PresentedGroup, radius: usize) -> Result<Self> {
        Ok(Self {
            unfolding: CuspUnfolding::new(g, radius)?,
        })
    }

    pub fn from_unfolding(unfolding: CuspUnfolding) -> Self {
        Self { unfolding }
    }

    pub fn eval(&self, z: Complex64, s: f64) -> Result<TruncatedSumResult> {
        if !(s > 1.0) {
            return Err(Error::InvalidParameter(alloc::format!("s must exceed 1, got {s}")));
        }
        if !(z.im > 0.0) {
            return Err(Error::InvalidPoint(alloc::format!(
                "{z} is not in the upper half-plane"
            )));
        }
        self.unfolding.sum(|r| Ok(libm::pow(r.frame.im_of_image(z), s)))
    }

    /// `z` given in the cusp frame.
    pub fn eval_frame(&self, w: Complex64, s: f64) -> Result<TruncatedSumResult> {
        self.eval(self.unfolding.from_frame(w), s)
    }
}

pub fn eisenstein(g: &PresentedGroup, z: Complex64, s: f64, radius: usize) -> Result<TruncatedSumResult> {
    Eisenstein::new(g, radius)?.eval(z, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin_punctured_torus;

    #[test]
    fn term_count_matches_cosets() {
        let g = builtin_punctured_torus().unwrap();
        let e = Eisenstein::new(&g, 5).unwrap();
        let r = e.eval(Complex64::new(0.1, 1.0), 2.0).unwrap();
        assert_eq!(r.terms, e.unfolding.reps.len());
        assert!(r.value > 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let g = builtin_punctured_torus().unwrap();
        let e = Eisenstein::new(&g, 2).unwrap();
        assert!(e.eval(Complex64::new(0.0, 1.0), 1.0).is_err());
        assert!(e.eval(Complex64::new(0.0, -1.0), 2.0).is_err());
    }
}
