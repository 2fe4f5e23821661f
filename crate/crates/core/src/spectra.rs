//! Length spectra and truncated Selberg zeta products.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::groups::{primitive_hyperbolic_classes, ConjugacyClassRecord, PresentedGroup};
use crate::sum::CompensatedSum;
use crate::{Error, Result};

pub const DEFAULT_I_MAX: usize = 30;

/// Primitive classes sharing a norm and a character value.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    /// `|tr γ|`, which determines the norm exactly.
    pub trace: i128,
    pub norm: f64,
    pub length: f64,
    pub multiplicity: usize,
    pub chi: Option<i8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    pub group_id: String,
    pub n_max: f64,
    /// Ascending in norm, then character (−1 before +1).
    pub entries: Vec<SpectrumEntry>,
}

impl LengthSpectrum {
    pub fn from_classes(group_id: &str, n_max: f64, classes: &[ConjugacyClassRecord]) -> Self {
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let mut keyed: Vec<(i128, Option<i8>, f64, f64)> = classes
            .iter()
            .filter(|c| c.primitive && c.norm <= n_max)
            .map(|c| (c.trace, c.chi, c.norm, c.length))
            .collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        for (trace, chi, norm, length) in keyed {
            match entries.last_mut() {
                Some(e) if e.trace == trace && e.chi == chi => e.multiplicity += 1,
                _ => entries.push(SpectrumEntry {
                    trace,
                    norm,
                    length,
                    multiplicity: 1,
                    chi,
                }),
            }
        }
        Self {
            group_id: group_id.into(),
            n_max,
            entries,
        }
    }

    /// Same spectrum with every character value replaced by `+1`.
    pub fn with_trivial_character(&self) -> Self {
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for e in &self.entries {
            match entries.last_mut() {
                Some(last) if last.trace == e.trace => last.multiplicity += e.multiplicity,
                _ => entries.push(SpectrumEntry {
                    chi: Some(1),
                    ..e.clone()
                }),
            }
        }
        Self {
            group_id: self.group_id.clone(),
            n_max: self.n_max,
            entries,
        }
    }

    /// Entries with `N ≤ n_max`.
    pub fn truncated(&self, n_max: f64) -> Self {
        Self {
            group_id: self.group_id.clone(),
            n_max,
            entries: self.entries.iter().filter(|e| e.norm <= n_max).cloned().collect(),
        }
    }

    pub fn class_count(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

pub fn length_spectrum(g: &PresentedGroup, n_max: f64) -> Result<LengthSpectrum> {
    let classes = primitive_hyperbolic_classes(g, n_max)?;
    Ok(LengthSpectrum::from_classes(&g.id, n_max, &classes))
}

/// A truncated sum or product with its truncation parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSumResult {
    pub value: f64,
    /// `log value` when the accumulation was done in the log domain.
    pub log_value: Option<f64>,
    pub n_max: Option<f64>,
    pub i_max: Option<usize>,
    /// Word-ball radius for kernel sums.
    pub radius: Option<usize>,
    pub terms: usize,
    /// Empirical truncation error estimate.
    pub tail: f64,
}

fn log_zeta(spec: &LengthSpectrum, s: f64, i_max: usize) -> (f64, usize) {
    let mut acc = CompensatedSum::new();
    let mut terms = 0;
    for e in &spec.entries {
        let chi = e.chi.unwrap_or(1) as f64;
        let mut per_class = CompensatedSum::new();
        for i in 0..=i_max {
            per_class.add(libm::log1p(-chi * libm::pow(e.norm, -s - i as f64)));
        }
        acc.add(e.multiplicity as f64 * per_class.value());
        terms += e.multiplicity * (i_max + 1);
    }
    (acc.value(), terms)
}

/// `Z(s) = Π_γ Π_{i ≤ I_max} (1 − χ(γ) N(γ)^{−s−i})` over the spectrum,
/// accumulated as a compensated sum of logarithms in ascending norm. The
/// tail is `|log Z(N_max) − log Z(N_max/2)|`.
pub fn selberg_zeta_truncated(spec: &LengthSpectrum, s: f64, i_max: usize) -> Result<TruncatedSumResult> {
    if !(s > 1.0) {
        return Err(Error::InvalidParameter(format!("s must exceed 1, got {s}")));
    }
    let (log_value, terms) = log_zeta(spec, s, i_max);
    let (half, _) = log_zeta(&spec.truncated(spec.n_max / 2.0), s, i_max);
    Ok(TruncatedSumResult {
        value: libm::exp(log_value),
        log_value: Some(log_value),
        n_max: Some(spec.n_max),
        i_max: Some(i_max),
        radius: None,
        terms,
        tail: (log_value - half).abs(),
    })
}

/// `det Δ₋ₖ = Z(k + 1)` with trivial character, for `k ≥ 1`.
pub fn det_delta(g: &PresentedGroup, k: i64, n_max: f64, i_max: usize) -> Result<TruncatedSumResult> {
    if k == 0 {
        return Err(Error::RequiresDerivativeAtOne);
    }
    if k < 0 {
        return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
    }
    let spec = length_spectrum(g, n_max)?.with_trivial_character();
    selberg_zeta_truncated(&spec, (k + 1) as f64, i_max)
}

/// Both sides of `Z(s, Γ′, 1) = Z(s, Γ, 1) · Z(s, Γ, χ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationReport {
    pub s: f64,
    pub n_max: f64,
    pub i_max: usize,
    pub lhs: TruncatedSumResult,
    pub rhs_trivial: TruncatedSumResult,
    pub rhs_sign: TruncatedSumResult,
    pub rhs: f64,
    /// `|lhs / rhs − 1|`.
    pub discrepancy: f64,
    /// Largest tail of the three factors.
    pub tail: f64,
    /// `|lhs / Z(s, Γ, 1)² − 1|`: the identity with χ replaced by 1.
    pub control_discrepancy: f64,
}

/// Evaluates the index-two factorisation with the subgroup's spectrum and
/// the parent's spectrum enumerated independently.
pub fn factorization_check(
    sub: &PresentedGroup,
    parent: &PresentedGroup,
    s: f64,
    n_max: f64,
    i_max: usize,
) -> Result<FactorizationReport> {
    let sub_spec = length_spectrum(sub, n_max)?.with_trivial_character();
    let parent_spec = length_spectrum(parent, n_max)?;
    if parent_spec.entries.iter().any(|e| e.chi.is_none()) {
        return Err(Error::NoCharacter(parent.id.clone()));
    }
    factorization_from_spectra(&sub_spec, &parent_spec, s, i_max)
}

pub fn factorization_from_spectra(
    sub_spec: &LengthSpectrum,
    parent_spec: &LengthSpectrum,
    s: f64,
    i_max: usize,
) -> Result<FactorizationReport> {
    let lhs = selberg_zeta_truncated(sub_spec, s, i_max)?;
    let rhs_trivial = selberg_zeta_truncated(&parent_spec.with_trivial_character(), s, i_max)?;
    let rhs_sign = selberg_zeta_truncated(parent_spec, s, i_max)?;
    let (ll, lt, ls) = (
        lhs.log_value.unwrap(),
        rhs_trivial.log_value.unwrap(),
        rhs_sign.log_value.unwrap(),
    );
    Ok(FactorizationReport {
        s,
        n_max: sub_spec.n_max,
        i_max,
        rhs: libm::exp(lt + ls),
        discrepancy: libm::expm1(ll - lt - ls).abs(),
        tail: lhs.tail.max(rhs_trivial.tail).max(rhs_sign.tail),
        control_discrepancy: libm::expm1(ll - 2.0 * lt).abs(),
        lhs,
        rhs_trivial,
        rhs_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin_orbifold_0_1_222, builtin_punctured_torus};
    use alloc::vec;

    fn single(norm: f64, chi: i8) -> LengthSpectrum {
        LengthSpectrum {
            group_id: "test".into(),
            n_max: norm * 4.0,
            entries: vec![SpectrumEntry {
                trace: 0,
                norm,
                length: norm.ln(),
                multiplicity: 1,
                chi: Some(chi),
            }],
        }
    }

    #[test]
    fn empty_product_is_one() {
        let spec = LengthSpectrum {
            group_id: "e".into(),
            n_max: 10.0,
            entries: vec![],
        };
        let z = selberg_zeta_truncated(&spec, 2.0, 30).unwrap();
        assert_eq!(z.value, 1.0);
        assert_eq!(z.terms, 0);
    }

    #[test]
    fn single_factor() {
        let z = selberg_zeta_truncated(&single(4.0, 1), 2.0, 0).unwrap();
        assert!((z.value - 0.9375).abs() < 1e-15);
        let z = selberg_zeta_truncated(&single(4.0, -1), 2.0, 0).unwrap();
        assert!((z.value - 1.0625).abs() < 1e-15);
    }

    #[test]
    fn rejects_s_at_most_one() {
        assert!(selberg_zeta_truncated(&single(4.0, 1), 1.0, 0).is_err());
    }

    #[test]
    fn log_domain_matches_direct_product() {
        let g = builtin_orbifold_0_1_222().unwrap();
        let spec = length_spectrum(&g, 8.0).unwrap();
        let i_max = 3;
        let mut direct = 1.0;
        let mut count = 0;
        for e in &spec.entries {
            for _ in 0..e.multiplicity {
                for i in 0..=i_max {
                    direct *= 1.0 - e.chi.unwrap() as f64 * e.norm.powf(-2.0 - i as f64);
                    count += 1;
                }
            }
        }
        assert!(count <= 100 * 4);
        let z = selberg_zeta_truncated(&spec, 2.0, i_max).unwrap();
        assert!((z.value - direct).abs() < 1e-12);
    }

    #[test]
    fn i_max_sensitivity() {
        let g = builtin_punctured_torus().unwrap();
        let spec = length_spectrum(&g, 10.0).unwrap();
        let a = selberg_zeta_truncated(&spec, 2.0, 40).unwrap().log_value.unwrap();
        let b = selberg_zeta_truncated(&spec, 2.0, 60).unwrap().log_value.unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn smallest_norm_multiplicity() {
        let g = builtin_punctured_torus().unwrap();
        let spec = length_spectrum(&g, 3.0).unwrap();
        assert_eq!(spec.entries.len(), 1);
        assert!((spec.entries[0].norm - 2.618033988749895).abs() < 1e-12);
        assert!(spec.entries[0].multiplicity >= 6);
    }

    #[test]
    fn character_partition_sums_to_blind_count() {
        let g = builtin_orbifold_0_1_222().unwrap();
        let spec = length_spectrum(&g, 9.0).unwrap();
        let blind = spec.with_trivial_character();
        assert_eq!(spec.class_count(), blind.class_count());
        for b in &blind.entries {
            let split: usize = spec
                .entries
                .iter()
                .filter(|e| e.trace == b.trace)
                .map(|e| e.multiplicity)
                .sum();
            assert_eq!(split, b.multiplicity);
        }
    }

    #[test]
    fn det_delta_contract() {
        let g = builtin_punctured_torus().unwrap();
        assert_eq!(det_delta(&g, 0, 7.0, 30), Err(Error::RequiresDerivativeAtOne));
        let spec = length_spectrum(&g, 7.0).unwrap();
        let z2 = selberg_zeta_truncated(&spec, 2.0, 30).unwrap();
        assert_eq!(det_delta(&g, 1, 7.0, 30).unwrap().value, z2.value);
        let z3 = selberg_zeta_truncated(&spec, 3.0, 30).unwrap();
        assert_eq!(det_delta(&g, 2, 7.0, 30).unwrap().value, z3.value);
    }
}
