use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{word_ball, GroupWord, PresentedGroup};
use crate::moebius::{Classification, IntMoebius, Moebius};
use crate::{Error, Result};

/// Bottom rows closer than this count as equal in the collision audit.
pub const ROW_TOL: f64 = 1e-9;

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// `σ` with `σ(∞)` the fixed point of the parabolic `s` and
/// `σ⁻¹ s σ = z ↦ z ± 1`.
pub fn cusp_scaling(s: &IntMoebius) -> Result<Moebius> {
    if s.classify() != Classification::Parabolic {
        return Err(Error::Relation(format!("{s} is not parabolic")));
    }
    let [a, _, c, d] = s.entries();
    let (p, q) = if c == 0 {
        (1, 0)
    } else {
        crate::moebius::reduce_projective(a - d, 2 * c)
    };
    // M ∈ SL(2,ℤ) with M(∞) = p/q
    let m = if q == 0 {
        IntMoebius::IDENTITY
    } else {
        let (g, u, v) = ext_gcd(p, q);
        debug_assert_eq!(g.abs(), 1);
        IntMoebius::new(p, -v * g, q, u * g)?
    };
    let t = m.inverse().compose(s)?.compose(&m)?;
    let [ta, tb, tc, _] = t.entries();
    if tc != 0 || ta != 1 {
        return Err(Error::Construction(format!("conjugated parabolic {t} does not fix ∞")));
    }
    let width = libm::sqrt(tb.unsigned_abs() as f64);
    let sigma = m.to_float().compose(&Moebius::new(width, 0.0, 0.0, 1.0 / width)?);
    let check = sigma.inverse().compose(&s.to_float()).compose(&sigma);
    let [ca, cb, cc, cd] = check.entries();
    if (ca - 1.0).abs() > 1e-10 || (cd - 1.0).abs() > 1e-10 || cc.abs() > 1e-10 || (cb.abs() - 1.0).abs() > 1e-10 {
        return Err(Error::Construction(format!("scaling check failed for {s}")));
    }
    Ok(sigma)
}

/// A representative of a coset `⟨S⟩γ`.
#[derive(Debug, Clone)]
pub struct CosetRep {
    pub word: GroupWord,
    pub matrix: IntMoebius,
    /// `σ⁻¹γ`, which sends `z` to the cusp frame.
    pub frame: Moebius,
    /// `γ⁻¹(p)` for the cusp point `p`; two elements lie in the same
    /// coset exactly when these agree.
    pub key: (i128, i128),
}

/// One representative (the shortest word found first) for every coset
/// `⟨S⟩\Γ` meeting the word ball of radius `radius`.
pub fn cusp_coset_reps(g: &PresentedGroup, radius: usize) -> Result<Vec<CosetRep>> {
    let cusp = g.cusp()?;
    let sigma_inv = cusp.scaling.inverse();
    let (p, q) = cusp.fixed_point;
    let ball = word_ball(g, radius)?;
    let mut seen: BTreeMap<(i128, i128), ()> = BTreeMap::new();
    let mut out = Vec::new();
    for (w, m) in ball.elements {
        let key = m.inverse().act_on_rational(p, q)?;
        if seen.insert(key, ()).is_none() {
            out.push(CosetRep {
                word: w,
                matrix: m,
                frame: sigma_inv.compose(&m.to_float()),
                key,
            });
        }
    }
    audit_bottom_rows(&out)?;
    Ok(out)
}

/// Distinct cosets must have bottom rows `(c, d)` of `σ⁻¹γ` that differ
/// (up to sign) by more than [`ROW_TOL`].
fn audit_bottom_rows(reps: &[CosetRep]) -> Result<()> {
    let mut rows: Vec<(f64, f64, usize)> = reps
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let [_, _, c, d] = r.frame.entries();
            if c < 0.0 || (c == 0.0 && d < 0.0) {
                (-c, -d, i)
            } else {
                (c, d, i)
            }
        })
        .collect();
    rows.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[j].0 - rows[i].0 > ROW_TOL {
                break;
            }
            if (rows[j].1 - rows[i].1).abs() <= ROW_TOL {
                let (a, b) = (&reps[rows[i].2], &reps[rows[j].2]);
                return Err(Error::CosetCollision(format!(
                    "{} and {} share a bottom row but lie in different cosets",
                    a.matrix, b.matrix
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin_orbifold_0_1_222, builtin_punctured_torus};
    use alloc::collections::BTreeSet;

    #[test]
    fn scaling_conjugates_to_unit_translation() {
        for g in [builtin_punctured_torus().unwrap(), builtin_orbifold_0_1_222().unwrap()] {
            let c = g.cusp().unwrap();
            let t = c.scaling.inverse().compose(&c.parabolic.to_float()).compose(&c.scaling);
            let [a, b, cc, d] = t.entries();
            assert!((a - 1.0).abs() < 1e-10 && (d - 1.0).abs() < 1e-10 && cc.abs() < 1e-10);
            assert!((b.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn coset_reps_properties() {
        for g in [builtin_punctured_torus().unwrap(), builtin_orbifold_0_1_222().unwrap()] {
            let s = g.cusp().unwrap().parabolic;
            let mut prev = 0;
            for l in 0..=6 {
                let reps = cusp_coset_reps(&g, l).unwrap();
                assert!(reps[0].matrix.is_identity());
                assert!(reps.len() >= prev);
                prev = reps.len();
                let mats: BTreeSet<_> = reps.iter().map(|r| r.matrix).collect();
                for r in &reps {
                    let sr = s.compose(&r.matrix).unwrap();
                    assert!(!mats.contains(&sr));
                }
            }
        }
    }

    #[test]
    fn same_coset_same_key_and_row() {
        let g = builtin_punctured_torus().unwrap();
        let c = g.cusp().unwrap();
        let sigma_inv = c.scaling.inverse();
        for r in cusp_coset_reps(&g, 4).unwrap() {
            let sr = c.parabolic.compose(&r.matrix).unwrap();
            assert_eq!(
                sr.inverse().act_on_rational(c.fixed_point.0, c.fixed_point.1).unwrap(),
                r.key
            );
            let f = sigma_inv.compose(&sr.to_float());
            let [_, _, c1, d1] = f.entries();
            let [_, _, c2, d2] = r.frame.entries();
            assert!((c1.abs() - c2.abs()).abs() < 1e-9 && (d1.abs() - d2.abs()).abs() < 1e-9);
        }
    }
}
