use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::ball::for_each_reduced_word;
use super::{
    Character, Generator, GroupWord, Letter, ModularKernel, Presentation, PresentedGroup, Signature, SubgroupLink,
};
use crate::moebius::{Classification, IntMoebius};
use crate::{Error, Result};

fn gen(name: &str, m: IntMoebius) -> Generator {
    Generator {
        name: name.to_string(),
        matrix: m,
    }
}

/// The free group `⟨A, B⟩` with `A = [[1,1],[1,2]]`, `B = [[1,-1],[-1,2]]`,
/// signature (1;1). Its only cusp is generated by `S₁ = (ABA⁻¹B⁻¹)⁻¹`.
pub fn builtin_punctured_torus() -> Result<PresentedGroup> {
    let a = IntMoebius::new(1, 1, 1, 2)?;
    let b = IntMoebius::new(1, -1, -1, 2)?;
    let commutator = a.compose(&b)?.compose(&a.inverse())?.compose(&b.inverse())?;
    if commutator.trace().abs() != 2 {
        return Err(Error::Construction(format!("tr[A,B] = {}", commutator.trace())));
    }
    let mut g = PresentedGroup {
        id: "punctured-torus".into(),
        signature: Signature::new(1, 1, vec![])?,
        presentation: Presentation::FreeRank2,
        generators: vec![gen("A", a), gen("B", b)],
        cusp: None,
        character: None,
        modular: Some(ModularKernel { level: 6 }),
        subgroup: None,
    };
    g.check_relations()?;
    g.cusp = Some(g.cusp_data_for(commutator.inverse())?);
    Ok(g)
}

/// Finds the trace-zero integer matrices `E` with `|entries| ≤ bound` and
/// `E X E⁻¹ = X⁻¹` for every `X` in `targets`.
pub fn solve_inverting_involution(targets: &[IntMoebius], bound: i128) -> Result<Vec<IntMoebius>> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                // det = -a² - bc = 1
                if -a * a - b * c != 1 {
                    continue;
                }
                let e = IntMoebius::new(a, b, c, -a)?;
                let mut ok = true;
                for x in targets {
                    ok &= e.conjugate(x)? == x.inverse();
                }
                if ok && !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The free product `⟨T₁, T₂, T₃ | Tᵢ² = I⟩` of signature (0;1;2,2,2)
/// containing the punctured torus group with index two.
pub fn builtin_orbifold_0_1_222() -> Result<PresentedGroup> {
    let mut sub = builtin_punctured_torus()?;
    sub.character = Some(Character::Trivial);
    let a = sub.generators[0].matrix;
    let b = sub.generators[1].matrix;
    let e = *solve_inverting_involution(&[a, b], 3)?
        .first()
        .ok_or_else(|| Error::Construction("no inverting involution found".into()))?;
    let t = [e, a.compose(&e)?, b.compose(&e)?];
    for (i, ti) in t.iter().enumerate() {
        if ti.trace() != 0 {
            return Err(Error::Construction(format!("T{} has trace {}", i + 1, ti.trace())));
        }
    }
    let prod = t[0].compose(&t[1])?.compose(&t[2])?;
    if prod.classify() != Classification::Parabolic {
        return Err(Error::Construction(format!("T1T2T3 = {prod} is not parabolic")));
    }
    let mut g = PresentedGroup {
        id: "orbifold-0-1-222".into(),
        signature: Signature::new(0, 1, vec![2, 2, 2])?,
        presentation: Presentation::FreeProductOfInvolutions,
        generators: vec![gen("T1", t[0]), gen("T2", t[1]), gen("T3", t[2])],
        cusp: None,
        character: Some(Character::LetterParity),
        modular: Some(ModularKernel { level: 3 }),
        subgroup: None,
    };
    g.check_relations()?;
    g.cusp = Some(g.cusp_data_for(prod.inverse())?);

    let t1 = Letter::new(0, false);
    let generator_words = vec![
        GroupWord::from_letters(vec![Letter::new(1, false), t1]),
        GroupWord::from_letters(vec![Letter::new(2, false), t1]),
    ];
    for (w, sg) in generator_words.iter().zip(&sub.generators) {
        if g.word_matrix(w)? != sg.matrix {
            return Err(Error::Construction(format!("{} is not {}", g.format_word(w), sg.name)));
        }
    }
    let cusp_conjugator = find_cusp_conjugator(&g, &sub, 6)?;
    g.subgroup = Some(Box::new(SubgroupLink {
        subgroup: sub,
        coset_rep: GroupWord::from_letters(vec![t1]),
        generator_words,
        cusp_conjugator,
    }));
    Ok(g)
}

/// Shortest `g` with `g S_parent² g⁻¹ = S_sub^{±1}`.
fn find_cusp_conjugator(parent: &PresentedGroup, sub: &PresentedGroup, radius: usize) -> Result<Option<GroupWord>> {
    let s2 = parent.cusp()?.parabolic.pow(2)?;
    let target = sub.cusp()?.parabolic;
    let mut found = None;
    for_each_reduced_word(parent, radius, |w, m| {
        let c = m.conjugate(&s2)?;
        if c == target || c == target.inverse() {
            found = Some(w.clone());
            Ok(ControlFlow::Break(()))
        } else {
            Ok(ControlFlow::Continue(()))
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{no_short_relator, word_ball};
    use num_complex::Complex64;

    #[test]
    fn punctured_torus_commutator() {
        let g = builtin_punctured_torus().unwrap();
        let a = g.generators[0].matrix;
        let b = g.generators[1].matrix;
        let c = a
            .compose(&b)
            .unwrap()
            .compose(&a.inverse())
            .unwrap()
            .compose(&b.inverse())
            .unwrap();
        assert_eq!(c, IntMoebius::new(-1, 0, -6, -1).unwrap());
        assert_eq!(c.trace().abs(), 2);
        assert_eq!(a.compose(&b).unwrap(), IntMoebius::new(0, 1, -1, 3).unwrap());
        let cusp = g.cusp().unwrap();
        assert_eq!(cusp.fixed_point, (0, 1));
        assert_eq!(g.format_word(&cusp.word), "B.A.B^-1.A^-1");
    }

    #[test]
    fn punctured_torus_area() {
        let g = builtin_punctured_torus().unwrap();
        assert!((g.area() - 2.0 * core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn inverting_involution_is_unique_rotation() {
        let a = IntMoebius::new(1, 1, 1, 2).unwrap();
        let b = IntMoebius::new(1, -1, -1, 2).unwrap();
        let sols = solve_inverting_involution(&[a, b], 5).unwrap();
        assert_eq!(sols, vec![IntMoebius::new(0, -1, 1, 0).unwrap()]);
        let e = sols[0];
        assert_eq!(e.conjugate(&a).unwrap(), a.inverse());
        assert_eq!(e.conjugate(&b).unwrap(), b.inverse());
    }

    #[test]
    fn orbifold_relations() {
        let g = builtin_orbifold_0_1_222().unwrap();
        for t in &g.generators {
            assert_eq!(t.matrix.trace(), 0);
            assert!(t.matrix.compose(&t.matrix).unwrap().is_identity());
        }
        let prod = g
            .generators
            .iter()
            .try_fold(IntMoebius::IDENTITY, |acc, t| acc.compose(&t.matrix))
            .unwrap();
        assert_eq!(prod.trace().abs(), 2);
        assert_eq!(prod, IntMoebius::new(-4, -3, 3, 2).unwrap());
        assert_eq!(g.cusp().unwrap().fixed_point, (-1, 1));
        assert!((g.area() - core::f64::consts::PI).abs() < 1e-15);
        let link = g.subgroup.as_ref().unwrap();
        assert_eq!(link.subgroup.area() / g.area(), 2.0);
    }

    #[test]
    fn cusp_conjugator_relates_the_two_cusps() {
        let g = builtin_orbifold_0_1_222().unwrap();
        let link = g.subgroup.as_ref().unwrap();
        let w = link.cusp_conjugator.as_ref().expect("conjugator");
        let m = g.word_matrix(w).unwrap();
        let s0 = g.cusp().unwrap().parabolic;
        let s1 = link.subgroup.cusp().unwrap().parabolic;
        let c = m.conjugate(&s0.pow(2).unwrap()).unwrap();
        assert!(c == s1 || c == s1.inverse());
    }

    #[test]
    fn cone_points() {
        let g = builtin_orbifold_0_1_222().unwrap();
        let pts = g.cone_points();
        let expected = [
            Complex64::new(0.0, 1.0),
            Complex64::new(0.5, 0.5),
            Complex64::new(-0.5, 0.5),
        ];
        assert_eq!(pts.len(), 3);
        for (p, e) in pts.iter().zip(expected) {
            assert!((p - e).norm() < 1e-12, "{p} vs {e}");
        }
    }

    #[test]
    fn small_balls() {
        let g = builtin_punctured_torus().unwrap();
        let sizes: Vec<_> = (0..=3).map(|l| word_ball(&g, l).unwrap()).collect();
        assert_eq!(sizes.iter().map(|b| b.len()).collect::<Vec<_>>(), vec![1, 5, 17, 53]);
        assert!(sizes.iter().all(|b| b.collisions == 0));
        no_short_relator(&g, 8).unwrap();
        let h = builtin_orbifold_0_1_222().unwrap();
        let b = word_ball(&h, 6).unwrap();
        assert_eq!(b.len(), 1 + 3 * (1 + 2 + 4 + 8 + 16 + 32));
        assert_eq!(b.collisions, 0);
    }

    #[test]
    fn index_two_partition() {
        let g = builtin_orbifold_0_1_222().unwrap();
        let ball = word_ball(&g, 8).unwrap();
        let e = g.generators[0].matrix;
        let (mut even, mut odd) = (0, 0);
        for (w, m) in &ball.elements {
            match g.character_chi(w).unwrap() {
                1 => {
                    even += 1;
                    assert_eq!(crate::groups::modular::abelianization(m).unwrap(), 0);
                }
                _ => {
                    odd += 1;
                    let q = m.compose(&e).unwrap();
                    assert_eq!(crate::groups::modular::abelianization(&q).unwrap(), 0);
                }
            }
        }
        assert_eq!(even + odd, ball.len());
        assert_eq!(even, 1 + 3 * (2 + 8 + 32 + 128));
    }

    #[test]
    fn letter_parity_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let g = builtin_orbifold_0_1_222().unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let random_word = |rng: &mut rand::rngs::StdRng| {
            let n = rng.gen_range(0..12);
            GroupWord::from_letters((0..n).map(|_| Letter::new(rng.gen_range(0..3), false)).collect())
                .reduced(g.presentation)
        };
        for _ in 0..100 {
            let w = random_word(&mut rng);
            let v = random_word(&mut rng);
            let wv = w.concat(&v, g.presentation);
            assert_eq!(
                g.character_chi(&wv).unwrap(),
                g.character_chi(&w).unwrap() * g.character_chi(&v).unwrap()
            );
        }
        assert_eq!(g.character_chi(&g.parse_word("T1").unwrap()).unwrap(), -1);
        assert_eq!(g.character_chi(&g.parse_word("T1.T2").unwrap()).unwrap(), 1);
    }
}
