//! Explicit Fuchsian groups, word balls, conjugacy classes and cusp cosets.
//!
//! Groups are given by integer generator matrices plus a presentation tag:
//! a free group of rank two (the punctured torus group) or a free product of
//! order-two groups (the (0;1;2,2,2) orbifold group). Elements are
//! deduplicated exactly by their sign-canonical integer matrices, and
//! conjugacy is decided on cyclically reduced words, which is exact for both
//! presentations.

mod ball;
mod builtin;
mod classes;
mod cusp;
pub mod modular;
mod signature;
mod word;

pub use ball::{no_short_relator, word_ball, WordBall, WordDictionary};
pub use builtin::{builtin_orbifold_0_1_222, builtin_punctured_torus, solve_inverting_involution};
pub use classes::{classes_by_word_length, primitive_hyperbolic_classes, ClassEnumeration, ConjugacyClassRecord};
pub use cusp::{cusp_coset_reps, cusp_scaling, CosetRep};
pub use signature::Signature;
pub use word::{GroupWord, Letter};

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::moebius::{IntMoebius, Moebius};
use crate::{Error, Result};

/// Abstract presentation of the group on its generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Presentation {
    /// Free group on two generators `A`, `B`.
    FreeRank2,
    /// Free product of three groups of order two, generated by `T1, T2, T3`.
    FreeProductOfInvolutions,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        match self {
            Presentation::FreeRank2 => 2,
            Presentation::FreeProductOfInvolutions => 3,
        }
    }

    /// Formal inverse of a letter (involutions are their own inverse).
    pub fn inverse(&self, l: Letter) -> Letter {
        match self {
            Presentation::FreeRank2 => Letter {
                generator: l.generator,
                inverse: !l.inverse,
            },
            Presentation::FreeProductOfInvolutions => Letter {
                generator: l.generator,
                inverse: false,
            },
        }
    }

    /// All letters usable in reduced words.
    pub fn alphabet(&self) -> Vec<Letter> {
        match self {
            Presentation::FreeRank2 => (0..2)
                .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
                .collect(),
            Presentation::FreeProductOfInvolutions => (0..3).map(|g| Letter::new(g, false)).collect(),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Presentation::FreeRank2 => "free-rank-2",
            Presentation::FreeProductOfInvolutions => "involutions-3",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "free-rank-2" => Some(Presentation::FreeRank2),
            "involutions-3" => Some(Presentation::FreeProductOfInvolutions),
            _ => None,
        }
    }
}

/// A named generator matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub name: String,
    pub matrix: IntMoebius,
}

/// The distinguished cusp of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct CuspData {
    /// Primitive parabolic generator `S` of the cusp stabiliser.
    pub parabolic: IntMoebius,
    /// `S` as a word in the generators.
    pub word: GroupWord,
    /// Fixed point of `S` as a reduced pair `(p, q)`, `q = 0` meaning ∞.
    pub fixed_point: (i128, i128),
    /// `σ` with `σ⁻¹ S σ = z ↦ z ± 1`.
    pub scaling: Moebius,
}

/// Homomorphism to `{±1}` available on the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Character {
    /// `χ(w) = (-1)^{number of letters}` on a free product of involutions.
    LetterParity,
    /// Restriction of the letter-parity character to its kernel.
    Trivial,
}

/// The group as the kernel of `PSL(2,ℤ) → ℤ/6 → ℤ/level`, where the first
/// map is the abelianisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularKernel {
    pub level: u8,
}

/// Index-two inclusion of a subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgroupLink {
    pub subgroup: PresentedGroup,
    /// Representative of the non-trivial coset.
    pub coset_rep: GroupWord,
    /// The subgroup's generators as words in the parent generators.
    pub generator_words: Vec<GroupWord>,
    /// `g` with `g S_parent² g⁻¹ = S_sub^{±1}`, as a parent word.
    pub cusp_conjugator: Option<GroupWord>,
}

/// A finitely presented Fuchsian group with integer generators.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentedGroup {
    pub id: String,
    pub signature: Signature,
    pub presentation: Presentation,
    pub generators: Vec<Generator>,
    pub cusp: Option<CuspData>,
    pub character: Option<Character>,
    pub modular: Option<ModularKernel>,
    pub subgroup: Option<Box<SubgroupLink>>,
}

impl PresentedGroup {
    /// Assembles a group from user-supplied generators, running the
    /// relation checks and the short-relator scan.
    pub fn from_generators(
        id: &str,
        signature: Signature,
        presentation: Presentation,
        generators: Vec<Generator>,
        cusp_parabolic: Option<IntMoebius>,
        relator_scan_length: usize,
    ) -> Result<Self> {
        if generators.len() != presentation.generator_count() {
            return Err(Error::Relation(format!(
                "{} needs {} generators, got {}",
                presentation.tag(),
                presentation.generator_count(),
                generators.len()
            )));
        }
        let mut group = PresentedGroup {
            id: id.into(),
            signature,
            presentation,
            generators,
            cusp: None,
            character: match presentation {
                Presentation::FreeProductOfInvolutions => Some(Character::LetterParity),
                Presentation::FreeRank2 => None,
            },
            modular: None,
            subgroup: None,
        };
        group.check_relations()?;
        no_short_relator(&group, relator_scan_length)?;
        if let Some(s) = cusp_parabolic {
            group.cusp = Some(group.cusp_data_for(s)?);
        }
        Ok(group)
    }

    pub fn generator(&self, l: Letter) -> IntMoebius {
        let m = self.generators[l.generator as usize].matrix;
        if l.inverse {
            m.inverse()
        } else {
            m
        }
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let name = &self.generators[l.generator as usize].name;
        if l.inverse {
            format!("{name}^-1")
        } else {
            name.clone()
        }
    }

    /// Dot-separated word text, e.g. `A.B.A^-1.B^-1`.
    pub fn format_word(&self, w: &GroupWord) -> String {
        let parts: Vec<String> = w.letters().iter().map(|l| self.letter_name(*l)).collect();
        if parts.is_empty() {
            "I".into()
        } else {
            parts.join(".")
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let text = text.trim();
        if text.is_empty() || text == "I" {
            return Ok(GroupWord::empty());
        }
        let mut letters = Vec::new();
        for tok in text.split('.') {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let g = self
                .generators
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown generator {name:?}")))?;
            letters.push(Letter::new(g as u8, inverse));
        }
        Ok(GroupWord::from_letters(letters).reduced(self.presentation))
    }

    /// Product of the generator matrices along the word.
    pub fn word_matrix(&self, w: &GroupWord) -> Result<IntMoebius> {
        w.letters()
            .iter()
            .try_fold(IntMoebius::IDENTITY, |acc, l| acc.compose(&self.generator(*l)))
    }

    /// Checks the defining relations exactly: `det = 1` is enforced by the
    /// matrix type; involution generators must square to `±I`.
    pub fn check_relations(&self) -> Result<()> {
        if self.presentation == Presentation::FreeProductOfInvolutions {
            for g in &self.generators {
                if !g.matrix.compose(&g.matrix)?.is_identity() || g.matrix.is_identity() {
                    return Err(Error::Relation(format!("{}² ≠ ±I", g.name)));
                }
            }
        }
        Ok(())
    }

    /// `χ(w)` for the sign character.
    pub fn character_chi(&self, w: &GroupWord) -> Result<i8> {
        match self.character {
            Some(Character::LetterParity) => Ok(if w.len() % 2 == 0 { 1 } else { -1 }),
            Some(Character::Trivial) => Ok(1),
            None => Err(Error::NoCharacter(self.id.clone())),
        }
    }

    /// Hyperbolic area `2π (2g - 2 + n + Σ (1 - 1/mᵢ))`.
    pub fn area(&self) -> f64 {
        self.signature.area()
    }

    pub fn cusp(&self) -> Result<&CuspData> {
        self.cusp.as_ref().ok_or(Error::NoCusp)
    }

    /// Builds cusp data for a parabolic element of the group.
    pub fn cusp_data_for(&self, s: IntMoebius) -> Result<CuspData> {
        if s.classify() != crate::Classification::Parabolic {
            return Err(Error::Relation(format!("cusp representative {s} is not parabolic")));
        }
        let dict = WordDictionary::build(self, 10, |m| *m == s)?;
        let word = dict
            .word_of(&s)
            .cloned()
            .ok_or_else(|| Error::Relation(format!("cusp representative {s} not found within word length 10")))?;
        let [a, _, c, d] = s.entries();
        let fixed_point = if c == 0 {
            (1, 0)
        } else {
            crate::moebius::reduce_projective(a - d, 2 * c)
        };
        Ok(CuspData {
            parabolic: s,
            word,
            fixed_point,
            scaling: cusp_scaling(&s)?,
        })
    }

    /// Fixed points in ℍ of the elliptic generators (cone points).
    pub fn cone_points(&self) -> Vec<num_complex::Complex64> {
        self.generators
            .iter()
            .filter(|g| g.matrix.classify() == crate::Classification::Elliptic)
            .filter_map(|g| g.matrix.to_float().fixpoint_elliptic().ok())
            .map(|p| p.to_upper())
            .collect()
    }
}
