use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::modular::{kernel_classes, SchreierRewriter};
use super::{Character, GroupWord, PresentedGroup};
use crate::moebius::{Classification, IntMoebius};
use crate::{Error, Result};

/// A primitive or non-primitive hyperbolic conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyClassRecord {
    /// Lexicographically least rotation of the cyclically reduced word.
    pub word: GroupWord,
    pub matrix: IntMoebius,
    /// `|tr|`.
    pub trace: i128,
    pub norm: f64,
    pub length: f64,
    pub primitive: bool,
    /// `None` when the group carries no character.
    pub chi: Option<i8>,
    /// Normal form of the inverse class.
    pub inverse_word: GroupWord,
}

impl ConjugacyClassRecord {
    pub fn from_word(g: &PresentedGroup, w: &GroupWord) -> Result<Self> {
        let p = g.presentation;
        let word = w.cyclic_normal_form(p);
        let matrix = g.word_matrix(&word)?;
        if matrix.classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic {
                trace: matrix.trace().abs() as f64,
            });
        }
        let (norm, length) = matrix.norm_and_length()?;
        let chi = match g.character {
            Some(_) => Some(g.character_chi(&word)?),
            None => None,
        };
        Ok(Self {
            inverse_word: word.inverse(p).cyclic_normal_form(p),
            primitive: !word.is_proper_power(),
            trace: matrix.trace().abs(),
            word,
            matrix,
            norm,
            length,
            chi,
        })
    }

    /// `{γ} = {γ⁻¹}`.
    pub fn is_self_inverse(&self) -> bool {
        self.word == self.inverse_word
    }
}

/// Options for [`primitive_hyperbolic_classes`].
#[derive(Debug, Clone, Copy)]
pub struct ClassEnumeration {
    pub n_max: f64,
    /// Longest representative word allowed.
    pub word_cap: usize,
    /// Radius of the word dictionary used to rewrite Schreier generators.
    pub dictionary_radius: usize,
}

impl ClassEnumeration {
    pub const DEFAULT_WORD_CAP: usize = 4096;
    pub const DEFAULT_WORD_LENGTH_CAP: usize = 16;

    pub fn new(n_max: f64) -> Self {
        Self {
            n_max,
            word_cap: Self::DEFAULT_WORD_CAP,
            dictionary_radius: 10,
        }
    }

    pub fn word_cap(mut self, cap: usize) -> Self {
        self.word_cap = cap;
        self
    }

    pub fn run(&self, g: &PresentedGroup) -> Result<Vec<ConjugacyClassRecord>> {
        if !(self.n_max > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "N_max must exceed 1, got {}",
                self.n_max
            )));
        }
        match g.modular {
            Some(m) => modular_route(g, m.level, self),
            None => classes_by_word_length(g, self.n_max, self.word_cap.min(Self::DEFAULT_WORD_LENGTH_CAP)),
        }
    }
}

/// Every primitive hyperbolic class with `N ≤ n_max`, each exactly once,
/// sorted by norm and then normal form. Inverse classes are separate
/// entries.
pub fn primitive_hyperbolic_classes(g: &PresentedGroup, n_max: f64) -> Result<Vec<ConjugacyClassRecord>> {
    ClassEnumeration::new(n_max).run(g)
}

fn sort_records(v: &mut [ConjugacyClassRecord]) {
    v.sort_by(|x, y| x.trace.cmp(&y.trace).then_with(|| x.word.cmp(&y.word)));
}

fn modular_route(g: &PresentedGroup, level: u8, opts: &ClassEnumeration) -> Result<Vec<ConjugacyClassRecord>> {
    for gen in &g.generators {
        if super::modular::abelianization(&gen.matrix)? % level as i64 != 0 {
            return Err(Error::Construction(format!(
                "generator {} is not in the level-{level} kernel",
                gen.name
            )));
        }
    }
    let mut rewriter = SchreierRewriter::new(g, level, opts.dictionary_radius)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in kernel_classes(level, opts.n_max)? {
        let w = rewriter.rewrite(&c.matrix)?;
        let rec = ConjugacyClassRecord::from_word(g, &w)?;
        if rec.word.len() > opts.word_cap {
            return Err(Error::WordCapExceeded { cap: opts.word_cap });
        }
        if !rec.primitive {
            return Err(Error::Construction(format!("class of {} is not primitive", c.matrix)));
        }
        if g.character == Some(Character::LetterParity) {
            let expected = if c.phi == 0 { 1 } else { -1 };
            if rec.chi != Some(expected) {
                return Err(Error::Construction(format!("character mismatch on {}", c.matrix)));
            }
        }
        if !seen.insert(rec.word.clone()) {
            return Err(Error::Construction(format!("class of {} listed twice", c.matrix)));
        }
        out.push(rec);
    }
    sort_records(&mut out);
    Ok(out)
}

/// Cyclic normal forms of all primitive cyclically reduced words of
/// length exactly `k`.
pub(crate) fn primitive_cyclic_words(g: &PresentedGroup, k: usize) -> Vec<GroupWord> {
    let p = g.presentation;
    let alphabet = p.alphabet();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut stack: Vec<Vec<super::Letter>> = alphabet.iter().map(|l| alloc::vec![*l]).collect();
    while let Some(w) = stack.pop() {
        if w.len() == k {
            if p.inverse(w[0]) == w[k - 1] && k > 1 {
                continue;
            }
            let word = GroupWord::from_letters(w);
            if !word.is_proper_power() && word.cyclic_normal_form(p) == word {
                out.push(word);
            }
            continue;
        }
        let last = *w.last().unwrap();
        for &l in &alphabet {
            if p.inverse(last) == l {
                continue;
            }
            // prune prefixes that cannot be minimal rotations
            if l < w[0] {
                continue;
            }
            let mut nw = w.clone();
            nw.push(l);
            stack.push(nw);
        }
    }
    out.sort();
    out
}

/// Enumerates classes by cyclic word length: lengths are added until two
/// consecutive lengths contribute nothing with `N ≤ n_max`, then two more
/// lengths are scanned. Exceeding `cap` is an error.
pub fn classes_by_word_length(g: &PresentedGroup, n_max: f64, cap: usize) -> Result<Vec<ConjugacyClassRecord>> {
    let mut out = Vec::new();
    let mut empty_run = 0;
    let mut extra = None;
    let mut k = 1;
    loop {
        if k > cap {
            return Err(Error::WordCapExceeded { cap });
        }
        let mut added = 0;
        for w in primitive_cyclic_words(g, k) {
            let m = g.word_matrix(&w)?;
            if m.classify() != Classification::Hyperbolic {
                continue;
            }
            let (n, _) = m.norm_and_length()?;
            if n <= n_max {
                out.push(ConjugacyClassRecord::from_word(g, &w)?);
                added += 1;
            }
        }
        match extra {
            Some(1) => break,
            Some(n) => extra = Some(n - 1),
            None => {
                empty_run = if added == 0 { empty_run + 1 } else { 0 };
                if empty_run == 2 {
                    extra = Some(2);
                }
            }
        }
        k += 1;
    }
    sort_records(&mut out);
    Ok(out)
}
