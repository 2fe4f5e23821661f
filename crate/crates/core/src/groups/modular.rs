//! Arithmetic of PSL(2,ℤ) used for exact class enumeration in normal
//! subgroups of the form `ker(PSL(2,ℤ) → ℤ/6 → ℤ/level)`.
//!
//! The abelianisation `φ` sends `S = [[0,-1],[1,0]]` to 3 and
//! `T = [[1,1],[0,1]]` to 5. Primitive hyperbolic classes of PSL(2,ℤ)
//! correspond to Lyndon words in `L = [[1,0],[1,1]]` and `R = T` that use
//! both letters.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{GroupWord, PresentedGroup, WordDictionary};
use crate::moebius::IntMoebius;
use crate::{Error, Result};

pub const S: IntMoebius = int_const(0, 1, -1, 0);
pub const T: IntMoebius = int_const(1, 1, 0, 1);
pub const L: IntMoebius = int_const(1, 0, 1, 1);

const fn int_const(a: i128, b: i128, c: i128, d: i128) -> IntMoebius {
    IntMoebius::from_canonical_entries([a, b, c, d])
}

/// A letter of the `S, T` alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StLetter {
    S,
    T,
    TInv,
}

impl StLetter {
    fn matrix(self) -> IntMoebius {
        match self {
            StLetter::S => S,
            StLetter::T => T,
            StLetter::TInv => T.inverse(),
        }
    }

    fn phi(self) -> i64 {
        match self {
            StLetter::S => 3,
            StLetter::T => 5,
            StLetter::TInv => 1,
        }
    }
}

/// Writes `m` as a word in `S, T^{±1}` by the Euclidean algorithm.
pub fn st_decomposition(m: &IntMoebius) -> Result<Vec<StLetter>> {
    let mut cur = *m;
    let mut out = Vec::new();
    let push_t = |out: &mut Vec<StLetter>, q: i128| {
        let l = if q > 0 { StLetter::T } else { StLetter::TInv };
        for _ in 0..q.unsigned_abs() {
            out.push(l);
        }
    };
    loop {
        let [a, b, c, d] = cur.entries();
        if c == 0 {
            // a = d = 1 after sign canonicalisation
            push_t(&mut out, b * a);
            return Ok(out);
        }
        let q = a.div_euclid(c);
        push_t(&mut out, q);
        let a1 = a - q * c;
        let b1 = b - q * d;
        out.push(StLetter::S);
        // S⁻¹ · [[a1, b1], [c, d]] = [[c, d], [-a1, -b1]]
        cur = IntMoebius::new(c, d, -a1, -b1)?;
    }
}

/// `φ(m) ∈ ℤ/6`.
pub fn abelianization(m: &IntMoebius) -> Result<i64> {
    Ok(st_decomposition(m)?.iter().map(|l| l.phi()).sum::<i64>().rem_euclid(6))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A primitive hyperbolic class of PSL(2,ℤ) given by a Lyndon word in
/// `L < R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularClass {
    /// `true` for `R`, `false` for `L`.
    pub word: Vec<bool>,
    pub matrix: IntMoebius,
}

fn is_lyndon(w: &[bool]) -> bool {
    let n = w.len();
    (1..n).all(|r| {
        let rot = w[r..].iter().chain(w[..r].iter());
        w.iter().lt(rot)
    })
}

/// All primitive hyperbolic classes of PSL(2,ℤ) with `|tr| ≤ max_trace`,
/// ordered by trace and then word.
pub fn modular_primitive_classes(max_trace: i128) -> Result<Vec<ModularClass>> {
    // Lyndon words with both letters start with L and end with R. Entries
    // are non-negative, so inserting letters never lowers the trace and
    // `tr(prefix · R)` bounds every completion.
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<bool>, IntMoebius)> = alloc::vec![(alloc::vec![false], L)];
    while let Some((w, m)) = stack.pop() {
        let closed = m.compose(&T)?;
        if closed.trace() > max_trace {
            continue;
        }
        let mut wr = w.clone();
        wr.push(true);
        if is_lyndon(&wr) {
            out.push(ModularClass {
                word: wr.clone(),
                matrix: closed,
            });
        }
        stack.push((wr, closed));
        let mut wl = w;
        wl.push(false);
        let ml = m.compose(&L)?;
        stack.push((wl, ml));
    }
    out.sort_by(|x, y| {
        x.matrix
            .trace()
            .cmp(&y.matrix.trace())
            .then_with(|| x.word.cmp(&y.word))
    });
    Ok(out)
}

/// Rewrites elements of `ker(φ mod level)` as words in the subgroup's own
/// generators (Reidemeister–Schreier with transversal `t_r = T^{-r mod level}`).
pub struct SchreierRewriter<'g> {
    group: &'g PresentedGroup,
    level: i64,
    dict: WordDictionary,
    cache: BTreeMap<(i64, StLetter), GroupWord>,
}

impl<'g> SchreierRewriter<'g> {
    pub fn new(group: &'g PresentedGroup, level: u8, dictionary_radius: usize) -> Result<Self> {
        Ok(Self {
            group,
            level: level as i64,
            dict: WordDictionary::build(group, dictionary_radius, |_| false)?,
            cache: BTreeMap::new(),
        })
    }

    fn transversal(&self, r: i64) -> Result<IntMoebius> {
        T.pow((-r).rem_euclid(self.level))
    }

    fn schreier_word(&mut self, coset: i64, l: StLetter) -> Result<GroupWord> {
        if let Some(w) = self.cache.get(&(coset, l)) {
            return Ok(w.clone());
        }
        let next = (coset + l.phi()).rem_euclid(self.level);
        let m = self
            .transversal(coset)?
            .compose(&l.matrix())?
            .compose(&self.transversal(next)?.inverse())?;
        let w = self
            .dict
            .word_of(&m)
            .cloned()
            .ok_or_else(|| Error::Construction(format!("Schreier generator {m} not in dictionary")))?;
        self.cache.insert((coset, l), w.clone());
        Ok(w)
    }

    /// Reduced word for `m`, verified exactly against its matrix.
    pub fn rewrite(&mut self, m: &IntMoebius) -> Result<GroupWord> {
        let p = self.group.presentation;
        let mut coset = 0i64;
        let mut letters = Vec::new();
        for l in st_decomposition(m)? {
            letters.extend_from_slice(self.schreier_word(coset, l)?.letters());
            coset = (coset + l.phi()).rem_euclid(self.level);
        }
        if coset != 0 {
            return Err(Error::Construction(format!(
                "{m} is not in the level-{} kernel",
                self.level
            )));
        }
        let w = GroupWord::from_letters(letters).reduced(p);
        if self.group.word_matrix(&w)? != *m {
            return Err(Error::Construction(format!("rewrite of {m} does not reproduce it")));
        }
        Ok(w)
    }
}

/// One subgroup class lying over a modular class.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub matrix: IntMoebius,
    /// `φ(matrix) ∈ ℤ/6`.
    pub phi: i64,
}

/// Primitive hyperbolic classes of `ker(φ mod level)` with `N ≤ n_max`,
/// as explicit matrices `T^a γ₀^j T^{-a}`.
pub fn kernel_classes(level: u8, n_max: f64) -> Result<Vec<SubgroupClass>> {
    let level = level as i64;
    // N(γ₀) ≤ N_max ⇔ |tr| ≤ N_max + 1/N_max
    let max_trace = libm::floor(n_max + 1.0 / n_max + 1e-9) as i128;
    let mut out = Vec::new();
    for c in modular_primitive_classes(max_trace)? {
        let r = abelianization(&c.matrix)?;
        let g = gcd(r, level);
        let j = level / g;
        let (n0, _) = c.matrix.norm_and_length()?;
        if libm::pow(n0, j as f64) > n_max * (1.0 + 1e-12) {
            continue;
        }
        let power = c.matrix.pow(j)?;
        let (n, _) = power.norm_and_length()?;
        if n > n_max {
            continue;
        }
        for a in 0..g {
            let conj = T.pow(a)?.conjugate(&power)?;
            out.push(SubgroupClass {
                matrix: conj,
                phi: (r * j).rem_euclid(6),
            });
        }
    }
    Ok(out)
}
