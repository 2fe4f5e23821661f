use alloc::vec::Vec;

use super::Presentation;

/// A generator index with an exponent sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: u8, inverse: bool) -> Self {
        Self { generator, inverse }
    }
}

/// A word in the generators. Words produced by this module are reduced
/// with respect to the group's presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction (cancels `x x⁻¹`, and `T T` for involutions).
    pub fn reduced(self, p: Presentation) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in self.letters {
            let l = match p {
                Presentation::FreeProductOfInvolutions => Letter::new(l.generator, false),
                Presentation::FreeRank2 => l,
            };
            if out.last().is_some_and(|x| p.inverse(*x) == l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn is_reduced(&self, p: Presentation) -> bool {
        self.letters.windows(2).all(|w| p.inverse(w[0]) != w[1])
            && (p == Presentation::FreeRank2 || self.letters.iter().all(|l| !l.inverse))
    }

    pub fn inverse(&self, p: Presentation) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| p.inverse(*l)).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &GroupWord, p: Presentation) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }.reduced(p)
    }

    pub fn pow(&self, n: usize, p: Presentation) -> Self {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Self { letters }.reduced(p)
    }

    /// Strips conjugating letters until first and last letters do not cancel.
    pub fn cyclically_reduced(&self, p: Presentation) -> Self {
        let w = self.clone().reduced(p);
        let (mut lo, mut hi) = (0usize, w.len());
        while hi - lo >= 2 && p.inverse(w.letters[lo]) == w.letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Self {
            letters: w.letters[lo..hi].to_vec(),
        }
    }

    /// Lexicographically minimal rotation of the cyclic reduction: the
    /// normal form of the conjugacy class.
    pub fn cyclic_normal_form(&self, p: Presentation) -> Self {
        let w = self.cyclically_reduced(p);
        let n = w.len();
        if n == 0 {
            return w;
        }
        let rot = minimal_rotation(&w.letters);
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&w.letters[rot..]);
        letters.extend_from_slice(&w.letters[..rot]);
        Self { letters }
    }

    /// Smallest period `d | n` with `w = u^{n/d}` for `|u| = d`.
    pub fn primitive_period(&self) -> usize {
        let n = self.len();
        (1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| (d..n).all(|i| self.letters[i] == self.letters[i - d]))
            .unwrap_or(n)
    }

    /// Whether the (cyclically reduced) word is a proper power.
    pub fn is_proper_power(&self) -> bool {
        !self.is_empty() && self.primitive_period() < self.len()
    }
}

/// Start index of the lexicographically least rotation (Booth).
fn minimal_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let at = |i: usize| &s[i % n];
    let mut f: Vec<isize> = alloc::vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}
