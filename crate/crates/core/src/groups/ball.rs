use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{GroupWord, PresentedGroup};
use crate::moebius::IntMoebius;
use crate::{Error, Result};

/// Distinct group elements reachable by reduced words of length `≤ radius`.
#[derive(Debug, Clone)]
pub struct WordBall {
    pub radius: usize,
    /// `(shortest word, matrix)` in breadth-first order.
    pub elements: Vec<(GroupWord, IntMoebius)>,
    /// Number of reduced words whose matrix had already been seen.
    pub collisions: usize,
}

impl WordBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &IntMoebius) -> bool {
        self.elements.iter().any(|(_, e)| e == m)
    }
}

/// Enumerates reduced words layer by layer, extending each word on the
/// right; calls `visit(word, matrix)` for every reduced word until it
/// returns `Break`.
pub(crate) fn for_each_reduced_word<F>(g: &PresentedGroup, radius: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&GroupWord, &IntMoebius) -> Result<ControlFlow<()>>,
{
    let p = g.presentation;
    let alphabet = p.alphabet();
    let mut layer: Vec<(GroupWord, IntMoebius)> = alloc::vec![(GroupWord::empty(), IntMoebius::IDENTITY)];
    if visit(&layer[0].0, &layer[0].1)?.is_break() {
        return Ok(());
    }
    for _ in 0..radius {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for (w, m) in &layer {
            let last = w.letters().last().copied();
            for &l in &alphabet {
                if last.is_some_and(|x| p.inverse(x) == l) {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(l);
                let nw = GroupWord::from_letters(letters);
                let nm = m.compose(&g.generator(l))?;
                if visit(&nw, &nm)?.is_break() {
                    return Ok(());
                }
                next.push((nw, nm));
            }
        }
        layer = next;
    }
    Ok(())
}

/// All distinct elements representable by reduced words of length `≤ radius`,
/// deduplicated exactly by their canonical integer matrices.
pub fn word_ball(g: &PresentedGroup, radius: usize) -> Result<WordBall> {
    let mut seen: BTreeMap<IntMoebius, ()> = BTreeMap::new();
    let mut elements = Vec::new();
    let mut collisions = 0usize;
    for_each_reduced_word(g, radius, |w, m| {
        if seen.insert(*m, ()).is_none() {
            elements.push((w.clone(), *m));
        } else {
            collisions += 1;
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(WordBall {
        radius,
        elements,
        collisions,
    })
}

/// Fails if some non-empty reduced word of length `≤ max_length` is `±I`.
pub fn no_short_relator(g: &PresentedGroup, max_length: usize) -> Result<()> {
    for_each_reduced_word(g, max_length, |w, m| {
        if !w.is_empty() && m.is_identity() {
            Err(Error::ShortRelator { length: w.len() })
        } else {
            Ok(ControlFlow::Continue(()))
        }
    })
}

/// Matrix → shortest word lookup over a word ball.
#[derive(Debug, Clone)]
pub struct WordDictionary {
    map: BTreeMap<IntMoebius, GroupWord>,
}

impl WordDictionary {
    /// Builds the dictionary for the ball of the given radius; `stop`
    /// may end the enumeration early once it returns `true`.
    pub fn build<F: FnMut(&IntMoebius) -> bool>(g: &PresentedGroup, radius: usize, mut stop: F) -> Result<Self> {
        let mut map = BTreeMap::new();
        for_each_reduced_word(g, radius, |w, m| {
            map.entry(*m).or_insert_with(|| w.clone());
            Ok(if stop(m) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            })
        })?;
        Ok(Self { map })
    }

    pub fn word_of(&self, m: &IntMoebius) -> Option<&GroupWord> {
        self.map.get(m)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
