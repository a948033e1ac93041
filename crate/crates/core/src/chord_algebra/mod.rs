//! Chord diagrams on an oriented circle, the 4T and FI relations, and the
//! dimension of their quotient.
//!
//! Diagrams are double-occurrence words read around the circle. Two words
//! are the same diagram when they differ by a rotation and a renaming of
//! chords. Reflection is a different diagram.

mod relations;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formal_sum::Generator;

pub use relations::{
    dim_a, dim_a_bounded, dim_a_shuffled, generate_4t, generate_fi, RelationKind, RelationSet,
    WeightSpaceReport, DEFAULT_MAX_DEGREE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("chord {0} does not occur exactly twice")]
    Malformed(String),
    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("{0} chords cannot be written with letters")]
    TooManyChords(usize),
}

/// A chord diagram in canonical form: the lexicographically least word over
/// all rotations, chords numbered by first appearance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordDiagram {
    word: Vec<u8>,
}

/// Renames chords in order of first appearance.
fn renamed<T: Ord + Copy>(seq: impl Iterator<Item = T>) -> Vec<u8> {
    let mut names: BTreeMap<T, u8> = BTreeMap::new();
    seq.map(|s| {
        let next = names.len() as u8;
        *names.entry(s).or_insert(next)
    })
    .collect()
}

fn least_rotation(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    (0..n.max(1))
        .map(|r| renamed(word.iter().cycle().skip(r).take(n).copied()))
        .min()
        .unwrap_or_default()
}

/// Canonical form of a raw pairing sequence.
pub fn canonicalize<T: Ord + Copy + fmt::Debug>(raw: &[T]) -> Result<ChordDiagram, ChordError> {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for s in raw {
        *counts.entry(*s).or_insert(0) += 1;
    }
    if let Some((s, _)) = counts.iter().find(|(_, c)| **c != 2) {
        return Err(ChordError::Malformed(format!("{s:?}")));
    }
    if counts.len() > u8::MAX as usize {
        return Err(ChordError::TooManyChords(counts.len()));
    }
    Ok(ChordDiagram {
        word: least_rotation(&renamed(raw.iter().copied())),
    })
}

impl ChordDiagram {
    /// Parses a letter word such as `ABAB`.
    pub fn parse(text: &str) -> Result<Self, ChordError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        canonicalize(&chars)
    }

    pub fn empty() -> Self {
        ChordDiagram { word: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// True when some chord has adjacent endpoints on the circle.
    pub fn has_isolated_chord(&self) -> bool {
        let n = self.word.len();
        (0..n).any(|i| self.word[i] == self.word[(i + 1) % n])
    }

    /// Rotates the word by `k` positions and recanonicalizes.
    pub fn rotated(&self, k: usize) -> ChordDiagram {
        let n = self.word.len().max(1);
        let w: Vec<u8> = self
            .word
            .iter()
            .cycle()
            .skip(k % n)
            .take(self.word.len())
            .copied()
            .collect();
        canonicalize(&w).expect("rotation keeps pairing")
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("()");
        }
        for s in &self.word {
            if *s < 26 {
                write!(f, "{}", (b'A' + s) as char)?;
            } else {
                write!(f, "<{s}>")?;
            }
        }
        Ok(())
    }
}

impl Generator for ChordDiagram {
    fn canonical_key(&self) -> String {
        self.to_string()
    }
}

fn is_canonical(word: &[u8]) -> bool {
    least_rotation(word) == word
}

/// Visits every word of length `2n` in which each chord appears twice and
/// chords open in increasing order.
fn for_each_growth_word(n: usize, mut visit: impl FnMut(&[u8])) {
    fn go(
        word: &mut Vec<u8>,
        open: &mut Vec<u8>,
        next: u8,
        n: usize,
        visit: &mut dyn FnMut(&[u8]),
    ) {
        if word.len() == 2 * n {
            visit(word);
            return;
        }
        if (next as usize) < n {
            word.push(next);
            open.push(next);
            go(word, open, next + 1, n, visit);
            open.pop();
            word.pop();
        }
        for j in 0..open.len() {
            let c = open.remove(j);
            word.push(c);
            go(word, open, next, n, visit);
            word.pop();
            open.insert(j, c);
        }
    }
    go(&mut Vec::new(), &mut Vec::new(), 0, n, &mut visit);
}

/// All canonical diagrams of degree `n`, sorted.
pub fn enumerate(n: usize) -> Vec<ChordDiagram> {
    let mut out = Vec::new();
    for_each_growth_word(n, |w| {
        if is_canonical(w) {
            out.push(ChordDiagram { word: w.to_vec() });
        }
    });
    out.sort();
    out
}

/// Every perfect matching of `2n` points as a word of chord numbers.
pub fn raw_matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(points: &[usize], word: &mut [usize], chord: usize, out: &mut Vec<Vec<usize>>) {
        let Some(&first) = points.first() else {
            out.push(word.to_vec());
            return;
        };
        for &second in &points[1..] {
            let rest: Vec<usize> = points
                .iter()
                .copied()
                .filter(|p| *p != first && *p != second)
                .collect();
            word[first] = chord;
            word[second] = chord;
            go(&rest, word, chord + 1, out);
        }
    }
    let mut all = Vec::new();
    let points: Vec<usize> = (0..2 * n).collect();
    go(&points, &mut vec![0; 2 * n], 0, &mut all);
    all
}

/// Canonical classes of all perfect matchings, by brute force.
pub fn enumerate_by_matchings(n: usize) -> Vec<ChordDiagram> {
    let mut classes: Vec<ChordDiagram> = raw_matchings(n)
        .iter()
        .map(|w| canonicalize(w).expect("matching"))
        .collect();
    classes.sort();
    classes.dedup();
    classes
}

/// Number of perfect matchings of `2n` points.
pub fn double_factorial_odd(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

#[cfg(test)]
mod tests;
