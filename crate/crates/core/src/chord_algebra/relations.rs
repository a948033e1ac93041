use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{canonicalize, enumerate, ChordDiagram, ChordError};
use crate::exact_math::{rat, SparseMatrix};
use crate::formal_sum::FormalSum;

pub const DEFAULT_MAX_DEGREE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    FourT,
    FI,
}

#[derive(Debug, Clone)]
pub struct RelationSet {
    pub kind: RelationKind,
    pub degree: usize,
    pub relations: Vec<FormalSum<ChordDiagram>>,
}

/// Sign-normalized text form used to drop duplicate relations.
fn relation_key(r: &FormalSum<ChordDiagram>) -> String {
    let flip = r.terms().next().is_some_and(|(_, c)| *c < rat(0));
    let s = if flip { r.scaled(&rat(-1)) } else { r.clone() };
    s.to_string()
}

/// 4T relations of degree `n`. A chord `b` and one end of a chord `x` are
/// added to a diagram of degree `n - 2`; the other end of `x` is placed just
/// after or just before either end of `b`:
/// `[after b1] - [before b1] + [after b2] - [before b2] = 0`.
pub fn generate_4t(n: usize) -> RelationSet {
    let mut relations = Vec::new();
    let mut seen = BTreeSet::new();
    if n >= 2 {
        const B: u8 = u8::MAX - 1;
        const X: u8 = u8::MAX;
        for base in enumerate(n - 2) {
            let w = base.word();
            let len = w.len() + 3;
            // positions of the three new symbols in the extended linear word
            for p in 0..len {
                for q in p + 1..len {
                    for r in q + 1..len {
                        for x_at in [p, q, r] {
                            let mut ext = Vec::with_capacity(len);
                            let mut rest = w.iter();
                            for i in 0..len {
                                if i == x_at {
                                    ext.push(X);
                                } else if i == p || i == q || i == r {
                                    ext.push(B);
                                } else {
                                    ext.push(*rest.next().expect("base symbol"));
                                }
                            }
                            let b_ends: Vec<usize> = (0..len).filter(|i| ext[*i] == B).collect();
                            let mut rel = FormalSum::zero();
                            for &e in &b_ends {
                                for (offset, coeff) in [(1, 1), (0, -1)] {
                                    let mut t = ext.clone();
                                    t.insert(e + offset, X);
                                    rel.add_term(
                                        canonicalize(&t).expect("valid pairing"),
                                        rat(coeff),
                                    );
                                }
                            }
                            if !rel.is_zero() && seen.insert(relation_key(&rel)) {
                                relations.push(rel);
                            }
                        }
                    }
                }
            }
        }
    }
    RelationSet {
        kind: RelationKind::FourT,
        degree: n,
        relations,
    }
}

/// One relation per diagram with an isolated chord.
pub fn generate_fi(n: usize) -> RelationSet {
    let relations = enumerate(n)
        .into_iter()
        .filter(|d| d.has_isolated_chord())
        .map(FormalSum::single)
        .collect();
    RelationSet {
        kind: RelationKind::FI,
        degree: n,
        relations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpaceReport {
    pub degree: usize,
    pub diagram_count: usize,
    pub relation_count: usize,
    pub rank: usize,
    pub dimension: usize,
}

impl fmt::Display for WeightSpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim={} degree={} diagrams={} relations={} rank={}",
            self.dimension, self.degree, self.diagram_count, self.relation_count, self.rank
        )
    }
}

/// Dimension of degree-`n` chord diagrams modulo 4T and FI, with the
/// default degree bound.
pub fn dim_a(n: usize) -> Result<WeightSpaceReport, ChordError> {
    dim_a_bounded(n, DEFAULT_MAX_DEGREE)
}

pub fn dim_a_bounded(n: usize, bound: usize) -> Result<WeightSpaceReport, ChordError> {
    compute(n, bound, None)
}

/// Same as [`dim_a_bounded`] with relation rows and diagram columns
/// shuffled by a seeded generator.
pub fn dim_a_shuffled(n: usize, bound: usize, seed: u64) -> Result<WeightSpaceReport, ChordError> {
    compute(n, bound, Some(seed))
}

fn compute(n: usize, bound: usize, seed: Option<u64>) -> Result<WeightSpaceReport, ChordError> {
    if n > bound {
        return Err(ChordError::DegreeTooLarge { degree: n, bound });
    }
    let mut diagrams = enumerate(n);
    let mut relations = generate_4t(n).relations;
    relations.extend(generate_fi(n).relations);
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        diagrams.shuffle(&mut rng);
        relations.shuffle(&mut rng);
    }
    let column: BTreeMap<&ChordDiagram, usize> =
        diagrams.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut m = SparseMatrix::new(relations.len(), diagrams.len());
    for (row, rel) in relations.iter().enumerate() {
        for (d, c) in rel.terms() {
            m.add_to(row, column[d], c.clone()).expect("index in range");
        }
    }
    let rank = m.rank();
    Ok(WeightSpaceReport {
        degree: n,
        diagram_count: diagrams.len(),
        relation_count: relations.len(),
        rank,
        dimension: diagrams.len() - rank,
    })
}
