use proptest::prelude::*;

use super::*;
use crate::exact_math::rat;

#[test]
fn rotations_and_renaming() {
    let abab = ChordDiagram::parse("ABAB").unwrap();
    assert_eq!(abab.to_string(), "ABAB");
    assert_eq!(ChordDiagram::parse("BABA").unwrap(), abab);
    assert_eq!(
        ChordDiagram::parse("AABB").unwrap(),
        ChordDiagram::parse("ABBA").unwrap()
    );
    assert_eq!(ChordDiagram::parse("ABBA").unwrap().to_string(), "AABB");
    assert!(matches!(
        ChordDiagram::parse("ABA"),
        Err(ChordError::Malformed(_))
    ));
    assert_eq!(ChordDiagram::parse("").unwrap(), ChordDiagram::empty());
}

#[test]
fn reflection_is_not_identified() {
    let reversed = |d: &ChordDiagram| {
        let mut w = d.word().to_vec();
        w.reverse();
        canonicalize(&w).unwrap()
    };
    let degree4 = enumerate(4);
    assert!(enumerate(3).iter().all(|d| reversed(d) == *d));
    let chiral = degree4.iter().filter(|d| reversed(d) != **d).count();
    assert_eq!(chiral, 2);
    assert_eq!(degree4.len(), 18);
}

#[test]
fn standard_degree_three_basis() {
    // five degree-3 diagrams as usually drawn, read counterclockwise from angle 0
    let drawn = ["ABBCCA", "ABBCAC", "CBBCAA", "BCACBA", "CBACBA"];
    let mut classes: Vec<ChordDiagram> = drawn
        .iter()
        .map(|w| ChordDiagram::parse(w).unwrap())
        .collect();
    classes.sort();
    assert_eq!(classes, enumerate(3));
    let isolated = classes.iter().filter(|d| d.has_isolated_chord()).count();
    assert_eq!(isolated, 3);
}

#[test]
fn degree_three_has_five_classes() {
    let raw = raw_matchings(3);
    assert_eq!(raw.len(), 15);
    let classes = enumerate_by_matchings(3);
    assert_eq!(classes.len(), 5);
    assert_eq!(enumerate(3), classes);
    let words: Vec<String> = classes.iter().map(|d| d.to_string()).collect();
    assert_eq!(words, ["AABBCC", "AABCBC", "AABCCB", "ABACBC", "ABCABC"]);
}

#[test]
fn small_enumerations() {
    assert_eq!(enumerate(0), vec![ChordDiagram::empty()]);
    assert_eq!(enumerate(1).len(), 1);
    assert_eq!(enumerate(2).len(), 2);
    let counts: Vec<usize> = (0..=7).map(|n| enumerate(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 5, 18, 105, 902, 9749]);
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 0..=6 {
        assert_eq!(raw_matchings(n).len() as u64, double_factorial_odd(n));
        assert_eq!(enumerate(n), enumerate_by_matchings(n), "degree {n}");
    }
}

#[test]
fn fi_relations() {
    assert_eq!(generate_fi(1).relations.len(), 1);
    let two = generate_fi(2);
    assert_eq!(two.relations.len(), 1);
    assert_eq!(
        two.relations[0],
        crate::formal_sum::FormalSum::single(ChordDiagram::parse("AABB").unwrap())
    );
    // three of the five degree-3 diagrams have a chord with adjacent ends
    assert_eq!(generate_fi(3).relations.len(), 3);
}

#[test]
fn four_term_shape() {
    for n in 2..=5 {
        for r in generate_4t(n).relations {
            assert!(r.len() <= 4);
            let total: crate::exact_math::Rational = r.terms().map(|(_, c)| c.clone()).sum();
            assert_eq!(total, rat(0), "degree count functional");
            assert!(r
                .terms()
                .all(|(d, c)| d.degree() == n && c.numer().magnitude() <= &2u32.into()));
        }
    }
}

#[test]
fn dimensions() {
    let dims: Vec<usize> = (0..=6).map(|n| dim_a(n).unwrap().dimension).collect();
    assert_eq!(dims, [1, 0, 1, 1, 3, 4, 9]);
    let r = dim_a(3).unwrap();
    assert_eq!((r.diagram_count, r.dimension), (5, 1));
    assert_eq!(r.to_string().split_whitespace().next(), Some("dim=1"));
    assert_eq!(
        dim_a(8).unwrap_err(),
        ChordError::DegreeTooLarge {
            degree: 8,
            bound: 7
        }
    );
}

#[test]
fn shuffling_does_not_change_dimension() {
    for n in 0..=5 {
        let plain = dim_a_bounded(n, 7).unwrap();
        for seed in 0..3 {
            assert_eq!(
                dim_a_shuffled(n, 7, seed).unwrap().dimension,
                plain.dimension
            );
        }
    }
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(seed in 0u64..10_000, n in 0usize..7) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut w: Vec<usize> = (0..n).flat_map(|c| [c, c]).collect();
        w.shuffle(&mut rng);
        let d = canonicalize(&w).unwrap();
        prop_assert_eq!(canonicalize(d.word()).unwrap(), d.clone());
        prop_assert_eq!(d.rotated(seed as usize), d);
    }
}
