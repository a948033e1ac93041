use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finitype::bracelets::{detect_hopf_pairs, realize_as_link, to_chord_diagram, HopfPairBracelet};
use finitype::diagram::{mark_singular, parse_gauss, parse_pd, serialize_pd, Diagram};
use finitype::goussarov::{delta_g_all, encode_crossings, evaluate_resolved, goussarov_difference};
use finitype::invariants::Invariant;
use finitype::selftest::corpus;
use finitype::vassiliev::{
    orientation_factor, resolve_all, resolve_in_order, vassiliev_difference,
};

fn pick(seed: u64) -> (ChaCha8Rng, Diagram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, k) = corpus().choose(&mut rng).cloned().expect("corpus");
    (rng, k)
}

fn distinct(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    idx
}

/// A corpus knot with a few random crossings switched.
fn scrambled(seed: u64) -> Diagram {
    let (mut rng, mut k) = pick(seed);
    for _ in 0..rng.gen_range(0..3) {
        let i = rng.gen_range(0..k.crossing_count());
        k = k.switch_crossing(i).unwrap();
    }
    if rng.gen_bool(0.5) {
        k = k.mirror();
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn resolution_order_is_irrelevant(seed in any::<u64>()) {
        let (mut rng, k) = pick(seed);
        let pts = distinct(&mut rng, k.crossing_count(), 3);
        let s = mark_singular(&k, &pts).unwrap();
        let forward = resolve_in_order(&s, &pts).unwrap();
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert_eq!(forward, resolve_in_order(&s, &rev).unwrap());
    }

    #[test]
    fn switching_sum_matches_full_resolution(seed in any::<u64>(), m in 1usize..4) {
        let (mut rng, k) = pick(seed);
        let c = distinct(&mut rng, k.crossing_count(), m);
        let full = resolve_all(&mark_singular(&k, &c).unwrap());
        for inv in [Invariant::Conway, Invariant::C2] {
            let lhs = vassiliev_difference(&k, &c, inv).unwrap();
            let rhs = inv.zero().add_scaled(&inv.evaluate_sum(&full).unwrap(), &orientation_factor(&k, &c)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn vanishing_is_monotone(seed in any::<u64>()) {
        let (mut rng, k) = pick(seed);
        for m in [3, 4] {
            let c = distinct(&mut rng, k.crossing_count(), m);
            prop_assert!(vassiliev_difference(&k, &c, Invariant::C2).unwrap().is_zero());
        }
        if k.crossing_count() >= 5 {
            let c = distinct(&mut rng, k.crossing_count(), 5);
            prop_assert!(vassiliev_difference(&k, &c, Invariant::J3).unwrap().is_zero());
        }
    }

    #[test]
    fn pd_text_round_trips(seed in any::<u64>()) {
        let k = scrambled(seed);
        let text = serialize_pd(&k);
        let back = parse_pd(&text).unwrap();
        prop_assert_eq!(back.canonical_key(), k.canonical_key());
        prop_assert_eq!(serialize_pd(&back), text);
    }

    #[test]
    fn gauss_round_trips(seed in any::<u64>()) {
        let k = scrambled(seed);
        let g = k.to_gauss().unwrap();
        let back = parse_gauss(&g.to_string()).unwrap();
        prop_assert_eq!(back.canonical_key(), k.canonical_key());
    }

    #[test]
    fn mutated_pd_never_panics(seed in any::<u64>(), pos in any::<prop::sample::Index>(), ch in prop::sample::select(vec!['X', '[', ']', ',', '0', '9', '-', ' ', 'a', '+'])) {
        let text = serialize_pd(&scrambled(seed));
        let mut chars: Vec<char> = text.chars().collect();
        if !chars.is_empty() {
            let i = pos.index(chars.len());
            chars[i] = ch;
        }
        let mutated: String = chars.into_iter().collect();
        if let Ok(d) = parse_pd(&mutated) {
            prop_assert_eq!(parse_pd(&serialize_pd(&d)).unwrap().canonical_key(), d.canonical_key());
        }
    }

    #[test]
    fn switch_moves_writhe_by_two(seed in any::<u64>()) {
        let (mut rng, k) = pick(seed);
        let i = rng.gen_range(0..k.crossing_count());
        let s = k.switch_crossing(i).unwrap();
        prop_assert_eq!(s.writhe(), k.writhe() - 2 * k.crossings()[i].sign().value());
        prop_assert_eq!(s.switch_crossing(i).unwrap().canonical_key(), k.canonical_key());
    }

    #[test]
    fn detour_differences_commute(seed in any::<u64>()) {
        let (mut rng, k) = pick(seed);
        let c = distinct(&mut rng, k.crossing_count(), 1);
        let f = encode_crossings(&k, &c).unwrap();
        let mut order: Vec<usize> = (0..f.region_count()).collect();
        let a = evaluate_resolved(&delta_g_all(&f, &order).unwrap(), Invariant::Conway).unwrap();
        order.reverse();
        let b = evaluate_resolved(&delta_g_all(&f, &order).unwrap(), Invariant::Conway).unwrap();
        prop_assert_eq!(&a, &b);
        // two regions, so the iterated difference carries no extra sign
        prop_assert_eq!(a, goussarov_difference(&f, Invariant::Conway).unwrap());
    }

    #[test]
    fn bracelets_rotate_with_their_links(n in prop::sample::select(vec![2usize, 4, 6]), pick_seed in any::<u64>(), k in 0usize..6) {
        let all = HopfPairBracelet::all(n).unwrap();
        let b = all.choose(&mut ChaCha8Rng::seed_from_u64(pick_seed)).unwrap();
        let r = b.rotated(k);
        prop_assert_eq!(detect_hopf_pairs(&realize_as_link(&r)).unwrap(), r.clone());
        prop_assert_eq!(to_chord_diagram(&r), to_chord_diagram(b));
    }
}
