//! The acceptance checks, shared by the `acceptance` test target and the
//! `selftest` command.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracelets::{detect_hopf_pairs, odd_degree_empty, realize_as_link, HopfPairBracelet};
use crate::chord_algebra::{
    dim_a, dim_a_shuffled, double_factorial_odd, enumerate, enumerate_by_matchings, raw_matchings,
    ChordDiagram, DEFAULT_MAX_DEGREE,
};
use crate::diagram::{mark_singular, Diagram};
use crate::exact_math::{rat, LaurentPoly};
use crate::formal_sum::FormalSum;
use crate::goussarov::{
    double_twist_family, double_twist_knot, encode_crossings, goussarov_difference,
    theorem1_identity_check, DetourFamily, HostToken,
};
use crate::invariants::oracle::{conway_oracle, jones_oracle};
use crate::invariants::{conway, jones, linking_matrix, Invariant, Value};
use crate::table::KnotTable;
use crate::vassiliev::{resolve_in_order, vassiliev_difference};

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub number: u8,
    pub passed: bool,
    pub summary: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {}: {} {}", self.number, verdict, self.summary)
    }
}

type Check = Result<(bool, String), String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn table_knot(name: &str) -> Result<Diagram, String> {
    KnotTable::bundled()
        .get(name)
        .cloned()
        .ok_or_else(|| format!("{name} missing from table"))
}

/// Fixed 20-knot corpus: table entries, mirrors, braid closures and double
/// twist knots, all with at most 8 crossings.
pub fn corpus() -> Vec<(String, Diagram)> {
    let table = KnotTable::bundled();
    let mut out: Vec<(String, Diagram)> = [
        "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1", "8_3",
    ]
    .iter()
    .map(|n| (n.to_string(), table.get(n).expect("bundled").clone()))
    .collect();
    for n in ["3_1", "5_2", "6_2"] {
        out.push((format!("{n}*"), table.get(n).expect("bundled").mirror()));
    }
    let braids: [(usize, &[i32]); 4] = [
        (3, &[1, 1, 1, 2]),
        (3, &[1, -2, 1, -2]),
        (3, &[1, 1, 1, -2]),
        (3, &[1, 2, 1, 2]),
    ];
    for (s, w) in braids {
        let name = format!("braid{w:?}");
        out.push((name, Diagram::braid_closure(s, w).expect("valid braid")));
    }
    for (a, b) in [(2, 2), (4, 2), (2, 4), (2, 6)] {
        out.push((
            format!("twist({a},{b})"),
            double_twist_knot(a, b).expect("even twists"),
        ));
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn criterion1() -> Check {
    let one = LaurentPoly::from_terms('q', &[(0, 1)]);
    let trivial = jones(&Diagram::unknot()) == one
        && conway(&Diagram::unknot()).map_err(err)? == LaurentPoly::from_terms('z', &[(0, 1)])
        && conway(&Diagram::unlink(2)).map_err(err)?.is_zero();
    let mut mismatches = Vec::new();
    for name in ["3_1", "4_1", "6_1", "8_3"] {
        let k = table_knot(name)?;
        if jones(&k) != jones_oracle(&k)
            || conway(&k).map_err(err)? != conway_oracle(&k).map_err(err)?
        {
            mismatches.push(name);
        }
    }
    Ok((
        trivial && mismatches.is_empty(),
        format!(
            "unknot/unlink values {}; oracle mismatches on 3_1 4_1 6_1 8_3: {}",
            if trivial { "exact" } else { "wrong" },
            mismatches.len()
        ),
    ))
}

fn criterion2() -> Check {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut differ = 0;
    for _ in 0..50 {
        let (_, k) = corpus.choose(&mut rng).expect("non-empty");
        let mut idx: Vec<usize> = (0..k.crossing_count()).collect();
        idx.shuffle(&mut rng);
        let (a, b) = (idx[0], idx[1]);
        let s = mark_singular(k, &[a, b]).map_err(err)?;
        let ab = resolve_in_order(&s, &[a, b]).map_err(err)?;
        let ba = resolve_in_order(&s, &[b, a]).map_err(err)?;
        if ab != ba {
            differ += 1;
        }
    }
    Ok((
        differ == 0,
        format!("50 random 2-singular diagrams, {differ} order-dependent"),
    ))
}

fn criterion3() -> Check {
    let corpus = corpus();
    let mut c2_cases = 0;
    let mut c2_nonzero = 0;
    let mut j3_cases = 0;
    let mut j3_nonzero = 0;
    for (_, k) in &corpus {
        for s in subsets(k.crossing_count(), 3) {
            c2_cases += 1;
            if !vassiliev_difference(k, &s, Invariant::C2)
                .map_err(err)?
                .is_zero()
            {
                c2_nonzero += 1;
            }
        }
        for s in subsets(k.crossing_count(), 4) {
            j3_cases += 1;
            if !vassiliev_difference(k, &s, Invariant::J3)
                .map_err(err)?
                .is_zero()
            {
                j3_nonzero += 1;
            }
        }
    }
    let trefoil = table_knot("3_1")?;
    let witness = vassiliev_difference(&trefoil, &[0, 1], Invariant::C2).map_err(err)?;
    let witness_ok = witness == Value::Rational(rat(1));
    let j3_sharp = subsets(trefoil.crossing_count(), 3)
        .iter()
        .map(|s| vassiliev_difference(&trefoil, s, Invariant::J3))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?
        .iter()
        .any(|v| !v.is_zero());
    Ok((
        c2_nonzero == 0 && j3_nonzero == 0 && witness_ok && j3_sharp,
        format!(
            "c2: {c2_nonzero}/{c2_cases} 3-subset sums nonzero, trefoil 2-subset = {witness}; \
             j3: {j3_nonzero}/{j3_cases} 4-subset sums nonzero, 3-subset witness {}",
            if j3_sharp { "found" } else { "missing" }
        ),
    ))
}

fn criterion4() -> Check {
    let cases: [(&str, &[usize]); 10] = [
        ("3_1", &[0]),
        ("3_1", &[0, 1]),
        ("4_1", &[1]),
        ("4_1", &[0, 2]),
        ("5_2", &[3]),
        ("5_2", &[0, 4]),
        ("6_1", &[2]),
        ("6_1", &[1, 5]),
        ("5_1", &[0, 2]),
        ("6_2", &[1, 3]),
    ];
    let mut bad = 0;
    let mut checks = 0;
    for (name, points) in cases {
        let s = mark_singular(&table_knot(name)?, points).map_err(err)?;
        for inv in Invariant::ALL {
            checks += 1;
            if !theorem1_identity_check(&s, inv).map_err(err)?.equal {
                bad += 1;
            }
        }
    }
    Ok((
        bad == 0,
        format!("{checks} identity checks on 10 marked diagrams, {bad} unequal"),
    ))
}

/// Ten families: five with three encoded crossings (6 regions), five of
/// those with one region frozen (5 regions).
fn vanishing_families() -> Result<Vec<DetourFamily>, String> {
    let six: [(&str, &[usize]); 5] = [
        ("3_1", &[0, 1, 2]),
        ("4_1", &[0, 1, 3]),
        ("5_2", &[0, 2, 4]),
        ("6_1", &[1, 3, 5]),
        ("5_1", &[0, 1, 2]),
    ];
    let mut out = Vec::new();
    for (name, c) in six {
        out.push(encode_crossings(&table_knot(name)?, c).map_err(err)?);
    }
    for (i, f) in out.clone().iter().enumerate() {
        out.push(f.freeze(i % 6, i % 2 == 0).map_err(err)?);
    }
    Ok(out)
}

fn criterion5() -> Check {
    let families = vanishing_families()?;
    let shape: Vec<usize> = families.iter().map(|f| f.region_count()).collect();
    let mut nonzero = 0;
    for f in &families {
        if !goussarov_difference(f, Invariant::C2)
            .map_err(err)?
            .is_zero()
        {
            nonzero += 1;
        }
    }
    let four = encode_crossings(&table_knot("3_1")?, &[0, 1]).map_err(err)?;
    let sharp = goussarov_difference(&four, Invariant::C2).map_err(err)?;
    let shape_ok = shape.iter().all(|m| *m == 5 || *m == 6) && shape.contains(&5);
    Ok((
        nonzero == 0 && shape_ok && !sharp.is_zero(),
        format!("c2 nonzero on {nonzero}/10 families with 5 or 6 regions; trefoil 4-region sum = {sharp}"),
    ))
}

/// `I(6_1) - I(8_3) - I(0) + I(0)` for every invariant, from table codes.
pub fn twist_difference_sums() -> Result<Vec<(Invariant, Value)>, String> {
    let mut sum = FormalSum::zero();
    sum.add_term(table_knot("6_1")?, rat(1));
    sum.add_term(table_knot("8_3")?, rat(-1));
    sum.add_term(table_knot("0_1")?, rat(-1));
    sum.add_term(table_knot("0_1")?, rat(1));
    Invariant::ALL
        .iter()
        .map(|inv| inv.evaluate_sum(&sum).map(|v| (*inv, v)).map_err(err))
        .collect()
}

fn criterion6() -> Check {
    let sums = twist_difference_sums()?;
    let family = double_twist_family();
    let mut agree = true;
    let mut parts = Vec::new();
    for (inv, v) in &sums {
        // the realized family's subsets {}, {0}, {1}, {0,1} carry + - - +
        agree &= goussarov_difference(&family, *inv).map_err(err)? == *v;
        parts.push(format!("{inv}={v}"));
    }
    let pinned = LaurentPoly::from_terms('z', &[(2, 2)]);
    let conway_ok = sums
        .iter()
        .any(|(inv, v)| *inv == Invariant::Conway && v.as_poly() == Some(&pinned));
    Ok((
        conway_ok && agree,
        format!(
            "{}; detour family {}",
            parts.join(" "),
            if agree { "agrees" } else { "disagrees" }
        ),
    ))
}

fn criterion7() -> Check {
    let drawn = ["ABBCCA", "ABBCAC", "CBBCAA", "BCACBA", "CBACBA"];
    let mut basis: Vec<ChordDiagram> = drawn
        .iter()
        .map(|w| ChordDiagram::parse(w))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    basis.sort();
    let basis_ok = enumerate(3) == basis && basis.len() == 5;
    let counts_ok = (0..=6).all(|n| {
        raw_matchings(n).len() as u64 == double_factorial_odd(n)
            && enumerate(n) == enumerate_by_matchings(n)
    });
    let dims: Vec<usize> = [0, 2, 3]
        .iter()
        .map(|n| dim_a(*n).map(|r| r.dimension))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let mut shuffle_ok = true;
    for n in 0..=6 {
        let plain = dim_a(n).map_err(err)?.dimension;
        for seed in [7, 11] {
            shuffle_ok &= dim_a_shuffled(n, DEFAULT_MAX_DEGREE, seed)
                .map_err(err)?
                .dimension
                == plain;
        }
    }
    Ok((
        basis_ok && counts_ok && dims == [1, 1, 1] && shuffle_ok,
        format!(
            "degree-3 basis {}; counts n<=6 {}; dim_a(0,2,3) = {:?}; shuffle {}",
            if basis_ok { "matches" } else { "differs" },
            if counts_ok { "match" } else { "differ" },
            dims,
            if shuffle_ok {
                "invariant"
            } else {
                "changes dim"
            }
        ),
    ))
}

fn criterion8() -> Check {
    let odd_ok = [1, 3, 5, 7]
        .iter()
        .all(|n| HopfPairBracelet::new(*n, &[]).is_err() && odd_degree_empty(*n).is_ok());
    let mut total = 0;
    let mut failures = 0;
    for n in [2, 4, 6, 8] {
        let all = HopfPairBracelet::all(n).map_err(err)?;
        let mut matrices = std::collections::BTreeSet::new();
        for b in &all {
            total += 1;
            let l = realize_as_link(b);
            if detect_hopf_pairs(&l).ok().as_ref() != Some(b) {
                failures += 1;
            }
            matrices.insert(linking_matrix(l.link()).map_err(err)?);
        }
        if matrices.len() != all.len() {
            failures += 1;
        }
    }
    Ok((
        odd_ok && failures == 0,
        format!(
            "odd n rejected: {odd_ok}; {total} matchings on n<=8, {failures} not recovered or not separated"
        ),
    ))
}

fn criterion9() -> Check {
    let corpus = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut nonzero = 0;
    for _ in 0..20 {
        let (_, k) = corpus.choose(&mut rng).expect("non-empty");
        let i = rng.gen_range(0..k.crossing_count());
        let f = encode_crossings(k, &[i]).map_err(err)?;
        let runs: Vec<usize> = (0..f.host().len())
            .filter(|s| matches!(f.host()[*s], HostToken::Pass(_)))
            .collect();
        let start = *runs.choose(&mut rng).expect("host has passes");
        let mut end = start + 1;
        let len = rng.gen_range(1..=3);
        while end < f.host().len()
            && end - start < len
            && matches!(f.host()[end], HostToken::Pass(_))
        {
            end += 1;
        }
        let g = f.with_trivial_region(start, end).map_err(err)?;
        for inv in Invariant::ALL {
            if !goussarov_difference(&g, inv).map_err(err)?.is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok((
        nonzero == 0,
        format!("20 families with a duplicated route, {nonzero} nonzero sums"),
    ))
}

pub fn run(number: u8) -> Outcome {
    let check = match number {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(),
        _ => Err(format!("no criterion {number}")),
    };
    let (passed, summary) = check.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        number,
        passed,
        summary,
    }
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|n| run(*n)).collect()
}
