use std::collections::BTreeMap;

use crate::diagram::Diagram;
use crate::exact_math::{rat, LaurentPoly};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns true when two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Kauffman bracket in `A`, normalized so one crossingless loop is 1, and the
/// number of states visited.
fn bracket_with_count(k: &Diagram) -> (LaurentPoly, u64) {
    let c = k.crossing_count();
    let n = k.arc_count() as usize;
    // (A-exponent, loops) -> number of states
    let mut histogram: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    let mut states = 0u64;
    for mask in 0u64..(1u64 << c) {
        states += 1;
        let mut uf = UnionFind::new(n);
        let mut classes = n;
        let mut exp = 0i64;
        for (i, x) in k.crossings().iter().enumerate() {
            let [a, b, cc, d] = x.slots().map(|s| s as usize - 1);
            let pairs = if mask >> i & 1 == 0 {
                exp += 1;
                [(a, b), (cc, d)]
            } else {
                exp -= 1;
                [(a, d), (b, cc)]
            };
            for (p, q) in pairs {
                if uf.union(p, q) {
                    classes -= 1;
                }
            }
        }
        *histogram
            .entry((exp, classes + k.free_loops()))
            .or_insert(0) += 1;
    }
    // d = -A^2 - A^-2
    let d = LaurentPoly::from_terms('A', &[(-2, -1), (2, -1)]);
    let mut out = LaurentPoly::zero('A');
    for ((exp, loops), count) in histogram {
        let term = LaurentPoly::monomial('A', rat(count), exp) * d.pow(loops as u32 - 1);
        out = out + term;
    }
    (out, states)
}

/// Kauffman bracket `<K>` in the variable `A`.
pub fn kauffman_bracket(k: &Diagram) -> LaurentPoly {
    bracket_with_count(k).0
}

/// Jones polynomial in `q = t^(1/2)`, unknot normalized to 1.
pub fn jones(k: &Diagram) -> LaurentPoly {
    jones_with_state_count(k).0
}

/// Jones polynomial together with the number of bracket states evaluated.
pub fn jones_with_state_count(k: &Diagram) -> (LaurentPoly, u64) {
    let (bracket, states) = bracket_with_count(k);
    (bracket_to_jones(&bracket, k.writhe()), states)
}

/// `(-A^3)^(-w) <K>` followed by `A -> q^(-1/2)`.
pub(crate) fn bracket_to_jones(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let factor = LaurentPoly::monomial('A', rat(sign), -3 * writhe);
    (factor * bracket.clone())
        .divide_exponents(2)
        .expect("bracket exponents are even after writhe normalization")
        .substitute_power(-1)
        .with_var('q')
}
