//! Second implementations of the invariants, written along different code
//! paths, used to cross-check the main ones.

use std::collections::BTreeMap;

use super::{conway_with_order, InvariantError, ResolutionOrder};
use crate::diagram::Diagram;
use crate::exact_math::{rat, LaurentPoly};

type IntPoly = BTreeMap<i64, i64>;

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Counts the loops of one smoothing state by walking them.
fn count_loops(k: &Diagram, mask: u64) -> usize {
    let xs = k.crossings();
    // arc -> the two (crossing, slot) places it touches
    let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, x) in xs.iter().enumerate() {
        for (s, a) in x.slots().iter().enumerate() {
            ends.entry(*a).or_default().push((i, s));
        }
    }
    let partner = |i: usize, s: usize| -> usize {
        if mask >> i & 1 == 0 {
            s ^ 1
        } else {
            3 - s
        }
    };
    let mut visited = vec![[false; 4]; xs.len()];
    let mut loops = 0;
    for i in 0..xs.len() {
        for s in 0..4 {
            if visited[i][s] {
                continue;
            }
            loops += 1;
            let (mut ci, mut cs) = (i, s);
            while !visited[ci][cs] {
                visited[ci][cs] = true;
                let t = partner(ci, cs);
                visited[ci][t] = true;
                let arc = xs[ci].slots()[t];
                let other = ends[&arc]
                    .iter()
                    .copied()
                    .find(|p| *p != (ci, t))
                    .unwrap_or((ci, t));
                (ci, cs) = other;
            }
        }
    }
    loops + k.free_loops()
}

/// Jones polynomial by direct enumeration of all smoothing states.
pub fn jones_oracle(k: &Diagram) -> LaurentPoly {
    let c = k.crossing_count();
    let loop_value: IntPoly = [(-2, -1), (2, -1)].into_iter().collect();
    let mut total = IntPoly::new();
    for mask in 0u64..(1u64 << c) {
        let b = mask.count_ones() as i64;
        let mut term: IntPoly = [(c as i64 - 2 * b, 1)].into_iter().collect();
        for _ in 1..count_loops(k, mask) {
            term = mul(&term, &loop_value);
        }
        for (e, v) in term {
            *total.entry(e).or_insert(0) += v;
        }
    }
    let w = k.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut out = LaurentPoly::zero('q');
    for (e, v) in total {
        if v == 0 {
            continue;
        }
        let a_exp = e - 3 * w;
        assert!(a_exp % 2 == 0, "odd exponent in normalized bracket");
        out.add_term(-a_exp / 2, rat(sign * v));
    }
    out
}

/// Conway polynomial with the skein relation applied along the reverse
/// traversal.
pub fn conway_oracle(k: &Diagram) -> Result<LaurentPoly, InvariantError> {
    conway_with_order(k, ResolutionOrder::Backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{conway, jones};
    use crate::table::KnotTable;

    #[test]
    fn oracles_match_on_table() {
        for (name, d) in KnotTable::bundled().entries() {
            assert_eq!(jones_oracle(d), jones(d), "{name}");
            assert_eq!(conway_oracle(d).unwrap(), conway(d).unwrap(), "{name}");
        }
    }

    #[test]
    fn hopf_link() {
        let hopf = Diagram::braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(jones_oracle(&hopf), jones(&hopf));
        assert_eq!(conway_oracle(&hopf).unwrap(), conway(&hopf).unwrap());
    }
}
