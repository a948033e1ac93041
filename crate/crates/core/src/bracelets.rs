//! Cyclically ordered links and Hopf-pair bracelets.

use std::fmt;

use thiserror::Error;

use crate::chord_algebra::{canonicalize, ChordDiagram};
use crate::diagram::{Diagram, GaussCode, Pass, Sign};
use crate::invariants::{linking_matrix, InvariantError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceletError {
    #[error("{0} rings cannot be paired: a fixed-point-free involution needs an even count")]
    OddRingCount(usize),
    #[error("not a perfect matching on 1..{n}: {detail}")]
    NotAMatching { n: usize, detail: String },
    #[error("cyclic order is not a permutation of the {0} components")]
    BadOrder(usize),
    #[error("linking numbers are not a Hopf pairing: {0}")]
    NotHopfPairs(String),
    #[error("{0} is even, so pairings exist")]
    EvenRingCount(usize),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// `n` rings in cyclic order, paired into Hopf links.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HopfPairBracelet {
    // partner[p] for positions 0..n
    partner: Vec<usize>,
}

impl HopfPairBracelet {
    /// Builds from 1-based position pairs such as `[(1, 3), (2, 4)]`.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, BraceletError> {
        if n % 2 == 1 {
            return Err(BraceletError::OddRingCount(n));
        }
        let bad = |detail: String| BraceletError::NotAMatching { n, detail };
        let mut partner = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(bad(format!("pair {a}:{b}")));
            }
            if partner[a - 1] != usize::MAX || partner[b - 1] != usize::MAX {
                return Err(bad(format!("position reused in {a}:{b}")));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        if let Some(p) = partner.iter().position(|q| *q == usize::MAX) {
            return Err(bad(format!("position {} unpaired", p + 1)));
        }
        Ok(HopfPairBracelet { partner })
    }

    /// Parses `a:b,c:d,...`.
    pub fn parse(n: usize, text: &str) -> Result<Self, BraceletError> {
        let bad = |detail: String| BraceletError::NotAMatching { n, detail };
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item.split_once(':').ok_or_else(|| bad(item.to_string()))?;
            let a: usize = a.trim().parse().map_err(|_| bad(item.to_string()))?;
            let b: usize = b.trim().parse().map_err(|_| bad(item.to_string()))?;
            pairs.push((a, b));
        }
        HopfPairBracelet::new(n, &pairs)
    }

    pub fn ring_count(&self) -> usize {
        self.partner.len()
    }

    /// Partner of each 0-based position.
    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// 1-based pairs with the smaller position first, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|p| *p < self.partner[*p])
            .map(|p| (p + 1, self.partner[p] + 1))
            .collect()
    }

    /// Shifts every position by `k` around the cycle.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.partner.len();
        let mut partner = vec![0; n];
        for p in 0..n {
            partner[(p + k) % n] = (self.partner[p] + k) % n;
        }
        HopfPairBracelet { partner }
    }

    /// Every perfect matching of `n` positions.
    pub fn all(n: usize) -> Result<Vec<Self>, BraceletError> {
        if n % 2 == 1 {
            return Err(BraceletError::OddRingCount(n));
        }
        let mut out = Vec::new();
        let mut partner = vec![usize::MAX; n];
        fn go(partner: &mut Vec<usize>, out: &mut Vec<HopfPairBracelet>) {
            let Some(a) = partner.iter().position(|q| *q == usize::MAX) else {
                out.push(HopfPairBracelet {
                    partner: partner.clone(),
                });
                return;
            };
            for b in a + 1..partner.len() {
                if partner[b] == usize::MAX {
                    partner[a] = b;
                    partner[b] = a;
                    go(partner, out);
                    partner[a] = usize::MAX;
                    partner[b] = usize::MAX;
                }
            }
        }
        go(&mut partner, &mut out);
        Ok(out)
    }
}

impl fmt::Display for HopfPairBracelet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("{a}:{b}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Witness that `n` rings cannot be paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyCertificate {
    pub ring_count: usize,
}

/// For odd `n` there is no Hopf-pair bracelet: an involution without fixed
/// points splits the positions into 2-element orbits.
pub fn odd_degree_empty(n: usize) -> Result<EmptyCertificate, BraceletError> {
    if n % 2 == 0 {
        return Err(BraceletError::EvenRingCount(n));
    }
    debug_assert!(HopfPairBracelet::new(n, &[]).is_err());
    Ok(EmptyCertificate { ring_count: n })
}

/// Positions on the circle, chords given by the pairing.
pub fn to_chord_diagram(b: &HopfPairBracelet) -> ChordDiagram {
    let word: Vec<usize> = (0..b.partner.len()).map(|p| p.min(b.partner[p])).collect();
    canonicalize(&word).expect("a matching is a chord diagram")
}

/// A link whose components carry a cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicLink {
    link: Diagram,
    order: Vec<usize>,
}

impl CyclicLink {
    /// `order[p]` is the component at position `p`; it is stored rotated so
    /// that component 0 comes first.
    pub fn new(link: Diagram, order: Vec<usize>) -> Result<Self, BraceletError> {
        let k = link.component_count();
        let mut sorted = order.clone();
        sorted.sort();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(BraceletError::BadOrder(k));
        }
        let start = order.iter().position(|c| *c == 0).unwrap_or(0);
        let mut order = order;
        order.rotate_left(start);
        Ok(CyclicLink { link, order })
    }

    pub fn link(&self) -> &Diagram {
        &self.link
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Component `p` is ring `p`; each pair is clasped by two positive
/// crossings and distinct pairs do not meet.
pub fn realize_as_link(b: &HopfPairBracelet) -> CyclicLink {
    let n = b.ring_count();
    let mut rings: Vec<Vec<Pass>> = vec![Vec::new(); n];
    let pass = |crossing, over| Pass {
        crossing,
        over,
        sign: Sign::Positive,
    };
    for (j, (a, c)) in b.pairs().into_iter().enumerate() {
        let (x, y) = (2 * j, 2 * j + 1);
        rings[a - 1].extend([pass(x, true), pass(y, false)]);
        rings[c - 1].extend([pass(x, false), pass(y, true)]);
    }
    let link = if n == 0 {
        Diagram::unlink(0)
    } else {
        GaussCode::new(rings)
            .to_diagram()
            .expect("clasp code is valid")
    };
    CyclicLink::new(link, (0..n).collect()).expect("identity order")
}

/// Chain of `k` rings, ring `i` clasped with ring `i + 1`.
pub fn chain_link(k: usize) -> Diagram {
    let pass = |crossing, over| Pass {
        crossing,
        over,
        sign: Sign::Positive,
    };
    let rings: Vec<Vec<Pass>> = (0..k)
        .map(|i| {
            let mut r = Vec::new();
            if i > 0 {
                r.extend([pass(2 * (i - 1), false), pass(2 * (i - 1) + 1, true)]);
            }
            if i + 1 < k {
                r.extend([pass(2 * i, true), pass(2 * i + 1, false)]);
            }
            r
        })
        .collect();
    GaussCode::new(rings)
        .to_diagram()
        .expect("chain code is valid")
}

/// Recovers the pairing when each position links exactly one other position
/// with linking number +-1 and nothing else.
pub fn detect_hopf_pairs(l: &CyclicLink) -> Result<HopfPairBracelet, BraceletError> {
    let n = l.order.len();
    if n % 2 == 1 {
        return Err(BraceletError::OddRingCount(n));
    }
    if n == 0 {
        return Ok(HopfPairBracelet {
            partner: Vec::new(),
        });
    }
    let m = linking_matrix(&l.link)?;
    let mut partner = vec![usize::MAX; n];
    for p in 0..n {
        let mut linked = Vec::new();
        for q in 0..n {
            let v = m[l.order[p]][l.order[q]];
            match v.abs() {
                0 => {}
                1 => linked.push(q),
                _ => {
                    return Err(BraceletError::NotHopfPairs(format!(
                        "lk = {v} at positions {}, {}",
                        p + 1,
                        q + 1
                    )))
                }
            }
        }
        match linked[..] {
            [q] => partner[p] = q,
            _ => {
                return Err(BraceletError::NotHopfPairs(format!(
                    "position {} links {} rings",
                    p + 1,
                    linked.len()
                )))
            }
        }
    }
    if (0..n).any(|p| partner[partner[p]] != p) {
        return Err(BraceletError::NotHopfPairs(
            "pairing is not symmetric".into(),
        ));
    }
    Ok(HopfPairBracelet { partner })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::exact_math::LaurentPoly;
    use crate::invariants::jones;

    #[test]
    fn odd_counts_fail() {
        for n in [1, 3, 5, 7] {
            assert_eq!(
                HopfPairBracelet::new(n, &[]).unwrap_err(),
                BraceletError::OddRingCount(n)
            );
            assert!(odd_degree_empty(n).is_ok());
        }
        assert!(HopfPairBracelet::new(4, &[(1, 3), (2, 4)]).is_ok());
        assert!(odd_degree_empty(4).is_err());
    }

    #[test]
    fn matching_errors() {
        assert!(HopfPairBracelet::new(4, &[(1, 3)]).is_err());
        assert!(HopfPairBracelet::new(4, &[(1, 3), (3, 4)]).is_err());
        assert!(HopfPairBracelet::new(2, &[(1, 1)]).is_err());
        assert!(HopfPairBracelet::parse(4, "1:3,2-4").is_err());
        assert_eq!(
            HopfPairBracelet::parse(4, "1:3, 2:4").unwrap().to_string(),
            "1:3,2:4"
        );
    }

    #[test]
    fn chord_images() {
        let one = HopfPairBracelet::new(2, &[(1, 2)]).unwrap();
        assert_eq!(to_chord_diagram(&one).to_string(), "AA");
        let cross = HopfPairBracelet::new(4, &[(1, 3), (2, 4)]).unwrap();
        assert_eq!(to_chord_diagram(&cross).to_string(), "ABAB");
        let side = HopfPairBracelet::new(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            to_chord_diagram(&side),
            ChordDiagram::parse("AABB").unwrap()
        );
    }

    #[test]
    fn realized_links() {
        let one = HopfPairBracelet::new(2, &[(1, 2)]).unwrap();
        let hopf = realize_as_link(&one);
        assert_eq!(hopf.link().crossing_count(), 2);
        assert_eq!(
            linking_matrix(hopf.link()).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            jones(hopf.link()),
            LaurentPoly::from_terms('q', &[(1, -1), (5, -1)])
        );
        let cross = HopfPairBracelet::new(4, &[(1, 3), (2, 4)]).unwrap();
        let m = linking_matrix(realize_as_link(&cross).link()).unwrap();
        assert_eq!(m[0][2], 1);
        assert_eq!(m[1][3], 1);
        assert_eq!(m[0][1] + m[0][3] + m[1][2] + m[2][3], 0);
    }

    #[test]
    fn exhaustive_detection() {
        for n in [0, 2, 4, 6, 8] {
            let all = HopfPairBracelet::all(n).unwrap();
            let mut matrices = BTreeSet::new();
            for b in &all {
                let l = realize_as_link(b);
                assert_eq!(&detect_hopf_pairs(&l).unwrap(), b);
                if n > 0 {
                    matrices.insert(linking_matrix(l.link()).unwrap());
                }
            }
            if n > 0 {
                assert_eq!(matrices.len(), all.len());
            }
        }
        assert_eq!(HopfPairBracelet::all(8).unwrap().len(), 105);
    }

    #[test]
    fn rejections() {
        let chain = CyclicLink::new(chain_link(4), vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(
            detect_hopf_pairs(&chain),
            Err(BraceletError::NotHopfPairs(_))
        ));
        let unlink = CyclicLink::new(Diagram::unlink(2), vec![0, 1]).unwrap();
        assert!(detect_hopf_pairs(&unlink).is_err());
        let three = CyclicLink::new(chain_link(3), vec![0, 1, 2]).unwrap();
        assert_eq!(
            detect_hopf_pairs(&three).unwrap_err(),
            BraceletError::OddRingCount(3)
        );
        let m = linking_matrix(&chain_link(3)).unwrap();
        assert_eq!((m[0][1].abs(), m[1][2].abs(), m[0][2]), (1, 1, 0));
    }

    #[test]
    fn cyclic_order_is_rotated_to_start_at_zero() {
        let l = CyclicLink::new(Diagram::unlink(3), vec![2, 0, 1]).unwrap();
        assert_eq!(l.order(), &[0, 1, 2]);
        assert!(CyclicLink::new(Diagram::unlink(3), vec![0, 0, 1]).is_err());
    }

    #[test]
    fn chord_image_is_rotation_invariant() {
        for b in HopfPairBracelet::all(6).unwrap() {
            for k in 0..6 {
                assert_eq!(to_chord_diagram(&b.rotated(k)), to_chord_diagram(&b));
            }
        }
    }
}
