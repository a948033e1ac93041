//! Oriented knot and link diagrams.
//!
//! A [`Diagram`] is a planar-diagram (PD) code: each crossing lists its four
//! incident arcs counterclockwise starting from the incoming under-strand.
//! The crossing is positive when the outgoing over-strand has the incoming
//! under-strand on its right, so for `X[a,b,c,d]` the over-strand runs
//! `d -> b` on a positive crossing and `b -> d` on a negative one.
//!
//! Planar realizability is not checked. Invariants are only meaningful for
//! codes that come from actual planar diagrams.

mod braid;
mod gauss;
mod pd;
mod singular;

pub(crate) use gauss::parse_passes;
pub use gauss::{parse_gauss, GaussCode, Pass};
pub use pd::{parse_pd, serialize_pd};
pub use singular::{mark_singular, SingularDiagram};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("malformed preamble `{0}`")]
    MalformedPreamble(String),
    #[error("arc {arc} appears {count} times (expected 2)")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("arc {arc} outside 1..={max}")]
    ArcOutOfRange { arc: u32, max: u32 },
    #[error("orientation inconsistency at arc {arc}")]
    Orientation { arc: u32 },
    #[error("preamble declares {declared} components but the crossings form {found}")]
    ComponentCount { declared: usize, found: usize },
    #[error("crossing index {index} out of bounds for {count} crossings")]
    CrossingIndex { index: usize, count: usize },
    #[error("crossing index {0} listed twice")]
    DuplicateIndex(usize),
    #[error("crossing {0} must appear exactly once over and once under")]
    GaussCount(usize),
    #[error("crossing {0} carries different signs in its two appearances")]
    GaussSignMismatch(usize),
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One crossing: arc labels in PD order plus its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    slots: [u32; 4],
    sign: Sign,
}

impl Crossing {
    pub fn new(slots: [u32; 4], sign: Sign) -> Self {
        Crossing { slots, sign }
    }

    pub fn slots(&self) -> [u32; 4] {
        self.slots
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn under_in(&self) -> u32 {
        self.slots[0]
    }

    pub fn under_out(&self) -> u32 {
        self.slots[2]
    }

    pub fn over_in(&self) -> u32 {
        match self.sign {
            Sign::Positive => self.slots[3],
            Sign::Negative => self.slots[1],
        }
    }

    pub fn over_out(&self) -> u32 {
        match self.sign {
            Sign::Positive => self.slots[1],
            Sign::Negative => self.slots[3],
        }
    }

    /// Exchanges over and under. Slots are rotated so the new incoming
    /// under-strand comes first; the sign flips.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        match self.sign {
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }

    fn relabeled(&self, map: impl Fn(u32) -> u32) -> Crossing {
        Crossing::new(self.slots.map(map), self.sign)
    }
}

/// A validated oriented diagram. Arcs are labeled `1..=2c`; crossingless
/// components are counted separately as free loops.
///
/// Components are ordered by their smallest arc label, with free loops last.
/// Equality compares canonical serializations, never knot types.
#[derive(Debug, Clone)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    // arc label - 1 -> component index
    arc_component: Vec<usize>,
    traced_components: usize,
}

impl Diagram {
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(components: usize) -> Self {
        Diagram {
            crossings: Vec::new(),
            free_loops: components,
            arc_component: Vec::new(),
            traced_components: 0,
        }
    }

    /// Validates crossings whose arcs are labeled exactly `1..=2c`.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let max = 2 * crossings.len() as u32;
        let mut counts = vec![0usize; max as usize + 1];
        for x in &crossings {
            for a in x.slots {
                if a == 0 || a > max {
                    return Err(DiagramError::ArcOutOfRange { arc: a, max });
                }
                counts[a as usize] += 1;
            }
        }
        if let Some(arc) = (1..=max).find(|a| counts[*a as usize] != 2) {
            return Err(DiagramError::ArcMultiplicity {
                arc,
                count: counts[arc as usize],
            });
        }
        let mut ins = vec![0usize; max as usize + 1];
        let mut outs = vec![0usize; max as usize + 1];
        for x in &crossings {
            ins[x.under_in() as usize] += 1;
            ins[x.over_in() as usize] += 1;
            outs[x.under_out() as usize] += 1;
            outs[x.over_out() as usize] += 1;
        }
        if let Some(arc) = (1..=max).find(|a| ins[*a as usize] != 1 || outs[*a as usize] != 1) {
            return Err(DiagramError::Orientation { arc });
        }
        let mut d = Diagram {
            crossings,
            free_loops,
            arc_component: Vec::new(),
            traced_components: 0,
        };
        d.trace_components();
        Ok(d)
    }

    /// Accepts arbitrary positive labels (each used exactly twice), compacts
    /// them and relabels along the traversal.
    pub fn from_labeled(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let labels: BTreeSet<u32> = crossings.iter().flat_map(|x| x.slots).collect();
        let index: BTreeMap<u32, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (*l, i as u32 + 1))
            .collect();
        let compact: Vec<Crossing> = crossings
            .iter()
            .map(|x| x.relabeled(|a| index[&a]))
            .collect();
        Ok(Diagram::new(compact, free_loops)?.relabel_canonical())
    }

    fn trace_components(&mut self) {
        let n = self.arc_count() as usize;
        let succ = self.successor_table();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 1..=n as u32 {
            if comp[start as usize - 1] != usize::MAX {
                continue;
            }
            let mut a = start;
            loop {
                comp[a as usize - 1] = count;
                a = succ[a as usize - 1];
                if a == start {
                    break;
                }
            }
            count += 1;
        }
        self.arc_component = comp;
        self.traced_components = count;
    }

    /// `succ[a-1]` is the arc that follows arc `a` through its head crossing.
    fn successor_table(&self) -> Vec<u32> {
        let mut succ = vec![0u32; self.arc_count() as usize];
        for x in &self.crossings {
            succ[x.under_in() as usize - 1] = x.under_out();
            succ[x.over_in() as usize - 1] = x.over_out();
        }
        succ
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.traced_components + self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Component index of an arc.
    pub fn component_of(&self, arc: u32) -> usize {
        self.arc_component[arc as usize - 1]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign.value()).sum()
    }

    /// Arcs of each traced component in traversal order, starting from the
    /// smallest label. Free loops are not listed.
    pub fn component_arcs(&self) -> Vec<Vec<u32>> {
        let succ = self.successor_table();
        let mut out: Vec<Vec<u32>> = vec![Vec::new(); self.traced_components];
        for c in 0..self.traced_components {
            let start = (1..=self.arc_count())
                .find(|a| self.component_of(*a) == c)
                .expect("component has arcs");
            let mut a = start;
            loop {
                out[c].push(a);
                a = succ[a as usize - 1];
                if a == start {
                    break;
                }
            }
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<(), DiagramError> {
        if i >= self.crossings.len() {
            Err(DiagramError::CrossingIndex {
                index: i,
                count: self.crossings.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Exchanges over and under at crossing `i`; everything else is kept.
    pub fn switch_crossing(&self, i: usize) -> Result<Diagram, DiagramError> {
        self.check_index(i)?;
        let mut d = self.clone();
        d.crossings[i] = d.crossings[i].switched();
        Ok(d)
    }

    /// Crossing `i` forced to the given sign (switched if necessary).
    pub fn with_sign(&self, i: usize, sign: Sign) -> Result<Diagram, DiagramError> {
        self.check_index(i)?;
        if self.crossings[i].sign == sign {
            Ok(self.clone())
        } else {
            self.switch_crossing(i)
        }
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> Diagram {
        let mut d = self.clone();
        for x in d.crossings.iter_mut() {
            *x = x.switched();
        }
        d
    }

    /// Oriented smoothing of crossing `i`: incoming under joins outgoing
    /// over and incoming over joins outgoing under.
    pub fn smooth(&self, i: usize) -> Result<Diagram, DiagramError> {
        self.check_index(i)?;
        let x = self.crossings[i];
        let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
        fn find(p: &BTreeMap<u32, u32>, a: u32) -> u32 {
            let mut r = a;
            while let Some(&n) = p.get(&r) {
                if n == r {
                    break;
                }
                r = n;
            }
            r
        }
        let mut union = |a: u32, b: u32| {
            let ra = find(&parent, a);
            let rb = find(&parent, b);
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        };
        union(x.under_in(), x.over_out());
        union(x.over_in(), x.under_out());
        let rest: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| c.relabeled(|a| find(&parent, a)))
            .collect();
        let used: BTreeSet<u32> = rest.iter().flat_map(|c| c.slots).collect();
        let merged: BTreeSet<u32> = x.slots.iter().map(|a| find(&parent, *a)).collect();
        let closed = merged.iter().filter(|r| !used.contains(r)).count();
        Diagram::from_labeled(rest, self.free_loops + closed)
    }

    /// Relabels arcs consecutively along each component, components in their
    /// current order. Components made only of over-passes start at the
    /// incoming over-arc of their first crossing so that PD parsing recovers
    /// the same orientation.
    pub fn relabel_canonical(&self) -> Diagram {
        let comps = self.component_arcs();
        let under_arcs: BTreeSet<u32> = self
            .crossings
            .iter()
            .flat_map(|x| [x.under_in(), x.under_out()])
            .collect();
        let mut map = vec![0u32; self.arc_count() as usize + 1];
        let mut next = 1;
        for arcs in &comps {
            let start_pos = if arcs.iter().any(|a| under_arcs.contains(a)) {
                0
            } else {
                let first = self
                    .crossings
                    .iter()
                    .find(|x| arcs.contains(&x.over_in()))
                    .expect("component crosses something");
                arcs.iter().position(|a| *a == first.over_in()).unwrap()
            };
            for k in 0..arcs.len() {
                map[arcs[(start_pos + k) % arcs.len()] as usize] = next;
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| x.relabeled(|a| map[a as usize]))
            .collect();
        Diagram::new(crossings, self.free_loops).expect("relabeling preserves validity")
    }

    /// Lexicographically minimal sorted crossing list over all cyclic
    /// relabelings of each component, rendered as text. Crossings flagged in
    /// `tags` are rendered with an `S` prefix.
    pub(crate) fn canonical_key_tagged(&self, tags: &[bool]) -> String {
        let comps = self.component_arcs();
        let mut best: Option<Vec<(bool, [u32; 4])>> = None;
        let total: usize = comps.iter().map(|c| c.len()).product();
        let exhaustive = total <= 4096;
        let mut starts = vec![0usize; comps.len()];
        loop {
            let mut map = vec![0u32; self.arc_count() as usize + 1];
            let mut next = 1;
            for (ci, arcs) in comps.iter().enumerate() {
                for k in 0..arcs.len() {
                    map[arcs[(starts[ci] + k) % arcs.len()] as usize] = next;
                    next += 1;
                }
            }
            let mut list: Vec<(bool, [u32; 4])> = self
                .crossings
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    (
                        tags.get(i).copied().unwrap_or(false),
                        x.slots.map(|a| map[a as usize]),
                    )
                })
                .collect();
            list.sort();
            if best.as_ref().map_or(true, |b| list < *b) {
                best = Some(list);
            }
            if !exhaustive {
                break;
            }
            // odometer over component start positions
            let mut k = 0;
            loop {
                if k == comps.len() {
                    break;
                }
                starts[k] += 1;
                if starts[k] < comps[k].len() {
                    break;
                }
                starts[k] = 0;
                k += 1;
            }
            if k == comps.len() {
                break;
            }
        }
        let body: Vec<String> = best
            .unwrap_or_default()
            .iter()
            .map(|(t, s)| {
                format!(
                    "{}[{},{},{},{}]",
                    if *t { 'S' } else { 'X' },
                    s[0],
                    s[1],
                    s[2],
                    s[3]
                )
            })
            .collect();
        format!("k={} {}", self.component_count(), body.join(" "))
    }

    pub fn canonical_key(&self) -> String {
        self.canonical_key_tagged(&[])
    }

    pub fn to_gauss(&self) -> Result<GaussCode, DiagramError> {
        GaussCode::from_diagram(self)
    }
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for Diagram {}

impl Hash for Diagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize_pd(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn switch_is_an_involution() {
        let k = parse_pd(TREFOIL).unwrap();
        for i in 0..3 {
            let twice = k.switch_crossing(i).unwrap().switch_crossing(i).unwrap();
            assert_eq!(twice.crossings(), k.crossings());
        }
    }

    #[test]
    fn switch_changes_writhe_by_two() {
        let k = parse_pd(TREFOIL).unwrap();
        for i in 0..3 {
            let s = k.switch_crossing(i).unwrap();
            let delta = s.writhe() - k.writhe();
            assert_eq!(delta, -2 * k.crossings()[i].sign().value());
        }
    }

    #[test]
    fn switch_out_of_bounds() {
        let k = parse_pd(TREFOIL).unwrap();
        assert_eq!(
            k.switch_crossing(3).unwrap_err(),
            DiagramError::CrossingIndex { index: 3, count: 3 }
        );
    }

    #[test]
    fn switched_crossing_keeps_strand_directions() {
        for sign in [Sign::Positive, Sign::Negative] {
            let x = Crossing::new([1, 2, 3, 4], sign);
            let y = x.switched();
            assert_eq!(y.sign(), sign.flip());
            assert_eq!(y.under_in(), x.over_in());
            assert_eq!(y.under_out(), x.over_out());
            assert_eq!(y.over_in(), x.under_in());
            assert_eq!(y.over_out(), x.under_out());
        }
    }

    #[test]
    fn trefoil_components_and_writhe() {
        let k = parse_pd(TREFOIL).unwrap();
        assert_eq!(k.component_count(), 1);
        assert_eq!(k.writhe(), -3);
        assert_eq!(k.component_arcs(), vec![vec![1, 2, 3, 4, 5, 6]]);
    }

    #[test]
    fn smoothing_the_kink_gives_two_loops() {
        let k = parse_pd("X[1,1,2,2]").unwrap();
        let s = k.smooth(0).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn smoothing_a_trefoil_crossing_gives_hopf_link() {
        let k = parse_pd(TREFOIL).unwrap();
        let s = k.smooth(0).unwrap();
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn canonical_key_ignores_rotation_of_labels() {
        let k = parse_pd(TREFOIL).unwrap();
        let rotated = parse_pd("X[2,5,3,6] X[4,1,5,2] X[6,3,1,4]").unwrap();
        assert_eq!(k, rotated);
        assert_ne!(k, k.mirror());
    }

    #[test]
    fn new_rejects_bad_labels() {
        let x = Crossing::new([1, 2, 3, 5], Sign::Positive);
        assert!(matches!(
            Diagram::new(vec![x], 0),
            Err(DiagramError::ArcOutOfRange { arc: 3, .. })
                | Err(DiagramError::ArcOutOfRange { .. })
        ));
    }
}
