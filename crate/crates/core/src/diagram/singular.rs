use std::collections::BTreeSet;
use std::fmt;

use super::{Diagram, DiagramError, Sign};

/// A diagram with some crossings marked as double points. The stored
/// over/under data at a double point is ignored by equality and by every
/// resolution.
#[derive(Debug, Clone)]
pub struct SingularDiagram {
    diagram: Diagram,
    singular: BTreeSet<usize>,
}

/// Marks the crossings in `indices` as double points.
pub fn mark_singular(k: &Diagram, indices: &[usize]) -> Result<SingularDiagram, DiagramError> {
    let mut singular = BTreeSet::new();
    for &i in indices {
        if i >= k.crossing_count() {
            return Err(DiagramError::CrossingIndex {
                index: i,
                count: k.crossing_count(),
            });
        }
        if !singular.insert(i) {
            return Err(DiagramError::DuplicateIndex(i));
        }
    }
    Ok(SingularDiagram {
        diagram: k.clone(),
        singular,
    })
}

impl SingularDiagram {
    pub fn from_diagram(k: Diagram) -> Self {
        SingularDiagram {
            diagram: k,
            singular: BTreeSet::new(),
        }
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn singular(&self) -> &BTreeSet<usize> {
        &self.singular
    }

    pub fn degree(&self) -> usize {
        self.singular.len()
    }

    pub fn is_singular(&self, i: usize) -> bool {
        self.singular.contains(&i)
    }

    /// Resolves double point `d` to the given sign; the result has one fewer
    /// double point.
    pub fn resolve(&self, d: usize, sign: Sign) -> Option<SingularDiagram> {
        if !self.singular.contains(&d) {
            return None;
        }
        let mut singular = self.singular.clone();
        singular.remove(&d);
        Some(SingularDiagram {
            diagram: self.diagram.with_sign(d, sign).ok()?,
            singular,
        })
    }

    /// Diagram with every double point resolved by `choose(index)`.
    pub fn resolve_with(&self, mut choose: impl FnMut(usize) -> Sign) -> Diagram {
        let mut d = self.diagram.clone();
        for &i in &self.singular {
            d = d.with_sign(i, choose(i)).expect("singular index in bounds");
        }
        d
    }

    fn normalized(&self) -> Diagram {
        self.resolve_with(|_| Sign::Positive)
    }

    pub fn canonical_key(&self) -> String {
        let d = self.normalized();
        let tags: Vec<bool> = (0..d.crossing_count())
            .map(|i| self.is_singular(i))
            .collect();
        d.canonical_key_tagged(&tags)
    }
}

impl PartialEq for SingularDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for SingularDiagram {}

impl fmt::Display for SingularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.singular.iter().map(|i| i.to_string()).collect();
        write!(f, "{} singular={}", self.diagram, idx.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn trefoil() -> Diagram {
        parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn empty_marking_equals_base() {
        let s = mark_singular(&trefoil(), &[]).unwrap();
        assert_eq!(s.degree(), 0);
        assert_eq!(s.diagram(), &trefoil());
    }

    #[test]
    fn markings() {
        assert_eq!(mark_singular(&trefoil(), &[0]).unwrap().degree(), 1);
        assert_eq!(mark_singular(&trefoil(), &[0, 1, 2]).unwrap().degree(), 3);
    }

    #[test]
    fn marking_errors() {
        assert_eq!(
            mark_singular(&trefoil(), &[3]).unwrap_err(),
            DiagramError::CrossingIndex { index: 3, count: 3 }
        );
        assert_eq!(
            mark_singular(&trefoil(), &[1, 1]).unwrap_err(),
            DiagramError::DuplicateIndex(1)
        );
    }

    #[test]
    fn over_under_at_double_point_is_forgotten() {
        let a = mark_singular(&trefoil(), &[0]).unwrap();
        let b = mark_singular(&trefoil().switch_crossing(0).unwrap(), &[0]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, SingularDiagram::from_diagram(trefoil()));
    }
}
