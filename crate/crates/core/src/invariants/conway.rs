use std::collections::BTreeSet;

use super::InvariantError;
use crate::diagram::Diagram;
use crate::exact_math::{rat, LaurentPoly};

/// Recursion depth at which the skein evaluation gives up.
pub const CONWAY_DEPTH_CAP: usize = 512;

/// Traversal used to find the crossing the skein relation is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResolutionOrder {
    /// Components in order, each along its orientation from its smallest arc.
    #[default]
    Forward,
    /// Components in reverse order, each against its orientation.
    Backward,
}

/// Conway polynomial in `z` by the skein relation `C(L+) - C(L-) = z C(L0)`.
pub fn conway(k: &Diagram) -> Result<LaurentPoly, InvariantError> {
    conway_with_order(k, ResolutionOrder::Forward)
}

pub fn conway_with_order(
    k: &Diagram,
    order: ResolutionOrder,
) -> Result<LaurentPoly, InvariantError> {
    skein(k, order, 0)
}

fn skein(k: &Diagram, order: ResolutionOrder, depth: usize) -> Result<LaurentPoly, InvariantError> {
    if depth > CONWAY_DEPTH_CAP {
        return Err(InvariantError::DepthExceeded(CONWAY_DEPTH_CAP));
    }
    let Some(i) = first_undescending(k, order) else {
        return Ok(if k.component_count() == 1 {
            LaurentPoly::one('z')
        } else {
            LaurentPoly::zero('z')
        });
    };
    let s = k.crossings()[i].sign().value();
    let switched = k.switch_crossing(i).expect("index in bounds");
    let smoothed = k.smooth(i).expect("index in bounds");
    let a = skein(&switched, order, depth + 1)?;
    let b = skein(&smoothed, order, depth + 1)?;
    let zs = LaurentPoly::monomial('z', rat(s), 1);
    Ok(a + zs * b)
}

/// First crossing met from below on the traversal, if any. A diagram with
/// none is a stack of unknotted, unlinked components.
fn first_undescending(k: &Diagram, order: ResolutionOrder) -> Option<usize> {
    let mut comps = k.component_arcs();
    if order == ResolutionOrder::Backward {
        comps.reverse();
        for c in comps.iter_mut() {
            c.reverse();
        }
    }
    // arc -> (crossing, over) at the end the traversal moves towards
    let n = k.arc_count() as usize;
    let mut next_pass = vec![(0usize, false); n + 1];
    for (i, x) in k.crossings().iter().enumerate() {
        let (u, o) = match order {
            ResolutionOrder::Forward => (x.under_in(), x.over_in()),
            ResolutionOrder::Backward => (x.under_out(), x.over_out()),
        };
        next_pass[u as usize] = (i, false);
        next_pass[o as usize] = (i, true);
    }
    let mut seen = BTreeSet::new();
    for arc in comps.iter().flatten() {
        let (i, over) = next_pass[*arc as usize];
        if seen.insert(i) && !over {
            return Some(i);
        }
    }
    None
}
