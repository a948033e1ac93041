//! Resolution of double points and alternating sums over crossing switches.

use std::fmt;

use thiserror::Error;

use crate::diagram::{mark_singular, Diagram, DiagramError, Sign, SingularDiagram};
use crate::exact_math::{rat, Rational};
use crate::formal_sum::FormalSum;
use crate::invariants::{Invariant, InvariantError, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VassilievError {
    #[error("crossing {0} is not a double point")]
    NotSingular(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("case {case} has {found} crossings, expected {expected}")]
    SubsetSize {
        case: usize,
        found: usize,
        expected: usize,
    },
}

/// Positive minus negative resolution of double point `d`.
pub fn resolve_once(
    k: &SingularDiagram,
    d: usize,
) -> Result<FormalSum<SingularDiagram>, VassilievError> {
    let plus = k
        .resolve(d, Sign::Positive)
        .ok_or(VassilievError::NotSingular(d))?;
    let minus = k
        .resolve(d, Sign::Negative)
        .ok_or(VassilievError::NotSingular(d))?;
    let mut out = FormalSum::single(plus);
    out.add_term(minus, rat(-1));
    Ok(out)
}

/// Applies `resolve_once` to the double points in the given order.
pub fn resolve_in_order(
    k: &SingularDiagram,
    order: &[usize],
) -> Result<FormalSum<SingularDiagram>, VassilievError> {
    let mut acc = FormalSum::single(k.clone());
    for &d in order {
        let mut next = FormalSum::zero();
        for (g, c) in acc.terms() {
            next.add_scaled(&resolve_once(g, d)?, c);
        }
        acc = next;
    }
    Ok(acc)
}

/// Sum over all sign choices at the double points, weighted by the product
/// of the signs.
pub fn resolve_all(k: &SingularDiagram) -> FormalSum<Diagram> {
    let points: Vec<usize> = k.singular().iter().copied().collect();
    let mut out = FormalSum::zero();
    for mask in 0u64..(1u64 << points.len()) {
        let negative = |i: usize| {
            points
                .iter()
                .position(|p| *p == i)
                .is_some_and(|j| mask >> j & 1 == 1)
        };
        let d = k.resolve_with(|i| {
            if negative(i) {
                Sign::Negative
            } else {
                Sign::Positive
            }
        });
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add_term(d, rat(sign));
    }
    out
}

/// `sum over S in C of (-1)^|S| I(K with S switched)`.
pub fn vassiliev_difference(
    k: &Diagram,
    crossings: &[usize],
    inv: Invariant,
) -> Result<Value, VassilievError> {
    // validates bounds and distinctness
    mark_singular(k, crossings)?;
    let mut acc = inv.zero();
    for mask in 0u64..(1u64 << crossings.len()) {
        let mut d = k.clone();
        for (j, &i) in crossings.iter().enumerate() {
            if mask >> j & 1 == 1 {
                d = d.switch_crossing(i)?;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 {
            rat(1)
        } else {
            rat(-1)
        };
        acc = acc.add_scaled(&inv.evaluate(&d)?, &sign)?;
    }
    Ok(acc)
}

/// One evaluated alternating sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseOutcome {
    pub label: String,
    pub value: Value,
}

/// Outcome of checking that an invariant's alternating sums vanish on a
/// corpus. Passing only means no counterexample was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCheckReport {
    pub invariant: Invariant,
    pub degree: usize,
    pub cases: Vec<CaseOutcome>,
}

impl TypeCheckReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.value.is_zero())
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.value.is_zero())
    }
}

impl fmt::Display for TypeCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(f, "{} value={}", c.label, c.value)?;
        }
        let bad = self.witnesses().count();
        if bad == 0 {
            write!(
                f,
                "PASS {} degree {}: no counterexample found in {} cases",
                self.invariant,
                self.degree,
                self.cases.len()
            )
        } else {
            write!(
                f,
                "FAIL {} degree {}: {} of {} cases nonzero",
                self.invariant,
                self.degree,
                bad,
                self.cases.len()
            )
        }
    }
}

/// Evaluates the (n+1)-fold difference on each `(diagram, crossings)` case.
pub fn vassiliev_type_check(
    inv: Invariant,
    n: usize,
    corpus: &[(Diagram, Vec<usize>)],
) -> Result<TypeCheckReport, VassilievError> {
    let mut cases = Vec::new();
    for (idx, (k, c)) in corpus.iter().enumerate() {
        if c.len() != n + 1 {
            return Err(VassilievError::SubsetSize {
                case: idx,
                found: c.len(),
                expected: n + 1,
            });
        }
        let label: Vec<String> = c.iter().map(|i| i.to_string()).collect();
        cases.push(CaseOutcome {
            label: format!("case {idx} crossings={}", label.join(",")),
            value: vassiliev_difference(k, c, inv)?,
        });
    }
    Ok(TypeCheckReport {
        invariant: inv,
        degree: n,
        cases,
    })
}

/// Product of the crossing signs at `crossings`: the factor relating
/// `vassiliev_difference` to the resolution of the marked diagram.
pub fn orientation_factor(k: &Diagram, crossings: &[usize]) -> Rational {
    rat(crossings
        .iter()
        .map(|&i| k.crossings()[i].sign().value())
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::jones;
    use crate::table::knot;

    #[test]
    fn resolve_once_has_two_terms() {
        let s = mark_singular(&knot("3_1"), &[0]).unwrap();
        let r = resolve_once(&s, 0).unwrap();
        assert_eq!(r.len(), 2);
        let mut coeffs: Vec<Rational> = r.terms().map(|(_, c)| c.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![rat(-1), rat(1)]);
        let values: Vec<_> = r.terms().map(|(g, _)| jones(g.diagram())).collect();
        assert!(values.contains(&jones(&knot("3_1"))));
        assert!(values.iter().any(|v| v.is_one()));
        assert_eq!(
            resolve_once(&s, 1).unwrap_err(),
            VassilievError::NotSingular(1)
        );
    }

    #[test]
    fn resolve_all_small_cases() {
        let k = knot("4_1");
        let zero = resolve_all(&SingularDiagram::from_diagram(k.clone()));
        assert_eq!(zero, FormalSum::single(k.clone()));
        let one = mark_singular(&k, &[2]).unwrap();
        let via_once = resolve_once(&one, 2)
            .unwrap()
            .map_linear(|g| FormalSum::single(g.diagram().clone()));
        assert_eq!(resolve_all(&one), via_once);
    }

    #[test]
    fn two_orders_agree() {
        let s = mark_singular(&knot("5_2"), &[1, 3]).unwrap();
        let a = resolve_in_order(&s, &[1, 3]).unwrap();
        let b = resolve_in_order(&s, &[3, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn trefoil_differences() {
        let t = knot("3_1");
        assert_eq!(
            vassiliev_difference(&t, &[], Invariant::C2).unwrap(),
            Value::Rational(rat(1))
        );
        assert_eq!(
            vassiliev_difference(&t, &[0, 1], Invariant::C2).unwrap(),
            Value::Rational(rat(1))
        );
        assert!(vassiliev_difference(&t, &[0, 1, 2], Invariant::C2)
            .unwrap()
            .is_zero());
        assert!(vassiliev_difference(&t, &[0, 3], Invariant::C2).is_err());
        assert!(vassiliev_difference(&t, &[1, 1], Invariant::C2).is_err());
    }

    #[test]
    fn type_check_reports() {
        let t = knot("3_1");
        let pass = vassiliev_type_check(Invariant::C2, 2, &[(t.clone(), vec![0, 1, 2])]).unwrap();
        assert!(pass.passed());
        assert!(pass.to_string().contains("no counterexample found"));
        let fail = vassiliev_type_check(Invariant::C2, 1, &[(t.clone(), vec![0, 1])]).unwrap();
        assert!(!fail.passed());
        assert_eq!(
            fail.witnesses().next().unwrap().value,
            Value::Rational(rat(1))
        );
        assert!(vassiliev_type_check(Invariant::C2, 1, &[(t, vec![0])]).is_err());
    }

    #[test]
    fn jones_is_not_type_three() {
        let k = knot("5_1");
        let r = vassiliev_type_check(Invariant::Jones, 3, &[(k, vec![0, 1, 2, 3])]).unwrap();
        assert!(!r.passed());
    }
}
