//! Exact knot and link invariants.

mod conway;
mod jones;
mod linking;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use num::Zero;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::exact_math::{format_rational, laurent_substitute_exp, LaurentPoly, Rational};
use crate::formal_sum::FormalSum;

pub use conway::{conway, conway_with_order, ResolutionOrder, CONWAY_DEPTH_CAP};
pub use jones::{jones, jones_with_state_count, kauffman_bracket};
pub use linking::linking_matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{name} needs a knot, got {components} components")]
    NotAKnot {
        name: &'static str,
        components: usize,
    },
    #[error("linking matrix needs at least 2 components, got {0}")]
    TooFewComponents(usize),
    #[error("skein recursion exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("unknown invariant {0}")]
    UnknownName(String),
    #[error("cannot combine values of different kinds")]
    KindMismatch,
}

/// The value of an invariant: a rational number or a Laurent polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Poly(LaurentPoly),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::Poly(p) => p.is_zero(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Value, s: &Rational) -> Result<Value, InvariantError> {
        match (self, other) {
            (Value::Rational(a), Value::Rational(b)) => Ok(Value::Rational(a + b * s)),
            (Value::Poly(a), Value::Poly(b)) => a
                .try_add(&b.scale(s))
                .map(Value::Poly)
                .map_err(|_| InvariantError::KindMismatch),
            _ => Err(InvariantError::KindMismatch),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        match self {
            Value::Poly(p) => Some(p),
            Value::Rational(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{}", format_rational(r)),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// The invariants usable as functionals in alternating sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Invariant {
    Jones,
    Conway,
    C2,
    J3,
}

impl Invariant {
    pub const ALL: [Invariant; 4] = [
        Invariant::Jones,
        Invariant::Conway,
        Invariant::C2,
        Invariant::J3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Jones => "jones",
            Invariant::Conway => "conway",
            Invariant::C2 => "c2",
            Invariant::J3 => "j3",
        }
    }

    /// Additive identity of the value kind.
    pub fn zero(self) -> Value {
        match self {
            Invariant::Jones => Value::Poly(LaurentPoly::zero('q')),
            Invariant::Conway => Value::Poly(LaurentPoly::zero('z')),
            Invariant::C2 | Invariant::J3 => Value::Rational(Rational::zero()),
        }
    }

    pub fn evaluate(self, k: &Diagram) -> Result<Value, InvariantError> {
        Ok(match self {
            Invariant::Jones => Value::Poly(jones(k)),
            Invariant::Conway => Value::Poly(conway(k)?),
            Invariant::C2 => Value::Rational(c2(k)?),
            Invariant::J3 => Value::Rational(j3(k)?),
        })
    }

    /// Linear extension to formal sums of diagrams.
    pub fn evaluate_sum(self, s: &FormalSum<Diagram>) -> Result<Value, InvariantError> {
        let mut acc = self.zero();
        for (d, c) in s.terms() {
            acc = acc.add_scaled(&self.evaluate(d)?, c)?;
        }
        Ok(acc)
    }
}

impl FromStr for Invariant {
    type Err = InvariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| InvariantError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require_knot(k: &Diagram, name: &'static str) -> Result<(), InvariantError> {
    if k.is_knot() {
        Ok(())
    } else {
        Err(InvariantError::NotAKnot {
            name,
            components: k.component_count(),
        })
    }
}

/// Coefficient of `z^2` in the Conway polynomial.
pub fn c2(k: &Diagram) -> Result<Rational, InvariantError> {
    require_knot(k, "c2")?;
    Ok(conway(k)?.coefficient(2))
}

/// Coefficient of `x^3` in the Jones polynomial at `q = e^x`.
pub fn j3(k: &Diagram) -> Result<Rational, InvariantError> {
    require_knot(k, "j3")?;
    Ok(laurent_substitute_exp(&jones(k), 3).coefficient(3).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_gauss, parse_pd};
    use crate::exact_math::rat;
    use crate::table::{knot, KnotTable};

    fn q(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms('q', terms)
    }

    fn z(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms('z', terms)
    }

    #[test]
    fn unknot_and_unlink() {
        assert!(jones(&Diagram::unknot()).is_one());
        assert!(conway(&Diagram::unknot()).unwrap().is_one());
        assert!(conway(&Diagram::unlink(2)).unwrap().is_zero());
        assert_eq!(jones(&Diagram::unlink(2)), q(&[(-1, -1), (1, -1)]));
    }

    #[test]
    fn table_jones() {
        assert_eq!(jones(&knot("3_1")), q(&[(-8, -1), (-6, 1), (-2, 1)]));
        assert_eq!(
            jones(&knot("4_1")),
            q(&[(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)])
        );
        assert_eq!(
            jones(&knot("6_1")),
            q(&[
                (-8, 1),
                (-6, -1),
                (-4, 1),
                (-2, -2),
                (0, 2),
                (2, -1),
                (4, 1)
            ])
        );
        assert_eq!(
            jones(&knot("8_3")),
            q(&[
                (-8, 1),
                (-6, -1),
                (-4, 2),
                (-2, -3),
                (0, 3),
                (2, -3),
                (4, 2),
                (6, -1),
                (8, 1)
            ])
        );
    }

    #[test]
    fn table_conway() {
        let expect = [
            ("0_1", z(&[(0, 1)])),
            ("3_1", z(&[(0, 1), (2, 1)])),
            ("4_1", z(&[(0, 1), (2, -1)])),
            ("5_1", z(&[(0, 1), (2, 3), (4, 1)])),
            ("5_2", z(&[(0, 1), (2, 2)])),
            ("6_1", z(&[(0, 1), (2, -2)])),
            ("6_2", z(&[(0, 1), (2, -1), (4, -1)])),
            ("6_3", z(&[(0, 1), (2, 1), (4, 1)])),
            ("7_1", z(&[(0, 1), (2, 6), (4, 5), (6, 1)])),
            ("8_3", z(&[(0, 1), (2, -4)])),
        ];
        for (name, poly) in expect {
            assert_eq!(conway(&knot(name)).unwrap(), poly, "{name}");
        }
    }

    #[test]
    fn hopf_link() {
        let hopf = Diagram::braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(jones(&hopf), q(&[(1, -1), (5, -1)]));
        assert_eq!(conway(&hopf).unwrap(), z(&[(1, 1)]));
        assert_eq!(conway(&hopf.mirror()).unwrap(), z(&[(1, -1)]));
    }

    #[test]
    fn c2_values() {
        assert_eq!(c2(&Diagram::unknot()).unwrap(), rat(0));
        assert_eq!(c2(&knot("3_1")).unwrap(), rat(1));
        assert_eq!(c2(&knot("4_1")).unwrap(), rat(-1));
        assert!(matches!(
            c2(&Diagram::unlink(2)),
            Err(InvariantError::NotAKnot { components: 2, .. })
        ));
    }

    #[test]
    fn j3_is_odd_under_mirror() {
        let t = knot("3_1");
        let v = j3(&t).unwrap();
        assert!(!v.is_zero());
        assert_eq!(j3(&t.mirror()).unwrap(), -v);
        assert_eq!(j3(&Diagram::unknot()).unwrap(), rat(0));
    }

    #[test]
    fn second_trefoil_diagrams_agree() {
        let t = knot("3_1").mirror();
        let braid = Diagram::braid_closure(2, &[1, 1, 1]).unwrap();
        let stabilized = Diagram::braid_closure(3, &[1, 1, 1, 2]).unwrap();
        let gauss = parse_gauss("O1+U2+O3+U1+O2+U3+").unwrap();
        assert_eq!(stabilized.crossing_count(), 4);
        for other in [&braid, &stabilized, &gauss] {
            for inv in Invariant::ALL {
                assert_eq!(inv.evaluate(other), inv.evaluate(&t), "{inv}");
            }
        }
    }

    #[test]
    fn mirror_inverts_q_on_table() {
        for (name, d) in KnotTable::bundled().entries() {
            assert_eq!(jones(&d.mirror()), jones(d).substitute_power(-1), "{name}");
            assert_eq!(conway(&d.mirror()).unwrap(), conway(d).unwrap(), "{name}");
        }
    }

    #[test]
    fn finite_type_coefficients_are_integers() {
        for (name, d) in KnotTable::bundled().entries() {
            assert!(c2(d).unwrap().is_integer(), "{name}");
            assert!(j3(d).unwrap().is_integer(), "{name}");
        }
    }

    #[test]
    fn linear_extension() {
        let mut s = FormalSum::single(knot("3_1"));
        s.add_term(knot("4_1"), rat(-2));
        assert_eq!(
            Invariant::C2.evaluate_sum(&s).unwrap(),
            Value::Rational(rat(3))
        );
        assert_eq!(
            Invariant::Jones.evaluate_sum(&FormalSum::zero()).unwrap(),
            Invariant::Jones.zero()
        );
    }

    #[test]
    fn names_parse() {
        for inv in Invariant::ALL {
            assert_eq!(inv.name().parse::<Invariant>().unwrap(), inv);
        }
        assert!("homfly".parse::<Invariant>().is_err());
    }

    #[test]
    fn state_count_is_two_to_the_crossings() {
        for (_, d) in KnotTable::bundled().entries() {
            let (_, states) = jones_with_state_count(d);
            assert_eq!(states, 1u64 << d.crossing_count());
        }
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert!(jones(&kink).is_one());
    }
}
