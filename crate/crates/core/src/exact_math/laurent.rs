use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::{format_rational, rat, ExactMathError, Rational};

/// Laurent polynomial in a single named variable with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: char,
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero(var: char) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: char) -> Self {
        Self::constant(var, rat(1))
    }

    pub fn constant(var: char, c: Rational) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: char, c: Rational, exp: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, c);
        p
    }

    /// The variable itself, `var^1`.
    pub fn variable(var: char) -> Self {
        Self::monomial(var, rat(1), 1)
    }

    /// Builds from `(exponent, integer coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms(var: char, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(var);
        for &(e, c) in terms {
            p.add_term(e, rat(c));
        }
        p
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn check_var(&self, other: &Self) -> Result<(), ExactMathError> {
        if self.var != other.var {
            Err(ExactMathError::VariableMismatch(self.var, other.var))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactMathError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    /// Non-negative integer power; `p^0 = 1`.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.var);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `p(var) -> p(var^k)` for a nonzero integer `k`; `k = -1` is the
    /// mirror substitution.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution exponent must be nonzero");
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Divides every exponent by `d`, or `None` if some exponent is not a
    /// multiple of `d`.
    pub fn divide_exponents(&self, d: i64) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e % d != 0 {
                return None;
            }
            terms.insert(e / d, c.clone());
        }
        Some(LaurentPoly {
            var: self.var,
            terms,
        })
    }

    pub fn with_var(&self, var: char) -> Self {
        LaurentPoly {
            var,
            terms: self.terms.clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(0).is_one()
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, `c*q^k` per term, constants bare, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                if *e == 0 {
                    format_rational(c)
                } else {
                    format!("{}*{}^{}", format_rational(c), self.var, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::variable('q')
    }

    #[test]
    fn q_minus_q_is_zero() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero('q'));
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn q_times_inverse_is_one() {
        let qinv = LaurentPoly::monomial('q', rat(1), -1);
        assert!((&q() * &qinv).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let one = LaurentPoly::one('q');
        let lhs = &(&one + &q()) * &(&one - &q());
        assert_eq!(lhs, LaurentPoly::from_terms('q', &[(0, 1), (2, -1)]));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let z = LaurentPoly::variable('z');
        assert_eq!(
            q().try_add(&z),
            Err(ExactMathError::VariableMismatch('q', 'z'))
        );
        assert!(q().try_mul(&z).is_err());
    }

    #[test]
    fn display_is_ascending() {
        let p = LaurentPoly::from_terms('q', &[(2, 1), (-3, -2), (0, 5)]);
        assert_eq!(p.to_string(), "-2*q^-3 + 5 + 1*q^2");
    }

    #[test]
    fn substitution_and_exponent_division() {
        let p = LaurentPoly::from_terms('q', &[(2, 1), (-4, 3)]);
        assert_eq!(
            p.substitute_power(-1),
            LaurentPoly::from_terms('q', &[(-2, 1), (4, 3)])
        );
        assert_eq!(
            p.divide_exponents(2),
            Some(LaurentPoly::from_terms('q', &[(1, 1), (-2, 3)]))
        );
        assert_eq!(p.divide_exponents(4), None);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -20i64..20), 0..6)
            .prop_map(|ts| LaurentPoly::from_terms('q', &ts))
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn multiplication_distributes(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
