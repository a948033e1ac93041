//! Exact arithmetic: rationals, one-variable Laurent polynomials, truncated
//! power series and sparse matrices with exact rank.

mod laurent;
mod series;
mod sparse;

pub use laurent::LaurentPoly;
pub use series::{laurent_substitute_exp, TruncatedSeries};
pub use sparse::{PivotStrategy, SparseMatrix};

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(char, char),
    #[error("matrix index ({row}, {col}) out of bounds for {rows}x{cols}")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` form, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_eagerly() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(ratio(0, 5), rat(0));
        assert_eq!(ratio(0, 5).denom(), &BigInt::from(1));
    }

    #[test]
    fn formats_and_parses() {
        assert_eq!(format_rational(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational("-3/2"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("4/2"), Some(rat(2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    proptest! {
        #[test]
        fn add_then_subtract_is_identity(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!((&x + &y) - &y, x);
        }
    }
}
