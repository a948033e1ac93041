use num::{BigInt, Zero};

use super::{LaurentPoly, Rational};

/// Power series in `x` truncated after `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "a truncated series has order >= 0"
        );
        TruncatedSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, k: usize) -> &Rational {
        &self.coefficients[k]
    }
}

/// Expands `p(e^x)` up to and including `x^order`.
///
/// The coefficient of `x^j` is `sum_k c_k k^j / j!`.
pub fn laurent_substitute_exp(p: &LaurentPoly, order: usize) -> TruncatedSeries {
    let mut coefficients = vec![Rational::zero(); order + 1];
    let mut factorial = BigInt::from(1);
    for (j, slot) in coefficients.iter_mut().enumerate() {
        if j > 0 {
            factorial *= BigInt::from(j);
        }
        let mut acc = Rational::zero();
        for (k, c) in p.terms() {
            acc += c * Rational::from_integer(BigInt::from(k).pow(j as u32));
        }
        *slot = acc / Rational::from_integer(factorial.clone());
    }
    TruncatedSeries { coefficients }
}
