//! Finite formal linear combinations with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::diagram::{Diagram, SingularDiagram};
use crate::exact_math::{format_rational, Rational};

/// Anything that can be a basis element of a [`FormalSum`]. Generators with
/// the same key are identified.
pub trait Generator: Clone {
    fn canonical_key(&self) -> String;
}

impl Generator for Diagram {
    fn canonical_key(&self) -> String {
        Diagram::canonical_key(self)
    }
}

impl Generator for SingularDiagram {
    fn canonical_key(&self) -> String {
        SingularDiagram::canonical_key(self)
    }
}

#[derive(Debug, Clone)]
pub struct FormalSum<G: Generator> {
    terms: BTreeMap<String, (G, Rational)>,
}

impl<G: Generator> Default for FormalSum<G> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<G: Generator> FormalSum<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: G) -> Self {
        let mut s = Self::zero();
        s.add_term(g, Rational::from_integer(1.into()));
        s
    }

    pub fn add_term(&mut self, g: G, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = g.canonical_key();
        let mut remove = false;
        match self.terms.get_mut(&key) {
            Some((_, coeff)) => {
                *coeff += c;
                remove = coeff.is_zero();
            }
            None => {
                self.terms.insert(key.clone(), (g, c));
            }
        }
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn add(&mut self, other: &FormalSum<G>) {
        self.add_scaled(other, &Rational::from_integer(1.into()));
    }

    pub fn add_scaled(&mut self, other: &FormalSum<G>, s: &Rational) {
        for (g, c) in other.terms() {
            self.add_term(g.clone(), c * s);
        }
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical-key order.
    pub fn terms(&self) -> impl Iterator<Item = (&G, &Rational)> + '_ {
        self.terms.values().map(|(g, c)| (g, c))
    }

    pub fn coefficient_of(&self, g: &G) -> Rational {
        self.terms
            .get(&g.canonical_key())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Applies a linear map given on generators.
    pub fn map_linear<H: Generator>(&self, mut f: impl FnMut(&G) -> FormalSum<H>) -> FormalSum<H> {
        let mut out = FormalSum::zero();
        for (g, c) in self.terms() {
            out.add_scaled(&f(g), c);
        }
        out
    }
}

impl<G: Generator> PartialEq for FormalSum<G> {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((k1, (_, c1)), (k2, (_, c2)))| k1 == k2 && c1 == c2)
    }
}

impl<G: Generator> Eq for FormalSum<G> {}

impl<G: Generator> fmt::Display for FormalSum<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, (_, c))| format!("{} * <{}>", format_rational(c), k))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
