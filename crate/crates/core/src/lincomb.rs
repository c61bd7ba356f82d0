//! Finite formal sums with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::Q;

/// A finite rational combination of basis elements, kept canonical: sorted,
/// with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Q>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(Q::one(), b)
    }

    pub fn term(c: Q, b: B) -> Self {
        let mut out = Self::zero();
        out.add_term(c, b);
        out
    }

    pub fn add_term(&mut self, c: Q, b: B) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &LinComb<B>) {
        for (b, x) in &other.terms {
            self.add_term(c * x, b.clone());
        }
    }

    pub fn add(&mut self, other: &LinComb<B>) {
        self.add_scaled(&Q::one(), other);
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<B> {
        self.terms.keys().cloned().collect()
    }

    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(c, &f(b));
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(Q, B)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (Q, B)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (c, b) in it {
            out.add_term(c, b);
        }
        out
    }
}

impl<B: Ord + fmt::Debug> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{b:?}")?;
        }
        Ok(())
    }
}
