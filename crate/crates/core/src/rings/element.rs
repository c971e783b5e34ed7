use std::collections::BTreeMap;

use serde::Serialize;

use crate::tqft::{checked_add, checked_mul};

/// Sparse integer combination of ring basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RingElement {
    terms: BTreeMap<usize, i64>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(i, 1);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, i: usize, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(i).or_insert(0);
        *e = checked_add(*e, c);
        if *e == 0 {
            self.terms.remove(&i);
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> RingElement {
        RingElement::from_terms(self.terms().map(|(i, c)| (i, checked_mul(c, k))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(i, c)| (*i, *c))
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.terms.get(&i).copied().unwrap_or(0)
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
}
