use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("structure coefficient overflow")
}

pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("structure coefficient overflow")
}

/// Integer combination of labelings of `ncircles` circles, bit `i` set meaning `X` on circle `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TqftVector {
    ncircles: usize,
    shift: i32,
    terms: BTreeMap<u64, i64>,
}

impl TqftVector {
    pub fn zero(ncircles: usize) -> Self {
        assert!(ncircles <= 64, "at most 64 circles");
        TqftVector {
            ncircles,
            shift: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ncircles: usize, mask: u64) -> Self {
        let mut v = Self::zero(ncircles);
        v.add_term(mask, 1);
        v
    }

    /// The scalar `c` on the empty diagram.
    pub fn scalar(c: i64) -> Self {
        let mut v = Self::zero(0);
        v.add_term(0, c);
        v
    }

    pub fn with_shift(mut self, shift: i32) -> Self {
        self.shift = shift;
        self
    }

    pub fn ncircles(&self) -> usize {
        self.ncircles
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn add_term(&mut self, mask: u64, c: i64) {
        debug_assert!(self.ncircles == 64 || mask >> self.ncircles == 0);
        if c == 0 {
            return;
        }
        let e = self.terms.entry(mask).or_insert(0);
        *e = checked_add(*e, c);
        if *e == 0 {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, mask: u64) -> i64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `#X - #ONE + shift` of a labeling.
    pub fn degree_of(&self, mask: u64) -> i32 {
        2 * mask.count_ones() as i32 - self.ncircles as i32 + self.shift
    }

    fn check(&self, c: usize) -> Result<()> {
        if c >= self.ncircles {
            return Err(Error::Invalid(format!(
                "circle {c} is not live ({} circles)",
                self.ncircles
            )));
        }
        Ok(())
    }

    /// Multiplication: circles `c1` and `c2` become one circle at index `min(c1, c2)`.
    pub fn merge(&self, c1: usize, c2: usize) -> Result<Self> {
        self.check(c1)?;
        self.check(c2)?;
        if c1 == c2 {
            return Err(Error::Invalid("merge needs two distinct circles".into()));
        }
        let (keep, gone) = (c1.min(c2), c1.max(c2));
        let mut out = Self::zero(self.ncircles - 1).with_shift(self.shift);
        for (m, c) in self.terms() {
            let (a, b) = (m >> keep & 1, m >> gone & 1);
            if a & b == 1 {
                continue;
            }
            let m = (m & !(1 << keep)) | ((a | b) << keep);
            out.add_term(remove_bit(m, gone), c);
        }
        Ok(out)
    }

    /// Comultiplication: circle `c` stays at its index, the new circle is appended.
    pub fn split(&self, c: usize) -> Result<Self> {
        self.check(c)?;
        let fresh = self.ncircles;
        let mut out = Self::zero(self.ncircles + 1).with_shift(self.shift);
        for (m, k) in self.terms() {
            if m >> c & 1 == 1 {
                out.add_term(m | 1 << fresh, k);
            } else {
                out.add_term(m | 1 << fresh, k);
                out.add_term(m | 1 << c, k);
            }
        }
        Ok(out)
    }

    /// Unit: appends a circle labeled `ONE`.
    pub fn birth(&self) -> Self {
        let mut out = Self::zero(self.ncircles + 1).with_shift(self.shift);
        for (m, k) in self.terms() {
            out.add_term(m, k);
        }
        out
    }

    /// Trace: removes circle `c`, with `ε(ONE) = 0`, `ε(X) = 1`.
    pub fn death(&self, c: usize) -> Result<Self> {
        self.check(c)?;
        let mut out = Self::zero(self.ncircles - 1).with_shift(self.shift);
        for (m, k) in self.terms() {
            if m >> c & 1 == 1 {
                out.add_term(remove_bit(m, c), k);
            }
        }
        Ok(out)
    }
}

/// Deletes bit `i`, shifting higher bits down.
pub(crate) fn remove_bit(m: u64, i: usize) -> u64 {
    let low = m & ((1u64 << i) - 1);
    let high = if i + 1 >= 64 { 0 } else { (m >> (i + 1)) << i };
    low | high
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: u64 = 0;
    const X: u64 = 1;

    #[test]
    fn multiplication_rules() {
        // ONE (x) X -> X
        let v = TqftVector::basis(2, X << 1);
        assert_eq!(v.merge(0, 1).unwrap(), TqftVector::basis(1, X));
        // X (x) X -> 0
        assert!(TqftVector::basis(2, 0b11).merge(0, 1).unwrap().is_zero());
        // 2 ONE(x)ONE + X(x)ONE -> 2 ONE + X
        let mut v = TqftVector::zero(2);
        v.add_term(0, 2);
        v.add_term(0b01, 1);
        let mut want = TqftVector::zero(1);
        want.add_term(ONE, 2);
        want.add_term(X, 1);
        assert_eq!(v.merge(0, 1).unwrap(), want);
    }

    #[test]
    fn comultiplication_rules() {
        let mut want = TqftVector::zero(2);
        want.add_term(0b10, 1);
        want.add_term(0b01, 1);
        assert_eq!(TqftVector::basis(1, ONE).split(0).unwrap(), want);
        assert_eq!(TqftVector::basis(1, X).split(0).unwrap(), TqftVector::basis(2, 0b11));
        assert!(TqftVector::zero(1).split(0).unwrap().is_zero());
    }

    #[test]
    fn unit_and_trace() {
        assert_eq!(TqftVector::basis(1, X).death(0).unwrap(), TqftVector::scalar(1));
        assert!(TqftVector::basis(1, ONE).death(0).unwrap().is_zero());
        assert!(TqftVector::scalar(1).birth().death(0).unwrap().is_zero());
        assert!(TqftVector::scalar(1).death(0).is_err());
        assert!(TqftVector::basis(2, 0).merge(0, 2).is_err());
    }

    #[test]
    fn frobenius_identity() {
        // (m (x) id)(id (x) Δ) = Δ m on A (x) A
        for m in 0..4u64 {
            let v = TqftVector::basis(2, m);
            let left = v.split(1).unwrap().merge(0, 1).unwrap();
            let right = v.merge(0, 1).unwrap().split(0).unwrap();
            assert_eq!(left, right, "input {m:02b}");
        }
    }

    #[test]
    fn degree_raised_by_one() {
        for n in 1..4usize {
            for m in 0..(1u64 << n) {
                let v = TqftVector::basis(n, m);
                let d = v.degree_of(m);
                for (o, _) in v.split(0).unwrap().terms() {
                    assert_eq!(v.split(0).unwrap().degree_of(o), d + 1);
                }
                if n >= 2 {
                    let w = v.merge(0, 1).unwrap();
                    for (o, _) in w.terms() {
                        assert_eq!(w.degree_of(o), d + 1);
                    }
                }
                let b = v.birth();
                for (o, _) in b.terms() {
                    assert_eq!(b.degree_of(o), d - 1);
                }
                let e = v.death(0).unwrap();
                for (o, _) in e.terms() {
                    assert_eq!(e.degree_of(o), d - 1);
                }
            }
        }
    }

    #[test]
    fn bit_removal() {
        assert_eq!(remove_bit(0b1011, 1), 0b101);
        assert_eq!(remove_bit(0b1011, 0), 0b101);
        assert_eq!(remove_bit(1 << 63, 63), 0);
    }
}
