use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Word;

/// Element of the integral group ring of the free group on the generators.
/// Terms are kept in shortlex order of their words; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, BigInt::one())
    }

    pub fn from_int(k: impl Into<BigInt>) -> Self {
        Self::from_term(Word::identity(), k.into())
    }

    pub fn from_term(w: Word, k: BigInt) -> Self {
        let mut x = Self::zero();
        x.add_term(w, k);
        x
    }

    pub fn add_term(&mut self, w: Word, k: BigInt) {
        if k.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(BigInt::zero);
        *entry += k;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        GroupRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    /// Sum of coefficients: the ring map sending every group element to 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Left multiplication of every word by `g`.
    pub fn left_mul_word(&self, g: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(g.mul(w), c.clone());
        }
        out
    }

    /// Right multiplication of every word by `g`.
    pub fn right_mul_word(&self, g: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.mul(g), c.clone());
        }
        out
    }

    /// Highest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_generator).max()
    }

    /// `1 - c*b`, `2*a^-1 + b`, `0`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        RingDisplay { x: self, names }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }
}

struct RingDisplay<'a> {
    x: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.x.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if w.is_identity() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", w.display(self.names))?;
            } else {
                write!(f, "{abs}*{}", w.display(self.names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn expansion() {
        let one = GroupRingElement::one();
        let g = GroupRingElement::from_word(Word::generator(2));
        let x = &(&one - &g) * &(&one + &g);
        assert_eq!(x.display(&names()).to_string(), "1 - c^2");
        assert!((&x + &(-&x)).is_zero());
        let cb = GroupRingElement::from_word(Word::generator(2).mul(&Word::generator(1)));
        let y = &one - &cb;
        assert_eq!(&y * &one, y);
        assert_eq!(y.augmentation(), BigInt::zero());
    }

    #[test]
    fn augmentation_sums_coefficients() {
        let mut x = GroupRingElement::from_int(3);
        x.add_term(Word::generator(0), BigInt::from(2));
        x.add_term(Word::generator(2), BigInt::from(-1));
        assert_eq!(x.augmentation(), BigInt::from(4));
        assert_eq!(GroupRingElement::zero().augmentation(), BigInt::zero());
    }
}
