//! Noncommutative polynomials with coefficients in Q(q).
//!
//! An [`NCPoly`] knows nothing about commutation rules: addition and scaling are
//! preset-free, while products are normal-ordered by [`crate::algebra::Preset`].

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::word::{GenId, Word};
use crate::scalars::QScalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, QScalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(Word::one(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, QScalar::one())
    }

    pub fn gen(g: GenId) -> Self {
        Self::word(Word::letter(g, 1))
    }

    pub fn term(w: Word, c: QScalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &QScalar)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, QScalar> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    /// The constant term when the polynomial is a pure scalar.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Word::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &NCPoly) {
        for (w, c) in other.terms() {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        for (w, c) in other.terms() {
            p.add_term(w.clone(), -c);
        }
        p
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-QScalar::one())
    }

    pub fn scale(&self, k: &QScalar) -> NCPoly {
        if k.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Product in the free algebra (words concatenated, no reordering).
    /// Degree-1 nilpotency is applied by the preset, not here.
    pub fn mul_raw(&self, other: &NCPoly) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                p.add_term(w1.concat(w2), c1 * c2);
            }
        }
        p
    }

    /// Keeps only terms whose word satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&QScalar) -> QScalar) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in self.terms() {
            p.add_term(w.clone(), f(c));
        }
        p
    }

    /// True when some word mentions `g`.
    pub fn mentions(&self, g: GenId) -> bool {
        self.terms.keys().any(|w| w.contains(g))
    }
}

impl FromIterator<(Word, QScalar)> for NCPoly {
    fn from_iter<T: IntoIterator<Item = (Word, QScalar)>>(iter: T) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn like_terms_cancel() {
        let mut p = NCPoly::gen(1);
        p.add_term(Word::letter(1, 1), -QScalar::one());
        assert!(p.is_zero());
        let x = NCPoly::gen(0).add(&NCPoly::scalar(QScalar::q()));
        assert_eq!(x.sub(&x), NCPoly::zero());
        assert_eq!(x.scale(&QScalar::zero()), NCPoly::zero());
        assert_eq!(NCPoly::scalar(QScalar::lambda()).as_scalar(), Some(QScalar::lambda()));
        assert_eq!(x.as_scalar(), None);
    }
}
