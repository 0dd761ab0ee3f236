use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Scalar};

/// Index of a generator in declaration order.
pub type GenId = usize;

/// A monomial: a finite sequence of generators. The empty word is the unit.
///
/// Words are ordered by length first and then lexicographically by declaration
/// index, which is the order terms are printed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn unit() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: GenId) -> Word {
        Word(vec![g])
    }

    pub fn new(letters: Vec<GenId>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<GenId>> for Word {
    fn from(v: Vec<GenId>) -> Word {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An F_p-linear combination of words, kept without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Word, u32>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::monomial(field, Word::unit(), 1)
    }

    pub fn generator(field: Field, g: GenId) -> Poly {
        Poly::monomial(field, Word::letter(g), 1)
    }

    pub fn constant(field: Field, c: u32) -> Poly {
        Poly::monomial(field, Word::unit(), c)
    }

    pub fn monomial(field: Field, word: Word, coeff: u32) -> Poly {
        let mut p = Poly::zero(field);
        p.add_term(word, coeff);
        p
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Word, u32)>) -> Poly {
        let mut p = Poly::zero(field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> + '_ {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coeff(&self, word: &Word) -> u32 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Scalar {
        Scalar::new(self.field, self.coeff(&Word::unit()))
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn letters(&self) -> impl Iterator<Item = GenId> + '_ {
        self.terms.keys().flat_map(|w| w.letters().iter().copied())
    }

    pub fn add_term(&mut self, word: Word, coeff: u32) {
        let c = coeff % self.field.p();
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, scale: u32) {
        debug_assert_eq!(self.field, other.field);
        for (w, c) in other.terms() {
            self.add_term(w.clone(), self.field.mul(c, scale));
        }
    }

    pub fn scale(&self, s: u32) -> Poly {
        Poly::from_terms(
            self.field,
            self.terms().map(|(w, c)| (w.clone(), self.field.mul(c, s))),
        )
    }

    /// Terms of word length exactly `len`.
    pub fn homogeneous_part(&self, len: usize) -> Poly {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, self.field.p() - 1);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.field.p() - 1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        let f = self.field;
        let mut out = Poly::zero(f);
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.concat(v), f.mul(a, b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let mut words = vec![
            Word::new(vec![2]),
            Word::new(vec![0, 1, 2]),
            Word::unit(),
            Word::new(vec![0]),
        ];
        words.sort();
        assert_eq!(
            words,
            vec![
                Word::unit(),
                Word::new(vec![0]),
                Word::new(vec![2]),
                Word::new(vec![0, 1, 2])
            ]
        );
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let f = Field::binary();
        let x = Poly::generator(f, 0);
        let s = &x + &x;
        assert!(s.is_zero());
        assert_eq!(s, Poly::zero(f));
    }

    #[test]
    fn noncommutative_product() {
        let f = Field::new(3).unwrap();
        let x = Poly::generator(f, 0);
        let y = Poly::generator(f, 1);
        let xy = &x * &y;
        let yx = &y * &x;
        assert_ne!(xy, yx);
        assert_eq!((&xy - &yx).len(), 2);
        assert_eq!((&xy - &yx).coeff(&Word::new(vec![1, 0])), 2);
    }
}
