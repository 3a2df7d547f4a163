use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::word::Word;
use super::Scalar;

/// A noncommutative polynomial: finite map from words to nonzero rational
/// coefficients.
///
/// Terms are stored sorted by deglex descending, so the leading term is the
/// first entry. Construction always restores this canonical form; equal
/// polynomials have identical term vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: Vec<(Word, Scalar)>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        NCPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        if c.is_zero() {
            NCPoly::zero()
        } else {
            NCPoly {
                terms: vec![(Word::empty(), c)],
            }
        }
    }

    pub fn from_word(w: Word) -> Self {
        NCPoly {
            terms: vec![(w, Scalar::one())],
        }
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        if c.is_zero() {
            NCPoly::zero()
        } else {
            NCPoly { terms: vec![(w, c)] }
        }
    }

    /// Restores canonical form from an arbitrary term list.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(w) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        let mut terms: Vec<(Word, Scalar)> = map.into_iter().collect();
        terms.reverse();
        NCPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in deglex-descending order.
    pub fn terms(&self) -> &[(Word, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The deglex-greatest term; `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Word, &Scalar)> {
        self.terms.first().map(|(w, c)| (w, c))
    }

    /// Degree of the leading word; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(w, _)| w.degree())
    }

    /// Coefficient of `w` (zero if absent).
    pub fn coeff(&self, w: &Word) -> Scalar {
        match self
            .terms
            .binary_search_by(|(tw, _)| w.cmp(tw)) // descending storage
        {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn add_ref(&self, other: &NCPoly) -> NCPoly {
        // Merge two descending term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (wa, ca) = &self.terms[i];
            let (wb, cb) = &other.terms[j];
            match wb.cmp(wa) {
                std::cmp::Ordering::Less => {
                    out.push((wa.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((wb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((wa.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        NCPoly { terms: out }
    }

    pub fn sub_ref(&self, other: &NCPoly) -> NCPoly {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k * c))
                .collect(),
        }
    }

    /// Distributed concatenation product.
    pub fn mul_ref(&self, other: &NCPoly) -> NCPoly {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w = wa.concat(wb);
                let c = ca * cb;
                match map.entry(w) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + &c;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Word, Scalar)> = map.into_iter().collect();
        terms.reverse();
        NCPoly { terms }
    }

    /// Two-sided cofactor product `left · self · right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect::<Vec<_>>(),
        }
        .recanonicalize()
    }

    fn recanonicalize(self) -> NCPoly {
        NCPoly::from_terms(self.terms)
    }

    /// The involution: words reversed, coefficients conjugated (rationals are
    /// fixed). Satisfies `(pq)* = q* p*` and `p** = p`.
    pub fn star(&self) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.star(), c.clone())),
        )
    }

    /// Divides by the leading coefficient; `None` for the zero polynomial.
    pub fn monic(&self) -> Option<NCPoly> {
        let (_, lc) = self.leading_term()?;
        let inv = Scalar::one() / lc.clone();
        Some(self.scale(&inv))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty()
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.neg_ref()
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{}", super::scalar_to_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{} {w}", super::scalar_to_string(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::symbol::GenSymbol;
    use super::*;

    fn sym(q: u32, a: u32) -> GenSymbol {
        GenSymbol::alice(q, a)
    }

    fn w(syms: &[GenSymbol]) -> Word {
        Word::from_symbols(syms.to_vec())
    }

    fn gen_poly(q: u32, a: u32) -> NCPoly {
        NCPoly::from_word(Word::single(sym(q, a)))
    }

    #[test]
    fn one_times_p_is_p() {
        let p = gen_poly(0, 0).add_ref(&NCPoly::constant(Scalar::from_integer(3.into())));
        assert_eq!(NCPoly::one().mul_ref(&p), p);
        assert_eq!(p.mul_ref(&NCPoly::one()), p);
    }

    #[test]
    fn free_square_has_four_terms() {
        let s = gen_poly(0, 0).add_ref(&gen_poly(0, 1));
        let sq = s.mul_ref(&s);
        assert_eq!(sq.num_terms(), 4);
        for (word, c) in sq.terms() {
            assert_eq!(word.degree(), 2);
            assert!(c.is_one());
        }
    }

    #[test]
    fn star_reverses_words() {
        let p = NCPoly::from_word(w(&[sym(0, 0), sym(1, 1)]));
        assert_eq!(p.star(), NCPoly::from_word(w(&[sym(1, 1), sym(0, 0)])));
        assert_eq!(p.star().star(), p);
    }

    #[test]
    fn additive_cancellation_is_exact() {
        let p = gen_poly(0, 0)
            .scale(&Scalar::new(1.into(), 3.into()))
            .add_ref(&NCPoly::one());
        let zero = p.sub_ref(&p);
        assert!(zero.is_zero());
        let half = Scalar::new(1.into(), 2.into());
        assert_eq!(p.scale(&half).add_ref(&p.scale(&half)), p);
    }

    #[test]
    fn leading_term_is_deglex_greatest() {
        let p = NCPoly::one()
            .add_ref(&gen_poly(0, 0))
            .add_ref(&NCPoly::from_word(w(&[sym(0, 0), sym(0, 1)])));
        let (lead, _) = p.leading_term().unwrap();
        assert_eq!(*lead, w(&[sym(0, 0), sym(0, 1)]));
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn display_round_style() {
        let p = NCPoly::monomial(Scalar::new(1.into(), 4.into()), Word::single(sym(0, 0)))
            .sub_ref(&NCPoly::one());
        assert_eq!(p.to_string(), "1/4 e1[0,0] - 1");
        assert_eq!(NCPoly::zero().to_string(), "0");
    }
}
