use std::cmp::Ordering;
use std::fmt;

use super::symbol::GenSymbol;

/// A word over the generator symbols. The empty word is the multiplicative
/// identity `1`.
///
/// `Ord` implements deglex: shorter words come first, equal lengths compare
/// lexicographically by symbol order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GenSymbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(s: GenSymbol) -> Self {
        Word(vec![s])
    }

    pub fn from_symbols(symbols: Vec<GenSymbol>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation product of two words.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The involution: reversal (generators are self-adjoint).
    pub fn star(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Leftmost position at which `factor` occurs contiguously, if any.
    pub fn find_factor(&self, factor: &Word) -> Option<usize> {
        let n = self.0.len();
        let m = factor.0.len();
        if m > n {
            return None;
        }
        (0..=n - m).find(|&i| self.0[i..i + m] == factor.0[..])
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        self.find_factor(factor).is_some()
    }

    /// Splits `self` as `left · mid · right` where `mid` starts at `pos` and
    /// has length `len`.
    pub fn split_around(&self, pos: usize, len: usize) -> (Word, Word) {
        let left = Word(self.0[..pos].to_vec());
        let right = Word(self.0[pos + len..].to_vec());
        (left, right)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
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

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for s in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}
