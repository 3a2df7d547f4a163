use crate::algebra::Word;
use crate::ideal::RewriteSystem;

use super::CertifyError;

/// Ordered vector of all irreducible words of degree at most `d`, deglex
/// ascending, beginning with the empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    words: Vec<Word>,
}

impl MonomialBasis {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }
}

/// Enumerates every word over the system's alphabet that is irreducible
/// modulo the frozen rule set, up to degree `d`.
///
/// Extension by one symbol only needs a suffix check: any new occurrence of a
/// rule lead must end at the appended symbol.
pub fn enumerate_basis(
    rs: &RewriteSystem,
    d: usize,
    cap: usize,
) -> Result<MonomialBasis, CertifyError> {
    if rs.contains_one() {
        return Err(CertifyError::BasisOnUnitIdeal);
    }
    let mut words = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for degree in 1..=d {
        let mut next = Vec::new();
        for w in &level {
            for s in rs.symbols() {
                let cand = w.concat(&Word::single(*s));
                let reducible = rs.rules().iter().any(|r| {
                    let lg = r.lead.degree();
                    lg >= 1
                        && lg <= cand.degree()
                        && cand.symbols()[cand.degree() - lg..] == *r.lead.symbols()
                });
                if !reducible {
                    next.push(cand);
                }
            }
        }
        if words.len() + next.len() > cap {
            return Err(CertifyError::BasisTooLarge {
                size: words.len() + next.len(),
                degree,
                cap,
            });
        }
        words.extend(next.iter().cloned());
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(MonomialBasis { words })
}
