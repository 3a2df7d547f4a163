use std::fmt;

use serde::{Deserialize, Serialize};

/// Which player's generator family a symbol belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Family 1 (printed `e1[..]`).
    Alice,
    /// Family 2 (printed `e2[..]`).
    Bob,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Alice => 1,
            Side::Bob => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Side> {
        match i {
            1 => Some(Side::Alice),
            2 => Some(Side::Bob),
            _ => None,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Alice => Side::Bob,
            Side::Bob => Side::Alice,
        }
    }
}

/// One projection symbol `e1[x,a]` or `e2[y,b]`.
///
/// The derived ordering is lexicographic on (side, question, answer), which
/// is the symbol order underlying the deglex word order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenSymbol {
    pub side: Side,
    pub question: u32,
    pub answer: u32,
}

impl GenSymbol {
    pub fn alice(question: u32, answer: u32) -> Self {
        GenSymbol {
            side: Side::Alice,
            question,
            answer,
        }
    }

    pub fn bob(question: u32, answer: u32) -> Self {
        GenSymbol {
            side: Side::Bob,
            question,
            answer,
        }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}[{},{}]", self.side.index(), self.question, self.answer)
    }
}
