//! The sums-of-squares branch: Gram-matrix feasibility over a monomial basis
//! of normal forms, numerical SDP search, and exact rational rounding with
//! re-verification.

mod basis;
mod certify;
mod linsys;
mod round;
mod sdp;

pub use basis::{enumerate_basis, MonomialBasis};
pub use certify::{certify, default_degree_bound, CertifyOptions, SideSelect};
pub use linsys::{build_linear_system, Constraint, LinearSystem};
pub use round::{rational_approx, round_and_verify, RoundedWitness};
pub use sdp::{sdp_feasibility, SdpOptions, SdpOutcome};

use thiserror::Error;

use crate::game::GameError;
use crate::ideal::IdealError;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("the game admits no mirror maps")]
    NotMirror,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("monomial basis has {size} words at degree {degree}, exceeding the cap {cap}")]
    BasisTooLarge {
        size: usize,
        degree: usize,
        cap: usize,
    },
    #[error("basis enumeration refused: the completed system contains the constant rule")]
    BasisOnUnitIdeal,
}
