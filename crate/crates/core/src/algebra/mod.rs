//! Exact arithmetic in the free *-algebra on projection symbols, restricted
//! to rational scalars.
//!
//! Elements are noncommutative polynomials: finite maps from words over
//! generator symbols to nonzero rational coefficients. Words compare in
//! degree-lexicographic (deglex) order, and the involution reverses words
//! (every generator is self-adjoint, rational coefficients are fixed).

mod parse;
mod poly;
mod symbol;
mod word;

pub use parse::{parse_poly, parse_word, ParsePolyError};
pub use poly::NCPoly;
pub use symbol::{GenSymbol, Side};
pub use word::Word;

/// Exact rational scalar used for every coefficient in the crate.
pub type Scalar = num_rational::BigRational;

/// Formats a rational as `p` or `p/q`.
pub fn scalar_to_string(c: &Scalar) -> String {
    use num_traits::One;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p` or `p/q` into an exact rational.
pub fn scalar_from_str(s: &str) -> Result<Scalar, ParsePolyError> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ParsePolyError::BadRational(s.to_string()))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ParsePolyError::BadRational(s.to_string()))?;
    if d.is_zero() {
        return Err(ParsePolyError::BadRational(s.to_string()));
    }
    Ok(Scalar::new(n, d))
}
