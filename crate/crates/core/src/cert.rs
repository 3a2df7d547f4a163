//! Machine-checkable certificates and their independent verifier.
//!
//! A `no-perfect-strategy` certificate carries an exact witness: a list of
//! weighted squares and a two-sided ideal combination over the mirror
//! ideal's generator set, claiming
//!
//! ```text
//! 1 + sum_j weight_j * s_j^* s_j  =  sum_i coeff_i * left_i * gen_i * right_i
//! ```
//!
//! as an identity of free noncommutative polynomials (the squares list is
//! empty for the Gröbner-membership route, where the combination witnesses
//! the constant 1 itself). The verifier rebuilds the generator set from the
//! game table with its own direct loops, then replays the identity using
//! nothing but exact polynomial arithmetic; it never runs a completion, a
//! reduction, or an SDP.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    parse_poly, parse_word, scalar_from_str, scalar_to_string, GenSymbol, NCPoly, Side, Word,
};
use crate::game::{Game, MirrorStructure};

pub const CERTIFICATE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    NoPerfectStrategy,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GbMembership,
    Sos,
}

/// One weighted square `weight * poly^* poly` with `weight > 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SosTerm {
    pub weight: String,
    pub poly: String,
}

/// One combination term `coeff * left * generators[gen] * right`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombinationTerm {
    pub coeff: String,
    pub left: String,
    pub gen: usize,
    pub right: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    /// The star-closed generator set of the side ideal, in canonical builder
    /// order and textual syntax. The verifier re-derives this list from the
    /// game and requires an exact match.
    pub generators: Vec<String>,
    pub sos_terms: Vec<SosTerm>,
    pub combination: Vec<CombinationTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub format_version: u32,
    pub game_sha256: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<u8>,
    pub sides_tried: Vec<u8>,
    pub mirror_maps: MirrorStructure,
    pub degree_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sos_degree: Option<usize>,
    pub sos_max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Certificate, VerifyError> {
        serde_json::from_str(s).map_err(VerifyError::Json)
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("certificate parse error: {0}")]
    Json(serde_json::Error),
    #[error("unsupported certificate format version {0}")]
    UnsupportedVersion(u32),
    #[error("game hash mismatch: certificate {expected}, file {got}")]
    GameHashMismatch { expected: String, got: String },
    #[error("certificate verdict is `unknown`: nothing to verify")]
    NoWitness,
    #[error("certificate side must be 1 or 2, got {0}")]
    BadSide(u8),
    #[error("recorded mirror maps do not satisfy the mirror conditions")]
    MapsNotMirror,
    #[error("recorded mirror maps are not regular")]
    MapsNotRegular,
    #[error("generator list mismatch at index {index}: certificate `{got}`, rebuilt `{expected}`")]
    GeneratorMismatch {
        index: usize,
        expected: String,
        got: String,
    },
    #[error("generator count mismatch: certificate {got}, rebuilt {expected}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("malformed witness field: {0}")]
    MalformedWitness(String),
    #[error("square weight {0} is not positive")]
    NonPositiveWeight(String),
    #[error("combination term references generator {gen} out of {count}")]
    GenOutOfRange { gen: usize, count: usize },
    #[error("witness identity fails: 1 + squares differs from the ideal combination")]
    IdentityMismatch,
    #[error("a gb-membership certificate must not carry squares")]
    UnexpectedSquares,
}

/// Replays the mirror conditions directly against the table.
fn maps_are_mirror(g: &Game, m: &MirrorStructure) -> bool {
    if m.xi.len() != g.nx() || m.eta.len() != g.ny() {
        return false;
    }
    if m.xi.iter().any(|&y| y >= g.ny()) || m.eta.iter().any(|&x| x >= g.nx()) {
        return false;
    }
    for x in 0..g.nx() {
        for b in 0..g.nb() {
            for a1 in 0..g.na() {
                for a2 in 0..g.na() {
                    if a1 != a2 && g.lambda(x, m.xi[x], a1, b) && g.lambda(x, m.xi[x], a2, b) {
                        return false;
                    }
                }
            }
        }
    }
    for y in 0..g.ny() {
        for a in 0..g.na() {
            for b1 in 0..g.nb() {
                for b2 in 0..g.nb() {
                    if b1 != b2 && g.lambda(m.eta[y], y, a, b1) && g.lambda(m.eta[y], y, a, b2) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Replays the union-coverage regularity condition directly.
fn maps_are_regular(g: &Game, m: &MirrorStructure) -> bool {
    for x in 0..g.nx() {
        for b in 0..g.nb() {
            if !(0..g.na()).any(|a| g.lambda(x, m.xi[x], a, b)) {
                return false;
            }
        }
    }
    for y in 0..g.ny() {
        for a in 0..g.na() {
            if !(0..g.nb()).any(|b| g.lambda(m.eta[y], y, a, b)) {
                return false;
            }
        }
    }
    true
}

fn push_unique(out: &mut Vec<NCPoly>, p: NCPoly) {
    if !p.is_zero() && !out.contains(&p) {
        out.push(p);
    }
}

/// Rebuilds the star-closed side-ideal generator set straight from the game
/// table. This intentionally re-derives what the search-side builder
/// produces; agreement between the two routes is part of what verification
/// checks.
pub fn rebuild_generators(g: &Game, m: &MirrorStructure, side: Side) -> Vec<NCPoly> {
    let mut out: Vec<NCPoly> = Vec::new();
    let (nq, nans) = match side {
        Side::Alice => (g.nx(), g.na()),
        Side::Bob => (g.ny(), g.nb()),
    };
    let sym = |q: usize, a: usize| {
        Word::single(GenSymbol {
            side,
            question: q as u32,
            answer: a as u32,
        })
    };
    for q in 0..nq {
        for a in 0..nans {
            let e = sym(q, a);
            push_unique(
                &mut out,
                NCPoly::from_word(e.concat(&e)).sub_ref(&NCPoly::from_word(e)),
            );
        }
    }
    for q in 0..nq {
        for a1 in 0..nans {
            for a2 in 0..nans {
                if a1 != a2 {
                    push_unique(&mut out, NCPoly::from_word(sym(q, a1).concat(&sym(q, a2))));
                }
            }
        }
    }
    for q in 0..nq {
        let mut sum = NCPoly::zero();
        for a in 0..nans {
            sum = sum.add_ref(&NCPoly::from_word(sym(q, a)));
        }
        push_unique(&mut out, sum.sub_ref(&NCPoly::one()));
    }
    for x in 0..g.nx() {
        for y in 0..g.ny() {
            for a in 0..g.na() {
                for b in 0..g.nb() {
                    if g.lambda(x, y, a, b) {
                        continue;
                    }
                    match side {
                        Side::Alice => {
                            // f over winning Alice answers at (eta(y), y) with b.
                            let ex = m.eta[y];
                            let mut f = NCPoly::zero();
                            for a2 in 0..g.na() {
                                if g.lambda(ex, y, a2, b) {
                                    f = f.add_ref(&NCPoly::from_word(Word::single(
                                        GenSymbol::alice(ex as u32, a2 as u32),
                                    )));
                                }
                            }
                            let e = NCPoly::from_word(Word::single(GenSymbol::alice(
                                x as u32, a as u32,
                            )));
                            push_unique(&mut out, e.mul_ref(&f));
                            push_unique(&mut out, f.mul_ref(&e));
                        }
                        Side::Bob => {
                            // g over winning Bob answers at (x, xi(x)) with a.
                            let wy = m.xi[x];
                            let mut gp = NCPoly::zero();
                            for b2 in 0..g.nb() {
                                if g.lambda(x, wy, a, b2) {
                                    gp = gp.add_ref(&NCPoly::from_word(Word::single(
                                        GenSymbol::bob(wy as u32, b2 as u32),
                                    )));
                                }
                            }
                            let e = NCPoly::from_word(Word::single(GenSymbol::bob(
                                y as u32, b as u32,
                            )));
                            push_unique(&mut out, e.mul_ref(&gp));
                            push_unique(&mut out, gp.mul_ref(&e));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Re-verifies a certificate against a game using exact free-algebra
/// arithmetic only. Returns `Ok(())` iff the witness identity holds.
pub fn verify_certificate(game: &Game, cert: &Certificate) -> Result<(), VerifyError> {
    if cert.format_version != CERTIFICATE_FORMAT_VERSION {
        return Err(VerifyError::UnsupportedVersion(cert.format_version));
    }
    let got = game.sha256_hex();
    if cert.game_sha256 != got {
        return Err(VerifyError::GameHashMismatch {
            expected: cert.game_sha256.clone(),
            got,
        });
    }
    let witness = cert.witness.as_ref().ok_or(VerifyError::NoWitness)?;
    if cert.verdict != Verdict::NoPerfectStrategy {
        return Err(VerifyError::NoWitness);
    }
    let side = match cert.side {
        Some(1) => Side::Alice,
        Some(2) => Side::Bob,
        other => return Err(VerifyError::BadSide(other.unwrap_or(0))),
    };
    if cert.method == Some(Method::GbMembership) && !witness.sos_terms.is_empty() {
        return Err(VerifyError::UnexpectedSquares);
    }

    let m = &cert.mirror_maps;
    if !maps_are_mirror(game, m) {
        return Err(VerifyError::MapsNotMirror);
    }
    if !maps_are_regular(game, m) {
        return Err(VerifyError::MapsNotRegular);
    }

    let rebuilt = rebuild_generators(game, m, side);
    if rebuilt.len() != witness.generators.len() {
        return Err(VerifyError::GeneratorCount {
            expected: rebuilt.len(),
            got: witness.generators.len(),
        });
    }
    for (i, text) in witness.generators.iter().enumerate() {
        let expected = rebuilt[i].to_string();
        if *text != expected {
            return Err(VerifyError::GeneratorMismatch {
                index: i,
                expected,
                got: text.clone(),
            });
        }
    }

    // Left side: 1 + sum weight_j s_j^* s_j.
    let mut lhs = NCPoly::one();
    for t in &witness.sos_terms {
        let weight = scalar_from_str(&t.weight)
            .map_err(|e| VerifyError::MalformedWitness(e.to_string()))?;
        if !weight.is_positive() {
            return Err(VerifyError::NonPositiveWeight(t.weight.clone()));
        }
        let s = parse_poly(&t.poly).map_err(|e| VerifyError::MalformedWitness(e.to_string()))?;
        lhs = lhs.add_ref(&s.star().mul_ref(&s).scale(&weight));
    }

    // Right side: the ideal combination.
    let mut rhs = NCPoly::zero();
    for t in &witness.combination {
        if t.gen >= rebuilt.len() {
            return Err(VerifyError::GenOutOfRange {
                gen: t.gen,
                count: rebuilt.len(),
            });
        }
        let coeff = scalar_from_str(&t.coeff)
            .map_err(|e| VerifyError::MalformedWitness(e.to_string()))?;
        if coeff.is_zero() {
            continue;
        }
        let left =
            parse_word(&t.left).map_err(|e| VerifyError::MalformedWitness(e.to_string()))?;
        let right =
            parse_word(&t.right).map_err(|e| VerifyError::MalformedWitness(e.to_string()))?;
        rhs = rhs.add_ref(&rebuilt[t.gen].sandwich(&left, &right).scale(&coeff));
    }

    if lhs != rhs {
        return Err(VerifyError::IdentityMismatch);
    }
    Ok(())
}

/// Renders an internal trace as certificate combination terms.
pub fn render_combination(trace: &crate::ideal::Trace) -> Vec<CombinationTerm> {
    trace
        .iter()
        .map(|t| CombinationTerm {
            coeff: scalar_to_string(&t.coeff),
            left: t.left.to_string(),
            gen: t.gen,
            right: t.right.to_string(),
        })
        .collect()
}

/// Renders weighted squares as certificate terms.
pub fn render_sos(sos: &[(crate::algebra::Scalar, NCPoly)]) -> Vec<SosTerm> {
    sos.iter()
        .map(|(w, p)| SosTerm {
            weight: scalar_to_string(w),
            poly: p.to_string(),
        })
        .collect()
}
