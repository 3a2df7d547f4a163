use crate::algebra::{NCPoly, Side};
use crate::cert::{
    render_combination, render_sos, Certificate, Method, Verdict, Witness,
    CERTIFICATE_FORMAT_VERSION,
};
use crate::game::{Game, MirrorStructure};
use crate::ideal::{
    build_mirror_ideal_generators, complete, expand_trace, CompletionOptions, GeneratorSet,
};

use super::basis::enumerate_basis;
use super::linsys::build_linear_system;
use super::round::round_and_verify;
use super::sdp::{sdp_feasibility, SdpOptions, SdpOutcome};
use super::CertifyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideSelect {
    One,
    Two,
    /// Side 1 first, side 2 only if side 1 stays unknown.
    Both,
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub side: SideSelect,
    /// Completion degree bound; defaults to `2 * max(|A|, |B|) + 2`.
    pub degree_bound: Option<usize>,
    /// Largest SOS basis degree; defaults to the degree bound minus one.
    pub sos_max_degree: Option<usize>,
    pub tol: f64,
    pub iter_cap: usize,
    pub basis_cap: usize,
    pub rule_cap: usize,
    pub denominator_bound: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            side: SideSelect::Both,
            degree_bound: None,
            sos_max_degree: None,
            tol: 1e-8,
            iter_cap: 100_000,
            basis_cap: 2000,
            rule_cap: 20_000,
            denominator_bound: 1_000_000,
        }
    }
}

pub fn default_degree_bound(game: &Game) -> usize {
    2 * game.na().max(game.nb()) + 2
}

fn side_index(side: Side) -> u8 {
    match side {
        Side::Alice => 1,
        Side::Bob => 2,
    }
}

enum SideOutcome {
    Proved {
        method: Method,
        sos_degree: Option<usize>,
        witness: Witness,
    },
    Unknown,
}

/// The full pipeline: mirror maps, regularity gate, side-ideal completion,
/// Gröbner membership of the constant, then degree-escalated Gram search
/// with exact rounding. Every emitted `no-perfect-strategy` certificate
/// carries an exact witness that re-verifies by free-algebra arithmetic
/// alone.
pub fn certify(game: &Game, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    let m = game.find_mirror_maps().ok_or(CertifyError::NotMirror)?;
    let degree_bound = opts
        .degree_bound
        .unwrap_or_else(|| default_degree_bound(game));
    let sos_max_degree = opts
        .sos_max_degree
        .unwrap_or_else(|| degree_bound.saturating_sub(1))
        .max(1);

    let sides: &[Side] = match opts.side {
        SideSelect::One => &[Side::Alice],
        SideSelect::Two => &[Side::Bob],
        SideSelect::Both => &[Side::Alice, Side::Bob],
    };

    let mut tried = Vec::new();
    for &side in sides {
        tried.push(side_index(side));
        match certify_side(game, &m, side, degree_bound, sos_max_degree, opts)? {
            SideOutcome::Proved {
                method,
                sos_degree,
                witness,
            } => {
                return Ok(Certificate {
                    format_version: CERTIFICATE_FORMAT_VERSION,
                    game_sha256: game.sha256_hex(),
                    verdict: Verdict::NoPerfectStrategy,
                    method: Some(method),
                    side: Some(side_index(side)),
                    sides_tried: tried,
                    mirror_maps: m,
                    degree_bound,
                    sos_degree,
                    sos_max_degree,
                    witness: Some(witness),
                });
            }
            SideOutcome::Unknown => continue,
        }
    }

    Ok(Certificate {
        format_version: CERTIFICATE_FORMAT_VERSION,
        game_sha256: game.sha256_hex(),
        verdict: Verdict::Unknown,
        method: None,
        side: None,
        sides_tried: tried,
        mirror_maps: m,
        degree_bound,
        sos_degree: None,
        sos_max_degree,
        witness: None,
    })
}

fn render_generators(gens: &GeneratorSet) -> Vec<String> {
    gens.polys().map(|p| p.to_string()).collect()
}

fn certify_side(
    game: &Game,
    m: &MirrorStructure,
    side: Side,
    degree_bound: usize,
    sos_max_degree: usize,
    opts: &CertifyOptions,
) -> Result<SideOutcome, CertifyError> {
    let gens = build_mirror_ideal_generators(game, m, side)?;
    let symbols = match side {
        Side::Alice => game.alice_symbols(),
        Side::Bob => game.bob_symbols(),
    };
    let completion_opts = CompletionOptions {
        degree_bound,
        rule_cap: opts.rule_cap,
    };
    let rs = complete(&gens, symbols, &completion_opts)?;
    let gen_polys: Vec<NCPoly> = gens.polys().cloned().collect();

    if rs.contains_one() {
        let trace = rs.rules()[0].trace.clone();
        debug_assert_eq!(expand_trace(&trace, &gen_polys), NCPoly::one());
        return Ok(SideOutcome::Proved {
            method: Method::GbMembership,
            sos_degree: None,
            witness: Witness {
                generators: render_generators(&gens),
                sos_terms: Vec::new(),
                combination: render_combination(&trace),
            },
        });
    }

    let sdp_opts = SdpOptions {
        tol: opts.tol,
        iter_cap: opts.iter_cap,
    };
    for d in 1..=sos_max_degree {
        let basis = enumerate_basis(&rs, d, opts.basis_cap)?;
        let sys = build_linear_system(&basis, &rs);
        let SdpOutcome::Feasible(gfloat) = sdp_feasibility(&sys, &sdp_opts) else {
            continue;
        };
        let Some(witness) = round_and_verify(&gfloat, &basis, &rs, &sys, opts.denominator_bound)
        else {
            continue;
        };
        debug_assert_eq!(
            expand_trace(&witness.combination, &gen_polys),
            witness.sos.iter().fold(NCPoly::one(), |acc, (w, s)| acc
                .add_ref(&s.star().mul_ref(s).scale(w))),
        );
        return Ok(SideOutcome::Proved {
            method: Method::Sos,
            sos_degree: Some(d),
            witness: Witness {
                generators: render_generators(&gens),
                sos_terms: render_sos(&witness.sos),
                combination: render_combination(&witness.combination),
            },
        });
    }
    Ok(SideOutcome::Unknown)
}
