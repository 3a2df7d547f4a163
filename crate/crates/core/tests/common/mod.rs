//! Shared helpers for the integration suites: random polynomial and game
//! generators, and the exhaustive linear-algebra ideal-membership oracle.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mirror_certifier::algebra::{GenSymbol, NCPoly, Scalar, Side, Word};
use mirror_certifier::game::Game;
use mirror_certifier::ratmat::RatMat;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symbol(rng: &mut ChaCha8Rng, symbols: &[GenSymbol]) -> GenSymbol {
    symbols[rng.gen_range(0..symbols.len())]
}

pub fn random_word(rng: &mut ChaCha8Rng, symbols: &[GenSymbol], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_symbols((0..len).map(|_| random_symbol(rng, symbols)).collect())
}

pub fn random_poly(
    rng: &mut ChaCha8Rng,
    symbols: &[GenSymbol],
    max_len: usize,
    max_terms: usize,
) -> NCPoly {
    let terms = rng.gen_range(0..=max_terms);
    NCPoly::from_terms((0..terms).map(|_| {
        let w = random_word(rng, symbols, max_len);
        let num = rng.gen_range(-6i64..=6);
        let den = rng.gen_range(1i64..=4);
        (w, Scalar::new(num.into(), den.into()))
    }))
}

/// Two generic symbols used by the small-ideal oracle tests.
pub fn two_symbols() -> Vec<GenSymbol> {
    vec![GenSymbol::alice(0, 0), GenSymbol::alice(0, 1)]
}

/// All words over `symbols` of degree at most `bound`, deglex ascending.
pub fn words_up_to(symbols: &[GenSymbol], bound: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &level {
            for s in symbols {
                next.push(w.concat(&Word::single(*s)));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn coeff_row(p: &NCPoly, index: &[Word]) -> Vec<Scalar> {
    use num_traits::Zero;
    let mut row = vec![Scalar::zero(); index.len()];
    for (w, c) in p.terms() {
        let pos = index
            .iter()
            .position(|u| u == w)
            .expect("word within degree bound");
        row[pos] = c.clone();
    }
    row
}

/// Exhaustive membership oracle: is `p` in the span of
/// `{l * g * r : deg(l) + deg(g) + deg(r) <= bound}` over the rationals?
/// Exact row reduction; independent of the rewrite engine.
pub fn span_membership(
    gens: &[NCPoly],
    symbols: &[GenSymbol],
    p: &NCPoly,
    bound: usize,
) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.degree().unwrap_or(0) > bound {
        return false;
    }
    let index = words_up_to(symbols, bound);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > bound {
            continue;
        }
        for l in words_up_to(symbols, bound - dg) {
            let remaining = bound - dg - l.degree();
            for r in words_up_to(symbols, remaining) {
                let prod = g.sandwich(&l, &r);
                if !prod.is_zero() {
                    rows.push(coeff_row(&prod, &index));
                }
            }
        }
    }
    if rows.is_empty() {
        return false;
    }
    let base = RatMat::from_rows(rows.clone());
    let rank = base.rank();
    rows.push(coeff_row(p, &index));
    let extended = RatMat::from_rows(rows);
    extended.rank() == rank
}

/// Random regular mirror game with sizes at most 3: plants permutation-win
/// blocks at every mirrored question pair so detection and regularity are
/// guaranteed, with random entries elsewhere.
pub fn random_regular_mirror_game(rng: &mut ChaCha8Rng) -> Game {
    loop {
        let nx = rng.gen_range(1..=3usize);
        let ny = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=3usize);
        let (na, nb) = (n, n);
        let xi: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
        let eta: Vec<usize> = (0..ny).map(|_| rng.gen_range(0..nx)).collect();
        let mut lambda = vec![vec![vec![vec![false; nb]; na]; ny]; nx];
        let mut mirrored = vec![vec![false; ny]; nx];
        for x in 0..nx {
            mirrored[x][xi[x]] = true;
        }
        for y in 0..ny {
            mirrored[eta[y]][y] = true;
        }
        for x in 0..nx {
            for y in 0..ny {
                if mirrored[x][y] {
                    let mut perm: Vec<usize> = (0..n).collect();
                    for i in (1..n).rev() {
                        let j = rng.gen_range(0..=i);
                        perm.swap(i, j);
                    }
                    for b in 0..nb {
                        lambda[x][y][perm[b]][b] = true;
                    }
                } else {
                    for row in lambda[x][y].iter_mut() {
                        for cell in row.iter_mut() {
                            *cell = rng.gen_bool(0.4);
                        }
                    }
                }
            }
        }
        let g = Game::from_fn(nx, ny, na, nb, |x, y, a, b| lambda[x][y][a][b]);
        if let Some(m) = g.find_mirror_maps() {
            if m.regular {
                return g;
            }
        }
    }
}

/// All generator symbols for the chosen family of a game.
pub fn family_symbols(g: &Game, side: Side) -> Vec<GenSymbol> {
    match side {
        Side::Alice => g.alice_symbols(),
        Side::Bob => g.bob_symbols(),
    }
}
