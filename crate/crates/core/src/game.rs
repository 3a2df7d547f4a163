//! Finite nonlocal games with boolean scoring tables and the uniform question
//! distribution: validation, mirror-structure detection, regularity, the
//! classical-value brute force, and the game polynomial.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{GenSymbol, NCPoly, Scalar, Word};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("question/answer sets must be nonempty: {0}={1}")]
    EmptySet(&'static str, usize),
    #[error("lambda dimension mismatch at {axis} index {index}: expected {expected}, got {got}")]
    Dimension {
        axis: &'static str,
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("non-boolean entry {value} at lambda[{x}][{y}][{a}][{b}]")]
    NonBoolean {
        x: usize,
        y: usize,
        a: usize,
        b: usize,
        value: i64,
    },
    #[error("only the uniform distribution is supported, got `{0}`")]
    BadDistribution(String),
    #[error("game file parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(
        "strategy enumeration budget exceeded: |A|^|X| * |B|^|Y| = {required} > {budget}"
    )]
    BudgetExceeded { required: u128, budget: u128 },
}

/// Raw game description as it appears in a game file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawGame {
    pub nx: usize,
    pub ny: usize,
    pub na: usize,
    pub nb: usize,
    /// Nested `[x][y][a][b]` table of 0/1 entries.
    pub lambda: Vec<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<String>,
}

/// A validated finite game with uniform question distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    nx: usize,
    ny: usize,
    na: usize,
    nb: usize,
    lambda: Vec<bool>,
}

/// Mirror maps `xi: X -> Y`, `eta: Y -> X` together with the regularity flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MirrorStructure {
    pub xi: Vec<usize>,
    pub eta: Vec<usize>,
    pub regular: bool,
}

/// Outcome of the deterministic-strategy brute force.
#[derive(Debug, Clone)]
pub struct ClassicalReport {
    /// Exact maximum winning probability.
    pub value: Scalar,
    /// First strategy pair attaining the maximum (answers indexed by question).
    pub best_alice: Vec<usize>,
    pub best_bob: Vec<usize>,
    /// True iff some deterministic strategy wins every question pair.
    pub perfect: bool,
}

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

impl Game {
    pub fn validate(raw: &RawGame) -> Result<Game, GameError> {
        for (name, v) in [
            ("nx", raw.nx),
            ("ny", raw.ny),
            ("na", raw.na),
            ("nb", raw.nb),
        ] {
            if v == 0 {
                return Err(GameError::EmptySet(name, v));
            }
        }
        if let Some(d) = &raw.distribution {
            if d != "uniform" {
                return Err(GameError::BadDistribution(d.clone()));
            }
        }
        if raw.lambda.len() != raw.nx {
            return Err(GameError::Dimension {
                axis: "x",
                index: 0,
                expected: raw.nx,
                got: raw.lambda.len(),
            });
        }
        let mut lambda = Vec::with_capacity(raw.nx * raw.ny * raw.na * raw.nb);
        for (x, row_y) in raw.lambda.iter().enumerate() {
            if row_y.len() != raw.ny {
                return Err(GameError::Dimension {
                    axis: "y",
                    index: x,
                    expected: raw.ny,
                    got: row_y.len(),
                });
            }
            for (y, row_a) in row_y.iter().enumerate() {
                if row_a.len() != raw.na {
                    return Err(GameError::Dimension {
                        axis: "a",
                        index: y,
                        expected: raw.na,
                        got: row_a.len(),
                    });
                }
                for (a, row_b) in row_a.iter().enumerate() {
                    if row_b.len() != raw.nb {
                        return Err(GameError::Dimension {
                            axis: "b",
                            index: a,
                            expected: raw.nb,
                            got: row_b.len(),
                        });
                    }
                    for (b, &entry) in row_b.iter().enumerate() {
                        match entry {
                            0 => lambda.push(false),
                            1 => lambda.push(true),
                            other => {
                                return Err(GameError::NonBoolean {
                                    x,
                                    y,
                                    a,
                                    b,
                                    value: other,
                                })
                            }
                        }
                    }
                }
            }
        }
        Ok(Game {
            nx: raw.nx,
            ny: raw.ny,
            na: raw.na,
            nb: raw.nb,
            lambda,
        })
    }

    /// Builds a game from a predicate; panics only on zero dimensions.
    pub fn from_fn(
        nx: usize,
        ny: usize,
        na: usize,
        nb: usize,
        mut win: impl FnMut(usize, usize, usize, usize) -> bool,
    ) -> Game {
        assert!(nx >= 1 && ny >= 1 && na >= 1 && nb >= 1);
        let mut lambda = Vec::with_capacity(nx * ny * na * nb);
        for x in 0..nx {
            for y in 0..ny {
                for a in 0..na {
                    for b in 0..nb {
                        lambda.push(win(x, y, a, b));
                    }
                }
            }
        }
        Game {
            nx,
            ny,
            na,
            nb,
            lambda,
        }
    }

    pub fn from_json_str(s: &str) -> Result<Game, GameError> {
        let raw: RawGame = serde_json::from_str(s)?;
        Game::validate(&raw)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn na(&self) -> usize {
        self.na
    }
    pub fn nb(&self) -> usize {
        self.nb
    }

    #[inline]
    pub fn lambda(&self, x: usize, y: usize, a: usize, b: usize) -> bool {
        self.lambda[((x * self.ny + y) * self.na + a) * self.nb + b]
    }

    pub fn to_raw(&self) -> RawGame {
        let lambda = (0..self.nx)
            .map(|x| {
                (0..self.ny)
                    .map(|y| {
                        (0..self.na)
                            .map(|a| {
                                (0..self.nb)
                                    .map(|b| i64::from(self.lambda(x, y, a, b)))
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RawGame {
            nx: self.nx,
            ny: self.ny,
            na: self.na,
            nb: self.nb,
            lambda,
            distribution: None,
        }
    }

    /// Canonical serialization: field order fixed, no distribution field, no
    /// whitespace. parse -> serialize -> parse is the identity.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("game serialization cannot fail")
    }

    /// SHA-256 of the canonical serialization, hex-encoded. Binds
    /// certificates to the game instance regardless of file formatting.
    pub fn sha256_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_canonical_json().as_bytes());
        hex::encode(h.finalize())
    }

    /// True iff `y` can serve as `xi(x)`: no two distinct Alice answers win
    /// with a common Bob answer at the pair `(x, y)`.
    pub fn xi_condition(&self, x: usize, y: usize) -> bool {
        for b in 0..self.nb {
            let mut winners = 0;
            for a in 0..self.na {
                if self.lambda(x, y, a, b) {
                    winners += 1;
                    if winners > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True iff `x` can serve as `eta(y)`: no two distinct Bob answers win
    /// with a common Alice answer at the pair `(x, y)`.
    pub fn eta_condition(&self, x: usize, y: usize) -> bool {
        for a in 0..self.na {
            let mut winners = 0;
            for b in 0..self.nb {
                if self.lambda(x, y, a, b) {
                    winners += 1;
                    if winners > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Regularity half for a candidate `xi(x) = y`: every Bob answer wins
    /// with some Alice answer at `(x, y)`.
    pub fn xi_covers(&self, x: usize, y: usize) -> bool {
        (0..self.nb).all(|b| (0..self.na).any(|a| self.lambda(x, y, a, b)))
    }

    /// Regularity half for a candidate `eta(y) = x`: every Alice answer wins
    /// with some Bob answer at `(x, y)`.
    pub fn eta_covers(&self, x: usize, y: usize) -> bool {
        (0..self.na).all(|a| (0..self.nb).any(|b| self.lambda(x, y, a, b)))
    }

    /// All valid mirror-map candidates, per question: `(xi_candidates[x],
    /// eta_candidates[y])`. The game is a mirror game iff every list is
    /// nonempty.
    pub fn mirror_map_candidates(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let xi = (0..self.nx)
            .map(|x| (0..self.ny).filter(|&y| self.xi_condition(x, y)).collect())
            .collect();
        let eta = (0..self.ny)
            .map(|y| (0..self.nx).filter(|&x| self.eta_condition(x, y)).collect())
            .collect();
        (xi, eta)
    }

    /// Searches per question for mirror maps. Among valid candidates the
    /// search prefers ones whose winning sets cover the full answer alphabet
    /// (so a regular choice is found whenever one exists), breaking remaining
    /// ties by smallest index. Returns `None` when some question has no valid
    /// candidate.
    pub fn find_mirror_maps(&self) -> Option<MirrorStructure> {
        let (xi_cand, eta_cand) = self.mirror_map_candidates();
        let mut xi = Vec::with_capacity(self.nx);
        for (x, cands) in xi_cand.iter().enumerate() {
            if cands.is_empty() {
                return None;
            }
            let pick = cands
                .iter()
                .copied()
                .find(|&y| self.xi_covers(x, y))
                .unwrap_or(cands[0]);
            xi.push(pick);
        }
        let mut eta = Vec::with_capacity(self.ny);
        for (y, cands) in eta_cand.iter().enumerate() {
            if cands.is_empty() {
                return None;
            }
            let pick = cands
                .iter()
                .copied()
                .find(|&x| self.eta_covers(x, y))
                .unwrap_or(cands[0]);
            eta.push(pick);
        }
        let mut m = MirrorStructure {
            xi,
            eta,
            regular: false,
        };
        m.regular = self.check_regularity(&m);
        Some(m)
    }

    /// Checks whether the given maps satisfy both mirror conditions.
    pub fn mirror_maps_valid(&self, m: &MirrorStructure) -> bool {
        m.xi.len() == self.nx
            && m.eta.len() == self.ny
            && m.xi.iter().all(|&y| y < self.ny)
            && m.eta.iter().all(|&x| x < self.nx)
            && (0..self.nx).all(|x| self.xi_condition(x, m.xi[x]))
            && (0..self.ny).all(|y| self.eta_condition(m.eta[y], y))
    }

    /// The set-union regularity test: winning answers along the mirrored
    /// pairs cover both answer alphabets.
    pub fn check_regularity(&self, m: &MirrorStructure) -> bool {
        (0..self.nx).all(|x| self.xi_covers(x, m.xi[x]))
            && (0..self.ny).all(|y| self.eta_covers(m.eta[y], y))
    }

    /// Exact classical value by exhaustive enumeration of deterministic
    /// strategy pairs.
    pub fn classical_value(&self, budget: u128) -> Result<Scalar, GameError> {
        Ok(self.classical_report(budget)?.value)
    }

    pub fn classical_report(&self, budget: u128) -> Result<ClassicalReport, GameError> {
        let a_count = (self.na as u128)
            .checked_pow(self.nx as u32)
            .unwrap_or(u128::MAX);
        let b_count = (self.nb as u128)
            .checked_pow(self.ny as u32)
            .unwrap_or(u128::MAX);
        let required = a_count.saturating_mul(b_count);
        if required > budget {
            return Err(GameError::BudgetExceeded { required, budget });
        }

        let total_pairs = self.nx * self.ny;
        let mut best = 0usize;
        let mut best_pair: Option<(Vec<usize>, Vec<usize>)> = None;

        let mut a_assign = vec![0usize; self.nx];
        loop {
            // Wins per (y, b) for this Alice assignment.
            let mut wins_yb = vec![0usize; self.ny * self.nb];
            for x in 0..self.nx {
                for y in 0..self.ny {
                    for b in 0..self.nb {
                        if self.lambda(x, y, a_assign[x], b) {
                            wins_yb[y * self.nb + b] += 1;
                        }
                    }
                }
            }
            let mut b_assign = vec![0usize; self.ny];
            loop {
                let wins: usize = (0..self.ny)
                    .map(|y| wins_yb[y * self.nb + b_assign[y]])
                    .sum();
                if wins > best {
                    best = wins;
                    best_pair = Some((a_assign.clone(), b_assign.clone()));
                    if best == total_pairs {
                        break;
                    }
                }
                if !increment(&mut b_assign, self.nb) {
                    break;
                }
            }
            if best == total_pairs {
                break;
            }
            if !increment(&mut a_assign, self.na) {
                break;
            }
        }

        let (best_alice, best_bob) = best_pair.expect("at least one strategy exists");
        Ok(ClassicalReport {
            value: Scalar::new((best as i64).into(), (total_pairs as i64).into()),
            best_alice,
            best_bob,
            perfect: best == total_pairs,
        })
    }

    /// The game polynomial: uniform weight on each winning generator pair.
    pub fn game_polynomial(&self) -> NCPoly {
        let weight = Scalar::new(1.into(), ((self.nx * self.ny) as i64).into());
        let mut terms = Vec::new();
        for x in 0..self.nx {
            for y in 0..self.ny {
                for a in 0..self.na {
                    for b in 0..self.nb {
                        if self.lambda(x, y, a, b) {
                            let w = Word::from_symbols(vec![
                                GenSymbol::alice(x as u32, a as u32),
                                GenSymbol::bob(y as u32, b as u32),
                            ]);
                            terms.push((w, weight.clone()));
                        }
                    }
                }
            }
        }
        NCPoly::from_terms(terms)
    }

    /// All Alice generator symbols, in symbol order.
    pub fn alice_symbols(&self) -> Vec<GenSymbol> {
        let mut v = Vec::with_capacity(self.nx * self.na);
        for x in 0..self.nx {
            for a in 0..self.na {
                v.push(GenSymbol::alice(x as u32, a as u32));
            }
        }
        v
    }

    /// All Bob generator symbols, in symbol order.
    pub fn bob_symbols(&self) -> Vec<GenSymbol> {
        let mut v = Vec::with_capacity(self.ny * self.nb);
        for y in 0..self.ny {
            for b in 0..self.nb {
                v.push(GenSymbol::bob(y as u32, b as u32));
            }
        }
        v
    }
}

fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The worked 2x2 example game used across the test suite.
pub fn example_game() -> Game {
    // Winning (a,b) pairs per question pair (x,y).
    let wins: &[((usize, usize), &[(usize, usize)])] = &[
        ((0, 0), &[(0, 0), (1, 1)]),
        ((0, 1), &[(1, 0)]),
        ((1, 0), &[(0, 0), (0, 1)]),
        ((1, 1), &[(0, 1), (1, 1)]),
    ];
    Game::from_fn(2, 2, 2, 2, |x, y, a, b| {
        wins.iter()
            .find(|((gx, gy), _)| *gx == x && *gy == y)
            .is_some_and(|(_, ws)| ws.contains(&(a, b)))
    })
}

/// The CHSH game: players win iff the XOR of answers equals the AND of
/// questions.
pub fn chsh_game() -> Game {
    Game::from_fn(2, 2, 2, 2, |x, y, a, b| (a ^ b) == (x & y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(c: &Scalar) -> bool {
        c.is_one()
    }

    #[test]
    fn validate_example_game_file() {
        let g = example_game();
        let json = g.to_canonical_json();
        let reparsed = Game::from_json_str(&json).unwrap();
        assert_eq!(reparsed, g);
        assert_eq!(reparsed.to_canonical_json(), json);
        assert_eq!((g.nx(), g.ny(), g.na(), g.nb()), (2, 2, 2, 2));
    }

    #[test]
    fn validate_rejects_empty_answer_set() {
        let raw = RawGame {
            nx: 1,
            ny: 1,
            na: 0,
            nb: 1,
            lambda: vec![vec![vec![]]],
            distribution: None,
        };
        assert!(matches!(
            Game::validate(&raw),
            Err(GameError::EmptySet("na", 0))
        ));
    }

    #[test]
    fn validate_rejects_non_boolean_entry() {
        let raw = RawGame {
            nx: 1,
            ny: 1,
            na: 1,
            nb: 1,
            lambda: vec![vec![vec![vec![2]]]],
            distribution: None,
        };
        assert!(matches!(
            Game::validate(&raw),
            Err(GameError::NonBoolean { value: 2, .. })
        ));
    }

    #[test]
    fn validate_rejects_non_uniform_distribution() {
        let raw = RawGame {
            nx: 1,
            ny: 1,
            na: 1,
            nb: 1,
            lambda: vec![vec![vec![vec![1]]]],
            distribution: Some("biased".into()),
        };
        assert!(matches!(
            Game::validate(&raw),
            Err(GameError::BadDistribution(_))
        ));
    }

    #[test]
    fn example_mirror_maps_match_expected() {
        let g = example_game();
        let m = g.find_mirror_maps().unwrap();
        assert_eq!(m.xi, vec![0, 0]);
        assert_eq!(m.eta, vec![0, 1]);
        assert!(m.regular);
        assert!(g.mirror_maps_valid(&m));
    }

    #[test]
    fn zero_game_is_mirror_but_not_regular() {
        let g = Game::from_fn(2, 2, 2, 2, |_, _, _, _| false);
        let m = g.find_mirror_maps().unwrap();
        assert!(!m.regular);
        assert!(g.mirror_maps_valid(&m));
    }

    #[test]
    fn single_answer_all_win_is_regular() {
        let g = Game::from_fn(1, 1, 1, 1, |_, _, _, _| true);
        let m = g.find_mirror_maps().unwrap();
        assert_eq!(m.xi, vec![0]);
        assert_eq!(m.eta, vec![0]);
        assert!(m.regular);
    }

    #[test]
    fn mirror_structure_replays_against_table() {
        // Soundness: any returned maps satisfy both product-zero conditions.
        let games = [example_game(), chsh_game()];
        for g in games {
            let m = g.find_mirror_maps().unwrap();
            for x in 0..g.nx() {
                for b in 0..g.nb() {
                    for a1 in 0..g.na() {
                        for a2 in 0..g.na() {
                            if a1 != a2 {
                                assert!(
                                    !(g.lambda(x, m.xi[x], a1, b) && g.lambda(x, m.xi[x], a2, b))
                                );
                            }
                        }
                    }
                }
            }
            for y in 0..g.ny() {
                for a in 0..g.na() {
                    for b1 in 0..g.nb() {
                        for b2 in 0..g.nb() {
                            if b1 != b2 {
                                assert!(
                                    !(g.lambda(m.eta[y], y, a, b1) && g.lambda(m.eta[y], y, a, b2))
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn synchronous_game_admits_identity_maps() {
        // Same question/answer sets, winning requires equal answers on the
        // diagonal: the identity maps are always among the candidates.
        let g = Game::from_fn(3, 3, 2, 2, |x, y, a, b| {
            if x == y {
                a == b
            } else {
                (a + b + x + y) % 2 == 0
            }
        });
        let (xi_cand, eta_cand) = g.mirror_map_candidates();
        for x in 0..3 {
            assert!(xi_cand[x].contains(&x));
        }
        for y in 0..3 {
            assert!(eta_cand[y].contains(&y));
        }
    }

    #[test]
    fn classical_value_of_example_is_three_quarters() {
        let g = example_game();
        let v = g.classical_value(DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(v, Scalar::new(3.into(), 4.into()));
    }

    #[test]
    fn classical_value_of_chsh_is_three_quarters() {
        let v = chsh_game()
            .classical_value(DEFAULT_ENUMERATION_BUDGET)
            .unwrap();
        assert_eq!(v, Scalar::new(3.into(), 4.into()));
    }

    #[test]
    fn all_win_game_has_value_one_and_perfect_flag() {
        let g = Game::from_fn(2, 2, 2, 2, |_, _, _, _| true);
        let r = g.classical_report(DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(one(&r.value));
        assert!(r.perfect);
    }

    #[test]
    fn budget_error_reports_requirement() {
        let g = Game::from_fn(2, 2, 2, 2, |_, _, _, _| true);
        let err = g.classical_value(5).unwrap_err();
        assert!(matches!(err, GameError::BudgetExceeded { required: 16, .. }));
    }

    #[test]
    fn classical_value_invariant_under_answer_relabeling() {
        let g = example_game();
        let base = g.classical_value(DEFAULT_ENUMERATION_BUDGET).unwrap();
        // Swap Alice's answers and Bob's answers.
        let ga = Game::from_fn(2, 2, 2, 2, |x, y, a, b| g.lambda(x, y, 1 - a, b));
        let gb = Game::from_fn(2, 2, 2, 2, |x, y, a, b| g.lambda(x, y, a, 1 - b));
        assert_eq!(ga.classical_value(DEFAULT_ENUMERATION_BUDGET).unwrap(), base);
        assert_eq!(gb.classical_value(DEFAULT_ENUMERATION_BUDGET).unwrap(), base);
    }

    #[test]
    fn perfect_flag_matches_value_one() {
        for g in [
            example_game(),
            chsh_game(),
            Game::from_fn(2, 2, 2, 2, |_, _, _, _| true),
            Game::from_fn(1, 1, 1, 1, |_, _, _, _| true),
        ] {
            let r = g.classical_report(DEFAULT_ENUMERATION_BUDGET).unwrap();
            assert_eq!(r.perfect, one(&r.value));
        }
    }

    #[test]
    fn game_polynomial_shapes() {
        let zero = Game::from_fn(2, 2, 2, 2, |_, _, _, _| false);
        assert!(zero.game_polynomial().is_zero());

        let tiny = Game::from_fn(1, 1, 1, 1, |_, _, _, _| true);
        let p = tiny.game_polynomial();
        assert_eq!(p.num_terms(), 1);
        let (w, c) = p.leading_term().unwrap();
        assert!(one(c));
        assert_eq!(w.to_string(), "e1[0,0]*e2[0,0]");

        // The worked example's table has 7 winning entries, each weighted 1/4.
        let p = example_game().game_polynomial();
        assert_eq!(p.num_terms(), 7);
        let quarter = Scalar::new(1.into(), 4.into());
        for (_, c) in p.terms() {
            assert_eq!(*c, quarter);
        }
    }

    #[test]
    fn hash_is_formatting_independent() {
        let g = example_game();
        let pretty = serde_json::to_string_pretty(&g.to_raw()).unwrap();
        let g2 = Game::from_json_str(&pretty).unwrap();
        assert_eq!(g.sha256_hex(), g2.sha256_hex());
        let other = chsh_game();
        assert_ne!(g.sha256_hex(), other.sha256_hex());
    }
}
