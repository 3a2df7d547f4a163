use crate::algebra::{GenSymbol, NCPoly, Side, Word};
use crate::game::{Game, MirrorStructure};

use super::{GeneratorSet, IdealError, RelationKind};

/// Which generator family a relation set ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    One,
    Two,
    Both,
}

impl Family {
    pub fn from_side(side: Side) -> Family {
        match side {
            Side::Alice => Family::One,
            Side::Bob => Family::Two,
        }
    }
}

fn gen_word(side: Side, q: usize, a: usize) -> Word {
    Word::single(GenSymbol {
        side,
        question: q as u32,
        answer: a as u32,
    })
}

fn push_family_relations(out: &mut GeneratorSet, side: Side, nq: usize, nans: usize) {
    for q in 0..nq {
        for a in 0..nans {
            let e = gen_word(side, q, a);
            let sq = NCPoly::from_word(e.concat(&e));
            out.push(
                sq.sub_ref(&NCPoly::from_word(e)),
                RelationKind::Idempotent,
            );
        }
    }
    for q in 0..nq {
        for a1 in 0..nans {
            for a2 in 0..nans {
                if a1 != a2 {
                    let w = gen_word(side, q, a1).concat(&gen_word(side, q, a2));
                    out.push(NCPoly::from_word(w), RelationKind::Orthogonality);
                }
            }
        }
    }
    for q in 0..nq {
        let mut sum = NCPoly::zero();
        for a in 0..nans {
            sum = sum.add_ref(&NCPoly::from_word(gen_word(side, q, a)));
        }
        out.push(
            sum.sub_ref(&NCPoly::one()),
            RelationKind::Completeness,
        );
    }
}

/// The defining relations of the universal game algebra, restricted to one
/// family or spanning both: idempotents, same-question orthogonality
/// products (both orders), completeness sums, and (for `Both`) all
/// cross-family commutation relations.
pub fn build_universal_relations(g: &Game, family: Family) -> GeneratorSet {
    let mut out = GeneratorSet::new(true);
    if matches!(family, Family::One | Family::Both) {
        push_family_relations(&mut out, Side::Alice, g.nx(), g.na());
    }
    if matches!(family, Family::Two | Family::Both) {
        push_family_relations(&mut out, Side::Bob, g.ny(), g.nb());
    }
    if matches!(family, Family::Both) {
        for x in 0..g.nx() {
            for a in 0..g.na() {
                for y in 0..g.ny() {
                    for b in 0..g.nb() {
                        let e1 = gen_word(Side::Alice, x, a);
                        let e2 = gen_word(Side::Bob, y, b);
                        let p = NCPoly::from_word(e1.concat(&e2))
                            .sub_ref(&NCPoly::from_word(e2.concat(&e1)));
                        out.push(p, RelationKind::Commutation);
                    }
                }
            }
        }
    }
    debug_assert!(out.verify_star_closed());
    out
}

/// The mirrored answer polynomials.
///
/// `f[(y, b)]` sums Alice generators at question `eta(y)` over answers
/// winning with `b`; `g[(x, a)]` sums Bob generators at question `xi(x)` over
/// answers winning with `a`. Zero polynomials are kept (losing rows are
/// meaningful).
#[derive(Debug, Clone)]
pub struct FgTables {
    pub f: Vec<Vec<NCPoly>>,
    pub g: Vec<Vec<NCPoly>>,
}

pub fn build_fg_polys(game: &Game, m: &MirrorStructure) -> FgTables {
    let f = (0..game.ny())
        .map(|y| {
            let ex = m.eta[y];
            (0..game.nb())
                .map(|b| {
                    let mut sum = NCPoly::zero();
                    for a in 0..game.na() {
                        if game.lambda(ex, y, a, b) {
                            sum = sum.add_ref(&NCPoly::from_word(gen_word(Side::Alice, ex, a)));
                        }
                    }
                    sum
                })
                .collect()
        })
        .collect();
    let g = (0..game.nx())
        .map(|x| {
            let wy = m.xi[x];
            (0..game.na())
                .map(|a| {
                    let mut sum = NCPoly::zero();
                    for b in 0..game.nb() {
                        if game.lambda(x, wy, a, b) {
                            sum = sum.add_ref(&NCPoly::from_word(gen_word(Side::Bob, wy, b)));
                        }
                    }
                    sum
                })
                .collect()
        })
        .collect();
    FgTables { f, g }
}

/// The invalid determining set: one degree-2 word per losing table entry.
pub fn build_invalid_set(g: &Game) -> GeneratorSet {
    let mut out = GeneratorSet::new(true);
    for x in 0..g.nx() {
        for y in 0..g.ny() {
            for a in 0..g.na() {
                for b in 0..g.nb() {
                    if !g.lambda(x, y, a, b) {
                        let w = gen_word(Side::Alice, x, a).concat(&gen_word(Side::Bob, y, b));
                        out.push(NCPoly::from_word(w), RelationKind::Invalid);
                    }
                }
            }
        }
    }
    out
}

/// Star-closed generator set of the free-algebra preimage of the one-sided
/// mirror ideal plus its involution: mirror products in both orders at every
/// losing tuple, together with the family's universal relations. Refuses
/// non-regular structures, for which the side ideals say nothing.
pub fn build_mirror_ideal_generators(
    game: &Game,
    m: &MirrorStructure,
    side: Side,
) -> Result<GeneratorSet, IdealError> {
    if !game.mirror_maps_valid(m) {
        return Err(IdealError::InvalidMirrorMaps);
    }
    if !game.check_regularity(m) {
        return Err(IdealError::NotRegular);
    }
    let tables = build_fg_polys(game, m);
    let mut out = GeneratorSet::new(true);
    match side {
        Side::Alice => {
            push_family_relations(&mut out, Side::Alice, game.nx(), game.na());
            for x in 0..game.nx() {
                for y in 0..game.ny() {
                    for a in 0..game.na() {
                        for b in 0..game.nb() {
                            if !game.lambda(x, y, a, b) {
                                let e = NCPoly::from_word(gen_word(Side::Alice, x, a));
                                let f = &tables.f[y][b];
                                out.push(e.mul_ref(f), RelationKind::MirrorLeft);
                                out.push(f.mul_ref(&e), RelationKind::MirrorRight);
                            }
                        }
                    }
                }
            }
        }
        Side::Bob => {
            push_family_relations(&mut out, Side::Bob, game.ny(), game.nb());
            for x in 0..game.nx() {
                for y in 0..game.ny() {
                    for a in 0..game.na() {
                        for b in 0..game.nb() {
                            if !game.lambda(x, y, a, b) {
                                let e = NCPoly::from_word(gen_word(Side::Bob, y, b));
                                let gp = &tables.g[x][a];
                                out.push(e.mul_ref(gp), RelationKind::MirrorLeft);
                                out.push(gp.mul_ref(&e), RelationKind::MirrorRight);
                            }
                        }
                    }
                }
            }
        }
    }
    debug_assert!(out.verify_star_closed());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::game::{example_game, Game};

    #[test]
    fn universal_relations_counts_for_example_family_one() {
        let g = example_game();
        let set = build_universal_relations(&g, Family::One);
        let counts = set.counts_by_kind();
        let get = |k: RelationKind| {
            counts
                .iter()
                .find(|(k2, _)| *k2 == k)
                .map(|(_, n)| *n)
                .unwrap_or(0)
        };
        assert_eq!(get(RelationKind::Idempotent), 4);
        assert_eq!(get(RelationKind::Orthogonality), 4);
        assert_eq!(get(RelationKind::Completeness), 2);
        assert_eq!(set.len(), 10);
        assert!(set.verify_star_closed());
    }

    #[test]
    fn universal_relations_for_single_answer_game() {
        let g = Game::from_fn(1, 1, 1, 1, |_, _, _, _| true);
        let set = build_universal_relations(&g, Family::One);
        let polys: Vec<String> = set.polys().map(|p| p.to_string()).collect();
        assert_eq!(
            polys,
            vec![
                "e1[0,0]*e1[0,0] - e1[0,0]".to_string(),
                "e1[0,0] - 1".to_string()
            ]
        );
    }

    #[test]
    fn both_families_include_all_commutation_relations() {
        let g = example_game();
        let set = build_universal_relations(&g, Family::Both);
        let comm = set
            .entries()
            .iter()
            .filter(|(_, k)| *k == RelationKind::Commutation)
            .count();
        assert_eq!(comm, 16);
    }

    #[test]
    fn fg_tables_match_worked_example() {
        let g = example_game();
        let m = g.find_mirror_maps().unwrap();
        let t = build_fg_polys(&g, &m);
        let p = |s: &str| parse_poly(s).unwrap();
        assert_eq!(t.f[0][0], p("e1[0,0]"));
        assert_eq!(t.f[0][1], p("e1[0,1]"));
        assert_eq!(t.f[1][0], NCPoly::zero());
        assert_eq!(t.f[1][1], p("e1[1,0] + e1[1,1]"));
        assert_eq!(t.g[0][0], p("e2[0,0]"));
        assert_eq!(t.g[0][1], p("e2[0,1]"));
        assert_eq!(t.g[1][0], p("e2[0,0] + e2[0,1]"));
        assert_eq!(t.g[1][1], NCPoly::zero());
    }

    #[test]
    fn fg_tables_zero_game_all_zero() {
        let g = Game::from_fn(2, 2, 2, 2, |_, _, _, _| false);
        let m = g.find_mirror_maps().unwrap();
        let t = build_fg_polys(&g, &m);
        assert!(t.f.iter().flatten().all(NCPoly::is_zero));
        assert!(t.g.iter().flatten().all(NCPoly::is_zero));
    }

    #[test]
    fn invalid_set_counts() {
        let all_win = Game::from_fn(2, 2, 2, 2, |_, _, _, _| true);
        assert!(build_invalid_set(&all_win).is_empty());

        // The worked example's table has 9 losing entries.
        let set = build_invalid_set(&example_game());
        assert_eq!(set.len(), 9);
        for p in set.polys() {
            assert_eq!(p.degree(), Some(2));
        }

        let tiny = Game::from_fn(1, 1, 1, 1, |_, _, _, _| false);
        let set = build_invalid_set(&tiny);
        assert_eq!(set.len(), 1);
        assert_eq!(
            set.poly(0),
            &parse_poly("e1[0,0]*e2[0,0]").unwrap()
        );
    }

    #[test]
    fn mirror_generators_refuse_non_regular() {
        let g = Game::from_fn(2, 2, 2, 2, |_, _, _, _| false);
        let m = g.find_mirror_maps().unwrap();
        let err = build_mirror_ideal_generators(&g, &m, Side::Alice).unwrap_err();
        assert!(matches!(err, IdealError::NotRegular));
    }

    #[test]
    fn mirror_generators_example_side_one() {
        let g = example_game();
        let m = g.find_mirror_maps().unwrap();
        let set = build_mirror_ideal_generators(&g, &m, Side::Alice).unwrap();
        assert!(set.is_star_closed());
        assert!(set.verify_star_closed());
        // Universal family relations plus the deduplicated nonzero mirror
        // products in both orders.
        let p = |s: &str| parse_poly(s).unwrap();
        let polys: Vec<&NCPoly> = set.polys().collect();
        assert!(polys.contains(&&p("e1[0,0]*e1[0,1]")));
        assert!(polys.contains(&&p("e1[0,0]*e1[1,0] + e1[0,0]*e1[1,1]")));
        assert!(polys.contains(&&p("e1[1,0]*e1[0,0] + e1[1,1]*e1[0,0]")));
        // 10 universal relations plus 8 mirror products that are not already
        // orthogonality words.
        assert_eq!(set.len(), 18);
        // All generators stay within the Alice family.
        for poly in set.polys() {
            for (w, _) in poly.terms() {
                assert!(w.symbols().iter().all(|s| s.side == Side::Alice));
            }
        }
    }

    #[test]
    fn mirror_generators_single_answer_game() {
        let g = Game::from_fn(1, 1, 1, 1, |_, _, _, _| true);
        let m = g.find_mirror_maps().unwrap();
        let set = build_mirror_ideal_generators(&g, &m, Side::Alice).unwrap();
        let counts = set.counts_by_kind();
        assert!(counts
            .iter()
            .all(|(k, _)| matches!(k, RelationKind::Idempotent | RelationKind::Completeness)));
        assert_eq!(set.len(), 2);
    }
}
