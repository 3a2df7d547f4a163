//! Property tests for the free-algebra layer: order axioms, the involution,
//! exact arithmetic, and parser round-trips.

use proptest::prelude::*;

use mirror_certifier::algebra::{parse_poly, GenSymbol, NCPoly, Scalar, Side, Word};

fn arb_symbol() -> impl Strategy<Value = GenSymbol> {
    (0u8..2, 0u32..3, 0u32..3).prop_map(|(s, q, a)| GenSymbol {
        side: if s == 0 { Side::Alice } else { Side::Bob },
        question: q,
        answer: a,
    })
}

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(arb_symbol(), 0..5).prop_map(Word::from_symbols)
}

fn arb_poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((arb_word(), -9i64..=9), 0..6).prop_map(|ts| {
        NCPoly::from_terms(
            ts.into_iter()
                .map(|(w, c)| (w, Scalar::from_integer(c.into()))),
        )
    })
}

proptest! {
    #[test]
    fn deglex_is_concatenation_compatible(u in arb_word(), v in arb_word(), w in arb_word()) {
        if u < v {
            prop_assert!(w.concat(&u) < w.concat(&v));
            prop_assert!(u.concat(&w) < v.concat(&w));
        }
    }

    #[test]
    fn deglex_total_order_axioms(u in arb_word(), v in arb_word()) {
        use std::cmp::Ordering;
        match u.cmp(&v) {
            Ordering::Less => prop_assert_eq!(v.cmp(&u), Ordering::Greater),
            Ordering::Greater => prop_assert_eq!(v.cmp(&u), Ordering::Less),
            Ordering::Equal => prop_assert_eq!(&u, &v),
        }
        prop_assert!(Word::empty() <= u);
    }

    #[test]
    fn star_is_involutive_antiautomorphism(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(p.mul_ref(&q).star(), q.star().mul_ref(&p.star()));
        prop_assert_eq!(p.star().star(), p);
    }

    #[test]
    fn addition_cancels_exactly(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(p.add_ref(&q).sub_ref(&q), p);
    }

    #[test]
    fn multiplication_distributes(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let lhs = p.mul_ref(&q.add_ref(&r));
        let rhs = p.mul_ref(&q).add_ref(&p.mul_ref(&r));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(p in arb_poly()) {
        let text = p.to_string();
        let back = parse_poly(&text).expect("printed polynomial must parse");
        prop_assert_eq!(back, p);
    }

    #[test]
    fn leading_term_is_max_word(p in arb_poly()) {
        if let Some((lead, _)) = p.leading_term() {
            for (w, _) in p.terms() {
                prop_assert!(w <= lead);
            }
        }
    }
}
