use std::fmt::Write as _;

use num_traits::Zero;

use crate::algebra::{GenSymbol, NCPoly, Scalar, Word};

/// One term of an ideal combination: `coeff * left * gens[gen] * right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceTerm {
    pub coeff: Scalar,
    pub left: Word,
    pub gen: usize,
    pub right: Word,
}

/// A two-sided ideal combination over an indexed generator list.
pub type Trace = Vec<TraceTerm>;

/// Expands a trace into the polynomial it denotes.
pub fn expand_trace(trace: &Trace, gens: &[NCPoly]) -> NCPoly {
    let mut acc = NCPoly::zero();
    for t in trace {
        let sandwiched = gens[t.gen].sandwich(&t.left, &t.right).scale(&t.coeff);
        acc = acc.add_ref(&sandwiched);
    }
    acc
}

/// Merges duplicate `(gen, left, right)` keys and drops zero coefficients.
pub fn compact_trace(trace: &mut Trace) {
    trace.sort_by(|a, b| {
        a.gen
            .cmp(&b.gen)
            .then_with(|| a.left.cmp(&b.left))
            .then_with(|| a.right.cmp(&b.right))
    });
    let mut out: Trace = Vec::with_capacity(trace.len());
    for t in trace.drain(..) {
        match out.last_mut() {
            Some(last) if last.gen == t.gen && last.left == t.left && last.right == t.right => {
                last.coeff += t.coeff;
                if last.coeff.is_zero() {
                    out.pop();
                }
            }
            _ => out.push(t),
        }
    }
    *trace = out;
}

pub(crate) fn scale_trace(trace: &Trace, c: &Scalar) -> Trace {
    trace
        .iter()
        .map(|t| TraceTerm {
            coeff: &t.coeff * c,
            left: t.left.clone(),
            gen: t.gen,
            right: t.right.clone(),
        })
        .collect()
}

pub(crate) fn sandwich_trace(trace: &Trace, left: &Word, right: &Word) -> Trace {
    trace
        .iter()
        .map(|t| TraceTerm {
            coeff: t.coeff.clone(),
            left: left.concat(&t.left),
            gen: t.gen,
            right: t.right.concat(right),
        })
        .collect()
}

/// A monic rewrite rule `lead -> tail` standing for the polynomial
/// `lead - tail`, with `lead` strictly greater than every tail word.
///
/// `trace` expresses `lead - tail` as a two-sided combination of the input
/// generator set the system was completed from.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lead: Word,
    pub tail: NCPoly,
    pub trace: Trace,
}

impl Rule {
    pub fn poly(&self) -> NCPoly {
        NCPoly::from_word(self.lead.clone()).sub_ref(&self.tail)
    }
}

/// Membership verdict relative to a (possibly degree-truncated) system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// Normal form is zero: the element lies in the ideal. Sound regardless
    /// of the completeness flag.
    Yes,
    /// Nonzero normal form. Definitive only when the system is complete up
    /// to the bound and the element's degree is within it.
    NoUpToBound,
}

/// Degree-truncated two-sided Gröbner basis with deglex order.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub(crate) rules: Vec<Rule>,
    /// Alphabet the system is defined over (fixes basis enumeration).
    pub(crate) symbols: Vec<GenSymbol>,
    pub(crate) degree_bound: usize,
    pub(crate) complete_up_to_bound: bool,
    pub(crate) contains_one: bool,
}

impl RewriteSystem {
    pub fn empty(symbols: Vec<GenSymbol>, degree_bound: usize) -> Self {
        RewriteSystem {
            rules: Vec::new(),
            symbols,
            degree_bound,
            complete_up_to_bound: true,
            contains_one: false,
        }
    }

    /// Test/debug constructor from explicit monic rules (no traces).
    pub fn from_rules(
        symbols: Vec<GenSymbol>,
        degree_bound: usize,
        rules: Vec<(Word, NCPoly)>,
    ) -> Self {
        RewriteSystem {
            rules: rules
                .into_iter()
                .map(|(lead, tail)| Rule {
                    lead,
                    tail,
                    trace: Vec::new(),
                })
                .collect(),
            symbols,
            degree_bound,
            complete_up_to_bound: true,
            contains_one: false,
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.symbols
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn complete_up_to_bound(&self) -> bool {
        self.complete_up_to_bound
    }

    /// True iff the constant word is a rule lead, i.e. the ideal is the whole
    /// algebra.
    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    /// Normal form of `p`: no word of the result contains any rule lead as a
    /// contiguous factor.
    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        reduce_impl(p, &self.rules, None, false).0
    }

    /// Normal form plus the combination subtracted: `p = nf + expand(trace)`.
    pub fn reduce_with_trace(&self, p: &NCPoly) -> (NCPoly, Trace) {
        let (nf, trace) = reduce_impl(p, &self.rules, None, true);
        (nf, trace)
    }

    /// Reduction with an arbitrary choice of reducible word / rule /
    /// occurrence at every step; used to exercise confluence.
    pub fn reduce_with_picker(
        &self,
        p: &NCPoly,
        mut pick: impl FnMut(usize) -> usize,
    ) -> NCPoly {
        let mut cur = p.clone();
        loop {
            let mut candidates = Vec::new();
            for (w, _) in cur.terms() {
                for (ri, rule) in self.rules.iter().enumerate() {
                    let mut start = 0;
                    while let Some(off) = w.suffix_from(start).find_factor(&rule.lead) {
                        candidates.push((w.clone(), start + off, ri));
                        start += off + 1;
                        if rule.lead.is_empty() {
                            break;
                        }
                    }
                }
            }
            if candidates.is_empty() {
                return cur;
            }
            let (w, pos, ri) = candidates[pick(candidates.len()) % candidates.len()].clone();
            let rule = &self.rules[ri];
            let c = cur.coeff(&w);
            if c.is_zero() {
                continue;
            }
            let (l, r) = w.split_around(pos, rule.lead.degree());
            let replacement = rule.tail.sandwich(&l, &r).scale(&c);
            cur = cur
                .sub_ref(&NCPoly::monomial(c, w))
                .add_ref(&replacement);
        }
    }

    pub fn membership(&self, p: &NCPoly) -> Membership {
        if self.reduce(p).is_zero() {
            Membership::Yes
        } else {
            Membership::NoUpToBound
        }
    }

    /// Deterministic textual serialization: header plus one `lead -> tail`
    /// line per rule in ascending deglex order of leads.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# order: deglex (side, question, answer)");
        let _ = writeln!(out, "# degree_bound: {}", self.degree_bound);
        let _ = writeln!(out, "# complete_up_to_bound: {}", self.complete_up_to_bound);
        let _ = writeln!(out, "# contains_one: {}", self.contains_one);
        let syms: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "# symbols: {}", syms.join(" "));
        let mut rules: Vec<&Rule> = self.rules.iter().collect();
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        for r in rules {
            let _ = writeln!(out, "{} -> {}", r.lead, r.tail);
        }
        out
    }
}

/// Finds the reduction site in `p`: the deglex-greatest reducible word, the
/// leftmost occurrence in it, ties between rules at the same position broken
/// by rule order.
fn find_site(
    p: &NCPoly,
    rules: &[Rule],
    active: Option<&[bool]>,
) -> Option<(Word, Scalar, usize, usize)> {
    for (w, c) in p.terms() {
        let mut best: Option<(usize, usize)> = None;
        for (ri, rule) in rules.iter().enumerate() {
            if active.is_some_and(|a| !a[ri]) {
                continue;
            }
            if let Some(pos) = w.find_factor(&rule.lead) {
                best = match best {
                    Some((bp, br)) if (bp, br) <= (pos, ri) => Some((bp, br)),
                    _ => Some((pos, ri)),
                };
            }
        }
        if let Some((pos, ri)) = best {
            return Some((w.clone(), c.clone(), pos, ri));
        }
    }
    None
}

/// Core reduction loop shared by the frozen system and the completion
/// procedure. Each step strictly decreases the multiset of words under
/// deglex, so it terminates.
pub(crate) fn reduce_impl(
    p: &NCPoly,
    rules: &[Rule],
    active: Option<&[bool]>,
    with_trace: bool,
) -> (NCPoly, Trace) {
    let mut cur = p.clone();
    let mut trace: Trace = Vec::new();
    while let Some((w, c, pos, ri)) = find_site(&cur, rules, active) {
        let rule = &rules[ri];
        let (l, r) = w.split_around(pos, rule.lead.degree());
        // cur -= c * l * (lead - tail) * r
        let replacement = rule.tail.sandwich(&l, &r).scale(&c);
        cur = cur.sub_ref(&NCPoly::monomial(c.clone(), w)).add_ref(&replacement);
        if with_trace {
            let mut step = sandwich_trace(&rule.trace, &l, &r);
            step = scale_trace(&step, &c);
            trace.extend(step);
            if trace.len() > 4096 {
                compact_trace(&mut trace);
            }
        }
    }
    if with_trace {
        compact_trace(&mut trace);
    }
    (cur, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn a(q: u32, ans: u32) -> GenSymbol {
        GenSymbol::alice(q, ans)
    }

    fn w(syms: &[GenSymbol]) -> Word {
        Word::from_symbols(syms.to_vec())
    }

    #[test]
    fn reduce_under_empty_system_is_identity() {
        let rs = RewriteSystem::empty(vec![a(0, 0)], 4);
        let p = parse_poly("e1[0,0]*e1[0,0] + 2").unwrap();
        assert_eq!(rs.reduce(&p), p);
        assert_eq!(rs.membership(&p), Membership::NoUpToBound);
    }

    #[test]
    fn idempotent_rule_reduces_square() {
        // (e1[0,0])^2 -> e1[0,0]
        let rs = RewriteSystem::from_rules(
            vec![a(0, 0)],
            4,
            vec![(
                w(&[a(0, 0), a(0, 0)]),
                NCPoly::from_word(w(&[a(0, 0)])),
            )],
        );
        let p = parse_poly("e1[0,0]*e1[0,0]").unwrap();
        assert_eq!(rs.reduce(&p), parse_poly("e1[0,0]").unwrap());
    }

    #[test]
    fn two_zero_rules_reduce_completeness_to_minus_one() {
        let rs = RewriteSystem::from_rules(
            vec![a(0, 0), a(0, 1)],
            4,
            vec![
                (w(&[a(0, 0)]), NCPoly::zero()),
                (w(&[a(0, 1)]), NCPoly::zero()),
            ],
        );
        let p = parse_poly("e1[0,0] + e1[0,1] - 1").unwrap();
        assert_eq!(rs.reduce(&p), parse_poly("-1").unwrap());
    }

    #[test]
    fn constant_rule_reduces_everything_to_zero() {
        let mut rs = RewriteSystem::from_rules(
            vec![a(0, 0)],
            4,
            vec![(Word::empty(), NCPoly::zero())],
        );
        rs.contains_one = true;
        let p = parse_poly("e1[0,0]*e1[0,0] - 3/7").unwrap();
        assert!(rs.reduce(&p).is_zero());
        assert_eq!(rs.membership(&NCPoly::one()), Membership::Yes);
    }

    #[test]
    fn trace_expands_to_the_subtracted_part() {
        // Rule with a synthetic trace over a one-element generator list.
        let gen = parse_poly("e1[0,0]*e1[0,0] - e1[0,0]").unwrap();
        let rule = Rule {
            lead: w(&[a(0, 0), a(0, 0)]),
            tail: NCPoly::from_word(w(&[a(0, 0)])),
            trace: vec![TraceTerm {
                coeff: Scalar::from_integer(1.into()),
                left: Word::empty(),
                gen: 0,
                right: Word::empty(),
            }],
        };
        let rs = RewriteSystem {
            rules: vec![rule],
            symbols: vec![a(0, 0)],
            degree_bound: 6,
            complete_up_to_bound: true,
            contains_one: false,
        };
        let p = parse_poly("3 e1[0,0]*e1[0,0]*e1[0,0] + e1[0,0]").unwrap();
        let (nf, trace) = rs.reduce_with_trace(&p);
        let expanded = expand_trace(&trace, &[gen]);
        assert_eq!(nf.add_ref(&expanded), p);
        // Normal form contains no occurrence of the lead.
        for (word, _) in nf.terms() {
            assert!(!word.contains_factor(&rs.rules[0].lead));
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let rs = RewriteSystem::from_rules(
            vec![a(0, 0), a(0, 1)],
            4,
            vec![
                (w(&[a(0, 1)]), NCPoly::one()),
                (w(&[a(0, 0)]), NCPoly::zero()),
            ],
        );
        let t1 = rs.to_text();
        let t2 = rs.to_text();
        assert_eq!(t1, t2);
        assert!(t1.contains("e1[0,0] -> 0"));
        assert!(t1.contains("e1[0,1] -> 1"));
        let zero_line = t1.find("e1[0,0] ->").unwrap();
        let one_line = t1.find("e1[0,1] ->").unwrap();
        assert!(zero_line < one_line);
    }
}
