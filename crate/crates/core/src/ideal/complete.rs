use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use num_traits::One;

use crate::algebra::{GenSymbol, NCPoly, Scalar, Word};

use super::rewrite::{
    compact_trace, expand_trace, reduce_impl, sandwich_trace, scale_trace, RewriteSystem, Rule,
    Trace, TraceTerm,
};
use super::{GeneratorSet, IdealError};

#[derive(Debug, Clone)]
pub struct CompletionOptions {
    pub degree_bound: usize,
    /// Safety valve against pathological rule growth.
    pub rule_cap: usize,
}

impl CompletionOptions {
    pub fn with_degree_bound(degree_bound: usize) -> Self {
        CompletionOptions {
            degree_bound,
            rule_cap: 20_000,
        }
    }
}

/// Pending obstruction between rules `i` and `j`: the last `overlap` symbols
/// of `lead_i` equal the first `overlap` symbols of `lead_j`, superposition
/// word of degree `w_deg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Obstruction {
    w_deg: usize,
    seq: u64,
    i: usize,
    j: usize,
    overlap: usize,
}

/// Degree-truncated Mora completion with inter-reduction.
///
/// Repeatedly forms overlap obstructions, reduces each S-polynomial to
/// normal form, adjoins nonzero normal forms as new monic rules (deactivating
/// any rule whose lead the new lead divides), processing the lowest-degree
/// obstruction first. Obstructions whose S-polynomial exceeds the degree
/// bound are discarded and recorded in `complete_up_to_bound`. Discovery of a
/// constant rule stops the run immediately with `contains_one` set.
pub fn complete(
    gens: &GeneratorSet,
    symbols: Vec<GenSymbol>,
    opts: &CompletionOptions,
) -> Result<RewriteSystem, IdealError> {
    let bound = opts.degree_bound;
    let max_gen = gens.max_degree();
    if bound < max_gen {
        return Err(IdealError::DegreeBoundTooSmall {
            bound,
            max_gen,
        });
    }

    let gen_polys: Vec<NCPoly> = gens.polys().cloned().collect();

    let mut rules: Vec<Rule> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pending: VecDeque<(NCPoly, Trace)> = VecDeque::new();
    let mut queue: BinaryHeap<Reverse<Obstruction>> = BinaryHeap::new();
    let mut seq: u64 = 0;
    let mut discarded = false;
    let mut one_trace: Option<Trace> = None;

    for (idx, p) in gen_polys.iter().enumerate() {
        pending.push_back((
            p.clone(),
            vec![TraceTerm {
                coeff: Scalar::one(),
                left: Word::empty(),
                gen: idx,
                right: Word::empty(),
            }],
        ));
    }

    'outer: loop {
        let (poly, trace) = if let Some(item) = pending.pop_front() {
            item
        } else if let Some(Reverse(ob)) = queue.pop() {
            if !active[ob.i] || !active[ob.j] {
                continue;
            }
            let (s, s_trace) = s_polynomial(&rules, ob.i, ob.j, ob.overlap);
            if s.is_zero() {
                continue;
            }
            if s.degree().unwrap_or(0) > bound {
                discarded = true;
                continue;
            }
            (s, s_trace)
        } else {
            break;
        };

        let (nf, red_trace) = reduce_impl(&poly, &rules, Some(&active), true);
        if nf.is_zero() {
            continue;
        }
        // nf = poly - expand(red_trace), so trace(nf) = trace - red_trace.
        let mut nf_trace = trace;
        nf_trace.extend(scale_trace(&red_trace, &-Scalar::one()));
        compact_trace(&mut nf_trace);

        let (lead_word, lc) = nf.leading_term().expect("nonzero");
        let lead = lead_word.clone();
        let inv = Scalar::one() / lc.clone();
        let monic = nf.scale(&inv);
        let monic_trace = scale_trace(&nf_trace, &inv);

        if lead.is_empty() {
            one_trace = Some(monic_trace);
            break 'outer;
        }

        let tail = NCPoly::from_word(lead.clone()).sub_ref(&monic);

        // Inter-reduction: retire rules whose lead contains the new lead and
        // feed their polynomials back through the queue.
        for k in 0..rules.len() {
            if active[k] && rules[k].lead.contains_factor(&lead) {
                active[k] = false;
                pending.push_back((rules[k].poly(), rules[k].trace.clone()));
            }
        }

        let new_idx = rules.len();
        rules.push(Rule {
            lead,
            tail,
            trace: monic_trace,
        });
        active.push(true);
        if rules.len() > opts.rule_cap {
            return Err(IdealError::RuleCapExceeded { cap: opts.rule_cap });
        }

        for k in 0..rules.len() {
            if !active[k] {
                continue;
            }
            for (i, j) in [(new_idx, k), (k, new_idx)] {
                if i == j && k != new_idx {
                    continue;
                }
                let li = rules[i].lead.degree();
                let lj = rules[j].lead.degree();
                let max_overlap = li.min(lj).saturating_sub(1);
                for o in 1..=max_overlap {
                    if overlap_matches(&rules[i].lead, &rules[j].lead, o) {
                        let w_deg = li + lj - o;
                        queue.push(Reverse(Obstruction {
                            w_deg,
                            seq,
                            i,
                            j,
                            overlap: o,
                        }));
                        seq += 1;
                    }
                }
                if i == j {
                    break; // self-pair handled once
                }
            }
        }
    }

    if let Some(tr) = one_trace {
        // The ideal is the whole algebra: the inter-reduced system is the
        // single constant rule, which rewrites every word to zero.
        return Ok(RewriteSystem {
            rules: vec![Rule {
                lead: Word::empty(),
                tail: NCPoly::zero(),
                trace: tr,
            }],
            symbols,
            degree_bound: bound,
            complete_up_to_bound: true,
            contains_one: true,
        });
    }

    // Keep only active rules and put tails into normal form.
    let mut kept: Vec<Rule> = rules
        .into_iter()
        .zip(active)
        .filter_map(|(r, a)| a.then_some(r))
        .collect();
    kept.sort_by(|a, b| a.lead.cmp(&b.lead));
    for i in 0..kept.len() {
        let tail = kept[i].tail.clone();
        let (nf_tail, tr) = reduce_impl(&tail, &kept, None, true);
        if nf_tail != tail {
            // poly' = lead - nf(tail) = poly + (tail - nf(tail)) = poly + expand(tr)
            kept[i].tail = nf_tail;
            let mut t = kept[i].trace.clone();
            t.extend(tr);
            compact_trace(&mut t);
            kept[i].trace = t;
        }
    }

    let rs = RewriteSystem {
        rules: kept,
        symbols,
        degree_bound: bound,
        complete_up_to_bound: !discarded,
        contains_one: false,
    };
    debug_assert!(traces_consistent(&rs, &gen_polys));
    Ok(rs)
}

fn traces_consistent(rs: &RewriteSystem, gens: &[NCPoly]) -> bool {
    rs.rules
        .iter()
        .all(|r| expand_trace(&r.trace, gens) == r.poly())
}

fn overlap_matches(lead_i: &Word, lead_j: &Word, o: usize) -> bool {
    let li = lead_i.symbols();
    let lj = lead_j.symbols();
    li[li.len() - o..] == lj[..o]
}

/// S-polynomial of the superposition `w = u . c . v` where
/// `lead_i = u . c`, `lead_j = c . v`, `|c| = overlap`:
/// `S = tail_i . v - u . tail_j = u . P_j - P_i . v`.
fn s_polynomial(rules: &[Rule], i: usize, j: usize, overlap: usize) -> (NCPoly, Trace) {
    let lead_i = &rules[i].lead;
    let lead_j = &rules[j].lead;
    let u = lead_i.prefix(lead_i.degree() - overlap);
    let v = lead_j.suffix_from(overlap);
    let left = rules[i].tail.sandwich(&Word::empty(), &v);
    let right = rules[j].tail.sandwich(&u, &Word::empty());
    let s = left.sub_ref(&right);
    let mut trace = sandwich_trace(&rules[j].trace, &u, &Word::empty());
    trace.extend(scale_trace(
        &sandwich_trace(&rules[i].trace, &Word::empty(), &v),
        &-Scalar::one(),
    ));
    compact_trace(&mut trace);
    (s, trace)
}
