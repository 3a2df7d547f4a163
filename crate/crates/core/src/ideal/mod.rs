//! Ideal machinery: generator-set builders for the game relations, the
//! degree-truncated two-sided Gröbner completion, and normal-form reduction
//! with ideal-combination traces.

mod complete;
mod relations;
mod rewrite;

pub use complete::{complete, CompletionOptions};
pub use relations::{
    build_fg_polys, build_invalid_set, build_mirror_ideal_generators, build_universal_relations,
    Family, FgTables,
};
pub use rewrite::{compact_trace, expand_trace, Membership, RewriteSystem, Rule, Trace, TraceTerm};

use thiserror::Error;

use crate::algebra::NCPoly;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("mirror structure is not regular; the side ideals do not determine perfection")]
    NotRegular,
    #[error("mirror maps do not satisfy the mirror conditions for this game")]
    InvalidMirrorMaps,
    #[error("degree bound {bound} is below the maximum generator degree {max_gen}")]
    DegreeBoundTooSmall { bound: usize, max_gen: usize },
    #[error("rule cap {cap} exceeded during completion")]
    RuleCapExceeded { cap: usize },
}

/// Where a generator polynomial came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Commutation,
    Idempotent,
    Orthogonality,
    Completeness,
    MirrorLeft,
    MirrorRight,
    Invalid,
}

impl RelationKind {
    pub fn label(self) -> &'static str {
        match self {
            RelationKind::Commutation => "commutation",
            RelationKind::Idempotent => "idempotent",
            RelationKind::Orthogonality => "orthogonality",
            RelationKind::Completeness => "completeness",
            RelationKind::MirrorLeft => "mirror-left",
            RelationKind::MirrorRight => "mirror-right",
            RelationKind::Invalid => "invalid",
        }
    }
}

/// A finite list of nonzero generator polynomials with provenance tags.
#[derive(Debug, Clone, Default)]
pub struct GeneratorSet {
    entries: Vec<(NCPoly, RelationKind)>,
    star_closed: bool,
}

impl GeneratorSet {
    pub fn new(star_closed: bool) -> Self {
        GeneratorSet {
            entries: Vec::new(),
            star_closed,
        }
    }

    /// Appends a generator, dropping zeros and exact duplicates.
    pub fn push(&mut self, poly: NCPoly, kind: RelationKind) {
        if poly.is_zero() {
            return;
        }
        if self.entries.iter().any(|(p, _)| p == &poly) {
            return;
        }
        self.entries.push((poly, kind));
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &NCPoly> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn entries(&self) -> &[(NCPoly, RelationKind)] {
        &self.entries
    }

    pub fn kind(&self, idx: usize) -> RelationKind {
        self.entries[idx].1
    }

    pub fn poly(&self, idx: usize) -> &NCPoly {
        &self.entries[idx].0
    }

    pub fn is_star_closed(&self) -> bool {
        self.star_closed
    }

    /// Count of generators per provenance tag, in tag order.
    pub fn counts_by_kind(&self) -> Vec<(RelationKind, usize)> {
        let kinds = [
            RelationKind::Commutation,
            RelationKind::Idempotent,
            RelationKind::Orthogonality,
            RelationKind::Completeness,
            RelationKind::MirrorLeft,
            RelationKind::MirrorRight,
            RelationKind::Invalid,
        ];
        kinds
            .into_iter()
            .map(|k| (k, self.entries.iter().filter(|(_, k2)| *k2 == k).count()))
            .filter(|(_, n)| *n > 0)
            .collect()
    }

    /// Checks the star-closure claim: every generator's involution is a
    /// nonzero scalar multiple of some generator in the set.
    pub fn verify_star_closed(&self) -> bool {
        self.entries.iter().all(|(p, _)| {
            let ps = p.star();
            self.entries.iter().any(|(q, _)| {
                if q.num_terms() != ps.num_terms() {
                    return false;
                }
                let (Some((wq, cq)), Some((wp, cp))) = (q.leading_term(), ps.leading_term())
                else {
                    return false;
                };
                if wq != wp {
                    return false;
                }
                let ratio = cp / cq;
                q.scale(&ratio) == ps
            })
        })
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(|(p, _)| p.degree())
            .max()
            .unwrap_or(0)
    }
}
