use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{NCPoly, Scalar, Word};
use crate::ideal::RewriteSystem;

use super::basis::MonomialBasis;

/// One affine equation on the symmetric Gram matrix: for the irreducible
/// word `word`, `sum coeff * G[i][j] = rhs` over upper-triangle variables.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub word: Word,
    /// `((i, j), c)` with `i <= j`; off-diagonal coefficients are already
    /// symmetrized (they carry both `(i,j)` and `(j,i)` contributions).
    pub coeffs: Vec<((usize, usize), Scalar)>,
    pub rhs: Scalar,
}

/// The full constraint table together with the normal forms it was built
/// from: `nf[i * n + j] = NF(w_i* . w_j)`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
    pub nf: Vec<NCPoly>,
}

/// For every ordered basis pair computes `NF(w_i* . w_j)` and collects, per
/// irreducible word appearing anywhere, the affine equation forcing
/// `1 + W* G W` to reduce to zero.
pub fn build_linear_system(basis: &MonomialBasis, rs: &RewriteSystem) -> LinearSystem {
    let n = basis.len();
    let mut nf = Vec::with_capacity(n * n);
    for i in 0..n {
        let wi_star = basis.word(i).star();
        for j in 0..n {
            let prod = NCPoly::from_word(wi_star.concat(basis.word(j)));
            nf.push(rs.reduce(&prod));
        }
    }

    let mut table: BTreeMap<Word, BTreeMap<(usize, usize), Scalar>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let key = if i <= j { (i, j) } else { (j, i) };
            for (w, c) in nf[i * n + j].terms() {
                let entry = table
                    .entry(w.clone())
                    .or_default()
                    .entry(key)
                    .or_insert_with(Scalar::zero);
                *entry += c;
            }
        }
    }

    let constraints = table
        .into_iter()
        .map(|(word, coeffs)| {
            let rhs = if word.is_empty() {
                -Scalar::from_integer(1.into())
            } else {
                Scalar::zero()
            };
            Constraint {
                word,
                coeffs: coeffs
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
                rhs,
            }
        })
        .filter(|c| !c.coeffs.is_empty() || !c.rhs.is_zero())
        .collect();

    LinearSystem {
        dim: n,
        constraints,
        nf,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, GenSymbol};
    use crate::ideal::{complete, CompletionOptions, GeneratorSet, RelationKind};
    use crate::sos::enumerate_basis;

    fn q(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    #[test]
    fn x_squared_plus_one_constraints() {
        let mut gens = GeneratorSet::new(true);
        gens.push(
            parse_poly("e1[0,0]*e1[0,0] + 1").unwrap(),
            RelationKind::Invalid,
        );
        let rs = complete(
            &gens,
            vec![GenSymbol::alice(0, 0)],
            &CompletionOptions::with_degree_bound(4),
        )
        .unwrap();
        let basis = enumerate_basis(&rs, 1, 100).unwrap();
        let sys = build_linear_system(&basis, &rs);
        assert_eq!(sys.dim, 2);
        assert_eq!(sys.constraints.len(), 2);
        // Word 1: G00 - G11 = -1 (NF(x x) = -1).
        let c0 = &sys.constraints[0];
        assert!(c0.word.is_empty());
        assert_eq!(c0.coeffs, vec![((0, 0), q(1)), ((1, 1), q(-1))]);
        assert_eq!(c0.rhs, q(-1));
        // Word x: 2 G01 = 0 (NF(1 x) and NF(x 1) both contribute).
        let c1 = &sys.constraints[1];
        assert_eq!(c1.word.to_string(), "e1[0,0]");
        assert_eq!(c1.coeffs, vec![((0, 1), q(2))]);
        assert_eq!(c1.rhs, q(0));
    }

    #[test]
    fn free_algebra_single_word_basis_is_infeasible_shape() {
        let rs = RewriteSystem::empty(vec![GenSymbol::alice(0, 0)], 4);
        let basis = enumerate_basis(&rs, 0, 10).unwrap();
        assert_eq!(basis.len(), 1);
        let sys = build_linear_system(&basis, &rs);
        assert_eq!(sys.constraints.len(), 1);
        assert_eq!(sys.constraints[0].coeffs, vec![((0, 0), q(1))]);
        assert_eq!(sys.constraints[0].rhs, q(-1));
    }
}
