use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{NCPoly, Scalar};
use crate::ideal::{compact_trace, RewriteSystem, Trace};
use crate::ratmat::RatMat;

use super::basis::MonomialBasis;
use super::linsys::LinearSystem;

/// An exact certificate fragment recovered from a numerical Gram matrix.
#[derive(Debug, Clone)]
pub struct RoundedWitness {
    /// The rational Gram matrix (symmetric, PSD by construction).
    pub gram: RatMat,
    /// Weighted squares: `(weight, s)` with `weight > 0`, standing for
    /// `weight * s^* s`. Splitting a positive rational weight `p/q` into
    /// `p*q` copies of `(s/q)^* (s/q)` recovers a plain sum of squares.
    pub sos: Vec<(Scalar, NCPoly)>,
    /// Ideal combination with `1 + sum_j weight_j s_j^* s_j = expand(trace)`
    /// over the original generator set.
    pub combination: Trace,
}

/// Best rational approximation with denominator at most `max_denom`
/// (Stern-Brocot / continued fractions).
pub fn rational_approx(value: f64, max_denom: u64) -> Scalar {
    if !value.is_finite() {
        return Scalar::zero();
    }
    let negative = value < 0.0;
    let x = value.abs();
    // Continued fraction expansion with denominator cap.
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::from(0),
        BigInt::from(1),
        BigInt::from(1),
        BigInt::from(0),
    );
    let mut frac = x;
    let cap = BigInt::from(max_denom.max(1));
    for _ in 0..64 {
        let a = frac.floor();
        if a > 1e18 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > cap {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rem = frac - a;
        if rem.abs() < 1e-15 {
            break;
        }
        frac = 1.0 / rem;
    }
    if q1.is_zero() {
        return Scalar::zero();
    }
    let approx = Scalar::new(p1, q1);
    if negative {
        -approx
    } else {
        approx
    }
}

/// Evaluates constraint `k` at the rational symmetric matrix.
fn constraint_residuals(sys: &LinearSystem, g: &RatMat) -> Vec<Scalar> {
    sys.constraints
        .iter()
        .map(|c| {
            let mut acc = -c.rhs.clone();
            for ((i, j), coeff) in &c.coeffs {
                acc += coeff * g.get(*i, *j);
            }
            acc
        })
        .collect()
}

/// Orthogonal projection of the symmetric rational matrix onto the affine
/// constraint subspace, in the Frobenius geometry. Returns `None` when the
/// rational normal equations are inconsistent (cannot happen for a
/// consistent constraint set).
fn project_affine_exact(sys: &LinearSystem, g: &RatMat) -> Option<RatMat> {
    let m = sys.constraints.len();
    if m == 0 {
        return Some(g.clone());
    }
    let residual = constraint_residuals(sys, g);
    if residual.iter().all(Scalar::is_zero) {
        return Some(g.clone());
    }
    // Gram matrix of the constraint functionals under the Frobenius inner
    // product: diagonal coefficients count once, off-diagonal pairs half.
    let mut gram = RatMat::zeros(m, m);
    let half = Scalar::new(1.into(), 2.into());
    for p in 0..m {
        for q in p..m {
            let mut acc = Scalar::zero();
            for ((i1, j1), c1) in &sys.constraints[p].coeffs {
                for ((i2, j2), c2) in &sys.constraints[q].coeffs {
                    if i1 == i2 && j1 == j2 {
                        let w = if i1 == j1 { Scalar::one() } else { half.clone() };
                        acc += c1 * c2 * w;
                    }
                }
            }
            gram.set(p, q, acc.clone());
            gram.set(q, p, acc);
        }
    }
    let y = gram.solve(&residual)?;
    let mut out = g.clone();
    for (k, c) in sys.constraints.iter().enumerate() {
        if y[k].is_zero() {
            continue;
        }
        for ((i, j), coeff) in &c.coeffs {
            if i == j {
                let v = out.get(*i, *j) - &y[k] * coeff;
                out.set(*i, *j, v);
            } else {
                let v = out.get(*i, *j) - &y[k] * coeff * &half;
                out.set(*i, *j, v.clone());
                out.set(*j, *i, v);
            }
        }
    }
    debug_assert!(constraint_residuals(sys, &out).iter().all(Scalar::is_zero));
    Some(out)
}

/// Exact residual `1 + sum_{i,j} G_ij NF(w_i* w_j)`; zero iff `1 + W* G W`
/// lies in the ideal generated by the system's inputs.
fn exact_residual(sys: &LinearSystem, g: &RatMat) -> NCPoly {
    let n = sys.dim;
    let mut acc = NCPoly::one();
    for i in 0..n {
        for j in 0..n {
            let c = g.get(i, j);
            if c.is_zero() {
                continue;
            }
            acc = acc.add_ref(&sys.nf[i * n + j].scale(c));
        }
    }
    acc
}

/// Rounds a numerically feasible Gram matrix to an exact rational witness.
///
/// Escalates denominator bounds; at each bound tries the plainly rounded
/// matrix first and then its exact projection back onto the affine
/// constraint subspace. Accepts only when the exact residual vanishes and
/// the rational matrix factors as `L D L^T` with nonnegative pivots.
pub fn round_and_verify(
    gfloat: &DMatrix<f64>,
    basis: &MonomialBasis,
    rs: &RewriteSystem,
    sys: &LinearSystem,
    denominator_bound: u64,
) -> Option<RoundedWitness> {
    let n = sys.dim;
    let sym = (gfloat + gfloat.transpose()) * 0.5;
    // Nudge the spectrum nonnegative before rounding; the exactness gate
    // below is the only acceptance criterion.
    let min_eig = sym
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let shift = (-min_eig).max(0.0);
    let shifted = &sym + DMatrix::identity(n, n) * shift;

    let mut denoms: Vec<u64> = vec![1, 2, 4, 12, 60, 420, 2520];
    let mut d = 10_000u64;
    while d < denominator_bound {
        denoms.push(d);
        d = d.saturating_mul(100);
    }
    denoms.push(denominator_bound.max(1));
    denoms.dedup();

    for denom in denoms {
        if denom > denominator_bound {
            continue;
        }
        let mut rounded = RatMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rational_approx(shifted[(i, j)], denom);
                rounded.set(i, j, v.clone());
                rounded.set(j, i, v);
            }
        }
        let mut candidates = vec![rounded.clone()];
        if let Some(projected) = project_affine_exact(sys, &rounded) {
            if projected != rounded {
                candidates.push(projected);
            }
        }
        for cand in candidates {
            let Some((l, dvec)) = cand.ldlt_psd() else {
                continue;
            };
            if !exact_residual(sys, &cand).is_zero() {
                continue;
            }
            return Some(assemble_witness(cand, l, dvec, basis, rs, sys));
        }
    }
    None
}

fn assemble_witness(
    gram: RatMat,
    l: RatMat,
    d: Vec<Scalar>,
    basis: &MonomialBasis,
    rs: &RewriteSystem,
    sys: &LinearSystem,
) -> RoundedWitness {
    let n = sys.dim;
    let mut sos = Vec::new();
    for (k, dk) in d.iter().enumerate() {
        if dk.is_zero() {
            continue;
        }
        let mut s = NCPoly::zero();
        for i in 0..n {
            let lik = l.get(i, k);
            if !lik.is_zero() {
                s = s.add_ref(&NCPoly::from_word(basis.word(i).clone()).scale(lik));
            }
        }
        if !s.is_zero() {
            sos.push((dk.clone(), s));
        }
    }

    // 1 + W* G W = combination: accumulate the reduction traces of every
    // basis pair weighted by the Gram entries.
    let mut combination: Trace = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = gram.get(i, j);
            if c.is_zero() {
                continue;
            }
            let prod = NCPoly::from_word(basis.word(i).star().concat(basis.word(j)));
            let (_, trace) = rs.reduce_with_trace(&prod);
            for mut t in trace {
                t.coeff = &t.coeff * c;
                combination.push(t);
            }
        }
    }
    compact_trace(&mut combination);

    RoundedWitness {
        gram,
        sos,
        combination,
    }
}
