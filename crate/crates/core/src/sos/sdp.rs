use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;

use super::linsys::LinearSystem;

#[derive(Debug, Clone)]
pub struct SdpOptions {
    /// Feasibility tolerance on eigenvalues and constraint residuals.
    pub tol: f64,
    pub iter_cap: usize,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            tol: 1e-8,
            iter_cap: 100_000,
        }
    }
}

/// Result of the numerical feasibility search.
#[derive(Debug, Clone)]
pub enum SdpOutcome {
    /// Symmetric `G` with min eigenvalue >= -tol and every constraint
    /// residual <= tol.
    Feasible(DMatrix<f64>),
    /// A dual improving ray `y`: `sum y_k A_k` is PSD up to tol while
    /// `b^T y = -1`, so no PSD matrix satisfies the constraints.
    Infeasible { ray: Vec<f64> },
    /// Iteration cap reached without a verdict.
    Inconclusive,
}

struct Problem {
    n: usize,
    mats: Vec<DMatrix<f64>>,
    b: DVector<f64>,
    gram_pinv: DMatrix<f64>,
}

impl Problem {
    fn build(sys: &LinearSystem) -> Problem {
        let n = sys.dim;
        let m = sys.constraints.len();
        let mats: Vec<DMatrix<f64>> = sys
            .constraints
            .iter()
            .map(|c| {
                let mut a = DMatrix::zeros(n, n);
                for ((i, j), coeff) in &c.coeffs {
                    let v = coeff.to_f64().unwrap_or(0.0);
                    if i == j {
                        a[(*i, *j)] = v;
                    } else {
                        a[(*i, *j)] = v / 2.0;
                        a[(*j, *i)] = v / 2.0;
                    }
                }
                a
            })
            .collect();
        let b = DVector::from_iterator(
            m,
            sys.constraints
                .iter()
                .map(|c| c.rhs.to_f64().unwrap_or(0.0)),
        );
        let mut gram = DMatrix::zeros(m, m);
        for p in 0..m {
            for q in p..m {
                let v = mats[p].dot(&mats[q]);
                gram[(p, q)] = v;
                gram[(q, p)] = v;
            }
        }
        let gram_pinv = gram
            .clone()
            .pseudo_inverse(1e-12)
            .unwrap_or_else(|_| DMatrix::zeros(m, m));
        Problem {
            n,
            mats,
            b,
            gram_pinv,
        }
    }

    fn apply(&self, x: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(self.mats.len(), self.mats.iter().map(|a| a.dot(x)))
    }

    fn combine(&self, y: &DVector<f64>) -> DMatrix<f64> {
        let mut s = DMatrix::zeros(self.n, self.n);
        for (k, a) in self.mats.iter().enumerate() {
            s += a * y[k];
        }
        s
    }

    fn project_affine(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let r = self.apply(x) - &self.b;
        let y = &self.gram_pinv * r;
        x - self.combine(&y)
    }

    fn residual(&self, x: &DMatrix<f64>) -> f64 {
        (self.apply(x) - &self.b).amax()
    }
}

fn min_eigenvalue(x: &DMatrix<f64>) -> f64 {
    let sym = (x + x.transpose()) * 0.5;
    sym.symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

fn project_psd(x: &DMatrix<f64>) -> DMatrix<f64> {
    let sym = (x + x.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let clamped = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|v| v.max(0.0)),
    );
    &eig.eigenvectors * DMatrix::from_diagonal(&clamped) * eig.eigenvectors.transpose()
}

/// Tries to extract a dual improving ray from the gap direction `delta`
/// (PSD-side point minus affine-side point).
fn try_ray(p: &Problem, delta: &DMatrix<f64>, tol: f64) -> Option<Vec<f64>> {
    let inner = DVector::from_iterator(p.mats.len(), p.mats.iter().map(|a| a.dot(delta)));
    let mut y = &p.gram_pinv * inner;
    let scale = p.b.dot(&y);
    if scale >= -1e-300 {
        return None;
    }
    y /= -scale; // now b^T y = -1
    let s = p.combine(&y);
    let norm = s.norm().max(1.0);
    if min_eigenvalue(&s) >= -tol * norm {
        Some(y.iter().cloned().collect())
    } else {
        None
    }
}

/// Alternating projection between the PSD cone and the affine constraint
/// subspace.
///
/// Contract: a `Feasible` matrix is symmetric with min eigenvalue >= -tol and
/// all residuals <= tol; `Infeasible` always carries a checked improving-ray
/// witness; anything else is `Inconclusive`.
pub fn sdp_feasibility(sys: &LinearSystem, opts: &SdpOptions) -> SdpOutcome {
    if sys.constraints.is_empty() {
        return SdpOutcome::Feasible(DMatrix::zeros(sys.dim, sys.dim));
    }
    let p = Problem::build(sys);
    let tol = opts.tol;

    // Minimum-norm affine point; if even the linear system is inconsistent
    // the residual direction is itself an improving ray (with S = 0).
    let y0 = &p.gram_pinv * &p.b;
    let x0 = p.combine(&y0);
    if p.residual(&x0) > tol.max(1e-10) * p.b.amax().max(1.0) {
        // b^T (b - A(x_ls)) = |b - A(x_ls)|^2 > 0 for the min-norm point, and
        // the residual direction combines to the zero matrix.
        let r = p.apply(&x0) - &p.b;
        let scale = p.b.dot(&(-r.clone()));
        if scale > 0.0 {
            let y: Vec<f64> = r.iter().map(|v| v / scale).collect();
            let yv = DVector::from_vec(y.clone());
            let s = p.combine(&yv);
            if min_eigenvalue(&s) >= -tol * s.norm().max(1.0) {
                return SdpOutcome::Infeasible { ray: y };
            }
        }
        return SdpOutcome::Inconclusive;
    }

    let mut x = x0;
    for iter in 0..opts.iter_cap {
        let v = project_psd(&x);
        if p.residual(&v) <= tol {
            return SdpOutcome::Feasible(v);
        }
        let u = p.project_affine(&v);
        if min_eigenvalue(&u) >= -tol {
            return SdpOutcome::Feasible(u);
        }
        if iter % 20 == 19 {
            let delta = project_psd(&u) - &u;
            if delta.norm() > 10.0 * tol {
                if let Some(ray) = try_ray(&p, &delta, tol) {
                    return SdpOutcome::Infeasible { ray };
                }
            }
        }
        x = u;
    }
    // Last chance for a verdict at the cap.
    let delta = project_psd(&x) - &x;
    if let Some(ray) = try_ray(&p, &delta, tol) {
        return SdpOutcome::Infeasible { ray };
    }
    SdpOutcome::Inconclusive
}
