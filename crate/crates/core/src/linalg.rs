//! Small dense linear-algebra helpers on top of nalgebra.
//!
//! Subspaces of a real vector space are represented by matrices whose
//! columns span them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::scalars::{CMat, FieldTag};

pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;

/// Singular values of a real matrix, padded with zeros so that the result
/// has one entry per column. Sorted descending.
fn padded_svd(a: &RMat) -> (RMat, Vec<f64>) {
    let (m, n) = a.shape();
    let sq = if m < n {
        let mut p = RMat::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sv: Vec<f64> = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let rows: Vec<_> = idx.iter().map(|&i| v_t.row(i).into_owned()).collect();
    (RMat::from_rows(&rows), sv)
}

/// Numerical rank with a cutoff relative to `max(1, sigma_max)`.
pub fn rank(a: &RMat, tol: f64) -> usize {
    if a.ncols() == 0 || a.nrows() == 0 {
        return 0;
    }
    let sv = a.singular_values();
    let cut = tol * sv.max().max(1.0);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis (as columns) of the column span of `a`.
pub fn orth(a: &RMat, tol: f64) -> RMat {
    let m = a.nrows();
    if a.ncols() == 0 {
        return RMat::zeros(m, 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let cut = tol * svd.singular_values.max().max(1.0);
    let cols: Vec<_> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > cut)
        .map(|i| u.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        RMat::zeros(m, 0)
    } else {
        RMat::from_columns(&cols)
    }
}

/// Orthonormal basis (as columns) of the kernel of `a`.
pub fn null_space(a: &RMat, tol: f64) -> RMat {
    let n = a.ncols();
    if n == 0 {
        return RMat::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return RMat::identity(n, n);
    }
    let (v_t, sv) = padded_svd(a);
    let cut = tol * sv.first().copied().unwrap_or(0.0).max(1.0);
    let cols: Vec<_> = (0..n)
        .filter(|&i| sv[i] <= cut)
        .map(|i| v_t.row(i).transpose())
        .collect();
    if cols.is_empty() {
        RMat::zeros(n, 0)
    } else {
        RMat::from_columns(&cols)
    }
}

/// Basis of `col(a) ∩ col(b)`.
pub fn intersect(a: &RMat, b: &RMat, tol: f64) -> RMat {
    let m = a.nrows();
    if a.ncols() == 0 || b.ncols() == 0 {
        return RMat::zeros(m, 0);
    }
    let qa = orth(a, tol);
    let qb = orth(b, tol);
    let mut stacked = RMat::zeros(m, qa.ncols() + qb.ncols());
    stacked.view_mut((0, 0), (m, qa.ncols())).copy_from(&qa);
    stacked
        .view_mut((0, qa.ncols()), (m, qb.ncols()))
        .copy_from(&(-&qb));
    let ker = null_space(&stacked, tol);
    let coeffs = ker.rows(0, qa.ncols()).into_owned();
    orth(&(qa * coeffs), tol)
}

/// Columns of the identity selecting the given coordinates.
pub fn coordinate_subspace(dim: usize, coords: &[usize]) -> RMat {
    let mut m = RMat::zeros(dim, coords.len());
    for (j, &c) in coords.iter().enumerate() {
        m[(c, j)] = 1.0;
    }
    m
}

/// Residual of `v` after orthogonal projection onto the span of the
/// orthonormal columns `q`.
pub fn residual(v: &RVec, q: &RMat) -> f64 {
    if q.ncols() == 0 {
        return v.norm();
    }
    (v - q * (q.transpose() * v)).norm()
}

pub fn hstack(a: &RMat, b: &RMat) -> RMat {
    let m = a.nrows().max(b.nrows());
    let mut out = RMat::zeros(m, a.ncols() + b.ncols());
    out.view_mut((0, 0), a.shape()).copy_from(a);
    out.view_mut((0, a.ncols()), b.shape()).copy_from(b);
    out
}

/// True iff the column spans coincide.
pub fn same_span(a: &RMat, b: &RMat, tol: f64) -> bool {
    let ra = rank(a, tol);
    ra == rank(b, tol) && rank(&hstack(a, b), tol) == ra
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(a: &RMat) -> Vec<f64> {
    if a.nrows() == 0 {
        return vec![];
    }
    let sym = (a + a.transpose()) * 0.5;
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Realification of multiplication by `lambda` on row vectors of F^k laid
/// out as (re, im) pairs: `r(lambda z) = r(z) * M`.
pub fn realified_scalar(k: usize, field: FieldTag, lambda: Complex64) -> RMat {
    match field {
        FieldTag::Real => RMat::identity(k, k) * lambda.re,
        FieldTag::Complex => {
            let mut m = RMat::zeros(2 * k, 2 * k);
            for j in 0..k {
                m[(2 * j, 2 * j)] = lambda.re;
                m[(2 * j + 1, 2 * j + 1)] = lambda.re;
                m[(2 * j, 2 * j + 1)] = lambda.im;
                m[(2 * j + 1, 2 * j)] = -lambda.im;
            }
            m
        }
    }
}

/// Smallest of the `min(rows, cols)` singular values.
pub fn sigma_min(a: &RMat) -> f64 {
    a.singular_values().iter().copied().fold(f64::INFINITY, f64::min)
}

/// Outcome of the certified search for `x f = lambda x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSearch {
    /// No eigenpair exists: the certified lower bound on `sigma_min`
    /// stayed above the threshold.
    pub eigenfree: bool,
    /// Smallest `sigma_min` seen and where.
    pub best: f64,
    pub best_lambda: Complex64,
    pub evaluations: usize,
}

/// Decides whether an R-linear map `f` defined on a real subspace `X` of
/// F^k has a vector `x != 0` with `x f = lambda x` for some `lambda` in F.
///
/// `e` holds an orthonormal basis of `X` as rows (realified), `y` the rows
/// `e_i f`. The function `s(lambda) = sigma_min(y - e M_lambda)` is
/// 1-Lipschitz in `lambda` and vanishes exactly at eigenvalues, all of which
/// satisfy `|lambda| <= ||y||_2`. A branch-and-bound over that disc either
/// finds a point with `s <= threshold` or certifies `s > threshold`
/// everywhere.
pub fn eigen_search(e: &RMat, y: &RMat, field: FieldTag, threshold: f64) -> EigenSearch {
    let rows = e.nrows();
    if rows == 0 {
        return EigenSearch {
            eigenfree: true,
            best: f64::INFINITY,
            best_lambda: Complex64::new(0.0, 0.0),
            evaluations: 0,
        };
    }
    let k = e.ncols() / field.dim_f();
    let s = |lambda: Complex64| -> f64 {
        let m = realified_scalar(k, field, lambda);
        let d = y - e * m;
        // rows <= cols: the rows-th singular value detects a left null vector.
        let sv = d.singular_values();
        let mut v: Vec<f64> = sv.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        if d.nrows() <= d.ncols() {
            v[0]
        } else {
            0.0
        }
    };
    let radius = y.singular_values().max() * (1.0 + 1e-12) + threshold;
    let mut evaluations = 0usize;
    let mut best = f64::INFINITY;
    let mut best_lambda = Complex64::new(0.0, 0.0);
    let max_evals = 400_000;
    let min_half = 1e-11;

    // Boxes are (center, half width); over R the search runs on the real line.
    let mut stack: Vec<(Complex64, f64)> = vec![(Complex64::new(0.0, 0.0), radius.max(1e-6))];
    while let Some((c, h)) = stack.pop() {
        let val = s(c);
        evaluations += 1;
        if val < best {
            best = val;
            best_lambda = c;
        }
        if val <= threshold {
            return EigenSearch { eigenfree: false, best, best_lambda, evaluations };
        }
        let reach = match field {
            FieldTag::Real => h,
            FieldTag::Complex => h * std::f64::consts::SQRT_2,
        };
        if val - reach > threshold {
            continue;
        }
        if h < min_half || evaluations >= max_evals {
            // Cannot separate from the threshold at this resolution; treat
            // as a near-eigenvalue.
            return EigenSearch { eigenfree: false, best, best_lambda, evaluations };
        }
        let q = h / 2.0;
        match field {
            FieldTag::Real => {
                stack.push((c + Complex64::new(q, 0.0), q));
                stack.push((c - Complex64::new(q, 0.0), q));
            }
            FieldTag::Complex => {
                for (dx, dy) in [(q, q), (q, -q), (-q, q), (-q, -q)] {
                    stack.push((c + Complex64::new(dx, dy), q));
                }
            }
        }
    }
    EigenSearch { eigenfree: true, best, best_lambda, evaluations }
}

/// Matrix of the second exterior power of `g` in the basis
/// `e_i ∧ e_j` (i < j, lexicographic). Its entries are the 2x2 minors.
pub fn wedge2(g: &CMat) -> CMat {
    let n = g.nrows();
    let pairs = index_pairs(n);
    CMat::from_fn(pairs.len(), pairs.len(), |r, c| {
        let (j, m) = pairs[r];
        let (k, l) = pairs[c];
        g[(j, k)] * g[(m, l)] - g[(j, l)] * g[(m, k)]
    })
}

/// Derivative of [`wedge2`] at the identity in direction `u`.
pub fn wedge2_derivation(u: &CMat) -> CMat {
    let n = u.nrows();
    let pairs = index_pairs(n);
    let id = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    CMat::from_fn(pairs.len(), pairs.len(), |r, c| {
        let (j, m) = pairs[r];
        let (k, l) = pairs[c];
        u[(j, k)] * id(m, l) + u[(m, l)] * id(j, k) - u[(j, l)] * id(m, k) - u[(m, k)] * id(j, l)
    })
}

pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 0..n {
        for m in j + 1..n {
            v.push((j, m));
        }
    }
    v
}

/// Exponential of a nilpotent matrix by its terminating power series.
/// `order` is an upper bound for the nilpotency index.
pub fn exp_nilpotent(u: &CMat, order: usize) -> CMat {
    let n = u.nrows();
    let mut out = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..order {
        term = &term * u / Complex64::new(k as f64, 0.0);
        out += &term;
    }
    out
}

/// Powers `u^k / k!` for `k < order`, so that `exp(t u) = sum t^k P_k`.
pub fn nilpotent_series_terms(u: &CMat, order: usize) -> Vec<CMat> {
    let n = u.nrows();
    let mut terms = vec![CMat::identity(n, n)];
    for k in 1..order {
        let next = terms[k - 1].clone() * u / Complex64::new(k as f64, 0.0);
        terms.push(next);
    }
    terms
}

/// Logarithm of a unipotent matrix `Id + m` by its terminating series.
pub fn log_unipotent(g: &CMat, order: usize) -> CMat {
    let n = g.nrows();
    let m = g - CMat::identity(n, n);
    let mut out = CMat::zeros(n, n);
    let mut p = CMat::identity(n, n);
    for k in 1..order {
        p = &p * &m;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        out += &p * Complex64::new(sign / k as f64, 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_wide_matrix() {
        let a = RMat::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&a, 1e-9);
        assert_eq!(k.ncols(), 2);
        assert!((a * k).norm() < 1e-12);
    }

    #[test]
    fn intersection_of_planes() {
        let a = coordinate_subspace(3, &[0, 1]);
        let b = coordinate_subspace(3, &[1, 2]);
        let i = intersect(&a, &b, 1e-9);
        assert_eq!(i.ncols(), 1);
        assert!((i[(1, 0)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn same_span_detects_reordering() {
        let a = RMat::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let b = RMat::from_row_slice(3, 2, &[1.0, 1.0, 1.0, -1.0, 0.0, 0.0]);
        assert!(same_span(&a, &b, 1e-9));
        assert!(!same_span(&a, &coordinate_subspace(3, &[0, 2]), 1e-9));
    }

    #[test]
    fn eigen_search_rotation_is_eigenfree_over_r() {
        let e = RMat::identity(2, 2);
        let rot = RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(eigen_search(&e, &rot, FieldTag::Real, 1e-8).eigenfree);
        let diag = RMat::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -1.0]);
        assert!(!eigen_search(&e, &diag, FieldTag::Real, 1e-8).eigenfree);
    }

    #[test]
    fn eigen_search_complex_linear_map_has_eigenvalue() {
        // Any C-linear map on C^1 is multiplication by a scalar.
        let e = RMat::identity(2, 2);
        let y = realified_scalar(1, FieldTag::Complex, Complex64::new(0.3, -0.8));
        let r = eigen_search(&e, &y, FieldTag::Complex, 1e-8);
        assert!(!r.eigenfree);
    }

    #[test]
    fn wedge2_is_multiplicative() {
        let a = CMat::from_fn(4, 4, |i, j| Complex64::new((i + 2 * j) as f64 * 0.1, (i as f64) - 0.3 * j as f64));
        let b = CMat::from_fn(4, 4, |i, j| Complex64::new(1.0 / (1.0 + i as f64 + j as f64), 0.2));
        let lhs = wedge2(&(&a * &b));
        let rhs = wedge2(&a) * wedge2(&b);
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn wedge2_derivation_exponentiates_to_wedge2() {
        let mut u = CMat::zeros(4, 4);
        u[(0, 1)] = Complex64::new(0.5, 0.1);
        u[(0, 3)] = Complex64::new(-0.2, 0.0);
        u[(1, 2)] = Complex64::new(0.7, -0.4);
        u[(2, 3)] = Complex64::new(0.3, 0.0);
        let lhs = wedge2(&exp_nilpotent(&u, 4));
        let rhs = exp_nilpotent(&wedge2_derivation(&u), 8);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn log_inverts_exp_on_nilpotents() {
        let mut u = CMat::zeros(3, 3);
        u[(0, 1)] = Complex64::new(1.5, 0.0);
        u[(1, 2)] = Complex64::new(-0.5, 2.0);
        u[(0, 2)] = Complex64::new(0.25, 0.0);
        let back = log_unipotent(&exp_nilpotent(&u, 3), 3);
        assert!((back - u).norm() < 1e-12);
    }
}
