//! The group SU(2,n;F) as (n+2)x(n+2) matrices preserving the form J.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{dagger, max_abs, CMat, FieldTag, Scalar, DEFAULT_TOL, ONE, ZERO};

/// Field and size of the ambient group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupContext {
    pub field: FieldTag,
    pub n: usize,
}

impl GroupContext {
    pub fn new(field: FieldTag, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::pre(format!("n must be at least 3, got {n}")));
        }
        Ok(GroupContext { field, n })
    }

    pub fn real(n: usize) -> Self {
        Self::new(FieldTag::Real, n).expect("n >= 3")
    }

    pub fn complex(n: usize) -> Self {
        Self::new(FieldTag::Complex, n).expect("n >= 3")
    }

    /// Matrix size n + 2.
    pub fn size(&self) -> usize {
        self.n + 2
    }

    /// Real dimension of F.
    pub fn d(&self) -> usize {
        self.field.dim_f()
    }

    /// The anti-diagonal form: ones at (1,n+2), (2,n+1) and their
    /// transposes, identity on the middle block.
    pub fn j(&self) -> CMat {
        let s = self.size();
        let mut j = CMat::zeros(s, s);
        j[(0, s - 1)] = ONE;
        j[(s - 1, 0)] = ONE;
        j[(1, s - 2)] = ONE;
        j[(s - 2, 1)] = ONE;
        for k in 2..s - 2 {
            j[(k, k)] = ONE;
        }
        j
    }

    fn check_shape(&self, g: &CMat) -> Result<()> {
        let s = self.size();
        if g.shape() != (s, s) {
            return Err(Error::Dimension {
                expected: format!("{s}x{s}"),
                got: format!("{}x{}", g.nrows(), g.ncols()),
            });
        }
        Ok(())
    }

    fn check_field(&self, g: &CMat, tol: f64) -> Result<()> {
        if let Some(z) = g.iter().find(|z| !self.field.admits(**z, tol)) {
            return Err(Error::pre(format!("entry {z} is not real")));
        }
        Ok(())
    }
}

/// Max-entry size of `g J g† − J`.
pub fn membership_defect(g: &CMat, ctx: &GroupContext) -> Result<f64> {
    ctx.check_shape(g)?;
    let j = ctx.j();
    Ok(max_abs(&(g * &j * dagger(g) - j)))
}

/// Tolerance used for membership: the absolute tolerance scaled by
/// `max(1, ||g||^2)`, since `g J g†` is computed with that magnitude.
pub fn scaled_tol(g: &CMat, tol: f64) -> f64 {
    let s = max_abs(g);
    tol * s.max(1.0).powi(2)
}

/// A validated element of SU(2,n;F).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupMatrix {
    pub ctx: GroupContext,
    pub entries: CMat,
}

impl GroupMatrix {
    pub fn new(ctx: GroupContext, entries: CMat, tol: f64) -> Result<Self> {
        ctx.check_shape(&entries)?;
        ctx.check_field(&entries, tol)?;
        let defect = membership_defect(&entries, &ctx)?;
        let allowed = scaled_tol(&entries, tol);
        if defect > allowed {
            return Err(Error::pre(format!(
                "g J g† differs from J by {defect:.3e} (allowed {allowed:.3e})"
            )));
        }
        let det = entries.determinant();
        let det_tol = tol * (ctx.size() as f64) * max_abs(&entries).max(1.0).powi(2);
        if (det.norm() - 1.0).abs() > det_tol {
            return Err(Error::pre(format!("|det g| = {:.12} is not 1", det.norm())));
        }
        Ok(GroupMatrix { ctx, entries })
    }

    pub fn identity(ctx: GroupContext) -> Self {
        let s = ctx.size();
        GroupMatrix { ctx, entries: CMat::identity(s, s) }
    }

    /// Inverse through the form: `g^{-1} = J g† J`.
    pub fn inverse(&self) -> Self {
        let j = self.ctx.j();
        GroupMatrix { ctx: self.ctx, entries: &j * dagger(&self.entries) * &j }
    }

    pub fn mul(&self, other: &GroupMatrix) -> GroupMatrix {
        GroupMatrix { ctx: self.ctx, entries: &self.entries * &other.entries }
    }
}

/// Point of the closed positive chamber, `a11 >= a22 >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartanPoint {
    pub a11: f64,
    pub a22: f64,
}

impl CartanPoint {
    pub fn new(a11: f64, a22: f64) -> Result<Self> {
        if !(a11 >= a22 && a22 >= 1.0) {
            return Err(Error::pre(format!("({a11}, {a22}) is not in the positive chamber")));
        }
        Ok(CartanPoint { a11, a22 })
    }

    /// Full diagonal `(a11, a22, 1, ..., 1, 1/a22, 1/a11)`.
    pub fn diagonal(&self, ctx: &GroupContext) -> Vec<f64> {
        let s = ctx.size();
        let mut d = vec![1.0; s];
        d[0] = self.a11;
        d[1] = self.a22;
        d[s - 2] = 1.0 / self.a22;
        d[s - 1] = 1.0 / self.a11;
        d
    }

    pub fn to_group(&self, ctx: GroupContext) -> GroupMatrix {
        let d = self.diagonal(&ctx);
        let s = ctx.size();
        let mut m = CMat::zeros(s, s);
        for (k, v) in d.into_iter().enumerate() {
            m[(k, k)] = Scalar::new(v, 0.0);
        }
        GroupMatrix { ctx, entries: m }
    }

    pub fn log(&self) -> (f64, f64) {
        (self.a11.ln(), self.a22.ln())
    }
}

/// Largest entry modulus.
pub fn sup_norm(g: &CMat) -> f64 {
    max_abs(g)
}

/// Largest 2x2 minor modulus, by brute force over all minors.
pub fn rho_norm(g: &CMat) -> f64 {
    let (r, c) = g.shape();
    let mut best: f64 = 0.0;
    for j in 0..r {
        for m in j + 1..r {
            for k in 0..c {
                for l in k + 1..c {
                    let minor = g[(j, k)] * g[(m, l)] - g[(j, l)] * g[(m, k)];
                    best = best.max(minor.norm());
                }
            }
        }
    }
    best
}

/// Top-right 2x2 minor `g[1,n+1] g[2,n+2] − g[1,n+2] g[2,n+1]`.
pub fn delta(g: &CMat) -> Scalar {
    let s = g.ncols();
    g[(0, s - 2)] * g[(1, s - 1)] - g[(0, s - 1)] * g[(1, s - 2)]
}

fn is_diagonal(g: &CMat) -> bool {
    g.iter()
        .enumerate()
        .all(|(k, z)| k % (g.nrows() + 1) == 0 || *z == ZERO)
}

/// Checks that descending singular values have the shape
/// `(a11, a22, 1, ..., 1, 1/a22, 1/a11)`.
///
/// The SVD resolves each singular value to about `eps * sigma_max` in
/// absolute terms, so the small member of each pair gets a
/// condition-aware allowance on top of the relative tolerance.
fn check_reciprocal_pairs(sv: &[f64], rel: f64) -> Result<()> {
    let s = sv.len();
    let abs_err = 64.0 * f64::EPSILON * sv[0];
    for k in 0..s / 2 {
        let (a, b) = (sv[k], sv[s - 1 - k]);
        let allowed = rel + abs_err * a;
        if (a * b - 1.0).abs() > allowed {
            return Err(Error::Numerical(format!(
                "singular values {a:.6e} and {b:.6e} are not reciprocal"
            )));
        }
    }
    for &m in &sv[2..s - 2] {
        if (m - 1.0).abs() > rel + abs_err {
            return Err(Error::Numerical(format!("middle singular value {m:.6e} differs from 1")));
        }
    }
    Ok(())
}

/// Cartan projection: `a11`, `a22` are the two largest singular values.
pub fn cartan_mu(g: &GroupMatrix, tol: f64) -> Result<CartanPoint> {
    let m = &g.entries;
    let defect = membership_defect(m, &g.ctx)?;
    if defect > scaled_tol(m, tol) {
        return Err(Error::pre(format!("not in the group (defect {defect:.3e})")));
    }
    let s = g.ctx.size();
    let mut sv: Vec<f64> = if is_diagonal(m) {
        (0..s).map(|k| m[(k, k)].norm()).collect()
    } else {
        m.singular_values().iter().copied().collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    check_reciprocal_pairs(&sv, 1e-6)?;
    Ok(CartanPoint { a11: sv[0], a22: sv[1].max(1.0).min(sv[0]) })
}

/// Cartan projection without the membership check, for matrices already
/// known to lie in the group.
pub fn mu_of_matrix(g: &CMat, ctx: GroupContext) -> Result<CartanPoint> {
    cartan_mu(&GroupMatrix { ctx, entries: g.clone() }, f64::INFINITY)
}

/// `(log a11, log a22)` of a group element from its top two singular
/// values, computed through the exterior square so that `a22` does not
/// suffer from cancellation: `a22 = sigma_1(∧²g) / sigma_1(g)`.
pub fn log_mu_via_wedge(g: &CMat, wedge: &CMat) -> (f64, f64) {
    let s1 = g.singular_values().max();
    let s12 = wedge.singular_values().max();
    let l1 = s1.ln();
    (l1, (s12.ln() - l1).max(0.0))
}

/// Distance in log coordinates to the wall `a22 = a11^(k-1)`.
pub fn wall_distance(p: &CartanPoint, k: u32) -> Result<f64> {
    if !(1..=2).contains(&k) {
        return Err(Error::pre(format!("wall index must be 1 or 2, got {k}")));
    }
    Ok((p.a22.ln() - (k as f64 - 1.0) * p.a11.ln()).abs())
}

/// Convenience: `mu` with the default tolerance.
pub fn mu(g: &GroupMatrix) -> Result<CartanPoint> {
    cartan_mu(g, DEFAULT_TOL)
}
