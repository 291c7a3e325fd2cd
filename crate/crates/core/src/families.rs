//! Subalgebras of a + n: generic specs with closure and compatibility
//! checks, and constructors for the named families.

use serde::Serialize;

use crate::ancoords::{basis_matrix, elements_from_columns, ANElement, Layout, RootLabel};
use crate::error::{Error, Result};
use crate::linalg::{self, RMat, RVec};
use crate::scalars::{herm, FieldTag, Scalar, DEFAULT_TOL, I, ONE, ZERO};
use crate::sunf::GroupContext;

/// Threshold on `sigma_min` below which a map is treated as having an
/// eigenvector.
pub const EIGENFREE_THRESHOLD: f64 = 1e-8;

/// A finite real basis of a subspace of a + n.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraSpec {
    pub ctx: GroupContext,
    pub basis: Vec<ANElement>,
    pub name: Option<String>,
}

impl SubalgebraSpec {
    /// Builds a spec after checking that the basis is independent and its
    /// entries live in the right field.
    pub fn new(ctx: GroupContext, basis: Vec<ANElement>, name: Option<String>) -> Result<Self> {
        for b in &basis {
            if b.ctx != ctx {
                return Err(Error::pre("basis element has a different field or n"));
            }
            b.validate(DEFAULT_TOL)?;
        }
        let spec = SubalgebraSpec { ctx, basis, name };
        let r = linalg::rank(&spec.matrix(), DEFAULT_TOL);
        if r != spec.basis.len() {
            return Err(Error::pre(format!(
                "basis of {} elements spans only {r} dimensions",
                spec.basis.len()
            )));
        }
        Ok(spec)
    }

    /// Spec spanned by arbitrary elements; a dependent list is reduced to
    /// an orthonormal basis of its span.
    pub fn spanned_by(ctx: GroupContext, elems: &[ANElement], name: Option<String>) -> Self {
        let q = linalg::orth(&basis_matrix(&ctx, elems), DEFAULT_TOL);
        SubalgebraSpec { ctx, basis: elements_from_columns(ctx, &q), name }
    }

    fn from_columns(ctx: GroupContext, m: &RMat, name: &str) -> Self {
        SubalgebraSpec { ctx, basis: elements_from_columns(ctx, m), name: Some(name.to_string()) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Columns are the flattened basis elements.
    pub fn matrix(&self) -> RMat {
        basis_matrix(&self.ctx, &self.basis)
    }

    /// Orthonormal basis of the span, as columns.
    pub fn orth(&self) -> RMat {
        linalg::orth(&self.matrix(), DEFAULT_TOL)
    }

    pub fn contains(&self, u: &ANElement, tol: f64) -> bool {
        linalg::residual(&u.to_real(), &self.orth()) <= tol * u.norm().max(1.0)
    }

    pub fn same_span(&self, other: &SubalgebraSpec) -> bool {
        self.ctx == other.ctx && linalg::same_span(&self.matrix(), &other.matrix(), 1e-8)
    }

    /// Intersection with the span of the given real coordinates.
    pub fn intersect_coords(&self, coords: &[usize], name: &str) -> SubalgebraSpec {
        let dim = ANElement::real_dim(&self.ctx);
        let sub = linalg::coordinate_subspace(dim, coords);
        Self::from_columns(self.ctx, &linalg::intersect(&self.orth(), &sub, DEFAULT_TOL), name)
    }

    /// Image of the span under projection onto the given coordinates,
    /// returned as a matrix whose columns live in the coordinate space.
    pub fn project_coords(&self, coords: &[usize]) -> RMat {
        let m = self.orth();
        let rows: Vec<_> = coords.iter().map(|&c| m.row(c).into_owned()).collect();
        if rows.is_empty() {
            return RMat::zeros(0, m.ncols());
        }
        linalg::orth(&RMat::from_rows(&rows), DEFAULT_TOL)
    }
}

/// Largest residual of a bracket of basis elements after projection onto
/// the span. Zero exactly when the span is a Lie subalgebra.
pub fn lie_closure_defect(s: &SubalgebraSpec) -> Result<f64> {
    let m = s.matrix();
    if linalg::rank(&m, DEFAULT_TOL) != s.dim() {
        return Err(Error::pre("basis is linearly dependent"));
    }
    let q = linalg::orth(&m, DEFAULT_TOL);
    let mut worst: f64 = 0.0;
    for i in 0..s.dim() {
        for j in i + 1..s.dim() {
            let b = s.basis[i].bracket(&s.basis[j]);
            worst = worst.max(linalg::residual(&b.to_real(), &q));
        }
    }
    Ok(worst)
}

/// Real basis of F^k as row vectors, in the (re, im) flattening order.
fn real_basis_vectors(field: FieldTag, k: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for j in 0..k {
        let units: &[Scalar] = if field.is_complex() { &[ONE, I] } else { &[ONE] };
        for &u in units {
            let mut v = vec![ZERO; k];
            v[j] = u;
            out.push(v);
        }
    }
    out
}

fn realify(v: &[Scalar], field: FieldTag) -> RVec {
    match field {
        FieldTag::Real => RVec::from_iterator(v.len(), v.iter().map(|z| z.re)),
        FieldTag::Complex => RVec::from_iterator(2 * v.len(), v.iter().flat_map(|z| [z.re, z.im])),
    }
}

fn complexify(r: &[f64], field: FieldTag) -> Vec<Scalar> {
    match field {
        FieldTag::Real => r.iter().map(|&a| Scalar::new(a, 0.0)).collect(),
        FieldTag::Complex => r.chunks(2).map(|p| Scalar::new(p[0], p[1])).collect(),
    }
}

/// An R-linear map `F^(n-2) -> F^(n-2)` acting on row vectors, `x -> xB`,
/// stored as its realification.
#[derive(Debug, Clone, PartialEq)]
pub struct BMap {
    pub ctx: GroupContext,
    pub entries: RMat,
}

impl BMap {
    pub fn new(ctx: GroupContext, entries: RMat) -> Result<Self> {
        let k = ctx.d() * (ctx.n - 2);
        if entries.shape() != (k, k) {
            return Err(Error::Dimension {
                expected: format!("{k}x{k}"),
                got: format!("{}x{}", entries.nrows(), entries.ncols()),
            });
        }
        Ok(BMap { ctx, entries })
    }

    /// Builds the realification of an arbitrary R-linear function.
    pub fn from_fn(ctx: GroupContext, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Self {
        let rows: Vec<_> = real_basis_vectors(ctx.field, ctx.n - 2)
            .iter()
            .map(|e| realify(&f(e), ctx.field).transpose())
            .collect();
        BMap { ctx, entries: RMat::from_rows(&rows) }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let r = realify(x, self.ctx.field).transpose() * &self.entries;
        complexify(r.as_slice(), self.ctx.field)
    }

    /// Rotation by 90 degrees on each coordinate pair of the real
    /// flattening. Needs `d (n-2)` even.
    pub fn rotation90(ctx: GroupContext) -> Result<Self> {
        let k = ctx.d() * (ctx.n - 2);
        if k % 2 != 0 {
            return Err(Error::pre("rotation needs an even real dimension"));
        }
        let mut m = RMat::zeros(k, k);
        for p in 0..k / 2 {
            m[(2 * p, 2 * p + 1)] = 1.0;
            m[(2 * p + 1, 2 * p)] = -1.0;
        }
        Ok(BMap { ctx, entries: m })
    }

    /// The map `x -> (-x̄2, x̄1, -x̄4, x̄3, ...)` whose family member equals
    /// the Sp(1, n/2) slice. Needs n even.
    pub fn b0(ctx: GroupContext) -> Result<Self> {
        if ctx.n % 2 != 0 {
            return Err(Error::pre("B0 needs n even"));
        }
        Ok(BMap::from_fn(ctx, |x| {
            let mut y = vec![ZERO; x.len()];
            for p in 0..x.len() / 2 {
                y[2 * p] = -x[2 * p + 1].conj();
                y[2 * p + 1] = x[2 * p].conj();
            }
            y
        }))
    }

    /// `x -> conj(x) B'` for a real matrix `B'`.
    pub fn antilinear(ctx: GroupContext, b: &RMat) -> Result<Self> {
        let k = ctx.n - 2;
        if b.shape() != (k, k) {
            return Err(Error::Dimension { expected: format!("{k}x{k}"), got: format!("{:?}", b.shape()) });
        }
        Ok(BMap::from_fn(ctx, |x| {
            (0..k).map(|j| (0..k).map(|i| x[i].conj() * b[(i, j)]).sum()).collect()
        }))
    }

    pub fn scalar(ctx: GroupContext, c: f64) -> Self {
        let k = ctx.d() * (ctx.n - 2);
        BMap { ctx, entries: RMat::identity(k, k) * c }
    }
}

/// `Im((vB)(wB)†) = −Im(v w†)` on a real basis.
pub fn check_b_symplectic(b: &BMap, tol: f64) -> bool {
    symplectic_defect(b) <= tol
}

/// Largest violation of the symplectic identity over basis pairs.
pub fn symplectic_defect(b: &BMap) -> f64 {
    let basis = real_basis_vectors(b.ctx.field, b.ctx.n - 2);
    let images: Vec<_> = basis.iter().map(|v| b.apply(v)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let lhs = herm(&images[i], &images[j]).im;
            let rhs = -herm(&basis[i], &basis[j]).im;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Certified search for `xB = lambda x`.
pub fn b_eigen_search(b: &BMap) -> linalg::EigenSearch {
    let k = b.entries.nrows();
    linalg::eigen_search(&RMat::identity(k, k), &b.entries, b.ctx.field, EIGENFREE_THRESHOLD)
}

/// True iff `xB` is never in `F x` for nonzero `x`.
pub fn check_b_eigenfree(b: &BMap) -> bool {
    b_eigen_search(b).eigenfree
}

fn t_elem(ctx: GroupContext, t1: f64, t2: f64) -> ANElement {
    let mut e = ANElement::zero(ctx);
    e.t1 = t1;
    e.t2 = t2;
    e
}

fn units(field: FieldTag) -> Vec<Scalar> {
    if field.is_complex() {
        vec![ONE, I]
    } else {
        vec![ONE]
    }
}

/// The full algebra a + n.
pub fn full_an(ctx: GroupContext) -> SubalgebraSpec {
    SubalgebraSpec { ctx, basis: ANElement::coordinate_basis(ctx), name: Some("a+n".into()) }
}

/// The split Cartan subalgebra a.
pub fn cartan_a(ctx: GroupContext) -> SubalgebraSpec {
    SubalgebraSpec { ctx, basis: vec![t_elem(ctx, 1.0, 0.0), t_elem(ctx, 0.0, 1.0)], name: Some("a".into()) }
}

/// SU(1,n;F) ∩ (A+N): `t2 = 0, y = 0, yy = 0, eta = phi`.
pub fn su1n_an(ctx: GroupContext) -> SubalgebraSpec {
    let mut basis = vec![t_elem(ctx, 1.0, 0.0)];
    for u in units(ctx.field) {
        let mut e = ANElement::zero(ctx);
        e.phi = u;
        e.eta = u;
        basis.push(e);
    }
    for v in real_basis_vectors(ctx.field, ctx.n - 2) {
        let mut e = ANElement::zero(ctx);
        e.x = v;
        basis.push(e);
    }
    if ctx.field.is_complex() {
        let mut e = ANElement::zero(ctx);
        e.xx = I;
        basis.push(e);
    }
    SubalgebraSpec { ctx, basis, name: Some("su1n".into()) }
}

/// Sp(1,m;F) ∩ (A+N) for `2m <= n`: `t1 = t2`, `phi = 0`, `yy = -xx`,
/// x supported on the first `2m - 2` slots and paired into y by
/// `y_{2k-1} = -conj(x_{2k})`, `y_{2k} = conj(x_{2k-1})`.
pub fn sp1m_an(ctx: GroupContext, m: usize) -> Result<SubalgebraSpec> {
    if m < 1 || 2 * m > ctx.n {
        return Err(Error::pre(format!("need 1 <= m and 2m <= n, got m = {m}, n = {}", ctx.n)));
    }
    let k = ctx.n - 2;
    let mut basis = vec![t_elem(ctx, 1.0, 1.0)];
    for v in real_basis_vectors(ctx.field, k) {
        let slot = v.iter().position(|z| *z != ZERO).expect("unit vector");
        if slot >= 2 * m - 2 {
            continue;
        }
        let mut e = ANElement::zero(ctx);
        for p in 0..(m - 1) {
            e.y[2 * p] = -v[2 * p + 1].conj();
            e.y[2 * p + 1] = v[2 * p].conj();
        }
        e.x = v;
        basis.push(e);
    }
    basis.extend(centre_slice(ctx));
    Ok(SubalgebraSpec { ctx, basis, name: Some(format!("sp1m(m={m})")) })
}

/// Basis of `{(eta, xx, yy = -xx)}`.
fn centre_slice(ctx: GroupContext) -> Vec<ANElement> {
    let mut out = Vec::new();
    for u in units(ctx.field) {
        let mut e = ANElement::zero(ctx);
        e.eta = u;
        out.push(e);
    }
    if ctx.field.is_complex() {
        let mut e = ANElement::zero(ctx);
        e.xx = I;
        e.yy = -I;
        out.push(e);
    }
    out
}

/// Span of `{(t, 0, x, xB, eta, xx, -xx)}` without checking that it is
/// closed.
pub fn hb_span(b: &BMap) -> SubalgebraSpec {
    let ctx = b.ctx;
    let mut basis = vec![t_elem(ctx, 1.0, 1.0)];
    for v in real_basis_vectors(ctx.field, ctx.n - 2) {
        let mut e = ANElement::zero(ctx);
        e.y = b.apply(&v);
        e.x = v;
        basis.push(e);
    }
    basis.extend(centre_slice(ctx));
    SubalgebraSpec { ctx, basis, name: Some("hb".into()) }
}

/// The algebra of `H_B`. The symplectic identity is exactly what makes the
/// span closed, so it is required.
pub fn hb_subalgebra(b: &BMap) -> Result<SubalgebraSpec> {
    let defect = symplectic_defect(b);
    if defect > 1e-9 * b.entries.amax().max(1.0).powi(2) {
        return Err(Error::pre(format!(
            "B violates Im((vB)(wB)†) = −Im(vw†) by {defect:.3e}; the span would not be closed"
        )));
    }
    Ok(hb_span(b))
}

/// The algebra of `H_c`: `t2 = 0, y = 0, yy = 0, eta = Re phi + c Im phi`.
pub fn hc_subalgebra(ctx: GroupContext, c: f64) -> SubalgebraSpec {
    let mut basis = vec![t_elem(ctx, 1.0, 0.0)];
    for u in units(ctx.field) {
        let mut e = ANElement::zero(ctx);
        e.phi = u;
        e.eta = Scalar::new(u.re, c * u.im);
        basis.push(e);
    }
    for v in real_basis_vectors(ctx.field, ctx.n - 2) {
        let mut e = ANElement::zero(ctx);
        e.x = v;
        basis.push(e);
    }
    if ctx.field.is_complex() {
        let mut e = ANElement::zero(ctx);
        e.xx = I;
        basis.push(e);
    }
    SubalgebraSpec { ctx, basis, name: Some(format!("hc(c={c})")) }
}

/// `span(S) ∩ D` where `D` is the sum of the root spaces of alpha+2beta,
/// 2alpha+2beta and 2beta.
pub fn dn_part(s: &SubalgebraSpec) -> SubalgebraSpec {
    let l = Layout::new(&s.ctx);
    let coords = l.coords_of(&[RootLabel::AlphaTwoBeta, RootLabel::TwoAlphaTwoBeta, RootLabel::TwoBeta]);
    s.intersect_coords(&coords, "D part")
}

/// `{u ∈ span(S) ∩ n : phi_u = 0}`.
pub fn uphi0_part(s: &SubalgebraSpec) -> SubalgebraSpec {
    let l = Layout::new(&s.ctx);
    let coords = l.coords_of(&[
        RootLabel::Beta,
        RootLabel::AlphaBeta,
        RootLabel::AlphaTwoBeta,
        RootLabel::TwoBeta,
        RootLabel::TwoAlphaTwoBeta,
    ]);
    s.intersect_coords(&coords, "U phi=0 part")
}

/// `span(S) ∩ n`.
pub fn u_part(s: &SubalgebraSpec) -> SubalgebraSpec {
    let l = Layout::new(&s.ctx);
    let coords: Vec<usize> = (2..l.dim).collect();
    s.intersect_coords(&coords, "U")
}

/// `span(S) ∩ a`.
pub fn a_part(s: &SubalgebraSpec) -> SubalgebraSpec {
    s.intersect_coords(&[0, 1], "S ∩ a")
}

/// Projection of `span(S)` onto a, as unit `(t1, t2)` directions.
pub fn torus_projection(s: &SubalgebraSpec) -> Vec<(f64, f64)> {
    let p = s.project_coords(&[0, 1]);
    (0..p.ncols()).map(|j| (p[(0, j)], p[(1, j)])).collect()
}

/// Names the torus projection when it is one of the standard ones.
pub fn torus_kind(dirs: &[(f64, f64)]) -> &'static str {
    match dirs {
        [] => "0",
        [(a, b)] if (a - b).abs() < 1e-9 => "ker alpha",
        [(_, b)] if b.abs() < 1e-9 => "ker beta",
        [_] => "other line",
        _ => "a",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    /// `S = (S ∩ a) ⋉ (S ∩ n)`.
    pub semidirect: bool,
    pub torus: Vec<(f64, f64)>,
    pub torus_kind: String,
    pub dim: usize,
    pub u_dim: usize,
    /// Roots whose restriction to the torus projection vanishes.
    pub centralizer_roots: Vec<RootLabel>,
    /// Residual of each basis element's nilpotent part outside
    /// `U + c_n(T)`.
    pub residuals: Vec<f64>,
    pub violations: Vec<String>,
}

/// Checks `H ⊂ T U C_N(T)` with `T` the projection of `S` to a and
/// `U = S ∩ n`.
pub fn is_compatible(s: &SubalgebraSpec) -> CompatibilityReport {
    let ctx = s.ctx;
    let l = Layout::new(&ctx);
    let torus = torus_projection(s);
    let u = u_part(s);
    let roots = l.roots();
    let centralizer_roots: Vec<RootLabel> = RootLabel::ALL
        .into_iter()
        .filter(|r| *r != RootLabel::Zero && r.exists_over(ctx.field))
        .filter(|r| torus.iter().all(|&(a, b)| r.weight(a, b).abs() < 1e-9))
        .collect();
    let c_coords: Vec<usize> = (0..l.dim).filter(|&i| centralizer_roots.contains(&roots[i])).collect();
    let allowed = linalg::orth(
        &linalg::hstack(&u.matrix(), &linalg::coordinate_subspace(l.dim, &c_coords)),
        DEFAULT_TOL,
    );
    let mut residuals = Vec::new();
    let mut violations = Vec::new();
    for (i, b) in s.basis.iter().enumerate() {
        let nb = b.nilpotent_part();
        let r = linalg::residual(&nb.to_real(), &allowed);
        if r > 1e-8 * b.norm().max(1.0) {
            violations.push(format!(
                "basis element {i}: nilpotent part leaves U + c_n(T) by {r:.3e}"
            ));
        }
        residuals.push(r);
    }
    let semidirect = a_part(s).dim() + u.dim() == s.dim();
    CompatibilityReport {
        compatible: violations.is_empty(),
        semidirect,
        torus_kind: torus_kind(&torus).to_string(),
        torus,
        dim: s.dim(),
        u_dim: u.dim(),
        centralizer_roots,
        residuals,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctxs() -> [GroupContext; 4] {
        [GroupContext::real(4), GroupContext::complex(4), GroupContext::real(6), GroupContext::complex(5)]
    }

    #[test]
    fn su1n_dimensions_and_closure() {
        assert_eq!(su1n_an(GroupContext::real(3)).dim(), 3);
        assert_eq!(su1n_an(GroupContext::complex(4)).dim(), 8);
        for ctx in ctxs() {
            let s = su1n_an(ctx);
            assert_eq!(s.dim(), ctx.d() * ctx.n);
            assert!(lie_closure_defect(&s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn sp1m_dimensions_and_closure() {
        assert_eq!(sp1m_an(GroupContext::real(4), 2).unwrap().dim(), 4);
        assert_eq!(sp1m_an(GroupContext::complex(4), 2).unwrap().dim(), 8);
        assert!(sp1m_an(GroupContext::real(4), 3).is_err());
        for ctx in ctxs() {
            for m in 1..=ctx.n / 2 {
                let s = sp1m_an(ctx, m).unwrap();
                assert_eq!(s.dim(), 2 * ctx.d() * m);
                assert!(lie_closure_defect(&s).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn closure_defect_examples() {
        let ctx = GroupContext::real(4);
        let mut phi = ANElement::zero(ctx);
        phi.phi = ONE;
        let mut y = ANElement::zero(ctx);
        y.y[0] = ONE;
        let s = SubalgebraSpec::new(ctx, vec![phi.clone(), y], None).unwrap();
        assert!(lie_closure_defect(&s).unwrap() > 0.5);
        let single = SubalgebraSpec::new(ctx, vec![phi.clone()], None).unwrap();
        assert_eq!(lie_closure_defect(&single).unwrap(), 0.0);
        assert!(SubalgebraSpec::new(ctx, vec![phi.clone(), phi * 2.0], None).is_err());
    }

    #[test]
    fn symplectic_checks() {
        let r4 = GroupContext::real(4);
        assert!(check_b_symplectic(&BMap::scalar(r4, 3.0), 1e-12));
        let c4 = GroupContext::complex(4);
        let rot = RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let b = BMap::antilinear(c4, &rot).unwrap();
        assert!(check_b_symplectic(&b, 1e-12));
        assert!(!check_b_symplectic(&BMap::scalar(c4, 2.0), 1e-12));
        assert!(check_b_symplectic(&BMap::b0(c4).unwrap(), 1e-12));
    }

    #[test]
    fn eigenfree_checks() {
        let r4 = GroupContext::real(4);
        assert!(check_b_eigenfree(&BMap::rotation90(r4).unwrap()));
        assert!(!check_b_eigenfree(&BMap::scalar(r4, 1.0)));
        let c4 = GroupContext::complex(4);
        let rot = RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(check_b_eigenfree(&BMap::antilinear(c4, &rot).unwrap()));
        assert!(check_b_eigenfree(&BMap::b0(c4).unwrap()));
        // Complex-linear maps always have eigenvectors.
        assert!(!check_b_eigenfree(&BMap::rotation90(c4).unwrap()));
        // Conjugation alone fixes real vectors.
        let conj = BMap::from_fn(c4, |x| x.iter().map(|z| z.conj()).collect());
        assert!(!check_b_eigenfree(&conj));
    }

    #[test]
    fn b0_over_r_is_the_quarter_turn() {
        let r4 = GroupContext::real(4);
        assert_eq!(BMap::b0(r4).unwrap(), BMap::rotation90(r4).unwrap());
    }

    #[test]
    fn hb_family() {
        let r4 = GroupContext::real(4);
        let s = hb_subalgebra(&BMap::rotation90(r4).unwrap()).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(lie_closure_defect(&s).unwrap() < 1e-12);
        for ctx in ctxs() {
            if ctx.n % 2 == 1 {
                continue;
            }
            let b0 = BMap::b0(ctx).unwrap();
            let s = hb_subalgebra(&b0).unwrap();
            assert_eq!(s.dim(), ctx.d() * ctx.n);
            assert!(s.same_span(&sp1m_an(ctx, ctx.n / 2).unwrap()));
        }
        assert!(hb_subalgebra(&BMap::scalar(GroupContext::complex(4), 2.0)).is_err());
    }

    #[test]
    fn hc_family() {
        let r5 = GroupContext::real(5);
        assert!(hc_subalgebra(r5, 0.3).same_span(&su1n_an(r5)));
        let c4 = GroupContext::complex(4);
        assert!(hc_subalgebra(c4, 1.0).same_span(&su1n_an(c4)));
        let h = hc_subalgebra(c4, 0.5);
        assert_eq!(h.dim(), 8);
        assert!(lie_closure_defect(&h).unwrap() < 1e-12);
        assert!(lie_closure_defect(&hc_subalgebra(c4, 7.0)).unwrap() < 1e-12);
        assert!(!h.same_span(&su1n_an(c4)));
    }

    #[test]
    fn dn_parts() {
        for ctx in ctxs() {
            if ctx.n % 2 == 0 {
                let hb = hb_subalgebra(&BMap::b0(ctx).unwrap()).unwrap();
                assert_eq!(dn_part(&hb).dim(), 2 * ctx.d() - 1);
                assert_eq!(uphi0_part(&hb).dim(), u_part(&hb).dim());
            }
            assert_eq!(dn_part(&su1n_an(ctx)).dim(), ctx.d() - 1);
        }
        let ctx = GroupContext::real(4);
        let mut phi = ANElement::zero(ctx);
        phi.phi = ONE;
        let s = SubalgebraSpec::new(ctx, vec![phi], None).unwrap();
        assert_eq!(dn_part(&s).dim(), 0);
        let empty = SubalgebraSpec::new(ctx, vec![], None).unwrap();
        assert_eq!(uphi0_part(&empty).dim(), 0);
    }

    #[test]
    fn uphi0_of_hc() {
        let c = GroupContext::complex(5);
        let h = hc_subalgebra(c, 0.5);
        assert_eq!(uphi0_part(&h).dim(), 2 * (c.n - 2) + 1);
    }

    #[test]
    fn compatibility_examples() {
        let c4 = GroupContext::complex(4);
        let r = is_compatible(&hb_subalgebra(&BMap::b0(c4).unwrap()).unwrap());
        assert!(r.compatible && r.semidirect);
        assert_eq!(r.torus_kind, "ker alpha");
        let r = is_compatible(&hc_subalgebra(c4, 0.5));
        assert!(r.compatible && r.semidirect);
        assert_eq!(r.torus_kind, "ker beta");

        // t in ker beta together with eta: eta has weight t1 + t2 = 1 there.
        let mut e = ANElement::zero(c4);
        e.t1 = 1.0;
        e.eta = ONE;
        let s = SubalgebraSpec::new(c4, vec![e], None).unwrap();
        let r = is_compatible(&s);
        assert!(!r.compatible);
        assert_eq!(r.violations.len(), 1);

        // On ker beta, y has weight 0 and may ride along.
        let mut e = ANElement::zero(c4);
        e.t1 = 1.0;
        e.y[0] = ONE;
        let r = is_compatible(&SubalgebraSpec::new(c4, vec![e], None).unwrap());
        assert!(r.compatible && !r.semidirect);
    }
}
