//! Coordinates on the Lie algebra a + n of the Iwasawa AN subgroup.
//!
//! An element is the tuple `(t1, t2, phi, x, y, eta, xx, yy)`. The first two
//! rows of its matrix are
//!
//! ```text
//! ( t1  phi  x  eta  xx   )
//! ( 0   t2   y  yy   -eta̅ )
//! ```
//!
//! and the remaining rows follow from `u J + J u† = 0`. Here `x, y` are row
//! vectors in F^(n-2) and `xx, yy` lie in the imaginary part of F.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, RMat, RVec};
use crate::scalars::{herm, max_abs, norm_sq, CMat, FieldTag, Scalar, ZERO};
use crate::sunf::{GroupContext, GroupMatrix};

/// Nilpotency bound: the matrix of an element of n satisfies u^5 = 0.
pub const NILPOTENT_ORDER: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct ANElement {
    pub ctx: GroupContext,
    pub t1: f64,
    pub t2: f64,
    pub phi: Scalar,
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub eta: Scalar,
    pub xx: Scalar,
    pub yy: Scalar,
}

/// Positive real roots together with the zero weight of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootLabel {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "alpha+beta")]
    AlphaBeta,
    #[serde(rename = "alpha+2beta")]
    AlphaTwoBeta,
    #[serde(rename = "2beta")]
    TwoBeta,
    #[serde(rename = "2alpha+2beta")]
    TwoAlphaTwoBeta,
    #[serde(rename = "zero")]
    Zero,
}

impl RootLabel {
    pub const ALL: [RootLabel; 7] = [
        RootLabel::Alpha,
        RootLabel::Beta,
        RootLabel::AlphaBeta,
        RootLabel::AlphaTwoBeta,
        RootLabel::TwoBeta,
        RootLabel::TwoAlphaTwoBeta,
        RootLabel::Zero,
    ];

    /// Coefficients `(a, b)` with the root equal to `a alpha + b beta`.
    pub fn coefficients(self) -> (i32, i32) {
        match self {
            RootLabel::Alpha => (1, 0),
            RootLabel::Beta => (0, 1),
            RootLabel::AlphaBeta => (1, 1),
            RootLabel::AlphaTwoBeta => (1, 2),
            RootLabel::TwoBeta => (0, 2),
            RootLabel::TwoAlphaTwoBeta => (2, 2),
            RootLabel::Zero => (0, 0),
        }
    }

    /// Value on the torus direction `diag(t1, t2, 0, ..., -t2, -t1)`,
    /// where `alpha = t1 - t2` and `beta = t2`.
    pub fn weight(self, t1: f64, t2: f64) -> f64 {
        let (a, b) = self.coefficients();
        a as f64 * (t1 - t2) + b as f64 * t2
    }

    pub fn from_coefficients(a: i32, b: i32) -> Option<RootLabel> {
        RootLabel::ALL.into_iter().find(|r| r.coefficients() == (a, b))
    }

    /// Root spaces of 2beta and 2alpha+2beta vanish over R.
    pub fn exists_over(self, field: FieldTag) -> bool {
        field.is_complex() || !matches!(self, RootLabel::TwoBeta | RootLabel::TwoAlphaTwoBeta)
    }
}

impl std::str::FromStr for RootLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace(' ', "");
        RootLabel::ALL
            .into_iter()
            .find(|r| serde_json::to_string(r).map(|j| j.trim_matches('"') == s).unwrap_or(false))
            .ok_or_else(|| Error::Parse(format!("unknown root label `{s}`")))
    }
}

/// Offsets of each coordinate block in the real flattening
/// `t1, t2, phi, x, y, eta, xx/i, yy/i` with scalars laid out as (re, im).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub d: usize,
    pub k: usize,
    pub phi: usize,
    pub x: usize,
    pub y: usize,
    pub eta: usize,
    pub xx: usize,
    pub yy: usize,
    pub dim: usize,
}

impl Layout {
    pub fn new(ctx: &GroupContext) -> Self {
        let d = ctx.d();
        let k = ctx.n - 2;
        let phi = 2;
        let x = phi + d;
        let y = x + d * k;
        let eta = y + d * k;
        let xx = eta + d;
        let yy = xx + (d - 1);
        let dim = yy + (d - 1);
        Layout { d, k, phi, x, y, eta, xx, yy, dim }
    }

    /// Root label of every real coordinate.
    pub fn roots(&self) -> Vec<RootLabel> {
        let mut r = vec![RootLabel::Zero; self.dim];
        let mut fill = |start: usize, len: usize, label: RootLabel| {
            for c in r.iter_mut().skip(start).take(len) {
                *c = label;
            }
        };
        fill(self.phi, self.d, RootLabel::Alpha);
        fill(self.x, self.d * self.k, RootLabel::AlphaBeta);
        fill(self.y, self.d * self.k, RootLabel::Beta);
        fill(self.eta, self.d, RootLabel::AlphaTwoBeta);
        fill(self.xx, self.d - 1, RootLabel::TwoAlphaTwoBeta);
        fill(self.yy, self.d - 1, RootLabel::TwoBeta);
        r
    }

    /// Indices of the real coordinates belonging to the given roots.
    pub fn coords_of(&self, labels: &[RootLabel]) -> Vec<usize> {
        self.roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| labels.contains(r))
            .map(|(i, _)| i)
            .collect()
    }

    /// Human-readable coordinate names.
    pub fn names(&self) -> Vec<String> {
        let mut v = vec!["t1".to_string(), "t2".to_string()];
        let parts: &[&str] = if self.d == 2 { &["re", "im"] } else { &[""] };
        let push = |v: &mut Vec<String>, base: &str| {
            for p in parts {
                v.push(if p.is_empty() { base.to_string() } else { format!("{p} {base}") });
            }
        };
        push(&mut v, "phi");
        for j in 0..self.k {
            push(&mut v, &format!("x{}", j + 1));
        }
        for j in 0..self.k {
            push(&mut v, &format!("y{}", j + 1));
        }
        push(&mut v, "eta");
        if self.d == 2 {
            v.push("xx/i".into());
            v.push("yy/i".into());
        }
        v
    }
}

fn im(z: Scalar) -> Scalar {
    Scalar::new(0.0, z.im)
}

fn re(z: Scalar) -> f64 {
    z.re
}

fn scale(v: &[Scalar], c: Scalar) -> Vec<Scalar> {
    v.iter().map(|z| z * c).collect()
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(p, q)| p + q).collect()
}

fn vsub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

fn r(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

impl ANElement {
    pub fn zero(ctx: GroupContext) -> Self {
        let k = ctx.n - 2;
        ANElement {
            ctx,
            t1: 0.0,
            t2: 0.0,
            phi: ZERO,
            x: vec![ZERO; k],
            y: vec![ZERO; k],
            eta: ZERO,
            xx: ZERO,
            yy: ZERO,
        }
    }

    pub fn layout(&self) -> Layout {
        Layout::new(&self.ctx)
    }

    pub fn real_dim(ctx: &GroupContext) -> usize {
        Layout::new(ctx).dim
    }

    /// Real coordinates in the fixed flattening order.
    pub fn to_real(&self) -> RVec {
        let l = self.layout();
        let mut v = RVec::zeros(l.dim);
        v[0] = self.t1;
        v[1] = self.t2;
        let put = |v: &mut RVec, at: usize, z: Scalar| {
            v[at] = z.re;
            if l.d == 2 {
                v[at + 1] = z.im;
            }
        };
        put(&mut v, l.phi, self.phi);
        for j in 0..l.k {
            put(&mut v, l.x + l.d * j, self.x[j]);
            put(&mut v, l.y + l.d * j, self.y[j]);
        }
        put(&mut v, l.eta, self.eta);
        if l.d == 2 {
            v[l.xx] = self.xx.im;
            v[l.yy] = self.yy.im;
        }
        v
    }

    pub fn from_real(ctx: GroupContext, v: &RVec) -> Result<Self> {
        let l = Layout::new(&ctx);
        if v.len() != l.dim {
            return Err(Error::Dimension { expected: l.dim.to_string(), got: v.len().to_string() });
        }
        let get = |at: usize| -> Scalar {
            if l.d == 2 {
                Scalar::new(v[at], v[at + 1])
            } else {
                r(v[at])
            }
        };
        let mut u = ANElement::zero(ctx);
        u.t1 = v[0];
        u.t2 = v[1];
        u.phi = get(l.phi);
        for j in 0..l.k {
            u.x[j] = get(l.x + l.d * j);
            u.y[j] = get(l.y + l.d * j);
        }
        u.eta = get(l.eta);
        if l.d == 2 {
            u.xx = Scalar::new(0.0, v[l.xx]);
            u.yy = Scalar::new(0.0, v[l.yy]);
        }
        Ok(u)
    }

    /// Unit coordinate generators, one per real coordinate.
    pub fn coordinate_basis(ctx: GroupContext) -> Vec<ANElement> {
        let dim = Self::real_dim(&ctx);
        (0..dim)
            .map(|i| {
                let mut e = RVec::zeros(dim);
                e[i] = 1.0;
                ANElement::from_real(ctx, &e).expect("dimension matches")
            })
            .collect()
    }

    /// Euclidean norm of the real coordinates.
    pub fn norm(&self) -> f64 {
        self.to_real().norm()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.t1 == 0.0 && self.t2 == 0.0
    }

    pub fn torus_part(&self) -> ANElement {
        let mut t = ANElement::zero(self.ctx);
        t.t1 = self.t1;
        t.t2 = self.t2;
        t
    }

    pub fn nilpotent_part(&self) -> ANElement {
        let mut u = self.clone();
        u.t1 = 0.0;
        u.t2 = 0.0;
        u
    }

    /// Checks that the entries live in F and `xx, yy` in its imaginary part.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let f = self.ctx.field;
        let k = self.ctx.n - 2;
        if self.x.len() != k || self.y.len() != k {
            return Err(Error::Dimension {
                expected: format!("x, y of length {k}"),
                got: format!("{} and {}", self.x.len(), self.y.len()),
            });
        }
        let all = [self.phi, self.eta].into_iter().chain(self.x.iter().copied()).chain(self.y.iter().copied());
        for z in all {
            if !f.admits(z, tol) {
                return Err(Error::pre(format!("entry {z} does not lie in {f}")));
            }
        }
        for (name, z) in [("xx", self.xx), ("yy", self.yy)] {
            if !f.admits_imag(z, tol) {
                return Err(Error::pre(format!("{name} = {z} must be purely imaginary in {f}")));
            }
        }
        if !(self.t1.is_finite() && self.t2.is_finite()) {
            return Err(Error::pre("torus coordinates must be finite"));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> CMat {
        let n = self.ctx.n;
        let s = n + 2;
        let mut m = CMat::zeros(s, s);
        m[(0, 0)] = r(self.t1);
        m[(0, 1)] = self.phi;
        m[(0, n)] = self.eta;
        m[(0, n + 1)] = self.xx;
        m[(1, 1)] = r(self.t2);
        m[(1, n)] = self.yy;
        m[(1, n + 1)] = -self.eta.conj();
        for j in 0..n - 2 {
            m[(0, 2 + j)] = self.x[j];
            m[(1, 2 + j)] = self.y[j];
            m[(2 + j, n)] = -self.y[j].conj();
            m[(2 + j, n + 1)] = -self.x[j].conj();
        }
        m[(n, n)] = r(-self.t2);
        m[(n, n + 1)] = -self.phi.conj();
        m[(n + 1, n + 1)] = r(-self.t1);
        m
    }

    /// Reads the free parameters from the first two rows and checks every
    /// other entry against them.
    pub fn from_matrix(ctx: GroupContext, m: &CMat, tol: f64) -> Result<Self> {
        let n = ctx.n;
        let s = n + 2;
        if m.shape() != (s, s) {
            return Err(Error::Dimension {
                expected: format!("{s}x{s}"),
                got: format!("{}x{}", m.nrows(), m.ncols()),
            });
        }
        let scale = max_abs(m).max(1.0);
        let t = tol * scale;
        for (name, z) in [("t1", m[(0, 0)]), ("t2", m[(1, 1)])] {
            if z.im.abs() > t {
                return Err(Error::pre(format!("{name} entry {z} is not real")));
            }
        }
        let mut u = ANElement::zero(ctx);
        u.t1 = m[(0, 0)].re;
        u.t2 = m[(1, 1)].re;
        u.phi = m[(0, 1)];
        u.eta = m[(0, n)];
        u.xx = im(m[(0, n + 1)]);
        u.yy = im(m[(1, n)]);
        for j in 0..n - 2 {
            u.x[j] = m[(0, 2 + j)];
            u.y[j] = m[(1, 2 + j)];
        }
        if !ctx.field.is_complex() {
            u.phi.im = 0.0;
            u.eta.im = 0.0;
            u.xx = ZERO;
            u.yy = ZERO;
            for z in u.x.iter_mut().chain(u.y.iter_mut()) {
                z.im = 0.0;
            }
        }
        let rebuilt = u.to_matrix();
        let mut worst = (0.0, 0, 0);
        for i in 0..s {
            for j in 0..s {
                let e = (m[(i, j)] - rebuilt[(i, j)]).norm();
                if e > worst.0 {
                    worst = (e, i, j);
                }
            }
        }
        if worst.0 > t {
            return Err(Error::pre(format!(
                "matrix is not in a + n: entry ({}, {}) off by {:.3e}",
                worst.1 + 1,
                worst.2 + 1,
                worst.0
            )));
        }
        Ok(u)
    }

    /// Closed-form exponential of an element of n.
    pub fn exp_closed(&self) -> Result<GroupMatrix> {
        if !self.is_nilpotent() {
            return Err(Error::pre("exp_closed needs t1 = t2 = 0; use exp_general"));
        }
        let n = self.ctx.n;
        let s = n + 2;
        let (phi, eta, xx, yy) = (self.phi, self.eta, self.xx, self.yy);
        let (x, y) = (&self.x, &self.y);
        let nx = norm_sq(x);
        let ny = norm_sq(y);
        let xy = herm(x, y);
        let phib = phi.conj();
        let half = r(0.5);

        let mut g = CMat::identity(s, s);
        g[(0, 1)] = phi;
        g[(0, n)] = eta - half * xy + half * phi * yy - phi * ny / 6.0;
        g[(0, n + 1)] = r(-0.5 * nx - re(phi * eta.conj()) + phi.norm_sqr() * ny / 24.0)
            + (xx - phi * yy * phib / 6.0 + im(xy * phib) / 3.0);
        g[(1, n)] = yy - half * ny;
        g[(1, n + 1)] = -eta.conj() - half * xy.conj() - half * yy * phib + phib * ny / 6.0;
        for j in 0..n - 2 {
            g[(0, 2 + j)] = x[j] + half * phi * y[j];
            g[(1, 2 + j)] = y[j];
            g[(2 + j, n)] = -y[j].conj();
            g[(2 + j, n + 1)] = -x[j].conj() + half * y[j].conj() * phib;
        }
        g[(n, n + 1)] = -phib;
        Ok(GroupMatrix { ctx: self.ctx, entries: g })
    }

    /// Exponential of any element, through the nilpotent series when the
    /// torus part vanishes and Padé scaling-and-squaring otherwise.
    pub fn exp_general(&self) -> GroupMatrix {
        let m = self.to_matrix();
        let entries = if self.is_nilpotent() {
            linalg::exp_nilpotent(&m, NILPOTENT_ORDER)
        } else {
            m.exp()
        };
        GroupMatrix { ctx: self.ctx, entries }
    }

    /// Truncated power series `sum_{k<5} u^k / k!`, exact on n.
    pub fn exp_series(&self) -> CMat {
        linalg::exp_nilpotent(&self.to_matrix(), NILPOTENT_ORDER)
    }

    /// Applies `ad` of the torus part of `self` to `v`: every root
    /// coordinate of `v` is scaled by its weight.
    pub fn ad_torus(&self, v: &ANElement) -> ANElement {
        let (t1, t2) = (self.t1, self.t2);
        let w = |label: RootLabel| r(label.weight(t1, t2));
        ANElement {
            ctx: v.ctx,
            t1: 0.0,
            t2: 0.0,
            phi: v.phi * w(RootLabel::Alpha),
            x: scale(&v.x, w(RootLabel::AlphaBeta)),
            y: scale(&v.y, w(RootLabel::Beta)),
            eta: v.eta * w(RootLabel::AlphaTwoBeta),
            xx: v.xx * w(RootLabel::TwoAlphaTwoBeta),
            yy: v.yy * w(RootLabel::TwoBeta),
        }
    }

    /// Lie bracket in closed form.
    pub fn bracket(&self, v: &ANElement) -> ANElement {
        let u = self;
        let two = r(2.0);
        let mut out = ANElement::zero(u.ctx);
        out.x = vsub(&scale(&v.y, u.phi), &scale(&u.y, v.phi));
        out.eta = -herm(&u.x, &v.y) + herm(&v.x, &u.y) + u.phi * v.yy - v.phi * u.yy;
        out.xx = -two * im(herm(&u.x, &v.x) + u.phi * v.eta.conj() - v.phi * u.eta.conj());
        out.yy = -two * im(herm(&u.y, &v.y));
        out + u.ad_torus(v) - v.ad_torus(u)
    }

    /// `exp(-v) u exp(v)`.
    pub fn conjugate_by_exp(&self, v: &ANElement) -> Result<ANElement> {
        if v.is_nilpotent() {
            // e^{-ad v} terminates: ad v raises root height, which is at most 4.
            let mut out = self.clone();
            let mut term = self.clone();
            for k in 1..=NILPOTENT_ORDER {
                term = term.bracket(v) * (1.0 / k as f64);
                out = out + term.clone();
            }
            Ok(out)
        } else {
            let g = v.exp_general().entries;
            let ginv = (-v.clone()).exp_general().entries;
            let m = ginv * self.to_matrix() * g;
            let tol = 1e-9 * max_abs(&m).max(1.0);
            ANElement::from_matrix(self.ctx, &m, tol.max(1e-9))
        }
    }

    /// Projection onto a root space.
    pub fn root_component(&self, label: RootLabel) -> ANElement {
        let mut out = ANElement::zero(self.ctx);
        match label {
            RootLabel::Zero => {
                out.t1 = self.t1;
                out.t2 = self.t2;
            }
            RootLabel::Alpha => out.phi = self.phi,
            RootLabel::AlphaBeta => out.x = self.x.clone(),
            RootLabel::Beta => out.y = self.y.clone(),
            RootLabel::AlphaTwoBeta => out.eta = self.eta,
            RootLabel::TwoAlphaTwoBeta => out.xx = self.xx,
            RootLabel::TwoBeta => out.yy = self.yy,
        }
        out
    }

    pub fn max_abs_diff(&self, other: &ANElement) -> f64 {
        (self.to_real() - other.to_real()).amax()
    }
}

impl Add for ANElement {
    type Output = ANElement;
    fn add(self, o: ANElement) -> ANElement {
        ANElement {
            ctx: self.ctx,
            t1: self.t1 + o.t1,
            t2: self.t2 + o.t2,
            phi: self.phi + o.phi,
            x: vadd(&self.x, &o.x),
            y: vadd(&self.y, &o.y),
            eta: self.eta + o.eta,
            xx: self.xx + o.xx,
            yy: self.yy + o.yy,
        }
    }
}

impl Neg for ANElement {
    type Output = ANElement;
    fn neg(self) -> ANElement {
        self * -1.0
    }
}

impl Sub for ANElement {
    type Output = ANElement;
    fn sub(self, o: ANElement) -> ANElement {
        self + (-o)
    }
}

impl Mul<f64> for ANElement {
    type Output = ANElement;
    fn mul(self, c: f64) -> ANElement {
        let s = r(c);
        ANElement {
            ctx: self.ctx,
            t1: self.t1 * c,
            t2: self.t2 * c,
            phi: self.phi * s,
            x: scale(&self.x, s),
            y: scale(&self.y, s),
            eta: self.eta * s,
            xx: self.xx * s,
            yy: self.yy * s,
        }
    }
}

/// Real matrix whose columns are the flattened elements.
pub fn basis_matrix(ctx: &GroupContext, v: &[ANElement]) -> RMat {
    let dim = ANElement::real_dim(ctx);
    let mut m = RMat::zeros(dim, v.len());
    for (j, e) in v.iter().enumerate() {
        m.set_column(j, &e.to_real());
    }
    m
}

/// Elements from the columns of a real matrix.
pub fn elements_from_columns(ctx: GroupContext, m: &RMat) -> Vec<ANElement> {
    (0..m.ncols())
        .map(|j| {
            let c: RVec = m.column(j).into_owned();
            ANElement::from_real(ctx, &c).expect("column length matches")
        })
        .collect()
}

/// Splits `span(v)` into its parts inside and outside the sum of root
/// spaces on which the torus direction `(t1, t2)` has the same value as
/// `omega`.
///
/// The span must be invariant under `ad` of the direction; otherwise the
/// split is not well defined and an error reports the bracket defect.
pub fn rootdecomp_split(
    ctx: GroupContext,
    v: &[ANElement],
    direction: (f64, f64),
    omega: RootLabel,
    tol: f64,
) -> Result<(Vec<ANElement>, Vec<ANElement>)> {
    let layout = Layout::new(&ctx);
    let span = linalg::orth(&basis_matrix(&ctx, v), tol);
    let mut t = ANElement::zero(ctx);
    t.t1 = direction.0;
    t.t2 = direction.1;
    let mut defect: f64 = 0.0;
    for e in elements_from_columns(ctx, &span) {
        defect = defect.max(linalg::residual(&t.bracket(&e).to_real(), &span));
    }
    let scale_t = direction.0.abs().max(direction.1.abs()).max(1.0);
    if defect > tol * scale_t {
        return Err(Error::pre(format!(
            "span is not invariant under the torus direction (bracket defect {defect:.3e})"
        )));
    }
    let target = omega.weight(direction.0, direction.1);
    let roots = layout.roots();
    let same = |rl: &RootLabel| (rl.weight(direction.0, direction.1) - target).abs() <= tol * scale_t;
    let eq: Vec<usize> = (0..layout.dim).filter(|&i| same(&roots[i])).collect();
    let neq: Vec<usize> = (0..layout.dim).filter(|&i| !same(&roots[i])).collect();
    let part = |coords: &[usize]| {
        let sub = linalg::coordinate_subspace(layout.dim, coords);
        elements_from_columns(ctx, &linalg::intersect(&span, &sub, tol))
    };
    let (a, b) = (part(&eq), part(&neq));
    if a.len() + b.len() != span.ncols() {
        return Err(Error::Numerical(format!(
            "split dimensions {} + {} do not add up to {}",
            a.len(),
            b.len(),
            span.ncols()
        )));
    }
    Ok((a, b))
}

/// Logarithm of a unipotent group element, returned as an element of n.
pub fn log_unipotent(g: &GroupMatrix, tol: f64) -> Result<ANElement> {
    let m = linalg::log_unipotent(&g.entries, NILPOTENT_ORDER);
    ANElement::from_matrix(g.ctx, &m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_an, random_nilpotent, seeded};
    use crate::scalars::{dagger, ONE};

    fn commutator(u: &ANElement, v: &ANElement) -> CMat {
        let (a, b) = (u.to_matrix(), v.to_matrix());
        &a * &b - &b * &a
    }

    #[test]
    fn dimension_is_twice_d_times_n() {
        for n in 3..9 {
            assert_eq!(ANElement::real_dim(&GroupContext::real(n)), 2 * n);
            assert_eq!(ANElement::real_dim(&GroupContext::complex(n)), 4 * n);
        }
    }

    #[test]
    fn matrix_examples() {
        let ctx = GroupContext::real(4);
        assert_eq!(ANElement::zero(ctx).to_matrix(), CMat::zeros(6, 6));
        let mut u = ANElement::zero(ctx);
        u.t1 = 1.0;
        let mut d = CMat::zeros(6, 6);
        d[(0, 0)] = ONE;
        d[(5, 5)] = -ONE;
        assert_eq!(u.to_matrix(), d);
    }

    #[test]
    fn matrices_lie_in_the_algebra() {
        let mut rng = seeded(1);
        for ctx in [GroupContext::real(5), GroupContext::complex(4)] {
            for _ in 0..20 {
                let u = random_an(ctx, &mut rng);
                let m = u.to_matrix();
                let j = ctx.j();
                assert!(max_abs(&(&m * &j + &j * dagger(&m))) < 1e-14);
            }
        }
    }

    #[test]
    fn from_matrix_round_trip_and_rejection() {
        let mut rng = seeded(2);
        let ctx = GroupContext::complex(5);
        for _ in 0..20 {
            let u = random_an(ctx, &mut rng);
            let back = ANElement::from_matrix(ctx, &u.to_matrix(), 1e-12).unwrap();
            assert_eq!(back, u);
        }
        assert_eq!(ANElement::from_matrix(ctx, &CMat::zeros(7, 7), 1e-12).unwrap(), ANElement::zero(ctx));
        let mut bad = CMat::zeros(7, 7);
        bad[(2, 0)] = ONE;
        assert!(ANElement::from_matrix(ctx, &bad, 1e-12).is_err());
    }

    #[test]
    fn exp_closed_examples() {
        let ctx = GroupContext::real(4);
        let zero = ANElement::zero(ctx);
        assert_eq!(zero.exp_closed().unwrap().entries, CMat::identity(6, 6));
        let mut u = ANElement::zero(ctx);
        u.eta = ONE;
        let e = u.exp_closed().unwrap().entries;
        assert!((e - (CMat::identity(6, 6) + u.to_matrix())).norm() < 1e-15);
        u.t1 = 1.0;
        assert!(u.exp_closed().is_err());
    }

    #[test]
    fn exp_closed_matches_series() {
        let mut rng = seeded(3);
        for ctx in [GroupContext::real(3), GroupContext::complex(6)] {
            for _ in 0..200 {
                let u = random_nilpotent(ctx, &mut rng);
                let err = max_abs(&(u.exp_closed().unwrap().entries - u.exp_series()));
                assert!(err < 1e-10, "error {err}");
            }
        }
    }

    #[test]
    fn exp_general_on_torus_and_n() {
        let ctx = GroupContext::complex(3);
        let mut u = ANElement::zero(ctx);
        u.t1 = 0.7;
        u.t2 = -0.2;
        let g = u.exp_general().entries;
        let want = [0.7f64.exp(), (-0.2f64).exp(), 1.0, 0.2f64.exp(), (-0.7f64).exp()];
        for k in 0..5 {
            assert!((g[(k, k)].re - want[k]).abs() < 1e-14);
        }
        let mut rng = seeded(4);
        let v = random_nilpotent(ctx, &mut rng);
        assert!(max_abs(&(v.exp_general().entries - v.exp_closed().unwrap().entries)) < 1e-12);
        assert_eq!(ANElement::zero(ctx).exp_general().entries, CMat::identity(5, 5));
    }

    #[test]
    fn bracket_examples() {
        let ctx = GroupContext::real(4);
        let mut u = ANElement::zero(ctx);
        u.y[0] = ONE;
        let mut v = ANElement::zero(ctx);
        v.x[0] = ONE;
        let mut want = ANElement::zero(ctx);
        want.eta = ONE;
        assert_eq!(u.bracket(&v), want);
        let from_m = ANElement::from_matrix(ctx, &commutator(&u, &v), 1e-12).unwrap();
        assert_eq!(from_m, want);
    }

    #[test]
    fn bracket_matches_commutator() {
        let mut rng = seeded(5);
        for ctx in [GroupContext::real(5), GroupContext::complex(5)] {
            for _ in 0..100 {
                let u = random_an(ctx, &mut rng);
                let v = random_an(ctx, &mut rng);
                let closed = u.bracket(&v).to_matrix();
                assert!(max_abs(&(closed - commutator(&u, &v))) < 1e-12);
                assert!(u.bracket(&u).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let mut rng = seeded(6);
        let ctx = GroupContext::complex(4);
        let u = random_an(ctx, &mut rng);
        assert_eq!(u.conjugate_by_exp(&ANElement::zero(ctx)).unwrap(), u);

        let mut ux = ANElement::zero(ctx);
        ux.x = vec![Scalar::new(1.0, 0.5), Scalar::new(-0.3, 0.0)];
        let mut v = ANElement::zero(ctx);
        v.x = vec![Scalar::new(0.2, -1.0), Scalar::new(0.0, 0.4)];
        let got = ux.conjugate_by_exp(&v).unwrap();
        assert!(got.max_abs_diff(&(ux.clone() + ux.bracket(&v))) < 1e-15);

        for _ in 0..20 {
            let u = random_an(ctx, &mut rng);
            let v = random_an(ctx, &mut rng) * 0.5;
            let g = v.exp_general().entries;
            let ginv = (-v.clone()).exp_general().entries;
            let oracle = ANElement::from_matrix(ctx, &(ginv * u.to_matrix() * g), 1e-8).unwrap();
            assert!(u.conjugate_by_exp(&v).unwrap().max_abs_diff(&oracle) < 1e-10);
            let vn = v.nilpotent_part();
            let g = vn.exp_closed().unwrap().entries;
            let ginv = (-vn.clone()).exp_closed().unwrap().entries;
            let oracle = ANElement::from_matrix(ctx, &(ginv * u.to_matrix() * g), 1e-8).unwrap();
            assert!(u.conjugate_by_exp(&vn).unwrap().max_abs_diff(&oracle) < 1e-10);
        }
    }

    #[test]
    fn root_components() {
        let ctx = GroupContext::real(4);
        let mut u = ANElement::zero(ctx);
        u.phi = ONE;
        u.x[0] = ONE;
        let mut want = ANElement::zero(ctx);
        want.phi = ONE;
        assert_eq!(u.root_component(RootLabel::Alpha), want);
        assert_eq!(u.root_component(RootLabel::TwoBeta), ANElement::zero(ctx));

        let mut rng = seeded(7);
        let u = random_an(GroupContext::complex(5), &mut rng);
        let sum = RootLabel::ALL
            .iter()
            .fold(ANElement::zero(u.ctx), |acc, &l| acc + u.root_component(l));
        assert!(sum.max_abs_diff(&u) < 1e-15);
    }

    #[test]
    fn bracket_respects_root_grading() {
        let ctx = GroupContext::complex(4);
        let gens = ANElement::coordinate_basis(ctx);
        let layout = Layout::new(&ctx);
        let roots = layout.roots();
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                if roots[i] == RootLabel::Zero || roots[j] == RootLabel::Zero {
                    continue;
                }
                let c = a.bracket(b);
                let (p, q) = roots[i].coefficients();
                let (s, t) = roots[j].coefficients();
                match RootLabel::from_coefficients(p + s, q + t) {
                    Some(target) => assert!(c.max_abs_diff(&c.root_component(target)) < 1e-15),
                    None => assert!(c.norm() < 1e-15),
                }
            }
        }
    }

    #[test]
    fn rootdecomp_examples() {
        let ctx = GroupContext::real(4);
        let mut phi = ANElement::zero(ctx);
        phi.phi = ONE;
        let mut y = ANElement::zero(ctx);
        y.y[0] = ONE;
        let (eq, neq) = rootdecomp_split(ctx, &[phi.clone(), y.clone()], (1.0, 1.0), RootLabel::Beta, 1e-9).unwrap();
        assert_eq!((eq.len(), neq.len()), (1, 1));
        assert!(eq[0].root_component(RootLabel::Beta).norm() > 0.99);

        let (eq, neq) = rootdecomp_split(ctx, &[phi.clone()], (1.0, 0.0), RootLabel::Alpha, 1e-9).unwrap();
        assert_eq!((eq.len(), neq.len()), (1, 0));
        let (eq, neq) = rootdecomp_split(ctx, &[phi.clone()], (1.0, 0.0), RootLabel::TwoAlphaTwoBeta, 1e-9).unwrap();
        assert_eq!((eq.len(), neq.len()), (0, 1));

        // phi + y is not invariant under a regular torus direction.
        let mixed = phi + y;
        assert!(rootdecomp_split(ctx, &[mixed], (3.0, 1.0), RootLabel::Beta, 1e-9).is_err());
    }

    #[test]
    fn log_inverts_exp_closed() {
        let mut rng = seeded(8);
        let u = random_nilpotent(GroupContext::complex(4), &mut rng);
        let back = log_unipotent(&u.exp_closed().unwrap(), 1e-9).unwrap();
        assert!(back.max_abs_diff(&u) < 1e-12);
    }

    #[test]
    fn real_flattening_round_trip() {
        let mut rng = seeded(9);
        for ctx in [GroupContext::real(6), GroupContext::complex(3)] {
            let u = random_an(ctx, &mut rng);
            assert_eq!(ANElement::from_real(ctx, &u.to_real()).unwrap(), u);
            assert_eq!(Layout::new(&ctx).names().len(), Layout::new(&ctx).dim);
        }
    }
}
