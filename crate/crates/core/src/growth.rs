//! One-parameter curves `exp(t u)`, their growth exponent against the
//! Weyl-chamber walls, and a heuristic search for curves of each kind.

use rand::Rng;
use serde::Serialize;

use crate::ancoords::{ANElement, NILPOTENT_ORDER};
use crate::error::{Error, Result};
use crate::families::SubalgebraSpec;
use crate::linalg::{self, nilpotent_series_terms};
use crate::sampling::{self, random_combination};
use crate::scalars::{herm, max_abs, norm_sq, CMat, Scalar, ZERO};
use crate::sunf::{self, GroupMatrix};

/// Nilpotency bound for the exterior square of an element of n.
const WEDGE_ORDER: usize = 2 * (NILPOTENT_ORDER - 1) + 1;

/// Largest exponent allowed along a curve before rescaling.
const EXPONENT_BUDGET: f64 = 300.0;

/// Geometric grid `2^0 .. 2^10` with 64 points.
pub fn default_grid() -> Vec<f64> {
    geometric_grid(1.0, 1024.0, 64)
}

pub fn geometric_grid(t0: f64, t1: f64, points: usize) -> Vec<f64> {
    let (a, b) = (t0.ln(), t1.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub generator: ANElement,
    pub t_grid: Vec<f64>,
    /// Optional `g`: the curve becomes `g^{-1} exp(t u) g`.
    pub conjugator: Option<GroupMatrix>,
}

impl CurveSpec {
    pub fn new(generator: ANElement) -> Result<Self> {
        Self::with_grid(generator, default_grid())
    }

    pub fn with_grid(generator: ANElement, t_grid: Vec<f64>) -> Result<Self> {
        if generator.norm() == 0.0 {
            return Err(Error::pre("curve generator must be nonzero"));
        }
        if t_grid.len() < 4 {
            return Err(Error::pre("grid needs at least 4 points"));
        }
        if t_grid[0] <= 0.0 || t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::pre("grid must be positive and strictly increasing"));
        }
        Ok(CurveSpec { generator, t_grid, conjugator: None })
    }

    pub fn conjugated(mut self, g: GroupMatrix) -> Self {
        self.conjugator = Some(g);
        self
    }
}

/// One row of curve data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub log_norm: f64,
    pub log_rho: f64,
    pub log_a11: f64,
    pub log_a22: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSamples {
    pub samples: Vec<Sample>,
    /// Grid points dropped after overflow.
    pub truncated: usize,
}

enum Flow {
    Series { h: Vec<CMat>, w: Vec<CMat> },
    Dense { u: CMat, w: CMat },
}

impl Flow {
    fn new(gen: &ANElement) -> Self {
        let u = gen.to_matrix();
        let w = linalg::wedge2_derivation(&u);
        if gen.is_nilpotent() {
            Flow::Series {
                h: nilpotent_series_terms(&u, NILPOTENT_ORDER),
                w: nilpotent_series_terms(&w, WEDGE_ORDER),
            }
        } else {
            Flow::Dense { u, w }
        }
    }

    /// `exp(t u)` and its exterior square.
    fn at(&self, t: f64) -> (CMat, CMat) {
        let poly = |terms: &[CMat]| {
            let mut acc = terms[0].clone();
            let mut p = 1.0;
            for term in &terms[1..] {
                p *= t;
                acc += term * Scalar::new(p, 0.0);
            }
            acc
        };
        match self {
            Flow::Series { h, w } => (poly(h), poly(w)),
            Flow::Dense { u, w } => {
                let s = Scalar::new(t, 0.0);
                ((u * s).exp(), (w * s).exp())
            }
        }
    }
}

fn sample_inner(c: &CurveSpec, with_mu: bool) -> CurveSamples {
    let flow = Flow::new(&c.generator);
    let conj = c.conjugator.as_ref().map(|g| {
        let ginv = g.inverse().entries;
        let wg = linalg::wedge2(&g.entries);
        let wginv = linalg::wedge2(&ginv);
        (g.entries.clone(), ginv, wg, wginv)
    });
    let mut samples = Vec::with_capacity(c.t_grid.len());
    let mut truncated = 0;
    for (i, &t) in c.t_grid.iter().enumerate() {
        let (mut h, mut w) = flow.at(t);
        if let Some((g, ginv, wg, wginv)) = &conj {
            h = ginv * h * g;
            w = wginv * w * wg;
        }
        let log_norm = max_abs(&h).ln();
        let log_rho = max_abs(&w).ln();
        let (log_a11, log_a22) = if with_mu {
            sunf::log_mu_via_wedge(&h, &w)
        } else {
            (f64::NAN, f64::NAN)
        };
        let finite = log_norm.is_finite() && log_rho.is_finite() && (!with_mu || log_a11.is_finite());
        if !finite || log_rho > 700.0 {
            truncated = c.t_grid.len() - i;
            log::warn!("curve overflows at t = {t}; dropping the last {truncated} grid points");
            break;
        }
        samples.push(Sample { t, log_norm, log_rho, log_a11, log_a22 });
    }
    CurveSamples { samples, truncated }
}

/// Norms and Cartan projection of `exp(t u)` along the grid.
pub fn sample_curve(c: &CurveSpec) -> CurveSamples {
    sample_inner(c, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", content = "kappa")]
pub enum GrowthClass {
    Linear,
    Quadratic,
    Intermediate(f64),
    Bounded,
}

/// Half-widths of the bands around the exponents 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthBands {
    pub linear: f64,
    pub quadratic: f64,
}

impl Default for GrowthBands {
    fn default() -> Self {
        GrowthBands { linear: 0.1, quadratic: 0.1 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub class: GrowthClass,
    /// Fitted slope of `log rho` against `log ||h||`.
    pub kappa: f64,
    pub points: usize,
    /// Factor applied to the generator to keep exponentials finite.
    pub rescale: f64,
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Least-squares growth exponent over the upper half (in log t) of the grid.
pub fn fit_growth(c: &CurveSpec, bands: GrowthBands) -> Result<GrowthFit> {
    let gen = &c.generator;
    let tmax = *c.t_grid.last().expect("grid is nonempty");
    let torus = gen.t1.abs().max(gen.t2.abs());
    let rescale = if torus * tmax > EXPONENT_BUDGET { EXPONENT_BUDGET / (torus * tmax) } else { 1.0 };
    let spec = CurveSpec {
        generator: gen.clone() * rescale,
        t_grid: c.t_grid.clone(),
        conjugator: c.conjugator.clone(),
    };
    let data = sample_inner(&spec, false);
    let mid = (c.t_grid[0] * tmax).sqrt();
    let pts: Vec<&Sample> = data.samples.iter().filter(|s| s.t >= mid * (1.0 - 1e-12)).collect();
    if pts.len() < 3 {
        return Err(Error::Numerical("too few finite grid points to fit a slope".into()));
    }
    let xs: Vec<f64> = pts.iter().map(|s| s.log_norm).collect();
    let ys: Vec<f64> = pts.iter().map(|s| s.log_rho).collect();
    let spread = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - xs.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread < 1e-6 {
        log::warn!("norm stays bounded along the curve");
        return Ok(GrowthFit { class: GrowthClass::Bounded, kappa: f64::NAN, points: pts.len(), rescale });
    }
    let kappa = slope(&xs, &ys);
    let class = if (kappa - 1.0).abs() < bands.linear {
        GrowthClass::Linear
    } else if (kappa - 2.0).abs() < bands.quadratic {
        GrowthClass::Quadratic
    } else {
        GrowthClass::Intermediate(kappa)
    };
    Ok(GrowthFit { class, kappa, points: pts.len(), rescale })
}

pub fn classify_growth(c: &CurveSpec, bands: GrowthBands) -> Result<GrowthClass> {
    Ok(fit_growth(c, bands)?.class)
}

/// Exponent of a pure torus direction: `1 + min/max` of `|t1|, |t2|`.
pub fn torus_exponent(t1: f64, t2: f64) -> f64 {
    let (a, b) = (t1.abs(), t2.abs());
    1.0 + a.min(b) / a.max(b)
}

/// Coefficients `c0..c4` of `Δ(exp(t u)) = sum c_k t^k` for `u` in n with
/// `phi = 0`, read off the closed-form exponential.
pub fn delta_poly_coeffs(u: &ANElement) -> Result<[Scalar; 5]> {
    if !u.is_nilpotent() || u.phi != ZERO {
        return Err(Error::pre("delta polynomial needs t1 = t2 = 0 and phi = 0"));
    }
    let w = herm(&u.x, &u.y);
    let nx = Scalar::new(norm_sq(&u.x), 0.0);
    let ny = Scalar::new(norm_sq(&u.y), 0.0);
    let h = Scalar::new(0.5, 0.0);
    // Entries of exp(t u) in the top-right corner, as polynomials in t.
    let e1n = [ZERO, u.eta, -h * w];
    let e1l = [ZERO, u.xx, -h * nx];
    let e2n = [ZERO, u.yy, -h * ny];
    let e2l = [ZERO, -u.eta.conj(), -h * w.conj()];
    let mut c = [ZERO; 5];
    for i in 0..3 {
        for j in 0..3 {
            c[i + j] += e1n[i] * e2l[j] - e1l[i] * e2n[j];
        }
    }
    Ok(c)
}

/// Independent oracle: multiply the corner entries of `sum t^k u^k / k!`
/// as polynomials. Returns coefficients up to degree 8.
pub fn delta_poly_series(u: &ANElement) -> [Scalar; 9] {
    let terms = nilpotent_series_terms(&u.to_matrix(), NILPOTENT_ORDER);
    let s = u.ctx.size();
    let entry = |i: usize, j: usize| -> Vec<Scalar> { terms.iter().map(|p| p[(i, j)]).collect() };
    let (a, b, c, d) = (entry(0, s - 2), entry(1, s - 1), entry(0, s - 1), entry(1, s - 2));
    let mut out = [ZERO; 9];
    for i in 0..NILPOTENT_ORDER {
        for j in 0..NILPOTENT_ORDER {
            out[i + j] += a[i] * b[j] - c[i] * d[j];
        }
    }
    out
}

/// The two leading coefficients in the form
/// `t^4: -1/4 (|x|^2 |y|^2 - |x y†|^2)` and
/// `t^3: xx |y|^2 + yy |x|^2 + 2 Im(x y† conj(eta))`.
pub fn delta_leading_stated(u: &ANElement) -> (Scalar, Scalar) {
    let w = herm(&u.x, &u.y);
    let (nx, ny) = (norm_sq(&u.x), norm_sq(&u.y));
    let t4 = Scalar::new(-0.25 * (nx * ny - w.norm_sqr()), 0.0);
    let t3 = u.xx * ny + u.yy * nx + Scalar::new(0.0, 2.0 * (w * u.eta.conj()).im);
    (t4, t3)
}

/// Minimum over random unit `x` of `(|x|^2 |xB|^2 − |x (xB)†|^2) / |x|^4`.
/// Bounded away from zero exactly when `x` and `xB` are never F-dependent.
pub fn hb_quartic_min<R: Rng + ?Sized>(b: &crate::families::BMap, samples: usize, rng: &mut R) -> f64 {
    let k = b.ctx.n - 2;
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let x: Vec<Scalar> = (0..k).map(|_| sampling::scalar(b.ctx.field, rng)).collect();
        let xb = b.apply(&x);
        let nx = norm_sq(&x);
        let val = (nx * norm_sq(&xb) - herm(&x, &xb).norm_sqr()) / (nx * nx);
        best = best.min(val);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CdsVerdict {
    /// Curves of both kinds were found, which is sufficient for a
    /// Cartan-decomposition subgroup.
    CdsEvidence,
    /// Only linear growth observed (heuristic).
    OnlyLinear,
    /// Only quadratic growth observed (heuristic).
    OnlyQuadratic,
    NeitherObserved,
}

#[derive(Debug, Clone, Serialize)]
pub struct CdsReport {
    pub found_linear: Option<ANElement>,
    pub found_quadratic: Option<ANElement>,
    pub tried: usize,
    pub linear: usize,
    pub quadratic: usize,
    pub other: usize,
    pub verdict: CdsVerdict,
}

/// Looks for curves of linear and quadratic growth among basis elements,
/// pairwise sums and `budget` random unit combinations.
pub fn cds_search(s: &SubalgebraSpec, budget: usize, seed: u64, bands: GrowthBands) -> CdsReport {
    let mut rng = sampling::seeded(seed);
    let mut report = CdsReport {
        found_linear: None,
        found_quadratic: None,
        tried: 0,
        linear: 0,
        quadratic: 0,
        other: 0,
        verdict: CdsVerdict::NeitherObserved,
    };
    let mut candidates: Vec<ANElement> = s.basis.clone();
    for i in 0..s.dim() {
        for j in i + 1..s.dim() {
            candidates.push(s.basis[i].clone() + s.basis[j].clone());
        }
    }
    let mut random_left = budget;
    let mut idx = 0;
    loop {
        if report.found_linear.is_some() && report.found_quadratic.is_some() {
            break;
        }
        let cand = if idx < candidates.len() {
            idx += 1;
            candidates[idx - 1].clone()
        } else if random_left > 0 {
            random_left -= 1;
            match random_combination(&s.basis, &mut rng) {
                Some(c) => c,
                None => break,
            }
        } else {
            break;
        };
        let norm = cand.norm();
        if norm == 0.0 {
            continue;
        }
        let cand = cand * (1.0 / norm);
        report.tried += 1;
        let class = CurveSpec::new(cand.clone()).and_then(|c| classify_growth(&c, bands));
        match class {
            Ok(GrowthClass::Linear) => {
                report.linear += 1;
                report.found_linear.get_or_insert(cand);
            }
            Ok(GrowthClass::Quadratic) => {
                report.quadratic += 1;
                report.found_quadratic.get_or_insert(cand);
            }
            _ => report.other += 1,
        }
    }
    report.verdict = match (report.found_linear.is_some(), report.found_quadratic.is_some()) {
        (true, true) => CdsVerdict::CdsEvidence,
        (true, false) => CdsVerdict::OnlyLinear,
        (false, true) => CdsVerdict::OnlyQuadratic,
        (false, false) => CdsVerdict::NeitherObserved,
    };
    report
}
