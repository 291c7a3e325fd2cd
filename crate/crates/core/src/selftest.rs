//! Acceptance checks 1-9, runnable from the library, the CLI and the
//! integration tests. Each check records what it measured; nothing is
//! relaxed to make a check pass.

use std::time::Instant;

use serde::Serialize;

use crate::ancoords::{ANElement, Layout, RootLabel};
use crate::classifier::{
    check_bestnosquare, check_maxnolinear, conjugate_in_frame, hc_invariant, random_frame_unitary,
    tessellation_verdict, Family, NoReason, Verdict, VerdictOptions,
};
use crate::families::{
    cartan_a, full_an, hb_subalgebra, hc_subalgebra, lie_closure_defect, sp1m_an, su1n_an, BMap,
    SubalgebraSpec,
};
use crate::growth::{delta_leading_stated, delta_poly_coeffs, fit_growth, CurveSpec, GrowthBands, GrowthClass};
use crate::linalg::RMat;
use crate::sampling::{random_combination, random_group, random_k, random_nilpotent, seeded, Prng};
use crate::scalars::{max_abs, FieldTag, ZERO};
use crate::sunf::{mu, rho_norm, sup_norm, CartanPoint, GroupContext};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub total_seconds: f64,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

/// Whole-suite time budget in seconds, charged to criterion 9.
pub const TOTAL_BUDGET: f64 = 300.0;

pub const TITLES: [&str; 9] = [
    "exponential fidelity",
    "bracket fidelity",
    "Cartan projection",
    "norm identities on A+",
    "wall growth reproduction",
    "Delta polynomial leading coefficients",
    "family structure",
    "Hc fingerprint",
    "verdict regression",
];

fn contexts(ns: std::ops::RangeInclusive<usize>) -> Vec<GroupContext> {
    let mut v = Vec::new();
    for field in [FieldTag::Real, FieldTag::Complex] {
        for n in ns.clone() {
            v.push(GroupContext::new(field, n).expect("n >= 3"));
        }
    }
    v
}

fn rng_for(seed: u64, id: u32) -> Prng {
    seeded(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(id as u64))
}

/// Closed-form exponential against the terminating series, 10^4 nilpotents
/// per field and n in 3..=8, max entry error 1e-10, within 60 s.
pub fn criterion_1(seed: u64) -> (bool, String) {
    let start = Instant::now();
    let mut rng = rng_for(seed, 1);
    let mut worst: f64 = 0.0;
    let mut membership: f64 = 0.0;
    let mut count = 0;
    for ctx in contexts(3..=8) {
        for i in 0..10_000 {
            let u = random_nilpotent(ctx, &mut rng);
            let closed = match u.exp_closed() {
                Ok(g) => g,
                Err(e) => return (false, format!("exp_closed failed: {e}")),
            };
            worst = worst.max(max_abs(&(&closed.entries - u.exp_series())));
            if i % 100 == 0 {
                let d = crate::sunf::membership_defect(&closed.entries, &ctx).unwrap_or(f64::INFINITY);
                membership = membership.max(d / max_abs(&closed.entries).powi(2));
            }
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-10 && secs <= 60.0;
    (
        ok,
        format!("{count} samples, max entry error {worst:.2e} (<= 1e-10), scaled membership defect {membership:.2e}, {secs:.1} s (<= 60 s)"),
    )
}

/// Closed-form bracket against the matrix commutator on 10^4 pairs and the
/// Jacobi identity on 10^3 triples.
pub fn criterion_2(seed: u64) -> (bool, String) {
    let mut rng = rng_for(seed, 2);
    let ctxs = contexts(3..=8);
    let mut worst: f64 = 0.0;
    let mut jacobi: f64 = 0.0;
    for i in 0..10_000 {
        let ctx = ctxs[i % ctxs.len()];
        let u = crate::sampling::random_an(ctx, &mut rng);
        let v = crate::sampling::random_an(ctx, &mut rng);
        let (mu_, mv) = (u.to_matrix(), v.to_matrix());
        let comm = &mu_ * &mv - &mv * &mu_;
        match ANElement::from_matrix(ctx, &comm, 1e-9) {
            Ok(c) => worst = worst.max(u.bracket(&v).max_abs_diff(&c)),
            Err(e) => return (false, format!("commutator left a + n: {e}")),
        }
        if i % 10 == 0 {
            let w = crate::sampling::random_an(ctx, &mut rng);
            let j = u.bracket(&v.bracket(&w)) + v.bracket(&w.bracket(&u)) + w.bracket(&u.bracket(&v));
            jacobi = jacobi.max(j.norm());
        }
    }
    let ok = worst <= 1e-12 && jacobi <= 1e-10;
    (ok, format!("bracket error {worst:.2e} (<= 1e-12), Jacobi defect {jacobi:.2e} (<= 1e-10)"))
}

fn rel(a: &CartanPoint, b: &CartanPoint) -> f64 {
    ((a.a11 - b.a11) / a.a11).abs().max(((a.a22 - b.a22) / a.a22).abs())
}

/// `mu(a) = a` exactly on a grid in A+; `mu(g^-1) = mu(g)` and
/// `mu(k1 g k2) = mu(g)` on 10^3 random g; reciprocal-pair shape always.
pub fn criterion_3(seed: u64) -> (bool, String) {
    let mut rng = rng_for(seed, 3);
    let ctxs = contexts(3..=6);
    let mut exact = true;
    for ctx in &ctxs {
        for &a11 in &[1.0, 1.5, 5.0, 1e3, 1e6] {
            for &a22 in &[1.0, 1.25, 2.0, 5.0, 1e3, 1e6] {
                if a22 > a11 {
                    continue;
                }
                let a = CartanPoint::new(a11, a22).expect("in chamber");
                exact &= mu(&a.to_group(*ctx)).map(|p| p == a).unwrap_or(false);
            }
        }
    }
    let (mut inv, mut kak) = (0.0f64, 0.0f64);
    let mut shape_failures = 0;
    for i in 0..1000 {
        let ctx = ctxs[i % ctxs.len()];
        let g = random_group(ctx, 1.0, &mut rng);
        let k1 = random_k(ctx, &mut rng);
        let k2 = random_k(ctx, &mut rng);
        let (Ok(p), Ok(q), Ok(r)) = (mu(&g), mu(&g.inverse()), mu(&k1.mul(&g).mul(&k2))) else {
            shape_failures += 1;
            continue;
        };
        inv = inv.max(rel(&p, &q));
        kak = kak.max(rel(&p, &r));
    }
    let ok = exact && inv <= 1e-6 && kak <= 1e-6 && shape_failures == 0;
    (
        ok,
        format!("mu(a) = a exactly: {exact}; mu(g^-1) rel err {inv:.2e}, mu(k1 g k2) rel err {kak:.2e} (<= 1e-6); reciprocal-shape failures {shape_failures}/1000"),
    )
}

/// `sup_norm(a) = a11`, `rho_norm(a) = a11 a22` with exact equality.
pub fn criterion_4(_seed: u64) -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for ctx in contexts(3..=8) {
        for &a11 in &[1.0, 1.5, 2.0, 7.25, 1e4] {
            for &a22 in &[1.0, 1.5, 2.0, 3.0, 1e4] {
                if a22 > a11 {
                    continue;
                }
                let g = CartanPoint { a11, a22 }.to_group(ctx).entries;
                checked += 1;
                if sup_norm(&g) != a11 || rho_norm(&g) != a11 * a22 {
                    bad.push(format!("({a11}, {a22}) n={}", ctx.n));
                }
            }
        }
    }
    (bad.is_empty(), format!("{checked} points checked, {} mismatches {bad:?}", bad.len()))
}

fn kappas(s: &SubalgebraSpec, count: usize, rng: &mut Prng) -> Vec<(f64, GrowthClass)> {
    (0..count)
        .filter_map(|_| random_combination(&s.basis, rng))
        .map(|g| match CurveSpec::new(g).and_then(|c| fit_growth(&c, GrowthBands::default())) {
            Ok(f) => (f.kappa, f.class),
            Err(_) => (f64::NAN, GrowthClass::Bounded),
        })
        .collect()
}

fn rot_c(n: usize) -> BMap {
    let k = n - 2;
    let mut r = RMat::zeros(k, k);
    for p in 0..k / 2 {
        r[(2 * p, 2 * p + 1)] = 1.0;
        r[(2 * p + 1, 2 * p)] = -1.0;
    }
    BMap::antilinear(GroupContext::complex(n), &r).expect("square")
}

/// Growth exponents on the four families, 20 random generators each per
/// field.
pub fn criterion_5(seed: u64) -> (bool, String) {
    let mut rng = rng_for(seed, 5);
    let mut ok = true;
    let mut parts = Vec::new();
    let span = |v: &[(f64, GrowthClass)]| {
        let lo = v.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = v.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    for ctx in [GroupContext::real(4), GroupContext::complex(4)] {
        let su = kappas(&su1n_an(ctx), 20, &mut rng);
        let sp = kappas(&sp1m_an(ctx, 2).expect("2m = n"), 20, &mut rng);
        let su_ok = su.len() == 20 && su.iter().all(|p| (p.0 - 1.0).abs() < 0.05);
        let sp_ok = sp.len() == 20 && sp.iter().all(|p| (p.0 - 2.0).abs() < 0.05);
        ok &= su_ok && sp_ok;
        let (a, b) = span(&su);
        let (c, d) = span(&sp);
        parts.push(format!("{}: su1n kappa in [{a:.4}, {b:.4}], sp1m kappa in [{c:.4}, {d:.4}]", ctx.field));
    }
    let hbs = [BMap::rotation90(GroupContext::real(4)).expect("even"), rot_c(4)];
    for b in &hbs {
        let s = hb_subalgebra(b).expect("symplectic");
        let v = kappas(&s, 20, &mut rng);
        let good = v.len() == 20 && v.iter().all(|p| p.1 == GrowthClass::Quadratic);
        ok &= good;
        let (lo, hi) = span(&v);
        parts.push(format!("hb over {}: Quadratic {good}, kappa in [{lo:.4}, {hi:.4}]", b.ctx.field));
    }
    let ctx = GroupContext::complex(4);
    let mut hc_all = Vec::new();
    for c in [0.25, 0.5, 0.75, 1.0] {
        hc_all.extend(kappas(&hc_subalgebra(ctx, c), 5, &mut rng));
    }
    let good = hc_all.len() == 20 && hc_all.iter().all(|p| p.1 == GrowthClass::Linear);
    ok &= good;
    let (lo, hi) = span(&hc_all);
    parts.push(format!("hc(c in {{0.25,0.5,0.75,1}}) over C: Linear {good}, kappa in [{lo:.4}, {hi:.4}]"));
    (ok, parts.join("; "))
}

/// Leading coefficients of `Δ(exp(t u))` for `phi = 0` against the stated
/// closed forms, 10^3 inputs.
pub fn criterion_6(seed: u64) -> (bool, String) {
    let mut rng = rng_for(seed, 6);
    let ctxs = contexts(3..=6);
    let (mut e4, mut e3) = (0.0f64, 0.0f64);
    let mut ratio_sum = 0.0;
    let mut ratio_n = 0;
    for i in 0..1000 {
        let ctx = ctxs[i % ctxs.len()];
        let mut u = random_nilpotent(ctx, &mut rng);
        u.phi = ZERO;
        let c = match delta_poly_coeffs(&u) {
            Ok(c) => c,
            Err(e) => return (false, format!("delta_poly_coeffs failed: {e}")),
        };
        let (t4, t3) = delta_leading_stated(&u);
        e4 = e4.max((c[4] - t4).norm());
        e3 = e3.max((c[3] - t3).norm());
        if t3.norm() > 1e-3 {
            ratio_sum += (c[3] / t3).re;
            ratio_n += 1;
        }
    }
    let ok = e4 <= 1e-10 && e3 <= 1e-10;
    let mean_ratio = if ratio_n > 0 { ratio_sum / ratio_n as f64 } else { f64::NAN };
    (
        ok,
        format!("t^4 max error {e4:.2e}, t^3 max error {e3:.2e} (both <= 1e-10); mean computed/stated t^3 ratio {mean_ratio:.6}"),
    )
}

/// Closure and dimension of hb and hc, hb(B0) = sp1m, maxnolinear on hb,
/// bestnosquare on hc.
pub fn criterion_7(_seed: u64) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut check = |cond: bool, what: String| {
        if !cond {
            notes.push(what);
        }
        ok &= cond;
    };
    let closed = |s: &SubalgebraSpec| lie_closure_defect(s).map(|d| d <= 1e-10).unwrap_or(false);

    let eigenfree = [
        BMap::rotation90(GroupContext::real(4)).expect("even"),
        BMap::rotation90(GroupContext::real(6)).expect("even"),
        rot_c(4),
        rot_c(6),
        BMap::b0(GroupContext::complex(4)).expect("even"),
        BMap::b0(GroupContext::complex(6)).expect("even"),
    ];
    for b in &eigenfree {
        let ctx = b.ctx;
        let s = hb_subalgebra(b).expect("symplectic");
        check(closed(&s) && s.dim() == ctx.d() * ctx.n, format!("hb closure/dim over {} n={}", ctx.field, ctx.n));
        match check_maxnolinear(&s) {
            Ok(r) => check(r.all_hold(), format!("maxnolinear on hb over {} n={}:\n{r}", ctx.field, ctx.n)),
            Err(e) => check(false, format!("maxnolinear error: {e}")),
        }
    }
    for ctx in [GroupContext::real(4), GroupContext::real(6), GroupContext::complex(4), GroupContext::complex(6)] {
        let hb0 = hb_subalgebra(&BMap::b0(ctx).expect("even")).expect("symplectic");
        let sp = sp1m_an(ctx, ctx.n / 2).expect("2m = n");
        check(hb0.same_span(&sp), format!("hb(B0) != sp1m over {} n={}", ctx.field, ctx.n));
    }
    // B with an F-eigenvector: only the rank condition should fail.
    let with_eig = [
        BMap::scalar(GroupContext::real(4), 1.0),
        BMap::new(GroupContext::real(4), RMat::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 3.0])).expect("2x2"),
        BMap::antilinear(GroupContext::complex(4), &RMat::identity(2, 2)).expect("2x2"),
    ];
    for b in &with_eig {
        let s = hb_subalgebra(b).expect("symplectic");
        match check_maxnolinear(&s) {
            Ok(r) => {
                let others = ["dim", "1", "2", "4", "5", "6"].iter().all(|l| r.holds(l));
                check(!r.holds("3") && others, format!("maxnolinear should fail only (3):\n{r}"));
            }
            Err(e) => check(false, format!("maxnolinear error: {e}")),
        }
    }
    for ctx in [GroupContext::real(4), GroupContext::complex(4), GroupContext::complex(5)] {
        for c in [0.1, 0.5, 1.0] {
            let s = hc_subalgebra(ctx, c);
            check(closed(&s) && s.dim() == ctx.d() * ctx.n, format!("hc({c}) closure/dim over {}", ctx.field));
            match check_bestnosquare(&s) {
                Ok(r) => check(r.all_hold(), format!("bestnosquare on hc({c}):\n{r}")),
                Err(e) => check(false, format!("bestnosquare error: {e}")),
            }
        }
    }
    let detail = if notes.is_empty() {
        "hb: 6 eigenfree B (all six conclusions hold), 3 B with eigenvectors (only (3) fails); hb(B0) = sp1m for 4 contexts; hc: 9 members, all bestnosquare conclusions hold".to_string()
    } else {
        notes.join("\n")
    };
    (ok, detail)
}

/// `hc_invariant(hc(c)) = c + 1/c` and injectivity on a 100-point sweep.
pub fn criterion_8(seed: u64) -> (bool, String) {
    let mut rng = rng_for(seed, 8);
    let ctx = GroupContext::complex(4);
    let mut err: f64 = 0.0;
    for c in [0.1, 0.25, 0.5, 1.0] {
        match hc_invariant(&hc_subalgebra(ctx, c)) {
            Ok(v) => err = err.max((v - (c + 1.0 / c)).abs()),
            Err(e) => return (false, format!("hc_invariant({c}) failed: {e}")),
        }
    }
    let mut values = Vec::new();
    for i in 1..=100 {
        let c = i as f64 / 100.0;
        match hc_invariant(&hc_subalgebra(ctx, c)) {
            Ok(v) => values.push(v),
            Err(e) => return (false, format!("hc_invariant({c}) failed: {e}")),
        }
    }
    let gap = values.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    let mut conj_err: f64 = 0.0;
    for c in [0.25, 1.0] {
        let s = hc_subalgebra(ctx, c);
        for _ in 0..3 {
            let g = random_frame_unitary(ctx, 0.5, &mut rng);
            match conjugate_in_frame(&s, &g).and_then(|t| hc_invariant(&t)) {
                Ok(v) => conj_err = conj_err.max((v - (c + 1.0 / c)).abs()),
                Err(e) => return (false, format!("conjugated fingerprint failed: {e}")),
            }
        }
    }
    let ok = err <= 1e-8 && gap > 0.0;
    (
        ok,
        format!("max |hc_invariant - (c + 1/c)| {err:.2e} (<= 1e-8); sweep strictly decreasing with min gap {gap:.3e}; after frame conjugation error {conj_err:.2e}"),
    )
}

/// Verdicts on the families, on A and slices containing it, and for odd n.
pub fn criterion_9(seed: u64) -> (bool, String) {
    let opts = VerdictOptions { seed, ..VerdictOptions::default() };
    let mut ok = true;
    let mut lines = Vec::new();
    let mut expect = |name: &str, s: &SubalgebraSpec, pred: &dyn Fn(&Verdict) -> bool| {
        let v = tessellation_verdict(s, opts).verdict;
        let good = pred(&v);
        ok &= good;
        lines.push(format!("{name}: {v}{}", if good { "" } else { " (unexpected)" }));
    };
    let yes_hb = |v: &Verdict| matches!(v, Verdict::Yes { family: Family::HB { .. } });
    let yes_hc = |v: &Verdict| matches!(v, Verdict::Yes { family: Family::Hc { .. } });
    let yes_su = |v: &Verdict| matches!(v, Verdict::Yes { family: Family::SU1n });
    let cds = |v: &Verdict| *v == Verdict::No { reason: NoReason::CdsEvidence };
    let not_yes = |v: &Verdict| !matches!(v, Verdict::Yes { .. });

    let r4 = GroupContext::real(4);
    let c4 = GroupContext::complex(4);
    expect("hb(rot90), R, n=4", &hb_subalgebra(&BMap::rotation90(r4).expect("even")).expect("symplectic"), &yes_hb);
    expect("hb(rot), C, n=4", &hb_subalgebra(&rot_c(4)).expect("symplectic"), &yes_hb);
    expect("hb(rot90), R, n=6", &hb_subalgebra(&BMap::rotation90(GroupContext::real(6)).expect("even")).expect("symplectic"), &yes_hb);
    expect("hc(0.5), C, n=4", &hc_subalgebra(c4, 0.5), &yes_hc);
    expect("hc(1), C, n=6", &hc_subalgebra(GroupContext::complex(6), 1.0), &yes_hc);
    expect("su1n, R, n=4", &su1n_an(r4), &yes_su);
    expect("a, R, n=4", &cartan_a(r4), &cds);
    expect("a, C, n=4", &cartan_a(c4), &cds);
    expect("a+n, R, n=4", &full_an(r4), &cds);
    expect("a+n, C, n=4", &full_an(c4), &cds);
    for (name, labels) in [
        ("a + D", &[RootLabel::AlphaTwoBeta, RootLabel::TwoAlphaTwoBeta, RootLabel::TwoBeta][..]),
        ("a + n_alpha + n_(alpha+beta) + n_(2alpha+2beta)", &[RootLabel::Alpha, RootLabel::AlphaBeta, RootLabel::TwoAlphaTwoBeta][..]),
    ] {
        let s = root_slice(c4, labels);
        expect(&format!("{name}, C, n=4"), &s, &cds);
    }
    for ctx in [GroupContext::real(5), GroupContext::complex(5), GroupContext::real(7)] {
        expect(&format!("su1n, {}, n={}", ctx.field, ctx.n), &su1n_an(ctx), &not_yes);
        expect(&format!("sp1m(2), {}, n={}", ctx.field, ctx.n), &sp1m_an(ctx, 2).expect("2m <= n"), &not_yes);
    }
    expect("hc(0.5), C, n=5", &hc_subalgebra(GroupContext::complex(5), 0.5), &not_yes);
    (ok, lines.join("; "))
}

/// `a` plus the listed root spaces.
fn root_slice(ctx: GroupContext, labels: &[RootLabel]) -> SubalgebraSpec {
    let l = Layout::new(&ctx);
    let mut coords = vec![0, 1];
    coords.extend(l.coords_of(labels));
    let basis = ANElement::coordinate_basis(ctx);
    let picked: Vec<_> = coords.into_iter().map(|i| basis[i].clone()).collect();
    SubalgebraSpec::new(ctx, picked, None).expect("coordinate vectors are independent")
}

pub type CriterionFn = fn(u64) -> (bool, String);

pub const CRITERIA: [CriterionFn; 9] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
];

pub fn run_one(id: u32, seed: u64) -> Option<CriterionResult> {
    let f = CRITERIA.get((id as usize).checked_sub(1)?)?;
    let start = Instant::now();
    let (passed, detail) = f(seed);
    Some(CriterionResult {
        id,
        title: TITLES[id as usize - 1].into(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs all nine checks. The total wall time is charged to check 9.
pub fn run_all(seed: u64) -> SelftestReport {
    let start = Instant::now();
    let mut criteria: Vec<CriterionResult> = (1..=9).filter_map(|id| run_one(id, seed)).collect();
    let total = start.elapsed().as_secs_f64();
    if let Some(last) = criteria.last_mut() {
        last.detail.push_str(&format!("; total selftest time {total:.1} s (<= {TOTAL_BUDGET} s)"));
        last.passed &= total <= TOTAL_BUDGET;
    }
    SelftestReport { seed, criteria, total_seconds: total }
}

pub fn format_line(c: &CriterionResult) -> String {
    format!(
        "[{}] {}. {} ({:.1} s): {}",
        if c.passed { "PASS" } else { "FAIL" },
        c.id,
        c.title,
        c.seconds,
        c.detail
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        assert!(criterion_4(0).0);
        let (ok, detail) = criterion_8(0);
        assert!(ok, "{detail}");
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(run_one(0, 0).is_none());
        assert!(run_one(10, 0).is_none());
    }
}
