use proptest::prelude::*;

use cartankit::ancoords::RootLabel;
use cartankit::classifier::{check_maxnolinear, hc_invariant, recognize_family, Family};
use cartankit::families::{hb_subalgebra, hc_subalgebra, sp1m_an, su1n_an, BMap};
use cartankit::growth::{classify_growth, CurveSpec, GrowthBands};
use cartankit::io::{spec_from_json, spec_to_json};
use cartankit::linalg::RMat;
use cartankit::sampling::{random_an, random_combination, random_group, random_k, random_nilpotent, seeded};
use cartankit::scalars::{conj, dagger, max_abs};
use cartankit::sunf::{membership_defect, mu, rho_norm, sup_norm, CartanPoint};
use cartankit::{ANElement, CMat, FieldTag, GroupContext, Scalar, SubalgebraSpec};

fn ctx_strategy() -> impl Strategy<Value = GroupContext> {
    (prop_oneof![Just(FieldTag::Real), Just(FieldTag::Complex)], 3usize..=7)
        .prop_map(|(f, n)| GroupContext::new(f, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_and_dagger_are_involutions(re in -1e3..1e3f64, im in -1e3..1e3f64, seed in any::<u64>()) {
        let z = Scalar::new(re, im);
        prop_assert_eq!(conj(conj(z)), z);
        prop_assert!((z * conj(z)).im.abs() <= 1e-9 * z.norm_sqr().max(1.0));
        let mut rng = seeded(seed);
        let a = random_group(GroupContext::complex(3), 0.5, &mut rng).entries;
        let b = random_group(GroupContext::complex(3), 0.5, &mut rng).entries;
        prop_assert_eq!(dagger(&dagger(&a)), a.clone());
        prop_assert!(max_abs(&(dagger(&(&a * &b)) - dagger(&b) * dagger(&a))) < 1e-12);
    }

    #[test]
    fn matrix_round_trip_and_form(ctx in ctx_strategy(), seed in any::<u64>()) {
        let u = random_an(ctx, &mut seeded(seed));
        let m = u.to_matrix();
        let j = ctx.j();
        prop_assert!(max_abs(&(&m * &j + &j * m.adjoint())) < 1e-12);
        let back = ANElement::from_matrix(ctx, &m, 1e-9).unwrap();
        prop_assert!(back.max_abs_diff(&u) == 0.0);
    }

    #[test]
    fn bracket_is_bilinear_and_alternating(ctx in ctx_strategy(), seed in any::<u64>(), s in -3.0..3.0f64) {
        let mut rng = seeded(seed);
        let (u, v, w) = (random_an(ctx, &mut rng), random_an(ctx, &mut rng), random_an(ctx, &mut rng));
        prop_assert!(u.bracket(&u).norm() < 1e-12);
        prop_assert!((u.bracket(&v) + v.bracket(&u)).norm() < 1e-12);
        let lhs = (u.clone() * s + v.clone()).bracket(&w);
        let rhs = u.bracket(&w) * s + v.bracket(&w);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn root_spaces_grade_the_bracket(ctx in ctx_strategy(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let u = random_nilpotent(ctx, &mut rng);
        let v = random_nilpotent(ctx, &mut rng);
        let mut total = ANElement::zero(ctx);
        for r in RootLabel::ALL {
            total = total + u.root_component(r);
        }
        prop_assert!(total.max_abs_diff(&u) < 1e-15);
        for r in RootLabel::ALL {
            for q in RootLabel::ALL {
                let (a, b) = (u.root_component(r), v.root_component(q));
                let br = a.bracket(&b);
                let (ra, rb) = (r.coefficients(), q.coefficients());
                match RootLabel::from_coefficients(ra.0 + rb.0, ra.1 + rb.1) {
                    Some(sum) if r != RootLabel::Zero && q != RootLabel::Zero => {
                        prop_assert!(br.max_abs_diff(&br.root_component(sum)) < 1e-12);
                    }
                    None => prop_assert!(br.norm() < 1e-12),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn exponentials_land_in_the_group(ctx in ctx_strategy(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let u = random_nilpotent(ctx, &mut rng);
        let g = u.exp_closed().unwrap();
        prop_assert!(membership_defect(&g.entries, &ctx).unwrap() <= 1e-9 * max_abs(&g.entries).powi(2));
        let w = random_an(ctx, &mut rng) * 0.5;
        let h = w.exp_general();
        prop_assert!(membership_defect(&h.entries, &ctx).unwrap() <= 1e-9 * max_abs(&h.entries).powi(2));
        let direct = u.conjugate_by_exp(&w.nilpotent_part()).unwrap();
        let e = w.nilpotent_part().exp_series();
        let einv = (w.nilpotent_part() * -1.0).exp_series();
        let oracle = ANElement::from_matrix(ctx, &(einv * u.to_matrix() * e), 1e-8).unwrap();
        prop_assert!(direct.max_abs_diff(&oracle) < 1e-9 * (1.0 + oracle.norm()));
    }

    #[test]
    fn cartan_projection_is_bi_invariant(ctx in ctx_strategy(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let g = random_group(ctx, 1.0, &mut rng);
        let (k1, k2) = (random_k(ctx, &mut rng), random_k(ctx, &mut rng));
        let p = mu(&g).unwrap();
        let q = mu(&k1.mul(&g).mul(&k2)).unwrap();
        let r = mu(&g.inverse()).unwrap();
        prop_assert!((p.a11 - q.a11).abs() <= 1e-8 * p.a11 && (p.a22 - q.a22).abs() <= 1e-8 * p.a22);
        prop_assert!((p.a11 - r.a11).abs() <= 1e-8 * p.a11 && (p.a22 - r.a22).abs() <= 1e-8 * p.a22);
        // Norms are comparable to the Cartan projection up to constants in n.
        let c = ((ctx.n + 2) * (ctx.n + 2)) as f64;
        let s = sup_norm(&g.entries);
        prop_assert!(p.a11 / s >= 1.0 / c && p.a11 / s <= c);
        let ratio = p.a22 * s / rho_norm(&g.entries);
        prop_assert!(ratio >= 1.0 / c && ratio <= c);
        let si = sup_norm(&g.inverse().entries);
        prop_assert!(s / si <= c && si / s <= c);
    }

    #[test]
    fn norms_on_the_chamber_are_exact(a22 in 1.0..50.0f64, extra in 1.0..50.0f64, n in 3usize..8) {
        let a11 = a22 * extra;
        let g = CartanPoint::new(a11, a22).unwrap().to_group(GroupContext::real(n)).entries;
        prop_assert_eq!(sup_norm(&g), a11);
        prop_assert_eq!(rho_norm(&g), a11 * a22);
    }

    #[test]
    fn spec_json_round_trip(ctx in ctx_strategy(), seed in any::<u64>(), k in 1usize..4) {
        let mut rng = seeded(seed);
        let elems: Vec<_> = (0..k).map(|_| random_an(ctx, &mut rng)).collect();
        let s = SubalgebraSpec::new(ctx, elems, Some("random".into())).unwrap();
        prop_assert_eq!(spec_from_json(&spec_to_json(&s)).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hc_is_recognized_and_fingerprinted(c in 0.02..1.0f64, d in 0.02..1.0f64) {
        let ctx = GroupContext::complex(4);
        let s = hc_subalgebra(ctx, c);
        match recognize_family(&s) {
            Some(Family::Hc { c: got }) => prop_assert!((got - c).abs() < 1e-9),
            other => prop_assert!(false, "{:?}", other),
        }
        let (vc, vd) = (hc_invariant(&s).unwrap(), hc_invariant(&hc_subalgebra(ctx, d)).unwrap());
        prop_assert!((vc - (c + 1.0 / c)).abs() < 1e-8);
        if (c - d).abs() > 1e-6 {
            prop_assert!((vc - vd).abs() > 0.0);
        }
    }

    #[test]
    fn hb_over_r_recognition_and_maxnolinear(b in prop::array::uniform4(-2.0..2.0f64)) {
        let ctx = GroupContext::real(4);
        let m = RMat::from_row_slice(2, 2, &b);
        let bmap = BMap::new(ctx, m.clone()).unwrap();
        let s = hb_subalgebra(&bmap).unwrap();
        match recognize_family(&s) {
            Some(Family::HB { b: got }) => prop_assert!((got.entries - &m).norm() < 1e-8),
            other => prop_assert!(false, "{:?}", other),
        }
        // A real 2x2 matrix has no real eigenvalue iff its discriminant is negative.
        let disc = (b[0] - b[3]).powi(2) + 4.0 * b[1] * b[2];
        prop_assume!(disc.abs() > 1e-3);
        let rep = check_maxnolinear(&s).unwrap();
        prop_assert_eq!(rep.all_hold(), disc < 0.0, "{}", rep);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn growth_class_survives_conjugation(seed in any::<u64>(), which in 0usize..2) {
        let ctx = GroupContext::complex(4);
        let s = if which == 0 { su1n_an(ctx) } else { sp1m_an(ctx, 2).unwrap() };
        let mut rng = seeded(seed);
        let gen = random_combination(&s.basis, &mut rng).unwrap();
        let g = random_group(ctx, 0.5, &mut rng);
        let bands = GrowthBands::default();
        let plain = classify_growth(&CurveSpec::new(gen.clone()).unwrap(), bands).unwrap();
        let conj = classify_growth(&CurveSpec::new(gen).unwrap().conjugated(g), bands).unwrap();
        prop_assert_eq!(plain, conj);
    }
}

#[test]
fn identity_matrix_passes_membership() {
    let ctx = GroupContext::complex(4);
    let id = CMat::identity(6, 6);
    assert_eq!(membership_defect(&id, &ctx).unwrap(), 0.0);
}
