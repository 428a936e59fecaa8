use std::f64::consts::{PI, TAU};

use nksl2r_core::algebra::{minkowski_inner, Mat2, SPLIT_I, SPLIT_J, SPLIT_K};
use nksl2r_core::calculus::{classify_operator, TypeLabel};
use nksl2r_core::catalog::{
    angle_params, null_frame_p, reduce_angle, solve_type_i, solve_type_iv, type_table, BOUNDARY_TOL,
};
use nksl2r_core::manifold::{h31_chart, h31_inner, h31_linear, lie, Chart, Isometry};
use nksl2r_core::verifier::check_identity_suite;
use nksl2r_core::Pair;
use proptest::prelude::*;

fn alg() -> impl Strategy<Value = Mat2> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b, c)| SPLIT_I * a + SPLIT_J * b + SPLIT_K * c)
}

fn pair() -> impl Strategy<Value = Pair> {
    (alg(), alg()).prop_map(|(a, b)| Pair::new(a, b))
}

fn group() -> impl Strategy<Value = Mat2> {
    (-0.8..0.8f64, -0.8..0.8f64, -0.8..0.8f64).prop_map(|(a, b, c)| (SPLIT_I * a + SPLIT_J * b + SPLIT_K * c).exp())
}

fn scale(zs: &[&Pair]) -> f64 {
    zs.iter().map(|z| 1.0 + z.max_abs()).product()
}

proptest! {
    #[test]
    fn j_is_a_compatible_complex_structure(z in pair(), w in pair()) {
        prop_assert!((lie::j(&lie::j(&z)) + z).max_abs() <= 1e-12 * scale(&[&z]));
        let d = lie::metric(&lie::j(&z), &lie::j(&w)) - lie::metric(&z, &w);
        prop_assert!(d.abs() <= 1e-12 * scale(&[&z, &w]));
    }

    #[test]
    fn p_is_a_symmetric_involution_anticommuting_with_j(z in pair(), w in pair()) {
        prop_assert!((lie::p(&lie::p(&z)) - z).max_abs() <= 1e-12 * scale(&[&z]));
        prop_assert!((lie::p(&lie::j(&z)) + lie::j(&lie::p(&z))).max_abs() <= 1e-12 * scale(&[&z]));
        let d = lie::metric(&lie::p(&z), &w) - lie::metric(&z, &lie::p(&w));
        prop_assert!(d.abs() <= 1e-12 * scale(&[&z, &w]));
    }

    #[test]
    fn g_tensor_is_skew_and_j_antilinear(x in pair(), y in pair(), z in pair()) {
        let t = 1e-11 * scale(&[&x, &y, &z]);
        prop_assert!((lie::tensor_g(&x, &y) + lie::tensor_g(&y, &x)).max_abs() <= t);
        prop_assert!((lie::tensor_g(&x, &lie::j(&y)) + lie::j(&lie::tensor_g(&x, &y))).max_abs() <= t);
        let m = lie::metric(&lie::tensor_g(&x, &y), &z) + lie::metric(&lie::tensor_g(&x, &z), &y);
        prop_assert!(m.abs() <= t);
    }

    #[test]
    fn g_norm_matches_closed_form(x in pair(), y in pair()) {
        let g = lie::metric;
        let gg = lie::tensor_g(&x, &y);
        let rhs = -(2.0 / 3.0) * (g(&x, &x) * g(&y, &y) - g(&x, &y).powi(2) - g(&lie::j(&x), &y).powi(2));
        prop_assert!((g(&gg, &gg) - rhs).abs() <= 1e-11 * scale(&[&x, &x, &y, &y]));
    }

    #[test]
    fn curvature_has_the_algebraic_symmetries(x in pair(), y in pair(), z in pair(), w in pair()) {
        let r = lie::curvature4;
        let t = 1e-10 * scale(&[&x, &y, &z, &w]);
        prop_assert!((r(&x, &y, &z, &w) + r(&y, &x, &z, &w)).abs() <= t);
        prop_assert!((r(&x, &y, &z, &w) - r(&z, &w, &x, &y)).abs() <= t);
        let bianchi = lie::curvature(&x, &y, &z) + lie::curvature(&y, &z, &x) + lie::curvature(&z, &x, &y);
        prop_assert!(bianchi.max_abs() <= t);
    }

    #[test]
    fn translations_are_holomorphic_isometries(a in group(), b in group(), c in group(), z in pair(), w in pair()) {
        let f = Isometry::translate(a, b, c).unwrap();
        let (dz, dw) = (f.differential(&z), f.differential(&w));
        let t = 1e-10 * scale(&[&z, &w]) * (1.0 + c.max_abs()).powi(4);
        prop_assert!((lie::metric(&dz, &dw) - lie::metric(&z, &w)).abs() <= t);
        prop_assert!((f.differential(&lie::j(&z)) - lie::j(&dz)).max_abs() <= t);
    }

    #[test]
    fn charts_land_in_sl2(m in group()) {
        // F2 inverts to (a11, a12, a21, −a22)
        let x = [m.a11, m.a12, m.a21, -m.a22];
        prop_assert!((h31_inner(Chart::F2, &x, &x) + 1.0).abs() < 1e-9);
        let e = h31_chart(&x, Chart::F2).unwrap().mat();
        prop_assert!((e - m).max_abs() < 1e-12);
        prop_assert!((minkowski_inner(&h31_linear(Chart::F1, &[1.0, 0.0, 0.0, 0.0]), &Mat2::IDENTITY) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn reduced_angles_lie_in_one_turn(phi in -50.0..50.0f64) {
        let r = reduce_angle(phi);
        prop_assert!((0.0..TAU).contains(&r));
        prop_assert_eq!(reduce_angle(r), r);
    }

    #[test]
    fn type_table_is_constant_between_multiples_of_pi_over_3(k in 0usize..6, t in 0.001..0.999f64) {
        let lo = k as f64 * PI / 3.0;
        let mid = type_table(lo + PI / 6.0);
        prop_assert_eq!(type_table(lo + t * PI / 3.0), mid);
    }

    #[test]
    fn swapping_factors_mirrors_the_angle(phi in 0.0..TAU) {
        let (p, q) = type_table(phi);
        prop_assert_eq!(type_table(PI - phi), (q, p));
    }

    #[test]
    fn type_i_congruency_roots(a in (PI / 3.0 + 1e-3)..(2.0 * PI / 3.0 - 1e-3)) {
        let (lp, lm) = solve_type_i(a).unwrap();
        for l in [lp, lm] {
            let lhs = 3.0 * (1.0 + l * l).powi(2);
            let rhs = 16.0 * l * l * a.sin().powi(2);
            prop_assert!((lhs - rhs).abs() < 1e-9 * lhs);
        }
        prop_assert!((lp * lm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn type_iv_congruency_root(a in -1.0..1.0f64) {
        prop_assume!(2.0 * a.sin().abs() / 3f64.sqrt() < 0.999);
        let al = solve_type_iv(a).unwrap();
        prop_assert!((3.0 * (2.0 * al).tanh().powi(2) - 4.0 * a.sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn canonical_forms_classify(a in -3.0..3.0f64, b in 0.1..3.0f64) {
        let lor = [[1.0, 0.0], [0.0, -1.0]];
        prop_assert_eq!(classify_operator(&[[a, 0.0], [0.0, a + b]], &lor, None).unwrap(), TypeLabel::I);
        prop_assert_eq!(classify_operator(&[[a, -b], [b, a]], &lor, None).unwrap(), TypeLabel::IV);
        let null = [[0.0, 1.0], [1.0, 0.0]];
        prop_assert_eq!(classify_operator(&[[a, 0.0], [b, a]], &null, None).unwrap(), TypeLabel::II);
        prop_assert_eq!(classify_operator(&[[a, 0.0], [0.0, a]], &null, None).unwrap(), TypeLabel::I);
    }

    #[test]
    fn null_frame_rows_are_null(phi in 0.0..TAU) {
        let ap = angle_params(phi);
        prop_assume!((1.0 + 2.0 * ap.psi.cos()).abs() > 1e-3);
        let f = null_frame_p(ap.r);
        // ⟨dX,dX⟩ = ½, ⟨dJX,dJX⟩ = −½, ⟨dX,dJX⟩ = −√3/2
        let q = |u: [f64; 2], v: [f64; 2]| {
            0.5 * u[0] * v[0] - 0.5 * u[1] * v[1] - 0.75f64.sqrt() * (u[0] * v[1] + u[1] * v[0])
        };
        prop_assert!(q(f[0], f[0]).abs() < 1e-12 * (1.0 + ap.r * ap.r));
        prop_assert!(q(f[1], f[1]).abs() < 1e-12 * (1.0 + 1.0 / (ap.r * ap.r)));
        prop_assert!((q(f[0], f[1]) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn identity_suite_is_deterministic() {
    let a = check_identity_suite(9, 50).unwrap();
    let b = check_identity_suite(9, 50).unwrap();
    assert_eq!(a, b);
    assert!(a.verdict);
}

#[test]
fn boundary_angles_are_type_ii() {
    for k in 0..6 {
        let phi = k as f64 * PI / 3.0 + 0.1 * BOUNDARY_TOL;
        let (p, q) = type_table(phi);
        assert!(p == TypeLabel::II || q == TypeLabel::II, "phi = {phi}");
    }
}
