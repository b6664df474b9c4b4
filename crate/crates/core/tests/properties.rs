//! Property tests for the algebraic identities of the kernel, coupled
//! spaces, operator algebra, projectors and transformations.

use braket_core::cvs::{self, IndexDirection, MetricOperator, VarVector};
use braket_core::numkernel::{self, ComplexMatrix, Tolerances};
use braket_core::opalg::{self, KindedOperator, OperatorKind};
use braket_core::projections;
use braket_core::sampling;
use braket_core::transforms::{self, BasisChange};
use braket_core::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tol() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matmul_is_associative(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let (a, b, c) = (sampling::matrix(&mut r, n, n), sampling::matrix(&mut r, n, n), sampling::matrix(&mut r, n, n));
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert!(left.approx_eq(&right, 1e-10));
    }

    #[test]
    fn adjoint_reverses_products(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let (a, b) = (sampling::matrix(&mut r, n, n), sampling::matrix(&mut r, n, n));
        let lhs = (&a * &b).conj_transpose();
        let rhs = &b.conj_transpose() * &a.conj_transpose();
        prop_assert!(lhs.approx_eq(&rhs, 1e-10));
    }

    #[test]
    fn kron_mixed_product(seed: u64) {
        let mut r = rng(seed);
        let m: Vec<ComplexMatrix> = (0..4).map(|_| sampling::matrix(&mut r, 2, 2)).collect();
        let lhs = &m[0].kron(&m[1]) * &m[2].kron(&m[3]);
        let rhs = (&m[0] * &m[2]).kron(&(&m[1] * &m[3]));
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn expm_inverse_pair(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let a = sampling::matrix(&mut r, n, n);
        let e = numkernel::expm(&a).unwrap();
        let e_neg = numkernel::expm(&-&a).unwrap();
        prop_assert!((&e * &e_neg).approx_eq(&ComplexMatrix::identity(n), 1e-9));
    }

    #[test]
    fn sylvester_inertia(seed: u64, n in 2usize..=6) {
        let mut r = rng(seed);
        let p = (seed % (n as u64 + 1)) as usize;
        let diag: Vec<f64> = (0..n).map(|k| if k < p { 1.0 } else { -1.0 }).collect();
        let h = ComplexMatrix::from_real_diag(&diag);
        let t = sampling::invertible(&mut r, n);
        let congruent = &(&t.conj_transpose() * &h) * &t;
        let s = numkernel::signature(&congruent, &tol()).unwrap();
        prop_assert_eq!((s.n_plus, s.n_minus), (p, n - p));
    }

    #[test]
    fn relate_bra_is_antilinear(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let (x, y) = (sampling::ket_down(&mut r, n), sampling::ket_down(&mut r, n));
        let (alpha, beta) = (sampling::complex(&mut r), sampling::complex(&mut r));
        let combo = x.scale(alpha).try_add(&y.scale(beta)).unwrap();
        let lhs = cvs::relate_bra(&combo).unwrap();
        let rhs = cvs::relate_bra(&x).unwrap().scale(alpha.conj())
            .try_add(&cvs::relate_bra(&y).unwrap().scale(beta.conj())).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn coupling_round_trips(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let x = sampling::ket_down(&mut r, n);
        let back = cvs::couple(&m, &cvs::couple(&m, &x).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&x) < 1e-10);
        let low = cvs::raise_lower_index(&m, &x.components, IndexDirection::Lower).unwrap();
        let up = cvs::raise_lower_index(&m, &low, IndexDirection::Raise).unwrap();
        prop_assert!(VarVector::ket_down(up).max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn dual_forms_are_hermitian(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let y = sampling::ket_down(&mut r, n);
        let x_hat = VarVector::ket_up(sampling::vector(&mut r, n));
        // <y|x^> computed with the bra-down of y, <x^|y> with the bra-up of x^
        let down_up = cvs::dual_form(&cvs::relate_bra(&y).unwrap(), &x_hat).unwrap();
        let up_down = cvs::dual_form(&cvs::relate_bra(&x_hat).unwrap(), &y).unwrap();
        prop_assert!((down_up - up_down.conj()).norm() < 1e-12);
    }

    #[test]
    fn scalar_products_are_hermitian_and_isometric(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let (x, y) = (sampling::ket_down(&mut r, n), sampling::ket_down(&mut r, n));
        let hxy = cvs::scalar_product(&m, &x, &y).unwrap();
        let hyx = cvs::scalar_product(&m, &y, &x).unwrap();
        prop_assert!((hxy - hyx.conj()).norm() < 1e-10);

        let (xh, yh) = (cvs::couple(&m, &x).unwrap(), cvs::couple(&m, &y).unwrap());
        let hat = cvs::scalar_product(&m, &xh, &yh).unwrap();
        prop_assert!((hat - hxy).norm() < 1e-9 * (1.0 + hxy.norm()));
        let hat_yx = cvs::scalar_product(&m, &yh, &xh).unwrap();
        prop_assert!((hat - hat_yx.conj()).norm() < 1e-9 * (1.0 + hat.norm()));

        // bra-up of x^ against ket-down y is the same number
        let dual = cvs::dual_form(&cvs::relate_bra(&xh).unwrap(), &y).unwrap();
        prop_assert!((dual - hxy).norm() < 1e-10 * (1.0 + hxy.norm()));
    }

    #[test]
    fn dirac_adjoint_algebra(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        for kind in OperatorKind::ALL {
            let a = sampling::operator(&mut r, n, kind);
            let b = sampling::operator(&mut r, n, kind);
            let bar_a = opalg::dirac_adjoint(&a, &m).unwrap();
            prop_assert!(opalg::dirac_adjoint(&bar_a, &m).unwrap().mat.approx_eq(&a.mat, 1e-9));

            let (alpha, beta) = (sampling::complex(&mut r), sampling::complex(&mut r));
            let combo = opalg::add(&a.scale(alpha), &b.scale(beta)).unwrap();
            let lhs = opalg::dirac_adjoint(&combo, &m).unwrap();
            let rhs = opalg::add(
                &bar_a.scale(alpha.conj()),
                &opalg::dirac_adjoint(&b, &m).unwrap().scale(beta.conj()),
            ).unwrap();
            prop_assert!(lhs.mat.approx_eq(&rhs.mat, 1e-9));
        }
    }

    #[test]
    fn hermitian_adjoint_is_involution(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        for kind in OperatorKind::ALL {
            let x = sampling::operator(&mut r, n, kind);
            prop_assert_eq!(opalg::hermitian_adjoint(&opalg::hermitian_adjoint(&x)), x);
        }
    }

    #[test]
    fn coupled_operator_keeps_trace(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let a = sampling::operator(&mut r, n, OperatorKind::DownDown);
        let hat = opalg::couple_operator(&m, &a).unwrap();
        prop_assert!((opalg::trace(&hat).unwrap() - opalg::trace(&a).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn semi_hermitian_matrix_elements(seed: u64, n in 1usize..5) {
        // eta_ik A^k_l (eta^-1)^lj = conj(A^j_i)
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let x = sampling::operator(&mut r, n, OperatorKind::DownDown);
        let bar = opalg::dirac_adjoint(&x, &m).unwrap();
        let a = opalg::add(&x, &bar).unwrap();
        prop_assert!(opalg::is_semi_hermitian(&a, &m, 1e-9).unwrap());
        let lhs = &(m.eta() * &a.mat) * m.eta_inv();
        prop_assert!(lhs.approx_eq(&a.mat.conj_transpose(), 1e-9));
    }

    #[test]
    fn unit_metric_semi_hermitian_is_hermitian(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let unit = MetricOperator::unit(n);
        let h = KindedOperator::down_down(sampling::hermitian(&mut r, n)).unwrap();
        prop_assert!(opalg::is_semi_hermitian(&h, &unit, 1e-12).unwrap());
        let g = sampling::operator(&mut r, n, OperatorKind::DownDown);
        let herm = g.mat.hermitian_deviation() < 1e-12;
        prop_assert_eq!(opalg::is_semi_hermitian(&g, &unit, 1e-12).unwrap(), herm);
    }

    #[test]
    fn perp_iff_additive_for_semi_hermitian_pairs(seed: u64, n in 2usize..5, additive: bool) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let (p, q) = sampling::semi_hermitian_pair(&mut r, &m, additive);
        let perp = projections::is_perp(&p, &q, &m, 1e-8).unwrap();
        let add = projections::is_additive(&p, &q, 1e-8).unwrap();
        prop_assert_eq!(perp, add);
        prop_assert_eq!(add, additive);
        if add {
            let eta_p = projections::coupled_subspace_metric(&p, &m, 1e-8).unwrap();
            let eta_q = projections::coupled_subspace_metric(&q, &m, 1e-8).unwrap();
            let sum = m.eta() * &(p.mat() + q.mat());
            prop_assert!(sum.approx_eq(&(&eta_p + &eta_q), 1e-8));
            prop_assert!(eta_p.hermitian_deviation() < 1e-8);
        }
    }

    #[test]
    fn transformation_preserves_signature_and_trace(seed: u64, n in 1usize..6) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let bc = BasisChange::new(sampling::invertible(&mut r, n), &tol()).unwrap();
        let m2 = transforms::transform_metric(&bc, &m, &tol()).unwrap();
        prop_assert_eq!(m2.signature(&tol()).unwrap(), m.signature(&tol()).unwrap());

        let a = sampling::operator(&mut r, n, OperatorKind::DownDown);
        let a2 = transforms::transform_operator(&bc, &a).unwrap();
        prop_assert!((opalg::trace(&a2).unwrap() - opalg::trace(&a).unwrap()).norm() < 1e-9);

        // coupling commutes with transformation
        let lhs = transforms::transform_operator(&bc, &opalg::couple_operator(&m, &a).unwrap()).unwrap();
        let rhs = opalg::couple_operator(&m2, &a2).unwrap();
        prop_assert!(lhs.mat.approx_eq(&rhs.mat, 1e-8 * (1.0 + lhs.mat.max_abs())));

        // dual bases stay dual
        prop_assert!((bc.inverse() * bc.matrix()).approx_eq(&ComplexMatrix::identity(n), 1e-10));
    }

    #[test]
    fn transformed_metric_is_metric_kind_law(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let bc = BasisChange::new(sampling::invertible(&mut r, n), &tol()).unwrap();
        let m2 = transforms::transform_metric(&bc, &m, &tol()).unwrap();
        let eta = transforms::transform_operator(&bc, &KindedOperator::metric(&m)).unwrap();
        prop_assert!(eta.mat.approx_eq(m2.eta(), 1e-10));
        let inv = transforms::transform_operator(&bc, &KindedOperator::metric_inv(&m)).unwrap();
        prop_assert!(inv.mat.approx_eq(m2.eta_inv(), 1e-8 * (1.0 + m2.eta_inv().max_abs())));
    }

    #[test]
    fn unit_metric_symmetries_are_unitaries(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let u = sampling::unitary(&mut r, n);
        prop_assert!(transforms::is_symmetry(&u, &MetricOperator::unit(n), 1e-10).unwrap());
    }

    #[test]
    fn constrained_parameters_give_symmetries(seed: u64, p in 1usize..3, q in 1usize..3) {
        let mut r = rng(seed);
        let m = MetricOperator::from_real_diag(
            &(0..p + q).map(|k| if k < p { 1.0 } else { -1.0 }).collect::<Vec<_>>(),
        ).unwrap();
        let params = sampling::gauge_params(&mut r, p + q, 0.5);
        prop_assert!(params.is_gauge(1e-15));
        let u = transforms::group_element(&params, &m).unwrap();
        prop_assert!(transforms::is_symmetry(&u, &m, 1e-8).unwrap());

        // scalar products of transformed components are invariant
        let bc = BasisChange::new(u, &tol()).unwrap();
        let (x, y) = (sampling::ket_down(&mut r, p + q), sampling::ket_down(&mut r, p + q));
        let xp = VarVector::ket_down(bc.new_components(&x.components).unwrap());
        let yp = VarVector::ket_down(bc.new_components(&y.components).unwrap());
        let m2 = transforms::transform_metric(&bc, &m, &tol()).unwrap();
        let before = cvs::scalar_product(&m, &x, &y).unwrap();
        let after = cvs::scalar_product(&m2, &xp, &yp).unwrap();
        prop_assert!((before - after).norm() < 1e-8);
        // and the metric matrix itself is unchanged
        prop_assert!(m2.eta().approx_eq(m.eta(), 1e-8));
    }

    #[test]
    fn generator_transformation(seed: u64, n in 1usize..5) {
        let mut r = rng(seed);
        let m = sampling::metric(&mut r, n);
        let bc = BasisChange::new(sampling::invertible(&mut r, n), &tol()).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let x = transforms::generator_x(i, j, &m).unwrap();
                let xt = transforms::transform_generator(&bc, &x, &m).unwrap();
                // |(i)'> <(j)'| eta with |(k)'> the k-th column of T
                let ti = ComplexMatrix::from_columns(&[bc.matrix().column(i - 1)]).unwrap();
                let tj = ComplexMatrix::from_columns(&[bc.matrix().column(j - 1)]).unwrap();
                let dual = &(&ti * &tj.conj_transpose()) * m.eta();
                prop_assert!(xt.mat.approx_eq(&dual, 1e-9));
            }
        }
    }

    #[test]
    fn symmetry_transforms_generators_by_similarity(seed: u64) {
        let mut r = rng(seed);
        let m = MetricOperator::from_real_diag(&[1.0, 1.0, -1.0]).unwrap();
        let u = transforms::group_element(&sampling::gauge_params(&mut r, 3, 0.5), &m).unwrap();
        let bc = BasisChange::new(u.clone(), &tol()).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let h = transforms::generator_h(i, j, &m).unwrap();
                let via_bar = transforms::transform_generator(&bc, &h, &m).unwrap();
                let similarity = &(&u * &h.mat) * bc.inverse();
                prop_assert!(via_bar.mat.approx_eq(&similarity, 1e-9));
            }
        }
    }
}

#[test]
fn legal_metrics_are_hermitian_and_invertible() {
    // a non-hermitian candidate metric breaks hermiticity of h(x, y)
    let mut r = rng(7);
    let n = 3;
    let candidate = sampling::invertible(&mut r, n);
    assert!(candidate.hermitian_deviation() > 1e-3);
    let h = |x: &[Complex64], y: &[Complex64], g: &ComplexMatrix| -> Complex64 {
        let gy = g.mat_vec(y).unwrap();
        x.iter().zip(&gy).map(|(a, b)| a.conj() * b).sum()
    };
    let mut violated = false;
    for _ in 0..20 {
        let (x, y) = (sampling::vector(&mut r, n), sampling::vector(&mut r, n));
        if (h(&x, &y, &candidate) - h(&y, &x, &candidate).conj()).norm() > 1e-6 {
            violated = true;
        }
    }
    assert!(violated);

    let m = sampling::metric(&mut r, n);
    for _ in 0..20 {
        let (x, y) = (sampling::vector(&mut r, n), sampling::vector(&mut r, n));
        assert!((h(&x, &y, m.eta()) - h(&y, &x, m.eta()).conj()).norm() < 1e-10);
    }
}

#[test]
fn unconstrained_parameters_break_symmetry() {
    let mut r = rng(11);
    let m = MetricOperator::from_real_diag(&[1.0, -1.0]).unwrap();
    let witness = (0..50).any(|_| {
        let params = sampling::free_params(&mut r, 2, 0.5);
        let u = transforms::group_element(&params, &m).unwrap();
        !transforms::is_symmetry(&u, &m, 1e-8).unwrap()
    });
    assert!(witness);
}

#[test]
fn dirac_adjoint_reverses_composable_products() {
    let mut r = rng(3);
    let m = sampling::metric(&mut r, 3);
    let mut checked = 0;
    for left in OperatorKind::ALL {
        for right in OperatorKind::ALL {
            if left.compose(right).is_none() {
                continue;
            }
            let a = sampling::operator(&mut r, 3, left);
            let b = sampling::operator(&mut r, 3, right);
            let ab = opalg::compose(&a, &b).unwrap();
            let lhs = opalg::dirac_adjoint(&ab, &m).unwrap();
            let bar_a = opalg::dirac_adjoint(&a, &m).unwrap();
            let bar_b = opalg::dirac_adjoint(&b, &m).unwrap();
            // cross kinds keep their kind under the adjoint, so the reversed
            // chain is only legal for endomorphisms of one space
            if bar_b.kind.compose(bar_a.kind) != Some(ab.kind) {
                assert!(left.is_cross() || right.is_cross());
                continue;
            }
            checked += 1;
            let rhs = opalg::compose(&bar_b, &bar_a).unwrap();
            assert_eq!(lhs.kind, rhs.kind);
            assert!(lhs.mat.approx_eq(&rhs.mat, 1e-9), "{left:?} . {right:?}");
        }
    }
    assert_eq!(checked, 2);
}
