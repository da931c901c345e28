mod common;

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use common::*;
use qree_core::families::{
    bell_diagonal, gen_horodecki, gvp, horodecki_type, vp_type, BellDiagonalSpec, FamilySpec, GenHorodeckiSpec,
    GvpSpec, HorodeckiTypeSpec, VpTypeSpec,
};
use qree_core::measures::{concurrence_mixed, concurrence_pure, relative_entropy};
use qree_core::qcore::{hermitian_eig, partial_transpose_matrix, DensityMatrix, Mat4};
use qree_core::sampling::{self, ppt_state, seeded};
use qree_core::schmidt::css_pure;
use qree_core::QreeError;

fn min_pt(rho: &DensityMatrix) -> f64 {
    hermitian_eig(&partial_transpose_matrix(rho.matrix())).unwrap().values[0]
}

fn assert_boundary(css: &DensityMatrix) {
    let m = min_pt(css);
    assert!((-1e-10..=1e-8).contains(&m), "min PT eigenvalue {m}");
}

#[test]
fn bell_diagonal_examples() {
    let out = bell_diagonal(&BellDiagonalSpec::new([0.1, 0.15, 0.6, 0.15]).unwrap()).unwrap();
    assert!((out.ree - 0.020135).abs() < 1e-6);
    assert!(out.css.distance(&bell_css([0.1, 0.15, 0.6, 0.15])) <= 1e-12);

    let out = bell_diagonal(&BellDiagonalSpec::new([0.0, 0.0, 1.0, 0.0]).unwrap()).unwrap();
    assert!((out.ree - LN_2).abs() < 1e-12);
    assert!(out.css.distance(&density(Mat4::from_real_diag([0.0, 0.5, 0.5, 0.0]))) <= 1e-12);

    let e = bell_diagonal(&BellDiagonalSpec::new([0.25; 4]).unwrap()).unwrap_err();
    assert!(matches!(e, QreeError::Separable(_)));
}

#[test]
fn bell_diagonal_any_label_order() {
    for l in [[0.6, 0.1, 0.2, 0.1], [0.1, 0.7, 0.1, 0.1], [0.05, 0.1, 0.05, 0.8]] {
        let out = bell_diagonal(&BellDiagonalSpec::new(l).unwrap()).unwrap();
        assert!(out.rho.distance(&bell_mixture(l)) <= 1e-14);
        assert!(out.css.distance(&bell_css(l)) <= 1e-12, "{l:?}");
        let top = l.iter().cloned().fold(0.0, f64::max);
        assert!((out.ree - (LN_2 - h(top))).abs() <= 1e-12);
    }
}

#[test]
fn gvp_examples() {
    let out = gvp(&GvpSpec::new([0.5, 0.3, 0.2]).unwrap()).unwrap();
    assert!(out.css.distance(&density(Mat4::from_real_diag([0.0, 0.55, 0.45, 0.0]))) <= 1e-12);
    assert!((out.ree - 0.131309).abs() < 1e-6, "{}", out.ree);
    assert!((out.ree - gvp_ree([0.5, 0.3, 0.2])).abs() < 1e-12);

    let out = gvp(&GvpSpec::new([1.0, 0.0, 0.0]).unwrap()).unwrap();
    assert!((out.ree - LN_2).abs() < 1e-12);

    let spec = GvpSpec::new([0.5, 0.25, 0.25]).unwrap();
    assert!((spec.eigenvalues()[0] - 0.75).abs() < 1e-12);
    assert!((gvp(&spec).unwrap().ree - (h(0.5) - h(0.75))).abs() < 1e-12);

    assert!(matches!(gvp(&GvpSpec::new([0.0, 0.6, 0.4]).unwrap()), Err(QreeError::Separable(_))));
}

#[test]
fn gen_horodecki_examples() {
    let out = gen_horodecki(&GenHorodeckiSpec::new([0.8, 0.1, 0.1]).unwrap()).unwrap();
    assert!((out.ree - 0.192744).abs() < 1e-6, "{}", out.ree);
    assert!(out.css.distance(&gh_css([0.8, 0.1, 0.1])) <= 1e-12);

    let out = gen_horodecki(&GenHorodeckiSpec::new([1.0, 0.0, 0.0]).unwrap()).unwrap();
    assert!((out.ree - LN_2).abs() < 1e-12);

    // just above the separability threshold 2√0.06 ≈ 0.4899
    let out = gen_horodecki(&GenHorodeckiSpec::new([0.5, 0.3, 0.2]).unwrap()).unwrap();
    assert!((out.ree - gh_ree([0.5, 0.3, 0.2])).abs() < 1e-12);
    assert!(out.ree > 0.0 && out.ree < 1e-4, "{}", out.ree);
    assert!((out.ree - relative_entropy(&out.rho, &out.css).value()).abs() < 1e-9);

    let e = gen_horodecki(&GenHorodeckiSpec::new([0.4, 0.3, 0.3]).unwrap()).unwrap_err();
    assert!(matches!(e, QreeError::Separable(_)));
}

#[test]
fn gen_horodecki_intermediates() {
    let l = [0.6, 0.3, 0.1];
    let spec = GenHorodeckiSpec::new(l).unwrap();
    assert!((spec.r() - gh_r2(l).sqrt()).abs() < 1e-14);
    assert!((spec.x() - gh_x(l)).abs() < 1e-14);
    assert!(spec.sigma_tilde().distance(&gh_sigma_tilde(l)) < 1e-14);
    for theta in [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0] {
        assert!(spec.member_css(theta).distance(&css_pure(&spec.member(theta))) <= 1e-10);
    }
}

#[test]
fn vp_type_examples() {
    let spec = VpTypeSpec::new(0.7, 0.3, 0.4).unwrap();
    let out = vp_type(&spec).unwrap();
    assert!(out.css.distance(&vpt_css(0.7, 0.3)) <= 1e-14);
    let root = 0.8f64.sqrt();
    let lp = |p: f64| p * p.ln();
    let want = lp((1.0 + root) / 2.0) + lp((1.0 - root) / 2.0) - (0.7 * 0.7f64.ln() + 0.3 * 0.3f64.ln());
    assert!((out.ree - want).abs() < 1e-12);
    assert!((out.ree - 0.404224).abs() < 1e-6, "{}", out.ree);

    let out = vp_type(&VpTypeSpec::new(0.5, 0.5, 0.5).unwrap()).unwrap();
    assert!((out.ree - LN_2).abs() < 1e-12);

    let spec = VpTypeSpec::new(0.7, 0.3, 0.0).unwrap();
    assert!(spec.ree().abs() < 1e-15);
    assert_eq!(spec.css(), spec.density());

    assert!(matches!(VpTypeSpec::new(0.7, 0.3, 0.5), Err(QreeError::InvalidSpec(_))));
    assert!(matches!(VpTypeSpec::new(0.3, 0.7, 0.2), Err(QreeError::InvalidSpec(_))));
}

#[test]
fn vp_type_member_css() {
    // each member's CSS is diagonal on |01⟩, |10⟩ and the mixture is diag(0, A2, A3, 0)
    let spec = VpTypeSpec::new(0.7, 0.3, 0.4).unwrap();
    let e = spec.ensemble().unwrap();
    let listed = spec.member_css();
    let mut mix = Mat4::zeros();
    for ((p, psi), want) in e.members().iter().zip(&listed) {
        let got = css_pure(psi);
        assert!(got.distance(want) <= 1e-10);
        let m = got.matrix();
        assert!(m.0[0][0].norm() < 1e-12 && m.0[3][3].norm() < 1e-12 && m.0[1][2].norm() < 1e-12);
        mix = mix + m.scale(*p);
    }
    assert!((mix - *vpt_css(0.7, 0.3).matrix()).max_abs() <= 1e-10);
}

#[test]
fn horodecki_type_failure_example() {
    let (a1, a4, a, d) = (0.2, 0.1, 0.35, 0.3);
    let spec = HorodeckiTypeSpec::new(a1, a4, a, d).unwrap();
    let out = horodecki_type(&spec).unwrap();
    let truth = ht_true_css(a1, a4, a, d);
    assert!(out.true_css.distance(&truth) <= 1e-12);
    assert!((truth.matrix().trace().re - 1.0).abs() < 1e-12);
    let t = spec.true_css_entries();
    assert!((t.coherence - (t.p00 * t.p11).sqrt()).abs() <= 1e-12);
    assert_boundary(&out.true_css);
    assert!(spec.pi_tilde().distance(&ht_pi_tilde(a1, a4, a, d)) <= 1e-12);

    let gap = out.procedure_css_candidate.distance(&out.true_css);
    assert!(gap > 1e-4, "{gap}");
    let s_candidate = relative_entropy(&out.rho, &out.procedure_css_candidate).value();
    let s_true = relative_entropy(&out.rho, &out.true_css).value();
    assert!(s_candidate > s_true);
}

#[test]
fn horodecki_type_member_css_mix_to_pi_tilde() {
    let spec = HorodeckiTypeSpec::new(0.2, 0.1, 0.35, 0.3).unwrap();
    let listed = [spec.member_css(true, 0.0), spec.member_css(true, PI), spec.member_css(false, PI / 2.0), spec.member_css(false, -PI / 2.0)];
    let members = [spec.member(true, 0.0), spec.member(true, PI), spec.member(false, PI / 2.0), spec.member(false, -PI / 2.0)];
    let mut mix = Mat4::zeros();
    for (psi, css) in members.iter().zip(&listed) {
        assert!(css_pure(psi).distance(css) <= 1e-10);
        mix = mix + css.matrix().scale(0.25);
    }
    assert!((mix - *ht_pi_tilde(0.2, 0.1, 0.35, 0.3).matrix()).max_abs() <= 1e-10);
}

#[test]
fn horodecki_type_reduces_to_gen_horodecki() {
    // A = D = λ1/2, A1 = λ2, A4 = λ3
    let l = [0.6, 0.3, 0.1];
    let spec = HorodeckiTypeSpec::new(0.3, 0.1, 0.3, 0.3).unwrap();
    assert!(spec.pi_tilde().distance(&gh_sigma_tilde(l)) <= 1e-8);
    assert!((spec.x_star().unwrap() - gh_x(l)).abs() <= 1e-8);
    let out = horodecki_type(&spec).unwrap();
    assert!(out.procedure_css_candidate.distance(&gh_css(l)) <= 1e-8);
    assert!(out.true_css.distance(&gh_css(l)) <= 1e-8);
}

#[test]
fn horodecki_type_errors() {
    assert!(matches!(horodecki_type(&HorodeckiTypeSpec::new(0.25, 0.25, 0.25, 0.2).unwrap()), Err(QreeError::Separable(_))));
    assert!(matches!(HorodeckiTypeSpec::new(0.2, 0.1, 0.35, 0.4), Err(QreeError::InvalidSpec(_))));
    assert!(matches!(HorodeckiTypeSpec::new(0.2, 0.2, 0.35, 0.3), Err(QreeError::InvalidSpec(_))));
}

#[test]
fn horodecki_type_failure_sweep() {
    let mut rng = seeded(6);
    for _ in 0..20 {
        let spec = sampling::horodecki_type_generic(&mut rng);
        let out = horodecki_type(&spec).unwrap();
        let s_candidate = relative_entropy(&out.rho, &out.procedure_css_candidate).value();
        let s_true = relative_entropy(&out.rho, &out.true_css).value();
        assert!(s_candidate - s_true > 0.0, "{spec:?}");
        assert!(out.procedure_css_candidate.distance(&out.true_css) > 1e-4, "{spec:?}");
    }
}

#[test]
fn closed_forms_are_consistent_boundary_states() {
    let mut rng = seeded(21);
    for _ in 0..50 {
        let outcomes = [
            bell_diagonal(&sampling::bell_diagonal(&mut rng)).unwrap(),
            gvp(&sampling::gvp(&mut rng)).unwrap(),
            gen_horodecki(&sampling::gen_horodecki(&mut rng)).unwrap(),
            vp_type(&sampling::vp_type(&mut rng)).unwrap(),
        ];
        for out in &outcomes {
            assert_boundary(&out.css);
            assert!((out.ree - relative_entropy(&out.rho, &out.css).value()).abs() <= 1e-9);
        }
        let ht = horodecki_type(&sampling::horodecki_type(&mut rng)).unwrap();
        assert_boundary(&ht.true_css);
        assert!(min_pt(&ht.procedure_css_candidate) >= -1e-9);
    }
}

#[test]
fn family_outcomes_match_reference_constructions() {
    let mut rng = seeded(22);
    for _ in 0..50 {
        let l = sampling::gvp(&mut rng).lambdas();
        let out = gvp(&GvpSpec::new(l).unwrap()).unwrap();
        assert!(out.rho.distance(&gvp_density(l)) <= 1e-14 && out.css.distance(&gvp_css(l)) <= 1e-14);
        assert!((out.ree - gvp_ree(l)).abs() <= 1e-9);

        let l = sampling::gen_horodecki(&mut rng).lambdas();
        let out = gen_horodecki(&GenHorodeckiSpec::new(l).unwrap()).unwrap();
        assert!(out.rho.distance(&gh_density(l)) <= 1e-14 && out.css.distance(&gh_css(l)) <= 1e-12);
        assert!((out.ree - gh_ree(l)).abs() <= 1e-9);
    }
}

#[test]
fn explicit_ensembles_share_the_concurrence() {
    let mut rng = seeded(23);
    for _ in 0..50 {
        let specs = [
            FamilySpec::BellDiagonal(sampling::bell_diagonal(&mut rng)),
            FamilySpec::GenHorodecki(sampling::gen_horodecki(&mut rng)),
            FamilySpec::VpType(sampling::vp_type(&mut rng)),
            FamilySpec::HorodeckiType(sampling::horodecki_type(&mut rng)),
        ];
        for spec in specs {
            let c = concurrence_mixed(&spec.density());
            let e = spec.explicit_ensemble().unwrap();
            assert!(e.residual(&spec.density()) <= 1e-10);
            for (_, psi) in e.members() {
                assert!((concurrence_pure(psi) - c).abs() <= 1e-9, "{spec:?}");
            }
        }
    }
}

#[test]
fn closed_form_beats_random_separable_states() {
    let mut rng = seeded(24);
    let witnesses: Vec<DensityMatrix> = (0..200).map(|_| ppt_state(&mut rng)).collect();
    for _ in 0..50 {
        let specs = [
            FamilySpec::BellDiagonal(sampling::bell_diagonal(&mut rng)),
            FamilySpec::Gvp(sampling::gvp(&mut rng)),
            FamilySpec::GenHorodecki(sampling::gen_horodecki(&mut rng)),
            FamilySpec::VpType(sampling::vp_type(&mut rng)),
        ];
        for spec in specs {
            let rho = spec.density();
            let best = relative_entropy(&rho, &spec.closed_form_css().unwrap()).value();
            for sigma in &witnesses {
                assert!(best <= relative_entropy(&rho, sigma).value() + 1e-9, "{spec:?}");
            }
        }
    }
}

#[test]
fn parameter_maps_round_trip() {
    let mut rng = seeded(25);
    let specs = [
        FamilySpec::BellDiagonal(sampling::bell_diagonal(&mut rng)),
        FamilySpec::Gvp(sampling::gvp(&mut rng)),
        FamilySpec::GenHorodecki(sampling::gen_horodecki(&mut rng)),
        FamilySpec::VpType(sampling::vp_type(&mut rng)),
        FamilySpec::HorodeckiType(sampling::horodecki_type(&mut rng)),
    ];
    for spec in specs {
        assert_eq!(FamilySpec::from_params(spec.name(), &spec.params()).unwrap(), spec);
    }
    let mut params: BTreeMap<String, f64> = [("lambda1", 0.5), ("lambda2", 0.3), ("lambda3", 0.2)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    assert!(FamilySpec::from_params("gvp", &params).is_ok());
    assert!(matches!(FamilySpec::from_params("werner", &params), Err(QreeError::InvalidSpec(_))));
    params.insert("lambda4".into(), 0.0);
    assert!(matches!(FamilySpec::from_params("gvp", &params), Err(QreeError::InvalidSpec(_))));
    params.remove("lambda4");
    params.remove("lambda3");
    assert!(matches!(FamilySpec::from_params("gvp", &params), Err(QreeError::InvalidSpec(_))));
}
