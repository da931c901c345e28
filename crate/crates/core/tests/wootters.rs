mod common;

use common::*;
use proptest::prelude::*;
use qree_core::measures::{concurrence_mixed, concurrence_pure, eof, eof_from_concurrence, PureState};
use qree_core::qcore::DensityMatrix;
use qree_core::sampling::{bell_diagonal, density as random_density, gen_horodecki, gvp, horodecki_type, seeded, vp_type};
use qree_core::wootters::{optimal_decomposition, validate_optimal, Ensemble};
use qree_core::QreeError;

fn check_optimal(rho: &DensityMatrix, e: &Ensemble, c: f64) {
    assert!(e.len() <= 4);
    assert!(e.residual(rho) <= 1e-10, "residual {}", e.residual(rho));
    for (p, psi) in e.members() {
        assert!(*p >= 0.0);
        assert!((concurrence_pure(psi) - c).abs() <= 1e-9, "{} vs {c}", concurrence_pure(psi));
    }
}

#[test]
fn bell_diagonal_decomposition() {
    let l = [0.1, 0.1, 0.6, 0.2];
    let rho = bell_mixture(l);
    check_optimal(&rho, &optimal_decomposition(&rho).unwrap(), 0.2);
    let e = bell_ensemble(l);
    assert_eq!(e.len(), 4);
    check_optimal(&rho, &e, 0.2);
    assert!(validate_optimal(&rho, &e).passes(1e-10));
}

#[test]
fn gvp_decomposition() {
    let rho = gvp_density([0.5, 0.3, 0.2]);
    check_optimal(&rho, &optimal_decomposition(&rho).unwrap(), 0.5);
    // the printed pair: two members of weight 1/2 inside span{|01⟩, |10⟩}
    let spec = qree_core::families::GvpSpec::new([0.5, 0.3, 0.2]).unwrap();
    let e = spec.ensemble().unwrap();
    assert_eq!(e.len(), 2);
    for (p, psi) in e.members() {
        assert_eq!(*p, 0.5);
        let a = psi.amplitudes();
        assert!(a[0].norm() < 1e-12 && a[3].norm() < 1e-12);
    }
    assert!(e.residual(&rho) <= 1e-12);
}

#[test]
fn gen_horodecki_decomposition() {
    let l = [0.8, 0.1, 0.1];
    let rho = gh_density(l);
    check_optimal(&rho, &optimal_decomposition(&rho).unwrap(), 0.6);
    let explicit = gh_ensemble(l);
    assert_eq!(explicit.len(), 3);
    check_optimal(&rho, &explicit, 0.6);
    assert!(validate_optimal(&rho, &explicit).passes(1e-10));
}

#[test]
fn eigen_ensemble_is_not_optimal() {
    let rho = bell_mixture([0.1, 0.1, 0.6, 0.2]);
    let eig = rho.eigen();
    let members = (0..4)
        .filter(|&k| eig.values[k] > 1e-12)
        .map(|k| (eig.values[k], PureState::new(eig.vectors[k]).unwrap()))
        .collect();
    let e = Ensemble::new(members).unwrap();
    let report = validate_optimal(&rho, &e);
    assert!(report.reconstruction_residual <= 1e-12);
    assert!(report.max_concurrence_deviation() > 0.1);
    assert!(report.eof_excess > 0.1);
    assert!(!report.passes(1e-6));
}

#[test]
fn vp_type_explicit_ensemble_passes() {
    let spec = qree_core::families::VpTypeSpec::new(0.7, 0.3, 0.4).unwrap();
    let rho = vpt_density(0.7, 0.3, 0.4);
    let e = spec.ensemble().unwrap();
    assert_eq!(e.len(), 2);
    assert!(validate_optimal(&rho, &e).passes(1e-9), "{:?}", validate_optimal(&rho, &e));
    check_optimal(&rho, &e, 0.8);
}

#[test]
fn separable_input_is_rejected() {
    let rho = DensityMatrix::maximally_mixed();
    assert!(matches!(optimal_decomposition(&rho), Err(QreeError::Separable(_))));
    assert!(matches!(optimal_decomposition(&bell_mixture([0.5, 0.2, 0.2, 0.1])), Err(QreeError::Separable(_))));
}

#[test]
fn ensemble_validation() {
    let psi = PureState::new(qree_core::qcore::Bell::PsiPlus.ket()).unwrap();
    assert!(matches!(Ensemble::new(vec![]), Err(QreeError::InvalidEnsemble(_))));
    assert!(matches!(Ensemble::new(vec![(0.5, psi.clone())]), Err(QreeError::InvalidEnsemble(_))));
    assert!(matches!(
        Ensemble::new(vec![(1.5, psi.clone()), (-0.5, psi.clone())]),
        Err(QreeError::InvalidEnsemble(_))
    ));
    assert!(matches!(Ensemble::new(vec![(0.2, psi.clone()); 5]), Err(QreeError::InvalidEnsemble(_))));
    assert!(Ensemble::new(vec![(1.0, psi)]).is_ok());
}

#[test]
fn decomposition_is_deterministic() {
    let mut rng = seeded(5);
    for _ in 0..20 {
        let rho = random_density(&mut rng);
        if concurrence_mixed(&rho) > 1e-6 {
            assert_eq!(optimal_decomposition(&rho).unwrap(), optimal_decomposition(&rho).unwrap());
        }
    }
}

#[test]
fn family_ensembles_are_optimal() {
    let mut rng = seeded(99);
    for _ in 0..50 {
        let bd = bell_diagonal(&mut rng);
        let rho = bd.density();
        assert!(validate_optimal(&rho, &bd.ensemble().unwrap()).passes(1e-8));
        let canonical = bd.canonical_lambdas();
        assert!(validate_optimal(&bell_mixture(canonical), &bell_ensemble(canonical)).passes(1e-8));

        let gh = gen_horodecki(&mut rng);
        assert!(validate_optimal(&gh.density(), &gh.ensemble().unwrap()).passes(1e-8));
        assert!(validate_optimal(&gh.density(), &gh_ensemble(gh.lambdas())).passes(1e-8));

        let vp = vp_type(&mut rng);
        assert!(validate_optimal(&vp.density(), &vp.ensemble().unwrap()).passes(1e-8));

        let ht = horodecki_type(&mut rng);
        let report = validate_optimal(&ht.density(), &ht.ensemble().unwrap());
        assert!(report.passes(1e-8), "{ht:?} {report:?}");
    }
}

#[test]
fn gvp_printed_ensemble_reconstructs_but_is_not_optimal() {
    // members reproduce ρ, but carry concurrence 2√(A2A3) instead of λ1
    let mut rng = seeded(3);
    for _ in 0..50 {
        let spec = gvp(&mut rng);
        let [l1, l2, l3] = spec.lambdas();
        let rho = spec.density();
        let e = spec.ensemble().unwrap();
        let report = validate_optimal(&rho, &e);
        assert!(report.reconstruction_residual <= 1e-10);
        let (a2, a3) = (l1 / 2.0 + l2, l1 / 2.0 + l3);
        for (_, psi) in e.members() {
            assert!((concurrence_pure(psi) - 2.0 * (a2 * a3).sqrt()).abs() <= 1e-9);
        }
        if l2 + l3 > 1e-3 {
            assert!(!report.passes(1e-8));
        }
        // the generic decomposition of the same state is optimal
        assert!(validate_optimal(&rho, &optimal_decomposition(&rho).unwrap()).passes(1e-8));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generic_decomposition_is_optimal(seed in any::<u64>()) {
        let rho = random_density(&mut seeded(seed));
        let c = concurrence_mixed(&rho);
        prop_assume!(c > 1e-6);
        let e = optimal_decomposition(&rho).unwrap();
        let report = validate_optimal(&rho, &e);
        prop_assert!(report.passes(1e-8), "{:?}", report);
        let mean: f64 = e.members().iter().map(|(p, psi)| p * eof_from_concurrence(concurrence_pure(psi))).sum();
        prop_assert!((mean - eof(&rho)).abs() <= 1e-8);
    }
}
