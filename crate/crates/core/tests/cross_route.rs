//! Agreement between the two solver routes: the same roots must come out of
//! the Gröbner quotient-ring eigenproblem and the Macaulay null-space
//! pencil.

use moleig::groebner::{self, SolveOptions};
use moleig::macaulay::{self, MacaulaySolveOptions};
use moleig::solution::{canonical_key, match_key_multisets, SolutionKind};
use moleig::systems;

#[test]
fn two_level_routes_agree() {
    let sys = systems::two_level();
    let gb = groebner::buchberger(&sys).unwrap();
    let qb = groebner::quotient_basis(&gb).unwrap();
    assert_eq!(qb.dim(), 4);
    let mats = groebner::mult_matrices(&gb, &qb).unwrap();
    assert!(mats.max_commutator() < 1e-10);
    let grecords = groebner::solve_system(&mats, &SolveOptions::default(), None).unwrap();

    let report = macaulay::solve(&sys, 4, &MacaulaySolveOptions::default(), None).unwrap();
    let mrecords: Vec<_> = report.admissible().collect();
    assert_eq!(grecords.len(), 4);
    assert_eq!(mrecords.len(), 4);

    let g_keys: Vec<Vec<f64>> = grecords
        .iter()
        .map(|r| canonical_key(&r.values, None, &[]))
        .collect();
    let m_keys: Vec<Vec<f64>> = mrecords
        .iter()
        .map(|s| canonical_key(&s.record.values, None, &[]))
        .collect();
    match_key_multisets(g_keys, m_keys, 1e-6).unwrap();
}

#[test]
fn h3_real_roots_agree_at_mid_degree() {
    let sys = systems::h3_stationarity();
    let energy = systems::h3_energy();

    let gb = groebner::buchberger(&sys).unwrap();
    let qb = groebner::quotient_basis(&gb).unwrap();
    let mats = groebner::mult_matrices(&gb, &qb).unwrap();
    let opts = SolveOptions {
        validity: Some(systems::h3_validity()),
        ..Default::default()
    };
    let grecords = groebner::solve_system(&mats, &opts, Some(&energy)).unwrap();

    let mopts = MacaulaySolveOptions {
        validity: Some(systems::h3_validity()),
        ..Default::default()
    };
    let report = macaulay::solve(&sys, 16, &mopts, Some(&energy)).unwrap();

    // Eigenvector route eigenvalue multisets against the pencil route, on
    // the real roots.
    let g_real: Vec<Vec<f64>> = grecords
        .iter()
        .filter(|r| r.kind == SolutionKind::Real)
        .map(|r| canonical_key(&r.values, None, &[]))
        .collect();
    let m_real: Vec<Vec<f64>> = report
        .admissible()
        .filter(|s| s.record.kind == SolutionKind::Real)
        .map(|s| canonical_key(&s.record.values, None, &[]))
        .collect();
    assert_eq!(g_real.len(), 8);
    match_key_multisets(g_real, m_real, 1e-3).unwrap();
}

#[test]
fn macaulay_eigenvalue_multiset_matches_multiplication_matrix() {
    // The x-coordinate multiset from the Macaulay route equals the
    // eigenvalue multiset of the Gröbner multiplication matrix M_x.
    let sys = systems::two_level();
    let gb = groebner::buchberger(&sys).unwrap();
    let qb = groebner::quotient_basis(&gb).unwrap();
    let mats = groebner::mult_matrices(&gb, &qb).unwrap();
    let mx = mats.matrix("x").unwrap().transpose();
    let dec = moleig::linalg::eig(&mx).unwrap();
    let mut from_matrix: Vec<f64> = dec.values.iter().map(|z| z.re).collect();
    from_matrix.sort_by(f64::total_cmp);

    let report = macaulay::solve(&sys, 4, &MacaulaySolveOptions::default(), None).unwrap();
    let mut from_pencil: Vec<f64> = report
        .admissible()
        .map(|s| s.record.value("x").unwrap().re)
        .collect();
    from_pencil.sort_by(f64::total_cmp);
    assert_eq!(from_matrix.len(), from_pencil.len());
    for (a, b) in from_matrix.iter().zip(from_pencil.iter()) {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn residual_metric_shared_between_routes() {
    // Roots from either route satisfy the generators at the same residual
    // scale.
    let sys = systems::h3_stationarity();
    let energy = systems::h3_energy();
    let scales = sys.coeff_scales();
    let max_scale = scales.iter().cloned().fold(0.0, f64::max);

    let report = macaulay::solve(
        &sys,
        16,
        &MacaulaySolveOptions {
            validity: Some(systems::h3_validity()),
            ..Default::default()
        },
        Some(&energy),
    )
    .unwrap();
    for s in report.admissible() {
        let point: Vec<moleig::Complex64> = sys
            .ring
            .var_names()
            .iter()
            .map(|n| s.record.value(n).unwrap())
            .collect();
        let worst = sys
            .generators
            .iter()
            .map(|g| g.eval_at(&point).norm())
            .fold(0.0, f64::max);
        assert!(
            worst <= 1e-4 * max_scale,
            "residual {worst:.3e} at {point:?}"
        );
    }
}
