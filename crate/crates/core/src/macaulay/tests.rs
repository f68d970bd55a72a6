use super::*;
use crate::solution::SolutionKind;
use crate::systems;

/// The 3×10 coefficient rows of the two-level M(2) over the columns
/// [1, x, y, e, x², xy, xe, y², ye, e²].
const TWO_LEVEL_M2_ROWS: [[f64; 10]; 3] = [
    [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0],
];

#[test]
fn two_level_m2_matches_reference_rows() {
    let sys = systems::two_level();
    let mac = build(&sys, 2).unwrap();
    assert_eq!(mac.shape(), (3, 10));
    assert_eq!(mac.nnz(), 7);
    let dense = mac.to_dense();
    // Row order is generator order; compare as a set of rows.
    let mut got: Vec<Vec<i64>> = (0..3)
        .map(|i| (0..10).map(|j| dense[(i, j)] as i64).collect())
        .collect();
    let mut want: Vec<Vec<i64>> = TWO_LEVEL_M2_ROWS
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn degree_too_small_rejected() {
    let sys = systems::two_level();
    assert!(matches!(
        build(&sys, 1),
        Err(MacaulayError::DegreeTooSmall { given: 1, min: 2 })
    ));
}

#[test]
fn dims_formulas() {
    // Two-level model: three quadrics in three variables.
    assert_eq!(dims(&[2, 2, 2], 3, 2), (3, 10));
    assert_eq!(dims(&[2, 2, 2], 3, 3), (12, 20));
    assert_eq!(dims(&[2, 2, 2], 3, 4), (30, 35));
    assert_eq!(dims(&[2, 2, 2], 3, 8), (252, 165));
    assert_eq!(dims(&[2, 2, 2], 3, 10), (495, 286));
    // H3+ degrees (6, 5, 6).
    assert_eq!(dims(&[6, 5, 6], 3, 12), (288, 455));
    assert_eq!(dims(&[6, 5, 6], 3, 16), (936, 969));
    assert_eq!(dims(&[6, 5, 6], 3, 30), (9126, 5456));
    // A single generator of maximal degree contributes the C(n, n) = 1 row.
    assert_eq!(dims(&[4], 2, 4).0, 1);
}

#[test]
fn two_level_sweep_profile() {
    let sys = systems::two_level();
    let opts = MacaulaySolveOptions::default();
    // (d, rows, cols, nnz, rank, nullity)
    let expected = [
        (2u32, 3usize, 10usize, 7usize, 3usize, 7usize),
        (3, 12, 20, 28, 12, 8),
        (4, 30, 35, 70, 27, 8),
        (8, 252, 165, 588, 157, 8),
        (10, 495, 286, 1155, 278, 8),
    ];
    for (d, rows, cols, nnz, rank, nullity) in expected {
        let report = solve(&sys, d, &opts, None).unwrap();
        assert_eq!((report.rows, report.cols), (rows, cols), "shape at d={d}");
        assert_eq!(report.nnz, nnz, "nnz at d={d}");
        assert_eq!(report.nullity, nullity, "nullity at d={d}");
        assert!(
            (report.rank as i64 - rank as i64).abs() <= 1,
            "rank at d={d}: {} vs {rank}",
            report.rank
        );
    }
}

#[test]
fn two_level_roots_from_degree_three() {
    let sys = systems::two_level();
    let opts = MacaulaySolveOptions::default();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for d in [3u32, 4, 8, 10] {
        let report = solve(&sys, d, &opts, None).unwrap();
        let roots: Vec<_> = report.admissible().collect();
        assert_eq!(roots.len(), 4, "root count at d={d}");
        for sol in roots {
            let x = sol.record.value("x").unwrap();
            let y = sol.record.value("y").unwrap();
            let e = sol.record.value("e").unwrap();
            assert!(x.im.abs() < 1e-6 && y.im.abs() < 1e-6 && e.im.abs() < 1e-6);
            assert!((x.re.abs() - s).abs() < 1e-6, "d={d}: x = {x}");
            assert!((y.re.abs() - s).abs() < 1e-6);
            assert!((e.re.abs() - 1.0).abs() < 1e-6);
            // e = −sign(xy): eigenvector pairing of the two-level model.
            let same_sign = (x.re * y.re) > 0.0;
            assert_eq!(e.re < 0.0, same_sign, "d={d}");
            // Where the vector route resolved the 1-entry, entry-read
            // coordinates agree with the least-squares path.
            if let Some(xc) = sol.diagnostics.coordinate_cross_check {
                assert!(xc < 1e-6);
            }
        }
    }
}

#[test]
fn two_level_degree_two_is_inadmissible() {
    let sys = systems::two_level();
    let report = solve(&sys, 2, &MacaulaySolveOptions::default(), None).unwrap();
    assert_eq!(report.nullity, 7);
    assert_eq!(
        report.admissible().count(),
        0,
        "degree 2 lacks the independent null vectors for any admissible root"
    );
}

#[test]
fn nullspace_of_zero_matrix_is_everything() {
    let mac = MacaulayMatrix {
        degree: 2,
        row_labels: vec![(0, Monomial::one(2)); 3],
        col_labels: monomials_up_to(2, 2, &column_order(2)),
        triplets: vec![],
    };
    let ns = nullspace(&mac, 1e-4).unwrap();
    assert_eq!(ns.rank, 0);
    assert_eq!(ns.nullity(), 6);
    // Orthonormal columns.
    let g = ns.z.transpose() * &ns.z;
    assert!((g - RMat::identity(6, 6)).norm() < 1e-10);
}

#[test]
fn nullspace_columns_annihilate_matrix() {
    let sys = systems::two_level();
    let mac = build(&sys, 4).unwrap();
    let ns = nullspace(&mac, 1e-4).unwrap();
    assert_eq!(ns.nullity(), 8);
    assert_eq!(ns.rank, 27);
    let m = mac.to_dense();
    let prod = &m * &ns.z;
    let bound = ns.threshold * (ns.nullity() as f64).sqrt() * ns.singular_values[0];
    assert!(prod.norm() <= bound, "{} vs {bound}", prod.norm());
    let g = ns.z.transpose() * &ns.z;
    assert!((g - RMat::identity(8, 8)).norm() < 1e-10);
}

#[test]
fn shift_matrices_match_reference_selection() {
    let sys = systems::two_level();
    let mac = build(&sys, 2).unwrap();
    let shifts = ShiftMatrixSet::new(3, 2, &mac.col_labels);
    // B = {1, x, y, e} and columns [1, x, y, e, x², xy, xe, y², ye, e²]:
    // S_1 selects (1, x, y, e); S_x selects (x, x², xy, xe).
    assert_eq!(shifts.s1, vec![0, 1, 2, 3]);
    assert_eq!(shifts.per_var[0], vec![1, 4, 5, 6]);
    // Multiplication by y selects (y, xy, y², ye); by e: (e, xe, ye, e²).
    assert_eq!(shifts.per_var[1], vec![2, 5, 7, 8]);
    assert_eq!(shifts.per_var[2], vec![3, 6, 8, 9]);

    // S1·S1ᵀ = identity on B.
    let s1 = ShiftMatrixSet::to_dense(&shifts.s1, 10);
    assert_eq!(&s1 * s1.transpose(), RMat::identity(4, 4));
}

#[test]
fn shift_relation_at_random_points() {
    // (S_g X̂)(point) = g(point)·(S_1 X̂)(point) for every variable.
    let sys = systems::two_level();
    let mac = build(&sys, 3).unwrap();
    let shifts = ShiftMatrixSet::new(3, 3, &mac.col_labels);
    let points = [
        [0.3, -0.7, 1.9],
        [1.1, 0.2, -0.4],
        [-2.0, 0.9, 0.5],
    ];
    for pt in points {
        let point: Vec<Complex64> = pt.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let xhat: Vec<Complex64> = mac.col_labels.iter().map(|m| m.eval(&point)).collect();
        for (v, sel) in shifts.per_var.iter().enumerate() {
            for (r, (&dst, &src)) in sel.iter().zip(shifts.s1.iter()).enumerate() {
                let lhs = xhat[dst];
                let rhs = point[v] * xhat[src];
                assert!((lhs - rhs).norm() < 1e-12, "var {v} row {r}");
            }
        }
    }
}

#[test]
fn monomial_vector_of_root_is_in_nullspace() {
    let sys = systems::two_level();
    let mac = build(&sys, 3).unwrap();
    let m = mac.to_dense();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let point = vec![
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(1.0, 0.0),
    ];
    let xhat = RMat::from_iterator(
        mac.col_labels.len(),
        1,
        mac.col_labels.iter().map(|mm| mm.eval(&point).re),
    );
    let resid = (&m * &xhat).norm() / (m.norm() * xhat.norm());
    assert!(resid < 1e-6, "relative residual {resid}");
}

#[test]
fn h3_degree_twelve_profile() {
    let sys = systems::h3_stationarity();
    let opts = MacaulaySolveOptions {
        validity: Some(systems::h3_validity()),
        ..Default::default()
    };
    let energy = systems::h3_energy();
    let report = solve(&sys, 12, &opts, Some(&energy)).unwrap();
    assert_eq!((report.rows, report.cols), (288, 455));
    assert_eq!(report.nnz, 2616);
    // The computed null space reaches the product of the generator degrees
    // (6·5·6 = 180) here.
    assert_eq!(report.nullity, 180);
    // Too noisy for certified roots; only best-effort candidates survive.
    assert!(ground_root(&report, &systems::h3_validity()).is_some());
}

#[test]
fn h3_degree_sixteen_ground_root() {
    let sys = systems::h3_stationarity();
    let opts = MacaulaySolveOptions {
        validity: Some(systems::h3_validity()),
        ..Default::default()
    };
    let energy = systems::h3_energy();
    let report = solve(&sys, 16, &opts, Some(&energy)).unwrap();
    assert_eq!((report.rows, report.cols), (936, 969));
    let g = ground_root(&report, &systems::h3_validity()).expect("ground root");
    assert!(g.diagnostics.strict);
    let x = g.record.value("x").unwrap().re.abs();
    let e = g.record.value("e").unwrap().re;
    let r = g.record.value("R").unwrap().re;
    assert!((x - 0.404978).abs() < 5e-4, "x = {x}");
    assert!((e - (-1.148190)).abs() < 5e-4, "e = {e}");
    assert!((r - 1.827109).abs() < 5e-4, "R = {r}");
    // All eight real roots are recovered at this degree.
    let real = report
        .admissible()
        .filter(|s| s.record.kind == SolutionKind::Real)
        .count();
    assert_eq!(real, 8);
}
