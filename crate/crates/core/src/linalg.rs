//! Dense linear-algebra contracts shared by the solver and emulator layers:
//! SVD, Moore-Penrose pseudoinverse, a general (non-symmetric,
//! complex-eigenvalue) eigensolver, and the matrix exponential.
//!
//! The heavy factorizations are delegated to LAPACK through [`lax`]; this
//! module owns the contracts (residual reporting, cutoff conventions) and the
//! composition into higher-level operations. All operations are stateless
//! and safe to call concurrently on distinct inputs.

use crate::{CMat, CVec, RMat};
use lax::{layout::MatrixLayout, JobSvd, Lapack};
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("LAPACK failure: {0}")]
    Backend(#[from] lax::error::Error),
    #[error("eigenvector matrix is singular; cannot invert")]
    SingularEigenbasis,
}

/// Full spectrum of a general square matrix, with per-pair residuals
/// `‖A v − λ v‖₂ / ‖A‖_F` for right eigenvectors of unit norm.
#[derive(Debug, Clone)]
pub struct EigDecomp {
    pub values: CVec,
    /// Right eigenvectors as columns, each normalized to unit 2-norm.
    pub vectors: CMat,
    pub residuals: Vec<f64>,
}

impl EigDecomp {
    /// Indices of pairs whose residual exceeds the acceptance bound.
    pub fn rejected(&self, bound: f64) -> Vec<usize> {
        self.residuals
            .iter()
            .enumerate()
            .filter(|(_, &r)| r.is_nan() || r > bound)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Eigen-decomposition of a real general matrix (dgeev).
pub fn eig(a: &RMat) -> Result<EigDecomp, LinalgError> {
    let n = square_dim(a)?;
    let mut buf: Vec<f64> = a.as_slice().to_vec();
    let layout = MatrixLayout::F {
        col: n as i32,
        lda: n as i32,
    };
    let (eigs, vr) = f64::eig(true, layout, &mut buf)?;
    let ac = a.map(|x| Complex64::new(x, 0.0));
    Ok(finish_eig(&ac, eigs, vr, n))
}

/// Eigen-decomposition of a complex general matrix (zgeev).
pub fn eig_c(a: &CMat) -> Result<EigDecomp, LinalgError> {
    let n = square_dim(a)?;
    let mut buf: Vec<Complex64> = a.as_slice().to_vec();
    let layout = MatrixLayout::F {
        col: n as i32,
        lda: n as i32,
    };
    let (eigs, vr) = Complex64::eig(true, layout, &mut buf)?;
    Ok(finish_eig(a, eigs, vr, n))
}

fn finish_eig(a: &CMat, eigs: Vec<Complex64>, vr: Vec<Complex64>, n: usize) -> EigDecomp {
    let values = CVec::from_vec(eigs);
    let mut vectors = CMat::from_column_slice(n, n, &vr);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let mut residuals = Vec::with_capacity(n);
    for j in 0..n {
        let norm = vectors.column(j).norm();
        if norm > 0.0 {
            vectors.column_mut(j).unscale_mut(norm);
        }
        let v = vectors.column(j).clone_owned();
        let r = (a * &v - v * values[j]).norm() / scale;
        residuals.push(r);
    }
    EigDecomp {
        values,
        vectors,
        residuals,
    }
}

/// Thin singular value decomposition `A = U Σ Vᵗ` (divide and conquer).
#[derive(Debug, Clone)]
pub struct Svd<T: Lapack + nalgebra::Scalar> {
    /// m × k, k = min(m, n).
    pub u: DMatrix<T>,
    /// Singular values, descending.
    pub s: Vec<T::Real>,
    /// k × n; rows are right singular vectors.
    pub vt: DMatrix<T>,
}

pub fn svd<T: Lapack + nalgebra::Scalar>(a: &DMatrix<T>) -> Result<Svd<T>, LinalgError> {
    let (m, n) = a.shape();
    let k = m.min(n);
    let mut buf: Vec<T> = a.as_slice().to_vec();
    let layout = MatrixLayout::F {
        col: n as i32,
        lda: m as i32,
    };
    let out = T::svddc(layout, JobSvd::Some, &mut buf)?;
    let u = DMatrix::from_column_slice(m, k, out.u.as_ref().expect("jobz=S returns U"));
    let vt = DMatrix::from_column_slice(k, n, out.vt.as_ref().expect("jobz=S returns Vt"));
    Ok(Svd { u, s: out.s, vt })
}

/// SVD with the complete set of right singular vectors (`vt` is n × n),
/// needed when m < n and the null space extends past the thin factors.
pub fn svd_full_vt<T: Lapack + nalgebra::Scalar>(a: &DMatrix<T>) -> Result<Svd<T>, LinalgError> {
    let (m, n) = a.shape();
    let mut buf: Vec<T> = a.as_slice().to_vec();
    let layout = MatrixLayout::F {
        col: n as i32,
        lda: m as i32,
    };
    let out = T::svddc(layout, JobSvd::All, &mut buf)?;
    let u = DMatrix::from_column_slice(m, m, out.u.as_ref().expect("jobz=A returns U"));
    let vt = DMatrix::from_column_slice(n, n, out.vt.as_ref().expect("jobz=A returns Vt"));
    Ok(Svd { u, s: out.s, vt })
}

/// Singular values only.
pub fn singular_values<T: Lapack + nalgebra::Scalar>(
    a: &DMatrix<T>,
) -> Result<Vec<T::Real>, LinalgError> {
    let (m, n) = a.shape();
    let mut buf: Vec<T> = a.as_slice().to_vec();
    let layout = MatrixLayout::F {
        col: n as i32,
        lda: m as i32,
    };
    let out = T::svddc(layout, JobSvd::None, &mut buf)?;
    Ok(out.s)
}

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// `cutoff_rel · σ_max` are treated as zero.
pub fn pinv(a: &RMat, cutoff_rel: f64) -> Result<RMat, LinalgError> {
    let Svd { u, s, vt } = svd(a)?;
    let smax = s.first().copied().unwrap_or(0.0);
    let cut = cutoff_rel * smax;
    let k = s.len();
    // A⁺ = V Σ⁺ Uᵗ, built as (Σ⁺ᵀ-scaled V rows)ᵀ × Uᵗ without extra copies.
    let mut vs = vt.transpose(); // n × k
    for (j, &sigma) in s.iter().enumerate().take(k) {
        let inv = if sigma > cut && sigma > 0.0 {
            1.0 / sigma
        } else {
            0.0
        };
        vs.column_mut(j).scale_mut(inv);
    }
    Ok(vs * u.transpose())
}

/// Scaled anti-Hermitian exponential `exp(-i·s·A)` for real `A`.
///
/// Diagonalizes `A` when the eigenbasis is well conditioned and falls back to
/// scaling-and-squaring otherwise.
pub fn expm_scaled(a: &RMat, factor: f64) -> Result<CMat, LinalgError> {
    square_dim(a)?;
    if let Ok(dec) = eig(a) {
        if let Some(exp) = expm_via_eig(&dec, a, factor) {
            return Ok(exp);
        }
    }
    Ok(expm_pade(&a.map(|x| Complex64::new(0.0, -factor * x))))
}

/// `exp(M)` for a complex matrix, scaling-and-squaring with Padé(13).
pub fn expm_c(m: &CMat) -> CMat {
    expm_pade(m)
}

fn expm_via_eig(dec: &EigDecomp, a: &RMat, factor: f64) -> Option<CMat> {
    let n = dec.values.len();
    let x = &dec.vectors;
    let inv = x.clone().lu().try_inverse()?;
    // Accept the eigenbasis route only if X D X⁻¹ reproduces A itself.
    let mut d = CMat::zeros(n, n);
    for i in 0..n {
        d[(i, i)] = dec.values[i];
    }
    let ac = a.map(|x| Complex64::new(x, 0.0));
    let rec = x * &d * &inv;
    if (rec - &ac).norm() > 1e-10 * ac.norm().max(1.0) {
        return None;
    }
    for i in 0..n {
        d[(i, i)] = (Complex64::new(0.0, -factor) * dec.values[i]).exp();
    }
    Some(x * d * inv)
}

fn expm_pade(a: &CMat) -> CMat {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    // 1-norm based scaling; theta for Padé(13) from Higham's bounds.
    let norm: f64 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let theta13 = 5.371920351148152;
    let s = if norm > theta13 {
        (norm / theta13).log2().ceil() as i32
    } else {
        0
    };
    let a_scaled = a / Complex64::new(2f64.powi(s), 0.0);
    let b: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let bc = |k: usize| Complex64::new(b[k], 0.0);
    let id = CMat::identity(n, n);
    let a2 = &a_scaled * &a_scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u_inner = &a6 * (&a6 * bc(13) + &a4 * bc(11) + &a2 * bc(9))
        + &a6 * bc(7)
        + &a4 * bc(5)
        + &a2 * bc(3)
        + &id * bc(1);
    let u = &a_scaled * u_inner;
    let v = &a6 * (&a6 * bc(12) + &a4 * bc(10) + &a2 * bc(8))
        + &a6 * bc(6)
        + &a4 * bc(4)
        + &a2 * bc(2)
        + &id * bc(0);
    let num = &v + &u;
    let den = &v - &u;
    let mut f = den
        .lu()
        .solve(&num)
        .expect("Padé denominator is nonsingular for scaled input");
    for _ in 0..s {
        f = &f * &f;
    }
    f
}

fn square_dim<T: nalgebra::Scalar>(a: &DMatrix<T>) -> Result<usize, LinalgError> {
    let (m, n) = a.shape();
    if m == n {
        Ok(n)
    } else {
        Err(LinalgError::NotSquare(m, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eig_symmetric_2x2() {
        let a = RMat::from_row_slice(2, 2, &[0.0, -1.0, -1.0, 0.0]);
        let dec = eig(&a).unwrap();
        let mut vals: Vec<f64> = dec.values.iter().map(|z| z.re).collect();
        vals.sort_by(f64::total_cmp);
        assert_relative_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-12);
        for r in &dec.residuals {
            assert!(*r < 1e-12);
        }
        // Eigenvector directions (1,1)/√2 and (1,-1)/√2 up to phase.
        for j in 0..2 {
            let v = dec.vectors.column(j);
            assert!((v[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        }
    }

    #[test]
    fn eig_identity() {
        let dec = eig(&RMat::identity(5, 5)).unwrap();
        for z in dec.values.iter() {
            assert_relative_eq!(z.re, 1.0, epsilon = 1e-12);
            assert!(z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn eig_companion_cube_roots() {
        // Companion matrix of z^3 - 1.
        let a = RMat::from_row_slice(3, 3, &[0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let dec = eig(&a).unwrap();
        for z in dec.values.iter() {
            assert!((z.powu(3) - c(1.0, 0.0)).norm() < 1e-10);
        }
        let mut args: Vec<f64> = dec.values.iter().map(|z| z.arg()).collect();
        args.sort_by(f64::total_cmp);
        assert!((args[1] - 0.0).abs() < 1e-10);
    }

    #[test]
    fn eig_trace_and_det_consistency() {
        let a = RMat::from_fn(6, 6, |i, j| ((i * 7 + j * 3) as f64 * 0.817).sin());
        let dec = eig(&a).unwrap();
        let sum: Complex64 = dec.values.iter().sum();
        assert!((sum.re - a.trace()).abs() <= 1e-8 * a.norm());
        assert!(sum.im.abs() <= 1e-8 * a.norm());
        let prod: Complex64 = dec.values.iter().product();
        let det = a.clone().lu().determinant();
        assert!((prod.re - det).abs() <= 1e-6 * det.abs().max(1.0));
    }

    #[test]
    fn svd_reconstructs() {
        let a = RMat::from_fn(7, 4, |i, j| (i as f64 - 2.0 * j as f64).cos());
        let Svd { u, s, vt } = svd(&a).unwrap();
        let mut sigma = RMat::zeros(4, 4);
        for i in 0..4 {
            sigma[(i, i)] = s[i];
        }
        let rec = &u * sigma * &vt;
        assert!((rec - &a).norm() <= 1e-10 * a.norm());
    }

    #[test]
    fn svd_diag_with_null_vector() {
        let a = RMat::from_row_slice(2, 2, &[3.0, 0.0, 0.0, 0.0]);
        let Svd { s, vt, .. } = svd(&a).unwrap();
        assert_relative_eq!(s[0], 3.0, epsilon = 1e-14);
        assert!(s[1].abs() < 1e-14);
        // Null vector is e2 up to sign.
        assert!((vt[(1, 1)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn svd_invariant_under_row_permutation() {
        let a = RMat::from_fn(5, 3, |i, j| ((i + 2 * j) as f64).sin());
        let mut b = a.clone();
        b.swap_rows(0, 3);
        b.swap_rows(1, 4);
        let sa = singular_values(&a).unwrap();
        let sb = singular_values(&b).unwrap();
        for (x, y) in sa.iter().zip(sb.iter()) {
            assert_relative_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn pinv_penrose_identities() {
        let a = RMat::from_fn(8, 5, |i, j| ((3 * i + j) as f64 * 0.37).sin());
        let ap = pinv(&a, 1e-10).unwrap();
        let aapa = &a * &ap * &a;
        let apaap = &ap * &a * &ap;
        assert!((aapa - &a).norm() < 1e-8 * a.norm());
        assert!((apaap - &ap).norm() < 1e-8 * ap.norm());
        let aap = &a * &ap;
        assert!((aap.transpose() - &aap).norm() < 1e-8);
        let apa = &ap * &a;
        assert!((apa.transpose() - &apa).norm() < 1e-8);
        // Involution.
        let app = pinv(&ap, 1e-10).unwrap();
        assert!((app - &a).norm() < 1e-8 * a.norm());
    }

    #[test]
    fn pinv_of_selection_is_transpose() {
        // Rows are distinct unit vectors.
        let mut s = RMat::zeros(3, 6);
        s[(0, 1)] = 1.0;
        s[(1, 4)] = 1.0;
        s[(2, 2)] = 1.0;
        let sp = pinv(&s, 1e-10).unwrap();
        assert!((sp - s.transpose()).norm() < 1e-12);
    }

    #[test]
    fn expm_zero_is_identity() {
        let z = RMat::zeros(4, 4);
        let e = expm_scaled(&z, 1.0).unwrap();
        assert!((e - CMat::identity(4, 4)).norm() < 1e-14);
    }

    #[test]
    fn expm_diagonal_phases() {
        let mut a = RMat::zeros(3, 3);
        let thetas = [0.3, -1.2, 2.5];
        for (i, t) in thetas.iter().enumerate() {
            a[(i, i)] = *t;
        }
        let e = expm_scaled(&a, 1.0).unwrap();
        for (i, t) in thetas.iter().enumerate() {
            let want = c(0.0, -t).exp();
            assert!((e[(i, i)] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn expm_eigenvalue_spectrum_mapping() {
        let a = RMat::from_fn(5, 5, |i, j| ((i as f64 * 1.3 + j as f64) * 0.21).cos());
        let e = expm_scaled(&a, 1.0).unwrap();
        let da = eig(&a).unwrap();
        let de = eig_c(&e).unwrap();
        let mut want: Vec<Complex64> = da.values.iter().map(|l| (c(0.0, -1.0) * l).exp()).collect();
        let mut got: Vec<Complex64> = de.values.iter().copied().collect();
        let key = |z: &Complex64| (z.re, z.im);
        want.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        for (w, g) in want.iter().zip(got.iter()) {
            assert!((w - g).norm() < 1e-8, "{w} vs {g}");
        }
    }

    #[test]
    fn expm_pade_matches_eig_route() {
        let a = RMat::from_fn(6, 6, |i, j| ((i + 3 * j) as f64 * 0.11).sin() * 2.0);
        let via_eig = expm_scaled(&a, 0.7).unwrap();
        let scaled = a.map(|x| Complex64::new(0.0, -0.7 * x));
        let via_pade = expm_c(&scaled);
        assert!((via_eig - via_pade).norm() < 1e-9);
    }
}
