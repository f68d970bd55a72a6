//! Null-space projection circuit: one Hadamard-framed controlled
//! application of P = M†M and post-selection on the |1⟩ branch maps ψ to
//! (I − P)ψ; repetitions decay every component with singular value σ > 0 by
//! (1 − σ²) per round, converging to the null-space projection.

use super::statevector::{QsimError, Statevector};
use crate::{linalg, CMat, Complex64};

/// Probabilities of the two probe branches in one repetition, before
/// renormalization of the kept branch.
#[derive(Debug, Clone, Copy)]
pub struct BranchProbabilities {
    pub keep: f64,
    pub discard: f64,
}

/// Emulate `repetitions` rounds of the projector circuit on `psi`.
///
/// `m` must be scaled so its largest singular value is at most one; the
/// function verifies this. Returns the final state and the per-repetition
/// branch probabilities.
pub fn nullspace_projection(
    m: &CMat,
    psi: &Statevector,
    repetitions: usize,
) -> Result<(Statevector, Vec<BranchProbabilities>), QsimError> {
    let (_, q) = m.shape();
    if psi.len() < q {
        return Err(QsimError::DimensionMismatch {
            state: psi.len(),
            expected: q,
        });
    }
    let smax = linalg::singular_values(m)?.first().copied().unwrap_or(0.0);
    if smax > 1.0 + 1e-9 {
        return Err(QsimError::SpectrumNotScaled(smax));
    }
    // P = M†M on the embedded q-dimensional block.
    let p = m.adjoint() * m;
    let dim = psi.len();
    let mut state: Vec<Complex64> = psi.amplitudes().to_vec();
    let mut probs = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let mut p_psi = vec![Complex64::new(0.0, 0.0); dim];
        for i in 0..q {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..q {
                acc += p[(i, j)] * state[j];
            }
            p_psi[i] = acc;
        }
        // H, controlled-P, H: branches (I+P)ψ/2 and (I−P)ψ/2.
        let mut keep_vec = vec![Complex64::new(0.0, 0.0); dim];
        let mut keep = 0.0f64;
        let mut discard = 0.0f64;
        for i in 0..dim {
            let plus = (state[i] + p_psi[i]) * 0.5;
            let minus = (state[i] - p_psi[i]) * 0.5;
            discard += plus.norm_sqr();
            keep += minus.norm_sqr();
            keep_vec[i] = minus;
        }
        probs.push(BranchProbabilities { keep, discard });
        if keep <= 1e-300 {
            return Err(QsimError::OrthogonalToNullSpace);
        }
        let inv = Complex64::new(1.0 / keep.sqrt(), 0.0);
        for (s, k) in state.iter_mut().zip(keep_vec.iter()) {
            *s = k * inv;
        }
    }
    Statevector::from_amplitudes(state).map(|sv| (sv, probs))
}

/// The exact orthogonal projector onto null(M), from the SVD, embedded in
/// `dim ≥ q` dimensions. The reference the emulated circuit is measured
/// against.
pub fn exact_null_projector(m: &CMat, threshold: f64, dim: usize) -> Result<CMat, QsimError> {
    let (rows, q) = m.shape();
    let svd = if rows < q {
        linalg::svd_full_vt(m)?
    } else {
        linalg::svd(m)?
    };
    let mut proj = CMat::identity(dim, dim);
    // Subtract the row-space directions: P_null = I − Σ v σ>thr v†.
    let mut rowspace = CMat::zeros(dim, dim);
    for (i, &s) in svd.s.iter().enumerate() {
        if s > threshold {
            for a in 0..q {
                for b in 0..q {
                    rowspace[(a, b)] += svd.vt[(i, a)].conj() * svd.vt[(i, b)];
                }
            }
        }
    }
    // Identity outside the q-block stays (those dimensions are untouched
    // padding).
    proj -= rowspace;
    Ok(proj)
}
