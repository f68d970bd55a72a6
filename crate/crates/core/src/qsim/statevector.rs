//! Dense statevector with the few register operations the encoding
//! circuits need.

use crate::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QsimError {
    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("dimension mismatch: state has {state} amplitudes, operator expects {expected}")]
    DimensionMismatch { state: usize, expected: usize },
    #[error("post-selected branch has zero amplitude (A·ψ = 0)")]
    ZeroBranch,
    #[error("state is (numerically) orthogonal to the null space")]
    OrthogonalToNullSpace,
    #[error("ψ is not an eigenvector: relative residual {0:.3e}")]
    EigenvectorResidual(f64),
    #[error("operator must be scaled into the unit disk, found |λ| = {0:.6}")]
    SpectrumNotScaled(f64),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

/// A pure state on `qubits` qubits: 2^qubits complex amplitudes, little
/// endian in the basis index.
#[derive(Debug, Clone)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    pub fn zero_state(qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Statevector { qubits, amps }
    }

    /// Build from amplitudes (length must be a power of two); the result is
    /// normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, QsimError> {
        let len = amps.len();
        if len == 0 || len & (len - 1) != 0 {
            return Err(QsimError::NotPowerOfTwo(len));
        }
        let qubits = len.trailing_zeros() as usize;
        let mut sv = Statevector { qubits, amps };
        let norm = sv.norm();
        if norm == 0.0 {
            return Err(QsimError::ZeroBranch);
        }
        for a in sv.amps.iter_mut() {
            *a /= norm;
        }
        Ok(sv)
    }

    /// Embed a shorter complex vector into the lowest basis states, padding
    /// with zeros up to the next power of two (at least `min_qubits`).
    pub fn embed(values: &[Complex64], min_qubits: usize) -> Result<Self, QsimError> {
        let needed = values.len().next_power_of_two().max(1 << min_qubits);
        let mut amps = vec![Complex64::new(0.0, 0.0); needed];
        amps[..values.len()].copy_from_slice(values);
        Self::from_amplitudes(amps)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub(crate) fn from_raw(qubits: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << qubits);
        Statevector { qubits, amps }
    }
}
