//! Simultaneous optimization of the electronic structure and geometry of a
//! small molecule, recast as polynomial eigenproblems.
//!
//! The pipeline has three layers:
//!
//! * symbolic — a restricted Hartree-Fock energy for H3+ is assembled from
//!   STO-3G integrals ([`hf`]), Taylor-expanded in the bond length and
//!   rationalized to an integer objective polynomial ([`poly`]);
//! * numeric — the stationarity system of that objective is solved either
//!   through a Gröbner basis and quotient-ring multiplication matrices
//!   ([`groebner`]) or through Macaulay-matrix null spaces and shift-matrix
//!   eigenproblems ([`macaulay`]), both reducing root-finding to
//!   non-Hermitian eigenvalue problems ([`linalg`]);
//! * quantum — a statevector emulator ([`qsim`]) of the circuits a
//!   fault-tolerant machine would run on the same eigenproblems: block
//!   encoding of arbitrary matrices, non-unitary time evolution, iterative
//!   phase estimation for complex eigenvalues, and null-space projection.
//!
//! All symbolic arithmetic is exact over arbitrary-precision rationals;
//! floating point appears only at evaluation and matrix boundaries.

pub mod groebner;
pub mod hf;
pub mod linalg;
pub mod macaulay;
pub mod poly;
pub mod qsim;
pub mod systems;
pub mod solution;

pub use num_complex::Complex64;

/// Exact-rational polynomial, the carrier for all symbolic paths.
pub type QPoly = poly::Polynomial<num_rational::BigRational>;
/// Float-coefficient polynomial, used at the numeric boundary.
pub type FPoly = poly::Polynomial<f64>;
/// Dense real matrix in 64-bit precision.
pub type RMat = nalgebra::DMatrix<f64>;
/// Dense complex matrix in 64-bit precision.
pub type CMat = nalgebra::DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVec = nalgebra::DVector<Complex64>;
/// Dense real column vector.
pub type RVec = nalgebra::DVector<f64>;
