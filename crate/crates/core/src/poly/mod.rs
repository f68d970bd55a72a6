//! Sparse multivariate polynomial arithmetic over an exact coefficient ring.
//!
//! Values are immutable after construction and all operations are pure, so
//! polynomials can be shared freely across threads. Term storage is keyed by
//! a structural ordering of exponent vectors; monomial orders are applied on
//! demand so that arithmetic stays order-agnostic.

mod order;
mod parse;

pub use order::{MonomialOrder, OrderKind};
pub use parse::scan_variables;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("variable `{0}` is not in the ring")]
    UnknownVariable(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An ordered set of variable names; the ambient ring of a polynomial.
///
/// Cloning is cheap and equality is by variable names, so distinct `Ring`
/// values with the same variables are interchangeable.
#[derive(Clone, Eq)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        Ring {
            vars: vars.iter().map(|s| s.as_ref().to_owned()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.vars.join(", "))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.vars.join(", "))
    }
}

/// A power product of the ring variables, stored as one exponent per
/// variable. The structural `Ord` impl is only a storage order; semantic
/// comparisons go through [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(rhs.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.exps.iter().zip(rhs.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, if divisible.
    pub fn div_into(&self, rhs: &Monomial) -> Option<Monomial> {
        if self.divides(rhs) {
            Some(Monomial {
                exps: rhs
                    .exps
                    .iter()
                    .zip(self.exps.iter())
                    .map(|(b, a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(rhs.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Numeric value of the power product at a point.
    pub fn eval(&self, values: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (v, &e) in values.iter().zip(self.exps.iter()) {
            if e > 0 {
                acc *= v.powu(e);
            }
        }
        acc
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

/// Coefficient ring requirements for [`Polynomial`].
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self>
{
    fn to_complex(&self) -> Complex64;
    fn is_negative(&self) -> bool;
    /// |coefficient| as a float, for residual scales and diagnostics.
    fn abs_f64(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Coeff for BigRational {
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coeff for f64 {
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

/// Convert an arbitrary-precision rational to the nearest f64 without
/// overflowing intermediate integer-to-float casts.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Fall back to scaling both sides down by a common power of two.
    let shift = (q.numer().bits().max(q.denom().bits()) as i64 - 900).max(0) as u64;
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// A sparse multivariate polynomial: a map from monomials to nonzero
/// coefficients over a fixed [`Ring`].
#[derive(Clone, PartialEq)]
pub struct Polynomial<C: Coeff> {
    ring: Ring,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self, PolyError> {
        let idx = ring
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_owned()))?;
        Ok(Self::from_term(
            ring,
            Monomial::var(ring.nvars(), idx),
            C::one(),
        ))
    }

    pub fn from_term(ring: &Ring, mono: Monomial, c: C) -> Self {
        assert_eq!(mono.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ring: &Ring, iter: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Option<&C> {
        self.terms.get(mono)
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn max_coeff_abs(&self) -> f64 {
        self.terms
            .values()
            .map(Coeff::abs_f64)
            .fold(0.0, f64::max)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(
                self.ring.to_string(),
                rhs.ring.to_string(),
            ))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_ring(rhs)?;
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_term(m.clone(), c.clone().neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_ring(rhs)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone().neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, mono: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Termwise partial derivative with respect to a ring variable.
    pub fn differentiate(&self, var: &str) -> Result<Self, PolyError> {
        let idx = self
            .ring
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_owned()))?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in self.terms.iter() {
            let e = m.exps()[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[idx] -= 1;
            let mut factor = C::zero();
            for _ in 0..e {
                factor = factor + C::one();
            }
            out.add_term(Monomial::from_exps(exps), c.clone() * factor);
        }
        Ok(out)
    }

    /// Evaluate at a point given per variable name; complex inputs allowed.
    pub fn evaluate(
        &self,
        point: &std::collections::HashMap<String, Complex64>,
    ) -> Result<Complex64, PolyError> {
        let mut values = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.var_names() {
            match point.get(name) {
                Some(v) => values.push(*v),
                None => return Err(PolyError::MissingAssignment(name.clone())),
            }
        }
        Ok(self.eval_at(&values))
    }

    /// Evaluate with values in ring variable order. Powers of each variable
    /// are built once by repeated multiplication, so every monomial value is
    /// a product of cached Horner-style powers.
    pub fn eval_at(&self, values: &[Complex64]) -> Complex64 {
        assert_eq!(values.len(), self.ring.nvars());
        let max_exp: Vec<u32> = (0..self.ring.nvars())
            .map(|i| self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0))
            .collect();
        let pow_tables: Vec<Vec<Complex64>> = values
            .iter()
            .zip(max_exp.iter())
            .map(|(&v, &e)| {
                let mut t = Vec::with_capacity(e as usize + 1);
                t.push(Complex64::new(1.0, 0.0));
                for k in 1..=e {
                    let prev = t[(k - 1) as usize];
                    t.push(prev * v);
                }
                t
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms.iter() {
            let mut val = c.to_complex();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    val *= pow_tables[i][e as usize];
                }
            }
            acc += val;
        }
        acc
    }

    /// Maximal term under the given order. Errors on the zero polynomial.
    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, C), PolyError> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = Some(match best {
                None => m,
                Some(b) => {
                    if order.cmp(m, b) == std::cmp::Ordering::Greater {
                        m
                    } else {
                        b
                    }
                }
            });
        }
        let m = best.ok_or(PolyError::ZeroPolynomial)?;
        Ok((m.clone(), self.terms[m].clone()))
    }

    /// Terms sorted descending under the given order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, C)> {
        let mut v: Vec<(Monomial, C)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Polynomial<D> {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl Polynomial<BigRational> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map_coeffs(rational_to_f64)
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All monomials of total degree at most `d` in `nvars` variables, sorted
/// ascending under `order`. The count is C(d + nvars, nvars).
pub fn monomials_up_to(nvars: usize, d: u32, order: &MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    gen_monomials(&mut exps, 0, d, &mut out);
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

fn gen_monomials(exps: &mut Vec<u32>, var: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if var == exps.len() {
        out.push(Monomial::from_exps(exps.clone()));
        return;
    }
    for e in 0..=remaining {
        exps[var] = e;
        gen_monomials(exps, var + 1, remaining - e, out);
    }
    exps[var] = 0;
}

#[cfg(test)]
mod tests;
