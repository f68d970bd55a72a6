//! Gröbner-basis route to the roots of a zero-dimensional polynomial
//! system: Buchberger's algorithm over exact rationals, the quotient-ring
//! monomial basis, multiplication matrices for every variable, and root
//! extraction as a non-Hermitian eigenproblem.
//!
//! The Buchberger engine works on integer-primitive polynomials
//! (denominators cleared, content divided out) with fraction-free
//! pseudo-reduction, using the coprime and chain pair-elimination criteria
//! and normal selection. The pair order is deterministic, so the reduced
//! basis is reproducible for a given input order.

use crate::linalg;
use crate::poly::{Monomial, MonomialOrder, PolyError, Ring};
use crate::solution::{SolutionKind, SolutionRecord, ValidityWindow};
use crate::{CMat, Complex64, QPoly, RMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroebnerError {
    #[error("the system has no generators")]
    EmptySystem,
    #[error("generators live in different rings")]
    MixedRings,
    #[error("order arity does not match the ring")]
    OrderMismatch,
    #[error(
        "the ideal is not zero-dimensional: no leading term is a pure power of `{0}`"
    )]
    PositiveDimensional(String),
    #[error("pivot variable `{0}` is not in the ring")]
    UnknownPivot(String),
    #[error("eigensolver failed: {0}")]
    Eig(#[from] linalg::LinalgError),
    #[error("pivot matrix is numerically defective; worst pair residual {worst:.3e}")]
    DefectivePivot { worst: f64, residuals: Vec<f64> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A system of generators sharing one ring and one monomial order.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub generators: Vec<QPoly>,
    pub ring: Ring,
    pub order: MonomialOrder,
}

impl PolySystem {
    pub fn new(generators: Vec<QPoly>, order: MonomialOrder) -> Result<Self, GroebnerError> {
        let first = generators.first().ok_or(GroebnerError::EmptySystem)?;
        let ring = first.ring().clone();
        if generators.iter().any(|g| g.ring() != &ring) {
            return Err(GroebnerError::MixedRings);
        }
        if order.nvars() != ring.nvars() {
            return Err(GroebnerError::OrderMismatch);
        }
        Ok(PolySystem {
            generators,
            ring,
            order,
        })
    }

    /// The stationarity system ∂f/∂v = 0 for every ring variable of `f`.
    pub fn stationarity(f: &QPoly, order: MonomialOrder) -> Result<Self, GroebnerError> {
        let gens = f
            .ring()
            .var_names()
            .iter()
            .map(|v| f.differentiate(v))
            .collect::<Result<Vec<_>, _>>()?;
        PolySystem::new(gens, order)
    }

    /// Scale for the residual acceptance of roots: per generator, the
    /// largest coefficient magnitude.
    pub fn coeff_scales(&self) -> Vec<f64> {
        self.generators.iter().map(|g| g.max_coeff_abs()).collect()
    }

    /// Substitute xᵢ → sᵢ·xᵢ: a variable balancing that maps roots r to
    /// r/sᵢ componentwise. Exact when the scales are (small) integers;
    /// used to keep root coordinates near the unit scale for high-degree
    /// Macaulay solves.
    pub fn with_variable_scales(&self, scales: &[BigRational]) -> Result<Self, GroebnerError> {
        assert_eq!(scales.len(), self.ring.nvars());
        let gens = self
            .generators
            .iter()
            .map(|g| {
                QPoly::from_terms(
                    &self.ring,
                    g.terms().map(|(m, c)| {
                        let mut factor = BigRational::one();
                        for (i, &e) in m.exps().iter().enumerate() {
                            for _ in 0..e {
                                factor *= &scales[i];
                            }
                        }
                        (m.clone(), c * factor)
                    }),
                )
            })
            .collect();
        PolySystem::new(gens, self.order.clone())
    }
}

/// Undo a variable balancing on solution records: multiply every
/// coordinate by its scale.
pub fn unscale_records(records: &mut [SolutionRecord], ring: &Ring, scales: &[BigRational]) {
    for rec in records.iter_mut() {
        for (name, value) in rec.values.iter_mut() {
            if let Some(i) = ring.var_index(name) {
                *value *= crate::poly::rational_to_f64(&scales[i]);
            }
        }
    }
}

/// A reduced Gröbner basis: monic, fully inter-reduced generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<QPoly>,
    pub order: MonomialOrder,
    ring: Ring,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }
}

/// Standard monomials of the quotient ring, sorted ascending by the order.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|b| b == m)
    }
}

/// One multiplication matrix per ring variable over the quotient basis.
///
/// Row j of `per_var[i]` holds the coordinates of `normal_form(xᵢ · bⱼ)` in
/// the quotient basis, so a row vector of coordinates is mapped by
/// right-multiplication.
#[derive(Debug, Clone)]
pub struct MultiplicationMatrixSet {
    pub per_var: Vec<RMat>,
    pub basis: QuotientBasis,
    pub ring: Ring,
}

impl MultiplicationMatrixSet {
    pub fn matrix(&self, var: &str) -> Option<&RMat> {
        self.ring.var_index(var).map(|i| &self.per_var[i])
    }

    /// Worst relative commutator over all matrix pairs:
    /// ‖AB − BA‖_F / (‖A‖_F ‖B‖_F).
    pub fn max_commutator(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.per_var.len() {
            for j in i + 1..self.per_var.len() {
                let a = &self.per_var[i];
                let b = &self.per_var[j];
                let c = (a * b - b * a).norm() / (a.norm() * b.norm()).max(f64::MIN_POSITIVE);
                worst = worst.max(c);
            }
        }
        worst
    }
}

// ---- integer-primitive engine ----------------------------------------------

/// Terms sorted descending under the run's order, integer coefficients with
/// content 1 and positive leading coefficient.
#[derive(Debug, Clone)]
struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lt(&self) -> &(Monomial, BigInt) {
        &self.terms[0]
    }

    fn from_qpoly(p: &QPoly, order: &MonomialOrder) -> IPoly {
        let mut denom_lcm = BigInt::one();
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| {
                let v = c.numer() * (&denom_lcm / c.denom());
                (m.clone(), v)
            })
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = IPoly { terms };
        out.normalize();
        out
    }

    fn to_qpoly(&self, ring: &Ring) -> QPoly {
        QPoly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    /// Divide out the integer content and make the leading coefficient
    /// positive.
    fn normalize(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        let negate = self.terms[0].1.is_negative();
        if !g.is_one() || negate {
            let div = if negate { -g } else { g };
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &div;
            }
        }
    }

    /// self·ca − other·(cb · shift), merged in descending order.
    fn combine(
        &self,
        ca: &BigInt,
        other: &IPoly,
        cb: &BigInt,
        shift: &Monomial,
        order: &MonomialOrder,
    ) -> IPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut ia = 0;
        let mut ib = 0;
        while ia < self.terms.len() || ib < other.terms.len() {
            if ia == self.terms.len() {
                let (m, c) = &other.terms[ib];
                out.push((m.mul(shift), -(c * cb)));
                ib += 1;
                continue;
            }
            if ib == other.terms.len() {
                let (m, c) = &self.terms[ia];
                out.push((m.clone(), c * ca));
                ia += 1;
                continue;
            }
            let ma = &self.terms[ia].0;
            let mb = other.terms[ib].0.mul(shift);
            match order.cmp(ma, &mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), &self.terms[ia].1 * ca));
                    ia += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb, -(&other.terms[ib].1 * cb)));
                    ib += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[ia].1 * ca - &other.terms[ib].1 * cb;
                    if !c.is_zero() {
                        out.push((mb, c));
                    }
                    ia += 1;
                    ib += 1;
                }
            }
        }
        IPoly { terms: out }
    }
}

/// Fraction-free full reduction of `f` modulo `gens`.
fn reduce(mut f: IPoly, gens: &[IPoly], order: &MonomialOrder) -> IPoly {
    // `done` terms are irreducible; invariant: every term in `done` is
    // larger than every term of the working remainder.
    let mut done: Vec<(Monomial, BigInt)> = Vec::new();
    'outer: while !f.is_zero() {
        let (m, c) = f.lt().clone();
        for g in gens {
            let (gm, gc) = g.lt();
            if gm.divides(&m) {
                let shift = gm.div_into(&m).expect("divisibility checked");
                let gamma = c.gcd(gc);
                let ca = gc / &gamma;
                let cb = &c / &gamma;
                // Keep the sign of the reduced polynomial stable.
                let (ca, cb) = if ca.is_negative() {
                    (-ca, -cb)
                } else {
                    (ca, cb)
                };
                for (_, dc) in done.iter_mut() {
                    *dc = &*dc * &ca;
                }
                f = f.combine(&ca, g, &cb, &shift, order);
                continue 'outer;
            }
        }
        done.push(f.terms.remove(0));
    }
    let mut out = IPoly { terms: done };
    out.normalize();
    out
}

fn spoly(a: &IPoly, b: &IPoly, order: &MonomialOrder) -> IPoly {
    let (ma, ca) = a.lt();
    let (mb, cb) = b.lt();
    let l = ma.lcm(mb);
    let sa = ma.div_into(&l).expect("lcm divisible");
    let sb = mb.div_into(&l).expect("lcm divisible");
    let gamma = ca.gcd(cb);
    // (cb/γ)·(l/ma)·a − (ca/γ)·(l/mb)·b
    let fa = cb / &gamma;
    let fb = ca / &gamma;
    let shifted_a = IPoly {
        terms: a
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&sa), c.clone()))
            .collect(),
    };
    let mut s = shifted_a.combine(&fa, b, &fb, &sb, order);
    s.normalize();
    s
}

/// Reduced Gröbner basis of the system under its order.
pub fn buchberger(sys: &PolySystem) -> Result<GroebnerBasis, GroebnerError> {
    let order = &sys.order;
    let mut basis: Vec<IPoly> = sys
        .generators
        .iter()
        .map(|g| IPoly::from_qpoly(g, order))
        .filter(|p| !p.is_zero())
        .collect();
    if basis.is_empty() {
        return Err(GroebnerError::EmptySystem);
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut considered: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // Normal selection: the pair with the smallest lcm of leading
        // monomials; ties broken by index for determinism.
        let mut best = 0;
        let mut best_lcm = basis[pairs[0].0].lt().0.lcm(&basis[pairs[0].1].lt().0);
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = basis[i].lt().0.lcm(&basis[j].lt().0);
            match order.cmp(&l, &best_lcm) {
                std::cmp::Ordering::Less => {
                    best = k;
                    best_lcm = l;
                }
                std::cmp::Ordering::Equal if pairs[k] < pairs[best] => {
                    best = k;
                    best_lcm = l;
                }
                _ => {}
            }
        }
        let (i, j) = pairs.swap_remove(best);
        considered.insert((i, j));

        let (mi, _) = basis[i].lt();
        let (mj, _) = basis[j].lt();
        // Coprime-leading-terms criterion.
        if mi.mul(mj) == best_lcm {
            continue;
        }
        // Chain criterion: some k with LT(k) | lcm and both other pairs done.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lt().0.divides(&best_lcm)
                && considered.contains(&key(i, k))
                && considered.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], order);
        let r = reduce(s, &basis, order);
        if !r.is_zero() {
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pairs.push((k, new));
            }
        }
    }

    // Minimize: drop generators whose leading term another leading term
    // divides.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && basis[j].lt().0.divides(&basis[i].lt().0)
                && (basis[j].lt().0 != basis[i].lt().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<IPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();

    // Inter-reduce and make monic over the rationals.
    let mut reduced: Vec<QPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _p)| j != i).map(|(_j, p)| p.clone())
            .collect();
        let r = reduce(minimal[i].clone(), &others, order);
        let q = r.to_qpoly(&sys.ring);
        let (_, lc) = q.leading_term(order)?;
        reduced.push(q.scale(&lc.recip()));
    }
    // Deterministic presentation: ascending leading monomials.
    reduced.sort_by(|a, b| {
        let la = a.leading_term(order).expect("nonzero").0;
        let lb = b.leading_term(order).expect("nonzero").0;
        order.cmp(&la, &lb)
    });
    let leading = reduced
        .iter()
        .map(|g| g.leading_term(order).expect("nonzero").0)
        .collect();
    Ok(GroebnerBasis {
        generators: reduced,
        order: sys.order.clone(),
        ring: sys.ring.clone(),
        leading,
    })
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Remainder of `p` modulo the basis: supported on standard monomials only,
/// idempotent.
pub fn normal_form(p: &QPoly, gb: &GroebnerBasis) -> QPoly {
    let order = &gb.order;
    let mut work = p.clone();
    let mut rem = QPoly::zero(gb.ring());
    'outer: while !work.is_zero() {
        let (m, c) = work.leading_term(order).expect("nonzero");
        for (g, lm) in gb.generators.iter().zip(gb.leading.iter()) {
            if lm.divides(&m) {
                let shift = lm.div_into(&m).expect("divides");
                work = work
                    .try_sub(&g.mul_term(&shift, &c))
                    .expect("same ring");
                continue 'outer;
            }
        }
        let t = QPoly::from_term(gb.ring(), m, c);
        rem = rem.try_add(&t).expect("same ring");
        work = work.try_sub(&t).expect("same ring");
    }
    rem
}

/// Standard monomials (those no leading term divides), ascending under the
/// basis order. Errors when the ideal is not zero-dimensional.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<QuotientBasis, GroebnerError> {
    let n = gb.ring().nvars();
    // Zero-dimensionality: for each variable a pure power appears among the
    // leading terms, bounding the exponent box.
    let mut bounds = vec![0u32; n];
    for v in 0..n {
        let mut bound = None;
        for lm in &gb.leading {
            let exps = lm.exps();
            if exps.iter().enumerate().all(|(i, &e)| i == v || e == 0) && exps[v] > 0 {
                bound = Some(match bound {
                    None => exps[v],
                    Some(b) => exps[v].min(b),
                });
            }
            if lm.is_one() {
                // The ideal is the whole ring; empty quotient.
                return Ok(QuotientBasis { monomials: vec![] });
            }
        }
        bounds[v] =
            bound.ok_or_else(|| GroebnerError::PositiveDimensional(gb.ring.var_names()[v].clone()))?;
    }
    let mut monomials = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate_box(&mut exps, 0, &bounds, &mut |m: &Monomial| {
        if !gb.leading.iter().any(|lm| lm.divides(m)) {
            monomials.push(m.clone());
        }
    });
    monomials.sort_by(|a, b| gb.order.cmp(a, b));
    Ok(QuotientBasis { monomials })
}

fn enumerate_box(
    exps: &mut Vec<u32>,
    var: usize,
    bounds: &[u32],
    f: &mut impl FnMut(&Monomial),
) {
    if var == exps.len() {
        f(&Monomial::from_exps(exps.clone()));
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        enumerate_box(exps, var + 1, bounds, f);
    }
    exps[var] = 0;
}

/// One multiplication matrix per variable: row j holds the quotient-basis
/// coordinates of `normal_form(xᵢ·bⱼ)`. Entries are exact rationals cast to
/// floats.
pub fn mult_matrices(
    gb: &GroebnerBasis,
    qb: &QuotientBasis,
) -> Result<MultiplicationMatrixSet, GroebnerError> {
    let ring = gb.ring().clone();
    let n = ring.nvars();
    let dim = qb.dim();
    let mut per_var = Vec::with_capacity(n);
    for v in 0..n {
        let xv = QPoly::var(&ring, &ring.var_names()[v])?;
        let mut m = RMat::zeros(dim, dim);
        for (j, bj) in qb.monomials.iter().enumerate() {
            let prod = xv.mul_term(bj, &BigRational::one());
            let nf = normal_form(&prod, gb);
            for (mono, c) in nf.terms() {
                let k = qb
                    .position(mono)
                    .expect("normal form is supported on the quotient basis");
                m[(j, k)] = crate::poly::rational_to_f64(c);
            }
        }
        per_var.push(m);
    }
    Ok(MultiplicationMatrixSet {
        per_var,
        basis: qb.clone(),
        ring,
    })
}

// ---- root extraction --------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub pivot: String,
    /// Relative threshold for the real/complex classification.
    pub real_tol: f64,
    pub validity: Option<ValidityWindow>,
    /// Largest acceptable eigenpair residual before the pivot matrix is
    /// reported defective.
    pub eig_residual_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            pivot: "x".into(),
            real_tol: 1e-6,
            validity: None,
            eig_residual_tol: 1e-6,
        }
    }
}

/// An objective polynomial evaluated at each root to fill the energy
/// column, divided by `scale`.
#[derive(Debug, Clone)]
pub struct EnergyObjective {
    pub poly: QPoly,
    pub scale: f64,
}

impl EnergyObjective {
    pub fn eval(&self, values: &[(String, Complex64)]) -> Complex64 {
        let ring = self.poly.ring();
        let point: Vec<Complex64> = ring
            .var_names()
            .iter()
            .map(|n| {
                values
                    .iter()
                    .find(|(name, _)| name == n)
                    .map(|(_, v)| *v)
                    .unwrap_or_else(|| Complex64::new(0.0, 0.0))
            })
            .collect();
        self.poly.eval_at(&point) / self.scale
    }
}

/// Deterministic generic mixing weights for the common-eigenvector
/// computation. A single variable's matrix can carry degenerate eigenvalues
/// (± root pairs share coordinates), which makes its eigenvectors mix root
/// directions; a generic linear combination of all multiplication matrices
/// separates every root while keeping the same common eigenvectors.
pub fn generic_weights(n: usize) -> Vec<f64> {
    (0..n).map(|i| (1.3 + 2.43 * i as f64).cos() + 2.0).collect()
}

/// Eigen-decompose a generic combination of the multiplication matrices and
/// read every root off the common eigenvectors by Rayleigh quotients.
pub fn solve_system(
    mats: &MultiplicationMatrixSet,
    opts: &SolveOptions,
    energy: Option<&EnergyObjective>,
) -> Result<Vec<SolutionRecord>, GroebnerError> {
    if mats.ring.var_index(&opts.pivot).is_none() {
        return Err(GroebnerError::UnknownPivot(opts.pivot.clone()));
    }
    let dim = mats.basis.dim();
    // Row-vector action: eigen-decompose transposes.
    let weights = generic_weights(mats.per_var.len());
    let mut a = RMat::zeros(dim, dim);
    for (w, m) in weights.iter().zip(mats.per_var.iter()) {
        a += m.transpose() * *w;
    }
    let dec = linalg::eig(&a)?;
    let bad = dec.rejected(opts.eig_residual_tol);
    if !bad.is_empty() {
        let worst = dec.residuals.iter().cloned().fold(0.0, f64::max);
        return Err(GroebnerError::DefectivePivot {
            worst,
            residuals: dec.residuals,
        });
    }
    let transposed: Vec<CMat> = mats
        .per_var
        .iter()
        .map(|m| m.transpose().map(|x| Complex64::new(x, 0.0)))
        .collect();
    let names = mats.ring.var_names();
    let mut records = Vec::with_capacity(dec.values.len());
    for j in 0..dec.values.len() {
        let v = dec.vectors.column(j).clone_owned();
        let denom = v.dotc(&v);
        let mut values = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let xi = v.dotc(&(&transposed[i] * &v)) / denom;
            values.push((name.clone(), xi));
        }
        let kind = SolutionRecord::classify(&values, opts.real_tol);
        let valid = opts
            .validity
            .as_ref()
            .map(|w| w.admits(kind, &values))
            .unwrap_or(kind == SolutionKind::Real);
        let energy_val = energy.map(|e| e.eval(&values));
        records.push(SolutionRecord {
            index: 0,
            values,
            energy: energy_val,
            kind,
            valid,
            residual: None,
        });
    }
    crate::solution::sort_records(&mut records);
    Ok(records)
}

/// Fill in and return per-record `max_k |f_k(root)|`.
pub fn residuals(sys: &PolySystem, records: &mut [SolutionRecord]) -> Vec<f64> {
    let mut out = Vec::with_capacity(records.len());
    for rec in records.iter_mut() {
        let point: Vec<Complex64> = sys
            .ring
            .var_names()
            .iter()
            .map(|n| rec.value(n).unwrap_or_else(|| Complex64::new(0.0, 0.0)))
            .collect();
        let r = sys
            .generators
            .iter()
            .map(|g| g.eval_at(&point).norm())
            .fold(0.0, f64::max);
        rec.residual = Some(r);
        out.push(r);
    }
    out
}

/// Check that every S-polynomial of the basis reduces to zero: the defining
/// property, verified in exact arithmetic.
pub fn is_groebner(gb: &GroebnerBasis) -> bool {
    let order = &gb.order;
    let gens: Vec<IPoly> = gb
        .generators
        .iter()
        .map(|g| IPoly::from_qpoly(g, order))
        .collect();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let s = spoly(&gens[i], &gens[j], order);
            if !reduce(s, &gens, order).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests;
