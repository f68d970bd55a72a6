//! Restricted Hartree-Fock total energy of equilateral H3+ in an STO-3G
//! basis, assembled from closed-form s-Gaussian integrals.
//!
//! With the three LCAO coefficients tied together (x = y = z) the total
//! energy collapses to
//!
//! ```text
//! E(x, e, R) = S4(R)·x⁴ + 2·SH(R)·x² − 2e·(SS(R)·x² − 1) + 3/R
//! ```
//!
//! where `SS`, `SH` and `S4` are the sums of overlap, core-Hamiltonian and
//! two-electron integrals over all site combinations. Every integral is
//! evaluated through truncated Taylor jets in the bond length, so the series
//! expansion about a center `R_c` uses analytic derivatives; the final
//! re-expansion from powers of (R − R_c) to powers of R and the scaling to
//! integer coefficients happen in exact rational arithmetic.

pub mod jet;

use crate::poly::{Monomial, PolyError, Polynomial, Ring};
use crate::QPoly;
use jet::{boys0_jet, Jet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HfError {
    #[error("bond length must be positive, got {0}")]
    NonPositiveBondLength(f64),
    #[error("invalid config line `{0}` (expected key=value)")]
    ConfigLine(String),
    #[error("unknown config key `{0}`")]
    ConfigKey(String),
    #[error("invalid number `{0}`")]
    ConfigNumber(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The shipped default objective: the H3+ energy polynomial expanded about
/// R_c = 1.8 to third order and scaled to integer coefficients with n = 8.
pub const REFERENCE_OBJECTIVE_TEXT: &str = "-25940329*R**3*e*x**2 - 61451313*R**3*x**4 + 65640150*R**3*x**2 - 28577961*R**3 + 81961639*R**2*e*x**2 + 1099859207*R**2*x**4 - 811868595*R**2*x**2 + 205761316*R**2 + 342231572*R*e*x**2 - 5233649558*R*x**4 + 3595948148*R*x**2 - 555555556*R - 1960143305*e*x**2 + 200000000*e + 8467967598*x**4 - 6382868964*x**2 + 666666666";

/// Ring (x, e, R) used by the objective and its stationarity system.
pub fn objective_ring() -> Ring {
    Ring::new(&["x", "e", "R"])
}

pub fn reference_objective() -> QPoly {
    Polynomial::parse(&objective_ring(), REFERENCE_OBJECTIVE_TEXT)
        .expect("embedded objective parses")
}

/// STO-3G contraction for hydrogen: three (cᵢ, aᵢ) pairs and the scale ζ.
#[derive(Debug, Clone, PartialEq)]
pub struct Sto3gBasis {
    pub c: [f64; 3],
    pub a: [f64; 3],
    pub zeta: f64,
}

impl Default for Sto3gBasis {
    fn default() -> Self {
        Sto3gBasis {
            c: [0.444635, 0.535328, 0.154329],
            a: [0.109818, 0.405771, 2.227660],
            zeta: 1.24,
        }
    }
}

impl Sto3gBasis {
    /// Gaussian exponents bᵢ = aᵢ·ζ².
    pub fn exponents(&self) -> [f64; 3] {
        let z2 = self.zeta * self.zeta;
        [self.a[0] * z2, self.a[1] * z2, self.a[2] * z2]
    }

    /// Contraction weights dᵢ = cᵢ·(2bᵢ/π)^(3/4).
    pub fn weights(&self) -> [f64; 3] {
        let b = self.exponents();
        let mut d = [0.0; 3];
        for i in 0..3 {
            d[i] = self.c[i] * (2.0 * b[i] / std::f64::consts::PI).powf(0.75);
        }
        d
    }

    pub fn primitives(&self, center: [f64; 3]) -> [PrimitiveGaussian; 3] {
        let b = self.exponents();
        let d = self.weights();
        std::array::from_fn(|i| PrimitiveGaussian {
            exponent: b[i],
            weight: d[i],
            center,
        })
    }
}

/// One s-type primitive `d·exp(−b |r − center|²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveGaussian {
    /// b, in inverse squared Bohr; must be positive.
    pub exponent: f64,
    /// The contraction weight d (normalization included).
    pub weight: f64,
    /// Center, in Bohr.
    pub center: [f64; 3],
}

/// Equilateral triangle of three protons with edge length R (Bohr).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub r: f64,
}

impl Geometry {
    pub fn equilateral(r: f64) -> Result<Self, HfError> {
        if r > 0.0 {
            Ok(Geometry { r })
        } else {
            Err(HfError::NonPositiveBondLength(r))
        }
    }

    pub fn sites(&self) -> [[f64; 3]; 3] {
        sites_f64(self.r)
    }
}

fn sites_f64(r: f64) -> [[f64; 3]; 3] {
    [
        [0.0, 0.0, 0.0],
        [r, 0.0, 0.0],
        [0.5 * r, 0.5 * 3f64.sqrt() * r, 0.0],
    ]
}

// ---- primitive integrals (f64 entry points wrap the jet kernels) ---------

/// Overlap (p|q) of two s-primitives, weights included.
pub fn overlap(p: &PrimitiveGaussian, q: &PrimitiveGaussian) -> f64 {
    prim_overlap(
        p.exponent,
        &jet3_const(p.center, 0),
        q.exponent,
        &jet3_const(q.center, 0),
    )
    .value()
        * p.weight
        * q.weight
}

/// Kinetic energy (p| −½∇² |q).
pub fn kinetic(p: &PrimitiveGaussian, q: &PrimitiveGaussian) -> f64 {
    prim_kinetic(
        p.exponent,
        &jet3_const(p.center, 0),
        q.exponent,
        &jet3_const(q.center, 0),
    )
    .value()
        * p.weight
        * q.weight
}

/// Nuclear attraction −(p| 1/|r−U| |q) for a unit charge at `u`.
pub fn nuclear_attraction(p: &PrimitiveGaussian, q: &PrimitiveGaussian, u: [f64; 3]) -> f64 {
    prim_nuclear(
        p.exponent,
        &jet3_const(p.center, 0),
        q.exponent,
        &jet3_const(q.center, 0),
        &jet3_const(u, 0),
    )
    .value()
        * p.weight
        * q.weight
}

/// Two-electron repulsion [pq|rs] in chemists' notation.
pub fn two_electron(
    p: &PrimitiveGaussian,
    q: &PrimitiveGaussian,
    r: &PrimitiveGaussian,
    s: &PrimitiveGaussian,
) -> f64 {
    prim_eri(
        p.exponent,
        &jet3_const(p.center, 0),
        q.exponent,
        &jet3_const(q.center, 0),
        r.exponent,
        &jet3_const(r.center, 0),
        s.exponent,
        &jet3_const(s.center, 0),
    )
    .value()
        * p.weight
        * q.weight
        * r.weight
        * s.weight
}

/// Boys function F₀.
pub fn boys_f0(t: f64) -> f64 {
    jet::boys(0, t)[0]
}

// ---- jet kernels ----------------------------------------------------------

type Vec3J = [Jet; 3];

fn jet3_const(v: [f64; 3], order: usize) -> Vec3J {
    std::array::from_fn(|i| Jet::constant(v[i], order))
}

fn dist2(a: &Vec3J, b: &Vec3J) -> Jet {
    let mut acc = Jet::constant(0.0, a[0].order());
    for i in 0..3 {
        let d = &a[i] - &b[i];
        acc = &acc + &(&d * &d);
    }
    acc
}

fn gaussian_product_center(pa: f64, a: &Vec3J, pb: f64, b: &Vec3J) -> Vec3J {
    let inv = 1.0 / (pa + pb);
    std::array::from_fn(|i| (&a[i].scale(pa) + &b[i].scale(pb)).scale(inv))
}

fn prim_overlap(pa: f64, a: &Vec3J, pb: f64, b: &Vec3J) -> Jet {
    let gamma = pa + pb;
    let mu = pa * pb / gamma;
    let pref = (std::f64::consts::PI / gamma).powf(1.5);
    dist2(a, b).scale(-mu).exp().scale(pref)
}

fn prim_kinetic(pa: f64, a: &Vec3J, pb: f64, b: &Vec3J) -> Jet {
    let gamma = pa + pb;
    let mu = pa * pb / gamma;
    let ab2 = dist2(a, b);
    let pref = (std::f64::consts::PI / gamma).powf(1.5);
    let poly = &Jet::constant(3.0, ab2.order()) - &ab2.scale(2.0 * mu);
    let exp = ab2.scale(-mu).exp();
    (&poly * &exp).scale(mu * pref)
}

fn prim_nuclear(pa: f64, a: &Vec3J, pb: f64, b: &Vec3J, u: &Vec3J) -> Jet {
    let gamma = pa + pb;
    let mu = pa * pb / gamma;
    let pref = -2.0 * std::f64::consts::PI / gamma;
    let p = gaussian_product_center(pa, a, pb, b);
    let t = dist2(&p, u).scale(gamma);
    let f0 = boys0_jet(&t);
    (&dist2(a, b).scale(-mu).exp() * &f0).scale(pref)
}

#[allow(clippy::too_many_arguments)]
fn prim_eri(
    pa: f64,
    a: &Vec3J,
    pb: f64,
    b: &Vec3J,
    pc: f64,
    c: &Vec3J,
    pd: f64,
    d: &Vec3J,
) -> Jet {
    let gp = pa + pb;
    let gq = pc + pd;
    let mu_p = pa * pb / gp;
    let mu_q = pc * pd / gq;
    let pref = 2.0 * std::f64::consts::PI.powf(2.5) / (gp * gq * (gp + gq).sqrt());
    let p = gaussian_product_center(pa, a, pb, b);
    let q = gaussian_product_center(pc, c, pd, d);
    let t = dist2(&p, &q).scale(gp * gq / (gp + gq));
    let f0 = boys0_jet(&t);
    let damp = (&dist2(a, b).scale(-mu_p) + &dist2(c, d).scale(-mu_q)).exp();
    (&damp * &f0).scale(pref)
}

// ---- contracted site integrals --------------------------------------------

fn sites_jet(r: &Jet) -> [Vec3J; 3] {
    let zero = Jet::constant(0.0, r.order());
    [
        [zero.clone(), zero.clone(), zero.clone()],
        [r.clone(), zero.clone(), zero.clone()],
        [r.scale(0.5), r.scale(0.5 * 3f64.sqrt()), zero],
    ]
}

struct Contraction {
    b: [f64; 3],
    d: [f64; 3],
}

impl Contraction {
    fn overlap(&self, a: &Vec3J, b: &Vec3J) -> Jet {
        self.pair_sum(|pa, pb| prim_overlap(pa, a, pb, b))
    }

    fn kinetic(&self, a: &Vec3J, b: &Vec3J) -> Jet {
        self.pair_sum(|pa, pb| prim_kinetic(pa, a, pb, b))
    }

    fn nuclear(&self, a: &Vec3J, b: &Vec3J, u: &Vec3J) -> Jet {
        self.pair_sum(|pa, pb| prim_nuclear(pa, a, pb, b, u))
    }

    fn pair_sum(&self, f: impl Fn(f64, f64) -> Jet) -> Jet {
        let mut acc: Option<Jet> = None;
        for i in 0..3 {
            for j in 0..3 {
                let term = f(self.b[i], self.b[j]).scale(self.d[i] * self.d[j]);
                acc = Some(match acc {
                    None => term,
                    Some(a) => &a + &term,
                });
            }
        }
        acc.unwrap()
    }

    fn eri(&self, a: &Vec3J, b: &Vec3J, c: &Vec3J, d: &Vec3J) -> Jet {
        let mut acc: Option<Jet> = None;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let term =
                            prim_eri(self.b[i], a, self.b[j], b, self.b[k], c, self.b[l], d)
                                .scale(self.d[i] * self.d[j] * self.d[k] * self.d[l]);
                        acc = Some(match acc {
                            None => term,
                            Some(s) => &s + &term,
                        });
                    }
                }
            }
        }
        acc.unwrap()
    }
}

/// All contracted integrals at a fixed bond length, indexed by site.
#[derive(Debug, Clone)]
pub struct IntegralSet {
    pub s: [[f64; 3]; 3],
    pub k: [[f64; 3]; 3],
    /// v[p][q][u] = V_pq,u.
    pub v: [[[f64; 3]; 3]; 3],
    /// eri[p][q][x][y] = [pq|xy].
    pub eri: [[[[f64; 3]; 3]; 3]; 3],
}

pub fn integral_set(basis: &Sto3gBasis, geom: &Geometry) -> IntegralSet {
    let r = Jet::constant(geom.r, 0);
    let sites = sites_jet(&r);
    let con = Contraction {
        b: basis.exponents(),
        d: basis.weights(),
    };
    let mut out = IntegralSet {
        s: [[0.0; 3]; 3],
        k: [[0.0; 3]; 3],
        v: [[[0.0; 3]; 3]; 3],
        eri: [[[[0.0; 3]; 3]; 3]; 3],
    };
    for p in 0..3 {
        for q in 0..3 {
            out.s[p][q] = con.overlap(&sites[p], &sites[q]).value();
            out.k[p][q] = con.kinetic(&sites[p], &sites[q]).value();
            for u in 0..3 {
                out.v[p][q][u] = con.nuclear(&sites[p], &sites[q], &sites[u]).value();
            }
            for x in 0..3 {
                for y in 0..3 {
                    out.eri[p][q][x][y] =
                        con.eri(&sites[p], &sites[q], &sites[x], &sites[y]).value();
                }
            }
        }
    }
    out
}

/// The R-dependent coefficient functions of the symmetric energy: sums over
/// all site combinations of S, H = K + ΣV, and the two-electron integrals,
/// plus the nuclear repulsion 3/R.
struct EnergyJets {
    ss: Jet,
    sh: Jet,
    s4: Jet,
    nuc: Jet,
}

fn energy_jets(basis: &Sto3gBasis, r: &Jet) -> EnergyJets {
    let sites = sites_jet(r);
    let con = Contraction {
        b: basis.exponents(),
        d: basis.weights(),
    };
    let order = r.order();
    // The normalization sum uses ⟨φ_P|φ_P⟩ = 1 on the diagonal; the basis
    // functions are normalized to that accuracy and the constraint is
    // written against exact unit norms.
    let mut ss = Jet::constant(3.0, order);
    let mut sh = Jet::constant(0.0, order);
    let mut s4 = Jet::constant(0.0, order);
    for p in 0..3 {
        for q in 0..3 {
            if p != q {
                ss = &ss + &con.overlap(&sites[p], &sites[q]);
            }
            let mut h = con.kinetic(&sites[p], &sites[q]);
            for u in 0..3 {
                h = &h + &con.nuclear(&sites[p], &sites[q], &sites[u]);
            }
            sh = &sh + &h;
            for x in 0..3 {
                for y in 0..3 {
                    s4 = &s4 + &con.eri(&sites[p], &sites[q], &sites[x], &sites[y]);
                }
            }
        }
    }
    let nuc = &Jet::constant(3.0, order) / r;
    EnergyJets { ss, sh, s4, nuc }
}

/// Ring (x, e) of the fixed-R energy polynomial.
pub fn energy_ring() -> Ring {
    Ring::new(&["x", "e"])
}

/// Total energy at a fixed bond length as a polynomial in (x, e) with terms
/// {x⁴, x², e·x², e, 1}.
pub fn total_energy(basis: &Sto3gBasis, geom: &Geometry) -> Polynomial<f64> {
    let jets = energy_jets(basis, &Jet::constant(geom.r, 0));
    let ring = energy_ring();
    let mono = |xe: u32, ee: u32| Monomial::from_exps(vec![xe, ee]);
    Polynomial::from_terms(
        &ring,
        [
            (mono(4, 0), jets.s4.value()),
            (mono(2, 0), 2.0 * jets.sh.value()),
            (mono(2, 1), -2.0 * jets.ss.value()),
            (mono(0, 1), 2.0),
            (mono(0, 0), jets.nuc.value()),
        ],
    )
}

/// Taylor-expand the energy about `rc` to the given order in R, re-expand
/// into powers of R exactly, and (for `scale_exp > 0`) multiply by
/// 10^scale_exp and round every coefficient half-away-from-zero to an
/// integer. With `scale_exp = 0` the unrounded expansion is returned.
pub fn expand_and_rationalize(
    basis: &Sto3gBasis,
    rc: &BigRational,
    order: usize,
    scale_exp: u32,
) -> Result<QPoly, HfError> {
    let rc_f = crate::poly::rational_to_f64(rc);
    if rc_f <= 0.0 {
        return Err(HfError::NonPositiveBondLength(rc_f));
    }
    let jets = energy_jets(basis, &Jet::variable(rc_f, order));
    let ring = objective_ring();
    let mono = |xe: u32, ee: u32, re: u32| Monomial::from_exps(vec![xe, ee, re]);

    // Powers of (R - rc) as exact univariate coefficient lists in R.
    let mut delta_pows: Vec<Vec<BigRational>> = Vec::with_capacity(order + 1);
    delta_pows.push(vec![BigRational::one()]);
    for k in 1..=order {
        let prev = delta_pows[k - 1].clone();
        let mut next = vec![BigRational::zero(); k + 1];
        for (j, cj) in prev.iter().enumerate() {
            next[j + 1] += cj;
            next[j] -= cj * rc;
        }
        delta_pows.push(next);
    }

    let pieces: [(u32, u32, &Jet, i64); 4] = [
        (4, 0, &jets.s4, 1),
        (2, 0, &jets.sh, 2),
        (2, 1, &jets.ss, -2),
        (0, 0, &jets.nuc, 1),
    ];
    let mut out = QPoly::zero(&ring);
    for &(xe, ee, jet, factor) in pieces.iter() {
        let factor = BigRational::from_integer(BigInt::from(factor));
        for (k, dpow) in delta_pows.iter().enumerate() {
            let qk = BigRational::from_float(jet.coeff(k)).unwrap_or_else(BigRational::zero);
            if qk.is_zero() {
                continue;
            }
            let qk = qk * &factor;
            for (j, cj) in dpow.iter().enumerate() {
                let coeff = &qk * cj;
                out = out.try_add(&QPoly::from_term(&ring, mono(xe, ee, j as u32), coeff))?;
            }
        }
    }
    // The Lagrange term contributes +2e independent of R.
    out = out.try_add(&QPoly::from_term(
        &ring,
        mono(0, 1, 0),
        BigRational::from_integer(BigInt::from(2)),
    ))?;

    if scale_exp == 0 {
        return Ok(out);
    }
    let scale = BigRational::from_integer(BigInt::from(10).pow(scale_exp));
    Ok(out.map_coeffs(|c| BigRational::from_integer(round_half_away(&(c * &scale)))))
}

/// Round to the nearest integer, halves away from zero.
pub fn round_half_away(q: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    if q.is_negative() {
        -((-q + half).floor().to_integer())
    } else {
        (q + half).floor().to_integer()
    }
}

/// Energy along the normalization constraint: x is fixed by Σ½DᵢⱼSᵢⱼ = 1,
/// where the e-term vanishes identically.
pub fn exact_energy_curve(basis: &Sto3gBasis, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter()
        .map(|&r| (r, exact_energy_at(basis, r)))
        .collect()
}

pub fn exact_energy_at(basis: &Sto3gBasis, r: f64) -> f64 {
    let jets = energy_jets(basis, &Jet::constant(r, 0));
    let x2 = 1.0 / jets.ss.value();
    jets.s4.value() * x2 * x2 + 2.0 * jets.sh.value() * x2 + jets.nuc.value()
}

/// Energy of a polynomial objective on its own constraint surface:
/// ∂obj/∂e = c₂(R)·x² + c₀(R) = 0 fixes x², and the e-term then vanishes.
/// `scale` divides the result back to Hartree (10^n for rationalized
/// objectives). Returns `None` where the constraint has no real solution.
pub fn constrained_energy(obj: &QPoly, scale: f64, r: f64) -> Option<f64> {
    let ring = obj.ring().clone();
    let de = obj.differentiate("e").ok()?;
    let x_idx = ring.var_index("x")?;
    let e_idx = ring.var_index("e")?;
    let r_idx = ring.var_index("R")?;
    let mut pt = vec![crate::Complex64::new(0.0, 0.0); ring.nvars()];
    pt[r_idx] = crate::Complex64::new(r, 0.0);
    // ∂obj/∂e is c2(R)·x² + c0(R); read both off by evaluating at x = 0, 1.
    let c0 = de.eval_at(&pt);
    pt[x_idx] = crate::Complex64::new(1.0, 0.0);
    let c2 = de.eval_at(&pt) - c0;
    let x2 = -(c0.re / c2.re);
    if x2.is_nan() || x2 <= 0.0 {
        return None;
    }
    pt[x_idx] = crate::Complex64::new(x2.sqrt(), 0.0);
    pt[e_idx] = crate::Complex64::new(0.0, 0.0);
    Some(obj.eval_at(&pt).re / scale)
}

// ---- configuration ---------------------------------------------------------

/// Expansion parameters plus basis overrides, read from `basis.cfg`-style
/// `key=value` text (keys: c1..c3, a1..a3, zeta, rc, order, n).
#[derive(Debug, Clone)]
pub struct HfConfig {
    pub basis: Sto3gBasis,
    pub rc: BigRational,
    pub order: usize,
    pub scale_exp: u32,
}

impl Default for HfConfig {
    fn default() -> Self {
        HfConfig {
            basis: Sto3gBasis::default(),
            rc: BigRational::new(BigInt::from(9), BigInt::from(5)),
            order: 3,
            scale_exp: 8,
        }
    }
}

impl HfConfig {
    pub fn parse(text: &str) -> Result<Self, HfError> {
        let mut cfg = HfConfig::default();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| HfError::ConfigLine(line.to_owned()))?;
            let key = key.trim();
            let value = value.trim();
            let num = || -> Result<f64, HfError> {
                value
                    .parse::<f64>()
                    .map_err(|_| HfError::ConfigNumber(value.to_owned()))
            };
            match key {
                "c1" => cfg.basis.c[0] = num()?,
                "c2" => cfg.basis.c[1] = num()?,
                "c3" => cfg.basis.c[2] = num()?,
                "a1" => cfg.basis.a[0] = num()?,
                "a2" => cfg.basis.a[1] = num()?,
                "a3" => cfg.basis.a[2] = num()?,
                "zeta" => cfg.basis.zeta = num()?,
                "rc" => cfg.rc = parse_decimal_rational(value)?,
                "order" => {
                    cfg.order = value
                        .parse()
                        .map_err(|_| HfError::ConfigNumber(value.to_owned()))?
                }
                "n" | "scale_exp" => {
                    cfg.scale_exp = value
                        .parse()
                        .map_err(|_| HfError::ConfigNumber(value.to_owned()))?
                }
                other => return Err(HfError::ConfigKey(other.to_owned())),
            }
        }
        Ok(cfg)
    }
}

/// Parse `1.8`, `9/5` or `2` as an exact rational.
pub fn parse_decimal_rational(text: &str) -> Result<BigRational, HfError> {
    let t = text.trim();
    let bad = || HfError::ConfigNumber(t.to_owned());
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (sign, t) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t),
    };
    let (int_part, frac_part) = match t.split_once('.') {
        Some((i, f)) => (i, f),
        None => (t, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n = BigInt::from_str(&digits).map_err(|_| bad())?;
    let d = BigInt::from(10).pow(frac_part.len() as u32);
    Ok(BigRational::new(BigInt::from(sign) * n, d))
}
