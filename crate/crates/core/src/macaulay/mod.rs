//! Gröbner-free route to the roots: the Macaulay matrix of a degree, its
//! SVD null space, shift-matrix eigenproblems through a pseudoinverse, and
//! degree sweeps.
//!
//! For a system f₁..f_s with degrees dᵢ, `M(d)` stacks the coefficient rows
//! of every product (monomial of degree ≤ d−dᵢ)·fᵢ over the columns of all
//! monomials of degree ≤ d. Null vectors of M(d) that correspond to affine
//! roots are the monomial vectors X̂(root); shift matrices turn the null
//! space into square eigenproblems whose eigenvalues are the root
//! coordinates, one variable at a time.

use crate::groebner::{EnergyObjective, PolySystem};
use crate::linalg;
use crate::poly::{monomials_up_to, Monomial, MonomialOrder, OrderKind};
use crate::solution::{SolutionKind, SolutionRecord, ValidityWindow};
use crate::{CMat, CVec, Complex64, RMat};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MacaulayError {
    #[error("degree {given} is below the largest generator degree {min}")]
    DegreeTooSmall { given: u32, min: u32 },
    #[error("pivot variable `{0}` is not in the ring")]
    UnknownPivot(String),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

/// Row/column sizes of M(d): r(d) = Σᵢ C(d−dᵢ+n, n), q(d) = C(d+n, n).
pub fn dims(degrees: &[u32], nvars: usize, d: u32) -> (usize, usize) {
    let rows = degrees
        .iter()
        .map(|&di| {
            if d < di {
                0
            } else {
                binomial((d - di) as usize + nvars, nvars)
            }
        })
        .sum();
    (rows, binomial(d as usize + nvars, nvars))
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

/// The Macaulay matrix of one degree, with row and column labels and sparse
/// coefficient storage.
#[derive(Debug, Clone)]
pub struct MacaulayMatrix {
    pub degree: u32,
    /// (generator index, multiplier monomial) per row, generator-major.
    pub row_labels: Vec<(usize, Monomial)>,
    /// Column monomials, ascending graded-lex.
    pub col_labels: Vec<Monomial>,
    /// (row, col, value), deterministic order.
    pub triplets: Vec<(usize, usize, f64)>,
}

impl MacaulayMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.row_labels.len(), self.col_labels.len())
    }

    pub fn nnz(&self) -> usize {
        self.triplets.len()
    }

    pub fn to_dense(&self) -> RMat {
        let (r, q) = self.shape();
        let mut m = RMat::zeros(r, q);
        for &(i, j, v) in &self.triplets {
            m[(i, j)] = v;
        }
        m
    }

    /// Coordinate text form `row col value`, one entry per line.
    pub fn to_triplet_text(&self) -> String {
        let mut out = String::new();
        for &(i, j, v) in &self.triplets {
            out.push_str(&format!("{i} {j} {v}\n"));
        }
        out
    }
}

/// Column order of the Macaulay layout for a ring: graded-lex ascending
/// with the ring's declaration order as precedence.
pub fn column_order(nvars: usize) -> MonomialOrder {
    MonomialOrder::new(OrderKind::GradedLex, nvars)
}

/// Build M(d); requires d at least the maximal generator degree.
pub fn build(sys: &PolySystem, d: u32) -> Result<MacaulayMatrix, MacaulayError> {
    let n = sys.ring.nvars();
    let degrees: Vec<u32> = sys.generators.iter().map(|g| g.total_degree()).collect();
    let dmax = degrees.iter().copied().max().unwrap_or(0);
    if d < dmax {
        return Err(MacaulayError::DegreeTooSmall {
            given: d,
            min: dmax,
        });
    }
    let order = column_order(n);
    let col_labels = monomials_up_to(n, d, &order);
    let col_index: HashMap<Monomial, usize> = col_labels
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();

    let mut row_labels = Vec::new();
    let mut triplets = Vec::new();
    for (gi, gen) in sys.generators.iter().enumerate() {
        let multipliers = monomials_up_to(n, d - degrees[gi], &order);
        let terms: Vec<(Monomial, f64)> = gen
            .sorted_terms(&order)
            .into_iter()
            .map(|(m, c)| (m, crate::poly::rational_to_f64(&c)))
            .collect();
        for mult in multipliers {
            let row = row_labels.len();
            row_labels.push((gi, mult.clone()));
            for (m, c) in &terms {
                let col = col_index[&m.mul(&mult)];
                triplets.push((row, col, *c));
            }
        }
    }
    Ok(MacaulayMatrix {
        degree: d,
        row_labels,
        col_labels,
        triplets,
    })
}

/// Orthonormal basis of the numerical null space: right singular vectors
/// whose singular values fall below the threshold.
#[derive(Debug, Clone)]
pub struct NullSpaceBasis {
    /// q × k, orthonormal columns.
    pub z: RMat,
    pub threshold: f64,
    pub rank: usize,
    pub singular_values: Vec<f64>,
}

impl NullSpaceBasis {
    pub fn nullity(&self) -> usize {
        self.z.ncols()
    }
}

pub fn nullspace(m: &MacaulayMatrix, threshold: f64) -> Result<NullSpaceBasis, MacaulayError> {
    let (r, q) = m.shape();
    let dense = m.to_dense();
    // A wide matrix needs the full set of right singular vectors, including
    // the q − r implicit-zero ones the thin form drops.
    let svd = if r < q {
        linalg::svd_full_vt(&dense)?
    } else {
        linalg::svd(&dense)?
    };
    let singular_values = svd.s.clone();
    let rank = singular_values.iter().filter(|&&s| s >= threshold).count();
    let k = q - rank;
    let mut z = RMat::zeros(q, k);
    for (col, vt_row) in (rank..q).enumerate() {
        for i in 0..q {
            z[(i, col)] = svd.vt[(vt_row, i)];
        }
    }
    Ok(NullSpaceBasis {
        z,
        threshold,
        rank,
        singular_values,
    })
}

/// Selection matrices over the base set B = monomials of degree ≤ d−1:
/// row r of S_g picks the column of B[r]·g (S_1 picks B[r] itself).
#[derive(Debug, Clone)]
pub struct ShiftMatrixSet {
    pub base: Vec<Monomial>,
    /// Column index selected by each row of S_1.
    pub s1: Vec<usize>,
    /// Per ring variable, the column index of base[r]·x_g.
    pub per_var: Vec<Vec<usize>>,
}

impl ShiftMatrixSet {
    /// Shifts over the default base B = monomials of degree ≤ d−1.
    pub fn new(nvars: usize, d: u32, col_labels: &[Monomial]) -> Self {
        Self::with_base_degree(nvars, d - 1, col_labels)
    }

    /// Shifts over B = monomials of degree ≤ `base_degree`; every product
    /// B·x_g must stay within the column labels.
    pub fn with_base_degree(nvars: usize, base_degree: u32, col_labels: &[Monomial]) -> Self {
        let order = column_order(nvars);
        let base = monomials_up_to(nvars, base_degree, &order);
        let col_index: HashMap<&Monomial, usize> = col_labels
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let s1 = base.iter().map(|m| col_index[m]).collect();
        let per_var = (0..nvars)
            .map(|v| {
                let xv = Monomial::var(nvars, v);
                base.iter().map(|m| col_index[&m.mul(&xv)]).collect()
            })
            .collect();
        ShiftMatrixSet { base, s1, per_var }
    }

    /// Rows of Z picked by a selection: (S·Z) as a dense |B| × k matrix.
    pub fn select(selection: &[usize], z: &RMat) -> RMat {
        let k = z.ncols();
        let mut out = RMat::zeros(selection.len(), k);
        for (r, &src) in selection.iter().enumerate() {
            for c in 0..k {
                out[(r, c)] = z[(src, c)];
            }
        }
        out
    }

    /// Dense 0/1 form of a selection, |B| × q.
    pub fn to_dense(selection: &[usize], q: usize) -> RMat {
        let mut m = RMat::zeros(selection.len(), q);
        for (r, &c) in selection.iter().enumerate() {
            m[(r, c)] = 1.0;
        }
        m
    }
}

#[derive(Debug, Clone)]
pub struct MacaulaySolveOptions {
    pub pivot: String,
    /// Null-space singular value threshold.
    pub threshold: f64,
    /// Relative cutoff for the pseudoinverse of S1·Z.
    pub pinv_cutoff: f64,
    /// Admissibility: relative residual of (S1·Z)·t·λ = (S_g·Z)·t.
    pub pencil_tol: f64,
    /// Admissibility: cosine similarity between Z·t and the monomial vector
    /// of the candidate root.
    pub structure_tol: f64,
    /// Admissibility for eigenvalue-paired tuples: worst normalized
    /// generator residual at the candidate point.
    pub system_tol: f64,
    pub real_tol: f64,
    pub validity: Option<ValidityWindow>,
}

impl Default for MacaulaySolveOptions {
    fn default() -> Self {
        MacaulaySolveOptions {
            pivot: "x".into(),
            threshold: 1e-4,
            pinv_cutoff: 1e-10,
            pencil_tol: 1e-6,
            structure_tol: 0.99,
            system_tol: 1e-5,
            real_tol: 1e-6,
            validity: None,
        }
    }
}

/// Per-eigencolumn diagnostics kept alongside each admissible record.
#[derive(Debug, Clone)]
pub struct CandidateDiagnostics {
    /// |v₁| / ‖v‖ with v = Z·t; ≈ 1/‖X̂(root)‖ for a true affine root.
    pub affine_score: f64,
    /// Worst per-variable ‖(S₁Z)t·ξ_g − (S_gZ)t‖ / ‖(S_gZ)t‖.
    pub pencil_residual: f64,
    /// Alignment between the candidate root's monomial vector and the
    /// eigencolumn, on the base window.
    pub structure_similarity: f64,
    /// Worst normalized generator residual at the candidate point.
    pub system_residual: f64,
    /// Worst |entry coordinate − least-squares coordinate| when the 1-entry
    /// is resolved well above the numerical floor.
    pub coordinate_cross_check: Option<f64>,
    /// True when the candidate passed the strict admissibility thresholds;
    /// false for best-effort candidates reported at low degrees.
    pub strict: bool,
}

#[derive(Debug, Clone)]
pub struct MacaulaySolution {
    pub record: SolutionRecord,
    pub diagnostics: CandidateDiagnostics,
}

/// Result of one degree: extracted roots plus the matrix profile.
/// `solutions` may include best-effort candidates at degrees whose null
/// space is too inaccurate for a certified extraction; those carry
/// `diagnostics.strict == false` and are excluded from [`Self::admissible`].
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub rank: usize,
    pub nullity: usize,
    pub solutions: Vec<MacaulaySolution>,
}

impl DegreeReport {
    /// Roots that passed the strict admissibility thresholds.
    pub fn admissible(&self) -> impl Iterator<Item = &MacaulaySolution> {
        self.solutions.iter().filter(|s| s.diagnostics.strict)
    }
}

/// Build, null-space, and solve at one degree.
pub fn solve(
    sys: &PolySystem,
    d: u32,
    opts: &MacaulaySolveOptions,
    energy: Option<&EnergyObjective>,
) -> Result<DegreeReport, MacaulayError> {
    let mac = build(sys, d)?;
    let ns = nullspace(&mac, opts.threshold)?;
    solve_with_nullspace(sys, &mac, &ns, opts, energy)
}

/// The reduced shift-pencil data at one degree: the solving basis (most-null
/// columns up to the product of generator degrees), the base window, the
/// selected S·Z blocks and the squared operators W_g = (S₁Z)⁺(S_gZ).
pub struct MacaulayPencil {
    pub mac: MacaulayMatrix,
    pub nullspace: NullSpaceBasis,
    pub z_solve: RMat,
    pub base_degree: u32,
    pub shifts: ShiftMatrixSet,
    pub s1z: RMat,
    pub sgz: Vec<RMat>,
    pub w: Vec<RMat>,
}

pub fn build_pencil(
    sys: &PolySystem,
    d: u32,
    opts: &MacaulaySolveOptions,
) -> Result<MacaulayPencil, MacaulayError> {
    let mac = build(sys, d)?;
    let ns = nullspace(&mac, opts.threshold)?;
    let n = sys.ring.nvars();
    let z_solve: RMat = ns.z.clone();
    let base_degree = affine_window(n, d, &z_solve).unwrap_or(d - 1);
    let shifts = ShiftMatrixSet::with_base_degree(n, base_degree, &mac.col_labels);
    let s1z = ShiftMatrixSet::select(&shifts.s1, &z_solve);
    let sgz: Vec<RMat> = shifts
        .per_var
        .iter()
        .map(|sel| ShiftMatrixSet::select(sel, &z_solve))
        .collect();
    let s1z_pinv = linalg::pinv(&s1z, opts.pinv_cutoff)?;
    let w: Vec<RMat> = sgz.iter().map(|s| &s1z_pinv * s).collect();
    Ok(MacaulayPencil {
        mac,
        nullspace: ns,
        z_solve,
        base_degree,
        shifts,
        s1z,
        sgz,
        w,
    })
}

pub fn solve_with_nullspace(
    sys: &PolySystem,
    mac: &MacaulayMatrix,
    ns: &NullSpaceBasis,
    opts: &MacaulaySolveOptions,
    energy: Option<&EnergyObjective>,
) -> Result<DegreeReport, MacaulayError> {
    let (rows, cols) = mac.shape();
    let mut report = DegreeReport {
        degree: mac.degree,
        rows,
        cols,
        nnz: mac.nnz(),
        rank: ns.rank,
        nullity: ns.nullity(),
        solutions: Vec::new(),
    };
    if ns.nullity() == 0 {
        return Ok(report);
    }
    let n = sys.ring.nvars();
    let pivot_idx = sys
        .ring
        .var_index(&opts.pivot)
        .ok_or_else(|| MacaulayError::UnknownPivot(opts.pivot.clone()))?;
    // The computed null space is used whole: when generators share
    // positive-dimensional structure at infinity, the nullity genuinely
    // grows with the degree and every direction is null.
    let z_solve: RMat = ns.z.clone();
    let k_solve = z_solve.ncols();
    // Base set for the shift pencils. Null vectors of solutions at infinity
    // live in the top degrees; a degree window [e−1, e] on which the rank
    // of the degree-prefix of Z has a plateau sees none of them, and there
    // the pencil is exactly the affine multiplication structure. Without a
    // plateau (degree too small) fall back to B = deg ≤ d−1.
    let base_degree = affine_window(n, mac.degree, &z_solve).unwrap_or(mac.degree - 1);
    let shifts = ShiftMatrixSet::with_base_degree(n, base_degree, &mac.col_labels);
    let s1z = ShiftMatrixSet::select(&shifts.s1, &z_solve);
    let sgz: Vec<RMat> = shifts
        .per_var
        .iter()
        .map(|sel| ShiftMatrixSet::select(sel, &z_solve))
        .collect();
    let s1z_pinv = linalg::pinv(&s1z, opts.pinv_cutoff)?;
    let w_pivot = &s1z_pinv * &sgz[pivot_idx];

    let dec = linalg::eig(&w_pivot)?;
    let s1z_c = to_complex(&s1z);
    let sgz_c: Vec<CMat> = sgz.iter().map(to_complex).collect();
    let z_c = to_complex(&z_solve);
    let names = sys.ring.var_names();

    // Keep the eigencolumns that solve the rectangular pivot pencil
    // (S_p Z)·t = λ·(S_1 Z)·t; the pseudoinverse squaring admits spurious
    // pairs that this residual rejects.
    let mut kept: Vec<(Complex64, CVec)> = Vec::new();
    for j in 0..k_solve {
        let t: CVec = dec.vectors.column(j).clone_owned();
        let lambda = dec.values[j];
        let s1t = &s1z_c * &t;
        if s1t.norm() <= 1e-8 {
            continue; // no low-degree support: not an affine root vector
        }
        let rhs = &sgz_c[pivot_idx] * &t;
        let res = (&s1t * lambda - &rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
        if res <= opts.pencil_tol {
            kept.push((lambda, t));
        }
    }

    // A single variable's eigenvalues can repeat across distinct roots; its
    // eigenvectors then mix root directions with pencil-invisible junk and
    // the vector route breaks down. Non-degenerate eigenvalues keep the
    // eigenvector route; degenerate clusters fall back to pairing the
    // per-variable eigenvalue sets, validated against the null space.
    let clusters = cluster_by_eigenvalue(&kept);
    let mut columns: Vec<CVec> = Vec::new();
    let mut degenerate: Vec<Complex64> = Vec::new();
    for cluster in clusters {
        if cluster.len() == 1 {
            columns.push(kept[cluster[0]].1.clone());
        } else {
            degenerate.push(kept[cluster[0]].0);
        }
    }
    if !degenerate.is_empty() {
        pair_degenerate_clusters(
            &degenerate,
            sys,
            mac,
            &z_solve,
            &s1z_pinv,
            &s1z_c,
            &sgz_c,
            pivot_idx,
            opts,
            energy,
            &mut report,
        )?;
    }

    let mut best_effort: Vec<MacaulaySolution> = Vec::new();
    for t in columns {
        // Coordinates from the pencil-native least squares:
        // ξ_g = ⟨S₁Z·t, S_gZ·t⟩ / ‖S₁Z·t‖², with per-variable residuals.
        let s1t = &s1z_c * &t;
        let s1norm2 = s1t.dotc(&s1t);
        if s1norm2.norm() <= 1e-16 {
            continue;
        }
        let mut values: Vec<(String, Complex64)> = Vec::with_capacity(n);
        let mut pencil_residual = 0.0f64;
        for (i, name) in names.iter().enumerate() {
            let sgt = &sgz_c[i] * &t;
            let xi = s1t.dotc(&sgt) / s1norm2;
            let res = (&s1t * xi - &sgt).norm() / sgt.norm().max(f64::MIN_POSITIVE);
            pencil_residual = pencil_residual.max(res);
            values.push((name.clone(), xi));
        }

        let v = &z_c * &t;
        let vnorm = v.norm().max(f64::MIN_POSITIVE);
        let affine_score = v[0].norm() / vnorm;

        // Structure check on the base window, where solutions at infinity
        // have no support: the candidate's low-degree monomial vector
        // against S₁Z·t.
        let point: Vec<Complex64> = values.iter().map(|(_, x)| *x).collect();
        let xlow: CVec = CVec::from_iterator(
            shifts.base.len(),
            shifts.base.iter().map(|m| m.eval(&point)),
        );
        let xnorm = xlow.norm();
        let s1t_norm = s1t.norm();
        let structure_similarity = if xnorm.is_finite() && xnorm > 0.0 && s1t_norm > 0.0 {
            xlow.dotc(&s1t).norm() / (xnorm * s1t_norm)
        } else {
            0.0
        };
        let system_residual = system_relative_residual(sys, &point);

        // Entry-based coordinates, cross-checked where the 1-entry is
        // resolved.
        let coordinate_cross_check = if affine_score > 1e-3 {
            let inv = v[0];
            let mut worst = 0.0f64;
            for (i, (_, lsq_coord)) in values.iter().enumerate() {
                let col = mac
                    .col_labels
                    .iter()
                    .position(|m| m.total_degree() == 1 && m.exps()[i] == 1)
                    .expect("degree-one monomial present");
                let entry_coord = v[col] / inv;
                worst = worst.max((entry_coord - lsq_coord).norm());
            }
            Some(worst)
        } else {
            None
        };

        // A normalized generator residual at the system_tol level certifies
        // a true root on its own: the coordinates were extracted first and
        // the generators vanish at them, however inaccurately the null
        // basis represents the root vector.
        let pencil_ok = pencil_residual <= opts.pencil_tol
            && structure_similarity >= opts.structure_tol
            && affine_score > 1e-12;
        let strict = pencil_ok || system_residual <= opts.system_tol;
        let relaxed = pencil_residual <= 0.05 && structure_similarity >= 0.9;
        if !strict && !relaxed {
            continue;
        }

        let kind = SolutionRecord::classify(&values, opts.real_tol);
        let valid = opts
            .validity
            .as_ref()
            .map(|wdw| wdw.admits(kind, &values))
            .unwrap_or(kind == SolutionKind::Real);
        let energy_val = energy.map(|e| e.eval(&values));
        let solution = MacaulaySolution {
            record: SolutionRecord {
                index: 0,
                values,
                energy: energy_val,
                kind,
                valid,
                residual: None,
            },
            diagnostics: CandidateDiagnostics {
                affine_score,
                pencil_residual,
                structure_similarity,
                system_residual,
                coordinate_cross_check,
                strict,
            },
        };
        if strict {
            report.solutions.push(solution);
        } else {
            best_effort.push(solution);
        }
    }
    // Degrees too low to resolve the null space cleanly still report their
    // closest candidates, marked non-strict, so degree sweeps can show the
    // trajectory.
    if report.solutions.is_empty() && !best_effort.is_empty() {
        best_effort.sort_by(|a, b| {
            a.diagnostics
                .pencil_residual
                .partial_cmp(&b.diagnostics.pencil_residual)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        report.solutions = best_effort;
    }
    if report.solutions.is_empty() {
        loose_pairing_fallback(sys, &s1z_c, &sgz_c, opts, energy, &mut report)?;
    }
    // Several eigencolumns can resolve the same root once the system
    // residual certifies candidates independently; keep one record per
    // distinct coordinate tuple (the one with the best diagnostics).
    report.solutions.sort_by(|a, b| {
        let ka = (
            !a.diagnostics.strict,
            a.diagnostics.system_residual,
            a.diagnostics.pencil_residual,
        );
        let kb = (
            !b.diagnostics.strict,
            b.diagnostics.system_residual,
            b.diagnostics.pencil_residual,
        );
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut unique: Vec<MacaulaySolution> = Vec::new();
    for s in report.solutions.drain(..) {
        let dup = unique.iter().any(|u| {
            u.record
                .values
                .iter()
                .zip(s.record.values.iter())
                .all(|((_, a), (_, b))| (a - b).norm() <= 1e-5 * a.norm().max(b.norm()).max(1.0))
        });
        if !dup {
            unique.push(s);
        }
    }
    report.solutions = unique;
    report.solutions.sort_by(|a, b| {
        let ka: Vec<f64> = a
            .record
            .values
            .iter()
            .flat_map(|(_, v)| [v.re, v.im])
            .collect();
        let kb: Vec<f64> = b
            .record
            .values
            .iter()
            .flat_map(|(_, v)| [v.re, v.im])
            .collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    for (i, s) in report.solutions.iter_mut().enumerate() {
        s.record.index = i;
    }
    Ok(report)
}

/// Resolve degenerate pivot eigenvalues by pairing them with the other
/// variables' pencil-consistent eigenvalues and keeping the combinations
/// whose monomial vector lies in the computed null space.
#[allow(clippy::too_many_arguments)]
fn pair_degenerate_clusters(
    pivot_values: &[Complex64],
    sys: &PolySystem,
    mac: &MacaulayMatrix,
    z_solve: &RMat,
    s1z_pinv: &RMat,
    s1z_c: &CMat,
    sgz_c: &[CMat],
    pivot_idx: usize,
    opts: &MacaulaySolveOptions,
    energy: Option<&EnergyObjective>,
    report: &mut DegreeReport,
) -> Result<(), MacaulayError> {
    const COMBINATION_CAP: usize = 4096;
    let n = sys.ring.nvars();
    let names = sys.ring.var_names();
    // Pencil-consistent eigenvalue candidates for every other variable.
    let mut candidates: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    let mut worst_lambda_residual = 0.0f64;
    for g in 0..n {
        if g == pivot_idx {
            candidates[g] = pivot_values.to_vec();
            continue;
        }
        let w_g = s1z_pinv * sgz_c[g].map(|z| z.re);
        let dec_g = linalg::eig(&w_g)?;
        for j in 0..dec_g.values.len() {
            let t: CVec = dec_g.vectors.column(j).clone_owned();
            let s1t = s1z_c * &t;
            if s1t.norm() <= 1e-8 {
                continue;
            }
            let rhs = &sgz_c[g] * &t;
            let res = (&s1t * dec_g.values[j] - &rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
            if res <= opts.pencil_tol {
                let lam = dec_g.values[j];
                if !candidates[g].iter().any(|&c| close(c, lam)) {
                    candidates[g].push(lam);
                }
                worst_lambda_residual = worst_lambda_residual.max(res);
            }
        }
    }
    let combos: usize = candidates.iter().map(|c| c.len().max(1)).product();
    if combos == 0 || combos > COMBINATION_CAP {
        return Ok(());
    }
    let z_c = to_complex(z_solve);
    let mut idx = vec![0usize; n];
    loop {
        let point: Vec<Complex64> = (0..n).map(|g| candidates[g][idx[g]]).collect();
        // Validate the tuple: its monomial vector must lie in the null
        // space (projection preserves the norm).
        let xhat: CVec = CVec::from_iterator(
            mac.col_labels.len(),
            mac.col_labels.iter().map(|m| m.eval(&point)),
        );
        let xnorm = xhat.norm();
        if xnorm.is_finite() && xnorm > 0.0 {
            let proj = z_c.adjoint() * &xhat;
            let structure_similarity = proj.norm() / xnorm;
            let system_residual = system_relative_residual(sys, &point);
            if structure_similarity >= opts.structure_tol && system_residual <= opts.system_tol {
                let values: Vec<(String, Complex64)> = names
                    .iter()
                    .cloned()
                    .zip(point.iter().copied())
                    .collect();
                let kind = SolutionRecord::classify(&values, opts.real_tol);
                let valid = opts
                    .validity
                    .as_ref()
                    .map(|wdw| wdw.admits(kind, &values))
                    .unwrap_or(kind == SolutionKind::Real);
                let energy_val = energy.map(|e| e.eval(&values));
                report.solutions.push(MacaulaySolution {
                    record: SolutionRecord {
                        index: 0,
                        values,
                        energy: energy_val,
                        kind,
                        valid,
                        residual: None,
                    },
                    diagnostics: CandidateDiagnostics {
                        affine_score: 1.0 / xnorm,
                        pencil_residual: worst_lambda_residual,
                        structure_similarity,
                        system_residual,
                        coordinate_cross_check: None,
                        strict: true,
                    },
                });
            }
        }
        // Advance the mixed-radix counter.
        let mut g = 0;
        loop {
            if g == n {
                return Ok(());
            }
            idx[g] += 1;
            if idx[g] < candidates[g].len() {
                break;
            }
            idx[g] = 0;
            g += 1;
        }
    }
}

fn to_complex(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Group kept eigenpairs whose eigenvalues coincide within a relative
/// tolerance.
fn cluster_by_eigenvalue(kept: &[(Complex64, CVec)]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..kept.len()).collect();
    order.sort_by(|&a, &b| {
        (kept[a].0.re, kept[a].0.im)
            .partial_cmp(&(kept[b].0.re, kept[b].0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        let lam = kept[idx].0;
        match clusters.last_mut() {
            Some(c) if close(kept[c[0]].0, lam) => c.push(idx),
            _ => clusters.push(vec![idx]),
        }
    }
    clusters
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-7 * a.norm().max(b.norm()).max(1.0)
}

/// Last resort for degrees whose null space is too inaccurate for the
/// eigenvector route: harvest per-variable eigenvalue candidates loosely,
/// pair them combinatorially, and keep the tuples with the smallest
/// normalized system residuals, marked non-strict.
fn loose_pairing_fallback(
    sys: &PolySystem,
    s1z_c: &CMat,
    sgz_c: &[CMat],
    opts: &MacaulaySolveOptions,
    energy: Option<&EnergyObjective>,
    report: &mut DegreeReport,
) -> Result<(), MacaulayError> {
    const LIST_CAP: usize = 16;
    const COMBINATION_CAP: usize = 8192;
    let n = sys.ring.nvars();
    let names = sys.ring.var_names();
    let s1z = s1z_c.map(|z| z.re);
    let s1z_pinv = linalg::pinv(&s1z, opts.pinv_cutoff)?;
    let mut candidates: Vec<Vec<(f64, Complex64)>> = Vec::with_capacity(n);
    for sgz_g in sgz_c.iter().take(n) {
        let w_g = &s1z_pinv * sgz_g.map(|z| z.re);
        let dec_g = linalg::eig(&w_g)?;
        let mut list: Vec<(f64, Complex64)> = Vec::new();
        for j in 0..dec_g.values.len() {
            let t: CVec = dec_g.vectors.column(j).clone_owned();
            let s1t = s1z_c * &t;
            if s1t.norm() <= 1e-8 {
                continue;
            }
            let rhs = sgz_g * &t;
            let res = (&s1t * dec_g.values[j] - &rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
            if res <= 0.9 {
                let lam = dec_g.values[j];
                if !list.iter().any(|(_, c)| close(*c, lam)) {
                    list.push((res, lam));
                }
            }
        }
        list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        list.truncate(LIST_CAP);
        if list.is_empty() {
            return Ok(());
        }
        candidates.push(list);
    }
    let combos: usize = candidates.iter().map(|c| c.len()).product();
    if combos == 0 || combos > COMBINATION_CAP {
        return Ok(());
    }
    let mut scored: Vec<(f64, Vec<Complex64>, f64)> = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let point: Vec<Complex64> = (0..n).map(|g| candidates[g][idx[g]].1).collect();
        let sys_res = system_relative_residual(sys, &point);
        if sys_res <= 0.1 {
            let worst_pencil = (0..n)
                .map(|g| candidates[g][idx[g]].0)
                .fold(0.0f64, f64::max);
            scored.push((sys_res, point, worst_pencil));
        }
        let mut g = 0;
        loop {
            if g == n {
                break 'outer;
            }
            idx[g] += 1;
            if idx[g] < candidates[g].len() {
                break;
            }
            idx[g] = 0;
            g += 1;
        }
    }
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    // Keep the best few tuples that are not near-duplicates of
    // better-scored ones.
    const OUTPUT_CAP: usize = 8;
    let mut chosen: Vec<(f64, Vec<Complex64>, f64)> = Vec::new();
    for (res, point, pencil) in scored {
        let dup = chosen.iter().any(|(_, p, _)| {
            p.iter()
                .zip(point.iter())
                .all(|(a, b)| (a - b).norm() <= 1e-4 * (a.norm().max(b.norm()).max(1.0)))
        });
        if !dup {
            chosen.push((res, point, pencil));
            if chosen.len() >= OUTPUT_CAP {
                break;
            }
        }
    }
    for (sys_res, point, worst_pencil) in chosen {
        let values: Vec<(String, Complex64)> = names
            .iter()
            .cloned()
            .zip(point.iter().copied())
            .collect();
        let kind = SolutionRecord::classify(&values, opts.real_tol);
        let valid = opts
            .validity
            .as_ref()
            .map(|wdw| wdw.admits(kind, &values))
            .unwrap_or(kind == SolutionKind::Real);
        let energy_val = energy.map(|e| e.eval(&values));
        report.solutions.push(MacaulaySolution {
            record: SolutionRecord {
                index: 0,
                values,
                energy: energy_val,
                kind,
                valid,
                residual: None,
            },
            diagnostics: CandidateDiagnostics {
                affine_score: 0.0,
                pencil_residual: worst_pencil,
                structure_similarity: 0.0,
                system_residual: sys_res,
                coordinate_cross_check: None,
                strict: false,
            },
        });
    }
    Ok(())
}

/// Find a base degree e−1 such that the numerical rank of the rows of Z of
/// degree ≤ e−1 equals the rank at degree ≤ e (a Hilbert-function plateau):
/// on that window the solutions at infinity have no support.
fn affine_window(nvars: usize, d: u32, z: &RMat) -> Option<u32> {
    // Row counts per degree prefix follow the graded column layout.
    let mut prev_rank: Option<usize> = None;
    for e in 1..d {
        let rows = binomial(e as usize + nvars, nvars);
        let prefix = z.rows(0, rows).clone_owned();
        let sv = linalg::singular_values(&prefix).ok()?;
        let smax = sv.first().copied().unwrap_or(0.0);
        let rank = sv.iter().filter(|&&s| s > 1e-8 * smax.max(1.0)).count();
        if let Some(p) = prev_rank {
            if p == rank && rank > 0 {
                return Some(e - 1);
            }
        }
        prev_rank = Some(rank);
    }
    None
}

/// Residual of one generator at a point, normalized by the evaluated term
/// magnitudes so it is meaningful at any coefficient and point scale.
fn relative_residual(gen: &crate::QPoly, point: &[Complex64]) -> f64 {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for (m, c) in gen.terms() {
        let term = Complex64::new(crate::poly::rational_to_f64(c), 0.0) * m.eval(point);
        value += term;
        scale += term.norm();
    }
    if scale == 0.0 {
        return 0.0;
    }
    value.norm() / scale
}

/// Worst normalized generator residual at a candidate point.
pub fn system_relative_residual(sys: &PolySystem, point: &[Complex64]) -> f64 {
    sys.generators
        .iter()
        .map(|g| relative_residual(g, point))
        .fold(0.0, f64::max)
}

/// Run build + nullspace + solve over a list of degrees.
pub fn degree_sweep(
    sys: &PolySystem,
    d_list: &[u32],
    opts: &MacaulaySolveOptions,
    energy: Option<&EnergyObjective>,
) -> Result<Vec<DegreeReport>, MacaulayError> {
    d_list
        .iter()
        .map(|&d| solve(sys, d, opts, energy))
        .collect()
}

/// The ground root of a report: among admissible real solutions inside the
/// validity window prefer the lowest energy, falling back to the root
/// closest to the window center.
pub fn ground_root<'a>(
    report: &'a DegreeReport,
    window: &ValidityWindow,
) -> Option<&'a MacaulaySolution> {
    let real: Vec<&MacaulaySolution> = report
        .solutions
        .iter()
        .filter(|s| s.record.kind == SolutionKind::Real)
        .collect();
    let energy_of = |s: &&MacaulaySolution| {
        s.record.energy.map(|e| e.re).unwrap_or(f64::INFINITY)
    };
    let in_window: Vec<&MacaulaySolution> = real
        .iter()
        .copied()
        .filter(|s| window.admits(s.record.kind, &s.record.values))
        .collect();
    if !in_window.is_empty() {
        return in_window
            .into_iter()
            .min_by(|a, b| energy_of(a).partial_cmp(&energy_of(b)).unwrap());
    }
    real.into_iter().min_by(|a, b| {
        let dist = |s: &MacaulaySolution| {
            (s.record.value(&window.var).map(|v| v.re).unwrap_or(f64::MAX) - window.center).abs()
        };
        dist(a).partial_cmp(&dist(b)).unwrap()
    })
}

#[cfg(test)]
mod tests;
