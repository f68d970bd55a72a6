//! Verification against the embedded reference data: each check compares a
//! freshly computed artifact to its table at a pinned tolerance and reports
//! pass/fail with located differences.

use crate::tables;
use moleig::groebner::{self, unscale_records, SolveOptions};
use moleig::hf::{self, HfConfig};
use moleig::linalg;
use moleig::macaulay::{self, DegreeReport, MacaulaySolveOptions};
use moleig::qsim::{
    self, fable_encode, fable_encode_real, ipea_complex, phase_distance, IpeaOptions,
    PipelineConfig, Statevector,
};
use moleig::solution::{canonical_key, match_key_multisets, SolutionKind, SolutionRecord};
use moleig::{systems, CMat, Complex64, RMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use std::cell::OnceCell;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

pub const ALL_CHECKS: [&str; 14] = [
    "OBJ", "T1", "RES", "COMM", "T2", "T4", "T5", "T6", "T7", "T8", "XROUTE", "IPEA", "QPE",
    "PROJ",
];
// CURVE is appended below; kept separate so the array literal stays tidy.
pub const EXTRA_CHECKS: [&str; 1] = ["CURVE"];

pub struct CheckResult {
    pub id: &'static str,
    pub label: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub duration: Duration,
}

impl CheckResult {
    pub fn format_line(&self) -> String {
        format!(
            "[{}] {:7} {} ({:.1?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.label,
            self.duration
        )
    }
}

struct GroebnerArtifacts {
    records: Vec<SolutionRecord>,
    ops: Vec<RMat>,
    ground_states: Vec<Statevector>,
    quotient_dim: usize,
    commutator: f64,
    elapsed: Duration,
}

#[derive(Default)]
pub struct Verifier {
    groebner: OnceCell<Result<GroebnerArtifacts, String>>,
    sweep: OnceCell<Result<(Vec<DegreeReport>, Duration), String>>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    fn groebner(&self) -> Result<&GroebnerArtifacts, String> {
        self.groebner
            .get_or_init(|| {
                let started = Instant::now();
                let sys = systems::h3_stationarity();
                let gb = groebner::buchberger(&sys).map_err(|e| e.to_string())?;
                let qb = groebner::quotient_basis(&gb).map_err(|e| e.to_string())?;
                let mats = groebner::mult_matrices(&gb, &qb).map_err(|e| e.to_string())?;
                let commutator = mats.max_commutator();
                let opts = SolveOptions {
                    validity: Some(systems::h3_validity()),
                    ..Default::default()
                };
                let energy = systems::h3_energy();
                let mut records = groebner::solve_system(&mats, &opts, Some(&energy))
                    .map_err(|e| e.to_string())?;
                groebner::residuals(&sys, &mut records);
                let elapsed = started.elapsed();

                // Common eigenvectors of the ground pair for the encoding
                // checks.
                let ops: Vec<RMat> = mats.per_var.iter().map(|m| m.transpose()).collect();
                let weights = groebner::generic_weights(3);
                let mut a_gen = RMat::zeros(qb.dim(), qb.dim());
                for (w, m) in weights.iter().zip(ops.iter()) {
                    a_gen += m * *w;
                }
                let dec = linalg::eig(&a_gen).map_err(|e| e.to_string())?;
                let mut ground_states = Vec::new();
                for want in [0.4050f64, -0.4050] {
                    for j in 0..qb.dim() {
                        let v = dec.vectors.column(j).clone_owned();
                        let num = v.dotc(&(ops[0].map(|x| Complex64::new(x, 0.0)) * &v));
                        let x = num / v.dotc(&v);
                        if (x.re - want).abs() < 1e-3 && x.im.abs() < 1e-6 {
                            ground_states
                                .push(Statevector::embed(v.as_slice(), 5).map_err(|e| e.to_string())?);
                            break;
                        }
                    }
                }
                if ground_states.len() != 2 {
                    return Err("ground eigenvector pair not found".into());
                }
                Ok(GroebnerArtifacts {
                    records,
                    ops,
                    ground_states,
                    quotient_dim: qb.dim(),
                    commutator,
                    elapsed,
                })
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn sweep(&self) -> Result<&(Vec<DegreeReport>, Duration), String> {
        self.sweep
            .get_or_init(|| {
                let sys = systems::h3_stationarity();
                let energy = systems::h3_energy();
                let opts = MacaulaySolveOptions {
                    validity: Some(systems::h3_validity()),
                    ..Default::default()
                };
                let started = Instant::now();
                let reports =
                    macaulay::degree_sweep(&sys, &[6, 8, 10, 12, 16, 20, 30], &opts, Some(&energy))
                        .map_err(|e| e.to_string())?;
                Ok((reports, started.elapsed()))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn run(&self, only: Option<&[String]>) -> Vec<CheckResult> {
        let enabled = |id: &str| match only {
            None => true,
            Some(ids) => ids.iter().any(|x| x.eq_ignore_ascii_case(id)),
        };
        let mut results = Vec::new();
        // Table integrity is non-optional: corrupted data must fail loudly.
        let corrupted = tables::integrity_failures();
        if !corrupted.is_empty() {
            results.push(CheckResult {
                id: "TABLES",
                label: "embedded table integrity",
                passed: false,
                details: corrupted
                    .iter()
                    .map(|id| {
                        format!(
                            "table {id} does not match its checksum (current {:#018x})",
                            tables::checksum_of(id).unwrap_or(0)
                        )
                    })
                    .collect(),
                duration: Duration::ZERO,
            });
            return results;
        }
        type Check = (&'static str, &'static str, fn(&Verifier) -> Result<Vec<String>, Vec<String>>);
        let checks: [Check; 15] = [
            ("OBJ", "objective reproduction", check_obj),
            ("T1", "stationarity solutions", check_t1),
            ("RES", "root residual bounds", check_res),
            ("COMM", "multiplication matrices commute", check_comm),
            ("T2", "block encoding accuracy", check_t2),
            ("T4", "encoded expectation values", check_t4),
            ("T5", "two-level matrix profiles", check_t5),
            ("T6", "two-level roots", check_t6),
            ("T7", "stationarity matrix profiles", check_t7),
            ("T8", "ground-root trajectory", check_t8),
            ("XROUTE", "cross-route agreement", check_xroute),
            ("IPEA", "phase estimation properties", check_ipea),
            ("QPE", "emulated pipeline ground rows", check_qpe),
            ("PROJ", "projection circuit convergence", check_proj),
            ("CURVE", "energy curve agreement", check_curve),
        ];
        for (id, label, f) in checks {
            if !enabled(id) {
                continue;
            }
            let started = Instant::now();
            let outcome = f(self);
            let duration = started.elapsed();
            let (passed, details) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            results.push(CheckResult {
                id,
                label,
                passed,
                details,
                duration,
            });
        }
        results
    }
}

type CheckOutcome = Result<Vec<String>, Vec<String>>;

fn check_obj(_v: &Verifier) -> CheckOutcome {
    let started = Instant::now();
    let cfg = HfConfig::default();
    let obj = hf::expand_and_rationalize(&cfg.basis, &cfg.rc, cfg.order, cfg.scale_exp)
        .map_err(|e| vec![e.to_string()])?;
    let reference = hf::reference_objective();
    let mut details = Vec::new();
    let mut failures = Vec::new();
    if obj.num_terms() != reference.num_terms() {
        failures.push(format!(
            "term count {} differs from the reference {}",
            obj.num_terms(),
            reference.num_terms()
        ));
    }
    let one = BigRational::from_integer(BigInt::from(1));
    for (m, want) in reference.terms() {
        let got = obj
            .coeff(m)
            .cloned()
            .unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
        let diff = got.clone() - want.clone();
        let diff = if diff < BigRational::from_integer(BigInt::from(0)) {
            -diff
        } else {
            diff
        };
        if diff > one {
            failures.push(format!("coefficient of {m:?}: got {got}, want {want}"));
        }
    }
    let elapsed = started.elapsed();
    details.push(format!(
        "all {} coefficients within ±1 in {elapsed:.1?}",
        reference.num_terms()
    ));
    if elapsed > Duration::from_secs(10) {
        failures.push(format!("generation took {elapsed:.1?} (budget 10 s)"));
    }
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn rows_to_keys(rows: &[[f64; 8]]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|row| {
            let values = vec![
                ("x".to_string(), Complex64::new(row[0], row[1])),
                ("e".to_string(), Complex64::new(row[2], row[3])),
                ("R".to_string(), Complex64::new(row[4], row[5])),
            ];
            canonical_key(&values, Some(Complex64::new(row[6], row[7])), &["x"])
        })
        .collect()
}

fn check_t1(v: &Verifier) -> CheckOutcome {
    let art = v.groebner().map_err(|e| vec![e])?;
    let mut details = Vec::new();
    let mut failures = Vec::new();
    if art.records.len() != 22 {
        failures.push(format!("expected 22 solutions, got {}", art.records.len()));
    }
    if art.quotient_dim != 22 {
        failures.push(format!(
            "quotient dimension {} (expected 22)",
            art.quotient_dim
        ));
    }
    let keys_of = |kind: SolutionKind| -> Vec<Vec<f64>> {
        art.records
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| canonical_key(&r.values, r.energy, &["x"]))
            .collect()
    };
    if let Err(e) = match_key_multisets(
        keys_of(SolutionKind::Real),
        rows_to_keys(&tables::T1_REAL),
        1e-3,
    ) {
        failures.push(format!("real rows: {e}"));
    } else {
        details.push("8 real rows match the reference within 1e-3".into());
    }
    if let Err(e) = match_key_multisets(
        keys_of(SolutionKind::Complex),
        rows_to_keys(&tables::T1_COMPLEX),
        1e-3,
    ) {
        failures.push(format!("complex rows: {e}"));
    } else {
        details.push(
            "14 complex rows match the residual-verified values (the original \
             report's complex rows do not satisfy the system; see RES)"
                .into(),
        );
    }
    // Ground pair headline values at the tight tolerance.
    let ground: Vec<&SolutionRecord> = art
        .records
        .iter()
        .filter(|r| {
            r.kind == SolutionKind::Real
                && (r.value("R").map(|z| z.re).unwrap_or(0.0) - tables::GROUND_ROW[2]).abs() < 1e-2
        })
        .collect();
    if ground.len() != 2 {
        failures.push(format!("expected the ±x ground pair, found {}", ground.len()));
    }
    for g in ground {
        let checks = [
            ("|x|", g.value("x").unwrap().re.abs(), tables::GROUND_ROW[0]),
            ("e", g.value("e").unwrap().re, tables::GROUND_ROW[1]),
            ("R", g.value("R").unwrap().re, tables::GROUND_ROW[2]),
            ("E", g.energy.unwrap().re, tables::GROUND_ROW[3]),
        ];
        for (name, got, want) in checks {
            if (got - want).abs() > 5e-4 {
                failures.push(format!("ground {name}: {got:.6} vs {want:.6}"));
            }
        }
    }
    details.push(format!(
        "basis + matrices + solve in {:.1?}",
        art.elapsed
    ));
    if art.elapsed > Duration::from_secs(60) {
        failures.push(format!("route took {:.1?} (budget 60 s)", art.elapsed));
    }
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_res(v: &Verifier) -> CheckOutcome {
    let art = v.groebner().map_err(|e| vec![e])?;
    let sys = systems::h3_stationarity();
    let scales = sys.coeff_scales();
    let max_scale = scales.iter().cloned().fold(0.0, f64::max);
    let bound = 1e-4 * max_scale;
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for r in art.records.iter().filter(|r| r.kind == SolutionKind::Real) {
        let res = r.residual.unwrap_or(f64::INFINITY);
        worst = worst.max(res);
        if res > bound {
            failures.push(format!(
                "real root at {:?} has residual {res:.3e} > {bound:.3e}",
                r.values
            ));
        }
    }
    // The discarded reference complex rows violate this same metric, which
    // is why T1 checks them against re-derived values.
    let ref_complex_residual = {
        let pt = [
            Complex64::new(0.1137, 0.1795),
            Complex64::new(-0.6013, -1.18),
            Complex64::new(0.1264, -1.689),
        ];
        sys.generators
            .iter()
            .map(|g| g.eval_at(&pt).norm())
            .fold(0.0, f64::max)
    };
    let details = vec![
        format!("worst accepted real-root residual {worst:.3e} (bound {bound:.3e})"),
        format!(
            "for contrast, an originally reported complex row evaluates to {ref_complex_residual:.3e}"
        ),
    ];
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_comm(v: &Verifier) -> CheckOutcome {
    let art = v.groebner().map_err(|e| vec![e])?;
    let detail = format!(
        "worst relative commutator {:.3e} (bound 1e-8)",
        art.commutator
    );
    if art.commutator <= 1e-8 {
        Ok(vec![detail])
    } else {
        Err(vec![detail])
    }
}

fn padded22(a: &RMat) -> CMat {
    let mut p = CMat::zeros(32, 32);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            p[(i, j)] = Complex64::new(a[(i, j)], 0.0);
        }
    }
    p
}

fn check_t2(v: &Verifier) -> CheckOutcome {
    let art = v.groebner().map_err(|e| vec![e])?;
    let mut details = Vec::new();
    let mut failures = Vec::new();
    for (op_idx, label) in tables::T2_OPERATORS.iter().enumerate() {
        let err = if op_idx < 3 {
            let a = &art.ops[op_idx];
            let enc = fable_encode_real(a).map_err(|e| vec![e.to_string()])?;
            (enc.leading_block() * Complex64::new(enc.block_factor(), 0.0) - padded22(a)).norm()
        } else {
            let a = &art.ops[op_idx - 3];
            let u = linalg::expm_scaled(a, 1.0).map_err(|e| vec![e.to_string()])?;
            let enc = fable_encode(&u).map_err(|e| vec![e.to_string()])?;
            let mut want = CMat::zeros(32, 32);
            want.view_mut((0, 0), (22, 22)).copy_from(&u);
            (enc.leading_block() * Complex64::new(enc.block_factor(), 0.0) - want).norm()
        };
        if err <= tables::T2_TOLERANCE {
            details.push(format!("{label}: ‖A − A_BL·s·2ⁿ‖ = {err:.2e}"));
        } else {
            failures.push(format!(
                "{label}: ‖A − A_BL·s·2ⁿ‖ = {err:.2e} > {:.0e}",
                tables::T2_TOLERANCE
            ));
        }
    }
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_t4(v: &Verifier) -> CheckOutcome {
    let art = v.groebner().map_err(|e| vec![e])?;
    let mut details = Vec::new();
    let mut failures = Vec::new();
    for (row, wants) in tables::T4_EXPECTATIONS.iter().enumerate() {
        let (enc, direct_plain) = if row < 3 {
            (
                fable_encode_real(&art.ops[row]).map_err(|e| vec![e.to_string()])?,
                None,
            )
        } else {
            let u = linalg::expm_scaled(&art.ops[row - 3], 1.0).map_err(|e| vec![e.to_string()])?;
            (
                fable_encode(&u).map_err(|e| vec![e.to_string()])?,
                Some(fable_encode_real(&art.ops[row - 3]).map_err(|e| vec![e.to_string()])?),
            )
        };
        for (col, psi) in art.ground_states.iter().enumerate() {
            let got = enc.expectation(psi).map_err(|e| vec![e.to_string()])?;
            let want = Complex64::new(wants[2 * col], wants[2 * col + 1]);
            if (got - want).norm() > 1e-3 {
                failures.push(format!(
                    "{} on vector {col}: {got:.4} vs {want:.4}",
                    tables::T2_OPERATORS[row]
                ));
            }
            if let Some(plain) = &direct_plain {
                // exp expectation against the direct scalar phase.
                let val = plain.expectation(psi).map_err(|e| vec![e.to_string()])?;
                let direct = (Complex64::new(0.0, -1.0) * val).exp();
                if (got - direct).norm() > 1e-6 {
                    failures.push(format!(
                        "{} on vector {col}: encoded {got:.8} vs direct {direct:.8}",
                        tables::T2_OPERATORS[row]
                    ));
                }
            }
        }
    }
    details.push("six operators on the ground pair within 1e-3 of the reference".into());
    details.push("time-evolution expectations within 1e-6 of the direct scalars".into());
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn profile_check(
    reports: &[DegreeReport],
    table: &[[usize; 6]],
    rank_slack: i64,
    nullity_exact_at: Option<(u32, usize)>,
) -> (Vec<String>, Vec<String>) {
    let mut details = Vec::new();
    let mut failures = Vec::new();
    for row in table {
        let [d, rows, cols, nnz, rank, nullity] = *row;
        let Some(report) = reports.iter().find(|r| r.degree == d as u32) else {
            failures.push(format!("no report at degree {d}"));
            continue;
        };
        if (report.rows, report.cols) != (rows, cols) {
            failures.push(format!(
                "d={d}: shape ({}, {}) vs ({rows}, {cols})",
                report.rows, report.cols
            ));
        }
        if report.nnz != nnz {
            failures.push(format!("d={d}: nonzeros {} vs {nnz}", report.nnz));
        }
        if (report.rank as i64 - rank as i64).abs() > rank_slack {
            failures.push(format!(
                "d={d}: rank {} vs {rank} (slack {rank_slack})",
                report.rank
            ));
        }
        let nullity_slack = rank_slack as usize;
        if report.nullity.abs_diff(nullity) > nullity_slack {
            failures.push(format!("d={d}: nullity {} vs {nullity}", report.nullity));
        }
        if let Some((dd, nn)) = nullity_exact_at {
            if report.degree == dd && report.nullity != nn {
                failures.push(format!(
                    "d={dd}: nullity {} must equal {nn} exactly",
                    report.nullity
                ));
            }
        }
    }
    details.push(format!("{} degrees compared", table.len()));
    (details, failures)
}

fn check_t5(_v: &Verifier) -> CheckOutcome {
    let sys = systems::two_level();
    let opts = MacaulaySolveOptions::default();
    let reports = macaulay::degree_sweep(&sys, &[2, 3, 4, 8, 10], &opts, None)
        .map_err(|e| vec![e.to_string()])?;
    let (details, failures) = profile_check(&reports, &tables::T5_PROFILE, 1, None);
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_t6(_v: &Verifier) -> CheckOutcome {
    let sys = systems::two_level();
    let opts = MacaulaySolveOptions::default();
    let mut details = Vec::new();
    let mut failures = Vec::new();
    // Degree 2 is inadmissible.
    let r2 = macaulay::solve(&sys, 2, &opts, None).map_err(|e| vec![e.to_string()])?;
    if r2.admissible().count() == 0 {
        details.push("degree 2 correctly reports no admissible solution".into());
    } else {
        failures.push(format!(
            "degree 2 admitted {} solutions",
            r2.admissible().count()
        ));
    }
    for d in [3u32, 4, 8, 10] {
        let report = macaulay::solve(&sys, d, &opts, None).map_err(|e| vec![e.to_string()])?;
        let got: Vec<Vec<f64>> = report
            .admissible()
            .map(|s| canonical_key(&s.record.values, None, &["x", "y"]))
            .collect();
        // Reference rows plus their mirrored pairs, sign-collapsed.
        let want: Vec<Vec<f64>> = tables::T6_ROOTS
            .iter()
            .flat_map(|r| {
                let base = vec![
                    ("x".to_string(), Complex64::new(r[0], 0.0)),
                    ("y".to_string(), Complex64::new(r[1], 0.0)),
                    ("e".to_string(), Complex64::new(r[2], 0.0)),
                ];
                let mirrored = vec![
                    ("x".to_string(), Complex64::new(-r[0], 0.0)),
                    ("y".to_string(), Complex64::new(-r[1], 0.0)),
                    ("e".to_string(), Complex64::new(r[2], 0.0)),
                ];
                [
                    canonical_key(&base, None, &["x", "y"]),
                    canonical_key(&mirrored, None, &["x", "y"]),
                ]
            })
            .collect();
        match match_key_multisets(got, want, 1e-6) {
            Ok(()) => details.push(format!("degree {d}: 4 roots within 1e-6")),
            Err(e) => failures.push(format!("degree {d}: {e}")),
        }
    }
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_t7(v: &Verifier) -> CheckOutcome {
    let (reports, elapsed) = v.sweep().map_err(|e| vec![e])?;
    let (mut details, mut failures) =
        profile_check(reports, &tables::T7_PROFILE, 2, Some((12, 180)));
    details.push(format!("full sweep in {elapsed:.1?}"));
    if *elapsed > Duration::from_secs(600) {
        failures.push(format!("sweep took {elapsed:.1?} (budget 10 min)"));
    }
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_t8(v: &Verifier) -> CheckOutcome {
    let (reports, _) = v.sweep().map_err(|e| vec![e])?;
    let window = systems::h3_validity();
    let mut details = Vec::new();
    let mut failures = Vec::new();
    let limit = [0.404978, -1.148190, 1.827109];
    let mut distances: Vec<(u32, f64, bool)> = Vec::new();
    for report in reports.iter() {
        let Some(g) = macaulay::ground_root(report, &window) else {
            continue;
        };
        let x = g.record.value("x").unwrap().re.abs();
        let e = g.record.value("e").unwrap().re;
        let r = g.record.value("R").unwrap().re;
        let dist = (x - limit[0])
            .abs()
            .max((e - limit[1]).abs())
            .max((r - limit[2]).abs());
        distances.push((report.degree, dist, g.diagnostics.strict));
        if report.degree == 30 {
            if dist > 1e-4 {
                failures.push(format!(
                    "d=30 ground root ({x:.6}, {e:.6}, {r:.6}) is {dist:.2e} from the reference"
                ));
            } else {
                details.push(format!(
                    "d=30 ground root within {dist:.2e} of ({}, {}, {})",
                    limit[0], limit[1], limit[2]
                ));
            }
        }
    }
    // Trajectory: distances shrink monotonically over certified degrees.
    let strict: Vec<(u32, f64)> = distances
        .iter()
        .filter(|(_, _, s)| *s)
        .map(|(d, dist, _)| (*d, *dist))
        .collect();
    for pair in strict.windows(2) {
        if pair[1].1 > pair[0].1 + 1e-6 {
            failures.push(format!(
                "trajectory distance grew from d={} ({:.2e}) to d={} ({:.2e})",
                pair[0].0, pair[0].1, pair[1].0, pair[1].1
            ));
        }
    }
    let mut line = String::from("trajectory |ground − limit|: ");
    for (d, dist, s) in &distances {
        let _ = write!(line, "d={d}: {dist:.1e}{} ", if *s { "" } else { " (best effort)" });
    }
    details.push(line);
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_xroute(v: &Verifier) -> CheckOutcome {
    let art = v.groebner().map_err(|e| vec![e])?;
    let sys = systems::h3_stationarity();
    // Balance the variables so all real roots stay near unit scale at
    // degree 30 (|R| up to 3.9 and |e| up to 11.8 are otherwise crushed by
    // the degree-30 monomial normalization).
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    let scales = [q(1), q(16), q(4)];
    let scaled = sys
        .with_variable_scales(&scales)
        .map_err(|e| vec![e.to_string()])?;
    let report = macaulay::solve(&scaled, 30, &MacaulaySolveOptions::default(), None)
        .map_err(|e| vec![e.to_string()])?;
    let mut records: Vec<SolutionRecord> = report
        .admissible()
        .filter(|s| s.record.kind == SolutionKind::Real)
        .map(|s| s.record.clone())
        .collect();
    unscale_records(&mut records, &sys.ring, &scales);
    let m_keys: Vec<Vec<f64>> = records
        .iter()
        .map(|r| canonical_key(&r.values, None, &["x"]))
        .collect();
    let g_keys: Vec<Vec<f64>> = art
        .records
        .iter()
        .filter(|r| r.kind == SolutionKind::Real)
        .map(|r| canonical_key(&r.values, None, &["x"]))
        .collect();
    let detail = format!(
        "{} real roots from each route (balanced degree-30 pencil)",
        g_keys.len()
    );
    match match_key_multisets(m_keys, g_keys, 1e-3) {
        Ok(()) => Ok(vec![detail]),
        Err(e) => Err(vec![e]),
    }
}

fn check_ipea(_v: &Verifier) -> CheckOutcome {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(20240314);
    let bits = 12usize;
    let opts = IpeaOptions {
        bits,
        residual_tol: 1e-6,
        sampling: None,
    };
    let mut failures = Vec::new();
    let mut tested = 0usize;
    let mut worst_phase = 0.0f64;
    let mut worst_mag = 0.0f64;
    while tested < 50 {
        let dim = 2 + (rng.random::<u64>() % 7) as usize;
        let values: Vec<Complex64> = (0..dim)
            .map(|_| {
                let r = 0.15 + 0.82 * rng.random::<f64>();
                let phi = 2.0 * std::f64::consts::PI * rng.random::<f64>();
                Complex64::from_polar(r, phi)
            })
            .collect();
        let vmat = CMat::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let Some(vinv) = vmat.clone().lu().try_inverse() else {
            continue;
        };
        if vmat.norm() * vinv.norm() > 50.0 {
            continue;
        }
        let mut d = CMat::zeros(dim, dim);
        for (i, lam) in values.iter().enumerate() {
            d[(i, i)] = *lam;
        }
        let a = &vmat * d * &vinv;
        let enc = fable_encode(&a).map_err(|e| vec![e.to_string()])?;
        for (j, lam) in values.iter().enumerate() {
            let vec: Vec<Complex64> = vmat.column(j).iter().copied().collect();
            let psi =
                Statevector::embed(&vec, enc.system_qubits()).map_err(|e| vec![e.to_string()])?;
            let r = ipea_complex(&enc, &psi, &opts).map_err(|e| vec![e.to_string()])?;
            let dphase = phase_distance(
                (r.lambda.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0),
                (lam.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0),
            );
            let dmag = (r.magnitude - lam.norm()).abs();
            worst_phase = worst_phase.max(dphase);
            worst_mag = worst_mag.max(dmag);
            if dphase > 2f64.powi(-(bits as i32)) + 1e-6 {
                failures.push(format!("phase error {dphase:.3e} for λ = {lam}"));
            }
            if dmag > 1e-2 {
                failures.push(format!("magnitude error {dmag:.3e} for λ = {lam}"));
            }
        }
        tested += 1;
    }
    let details = vec![format!(
        "50 random matrices: worst phase error {worst_phase:.2e} (bound 2⁻¹²+1e-6), worst magnitude error {worst_mag:.2e} (bound 1e-2)"
    )];
    if failures.is_empty() {
        Ok(details)
    } else {
        failures.truncate(8);
        Err(failures)
    }
}

fn check_qpe(_v: &Verifier) -> CheckOutcome {
    let started = Instant::now();
    let sys = systems::h3_stationarity();
    let energy = systems::h3_energy();
    let cfg = PipelineConfig {
        route: qsim::Route::Groebner,
        validity: Some(systems::h3_validity()),
        ..Default::default()
    };
    let out = qsim::qpe_pipeline(&sys, &cfg, Some(&energy)).map_err(|e| vec![e.to_string()])?;
    let mut failures = Vec::new();
    let ground: Vec<_> = out
        .records
        .iter()
        .filter(|r| {
            r.record.kind == SolutionKind::Real
                && (r.record.value("R").unwrap().re - tables::GROUND_ROW[2]).abs() < 1e-2
        })
        .collect();
    if ground.len() != 2 {
        failures.push(format!("expected the ground pair, found {}", ground.len()));
    }
    for g in &ground {
        let checks = [
            ("|x|", g.record.value("x").unwrap().re.abs(), tables::GROUND_ROW[0]),
            ("e", g.record.value("e").unwrap().re, tables::GROUND_ROW[1]),
            ("R", g.record.value("R").unwrap().re, tables::GROUND_ROW[2]),
            ("E", g.record.energy.unwrap().re, tables::GROUND_ROW[3]),
        ];
        for (name, got, want) in checks {
            if (got - want).abs() > 1e-2 {
                failures.push(format!("pipeline ground {name}: {got:.4} vs {want:.4}"));
            }
        }
    }
    let elapsed = started.elapsed();
    let details = vec![format!(
        "22 records with measurement metadata in {elapsed:.1?}"
    )];
    if elapsed > Duration::from_secs(300) {
        failures.push(format!("pipeline took {elapsed:.1?} (budget 5 min)"));
    }
    if failures.is_empty() {
        Ok(details)
    } else {
        Err(failures)
    }
}

fn check_proj(_v: &Verifier) -> CheckOutcome {
    let sys = systems::two_level();
    let mac = macaulay::build(&sys, 3).map_err(|e| vec![e.to_string()])?;
    let dense = mac.to_dense().map(|x| Complex64::new(x, 0.0));
    let smax = linalg::singular_values(&dense).map_err(|e| vec![e.to_string()])?[0];
    let scaled = &dense / Complex64::new(smax, 0.0);
    let q = scaled.ncols();
    let dim = q.next_power_of_two();
    let mut m_pad = CMat::zeros(scaled.nrows(), dim);
    m_pad.view_mut((0, 0), scaled.shape()).copy_from(&scaled);
    let raw: Vec<Complex64> = (0..dim)
        .map(|i| Complex64::new(((i * 7 + 3) as f64 * 0.37).sin(), ((i + 1) as f64 * 0.11).cos()))
        .collect();
    let psi = Statevector::from_amplitudes(raw).map_err(|e| vec![e.to_string()])?;
    let (out, _) =
        qsim::nullspace_projection(&m_pad, &psi, 50).map_err(|e| vec![e.to_string()])?;
    let proj =
        qsim::exact_null_projector(&m_pad, 1e-10, dim).map_err(|e| vec![e.to_string()])?;
    let mut want = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        for j in 0..dim {
            want[i] += proj[(i, j)] * psi.amplitudes()[j];
        }
    }
    let wn = want.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let err = out
        .amplitudes()
        .iter()
        .zip(want.iter())
        .map(|(o, w)| (o - w / wn).norm())
        .fold(0.0f64, f64::max);
    let detail = format!("50 repetitions land {err:.2e} from the exact projection (bound 1e-4)");
    if err < 1e-4 {
        Ok(vec![detail])
    } else {
        Err(vec![detail])
    }
}

fn check_curve(_v: &Verifier) -> CheckOutcome {
    let cfg = HfConfig::default();
    let taylor = hf::expand_and_rationalize(&cfg.basis, &cfg.rc, cfg.order, 0)
        .map_err(|e| vec![e.to_string()])?;
    let rationalized = hf::reference_objective();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut r = 1.7;
    while r <= 1.9 + 1e-12 {
        let exact = hf::exact_energy_at(&cfg.basis, r);
        let t = hf::constrained_energy(&taylor, 1.0, r)
            .ok_or_else(|| vec![format!("no constrained energy at R = {r}")])?;
        let q = hf::constrained_energy(&rationalized, 1e8, r)
            .ok_or_else(|| vec![format!("no constrained energy at R = {r}")])?;
        for (label, a, b) in [
            ("exact vs series", exact, t),
            ("exact vs rationalized", exact, q),
            ("series vs rationalized", t, q),
        ] {
            let d = (a - b).abs();
            worst = worst.max(d);
            if d > 1e-3 {
                failures.push(format!("{label} at R = {r:.3}: |Δ| = {d:.2e}"));
            }
        }
        r += 0.01;
    }
    // Minimum location by golden section.
    let (mut lo, mut hi) = (1.6f64, 2.1f64);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    while hi - lo > 1e-6 {
        let m1 = hi - phi * (hi - lo);
        let m2 = lo + phi * (hi - lo);
        if hf::exact_energy_at(&cfg.basis, m1) < hf::exact_energy_at(&cfg.basis, m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let rmin = 0.5 * (lo + hi);
    let mut details = vec![format!(
        "curves agree within {worst:.2e} on [1.7, 1.9]; exact minimum at R = {rmin:.4}"
    )];
    if (rmin - 1.83).abs() > 0.02 {
        failures.push(format!("exact minimum at {rmin:.4}, expected 1.83 ± 0.02"));
    }
    if !failures.is_empty() {
        failures.append(&mut details);
        return Err(failures);
    }
    Ok(details)
}

/// Convenience: rendered multi-line report plus the overall flag.
pub fn render(results: &[CheckResult]) -> (String, bool) {
    let mut out = String::new();
    let mut all_pass = true;
    for r in results {
        out.push_str(&r.format_line());
        out.push('\n');
        for d in &r.details {
            out.push_str(&format!("         - {d}\n"));
        }
        all_pass &= r.passed;
    }
    (out, all_pass)
}
