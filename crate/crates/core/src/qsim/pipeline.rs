//! End-to-end emulated runs: prepare eigenvector states, block-encode the
//! multiplication operators of either solver route, estimate each
//! coordinate by iterative phase estimation, and assemble solution records
//! with per-variable measurement metadata.

use super::fable::{fable_encode_real, pow2_at_least};
use super::ipea::{ipea_complex, IpeaOptions, IpeaResult};
use super::project::nullspace_projection;
use super::statevector::{QsimError, Statevector};
use crate::groebner::{self, EnergyObjective, PolySystem};
use crate::macaulay::{self, MacaulaySolveOptions};
use crate::solution::{SolutionKind, SolutionRecord, ValidityWindow};
use crate::{linalg, CMat, Complex64, RMat};
use rand::Rng;
use rand::SeedableRng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("system register would need {0} qubits (limit 9)")]
    TooLarge(usize),
    #[error("no admissible roots at degree {0} to prepare states from")]
    NoRoots(u32),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Groebner(#[from] groebner::GroebnerError),
    #[error(transparent)]
    Macaulay(#[from] macaulay::MacaulayError),
    #[error(transparent)]
    Qsim(#[from] QsimError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Groebner,
    Macaulay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatePrep {
    /// Eigenvectors from the classical solver.
    Classical,
    /// A seeded random vector pushed through the projection circuit, then
    /// collapsed onto the eigencomponent a measurement would select.
    ProjectedRandom { seed: u64 },
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub route: Route,
    /// Phase bits per coordinate.
    pub bits: usize,
    /// Projection-circuit repetitions for the random state preparation.
    pub repetitions: usize,
    /// Macaulay degree.
    pub degree: u32,
    /// Eigenvalue scale per variable: None = smallest power of two covering
    /// the spectrum; Some(s) forces one common scale.
    pub scale: Option<f64>,
    /// None: exact probabilities; Some(seed): sampled measurements.
    pub sampling_seed: Option<u64>,
    pub shots: u32,
    pub state_prep: StatePrep,
    pub pivot: String,
    pub validity: Option<ValidityWindow>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            route: Route::Groebner,
            bits: 12,
            repetitions: 50,
            degree: 4,
            scale: None,
            sampling_seed: None,
            shots: 2048,
            state_prep: StatePrep::Classical,
            pivot: "x".into(),
            validity: None,
        }
    }
}

impl PipelineConfig {
    /// Parse `key=value` lines: route, bits, repetitions, degree, scale,
    /// seed, shots, prep, pivot.
    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let mut cfg = PipelineConfig::default();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| PipelineError::Config(format!("expected key=value: `{line}`")))?;
            let key = key.trim();
            let value = value.trim();
            let bad = || PipelineError::Config(format!("bad value for {key}: `{value}`"));
            match key {
                "route" => {
                    cfg.route = match value {
                        "groebner" => Route::Groebner,
                        "macaulay" => Route::Macaulay,
                        _ => return Err(bad()),
                    }
                }
                "bits" | "m" => cfg.bits = value.parse().map_err(|_| bad())?,
                "repetitions" => cfg.repetitions = value.parse().map_err(|_| bad())?,
                "degree" => cfg.degree = value.parse().map_err(|_| bad())?,
                "scale" => {
                    cfg.scale = if value == "auto" {
                        None
                    } else {
                        Some(value.parse().map_err(|_| bad())?)
                    }
                }
                "seed" => cfg.sampling_seed = Some(value.parse().map_err(|_| bad())?),
                "shots" => cfg.shots = value.parse().map_err(|_| bad())?,
                "prep" => {
                    cfg.state_prep = match value {
                        "classical" => StatePrep::Classical,
                        v if v.starts_with("random:") => StatePrep::ProjectedRandom {
                            seed: v["random:".len()..].parse().map_err(|_| bad())?,
                        },
                        _ => return Err(bad()),
                    }
                }
                "pivot" => cfg.pivot = value.to_owned(),
                _ => return Err(PipelineError::Config(format!("unknown key `{key}`"))),
            }
        }
        Ok(cfg)
    }

    fn ipea_options(&self) -> IpeaOptions {
        IpeaOptions {
            bits: self.bits,
            residual_tol: 1e-6,
            sampling: self.sampling_seed.map(|s| (s, self.shots)),
        }
    }
}

/// Measurement metadata for one coordinate of one record.
#[derive(Debug, Clone)]
pub struct VariableMeta {
    pub var: String,
    /// Spectral scale: the estimated eigenvalue is scale·λ(encoded).
    pub scale: f64,
    pub bits: Vec<u8>,
    pub gaps: Vec<f64>,
    /// Post-selection probability of one encoded application on this state.
    pub post_selection: f64,
}

#[derive(Debug, Clone)]
pub struct PipelineRecord {
    pub record: SolutionRecord,
    pub meta: Vec<VariableMeta>,
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub route: Route,
    pub records: Vec<PipelineRecord>,
}

/// Run the emulated pipeline on a polynomial system.
pub fn qpe_pipeline(
    sys: &PolySystem,
    config: &PipelineConfig,
    energy: Option<&EnergyObjective>,
) -> Result<PipelineOutput, PipelineError> {
    // Per-route operators (row action transposed to column action) and the
    // eigenvector states to run phase estimation on.
    let (operators, states) = match config.route {
        Route::Groebner => groebner_operators(sys, config)?,
        Route::Macaulay => macaulay_operators(sys, config)?,
    };
    let names = sys.ring.var_names();
    let n_qubits = (operators[0].nrows().next_power_of_two().max(2))
        .trailing_zeros() as usize;
    if n_qubits > 9 {
        return Err(PipelineError::TooLarge(n_qubits));
    }

    // One scale per variable, covering its spectrum with a power of two.
    let scales: Vec<f64> = match config.scale {
        Some(s) => vec![s; operators.len()],
        None => operators
            .iter()
            .map(|a| {
                let mut max_abs: f64 = 0.0;
                for psi in &states {
                    let v = rayleigh(a, psi);
                    max_abs = max_abs.max(v.norm());
                }
                pow2_at_least(max_abs)
            })
            .collect(),
    };

    let encodings: Vec<_> = operators
        .iter()
        .zip(scales.iter())
        .map(|(a, &s)| fable_encode_real(&(a / s)))
        .collect::<Result<Vec<_>, _>>()?;

    let ipea_opts = config.ipea_options();
    let mut records = Vec::new();
    for psi in &states {
        let mut values: Vec<(String, Complex64)> = Vec::with_capacity(names.len());
        let mut meta = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let result: IpeaResult = ipea_complex(&encodings[i], psi, &ipea_opts)?;
            let post_selection = match encodings[i].apply(psi) {
                Ok((_, p)) => p,
                Err(QsimError::ZeroBranch) => 0.0,
                Err(e) => return Err(e.into()),
            };
            values.push((name.clone(), result.lambda * scales[i]));
            meta.push(VariableMeta {
                var: name.clone(),
                scale: scales[i],
                bits: result.bits.clone(),
                gaps: result.outcomes.iter().map(|o| o.probability_gap).collect(),
                post_selection,
            });
        }
        let kind = SolutionRecord::classify(&values, 1e-6);
        let valid = config
            .validity
            .as_ref()
            .map(|w| w.admits(kind, &values))
            .unwrap_or(kind == SolutionKind::Real);
        let energy_val = energy.map(|e| e.eval(&values));
        records.push(PipelineRecord {
            record: SolutionRecord {
                index: 0,
                values,
                energy: energy_val,
                kind,
                valid,
                residual: None,
            },
            meta,
        });
    }
    records.sort_by(|a, b| {
        let ka: Vec<f64> = a.record.values.iter().flat_map(|(_, v)| [v.re, v.im]).collect();
        let kb: Vec<f64> = b.record.values.iter().flat_map(|(_, v)| [v.re, v.im]).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    for (i, r) in records.iter_mut().enumerate() {
        r.record.index = i;
    }
    Ok(PipelineOutput {
        route: config.route,
        records,
    })
}

fn rayleigh(a: &RMat, psi: &Statevector) -> Complex64 {
    let dim = a.nrows();
    let amps = psi.amplitudes();
    let mut num = Complex64::new(0.0, 0.0);
    for i in 0..dim {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            row += a[(i, j)] * amps[j];
        }
        num += amps[i].conj() * row;
    }
    num
}

/// Gröbner route: multiplication matrices over the quotient basis, states
/// from the classical common eigenvectors.
fn groebner_operators(
    sys: &PolySystem,
    config: &PipelineConfig,
) -> Result<(Vec<RMat>, Vec<Statevector>), PipelineError> {
    let gb = groebner::buchberger(sys)?;
    let qb = groebner::quotient_basis(&gb)?;
    let mats = groebner::mult_matrices(&gb, &qb)?;
    let dim = qb.dim();
    if dim.next_power_of_two() > 512 {
        return Err(PipelineError::TooLarge(
            dim.next_power_of_two().trailing_zeros() as usize,
        ));
    }
    // Row-action matrices transposed to act on column statevectors.
    let operators: Vec<RMat> = mats.per_var.iter().map(|m| m.transpose()).collect();
    let weights = groebner::generic_weights(operators.len());
    let mut a_gen = RMat::zeros(dim, dim);
    for (w, m) in weights.iter().zip(operators.iter()) {
        a_gen += m * *w;
    }
    let dec = linalg::eig(&a_gen)?;
    let n_qubits = (dim.next_power_of_two().max(2)).trailing_zeros() as usize;
    let states = (0..dim)
        .map(|j| Statevector::embed(dec.vectors.column(j).as_slice(), n_qubits))
        .collect::<Result<Vec<_>, _>>()?;
    let padded = pad_all(&operators, 1 << n_qubits);
    let states = filter_states(config, states, None)?;
    Ok((padded, states))
}

/// Macaulay route: the null-space multiplication operators Z·W_g·Zᵀ on the
/// monomial-coordinate register, states from root monomial vectors (or a
/// projected random vector).
fn macaulay_operators(
    sys: &PolySystem,
    config: &PipelineConfig,
) -> Result<(Vec<RMat>, Vec<Statevector>), PipelineError> {
    let opts = MacaulaySolveOptions {
        pivot: config.pivot.clone(),
        validity: config.validity.clone(),
        ..Default::default()
    };
    let pencil = macaulay::build_pencil(sys, config.degree, &opts)?;
    let report =
        macaulay::solve_with_nullspace(sys, &pencil.mac, &pencil.nullspace, &opts, None)?;
    let roots: Vec<_> = report.admissible().collect();
    if roots.is_empty() {
        return Err(PipelineError::NoRoots(config.degree));
    }
    let q = pencil.mac.col_labels.len();
    let n_qubits = (q.next_power_of_two().max(2)).trailing_zeros() as usize;
    if n_qubits > 9 {
        return Err(PipelineError::TooLarge(n_qubits));
    }
    // Operators on the q-dimensional register.
    let operators: Vec<RMat> = pencil
        .w
        .iter()
        .map(|w| &pencil.z_solve * w * pencil.z_solve.transpose())
        .collect();
    let padded = pad_all(&operators, 1 << n_qubits);

    // Root states: ψ ∝ Z·(S₁Z)⁺·X̂_B(root).
    let s1z_pinv = linalg::pinv(&pencil.s1z, opts.pinv_cutoff)?;
    let mut states = Vec::new();
    for root in &roots {
        let point: Vec<Complex64> = root.record.values.iter().map(|(_, v)| *v).collect();
        // Real roots only need the real part of the base-monomial vector.
        let xb: Vec<f64> = pencil
            .shifts
            .base
            .iter()
            .map(|m| m.eval(&point).re)
            .collect();
        let v = &s1z_pinv * RMat::from_vec(xb.len(), 1, xb);
        let psi_raw = &pencil.z_solve * v;
        let amps: Vec<Complex64> = psi_raw.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        states.push(Statevector::embed(&amps, n_qubits)?);
    }
    // For the projected-random preparation, the circuit projects against
    // the Macaulay matrix itself (columns padded up to the register size).
    let m_pad = if matches!(config.state_prep, StatePrep::ProjectedRandom { .. }) {
        let dense = pencil.mac.to_dense();
        let smax = linalg::singular_values(&dense)?
            .first()
            .copied()
            .unwrap_or(1.0);
        let mut m = CMat::zeros(pencil.mac.shape().0, 1 << n_qubits);
        for &(i, j, val) in &pencil.mac.triplets {
            m[(i, j)] = Complex64::new(val / smax.max(1.0), 0.0);
        }
        Some(m)
    } else {
        None
    };
    filter_states(config, states, m_pad.as_ref()).map(|s| (padded, s))
}

fn pad_all(operators: &[RMat], dim: usize) -> Vec<RMat> {
    operators
        .iter()
        .map(|a| {
            let mut p = RMat::zeros(dim, dim);
            p.view_mut((0, 0), a.shape()).copy_from(a);
            p
        })
        .collect()
}

/// Optionally replace the classical states with a projected random vector
/// collapsed onto the eigencomponent a measurement would select.
fn filter_states(
    config: &PipelineConfig,
    states: Vec<Statevector>,
    project_against: Option<&CMat>,
) -> Result<Vec<Statevector>, PipelineError> {
    let StatePrep::ProjectedRandom { seed } = config.state_prep else {
        return Ok(states);
    };
    let dim = states[0].len();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let raw: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, 0.0))
        .collect();
    let mut psi0 = Statevector::from_amplitudes(raw)?;
    if let Some(m) = project_against {
        psi0 = nullspace_projection(m, &psi0, config.repetitions)?.0;
    }
    // Collapse: in exact-probability mode take the dominant overlap; under
    // a sampling seed, draw proportionally to the overlap weights.
    let weights: Vec<f64> = states.iter().map(|s| s.inner(&psi0).norm_sqr()).collect();
    let chosen = match config.sampling_seed {
        None => weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .unwrap_or(0),
        Some(seed) => {
            let mut srng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
            let total: f64 = weights.iter().sum();
            let mut draw = srng.random::<f64>() * total.max(1e-300);
            let mut pick = 0usize;
            for (i, w) in weights.iter().enumerate() {
                if draw <= *w {
                    pick = i;
                    break;
                }
                draw -= w;
            }
            pick
        }
    };
    Ok(vec![states.into_iter().nth(chosen).expect("nonempty states")])
}
