//! Implementations behind the subcommands; each returns printable output
//! and writes artifacts plus a manifest when an output directory is given.

use crate::manifest::ManifestBuilder;
use crate::sysfile;
use crate::tables;
use moleig::groebner::{self, EnergyObjective, PolySystem, SolveOptions};
use moleig::hf::{self, HfConfig};
use moleig::macaulay::{self, MacaulaySolveOptions};
use moleig::qsim::{self, PipelineConfig};
use moleig::solution::{self, SolutionRecord};
use moleig::systems;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Hf(#[from] hf::HfError),
    #[error(transparent)]
    SysFile(#[from] sysfile::SysFileError),
    #[error(transparent)]
    Groebner(#[from] groebner::GroebnerError),
    #[error(transparent)]
    Macaulay(#[from] macaulay::MacaulayError),
    #[error(transparent)]
    Pipeline(#[from] qsim::PipelineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

pub struct CommandOutput {
    /// Human-readable report printed to stdout.
    pub report: String,
    /// Files written (первый is the primary artifact).
    pub outputs: Vec<PathBuf>,
}

fn ensure_out(dir: &Option<PathBuf>) -> Result<(), CommandError> {
    if let Some(d) = dir {
        std::fs::create_dir_all(d)?;
    }
    Ok(())
}

fn write_artifact(
    dir: &Option<PathBuf>,
    name: &str,
    contents: &str,
    manifest: &mut ManifestBuilder,
    outputs: &mut Vec<PathBuf>,
) -> Result<(), CommandError> {
    if let Some(d) = dir {
        let path = d.join(name);
        std::fs::write(&path, contents)?;
        manifest.record_output(&path);
        outputs.push(path);
    }
    Ok(())
}

/// Load the basis/expansion config from an optional file.
pub fn load_hf_config(path: &Option<PathBuf>) -> Result<HfConfig, CommandError> {
    match path {
        None => Ok(HfConfig::default()),
        Some(p) => Ok(HfConfig::parse(&std::fs::read_to_string(p)?)?),
    }
}

// ---- generate -----------------------------------------------------------------

pub struct GenerateArgs {
    pub rc: Option<String>,
    pub order: Option<usize>,
    pub scale_exp: Option<u32>,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<CommandOutput, CommandError> {
    let mut cfg = load_hf_config(&args.config)?;
    if let Some(rc) = &args.rc {
        cfg.rc = hf::parse_decimal_rational(rc)?;
    }
    if let Some(order) = args.order {
        cfg.order = order;
    }
    if let Some(n) = args.scale_exp {
        cfg.scale_exp = n;
    }
    ensure_out(&args.out)?;
    let mut manifest = ManifestBuilder::new(
        "generate",
        json!({
            "rc": cfg.rc.to_string(),
            "order": cfg.order,
            "scale_exp": cfg.scale_exp,
            "basis": { "c": cfg.basis.c, "a": cfg.basis.a, "zeta": cfg.basis.zeta },
        }),
    );
    let obj = hf::expand_and_rationalize(&cfg.basis, &cfg.rc, cfg.order, cfg.scale_exp)?;
    let text = format!("{obj}");

    let mut report = String::new();
    writeln!(report, "{} terms", obj.num_terms()).unwrap();
    let reference = hf::reference_objective();
    if cfg.scale_exp == 0 {
        // Float expansion: only the monomial support is comparable.
        let got: std::collections::BTreeSet<_> =
            obj.terms().map(|(m, _)| m.clone()).collect();
        let want: std::collections::BTreeSet<_> =
            reference.terms().map(|(m, _)| m.clone()).collect();
        writeln!(
            report,
            "shape vs embedded objective: {}",
            if got == want { "match" } else { "DIFFERS" }
        )
        .unwrap();
    } else {
        let mut worst = num_rational::BigRational::from_integer(0.into());
        let mut diffs = 0usize;
        for (m, want) in reference.terms() {
            let got = obj
                .coeff(m)
                .cloned()
                .unwrap_or_else(|| BigRational::from_integer(0.into()));
            let d = got - want.clone();
            let d = if d < BigRational::from_integer(0.into()) { -d } else { d };
            if d > BigRational::from_integer(0.into()) {
                diffs += 1;
            }
            if d > worst {
                worst = d;
            }
        }
        writeln!(
            report,
            "diff vs embedded objective: {} coefficients differ, worst |Δ| = {}",
            diffs, worst
        )
        .unwrap();
    }
    let mut outputs = Vec::new();
    write_artifact(&args.out, "objective.txt", &text, &mut manifest, &mut outputs)?;
    manifest.write(args.out.as_deref())?;
    report.push_str(&text);
    report.push('\n');
    Ok(CommandOutput { report, outputs })
}

// ---- solve --------------------------------------------------------------------

pub struct SolveArgs {
    pub route: String,
    pub system: Option<PathBuf>,
    pub builtin: Option<String>,
    pub degree: u32,
    /// Run a whole degree sweep (macaulay route) and write the profile and
    /// root-trajectory CSVs.
    pub sweep: Option<Vec<u32>>,
    /// Export the Macaulay matrix at `degree` in coordinate triplet text.
    pub export_matrix: bool,
    pub pivot: String,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Resolve the input system: a file, or one of the named built-ins.
pub fn resolve_system(
    system: &Option<PathBuf>,
    builtin: &Option<String>,
) -> Result<(PolySystem, Option<EnergyObjective>), CommandError> {
    match (system, builtin.as_deref()) {
        (Some(path), None) => {
            let sys = sysfile::parse_system(&std::fs::read_to_string(path)?)?;
            // The H3+ objective ring gets its energy column attached.
            let energy = (sys.ring == hf::objective_ring()).then(systems::h3_energy);
            Ok((sys, energy))
        }
        (None, Some("h3")) | (None, None) => Ok((systems::h3_stationarity(), Some(systems::h3_energy()))),
        (None, Some("two-level")) => Ok((systems::two_level(), None)),
        (None, Some(other)) => Err(CommandError::Usage(format!(
            "unknown builtin `{other}` (expected h3 or two-level)"
        ))),
        (Some(_), Some(_)) => Err(CommandError::Usage(
            "give either a system file or --builtin, not both".into(),
        )),
    }
}

fn records_report(
    records: &[SolutionRecord],
    vars: &[String],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Table => solution::format_table(records),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&solution::records_to_json(records)).unwrap()
        }
        OutputFormat::Csv => {
            let mut out = String::from("index");
            for v in vars {
                out.push_str(&format!(",{v}_re,{v}_im"));
            }
            out.push_str(",energy_re,energy_im,kind,valid,residual\n");
            for r in records {
                out.push_str(&r.index.to_string());
                for v in vars {
                    let z = r.value(v).unwrap_or_default();
                    out.push_str(&format!(",{},{}", z.re, z.im));
                }
                match r.energy {
                    Some(e) => out.push_str(&format!(",{},{}", e.re, e.im)),
                    None => out.push_str(",,"),
                }
                out.push_str(&format!(
                    ",{},{},{}\n",
                    r.kind.as_str(),
                    r.valid,
                    r.residual.map(|x| x.to_string()).unwrap_or_default()
                ));
            }
            out
        }
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<CommandOutput, CommandError> {
    let (sys, energy) = resolve_system(&args.system, &args.builtin)?;
    ensure_out(&args.out)?;
    let mut extra_artifacts: Vec<(String, String)> = Vec::new();
    let mut manifest = ManifestBuilder::new(
        "solve",
        json!({
            "route": args.route,
            "degree": args.degree,
            "pivot": args.pivot,
            "system": args.system.as_ref().map(|p| p.display().to_string()),
            "builtin": args.builtin,
        }),
    );
    let validity = (sys.ring == hf::objective_ring()).then(systems::h3_validity);
    let mut records: Vec<SolutionRecord> = match args.route.as_str() {
        "groebner" => {
            let gb = groebner::buchberger(&sys)?;
            let qb = groebner::quotient_basis(&gb)?;
            let mats = groebner::mult_matrices(&gb, &qb)?;
            let opts = SolveOptions {
                pivot: args.pivot.clone(),
                validity: validity.clone(),
                ..Default::default()
            };
            groebner::solve_system(&mats, &opts, energy.as_ref())?
        }
        "macaulay" => {
            let opts = MacaulaySolveOptions {
                pivot: args.pivot.clone(),
                validity: validity.clone(),
                ..Default::default()
            };
            if args.export_matrix {
                let mac = macaulay::build(&sys, args.degree)?;
                extra_artifacts.push(("matrix.txt".to_string(), mac.to_triplet_text()));
            }
            if let Some(degrees) = &args.sweep {
                let reports = macaulay::degree_sweep(&sys, degrees, &opts, energy.as_ref())?;
                let window = validity.clone().unwrap_or_else(|| {
                    moleig::solution::ValidityWindow {
                        var: sys.ring.var_names()[0].clone(),
                        center: 0.0,
                        radius: f64::INFINITY,
                    }
                });
                extra_artifacts.push(("sweep.csv".to_string(), sweep_csv(&reports)));
                extra_artifacts.push(("roots.csv".to_string(), roots_csv(&reports, &window)));
                reports
                    .last()
                    .map(|r| r.solutions.iter().map(|s| s.record.clone()).collect())
                    .unwrap_or_default()
            } else {
                let report = macaulay::solve(&sys, args.degree, &opts, energy.as_ref())?;
                report.solutions.iter().map(|s| s.record.clone()).collect()
            }
        }
        other => {
            return Err(CommandError::Usage(format!(
                "unknown route `{other}` (expected groebner or macaulay)"
            )))
        }
    };
    groebner::residuals(&sys, &mut records);
    solution::sort_records(&mut records);

    let json_text =
        serde_json::to_string_pretty(&solution::records_to_json(&records)).unwrap();
    let mut outputs = Vec::new();
    write_artifact(&args.out, "solutions.json", &json_text, &mut manifest, &mut outputs)?;
    for (name, contents) in &extra_artifacts {
        write_artifact(&args.out, name, contents, &mut manifest, &mut outputs)?;
    }
    manifest.write(args.out.as_deref())?;
    let mut report = records_report(&records, sys.ring.var_names(), args.format);
    if args.sweep.is_some() {
        if let Some((_, csv)) = extra_artifacts.iter().find(|(n, _)| n == "sweep.csv") {
            report.push_str(csv);
        }
    }
    Ok(CommandOutput { report, outputs })
}

// ---- qpe ----------------------------------------------------------------------

pub struct QpeArgs {
    pub route: Option<String>,
    pub bits: Option<usize>,
    pub degree: Option<u32>,
    pub config: Option<PathBuf>,
    pub system: Option<PathBuf>,
    pub builtin: Option<String>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

pub fn cmd_qpe(args: &QpeArgs) -> Result<CommandOutput, CommandError> {
    let mut cfg = match &args.config {
        Some(p) => PipelineConfig::parse(&std::fs::read_to_string(p)?)?,
        None => PipelineConfig::default(),
    };
    if let Some(route) = &args.route {
        cfg.route = match route.as_str() {
            "groebner" => qsim::Route::Groebner,
            "macaulay" => qsim::Route::Macaulay,
            other => {
                return Err(CommandError::Usage(format!(
                    "unknown route `{other}` (expected groebner or macaulay)"
                )))
            }
        };
    }
    if let Some(bits) = args.bits {
        cfg.bits = bits;
    }
    if let Some(degree) = args.degree {
        cfg.degree = degree;
    }
    let (sys, energy) = resolve_system(&args.system, &args.builtin)?;
    if sys.ring == hf::objective_ring() {
        cfg.validity = Some(systems::h3_validity());
    }
    ensure_out(&args.out)?;
    let mut manifest = ManifestBuilder::new(
        "qpe",
        json!({
            "route": match cfg.route { qsim::Route::Groebner => "groebner", qsim::Route::Macaulay => "macaulay" },
            "bits": cfg.bits,
            "degree": cfg.degree,
            "repetitions": cfg.repetitions,
            "sampling_seed": cfg.sampling_seed,
        }),
    );
    let out = qsim::qpe_pipeline(&sys, &cfg, energy.as_ref())?;

    // Records plus per-variable measurement metadata.
    let mut json_records = Vec::new();
    for r in &out.records {
        let mut v = solution::record_to_json(&r.record);
        let meta: Value = Value::Object(
            r.meta
                .iter()
                .map(|m| {
                    (
                        m.var.clone(),
                        json!({
                            "scale": m.scale,
                            "bits": m.bits.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(""),
                            "gaps": m.gaps,
                            "post_selection": m.post_selection,
                        }),
                    )
                })
                .collect(),
        );
        v.as_object_mut().unwrap().insert("qpe".into(), meta);
        json_records.push(v);
    }
    let json_text = serde_json::to_string_pretty(&Value::Array(json_records)).unwrap();
    let mut outputs = Vec::new();
    write_artifact(&args.out, "qpe.json", &json_text, &mut manifest, &mut outputs)?;
    manifest.write(args.out.as_deref())?;

    let records: Vec<SolutionRecord> = out.records.iter().map(|r| r.record.clone()).collect();
    let report = match args.format {
        OutputFormat::Json => json_text,
        _ => records_report(&records, sys.ring.var_names(), args.format),
    };
    Ok(CommandOutput { report, outputs })
}

// ---- energy curve ----------------------------------------------------------------

pub struct CurveArgs {
    pub min: f64,
    pub max: f64,
    pub step: f64,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn cmd_energy_curve(args: &CurveArgs) -> Result<CommandOutput, CommandError> {
    if !(args.min > 0.0 && args.max >= args.min && args.step > 0.0) {
        return Err(CommandError::Usage(
            "need 0 < min ≤ max and a positive step".into(),
        ));
    }
    let cfg = load_hf_config(&args.config)?;
    ensure_out(&args.out)?;
    let mut manifest = ManifestBuilder::new(
        "energy-curve",
        json!({ "min": args.min, "max": args.max, "step": args.step }),
    );
    let taylor = hf::expand_and_rationalize(&cfg.basis, &cfg.rc, cfg.order, 0)?;
    let rationalized =
        hf::expand_and_rationalize(&cfg.basis, &cfg.rc, cfg.order, cfg.scale_exp)?;
    let scale = 10f64.powi(cfg.scale_exp as i32);
    let mut csv = String::from("R,E_exact,E_taylor,E_rationalized\n");
    let mut r = args.min;
    while r <= args.max + 1e-12 {
        let exact = hf::exact_energy_at(&cfg.basis, r);
        let t = hf::constrained_energy(&taylor, 1.0, r);
        let q = hf::constrained_energy(&rationalized, scale, r);
        csv.push_str(&format!(
            "{r:.6},{exact:.10},{},{}\n",
            t.map(|x| format!("{x:.10}")).unwrap_or_default(),
            q.map(|x| format!("{x:.10}")).unwrap_or_default(),
        ));
        r += args.step;
    }
    let mut outputs = Vec::new();
    write_artifact(&args.out, "energy_curve.csv", &csv, &mut manifest, &mut outputs)?;
    manifest.write(args.out.as_deref())?;
    Ok(CommandOutput {
        report: csv,
        outputs,
    })
}

// ---- sweep CSV helpers (used by verify and exposed for the solve route) ---------

pub fn sweep_csv(reports: &[macaulay::DegreeReport]) -> String {
    let mut csv = String::from("d,rows,cols,nonzeros,rank,nullity\n");
    for r in reports {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.degree, r.rows, r.cols, r.nnz, r.rank, r.nullity
        ));
    }
    csv
}

pub fn roots_csv(
    reports: &[macaulay::DegreeReport],
    window: &moleig::solution::ValidityWindow,
) -> String {
    let mut csv = String::from("d");
    if let Some(g) = reports
        .iter()
        .find_map(|r| macaulay::ground_root(r, window))
    {
        for (name, _) in &g.record.values {
            csv.push(',');
            csv.push_str(name);
        }
    }
    csv.push_str(",certified\n");
    for r in reports {
        if let Some(g) = macaulay::ground_root(r, window) {
            let vals: Vec<String> = g
                .record
                .values
                .iter()
                .map(|(_, v)| format!("{:.6}", v.re))
                .collect();
            csv.push_str(&format!(
                "{},{},{}\n",
                r.degree,
                vals.join(","),
                g.diagnostics.strict
            ));
        }
    }
    csv
}

pub fn table_checksum_text(id: &str) -> Option<String> {
    tables::table_text(id)
}
