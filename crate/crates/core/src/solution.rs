//! Root records shared by the Gröbner and Macaulay routes: classification,
//! validity flags, JSON and table output, and canonicalized multiset
//! comparison against reference data.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Real,
    Complex,
}

impl SolutionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionKind::Real => "real",
            SolutionKind::Complex => "complex",
        }
    }
}

/// One computed root: per-variable values, total energy where an objective
/// is attached, real/complex classification and a model-validity flag.
#[derive(Debug, Clone)]
pub struct SolutionRecord {
    pub index: usize,
    /// (variable name, value) in ring order.
    pub values: Vec<(String, Complex64)>,
    pub energy: Option<Complex64>,
    pub kind: SolutionKind,
    pub valid: bool,
    /// max_k |f_k(root)| over the system generators, when computed.
    pub residual: Option<f64>,
}

impl SolutionRecord {
    pub fn value(&self, var: &str) -> Option<Complex64> {
        self.values
            .iter()
            .find(|(name, _)| name == var)
            .map(|(_, v)| *v)
    }

    /// Real-vs-complex classification: real iff every imaginary part is
    /// below `tol` times the largest component magnitude.
    pub fn classify(values: &[(String, Complex64)], tol: f64) -> SolutionKind {
        let scale = values.iter().map(|(_, v)| v.norm()).fold(1.0f64, f64::max);
        let max_im = values.iter().map(|(_, v)| v.im.abs()).fold(0.0, f64::max);
        if max_im < tol * scale {
            SolutionKind::Real
        } else {
            SolutionKind::Complex
        }
    }
}

/// A validity window on one variable: the model is trusted only within
/// `|Re(var) − center| ≤ radius`, and only for real solutions.
#[derive(Debug, Clone)]
pub struct ValidityWindow {
    pub var: String,
    pub center: f64,
    pub radius: f64,
}

impl ValidityWindow {
    pub fn admits(&self, kind: SolutionKind, values: &[(String, Complex64)]) -> bool {
        if kind != SolutionKind::Real {
            return false;
        }
        match values.iter().find(|(n, _)| *n == self.var) {
            Some((_, v)) => (v.re - self.center).abs() <= self.radius,
            None => true,
        }
    }
}

/// Sort records into the canonical reporting order and assign indices.
pub fn sort_records(records: &mut [SolutionRecord]) {
    records.sort_by(|a, b| {
        let ka = record_sort_key(a);
        let kb = record_sort_key(b);
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    for (i, r) in records.iter_mut().enumerate() {
        r.index = i;
    }
}

fn record_sort_key(r: &SolutionRecord) -> Vec<f64> {
    let mut key = Vec::new();
    for (_, v) in &r.values {
        key.push(quantize(v.re));
        key.push(quantize(v.im.abs()));
        key.push(quantize(v.im));
    }
    key
}

// Collapse float noise so sorting is stable across eigensolver orderings.
fn quantize(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

// ---- canonicalized comparison ----------------------------------------------

/// A canonical numeric key per record: variables listed in `abs_vars` are
/// collapsed over sign (|Re|, |Im|), all imaginary parts over conjugation
/// (|Im|). Used to compare solution multisets where the eigensolver order,
/// ± pairs and conjugate pairs are implementation-defined.
pub fn canonical_key(
    values: &[(String, Complex64)],
    energy: Option<Complex64>,
    abs_vars: &[&str],
) -> Vec<f64> {
    let mut key = Vec::new();
    for (name, v) in values {
        if abs_vars.contains(&name.as_str()) {
            key.push(v.re.abs());
            key.push(v.im.abs());
        } else {
            key.push(v.re);
            key.push(v.im.abs());
        }
    }
    if let Some(e) = energy {
        key.push(e.re);
        key.push(e.im.abs());
    }
    key
}

/// Compare two multisets of canonical keys within a per-component
/// tolerance: every `want` row must be matched by a distinct `got` row.
/// Sorting alone breaks on near-tied components, so rows are paired
/// greedily by nearest distance.
pub fn match_key_multisets(
    got: Vec<Vec<f64>>,
    want: Vec<Vec<f64>>,
    tol: f64,
) -> Result<(), String> {
    if got.len() != want.len() {
        return Err(format!(
            "solution count mismatch: got {}, want {}",
            got.len(),
            want.len()
        ));
    }
    let mut used = vec![false; got.len()];
    for (i, w) in want.iter().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (j, g) in got.iter().enumerate() {
            if used[j] {
                continue;
            }
            let worst = g
                .iter()
                .zip(w.iter())
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            if best.map(|(_, b)| worst < b).unwrap_or(true) {
                best = Some((j, worst));
            }
        }
        match best {
            Some((j, worst)) if worst <= tol => used[j] = true,
            Some((_, worst)) => {
                return Err(format!(
                    "reference row {i} {w:?}: best unmatched candidate is off by {worst:.2e} (> {tol:.1e})"
                ));
            }
            None => return Err("ran out of candidate rows".into()),
        }
    }
    Ok(())
}

// ---- JSON --------------------------------------------------------------------

fn complex_json(v: Complex64) -> Value {
    json!({ "re": v.re, "im": v.im })
}

pub fn record_to_json(r: &SolutionRecord) -> Value {
    let mut obj = Map::new();
    obj.insert("index".into(), json!(r.index));
    for (name, v) in &r.values {
        obj.insert(name.clone(), complex_json(*v));
    }
    obj.insert(
        "energy".into(),
        match r.energy {
            Some(e) => complex_json(e),
            None => Value::Null,
        },
    );
    obj.insert("kind".into(), json!(r.kind.as_str()));
    obj.insert("valid".into(), json!(r.valid));
    obj.insert(
        "residual".into(),
        match r.residual {
            Some(x) => json!(x),
            None => Value::Null,
        },
    );
    Value::Object(obj)
}

pub fn records_to_json(records: &[SolutionRecord]) -> Value {
    Value::Array(records.iter().map(record_to_json).collect())
}

/// Inverse of [`records_to_json`]; `vars` gives the variable order.
pub fn records_from_json(value: &Value, vars: &[String]) -> Result<Vec<SolutionRecord>, String> {
    let arr = value.as_array().ok_or("expected a JSON array")?;
    let mut out = Vec::with_capacity(arr.len());
    for item in arr {
        let obj = item.as_object().ok_or("expected a JSON object")?;
        let get_c = |v: &Value| -> Result<Complex64, String> {
            let o = v.as_object().ok_or("expected {re, im}")?;
            Ok(Complex64::new(
                o.get("re").and_then(Value::as_f64).ok_or("missing re")?,
                o.get("im").and_then(Value::as_f64).ok_or("missing im")?,
            ))
        };
        let mut values = Vec::new();
        for name in vars {
            values.push((
                name.clone(),
                get_c(obj.get(name).ok_or_else(|| format!("missing {name}"))?)?,
            ));
        }
        let energy = match obj.get("energy") {
            Some(Value::Null) | None => None,
            Some(v) => Some(get_c(v)?),
        };
        let kind = match obj.get("kind").and_then(Value::as_str) {
            Some("real") => SolutionKind::Real,
            Some("complex") => SolutionKind::Complex,
            other => return Err(format!("bad kind {other:?}")),
        };
        out.push(SolutionRecord {
            index: obj.get("index").and_then(Value::as_u64).unwrap_or(0) as usize,
            values,
            energy,
            kind,
            valid: obj.get("valid").and_then(Value::as_bool).unwrap_or(false),
            residual: obj.get("residual").and_then(Value::as_f64),
        });
    }
    Ok(out)
}

// ---- text table ----------------------------------------------------------------

fn fmt_complex(v: Complex64) -> String {
    format!("{:.4}{:+.4}j", v.re, v.im)
}

/// Aligned text table with one row per record.
pub fn format_table(records: &[SolutionRecord]) -> String {
    let mut header: Vec<String> = vec!["i".into()];
    if let Some(first) = records.first() {
        for (name, _) in &first.values {
            header.push(name.clone());
        }
    }
    header.push("E_TOTAL".into());
    header.push("Type".into());
    header.push("Valid".into());

    let mut rows: Vec<Vec<String>> = vec![header];
    for r in records {
        let mut row = vec![r.index.to_string()];
        for (_, v) in &r.values {
            row.push(fmt_complex(*v));
        }
        row.push(match r.energy {
            Some(e) => fmt_complex(e),
            None => "-".into(),
        });
        row.push(r.kind.as_str().into());
        row.push(if r.valid { "yes" } else { "no" }.into());
        rows.push(row);
    }
    let ncols = rows[0].len();
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>width$}", width = widths[c]))
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}
