//! Polynomial-system text files: one polynomial per line (`;`-terminated
//! accepted), `#` comments, and an optional `# ring: x e R` directive
//! fixing the variable order (otherwise variables appear in first-use
//! order).

use moleig::groebner::PolySystem;
use moleig::poly::{scan_variables, MonomialOrder, OrderKind, Polynomial, Ring};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SysFileError {
    #[error("no polynomials in the input")]
    Empty,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    System(#[from] moleig::groebner::GroebnerError),
}

pub fn parse_system(text: &str) -> Result<PolySystem, SysFileError> {
    let mut ring_vars: Option<Vec<String>> = None;
    let mut poly_lines: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(vars) = rest.strip_prefix("ring:") {
                ring_vars = Some(
                    vars.split([',', ' '])
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_owned)
                        .collect(),
                );
            }
            continue;
        }
        // Multiple `;`-separated polynomials on one line are accepted.
        for piece in line.split(';') {
            let piece = piece.trim();
            if !piece.is_empty() {
                poly_lines.push((i + 1, piece.to_owned()));
            }
        }
    }
    if poly_lines.is_empty() {
        return Err(SysFileError::Empty);
    }
    let vars = ring_vars.unwrap_or_else(|| {
        let mut seen: Vec<String> = Vec::new();
        for (_, text) in &poly_lines {
            for v in scan_variables(text) {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen
    });
    let ring = Ring::new(&vars);
    let gens = poly_lines
        .iter()
        .map(|(line, text)| {
            Polynomial::parse(&ring, text).map_err(|e| SysFileError::Parse {
                line: *line,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let order = MonomialOrder::new(OrderKind::DegRevLex, ring.nvars());
    Ok(PolySystem::new(gens, order)?)
}
