//! Text format for modules:
//!
//! ```text
//! # comment
//! algebra = k2          # builtin name, or a path to an algebra file
//! dims = 1 2            # one entry per vertex, in vertex order
//! map a = 1; 0          # rows separated by ';', entries by spaces
//! map b = 0; 1
//! ```
//!
//! Arrows without a `map` line act by zero.

use std::path::Path;
use std::sync::Arc;

use crate::builtin;
use crate::error::{Error, Result};
use crate::ffla::Matrix;
use crate::presentation::AlgebraPresentation;

use super::Representation;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a module, resolving the `algebra` reference through `resolve`.
pub fn parse_module(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<Arc<AlgebraPresentation>>,
) -> Result<Representation> {
    let mut alg: Option<Arc<AlgebraPresentation>> = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut rows_by_arrow: Vec<(usize, usize, Vec<Vec<u32>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| perr(line_no, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "algebra" {
            alg = Some(resolve(value).map_err(|e| perr(line_no, e.to_string()))?);
        } else if key == "dims" {
            let d = value
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| perr(line_no, format!("bad dimension {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            dims = Some(d);
        } else if let Some(label) = key.strip_prefix("map ") {
            let a = alg.as_ref().ok_or_else(|| perr(line_no, "`algebra` must precede maps"))?;
            let id = a.quiver().arrow_id(label.trim()).map_err(|e| perr(line_no, e.to_string()))?;
            let rows = value
                .split(';')
                .map(|r| {
                    r.split_whitespace()
                        .map(|t| t.parse::<u32>().map_err(|_| perr(line_no, format!("bad entry {t:?}"))))
                        .collect::<Result<Vec<_>>>()
                })
                .filter(|r| !matches!(r, Ok(v) if v.is_empty()))
                .collect::<Result<Vec<_>>>()?;
            rows_by_arrow.push((line_no, id, rows));
        } else {
            return Err(perr(line_no, format!("unknown key {key:?}")));
        }
    }
    let alg = alg.ok_or_else(|| perr(0, "missing `algebra`"))?;
    let dims = dims.ok_or_else(|| perr(0, "missing `dims`"))?;
    if dims.len() != alg.num_vertices() {
        return Err(Error::Shape(format!("{} dimensions for {} vertices", dims.len(), alg.num_vertices())));
    }
    let f = alg.field();
    let mut maps: Vec<Matrix> =
        alg.quiver().arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    for (line_no, id, rows) in rows_by_arrow {
        let arrow = alg.quiver().arrow(id);
        let (r, c) = (dims[arrow.target], dims[arrow.source]);
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(perr(line_no, format!("arrow {} needs a {r}x{c} matrix", arrow.label)));
        }
        let data = rows.into_iter().flatten().map(|v| f.check(v)).collect::<Result<Vec<_>>>()?;
        maps[id] = Matrix::from_vec(f, r, c, data)?;
    }
    Representation::new(alg, dims, maps)
}

/// Resolves an algebra reference: a builtin name, else a file relative to `base_dir`.
pub fn resolve_algebra(reference: &str, base_dir: &Path) -> Result<Arc<AlgebraPresentation>> {
    if builtin::NAMES.contains(&reference) {
        return builtin::by_name(reference);
    }
    let path = base_dir.join(reference);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    AlgebraPresentation::parse(&text)
}

/// Reads a module file; relative algebra paths resolve against the file's directory.
pub fn load_module(path: &Path) -> Result<Representation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    parse_module(&text, &|r| resolve_algebra(r, &dir))
}

pub fn write_module(x: &Representation, algebra_ref: &str) -> String {
    let mut out = format!("algebra = {algebra_ref}\ndims =");
    for d in x.dims() {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    for (a, m) in x.algebra().quiver().arrows().iter().zip(x.maps()) {
        if m.is_zero() {
            continue;
        }
        let rows: Vec<String> = (0..m.rows())
            .map(|r| m.row(r).iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        out.push_str(&format!("map {} = {}\n", a.label, rows.join("; ")));
    }
    out
}
