//! Plain-text file formats used by the command-line tool.
//!
//! A data file holds one grid point per line, as its integer numerators
//! followed by the value (`3 1 0.25`; commas also separate). A coefficient
//! file starts with `kind`, `N` and `n` header lines and then lists
//! `r1,…,rn coefficient` rows. `#` starts a comment in both. Values are
//! written with the shortest representation that parses back to the same
//! `f64`, so write → read is bit-exact.
//!
//! Writes go to a temporary file in the target directory that is then
//! renamed over the destination.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::discrete::{CoefficientVector, DataVector, Transform, TransformKind};
use crate::error::{Error, Result};
use crate::kernel::{evaluate_slices, AngularConvention, Family, Label};

pub const DEFAULT_MESH: usize = 101;

fn format_error(source: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Format { path: source.to_string(), line, message: message.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect()
}

fn parse_int(source: &str, line: usize, s: &str) -> Result<i64> {
    s.parse().map_err(|_| format_error(source, line, format!("expected an integer, found '{s}'")))
}

fn parse_value(source: &str, line: usize, s: &str) -> Result<f64> {
    s.parse().map_err(|_| format_error(source, line, format!("expected a number, found '{s}'")))
}

fn join(t: &[i64], sep: &str) -> String {
    t.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

/// Places each `(tuple, value)` record at its index in `order`, requiring
/// every tuple exactly once.
fn assemble(
    source: &str,
    order: &[Vec<i64>],
    what: &'static str,
    rows: Vec<(usize, Vec<i64>, f64)>,
) -> Result<Vec<f64>> {
    let index: HashMap<&[i64], usize> = order.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut values = vec![None; order.len()];
    for (line, tuple, value) in rows {
        let Some(&i) = index.get(tuple.as_slice()) else {
            return Err(format_error(source, line, format!("{what} ({}) is not in the set", join(&tuple, ","))));
        };
        if values[i].replace(value).is_some() {
            return Err(format_error(source, line, format!("duplicate {what} ({})", join(&tuple, ","))));
        }
    }
    values
        .into_iter()
        .zip(order)
        .map(|(v, t)| v.ok_or_else(|| format_error(source, 0, format!("missing {what} ({})", join(t, ",")))))
        .collect()
}

pub fn parse_data(text: &str, source: &str, transform: &Transform) -> Result<DataVector> {
    let n = transform.dim();
    let mut rows = Vec::new();
    for (line, record) in records(text) {
        let f = fields(record);
        if f.len() != n + 1 {
            return Err(format_error(source, line, format!("expected {n} numerators and a value, found {} fields", f.len())));
        }
        let k = f[..n].iter().map(|s| parse_int(source, line, s)).collect::<Result<Vec<_>>>()?;
        rows.push((line, k, parse_value(source, line, f[n])?));
    }
    DataVector::new(transform, assemble(source, &transform.grid(), "grid point", rows)?)
}

pub fn format_data(transform: &Transform, data: &DataVector) -> String {
    let mut out = format!(
        "# kind {} N {} n {}\n# k1 .. kn value (grid point k/N)\n",
        transform.kind(),
        transform.big_n(),
        transform.dim()
    );
    for (k, v) in transform.grid().iter().zip(data.values()) {
        let _ = writeln!(out, "{} {v}", join(k, " "));
    }
    out
}

/// A coefficient vector together with the transform that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    pub transform: Transform,
    pub coefficients: CoefficientVector,
}

impl CoefficientFile {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut kind = None;
        let mut big_n = None;
        let mut dim = None;
        let mut rows = Vec::new();
        for (line, record) in records(text) {
            let f: Vec<&str> = record.split_whitespace().collect();
            match f.as_slice() {
                ["kind", v] => kind = Some(v.parse::<TransformKind>().map_err(|e| format_error(source, line, e.to_string()))?),
                ["N", v] => big_n = Some(parse_int(source, line, v)?),
                ["n", v] => {
                    let v = parse_int(source, line, v)?;
                    dim = Some(usize::try_from(v).map_err(|_| format_error(source, line, "n must be positive"))?);
                }
                [label, value] if kind.is_some() && big_n.is_some() && dim.is_some() => {
                    let r = label.split(',').map(|s| parse_int(source, line, s.trim())).collect::<Result<Vec<_>>>()?;
                    rows.push((line, r, parse_value(source, line, value)?));
                }
                _ => return Err(format_error(source, line, format!("unexpected line '{record}'"))),
            }
        }
        let missing = |what: &str| format_error(source, 0, format!("missing '{what}' header"));
        let transform = Transform::new(kind.ok_or_else(|| missing("kind"))?, big_n.ok_or_else(|| missing("N"))?, dim.ok_or_else(|| missing("n"))?)?;
        for (line, r, _) in &rows {
            if r.len() != transform.dim() {
                return Err(format_error(source, *line, format!("label has {} entries, expected {}", r.len(), transform.dim())));
            }
        }
        let values = assemble(source, &transform.labels(), "label", rows)?;
        Ok(Self { coefficients: CoefficientVector::new(&transform, values)?, transform })
    }

    pub fn to_text(&self) -> String {
        let t = &self.transform;
        let mut out = format!("kind {}\nN {}\nn {}\n", t.kind(), t.big_n(), t.dim());
        for (r, a) in t.labels().iter().zip(self.coefficients.values()) {
            let _ = writeln!(out, "{} {a}", join(r, ","));
        }
        out
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?, &path.display().to_string())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &self.to_text())
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_data(path: &Path, transform: &Transform) -> Result<DataVector> {
    parse_data(&read_text(path)?, &path.display().to_string(), transform)
}

pub fn write_data(path: &Path, transform: &Transform, data: &DataVector) -> Result<()> {
    write_atomic(path, &format_data(transform, data))
}

/// Writes `contents` to a temporary file beside `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// CSV of `x1,…,xn,value` over the mesh `i/(2(mesh−1))`, `i = 0..mesh`, per
/// axis, keeping the points with `½ ≥ x1 ≥ … ≥ xn ≥ 0`.
pub fn sample_csv(family: Family, conv: AngularConvention, label: &Label, mesh: usize) -> Result<String> {
    if mesh < 2 {
        return Err(crate::error::invalid(format!("mesh must have at least 2 points, got {mesh}")));
    }
    let n = label.dim();
    let step = 0.5 / (mesh - 1) as f64;
    let mut out = String::new();
    for i in 1..=n {
        let _ = write!(out, "x{i},");
    }
    out.push_str("value\n");
    // weakly descending index tuples over 0..mesh
    let mut idx = vec![mesh - 1; n];
    let mut x = vec![0.0; n];
    loop {
        for (xi, &i) in x.iter_mut().zip(&idx) {
            *xi = i as f64 * step;
        }
        for xi in &x {
            let _ = write!(out, "{xi},");
        }
        let _ = writeln!(out, "{}", evaluate_slices(family, conv, label.as_slice(), &x));
        // next tuple in lexicographically descending order
        let Some(pos) = (0..n).rev().find(|&p| idx[p] > 0) else { break };
        idx[pos] -= 1;
        for p in pos + 1..n {
            idx[p] = idx[pos];
        }
    }
    Ok(out)
}
