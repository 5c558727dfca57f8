//! Loaders for adjacency matrices, signals and supplied spectra.
//!
//! Node ids are 1-based everywhere. An edge `src → dst` with weight `w`
//! becomes `[A]_{dst,src} = w`, in edge lists and Matrix Market files alike.

use std::fs;
use std::path::Path;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSignal};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    MatrixMarket,
    EdgeListCsv,
}

impl GraphFormat {
    /// `.mtx` is Matrix Market; anything else is read as an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("mtx") => GraphFormat::MatrixMarket,
            _ => GraphFormat::EdgeListCsv,
        }
    }
}

pub fn load_adjacency<S: Scalar>(path: &Path, format: GraphFormat, node_count: Option<usize>) -> Result<Graph<S>> {
    let text = fs::read_to_string(path)?;
    match format {
        GraphFormat::MatrixMarket => parse_matrix_market(&text, node_count),
        GraphFormat::EdgeListCsv => parse_edge_list(&text, node_count),
    }
}

pub fn load_signal<S: Scalar>(path: &Path, node_count: usize) -> Result<GraphSignal<S>> {
    parse_signal(&fs::read_to_string(path)?, node_count)
}

pub fn load_spectrum<S: Scalar>(path: &Path) -> Result<Vec<S>> {
    parse_spectrum(&fs::read_to_string(path)?)
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

/// Yields `(line, fields)` for every non-empty record, skipping a leading
/// header whose first field is `header`.
fn records(text: &str, header: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut out = Vec::new();
    for (k, rec) in csv_reader(text).records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(k + 1, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = rec.position().map_or(k + 1, |p| p.line() as usize);
        let fields: Vec<String> = rec.iter().map(str::to_owned).collect();
        if fields.iter().all(String::is_empty) {
            continue;
        }
        if out.is_empty() && fields[0].eq_ignore_ascii_case(header) {
            continue;
        }
        out.push((line, fields));
    }
    Ok(out)
}

fn parse_index(field: &str, line: usize, what: &str) -> Result<usize> {
    match field.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::parse(line, format!("invalid {what} '{field}'"))),
    }
}

fn parse_value<S: Scalar>(field: &str, line: usize) -> Result<S> {
    S::parse_real(field).ok_or_else(|| Error::parse(line, format!("invalid number '{field}'")))
}

/// Edge-list CSV: rows `src,dst[,weight]` with an optional `src,dst,weight`
/// header. Repeated edges accumulate. Without `node_count` the graph has as
/// many nodes as the largest id.
pub fn parse_edge_list<S: Scalar>(text: &str, node_count: Option<usize>) -> Result<Graph<S>> {
    let mut edges = Vec::new();
    for (line, f) in records(text, "src")? {
        if !(2..=3).contains(&f.len()) {
            return Err(Error::parse(line, format!("expected src,dst[,weight], found {} fields", f.len())));
        }
        let src = parse_index(&f[0], line, "source node")?;
        let dst = parse_index(&f[1], line, "target node")?;
        let w: S = match f.get(2) {
            Some(v) => parse_value(v, line)?,
            None => S::one(),
        };
        edges.push((line, src, dst, w));
    }
    let largest = edges.iter().map(|e| e.1.max(e.2)).max().unwrap_or(0);
    let n = node_count.unwrap_or(largest);
    if let Some((line, src, dst, _)) = edges.iter().find(|e| e.1 > n || e.2 > n) {
        return Err(Error::InconsistentDimensions(format!(
            "line {line}: edge {src}->{dst} exceeds declared node count {n}"
        )));
    }
    let mut data = vec![S::zero(); n * n];
    for (_, src, dst, w) in edges {
        let k = (dst - 1) * n + (src - 1);
        data[k] = data[k].clone() + w;
    }
    Graph::new(Matrix::new(n, n, data))
}

#[derive(Clone, Copy, PartialEq)]
enum MmField {
    Real,
    Complex,
    Pattern,
}

#[derive(Clone, Copy, PartialEq)]
enum MmSymmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

/// Matrix Market coordinate format. Each entry line is `src dst [value]`.
pub fn parse_matrix_market<S: Scalar>(text: &str, node_count: Option<usize>) -> Result<Graph<S>> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let (_, banner) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(Error::parse(1, "missing '%%MatrixMarket matrix' banner"));
    }
    if words[2] != "coordinate" {
        return Err(Error::parse(1, format!("unsupported layout '{}'", words[2])));
    }
    let field = match words[3].as_str() {
        "real" | "integer" | "double" => MmField::Real,
        "complex" => MmField::Complex,
        "pattern" => MmField::Pattern,
        other => return Err(Error::parse(1, format!("unsupported field '{other}'"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        "skew-symmetric" => MmSymmetry::SkewSymmetric,
        "hermitian" => MmSymmetry::Hermitian,
        other => return Err(Error::parse(1, format!("unsupported symmetry '{other}'"))),
    };
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body.next().ok_or_else(|| Error::parse(1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(size_line, format!("invalid size '{t}'"))))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::parse(size_line, "size line needs rows cols entries"));
    };
    if rows != cols {
        return Err(Error::InconsistentDimensions(format!("adjacency must be square, found {rows}x{cols}")));
    }
    if let Some(declared) = node_count {
        if declared != rows {
            return Err(Error::InconsistentDimensions(format!(
                "file declares {rows} nodes, configuration {declared}"
            )));
        }
    }
    let n = rows;
    let per_entry = match field {
        MmField::Pattern => 2,
        MmField::Real => 3,
        MmField::Complex => 4,
    };
    let mut data = vec![S::zero(); n * n];
    let mut seen = 0;
    for (line, l) in body {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != per_entry {
            return Err(Error::parse(line, format!("expected {per_entry} fields, found {}", t.len())));
        }
        let src = parse_index(t[0], line, "source node")?;
        let dst = parse_index(t[1], line, "target node")?;
        if src > n || dst > n {
            return Err(Error::InconsistentDimensions(format!(
                "line {line}: entry ({src}, {dst}) outside {n}x{n}"
            )));
        }
        let w: S = match field {
            MmField::Pattern => S::one(),
            MmField::Real => parse_value(t[2], line)?,
            MmField::Complex => {
                let re: S = parse_value(t[2], line)?;
                let im: S = parse_value(t[3], line)?;
                re + im * S::from_gaussian(0, 1)
            }
        };
        let (i, j) = (dst - 1, src - 1);
        if i != j {
            let mirror = match symmetry {
                MmSymmetry::General => None,
                MmSymmetry::Symmetric => Some(w.clone()),
                MmSymmetry::SkewSymmetric => Some(-w.clone()),
                MmSymmetry::Hermitian => Some(w.conj()),
            };
            if let Some(m) = mirror {
                data[j * n + i] = data[j * n + i].clone() + m;
            }
        }
        data[i * n + j] = data[i * n + j].clone() + w;
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::InconsistentDimensions(format!("size line declares {nnz} entries, found {seen}")));
    }
    Graph::new(Matrix::new(n, n, data))
}

/// Signal CSV: rows `node,value` with an optional header. Unlisted nodes
/// are zero.
pub fn parse_signal<S: Scalar>(text: &str, node_count: usize) -> Result<GraphSignal<S>> {
    let mut values: Vec<Option<S>> = vec![None; node_count];
    for (line, f) in records(text, "node")? {
        if f.len() != 2 {
            return Err(Error::parse(line, format!("expected node,value, found {} fields", f.len())));
        }
        let node = parse_index(&f[0], line, "node")?;
        if node > node_count {
            return Err(Error::UnknownNode { node, node_count });
        }
        if values[node - 1].is_some() {
            return Err(Error::parse(line, format!("node {node} listed twice")));
        }
        values[node - 1] = Some(parse_value(&f[1], line)?);
    }
    let missing = values.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        warn!("{missing} of {node_count} nodes have no signal value; using 0");
    }
    Ok(GraphSignal::from_values(
        values.into_iter().map(|v| v.unwrap_or_else(S::zero)).collect(),
    ))
}

/// Spectrum CSV: rows `re[,im]` with an optional `re,im` header.
pub fn parse_spectrum<S: Scalar>(text: &str) -> Result<Vec<S>> {
    records(text, "re")?
        .into_iter()
        .map(|(line, f)| {
            let re: S = match f.first() {
                Some(v) => parse_value(v, line)?,
                None => return Err(Error::parse(line, "empty row")),
            };
            match f.len() {
                1 => Ok(re),
                2 => Ok(re + parse_value::<S>(&f[1], line)? * S::from_gaussian(0, 1)),
                k => Err(Error::parse(line, format!("expected re[,im], found {k} fields"))),
            }
        })
        .collect()
}
