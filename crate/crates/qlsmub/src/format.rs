//! JSON file formats. Every document carries `"format": "qlsmub/1"` and a
//! `kind` tag; complex numbers are `[re, im]` pairs.

use std::fs;
use std::path::Path;

use qlsmub_core::bases::{BipartiteBasis, BipartiteState};
use qlsmub_core::squares::{LatinSquare, VectorGrid};
use qlsmub_core::{CMatrix, CVector, C64};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT: &str = "qlsmub/1";

pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    /// `entries[row][col]` is a vector of `C^n`.
    Grid {
        format: String,
        n: usize,
        entries: Vec<Vec<Vec<Complex>>>,
    },
    /// `cells[row][col]` is a symbol in `0..n`.
    Latin {
        format: String,
        n: usize,
        cells: Vec<Vec<usize>>,
    },
    /// Square matrices of order `n`, each given as a list of rows.
    Matrices {
        format: String,
        n: usize,
        matrices: Vec<Vec<Vec<Complex>>>,
    },
    /// `n²` states of `C^n ⊗ C^n`, amplitude of `|k, p⟩` at `k * n + p`.
    Basis {
        format: String,
        n: usize,
        dim: usize,
        states: Vec<Vec<Complex>>,
    },
    /// Plain vectors of a common dimension.
    Vectors {
        format: String,
        dim: usize,
        vectors: Vec<Vec<Complex>>,
    },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("unsupported format {found:?}, expected {FORMAT:?}")]
    Version { found: String },
    #[error("expected a {expected} document, found {found}")]
    Kind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("malformed {kind} document: {reason}")]
    Shape { kind: &'static str, reason: String },
    #[error(transparent)]
    Core(#[from] qlsmub_core::Error),
}

fn c(z: &Complex) -> C64 {
    C64::new(z[0], z[1])
}

fn pair(z: &C64) -> Complex {
    [z.re, z.im]
}

fn vector(v: &[Complex]) -> Result<CVector, FormatError> {
    Ok(CVector::new(v.iter().map(c).collect())?)
}

fn pairs(v: &CVector) -> Vec<Complex> {
    v.entries().iter().map(pair).collect()
}

fn shape(kind: &'static str, reason: String) -> FormatError {
    FormatError::Shape { kind, reason }
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Grid { .. } => "grid",
            Document::Latin { .. } => "latin",
            Document::Matrices { .. } => "matrices",
            Document::Basis { .. } => "basis",
            Document::Vectors { .. } => "vectors",
        }
    }

    fn format(&self) -> &str {
        match self {
            Document::Grid { format, .. }
            | Document::Latin { format, .. }
            | Document::Matrices { format, .. }
            | Document::Basis { format, .. }
            | Document::Vectors { format, .. } => format,
        }
    }

    pub fn parse(text: &str, path: &str) -> Result<Self, FormatError> {
        let doc: Document = serde_json::from_str(text).map_err(|source| FormatError::Json {
            path: path.to_string(),
            source,
        })?;
        if doc.format() != FORMAT {
            return Err(FormatError::Version {
                found: doc.format().to_string(),
            });
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let name = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: name.clone(),
            source,
        })?;
        Self::parse(&text, &name)
    }

    /// Canonical serialization: pretty JSON with a trailing newline. Floats
    /// use the shortest representation that round-trips exactly.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        fs::write(path, self.to_json()).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn from_grid(g: &VectorGrid) -> Self {
        let n = g.order();
        Document::Grid {
            format: FORMAT.into(),
            n,
            entries: (0..n).map(|r| g.row(r).iter().map(pairs).collect()).collect(),
        }
    }

    pub fn from_latin(l: &LatinSquare) -> Self {
        Document::Latin {
            format: FORMAT.into(),
            n: l.order(),
            cells: l.rows().map(<[usize]>::to_vec).collect(),
        }
    }

    pub fn from_matrices(ms: &[CMatrix]) -> Self {
        Document::Matrices {
            format: FORMAT.into(),
            n: ms.first().map_or(0, CMatrix::rows),
            matrices: ms
                .iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(pair).collect()).collect())
                .collect(),
        }
    }

    pub fn from_basis(b: &BipartiteBasis) -> Self {
        Document::Basis {
            format: FORMAT.into(),
            n: b.local_dim(),
            dim: b.dim(),
            states: b.states().iter().map(|s| pairs(s.vector())).collect(),
        }
    }

    pub fn from_vectors(vs: &[CVector]) -> Self {
        Document::Vectors {
            format: FORMAT.into(),
            dim: vs.first().map_or(0, CVector::dim),
            vectors: vs.iter().map(pairs).collect(),
        }
    }

    fn wrong(&self, expected: &'static str) -> FormatError {
        FormatError::Kind {
            expected,
            found: self.kind(),
        }
    }

    /// Grid documents, or Latin documents read as grids of basis vectors.
    pub fn to_grid(&self) -> Result<VectorGrid, FormatError> {
        match self {
            Document::Grid { n, entries, .. } => {
                if entries.len() != *n || entries.iter().any(|r| r.len() != *n) {
                    return Err(shape("grid", format!("entries must be {n}x{n}")));
                }
                let rows = entries
                    .iter()
                    .map(|r| r.iter().map(|v| vector(v)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let g = VectorGrid::from_rows(rows)?;
                Ok(g)
            }
            Document::Latin { .. } => Ok(VectorGrid::from_latin(&self.to_latin()?)),
            _ => Err(self.wrong("grid")),
        }
    }

    pub fn to_latin(&self) -> Result<LatinSquare, FormatError> {
        match self {
            Document::Latin { n, cells, .. } => {
                if cells.len() != *n {
                    return Err(shape("latin", format!("expected {n} rows, found {}", cells.len())));
                }
                Ok(LatinSquare::from_rows(cells)?)
            }
            _ => Err(self.wrong("latin")),
        }
    }

    pub fn to_matrices(&self) -> Result<Vec<CMatrix>, FormatError> {
        match self {
            Document::Matrices { n, matrices, .. } => matrices
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                        return Err(shape("matrices", format!("matrix {i} must be {n}x{n}")));
                    }
                    Ok(CMatrix::from_rows(rows.iter().map(|r| r.iter().map(c).collect()).collect())?)
                })
                .collect(),
            _ => Err(self.wrong("matrices")),
        }
    }

    /// Checks only shape and unit norm; entanglement is left to the caller.
    pub fn to_basis(&self, tol: f64) -> Result<BipartiteBasis, FormatError> {
        match self {
            Document::Basis { n, dim, states, .. } => {
                if *dim != n * n {
                    return Err(shape("basis", format!("dim {dim} is not n² = {}", n * n)));
                }
                let states = states
                    .iter()
                    .map(|s| Ok(BipartiteState::new(*n, vector(s)?, tol)?))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Ok(BipartiteBasis::new(*n, states)?)
            }
            _ => Err(self.wrong("basis")),
        }
    }

    /// The vectors of a basis or vector-list document.
    pub fn to_vectors(&self) -> Result<Vec<CVector>, FormatError> {
        match self {
            Document::Basis { states: vs, .. } | Document::Vectors { vectors: vs, .. } => {
                vs.iter().map(|v| vector(v)).collect()
            }
            _ => Err(self.wrong("basis")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlsmub_core::fixtures;

    #[test]
    fn grid_round_trip_is_exact() {
        let g = fixtures::paper_p();
        let doc = Document::from_grid(&g);
        let back = Document::parse(&doc.to_json(), "mem").unwrap();
        assert_eq!(back.to_grid().unwrap(), g);
        assert_eq!(back.to_json(), doc.to_json());
    }

    #[test]
    fn latin_reads_as_grid() {
        let l = LatinSquare::cyclic(3);
        let doc = Document::from_latin(&l);
        assert_eq!(doc.to_grid().unwrap(), VectorGrid::from_latin(&l));
        assert!(matches!(doc.to_matrices(), Err(FormatError::Kind { expected: "matrices", found: "latin" })));
    }

    #[test]
    fn version_is_checked() {
        let text = r#"{"kind":"latin","format":"qlsmub/2","n":1,"cells":[[0]]}"#;
        assert!(matches!(Document::parse(text, "mem"), Err(FormatError::Version { .. })));
    }

    #[test]
    fn ragged_matrix_is_rejected() {
        let text = r#"{"kind":"matrices","format":"qlsmub/1","n":2,"matrices":[[[[1,0],[1,0]],[[1,0]]]]}"#;
        let doc = Document::parse(text, "mem").unwrap();
        assert!(matches!(doc.to_matrices(), Err(FormatError::Shape { .. })));
    }
}
