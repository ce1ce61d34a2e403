//! JSON document formats: matrices, maps, symbols, and spectra. The JSON
//! surface is the stable machine contract; parsing validates each payload
//! against its kind before any computation touches it.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::SingularSpectrum;
use crate::maps::{BuiltinMap, SuperOperator};
use crate::matrix::ComplexMatrix;
use crate::schur::SchurSymbol;

/// Raw complex grid: row-major [re, im] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixPayload {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixPayload {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Schema("rows and cols must be positive".into()));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Schema(format!(
                "data holds {} entries, expected rows*cols = {}",
                self.data.len(),
                self.rows * self.cols
            )));
        }
        let mut m = ComplexMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let [re, im] = self.data[i * self.cols + j];
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        Ok(m)
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapReprDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<MatrixPayload>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choi: Option<MatrixPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapDoc {
    pub dim_in: usize,
    pub dim_out: usize,
    pub repr: MapReprDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolDoc {
    pub n: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_model: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

/// A parsed input document; `kind` discriminates the payload schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DocumentEnvelope {
    Matrix(MatrixDoc),
    Map(MapDoc),
    Symbol(SymbolDoc),
    Spectrum(SpectrumDoc),
}

pub fn parse_document(text: &str) -> Result<DocumentEnvelope> {
    let doc: DocumentEnvelope = serde_json::from_str(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        } else {
            Error::Schema(e.to_string())
        }
    })?;
    validate(&doc)?;
    Ok(doc)
}

fn validate(doc: &DocumentEnvelope) -> Result<()> {
    match doc {
        DocumentEnvelope::Matrix(m) => {
            if m.rows == 0 || m.cols == 0 {
                return Err(Error::Schema("matrix: rows and cols must be positive".into()));
            }
            if m.data.len() != m.rows * m.cols {
                return Err(Error::Schema(format!(
                    "matrix: data holds {} entries, expected {}",
                    m.data.len(),
                    m.rows * m.cols
                )));
            }
        }
        DocumentEnvelope::Map(m) => {
            let repr_count = [m.repr.kraus.is_some(), m.repr.choi.is_some(), m.repr.builtin.is_some()]
                .iter()
                .filter(|&&b| b)
                .count();
            if repr_count != 1 {
                return Err(Error::Schema(
                    "map: repr must carry exactly one of kraus, choi, builtin".into(),
                ));
            }
            if m.dim_in == 0 || m.dim_out == 0 {
                return Err(Error::Schema("map: dimensions must be positive".into()));
            }
        }
        DocumentEnvelope::Symbol(s) => {
            if s.n == 0 {
                return Err(Error::Schema("symbol: n must be positive".into()));
            }
            if s.data.len() != s.n * s.n {
                return Err(Error::Schema(format!(
                    "symbol: data holds {} entries, expected n*n = {}",
                    s.data.len(),
                    s.n * s.n
                )));
            }
        }
        DocumentEnvelope::Spectrum(s) => {
            if s.values.is_empty() {
                return Err(Error::Schema("spectrum: values must be non-empty".into()));
            }
            if let Some(d) = s.ambient_dim {
                if d < s.values.len() {
                    return Err(Error::Schema(
                        "spectrum: ambient_dim may not undercut the value count".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

impl DocumentEnvelope {
    pub fn kind(&self) -> &'static str {
        match self {
            DocumentEnvelope::Matrix(_) => "matrix",
            DocumentEnvelope::Map(_) => "map",
            DocumentEnvelope::Symbol(_) => "symbol",
            DocumentEnvelope::Spectrum(_) => "spectrum",
        }
    }

    pub fn as_matrix(&self) -> Result<ComplexMatrix> {
        match self {
            DocumentEnvelope::Matrix(m) => MatrixPayload { rows: m.rows, cols: m.cols, data: m.data.clone() }.to_matrix(),
            other => Err(Error::Schema(format!("expected a matrix document, got {}", other.kind()))),
        }
    }

    /// Matrices coerce through their singular spectrum; spectra load directly.
    pub fn as_spectrum(&self) -> Result<SingularSpectrum> {
        match self {
            DocumentEnvelope::Spectrum(s) => {
                let mut values = s.values.clone();
                values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
                if let Some(d) = s.ambient_dim {
                    values.resize(d, 0.0);
                }
                SingularSpectrum::new(values)
            }
            DocumentEnvelope::Matrix(_) => Ok(crate::majorization::singular_spectrum(&self.as_matrix()?)),
            other => Err(Error::Schema(format!(
                "expected a spectrum or matrix document, got {}",
                other.kind()
            ))),
        }
    }

    pub fn as_symbol(&self) -> Result<SchurSymbol> {
        match self {
            DocumentEnvelope::Symbol(s) => {
                let grid = MatrixPayload { rows: s.n, cols: s.n, data: s.data.clone() }.to_matrix()?;
                let mut sym = SchurSymbol::new(grid)?;
                sym.tail_model = s.tail_model.clone();
                Ok(sym)
            }
            other => Err(Error::Schema(format!("expected a symbol document, got {}", other.kind()))),
        }
    }

    pub fn as_map(&self) -> Result<SuperOperator> {
        let DocumentEnvelope::Map(m) = self else {
            return Err(Error::Schema(format!("expected a map document, got {}", self.kind())));
        };
        if let Some(kraus) = &m.repr.kraus {
            let elements: Result<Vec<ComplexMatrix>> = kraus.iter().map(|p| p.to_matrix()).collect();
            let op = SuperOperator::from_kraus(elements?)?;
            if op.dim_in() != m.dim_in || op.dim_out() != m.dim_out {
                return Err(Error::Schema(format!(
                    "map: kraus elements act {}->{}, declared {}->{}",
                    op.dim_in(),
                    op.dim_out(),
                    m.dim_in,
                    m.dim_out
                )));
            }
            return Ok(op);
        }
        if let Some(choi) = &m.repr.choi {
            return SuperOperator::from_choi(choi.to_matrix()?, m.dim_in, m.dim_out);
        }
        let name = m.repr.builtin.as_deref().expect("validated repr");
        let builtin = builtin_from_name(name, m.dim_in, m.repr.params.as_ref())?;
        let op = SuperOperator::builtin(builtin);
        if op.dim_in() != m.dim_in || op.dim_out() != m.dim_out {
            return Err(Error::Schema(format!(
                "map: builtin {name} acts {}->{}, declared {}->{}",
                op.dim_in(),
                op.dim_out(),
                m.dim_in,
                m.dim_out
            )));
        }
        Ok(op)
    }
}

fn builtin_from_name(name: &str, dim: usize, params: Option<&serde_json::Value>) -> Result<BuiltinMap> {
    let get_matrix_param = |key: &str| -> Result<ComplexMatrix> {
        let value = params
            .and_then(|p| p.get(key))
            .ok_or_else(|| Error::Schema(format!("map: builtin {name} needs params.{key}")))?;
        let payload: MatrixPayload = serde_json::from_value(value.clone())
            .map_err(|e| Error::Schema(format!("map: params.{key}: {e}")))?;
        payload.to_matrix()
    };
    match name {
        "identity" => Ok(BuiltinMap::Identity { dim }),
        "transpose" => Ok(BuiltinMap::Transpose { dim }),
        "trace_times_identity" => Ok(BuiltinMap::TraceTimesIdentity { dim }),
        "symmetrization" => Ok(BuiltinMap::Symmetrization { dim }),
        "conjugation" => Ok(BuiltinMap::Conjugation { u: get_matrix_param("u")? }),
        "stormer_U" => Ok(BuiltinMap::StormerU),
        "stormer_V" => Ok(BuiltinMap::StormerV),
        "stormer_W" => Ok(BuiltinMap::StormerW),
        "schur" => Ok(BuiltinMap::Schur { symbol: get_matrix_param("symbol")? }),
        other => Err(Error::Schema(format!("map: unknown builtin '{other}'"))),
    }
}

/// Serialization helpers for results flowing back out of the CLI.
pub fn matrix_to_doc(m: &ComplexMatrix) -> DocumentEnvelope {
    DocumentEnvelope::Matrix(MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        meta: BTreeMap::new(),
    })
}

pub fn spectrum_to_doc(s: &SingularSpectrum) -> DocumentEnvelope {
    DocumentEnvelope::Spectrum(SpectrumDoc {
        values: s.values().to_vec(),
        ambient_dim: Some(s.ambient_dim()),
        meta: BTreeMap::new(),
    })
}

pub fn serialize_document(doc: &DocumentEnvelope) -> String {
    serde_json::to_string_pretty(doc).expect("document serialization")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_matrix() {
        let doc = parse_document(r#"{"kind":"matrix","rows":1,"cols":1,"data":[[1,0]]}"#).unwrap();
        let m = doc.as_matrix().unwrap();
        assert!(m.approx_eq(&ComplexMatrix::identity(1), 0.0));
    }

    #[test]
    fn builtin_transpose_map() {
        let doc = parse_document(
            r#"{"kind":"map","dim_in":2,"dim_out":2,"repr":{"builtin":"transpose"}}"#,
        )
        .unwrap();
        let t = doc.as_map().unwrap();
        let e12 = ComplexMatrix::matrix_unit(2, 0, 1);
        assert!(t.apply(&e12).unwrap().approx_eq(&ComplexMatrix::matrix_unit(2, 1, 0), 0.0));
    }

    #[test]
    fn malformed_data_length_is_schema_error() {
        let err = parse_document(r#"{"kind":"matrix","rows":2,"cols":2,"data":[[1,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_document("{not json").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 1")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_preserves_entries() {
        let mut rng = crate::rng_from_seed(81);
        let m = crate::matrix::random_matrix(&mut rng, 3, 2);
        let text = serialize_document(&matrix_to_doc(&m));
        let back = parse_document(&text).unwrap().as_matrix().unwrap();
        assert!(back.approx_eq(&m, 0.0));
    }

    #[test]
    fn spectrum_coercion_from_matrix() {
        let doc = parse_document(
            r#"{"kind":"matrix","rows":2,"cols":2,"data":[[3,0],[0,0],[0,0],[-4,0]]}"#,
        )
        .unwrap();
        let s = doc.as_spectrum().unwrap();
        assert!((s.values()[0] - 4.0).abs() < 1e-10);
        assert!((s.values()[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn kraus_map_dims_checked() {
        let err = parse_document(
            r#"{"kind":"map","dim_in":3,"dim_out":2,"repr":{"kraus":[{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}]}}"#,
        )
        .unwrap()
        .as_map()
        .unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }
}
