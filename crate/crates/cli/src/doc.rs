//! JSON documents, schema version "1". Complex numbers are `[re, im]` pairs.

use loopbank::linalg::{c64, CMat, C64};
use loopbank::{FilterBank, PolyLoop, ScalarPoly};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

pub type Pair = [f64; 2];

pub fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

pub fn pairs(zs: &[C64]) -> Vec<Pair> {
    zs.iter().copied().map(pair).collect()
}

pub fn unpair(p: &Pair) -> C64 {
    c64(p[0], p[1])
}

/// Row-major list of rows.
pub fn matrix_rows(m: &CMat) -> Vec<Vec<Pair>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| pair(m[(r, c)])).collect()).collect()
}

fn rows_matrix(rows: &[Vec<Pair>], n: usize, what: &str) -> CliResult<CMat> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Schema(format!("{what} must be a {n}x{n} matrix")));
    }
    Ok(CMat::from_fn(n, n, |r, c| unpair(&rows[r][c])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDocument {
    pub schema_version: String,
    pub n: usize,
    pub genus: usize,
    pub coeffs: Vec<Vec<Vec<Pair>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BankDocument {
    pub schema_version: String,
    pub n: usize,
    pub filters: Vec<Vec<Pair>>,
}

/// A single low-pass filter; `n` may instead come from the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LowPassDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub m0: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Loop(LoopDocument),
    Bank(BankDocument),
}

fn parse_value(text: &str) -> CliResult<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))?;
    let version = v.get("schema_version").ok_or_else(|| CliError::Schema("missing schema_version".into()))?;
    if version != SCHEMA_VERSION {
        return Err(CliError::Schema(format!("unsupported schema_version {version}, expected \"{SCHEMA_VERSION}\"")));
    }
    Ok(v)
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::Schema(e.to_string()))
}

/// Loop or bank, told apart by the `coeffs` / `filters` key.
pub fn parse_document(text: &str) -> CliResult<Document> {
    let v = parse_value(text)?;
    match (v.get("coeffs").is_some(), v.get("filters").is_some()) {
        (true, false) => Ok(Document::Loop(from_value(v)?)),
        (false, true) => Ok(Document::Bank(from_value(v)?)),
        _ => Err(CliError::Schema("expected exactly one of \"coeffs\" (loop) or \"filters\" (bank)".into())),
    }
}

pub fn parse_loop(text: &str) -> CliResult<LoopDocument> {
    match parse_document(text)? {
        Document::Loop(d) => Ok(d),
        Document::Bank(_) => Err(CliError::Schema("expected a loop document, got a filter bank".into())),
    }
}

pub fn parse_bank(text: &str) -> CliResult<BankDocument> {
    match parse_document(text)? {
        Document::Bank(d) => Ok(d),
        Document::Loop(_) => Err(CliError::Schema("expected a filter bank document, got a loop".into())),
    }
}

pub fn parse_lowpass(text: &str) -> CliResult<LowPassDocument> {
    from_value(parse_value(text)?)
}

impl LoopDocument {
    pub fn from_loop(a: &PolyLoop) -> Self {
        LoopDocument {
            schema_version: SCHEMA_VERSION.into(),
            n: a.n(),
            genus: a.genus(),
            coeffs: a.coeffs().iter().map(matrix_rows).collect(),
        }
    }

    pub fn matrices(&self) -> CliResult<Vec<CMat>> {
        if self.n == 0 || self.genus == 0 {
            return Err(CliError::Schema("n and genus must be positive".into()));
        }
        if self.coeffs.len() != self.genus {
            return Err(CliError::Schema(format!(
                "genus is {} but {} coefficients were given",
                self.genus,
                self.coeffs.len()
            )));
        }
        self.coeffs.iter().enumerate().map(|(k, rows)| rows_matrix(rows, self.n, &format!("coeffs[{k}]"))).collect()
    }

    /// Parse and certify.
    pub fn to_loop(&self, tol: f64) -> CliResult<PolyLoop> {
        Ok(PolyLoop::from_coeffs(self.matrices()?, tol)?)
    }
}

impl BankDocument {
    pub fn from_bank(bank: &FilterBank) -> Self {
        BankDocument {
            schema_version: SCHEMA_VERSION.into(),
            n: bank.n(),
            filters: bank.filters().iter().map(|f| pairs(f.coeffs())).collect(),
        }
    }

    /// Structural parse only; the QMF check is up to the caller.
    pub fn to_bank(&self) -> CliResult<FilterBank> {
        if self.filters.len() != self.n {
            return Err(CliError::Schema(format!("n is {} but {} filters were given", self.n, self.filters.len())));
        }
        if self.filters.iter().any(|f| f.is_empty()) {
            return Err(CliError::Schema("every filter needs at least one coefficient".into()));
        }
        let filters = self.filters.iter().map(|f| ScalarPoly::new(f.iter().map(unpair).collect())).collect();
        Ok(FilterBank::new(self.n, filters)?)
    }
}
