//! Line-oriented JSON files for representations and layer data.
//!
//! A file is one header object followed by one body object per line.
//! Scalars are strings: `"a/b"` or `"a"` over the rationals, a residue in
//! `[0, p)` otherwise.
//!
//! ```text
//! {"kind":"rep","version":1,"n":2,"p":5,"d":2,"format":"chi"}
//! {"M":[[0,0],[0,0]],"matrix":[["1","0"],["0","1"]]}
//! {"M":[[0,1],[0,0]],"matrix":[["0","1"],["0","0"]]}
//! ```

use std::collections::BTreeSet;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use unirep::arith::{Field, Scalar};
use unirep::hopf::{ExponentMatrix, PolyMatrix, Polynomial, Variable};
use unirep::linalg::{Matrix, ScalarMatrix};
use unirep::rep::{ChiTable, LieLayerData, Representation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormatError {
    /// `line` is 1-based; 0 means the file as a whole.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Body kind of a representation file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BodyFormat {
    /// One line per supported exponent matrix with its coefficient matrix.
    Chi,
    /// One line per nonzero polynomial matrix entry.
    Poly,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepHeader {
    kind: String,
    version: u32,
    n: usize,
    p: u64,
    d: usize,
    format: BodyFormat,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChiLine {
    #[serde(rename = "M")]
    m: Vec<Vec<u64>>,
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyTerm {
    #[serde(rename = "M")]
    m: Vec<Vec<u64>>,
    c: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyLine {
    row: usize,
    col: usize,
    terms: Vec<PolyTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerHeader {
    kind: String,
    version: u32,
    n: usize,
    p: u64,
    d: usize,
    layers: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerLine {
    layer: usize,
    i: usize,
    j: usize,
    matrix: Vec<Vec<String>>,
}

/// Non-blank lines, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn parse_line<T: for<'de> Deserialize<'de>>(line: usize, text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| at(line, e.to_string()))
}

fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn check_header(line: usize, kind: &str, expected: &str, version: u32, n: usize, d: usize, p: u64) -> Result<Field, FormatError> {
    if kind != expected {
        return Err(at(line, format!("expected a \"{expected}\" file, found kind \"{kind}\"")));
    }
    if version != FORMAT_VERSION {
        return Err(at(line, format!("unsupported format version {version}")));
    }
    if n < 2 || d < 1 {
        return Err(at(line, format!("need n >= 2 and d >= 1, got n = {n}, d = {d}")));
    }
    Field::from_characteristic(p).map_err(|e| at(line, e.to_string()))
}

fn parse_exponent(line: usize, n: usize, rows: &[Vec<u64>]) -> Result<ExponentMatrix, FormatError> {
    if rows.len() != n {
        return Err(at(line, format!("exponent matrix has {} rows, expected {n}", rows.len())));
    }
    ExponentMatrix::from_rows(rows).map_err(|e| at(line, e.to_string()))
}

fn parse_scalar(line: usize, field: Field, text: &str) -> Result<Scalar, FormatError> {
    field.parse_scalar(text).map_err(|e| at(line, e.to_string()))
}

fn parse_matrix(line: usize, field: Field, d: usize, rows: &[Vec<String>]) -> Result<ScalarMatrix, FormatError> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(at(line, format!("coefficient matrix must be {d}x{d}")));
    }
    let entries = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(line, field, s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScalarMatrix::from_rows(entries).expect("checked shape"))
}

fn write_matrix(m: &ScalarMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

pub fn parse_rep_file(text: &str) -> Result<Representation, FormatError> {
    let mut it = lines(text);
    let (hl, htext) = it.next().ok_or_else(|| at(0, "empty file"))?;
    let h: RepHeader = parse_line(hl, htext)?;
    let field = check_header(hl, &h.kind, "rep", h.version, h.n, h.d, h.p)?;
    match h.format {
        BodyFormat::Chi => {
            let mut chi = ChiTable::new(h.n, field, h.d);
            let mut seen = BTreeSet::new();
            for (line, text) in it {
                let body: ChiLine = parse_line(line, text)?;
                let m = parse_exponent(line, h.n, &body.m)?;
                if !seen.insert(m.clone()) {
                    return Err(at(line, format!("exponent matrix {m} listed twice")));
                }
                let value = parse_matrix(line, field, h.d, &body.matrix)?;
                chi.insert(m, value).map_err(|e| at(line, e.to_string()))?;
            }
            Ok(Representation::from_chi(chi))
        }
        BodyFormat::Poly => {
            let zero = Polynomial::zero(h.n, field);
            let mut poly: PolyMatrix = Matrix::zeros(h.d, h.d, &zero);
            let mut seen = BTreeSet::new();
            for (line, text) in it {
                let body: PolyLine = parse_line(line, text)?;
                if body.row < 1 || body.row > h.d || body.col < 1 || body.col > h.d {
                    return Err(at(line, format!("entry ({}, {}) is outside a {}x{} matrix", body.row, body.col, h.d, h.d)));
                }
                if !seen.insert((body.row, body.col)) {
                    return Err(at(line, format!("entry ({}, {}) listed twice", body.row, body.col)));
                }
                let mut entry = Polynomial::zero(h.n, field);
                let mut monomials = BTreeSet::new();
                for term in &body.terms {
                    let m = parse_exponent(line, h.n, &term.m)?;
                    if !monomials.insert(m.clone()) {
                        return Err(at(line, format!("monomial {m} listed twice")));
                    }
                    entry.add_term(m, &parse_scalar(line, field, &term.c)?);
                }
                poly[(body.row - 1, body.col - 1)] = entry;
            }
            Representation::from_poly(poly).map_err(|e| at(0, e.to_string()))
        }
    }
}

/// Canonical text: exponent matrices in lexicographic order.
pub fn write_rep_file(r: &Representation, format: BodyFormat) -> String {
    let header = RepHeader {
        kind: "rep".into(),
        version: FORMAT_VERSION,
        n: r.ambient_size(),
        p: r.characteristic(),
        d: r.dimension(),
        format,
    };
    let mut out = to_line(&header);
    out.push('\n');
    match format {
        BodyFormat::Chi => {
            for (m, value) in r.chi().iter() {
                out.push_str(&to_line(&ChiLine { m: m.to_rows(), matrix: write_matrix(value) }));
                out.push('\n');
            }
        }
        BodyFormat::Poly => {
            let poly = r.poly();
            for row in 0..poly.rows() {
                for col in 0..poly.cols() {
                    let entry = &poly[(row, col)];
                    if entry.is_zero() {
                        continue;
                    }
                    let terms = entry.terms().map(|(m, c)| PolyTerm { m: m.to_rows(), c: c.to_string() }).collect();
                    out.push_str(&to_line(&PolyLine { row: row + 1, col: col + 1, terms }));
                    out.push('\n');
                }
            }
        }
    }
    out
}

/// Layer files list a matrix for each layer and pair; omitted pairs are zero.
pub fn parse_layer_file(text: &str) -> Result<LieLayerData, FormatError> {
    let mut it = lines(text);
    let (hl, htext) = it.next().ok_or_else(|| at(0, "empty file"))?;
    let h: LayerHeader = parse_line(hl, htext)?;
    let field = check_header(hl, &h.kind, "layers", h.version, h.n, h.d, h.p)?;
    if h.layers < 1 {
        return Err(at(hl, "at least one layer is required"));
    }
    let mut data = LieLayerData::zero(h.n, field, h.d);
    let mut seen = BTreeSet::new();
    for (line, text) in it {
        let body: LayerLine = parse_line(line, text)?;
        if body.layer >= h.layers {
            return Err(at(line, format!("layer {} is outside 0..{}", body.layer, h.layers)));
        }
        let v = Variable::new(body.i, body.j, h.n).map_err(|e| at(line, e.to_string()))?;
        if !seen.insert((body.layer, v)) {
            return Err(at(line, format!("layer {}, pair ({}, {}) listed twice", body.layer, v.i, v.j)));
        }
        let m = parse_matrix(line, field, h.d, &body.matrix)?;
        data.set_image(body.layer, v, m).map_err(|e| at(line, e.to_string()))?;
    }
    // materialize trailing zero layers declared by the header
    if let Some(v) = Variable::all(h.n).next().filter(|_| data.layer_count() < h.layers) {
        let zero = ScalarMatrix::zeros_in(field, h.d, h.d);
        data.set_image(h.layers - 1, v, zero).map_err(|e| at(0, e.to_string()))?;
    }
    Ok(data)
}

pub fn write_layer_file(data: &LieLayerData) -> String {
    let header = LayerHeader {
        kind: "layers".into(),
        version: FORMAT_VERSION,
        n: data.ambient_size(),
        p: data.characteristic(),
        d: data.dimension(),
        layers: data.layer_count(),
    };
    let mut out = to_line(&header);
    out.push('\n');
    for l in 0..data.layer_count() {
        for v in Variable::all(data.ambient_size()) {
            let line = LayerLine { layer: l, i: v.i, j: v.j, matrix: write_matrix(data.image(l, v)) };
            out.push_str(&to_line(&line));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use unirep::hopf::generic_element;

    #[test]
    fn identity_file() {
        let text = "{\"kind\":\"rep\",\"version\":1,\"n\":2,\"p\":5,\"d\":2,\"format\":\"chi\"}\n\
                    {\"M\":[[0,0],[0,0]],\"matrix\":[[\"1\",\"0\"],[\"0\",\"1\"]]}\n";
        let r = parse_rep_file(text).unwrap();
        assert!(r.poly().entries().iter().all(|p| p.total_degree() == 0));
        assert_eq!(r.chi().support_len(), 1);
        assert_eq!(write_rep_file(&r, BodyFormat::Chi), text);
    }

    #[test]
    fn ga_poly_file() {
        let text = "{\"kind\":\"rep\",\"version\":1,\"n\":2,\"p\":0,\"d\":2,\"format\":\"poly\"}\n\
                    {\"row\":1,\"col\":1,\"terms\":[{\"M\":[[0,0],[0,0]],\"c\":\"1\"}]}\n\
                    {\"row\":1,\"col\":2,\"terms\":[{\"M\":[[0,1],[0,0]],\"c\":\"1\"}]}\n\
                    {\"row\":2,\"col\":2,\"terms\":[{\"M\":[[0,0],[0,0]],\"c\":\"1\"}]}\n";
        let r = parse_rep_file(text).unwrap();
        assert_eq!(r.poly(), &generic_element(2, Field::Rational));
        assert_eq!(write_rep_file(&r, BodyFormat::Poly), text);
    }

    #[test]
    fn residue_out_of_range() {
        let text = "{\"kind\":\"rep\",\"version\":1,\"n\":2,\"p\":5,\"d\":1,\"format\":\"chi\"}\n\
                    {\"M\":[[0,0],[0,0]],\"matrix\":[[\"7\"]]}\n";
        let err = parse_rep_file(text).unwrap_err();
        assert_eq!(err, at(2, "residue 7 is outside [0, 5)"));
    }

    #[test]
    fn structural_errors_carry_lines() {
        let header = "{\"kind\":\"rep\",\"version\":1,\"n\":2,\"p\":5,\"d\":1,\"format\":\"chi\"}\n";
        let cases = [
            format!("{header}{{\"M\":[[0,0]],\"matrix\":[[\"1\"]]}}\n"),
            format!("{header}{{\"M\":[[1,0],[0,0]],\"matrix\":[[\"1\"]]}}\n"),
            format!("{header}{{\"M\":[[0,0],[0,0]],\"matrix\":[[\"1\",\"0\"]]}}\n"),
            format!("{header}\n{{\"M\":[[0,0],[0,0]],\"matrix\":[[\"1\"]]}}\n{{\"M\":[[0,0],[0,0]],\"matrix\":[[\"1\"]]}}\n"),
            format!("{header}not json\n"),
        ];
        let expected_lines = [2, 2, 2, 4, 2];
        for (text, line) in cases.iter().zip(expected_lines) {
            match parse_rep_file(text) {
                Err(FormatError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                Ok(_) => panic!("accepted {text}"),
            }
        }
        assert!(parse_rep_file("{\"kind\":\"rep\",\"version\":1,\"n\":2,\"p\":4,\"d\":1,\"format\":\"chi\"}").is_err());
        assert!(parse_rep_file("").is_err());
    }

    #[test]
    fn layer_file_round_trip() {
        let f = Field::prime(7).unwrap();
        let data = LieLayerData::tautological(3, f).shifted();
        let text = write_layer_file(&data);
        assert_eq!(parse_layer_file(&text).unwrap(), data);
        assert_eq!(text.lines().count(), 1 + 2 * 3);
    }

    #[test]
    fn sparse_layer_file() {
        let text = "{\"kind\":\"layers\",\"version\":1,\"n\":2,\"p\":5,\"d\":2,\"layers\":2}\n\
                    {\"layer\":0,\"i\":1,\"j\":2,\"matrix\":[[\"0\",\"1\"],[\"0\",\"0\"]]}\n";
        let data = parse_layer_file(text).unwrap();
        assert_eq!(data.layer_count(), 2);
        assert!(data.is_zero_layer(1));
        let bad = text.replace("\"i\":1,\"j\":2", "\"i\":2,\"j\":2");
        assert!(parse_layer_file(&bad).is_err());
    }
}
