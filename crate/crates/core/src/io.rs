//! Matrix file serialization: "rows cols" header line, then one line per
//! row of whitespace-separated values. Exact matrices use "p/q" rational
//! tokens (plain integers when the denominator is 1); floating matrices
//! use decimal notation. Iso-matrix files carry a header comment
//! `# iso-matrix G=<file> H=<file> cone=<tag>` ahead of the matrix.

use std::str::FromStr;

use nalgebra::DMatrix;
use num::{BigInt, BigRational, One};

use crate::conic::ConeKind;
use crate::exact::RMat;
use crate::isomaps::{IsoEntries, IsoMatrix};

#[derive(Debug, thiserror::Error)]
pub enum MatrixIoError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn err(line: usize, msg: impl Into<String>) -> MatrixIoError {
    MatrixIoError::Parse(line, msg.into())
}

/// Entries read back from a matrix file: exact when every token was an
/// integer or "p/q" fraction, floating when any token used decimal or
/// scientific notation.
#[derive(Debug, Clone)]
pub enum MatrixData {
    Exact(RMat),
    Float(DMatrix<f64>),
}

impl MatrixData {
    pub fn to_f64(&self) -> DMatrix<f64> {
        match self {
            MatrixData::Exact(r) => r.to_f64(),
            MatrixData::Float(m) => m.clone(),
        }
    }
}

pub fn serialize_matrix_rational(m: &RMat) -> String {
    let mut out = format!("{} {}\n", m.rows, m.cols);
    for i in 0..m.rows {
        let row: Vec<String> = (0..m.cols)
            .map(|j| {
                let v = &m[(i, j)];
                if v.denom().is_one() {
                    v.numer().to_string()
                } else {
                    format!("{}/{}", v.numer(), v.denom())
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_matrix_f64(m: &DMatrix<f64>) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:.17e}", m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_token_rational(tok: &str, line: usize) -> Result<BigRational, MatrixIoError> {
    if let Some((p, q)) = tok.split_once('/') {
        let p = BigInt::from_str(p).map_err(|_| err(line, format!("bad numerator {p:?}")))?;
        let q = BigInt::from_str(q).map_err(|_| err(line, format!("bad denominator {q:?}")))?;
        if q == BigInt::from(0) {
            return Err(err(line, "zero denominator"));
        }
        Ok(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(tok).map_err(|_| err(line, format!("bad integer {tok:?}")))?;
        Ok(BigRational::from_integer(p))
    }
}

/// Parses a matrix body (comment lines starting with '#' are skipped).
/// The result is exact unless any token needs floating-point notation.
pub fn parse_matrix(text: &str) -> Result<MatrixData, MatrixIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty matrix file"))?;
    let body: Vec<(usize, &str)> = lines.collect();
    let mut hp = header.split_whitespace();
    let rows: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(hline, "expected \"rows cols\" header"))?;
    let cols: usize = hp
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(hline, "expected \"rows cols\" header"))?;
    if hp.next().is_some() {
        return Err(err(hline, "trailing tokens after header"));
    }

    let exact = !body
        .iter()
        .any(|(_, l)| l.contains('.') || l.contains('e') || l.contains('E'));

    let mut rational = RMat::zeros(rows, cols);
    let mut float = DMatrix::zeros(rows, cols);
    let mut i = 0;
    for (lno, line) in body {
        if i >= rows {
            return Err(err(lno, format!("more than {rows} rows")));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols {
            return Err(err(lno, format!("expected {cols} entries, got {}", toks.len())));
        }
        for (j, tok) in toks.iter().enumerate() {
            if exact {
                rational[(i, j)] = parse_token_rational(tok, lno)?;
            } else {
                float[(i, j)] = tok
                    .parse::<f64>()
                    .map_err(|_| err(lno, format!("bad number {tok:?}")))?;
            }
        }
        i += 1;
    }
    if i != rows {
        return Err(err(0, format!("expected {rows} rows, got {i}")));
    }
    Ok(if exact {
        MatrixData::Exact(rational)
    } else {
        MatrixData::Float(float)
    })
}

/// Serializes an isomorphism matrix with its provenance header comment.
pub fn serialize_iso_matrix(m: &IsoMatrix, g_file: &str, h_file: &str) -> String {
    let cone = match m.cone {
        ConeKind::Psd => "psd",
        ConeKind::Dnn => "dnn",
    };
    let body = match &m.entries {
        IsoEntries::Exact(r) => serialize_matrix_rational(r),
        IsoEntries::Float(f) => serialize_matrix_f64(f),
    };
    format!("# iso-matrix G={g_file} H={h_file} cone={cone}\n{body}")
}

/// Header fields of an iso-matrix file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoHeader {
    pub g_file: String,
    pub h_file: String,
    pub cone: ConeKind,
}

/// Parses an iso-matrix file. The matrix order must equal n_g·n_h, which
/// the caller supplies after loading the referenced graphs.
pub fn parse_iso_matrix(
    text: &str,
    n_g: usize,
    n_h: usize,
) -> Result<(IsoMatrix, IsoHeader), MatrixIoError> {
    let header_line = text
        .lines()
        .find(|l| l.trim_start().starts_with("# iso-matrix"))
        .ok_or_else(|| err(1, "missing \"# iso-matrix\" header comment"))?;
    let mut g_file = None;
    let mut h_file = None;
    let mut cone = None;
    for tok in header_line.split_whitespace() {
        if let Some(v) = tok.strip_prefix("G=") {
            g_file = Some(v.to_string());
        } else if let Some(v) = tok.strip_prefix("H=") {
            h_file = Some(v.to_string());
        } else if let Some(v) = tok.strip_prefix("cone=") {
            cone = Some(
                v.parse::<ConeKind>()
                    .map_err(|_| err(1, format!("unknown cone tag {v:?}")))?,
            );
        }
    }
    let header = IsoHeader {
        g_file: g_file.ok_or_else(|| err(1, "header missing G="))?,
        h_file: h_file.ok_or_else(|| err(1, "header missing H="))?,
        cone: cone.ok_or_else(|| err(1, "header missing cone="))?,
    };
    let data = parse_matrix(text)?;
    let (rows, cols) = match &data {
        MatrixData::Exact(r) => (r.rows, r.cols),
        MatrixData::Float(f) => (f.nrows(), f.ncols()),
    };
    if rows != n_g * n_h || cols != n_g * n_h {
        return Err(err(
            0,
            format!("matrix is {rows}x{cols}, expected order {}", n_g * n_h),
        ));
    }
    let entries = match data {
        MatrixData::Exact(r) => IsoEntries::Exact(r),
        MatrixData::Float(f) => IsoEntries::Float(f),
    };
    Ok((
        IsoMatrix {
            n_g,
            n_h,
            cone: header.cone,
            entries,
        },
        header,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::cycle;
    use crate::isomaps::build_cp_from_isomorphisms;
    use num::One;

    #[test]
    fn rational_round_trip() {
        let mut m = RMat::zeros(2, 3);
        m[(0, 0)] = BigRational::new(BigInt::from(1), BigInt::from(3));
        m[(1, 2)] = BigRational::from_integer(BigInt::from(-7));
        let text = serialize_matrix_rational(&m);
        assert!(text.starts_with("2 3\n"));
        assert!(text.contains("1/3"));
        match parse_matrix(&text).unwrap() {
            MatrixData::Exact(r) => {
                assert_eq!(r.rows, 2);
                for i in 0..2 {
                    for j in 0..3 {
                        assert_eq!(r[(i, j)], m[(i, j)]);
                    }
                }
            }
            MatrixData::Float(_) => panic!("expected exact parse"),
        }
    }

    #[test]
    fn float_round_trip() {
        let m = DMatrix::from_row_slice(2, 2, &[0.5, -1.25e-7, 3.0, 0.1]);
        let text = serialize_matrix_f64(&m);
        match parse_matrix(&text).unwrap() {
            MatrixData::Float(f) => assert!((f - m).amax() == 0.0),
            MatrixData::Exact(_) => panic!("expected float parse"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_matrix("2 2\n1 2\n3"),
            Err(MatrixIoError::Parse(3, _))
        ));
        assert!(matches!(
            parse_matrix("1 1\n1/0"),
            Err(MatrixIoError::Parse(2, _))
        ));
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn iso_matrix_round_trip() {
        let g = cycle(4);
        let f: Vec<usize> = (0..4).collect();
        let (iso, _) =
            build_cp_from_isomorphisms(&g, &g, &[f], &[BigRational::one()]).unwrap();
        let text = serialize_iso_matrix(&iso, "c4.el", "c4.el");
        let (back, header) = parse_iso_matrix(&text, 4, 4).unwrap();
        assert_eq!(header.g_file, "c4.el");
        assert_eq!(header.cone, ConeKind::Dnn);
        assert!(back.is_exact());
        let a = iso.exact().unwrap();
        let b = back.exact().unwrap();
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(a[(i, j)], b[(i, j)]);
            }
        }
        assert!(parse_iso_matrix(&text, 3, 4).is_err());
        assert!(parse_iso_matrix("1 1\n1\n", 1, 1).is_err());
    }
}
