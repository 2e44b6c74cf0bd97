//! Dense square matrices and the plain-text matrix/vector formats.
//!
//! Storage is row-major `f64`. The text format is UTF-8: lines starting
//! with `#` are comments, the first non-comment line holds the order `n`,
//! and each of the next `n` non-comment lines holds `n` whitespace-separated
//! decimal literals. The writer emits 17 significant digits, so a
//! write/read round trip reproduces every entry bit for bit.

use crate::error::Error;

/// Dense n-by-n matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries.
    ///
    /// Fails if `entries.len() != n * n` or any entry is NaN/infinite.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self, Error> {
        if entries.len() != n * n {
            return Err(Error::InvalidDimensions {
                expected: n * n,
                got: entries.len(),
            });
        }
        for (k, &x) in entries.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: k / n + 1,
                    col: k % n + 1,
                });
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from row slices; convenient in tests.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, Error> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RowLengthMismatch {
                    row: i + 1,
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
    }

    /// Row `i` as a slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entrywise maximum norm: the largest `|a[i][j]|` over all entries.
    /// This is not the induced infinity norm.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Entrywise sum `self + other`.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { n: self.n, entries })
    }

    /// Entrywise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { n: self.n, entries })
    }

    /// Matrix product `self * other`.
    ///
    /// i-k-j loop order for row-major cache friendliness.
    pub fn matmul(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a_ik = self.entries[i * n + k];
                let other_row = &other.entries[k * n..(k + 1) * n];
                let out_row = &mut out.entries[i * n..(i + 1) * n];
                for j in 0..n {
                    out_row[j] += a_ik * other_row[j];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>, Error> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }
}

/// Formats a float with 17 significant digits, enough for an exact
/// round trip through `f64::from_str`.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_token(line_no: usize, column: usize, token: &str) -> Result<f64, Error> {
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::NonNumericToken {
            line: line_no,
            column,
            token: token.to_string(),
        }),
    }
}

/// Data lines of the text format: 1-based line number plus content, with
/// comments and blank lines skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a matrix from the text format.
///
/// Content after the `n`-th data row is ignored, so a file may carry
/// trailing comments or annotations.
pub fn parse_matrix(text: &str) -> Result<DenseMatrix, Error> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::MalformedHeader {
        line: 1,
        token: String::new(),
    })?;
    let n: usize = match header.parse() {
        Ok(n) if n > 0 => n,
        _ => {
            return Err(Error::MalformedHeader {
                line: header_line,
                token: header.to_string(),
            })
        }
    };

    let mut entries = Vec::with_capacity(n * n);
    let mut rows_read = 0;
    for (line_no, line) in lines {
        if rows_read == n {
            break;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(Error::RowLengthMismatch {
                row: rows_read + 1,
                expected: n,
                got: tokens.len(),
            });
        }
        for (k, token) in tokens.iter().enumerate() {
            entries.push(parse_token(line_no, k + 1, token)?);
        }
        rows_read += 1;
    }
    if rows_read < n {
        return Err(Error::TooFewRows {
            expected: n,
            got: rows_read,
        });
    }
    DenseMatrix::new(n, entries)
}

/// Writes a matrix in the text format with 17-significant-digit entries.
pub fn format_matrix(m: &DenseMatrix) -> String {
    let mut out = String::new();
    out.push_str(&m.n().to_string());
    out.push('\n');
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|&x| fmt_sig17(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a vector: header line with the length, then that many
/// whitespace-separated values spread over one or more data lines.
pub fn parse_vector(text: &str) -> Result<Vec<f64>, Error> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::MalformedHeader {
        line: 1,
        token: String::new(),
    })?;
    let n: usize = match header.parse() {
        Ok(n) if n > 0 => n,
        _ => {
            return Err(Error::MalformedHeader {
                line: header_line,
                token: header.to_string(),
            })
        }
    };
    let mut values = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if values.len() == n {
            break;
        }
        for (k, token) in line.split_whitespace().enumerate() {
            if values.len() == n {
                break;
            }
            values.push(parse_token(line_no, k + 1, token)?);
        }
    }
    if values.len() < n {
        return Err(Error::TooFewRows {
            expected: n,
            got: values.len(),
        });
    }
    Ok(values)
}

/// Writes a vector in the text format, one value per line.
pub fn format_vector(v: &[f64]) -> String {
    let mut out = String::new();
    out.push_str(&v.len().to_string());
    out.push('\n');
    for &x in v {
        out.push_str(&fmt_sig17(x));
        out.push('\n');
    }
    out
}
