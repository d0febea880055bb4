//! The integer system `Ax = b` that defines the winning sets of a game.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};

/// An `rows x cols` integer matrix `A` together with a right-hand side `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadoSystem {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    rhs: Vec<BigInt>,
}

impl RadoSystem {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>, rhs: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "system must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} matrix entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if rhs.len() != rows {
            return Err(Error::InvalidInput(format!(
                "expected {rows} right-hand side values, got {}",
                rhs.len()
            )));
        }
        Ok(Self { rows, cols, entries, rhs })
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_rows(rows: &[&[i64]], rhs: &[i64]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        let rhs = rhs.iter().map(|&x| BigInt::from(x)).collect();
        Self::new(rows.len(), cols, entries, rhs).expect("well-formed system")
    }

    /// Single homogeneous equation with the given coefficients.
    pub fn equation(coeffs: &[i64]) -> Self {
        Self::from_rows(&[coeffs], &[0])
    }

    /// `x + y = z`.
    pub fn schur() -> Self {
        Self::equation(&[1, 1, -1])
    }

    /// `x - 2y + z = 0`, the three-term arithmetic progressions.
    pub fn three_ap() -> Self {
        Self::equation(&[1, -2, 1])
    }

    /// `x + y = z + t`.
    pub fn sidon() -> Self {
        Self::equation(&[1, 1, -1, -1])
    }

    /// Looks up a named system: `schur`, `3ap`, `sidon`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "schur" => Some(Self::schur()),
            "3ap" | "three-ap" | "ap3" => Some(Self::three_ap()),
            "sidon" => Some(Self::sidon()),
            _ => None,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn rhs(&self) -> &[BigInt] {
        &self.rhs
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().all(Zero::is_zero)
    }

    /// Matrix rows as owned vectors.
    pub fn matrix_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols).map(<[BigInt]>::to_vec).collect()
    }

    /// Rows of `A` restricted to the given columns, in the given order.
    pub fn column_restriction(&self, cols: &[usize]) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.entry(r, c).clone()).collect())
            .collect()
    }

    /// Rows of the augmented matrix `(A | b)`.
    pub fn augmented_rows(&self) -> Vec<Vec<BigInt>> {
        self.matrix_rows()
            .into_iter()
            .zip(&self.rhs)
            .map(|(mut row, b)| {
                row.push(b.clone());
                row
            })
            .collect()
    }

    /// The same matrix with `b = 0`.
    pub fn homogeneous(&self) -> Self {
        Self { rhs: vec![BigInt::zero(); self.rows], ..self.clone() }
    }

    pub fn with_rhs(&self, rhs: Vec<BigInt>) -> Result<Self> {
        Self::new(self.rows, self.cols, self.entries.clone(), rhs)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(Signed::abs).max().unwrap_or_default()
    }

    pub fn max_abs_rhs(&self) -> BigInt {
        self.rhs.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// Checks `Ax = b` exactly.
    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        x.len() == self.cols
            && (0..self.rows).all(|r| {
                let lhs: BigInt = (0..self.cols).map(|c| self.entry(r, c) * &x[c]).sum();
                lhs == self.rhs[r]
            })
    }

    pub fn is_solution_i64(&self, x: &[i64]) -> bool {
        let xs: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.is_solution(&xs)
    }

    /// Parses the plain-text format: `rows cols`, then one line per row of `A`,
    /// then one line holding `b`. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let dims = parse_ints(hline, header)?;
        if dims.len() != 2 {
            return Err(Error::Parse { line: hline, message: "header must be `rows cols`".into() });
        }
        let to_dim = |v: &BigInt| {
            v.to_usize()
                .filter(|&d| d > 0)
                .ok_or(Error::Parse { line: hline, message: format!("invalid dimension {v}") })
        };
        let (rows, cols) = (to_dim(&dims[0])?, to_dim(&dims[1])?);

        let mut entries = Vec::with_capacity(rows * cols);
        let mut last_line = hline;
        for r in 0..rows {
            let (ln, l) = lines.next().ok_or(Error::Parse {
                line: last_line + 1,
                message: format!("missing matrix row {}", r + 1),
            })?;
            let vals = parse_ints(ln, l)?;
            if vals.len() != cols {
                return Err(Error::Parse { line: ln, message: format!("expected {cols} entries, got {}", vals.len()) });
            }
            entries.extend(vals);
            last_line = ln;
        }
        let (ln, l) = lines.next().ok_or(Error::Parse {
            line: last_line + 1,
            message: "missing right-hand side line".into(),
        })?;
        let rhs = parse_ints(ln, l)?;
        if rhs.len() != rows {
            return Err(Error::Parse { line: ln, message: format!("expected {rows} right-hand side values, got {}", rhs.len()) });
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, message: "trailing content".into() });
        }
        Self::new(rows, cols, entries, rhs)
    }

    /// Parses the JSON format `{"rows", "cols", "entries", "rhs"}`; integers may be
    /// JSON numbers or decimal strings.
    pub fn parse_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            entries: Vec<serde_json::Value>,
            rhs: Vec<serde_json::Value>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        let conv = |v: &serde_json::Value| -> Result<BigInt> {
            let s = match v {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                other => return Err(Error::Parse { line: 1, message: format!("not an integer: {other}") }),
            };
            BigInt::from_str(&s).map_err(|_| Error::Parse { line: 1, message: format!("not an integer: {s}") })
        };
        let entries = raw.entries.iter().map(conv).collect::<Result<_>>()?;
        let rhs = raw.rhs.iter().map(conv).collect::<Result<_>>()?;
        Self::new(raw.rows, raw.cols, entries, rhs)
    }

    /// Picks JSON when the first non-blank character is `{`, the text format otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|x| serde_json::Value::String(x.to_string())).collect::<Vec<_>>(),
            "rhs": self.rhs.iter().map(|x| serde_json::Value::String(x.to_string())).collect::<Vec<_>>(),
        })
        .to_string()
    }

    /// Short identifier such as `1,1,-1|0` used in report rows.
    pub fn id(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .chunks(self.cols)
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        let rhs: Vec<String> = self.rhs.iter().map(ToString::to_string).collect();
        format!("{}|{}", rows.join(";"), rhs.join(","))
    }
}

impl fmt::Display for RadoSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "( {} ) = {}", row.join(" "), self.rhs[r])?;
        }
        Ok(())
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<BigInt>> {
    text.split_whitespace()
        .map(|tok| {
            BigInt::from_str(tok).map_err(|_| Error::Parse { line, message: format!("not an integer: `{tok}`") })
        })
        .collect()
}
