//! Plain-text matrix format: a `rows cols` header line followed by one line
//! per row of space-separated decimal integers.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub fn to_text(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn from_text(s: &str) -> Result<IntMatrix> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad dimension `{t}`")))
        })
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!(
            "header `{header}` must be `rows cols`"
        )));
    };
    let mut data = Vec::with_capacity(rows * cols);
    for (i, line) in lines.enumerate() {
        if i >= rows {
            return Err(Error::Parse(format!("more than {rows} rows")));
        }
        let before = data.len();
        for t in line.split_whitespace() {
            data.push(
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer `{t}` in row {}", i + 1)))?,
            );
        }
        if data.len() - before != cols {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                data.len() - before
            )));
        }
    }
    if data.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {rows} rows, found {}",
            data.len() / cols.max(1)
        )));
    }
    IntMatrix::new(rows, cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 3], vec![0, 40, -5]]).unwrap();
        let text = to_text(&m);
        assert_eq!(text, "2 3\n1 -2 3\n0 40 -5\n");
        assert_eq!(from_text(&text).unwrap(), m);
    }

    #[test]
    fn empty_and_errors() {
        assert_eq!(from_text("0 0\n").unwrap().rows(), 0);
        assert!(from_text("").is_err());
        assert!(from_text("2 2\n1 2\n").is_err());
        assert!(from_text("1 2\n1 x\n").is_err());
        assert!(from_text("1 2\n1 2 3\n").is_err());
        assert!(from_text("2\n").is_err());
    }
}
