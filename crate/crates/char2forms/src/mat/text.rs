use crate::error::{Error, Result};
use crate::ff::Field;

use super::Matrix;

/// Parses the matrix text format: a header line `n m` followed by `n` lines
/// of `n` hex entries. Blank trailing lines are ignored.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = head.as_slice() else {
        return Err(Error::parse(1, "header must be `n m`"));
    };
    let n: usize = n.parse().map_err(|_| Error::parse(1, format!("bad size {n:?}")))?;
    let m: u32 = m.parse().map_err(|_| Error::parse(1, format!("bad degree {m:?}")))?;
    if n > 64 {
        return Err(Error::parse(1, format!("size {n} exceeds 64")));
    }
    let field = Field::new(m).map_err(|e| Error::parse(1, e.to_string()))?;
    let mut data = Vec::with_capacity(n * n);
    for row in 0..n {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| Error::parse(row + 2, format!("expected {n} rows, found {row}")))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(Error::parse(idx + 1, format!("expected {n} entries, found {}", entries.len())));
        }
        for e in entries {
            let x = field.parse_elem(e).map_err(|err| Error::parse(idx + 1, err.to_string()))?;
            data.push(x);
        }
    }
    if let Some((idx, _)) = lines.next() {
        return Err(Error::parse(idx + 1, "trailing data"));
    }
    Matrix::from_flat(field, n, n, data)
}

/// Serializes a square matrix in the text format read by [`parse_matrix`].
pub fn format_matrix(m: &Matrix) -> String {
    format!("{} {}\n{}", m.rows(), m.field().degree(), m)
}
