//! Reader and writer for the standard alist interchange format for sparse
//! binary parity-check matrices.
//!
//! Layout: `n m` (columns, rows), then the maximum column and row degrees,
//! then the n column degrees, the m row degrees, one line per column with
//! its 1-based row indices zero-padded to the maximum column degree, and
//! one line per row with its 1-based column indices zero-padded to the
//! maximum row degree.

use anyhow::{anyhow, bail, Context, Result};
use conic_ldpc::SparseBinaryMatrix;

pub fn write_alist(m: &SparseBinaryMatrix) -> String {
    let n_cols = m.n_cols();
    let n_rows = m.n_rows();
    let mut cols: Vec<Vec<usize>> = vec![Vec::new(); n_cols];
    for (r, row) in m.rows().enumerate() {
        for &c in row {
            cols[c].push(r);
        }
    }
    let max_col = cols.iter().map(|c| c.len()).max().unwrap_or(0);
    let max_row = m.row_weights().into_iter().max().unwrap_or(0);

    let mut out = String::new();
    out.push_str(&format!("{} {}\n", n_cols, n_rows));
    out.push_str(&format!("{} {}\n", max_col, max_row));
    push_joined(&mut out, cols.iter().map(|c| c.len()));
    push_joined(&mut out, m.rows().map(|r| r.len()));
    for col in &cols {
        push_padded(&mut out, col, max_col);
    }
    for row in m.rows() {
        push_padded(&mut out, row, max_row);
    }
    out
}

fn push_joined(out: &mut String, values: impl Iterator<Item = usize>) {
    let strings: Vec<String> = values.map(|v| v.to_string()).collect();
    out.push_str(&strings.join(" "));
    out.push('\n');
}

fn push_padded(out: &mut String, indices: &[usize], width: usize) {
    let mut entries: Vec<String> = indices.iter().map(|&i| (i + 1).to_string()).collect();
    entries.resize(width, "0".to_string());
    out.push_str(&entries.join(" "));
    out.push('\n');
}

pub fn read_alist(text: &str) -> Result<SparseBinaryMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let mut next_line = |what: &str| {
        lines.next().ok_or_else(|| anyhow!("unexpected end of file while reading {what}"))
    };

    let (ln, sizes) = next_line("the size line")?;
    let sizes = parse_numbers(sizes, ln)?;
    let [n_cols, n_rows] = sizes[..] else {
        bail!("line {}: expected two values `n m`, found {}", ln + 1, sizes.len());
    };

    let (ln, maxima) = next_line("the maximum-degree line")?;
    let maxima = parse_numbers(maxima, ln)?;
    let [max_col, max_row] = maxima[..] else {
        bail!("line {}: expected two maximum degrees, found {}", ln + 1, maxima.len());
    };

    let (ln, col_degrees) = next_line("the column degrees")?;
    let col_degrees = parse_numbers(col_degrees, ln)?;
    if col_degrees.len() != n_cols {
        bail!("line {}: expected {} column degrees, found {}", ln + 1, n_cols, col_degrees.len());
    }
    let (ln, row_degrees) = next_line("the row degrees")?;
    let row_degrees = parse_numbers(row_degrees, ln)?;
    if row_degrees.len() != n_rows {
        bail!("line {}: expected {} row degrees, found {}", ln + 1, n_rows, row_degrees.len());
    }

    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(n_cols);
    for (c, &degree) in col_degrees.iter().enumerate() {
        let (ln, line) = next_line("a column index list")?;
        let entries = parse_indices(line, ln, max_col, degree, n_rows)
            .with_context(|| format!("column {}", c + 1))?;
        columns.push(entries);
    }
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n_rows);
    for (r, &degree) in row_degrees.iter().enumerate() {
        let (ln, line) = next_line("a row index list")?;
        let entries = parse_indices(line, ln, max_row, degree, n_cols)
            .with_context(|| format!("row {}", r + 1))?;
        rows.push(entries);
    }

    // cross-check the two redundant views
    let mut from_cols: Vec<Vec<usize>> = vec![Vec::new(); n_rows];
    for (c, col) in columns.iter().enumerate() {
        for &r in col {
            from_cols[r].push(c);
        }
    }
    for (r, row) in rows.iter().enumerate() {
        let mut sorted = row.clone();
        sorted.sort_unstable();
        if from_cols[r] != sorted {
            bail!("row {} disagrees with the column lists", r + 1);
        }
    }

    SparseBinaryMatrix::new(n_rows, n_cols, rows).map_err(|e| anyhow!("{e}"))
}

fn parse_numbers(line: &str, ln: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .with_context(|| format!("line {}: invalid number {tok:?}", ln + 1))
        })
        .collect()
}

/// Parses a 1-based, zero-padded index list; returns 0-based indices.
fn parse_indices(
    line: &str,
    ln: usize,
    width: usize,
    degree: usize,
    bound: usize,
) -> Result<Vec<usize>> {
    let values = parse_numbers(line, ln)?;
    if values.len() != width && values.len() != degree {
        bail!(
            "line {}: expected {} entries (or {} unpadded), found {}",
            ln + 1,
            width,
            degree,
            values.len()
        );
    }
    let nonzero: Vec<usize> = values.iter().copied().filter(|&v| v != 0).collect();
    if nonzero.len() != degree {
        bail!("line {}: expected {} nonzero entries, found {}", ln + 1, degree, nonzero.len());
    }
    nonzero
        .into_iter()
        .map(|v| {
            if v > bound {
                bail!("line {}: index {} out of range 1..={}", ln + 1, v, bound)
            } else {
                Ok(v - 1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SparseBinaryMatrix {
        SparseBinaryMatrix::new(3, 5, vec![vec![0, 1, 4], vec![1, 2], vec![0, 3, 4]]).unwrap()
    }

    #[test]
    fn round_trip() {
        let m = sample();
        let text = write_alist(&m);
        let back = read_alist(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn header_shape() {
        let text = write_alist(&sample());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("5 3"));
        assert_eq!(lines.next(), Some("2 3"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "5 3\n2 3\n2 2 1 1 2\n3 2 3\n1 3\n1 2\n2\n3\n1 3\nbogus\n1 4 5\n";
        let err = format!("{:#}", read_alist(text).unwrap_err());
        assert!(err.contains("line 10"), "{err}");
    }

    #[test]
    fn inconsistent_views_are_rejected() {
        // row list says row 1 = {1,2}, column lists say row 1 = {1}
        let text = "2 1\n1 2\n1 0\n2\n1\n0\n1 2\n";
        let err = format!("{:#}", read_alist(text).unwrap_err());
        assert!(err.contains("disagrees"), "{err}");
    }
}
