//! Plain-text matrix format.
//!
//! ```text
//! # optional comments
//! 2 3
//! 1 0 2.5
//! 0 1 -1
//! ```
//!
//! The first non-comment line holds `rows cols`, followed by one line per
//! row. Values are written in shortest round-trip form, so reading back what
//! was written reproduces every entry exactly.

use std::fmt::Write as _;

use super::{DenseMatrix, LinalgError};

fn parse_error(line: usize, message: impl Into<String>) -> LinalgError {
    LinalgError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix, LinalgError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing `rows cols` header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims[..] else {
        return Err(parse_error(header_line, format!("expected `rows cols`, found `{header}`")));
    };
    let parse_dim = |tok: &str| {
        tok.parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| parse_error(header_line, format!("invalid dimension `{tok}`")))
    };
    let (rows, cols) = (parse_dim(rows)?, parse_dim(cols)?);

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (line_no, line) in lines {
        if seen == rows {
            return Err(parse_error(line_no, format!("more than {rows} rows")));
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let x: f64 = tok
                .parse()
                .map_err(|_| parse_error(line_no, format!("invalid number `{tok}`")))?;
            if !x.is_finite() {
                return Err(parse_error(line_no, format!("non-finite value `{tok}`")));
            }
            data.push(x);
        }
        if data.len() - before != cols {
            return Err(parse_error(
                line_no,
                format!("expected {cols} values, found {}", data.len() - before),
            ));
        }
        seen += 1;
    }
    if seen != rows {
        return Err(parse_error(
            text.lines().count().max(1),
            format!("expected {rows} rows, found {seen}"),
        ));
    }
    DenseMatrix::new(rows, cols, data)
}

pub fn write_matrix(m: &DenseMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        for (j, x) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            // `{:?}` is the shortest representation that round-trips
            write!(out, "{x:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let m = parse_matrix("# identity\n2 2\n1 0\n\n# second row\n0 1\n").unwrap();
        assert_eq!(m, DenseMatrix::identity(2).unwrap());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_matrix("2 2\n1 0\n0 x\n").unwrap_err();
        assert!(matches!(err, LinalgError::Parse { line: 3, .. }), "{err}");
        let err = parse_matrix("2 2\n1 0 4\n0 1\n").unwrap_err();
        assert!(matches!(err, LinalgError::Parse { line: 2, .. }), "{err}");
        assert!(parse_matrix("2 2\n1 0\n").is_err());
        assert!(parse_matrix("1 1\n1\n2\n").is_err());
        assert!(parse_matrix("0 1\n").is_err());
        assert!(parse_matrix("1 1\nNaN\n").is_err());
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn writes_expected_layout() {
        let m = DenseMatrix::from_rows(&[[1.0, 0.5], [-2.0, 1e-20]]).unwrap();
        assert_eq!(write_matrix(&m), "2 2\n1.0 0.5\n-2.0 1e-20\n");
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(-1e6f64..1e6, 16),
            exps in proptest::collection::vec(-30i32..30, 16),
        ) {
            let data: Vec<f64> = (0..rows * cols)
                .map(|k| seed[k] * 10f64.powi(exps[k]) / 7.0)
                .collect();
            let m = DenseMatrix::new(rows, cols, data).unwrap();
            let back = parse_matrix(&write_matrix(&m)).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
