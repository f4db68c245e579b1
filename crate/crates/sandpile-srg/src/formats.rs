//! External file formats.
//!
//! * graph6: the standard compact ASCII encoding of undirected graphs
//!   (6-bit chunks offset by 63, upper adjacency triangle packed column
//!   by column, `N(n)` size header). Parsing is strict: padding bits
//!   must be zero and the byte count must match the header.
//! * adjacency text: rows of 0/1 entries with optional whitespace or
//!   comma separators, `#` comments allowed; must be square, symmetric,
//!   zero-diagonal.
//! * parameter table: rows of 4 integers `v k lambda mu`, optionally
//!   followed by the spectrum columns `r f s g`; whitespace or CSV.
//! * integer matrix: a `rows cols` header line, then whitespace-separated
//!   integers of arbitrary size.

use crate::graphs::Graph;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("parse error at line {line}, byte {byte}: {msg}")]
    Parse {
        line: usize,
        byte: usize,
        msg: String,
    },
    #[error("asymmetric matrix: entries ({row},{col}) and ({col},{row}) differ")]
    AsymmetricMatrix { row: usize, col: usize },
    #[error("non-binary entry {found:?} at line {line}")]
    NonBinaryEntry { line: usize, found: char },
}

fn parse_err(line: usize, byte: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        byte,
        msg: msg.into(),
    }
}

/// Largest graph order the text parsers will materialize.
const MAX_VERTICES: usize = 65_536;

/// Decode a graph6 string (optionally prefixed with the standard
/// `>>graph6<<` header) into a graph.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(1, 0, "empty graph6 input"));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(
            1,
            pos,
            format!("byte {:#x} outside the graph6 range 63..=126", bytes[pos]),
        ));
    }

    // size header N(n)
    let (n, mut pos) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != b'~' {
        if bytes.len() < 4 {
            return Err(parse_err(1, 1, "truncated 3-byte size header"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(parse_err(1, 2, "truncated 6-byte size header"));
        }
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 8)
    };
    if n > MAX_VERTICES {
        return Err(parse_err(1, 0, format!("graph order {n} too large")));
    }

    let bit_count = n * n.saturating_sub(1) / 2;
    let expected_bytes = bit_count.div_ceil(6);
    let available = bytes.len() - pos;
    if available != expected_bytes {
        return Err(parse_err(
            1,
            pos,
            format!("expected {expected_bytes} data bytes for n = {n}, found {available}"),
        ));
    }

    let mut g = Graph::empty(n);
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + bit_index / 6] - 63;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                g.add_edge(i, j);
            }
            bit_index += 1;
        }
    }
    // padding bits must be zero
    while bit_index < expected_bytes * 6 {
        let byte = bytes[pos + bit_index / 6] - 63;
        if (byte >> (5 - bit_index % 6)) & 1 != 0 {
            pos += bit_index / 6;
            return Err(parse_err(1, pos, "nonzero padding bits"));
        }
        bit_index += 1;
    }
    Ok(g)
}

/// Encode a graph in graph6 form (shortest size header).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(b'~');
        for shift in [12u32, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(b'~');
        out.push(b'~');
        for shift in [30u32, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parse an adjacency matrix from rows of 0/1 entries. Separators
/// (spaces, tabs, commas) are optional; blank lines and `#` comments are
/// skipped.
pub fn parse_adjacency_text(text: &str) -> Result<Graph, FormatError> {
    let mut rows: Vec<(usize, Vec<bool>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for ch in line.chars() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                ' ' | '\t' | ',' => {}
                other => {
                    return Err(FormatError::NonBinaryEntry {
                        line: lineno + 1,
                        found: other,
                    })
                }
            }
        }
        rows.push((lineno + 1, row));
    }
    if rows.is_empty() {
        return Err(parse_err(1, 0, "no adjacency rows found"));
    }
    let n = rows.len();
    if n > MAX_VERTICES {
        return Err(parse_err(1, 0, format!("graph order {n} too large")));
    }
    for (lineno, row) in &rows {
        if row.len() != n {
            return Err(parse_err(
                *lineno,
                0,
                format!(
                    "row has {} entries, expected {n} (matrix must be square)",
                    row.len()
                ),
            ));
        }
    }
    for i in 0..n {
        if rows[i].1[i] {
            return Err(parse_err(
                rows[i].0,
                i,
                "nonzero diagonal entry (self-loop)",
            ));
        }
        for j in i + 1..n {
            if rows[i].1[j] != rows[j].1[i] {
                return Err(FormatError::AsymmetricMatrix { row: i, col: j });
            }
        }
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rows[i].1[j] {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// One row of a parameter table: the quadruple, plus the Laplacian
/// spectrum columns when the row carries them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    /// `(r, f, s, g)` when the 8-column form is used.
    pub spectrum: Option<(u64, u64, u64, u64)>,
}

/// Parse a parameter table: one row per line, whitespace- or
/// comma-separated, 4 or 8 integer columns, `#` comments and blank lines
/// ignored. Row order is preserved.
pub fn parse_parameter_table(text: &str) -> Result<Vec<TableRow>, FormatError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut values = Vec::new();
        for token in line.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let value: u64 = token.parse().map_err(|_| {
                parse_err(
                    lineno + 1,
                    0,
                    format!("not a nonnegative integer: {token:?}"),
                )
            })?;
            values.push(value);
        }
        match values.as_slice() {
            [v, k, lambda, mu] => rows.push(TableRow {
                v: *v,
                k: *k,
                lambda: *lambda,
                mu: *mu,
                spectrum: None,
            }),
            [v, k, lambda, mu, r, f, s, g] => rows.push(TableRow {
                v: *v,
                k: *k,
                lambda: *lambda,
                mu: *mu,
                spectrum: Some((*r, *f, *s, *g)),
            }),
            other => {
                return Err(parse_err(
                    lineno + 1,
                    0,
                    format!("expected 4 or 8 columns, found {}", other.len()),
                ))
            }
        }
    }
    Ok(rows)
}

/// Parse a general integer matrix: first line `rows cols`, then
/// whitespace-separated entries (arbitrary precision, sign allowed).
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, FormatError> {
    let mut tokens = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            tokens.push((lineno + 1, token));
        }
    }
    if tokens.len() < 2 {
        return Err(parse_err(1, 0, "missing 'rows cols' header"));
    }
    let dim = |(lineno, token): (usize, &str)| -> Result<usize, FormatError> {
        token
            .parse()
            .map_err(|_| parse_err(lineno, 0, format!("bad dimension: {token:?}")))
    };
    let rows = dim(tokens[0])?;
    let cols = dim(tokens[1])?;
    let entries = &tokens[2..];
    if entries.len() != rows * cols {
        return Err(parse_err(
            tokens.last().map(|t| t.0).unwrap_or(1),
            0,
            format!(
                "expected {} entries for a {rows}x{cols} matrix, found {}",
                rows * cols,
                entries.len()
            ),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (lineno, token) in entries {
        let value: BigInt = token
            .parse()
            .map_err(|_| parse_err(*lineno, 0, format!("not an integer: {token:?}")))?;
        data.push(value);
    }
    Ok(IntMatrix::new(rows, cols, data))
}
