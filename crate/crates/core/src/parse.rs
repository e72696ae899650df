//! Text syntax shared by the CLI and the browser demo: matrices `2,-1;1,3`,
//! vectors `(a,b)` or `a,b`, point lists `0,0;1,0`, boxes `-8:8`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::intlat::{IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at position {position}: {token:?}")]
pub struct ParseError {
    pub message: String,
    pub token: String,
    /// Byte offset of `token` in the input.
    pub position: usize,
}

fn err(message: &str, token: &str, position: usize) -> ParseError {
    ParseError { message: message.into(), token: token.into(), position }
}

/// Splits on `sep`, yielding trimmed pieces with their byte offsets.
fn pieces(s: &str, base: usize, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices().chain(std::iter::once((s.len(), sep))) {
        if c == sep {
            let raw = &s[start..i];
            let lead = if raw.trim().is_empty() { 0 } else { raw.len() - raw.trim_start().len() };
            out.push((raw.trim(), base + start + lead));
            start = i + c.len_utf8();
        }
    }
    out
}

fn integer(tok: &str, pos: usize) -> Result<BigInt, ParseError> {
    if tok.is_empty() {
        return Err(err("missing integer", tok, pos));
    }
    tok.parse::<BigInt>().map_err(|_| err("not an integer", tok, pos))
}

fn row(s: &str, base: usize) -> Result<Vec<BigInt>, ParseError> {
    pieces(s, base, ',').into_iter().map(|(t, p)| integer(t, p)).collect()
}

/// Rows of integers, all of the same length.
pub fn parse_rows(s: &str) -> Result<Vec<Vec<BigInt>>, ParseError> {
    if s.trim().is_empty() {
        return Err(err("empty input", s, 0));
    }
    let mut rows = Vec::new();
    let mut width = None;
    for (r, p) in pieces(s, 0, ';') {
        let v = row(r, p)?;
        match width {
            None => width = Some(v.len()),
            Some(w) if w != v.len() => return Err(err(&format!("row has {} entries, expected {w}", v.len()), r, p)),
            _ => {}
        }
        rows.push(v);
    }
    Ok(rows)
}

/// A square integer matrix.
pub fn parse_matrix(s: &str) -> Result<IntMatrix, ParseError> {
    let rows = parse_rows(s)?;
    if rows.len() != rows[0].len() {
        return Err(err(&format!("{} rows of length {}: not square", rows.len(), rows[0].len()), s.trim(), 0));
    }
    Ok(IntMatrix::from_rows(rows))
}

pub fn parse_vector(s: &str) -> Result<IntVector, ParseError> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    let (inner, base) = match (t.strip_prefix('('), t.ends_with(')')) {
        (Some(rest), true) => (&rest[..rest.len() - 1], lead + 1),
        (None, false) => (t, lead),
        _ => return Err(err("unbalanced parenthesis", t, lead)),
    };
    Ok(IntVector(row(inner, base)?))
}

/// Points separated by `;`, e.g. a digit set `0,0;1,0;0,1;1,-1`.
pub fn parse_points(s: &str) -> Result<Vec<IntVector>, ParseError> {
    Ok(parse_rows(s)?.into_iter().map(IntVector).collect())
}

/// `lo:hi` with `lo <= hi`.
pub fn parse_box(s: &str) -> Result<(i64, i64), ParseError> {
    let parts = pieces(s, 0, ':');
    let [(a, pa), (b, pb)] = parts[..] else {
        return Err(err("expected lo:hi", s, 0));
    };
    let num = |t: &str, p| t.parse::<i64>().map_err(|_| err("not an integer", t, p));
    let (lo, hi) = (num(a, pa)?, num(b, pb)?);
    if lo > hi {
        return Err(err("empty range", s.trim(), 0));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("2,-1;1,3").unwrap(), IntMatrix::from([[2, -1], [1, 3]]));
        assert_eq!(parse_matrix(" 2 , -1 ; 1 , 3 ").unwrap(), IntMatrix::from([[2, -1], [1, 3]]));
        let big = parse_matrix("123456789012345678901234567890").unwrap();
        assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn errors_point_at_token() {
        let e = parse_matrix("2,x;1,3").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("x", 2));
        let e = parse_matrix("2,1;1").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("1", 4));
        let e = parse_matrix("1,2,3;4,5,6").unwrap_err();
        assert!(e.message.contains("not square"));
        let e = parse_vector("(1, ,2)").unwrap_err();
        assert_eq!(e.position, 3);
    }

    #[test]
    fn vectors_points_boxes() {
        assert_eq!(parse_vector("(1,-2)").unwrap(), IntVector::from([1, -2]));
        assert_eq!(parse_vector("1,-2").unwrap(), IntVector::from([1, -2]));
        assert!(parse_vector("(1,2").is_err());
        assert_eq!(parse_points("0,0;1,0").unwrap(), vec![IntVector::from([0, 0]), IntVector::from([1, 0])]);
        assert_eq!(parse_box("-8:8").unwrap(), (-8, 8));
        assert!(parse_box("3:1").is_err());
        assert!(parse_box("3").is_err());
    }

    #[test]
    fn display_round_trip() {
        let m = IntMatrix::from([[2, -1], [1, 3]]);
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        let v = IntVector::from([4, -7]);
        assert_eq!(parse_vector(&v.to_string()).unwrap(), v);
    }
}
