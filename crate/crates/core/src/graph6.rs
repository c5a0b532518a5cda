//! graph6 encoding of simple graphs.
//!
//! The body is the upper triangle of the adjacency matrix read column by
//! column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits per
//! printable byte. Sizes up to 62 use a one-byte header; larger sizes use
//! `~` followed by three bytes.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_VERTICES};

const BIAS: u8 = 63;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Encodes a loop-free graph as one graph6 line (no trailing newline).
pub fn to_graph6(g: &Graph) -> Result<String> {
    if g.has_loops() {
        return Err(Error::LoopsNotRepresentable);
    }
    let n = g.n();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            acc = (acc << 1) | u8::from(row & bit(i) != 0);
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` prefix are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::InvalidByte(b));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::MalformedHeader("empty line".into())),
        [b'~', b'~', ..] => return Err(Error::MalformedHeader("8-byte size header exceeds the vertex limit".into())),
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::MalformedHeader("truncated 4-byte size header".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - BIAS));
            if n < 63 {
                return Err(Error::MalformedHeader(format!("size {n} must use the short header")));
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => (usize::from(b - BIAS), rest),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::MalformedHeader(format!("unsupported vertex count {n}")));
    }
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Error::TruncatedBitVector { expected, found: body.len() });
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if (body[k / 6] - BIAS) & pad_mask != 0 {
            return Err(Error::NonCanonicalPadding);
        }
    }
    Ok(g)
}
