//! graph6 encoding.
//!
//! Layout: an order prefix (one byte `n + 63` for `n <= 62`, otherwise `~`
//! followed by three 6-bit groups), then the upper triangle of the adjacency
//! matrix in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`), packed
//! big-endian into 6-bit groups, each offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(parse_err(offset, format!("byte 0x{b:02x} outside graph6 range 63..=126"))),
        None => Err(parse_err(offset, "unexpected end of input")),
    }
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and trailing
/// newline are accepted.
pub fn decode(text: &str) -> Result<Graph> {
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    let (n, mut pos) = match bytes.first() {
        None => return Err(parse_err(base, "empty input")),
        Some(b'~') => {
            if bytes.get(1) == Some(&b'~') {
                return Err(parse_err(base + 1, "orders above 258047 are not supported"));
            }
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | sextet(bytes, i).map_err(|e| shift(e, base))? as usize;
            }
            if n < 63 {
                return Err(parse_err(base, format!("order {n} must use the short prefix")));
            }
            (n, 4)
        }
        Some(_) => (sextet(bytes, 0).map_err(|e| shift(e, base))? as usize, 1),
    };
    if n > MAX_ORDER {
        return Err(Error::capability(
            format!("graph6 input of order {n}"),
            MAX_ORDER,
            "graphs are limited to MAX_ORDER vertices",
        ));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pos + pairs.div_ceil(6);
    if bytes.len() != expected {
        return Err(parse_err(
            base + bytes.len().min(expected),
            format!("expected {expected} bytes for order {n}, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                cur = sextet(bytes, pos).map_err(|e| shift(e, base))?;
                pos += 1;
            }
            if cur >> (5 - bit % 6) & 1 == 1 {
                g.set_edge(i, j)?;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) && cur & ((1 << (6 - bit % 6)) - 1) != 0 {
        return Err(parse_err(base + pos - 1, "nonzero padding bits"));
    }
    Ok(g)
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Graph6 { offset, message } => Error::Graph6 {
            offset: offset + base,
            message,
        },
        other => other,
    }
}
