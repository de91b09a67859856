//! graph6 codec for orders 1..=62 (the single-byte header form).
//!
//! Layout: byte 0 is `order + 63`; the upper triangle of the adjacency
//! matrix follows in column-major order (x01, x02, x12, x03, x13, x23, ...),
//! packed most-significant-bit-first into 6-bit groups, zero-padded to a
//! multiple of six, each group offset by 63 into printable ASCII.
//!
//! Parsing is strict: every data byte must be in the graph6 alphabet, the
//! record must have exactly the right length, padding bits must be zero,
//! and nothing may follow the record except one optional trailing newline.

use crate::graph::{Graph, MAX_ORDER};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte 0x{0:02x} is not a graph6 header")]
    BadHeader(u8),
    #[error("order {0} outside the supported range 1..=62")]
    OrderOutOfRange(usize),
    #[error("multi-byte graph6 orders (n > 62) are not supported")]
    OrderTooLarge,
    #[error("order {order} needs {expected} data bytes, record has {found}")]
    WrongLength {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte 0x{byte:02x} at offset {offset} is outside the graph6 alphabet")]
    BadDataByte { byte: u8, offset: usize },
    #[error("padding bits after the triangle must be zero")]
    DirtyPadding,
    #[error("trailing bytes after the graph6 record")]
    TrailingData,
}

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2 + 5) / 6
}

/// Encode a graph as a graph6 record (no trailing newline).
pub fn emit(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            acc = acc << 1 | g.has_edge(row, col) as u8;
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
    // Every byte is 63..=126, so this is ASCII.
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decode a graph6 record. One trailing `\n` is tolerated.
pub fn parse(record: &[u8]) -> Result<Graph, ParseError> {
    let record = record.strip_suffix(b"\n").unwrap_or(record);
    let (&header, data) = record.split_first().ok_or(ParseError::Empty)?;
    let n = match header {
        63 => return Err(ParseError::OrderOutOfRange(0)),
        64..=125 => (header - 63) as usize,
        126 => return Err(ParseError::OrderTooLarge),
        _ => return Err(ParseError::BadHeader(header)),
    };
    debug_assert!(n <= MAX_ORDER);
    let expected = data_len(n);
    if data.len() < expected {
        return Err(ParseError::WrongLength {
            order: n,
            expected,
            found: data.len(),
        });
    }
    if data.len() > expected {
        // Distinguish "longer than any record could be" from junk bytes.
        return Err(ParseError::TrailingData);
    }
    let nbits = n * (n - 1) / 2;
    let mut set_bits = Vec::new();
    let mut bit = 0usize;
    for (offset, &byte) in data.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(ParseError::BadDataByte {
                byte,
                offset: offset + 1,
            });
        }
        let group = byte - 63;
        for k in (0..6).rev() {
            if group >> k & 1 == 1 {
                if bit >= nbits {
                    return Err(ParseError::DirtyPadding);
                }
                set_bits.push(bit);
            }
            bit += 1;
        }
    }
    let mut pairs = Vec::with_capacity(set_bits.len());
    let mut t = 0usize;
    let mut next = set_bits.iter().copied().peekable();
    'fill: for col in 1..n {
        for row in 0..col {
            match next.peek() {
                Some(&b) if b == t => {
                    pairs.push((row, col));
                    next.next();
                }
                Some(_) => {}
                None => break 'fill,
            }
            t += 1;
        }
    }
    Ok(Graph::from_edges(n, &pairs))
}

/// Parse one ASCII line.
pub fn parse_str(line: &str) -> Result<Graph, ParseError> {
    parse(line.as_bytes())
}
