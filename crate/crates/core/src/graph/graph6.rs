use thiserror::Error;

use super::{Graph, MAX_VERTICES};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated graph6 string: expected {expected} bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    Padding { offset: usize },
    #[error("vertex count {n} at offset {offset} exceeds the supported maximum")]
    TooLarge { offset: usize, n: usize },
}

fn byte_value(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok((b - BIAS) as u64),
        Some(&b) => Err(Graph6Error::InvalidByte { offset, byte: b }),
        None => Err(Graph6Error::Length {
            expected: offset + 1,
            found: bytes.len(),
        }),
    }
}

/// Decodes the vertex count, returning it with the number of bytes used.
fn parse_order(bytes: &[u8], base: usize) -> Result<(usize, usize), Graph6Error> {
    let read = |start: usize, count: usize| -> Result<u64, Graph6Error> {
        (start..start + count).try_fold(0u64, |acc, i| Ok((acc << 6) | byte_value(bytes, i)?))
    };
    match bytes.first() {
        None => Err(Graph6Error::Empty),
        Some(&126) if bytes.get(1) == Some(&126) => {
            let n = read(2, 6)? as usize;
            if n > MAX_VERTICES {
                return Err(Graph6Error::TooLarge { offset: base, n });
            }
            Ok((n, 8))
        }
        Some(&126) => Ok((read(1, 3)? as usize, 4)),
        Some(_) => Ok((read(0, 1)? as usize, 1)),
    }
    .map_err(|e| match e {
        Graph6Error::InvalidByte { offset, byte } => Graph6Error::InvalidByte {
            offset: offset + base,
            byte,
        },
        other => other,
    })
}

/// Parses a single graph6 line. An optional `>>graph6<<` header and
/// trailing newline are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let mut base = 0;
    let mut body = text.trim_end_matches(['\n', '\r']);
    if let Some(rest) = body.strip_prefix(HEADER) {
        base = HEADER.len();
        body = rest;
    }
    let bytes = body.as_bytes();
    let (n, used) = parse_order(bytes, base)?;
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { offset: base, n });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let data_len = bits.div_ceil(6);
    let data = &bytes[used..];
    if data.len() != data_len {
        return Err(Graph6Error::Length {
            expected: base + used + data_len,
            found: base + bytes.len(),
        });
    }
    let mut values = Vec::with_capacity(data_len);
    for i in 0..data_len {
        values.push(byte_value(data, i).map_err(|_| Graph6Error::InvalidByte {
            offset: base + used + i,
            byte: data[i],
        })? as u8);
    }
    if bits % 6 != 0 {
        let unused = 6 - bits % 6;
        if values[data_len - 1] & ((1 << unused) - 1) != 0 {
            return Err(Graph6Error::Padding {
                offset: base + used + data_len - 1,
            });
        }
    }
    let bit = |k: usize| (values[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("decoded edges are in range"))
}

/// Encodes a graph as graph6 (no header, no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    let push_chunks = |out: &mut Vec<u8>, value: u64, count: usize| {
        for i in (0..count).rev() {
            out.push(((value >> (6 * i)) & 63) as u8 + BIAS);
        }
    };
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        push_chunks(&mut out, n as u64, 3);
    } else {
        out.extend([126, 126]);
        push_chunks(&mut out, n as u64, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;
    use proptest::prelude::*;

    #[test]
    fn complete_six() {
        let g = parse_graph6("E~~w").unwrap();
        assert_eq!(g, complete(6).unwrap());
        assert_eq!(write_graph6(&g), "E~~w");
    }

    #[test]
    fn star_on_five_vertices() {
        // 'D' = 5 vertices; bits 000000 111100: the six pairs among 0..4
        // are absent, then (0,4), (1,4), (2,4), (3,4) are present.
        let g = parse_graph6("D?{").unwrap();
        let expected = Graph::from_edges(5, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(g, expected);
        assert_eq!(write_graph6(&g), "D?{");
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(write_graph6(&complete(2).unwrap()), "A_");
        assert_eq!(parse_graph6("A_\n").unwrap(), complete(2).unwrap());
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap(), complete(2).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(parse_graph6("D?"), Err(Graph6Error::Length { expected: 3, found: 2 }));
        assert_eq!(parse_graph6("D?{?"), Err(Graph6Error::Length { expected: 3, found: 4 }));
        assert_eq!(
            parse_graph6("D? "),
            Err(Graph6Error::InvalidByte { offset: 2, byte: b' ' })
        );
        assert_eq!(parse_graph6("A`"), Err(Graph6Error::Padding { offset: 1 }));
        assert_eq!(
            parse_graph6(">>graph6<<D?"),
            Err(Graph6Error::Length { expected: 13, found: 12 })
        );
    }

    #[test]
    fn long_header_form() {
        let g = Graph::from_edges(70, [(0, 69), (3, 4)]).unwrap();
        let text = write_graph6(&g);
        assert!(text.starts_with('~'));
        assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=62, seed in any::<u64>()) {
            let mut state = seed | 1;
            let g = Graph::from_fn(n, |_, _| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state & 1 == 1
            }).unwrap();
            let text = write_graph6(&g);
            prop_assert_eq!(parse_graph6(&text).unwrap(), g);
        }
    }
}
