//! graph6 and edge-JSON encodings.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// The standard graph6 encoding (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let (mut acc, mut bits) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.adjacent(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                (acc, bits) = (0, 0);
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and trailing
/// newline are accepted; errors carry the byte offset into `input`.
pub fn from_graph6(input: &str) -> Result<Graph> {
    let bytes = input.as_bytes();
    let start = if input.starts_with(HEADER) { HEADER.len() } else { 0 };
    let mut end = bytes.len();
    while end > start && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &bytes[start..end];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(start + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let six = |i: usize| -> Result<usize> {
        body.get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| parse_err(start + i, "truncated vertex count"))
    };
    let (n, mut pos) = match body.first() {
        None => return Err(parse_err(start, "empty input")),
        Some(&126) if body.get(1) == Some(&126) => {
            let mut n = 0;
            for i in 2..8 {
                n = n << 6 | six(i)?;
            }
            (n, 8)
        }
        Some(&126) => {
            let mut n = 0;
            for i in 1..4 {
                n = n << 6 | six(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() - pos != need {
        let offset = start + body.len().min(pos + need);
        return Err(parse_err(
            offset,
            format!("expected {need} adjacency bytes for n={n}, found {}", body.len() - pos),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(i, j);
            }
            k += 1;
        }
    }
    pos += need;
    if pairs % 6 != 0 {
        let last = body[pos - 1] - 63;
        if last & ((1 << (6 - pairs % 6)) - 1) != 0 {
            return Err(parse_err(start + pos - 1, "nonzero padding bits"));
        }
    }
    Ok(b.build())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeList {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EdgeList {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let e = EdgeList::deserialize(d)?;
        Graph::from_edges(e.n, e.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(serde::de::Error::custom)
    }
}

/// `{"n": .., "edges": [[u, v], ...]}` with `u < v`, sorted.
pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(g).expect("edge lists always serialize")
}

pub fn from_json(input: &str) -> Result<Graph> {
    serde_json::from_str(input).map_err(|e| {
        let offset = input
            .split_inclusive('\n')
            .take(e.line().saturating_sub(1))
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        parse_err(offset, e.to_string())
    })
}

/// Reads either format, choosing JSON when the input starts with `{`.
pub fn parse_any(input: &str) -> Result<Graph> {
    if input.trim_start().starts_with('{') {
        from_json(input)
    } else {
        from_graph6(input.trim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(to_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(to_json(&Graph::empty(1)), r#"{"n":1,"edges":[]}"#);
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(from_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn long_vertex_count() {
        let g = Graph::path(100);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        assert!(matches!(from_graph6("B"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(from_graph6("B w"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(from_graph6("Bx"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(from_json(r#"{"n":2,"edges":[[0,0]]}"#), Err(Error::Parse { .. })));
        assert!(matches!(from_json("{\n\"n\":x}"), Err(Error::Parse { offset: 6, .. })));
    }
}
