use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Parses one graph in graph6 format (short or extended size prefix). An
/// optional `>>graph6<<` header and trailing line terminators are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(GRAPH6_HEADER.as_bytes()) {
        bytes = rest;
        base = GRAPH6_HEADER.len();
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            base + pos,
            format!("byte 0x{:02x} outside the graph6 range 63..=126", bytes[pos]),
        ));
    }
    let sextet = |i: usize| -> Result<u64> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as u64)
            .ok_or_else(|| Error::parse(base + i, "truncated size prefix"))
    };

    let (n, header_len) = match bytes.first() {
        None => return Err(Error::parse(base, "empty graph6 string")),
        Some(126) if bytes.get(1) == Some(&126) => {
            let mut n = 0u64;
            for i in 2..8 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 8)
        }
        Some(126) => {
            let mut n = 0u64;
            for i in 1..4 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as u64, 1),
    };
    if n == 0 {
        return Err(Error::parse(base, "graph6 encodes zero vertices"));
    }
    let n = usize::try_from(n).map_err(|_| Error::parse(base, "vertex count too large"))?;

    let body = &bytes[header_len..];
    let bits = n
        .checked_mul(n - 1)
        .map(|x| x / 2)
        .ok_or_else(|| Error::parse(base, "vertex count too large"))?;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        let offset = base + header_len + body.len().min(expected);
        return Err(Error::parse(
            offset,
            format!(
                "expected {expected} data bytes for n = {n}, found {}",
                body.len()
            ),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j, 1));
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let last = body[body.len() - 1] - 63;
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Error::parse(
                base + header_len + body.len() - 1,
                "nonzero padding bits",
            ));
        }
    }
    Graph::from_edges(n, 2, &edges)
}

/// Encodes a qubit graph as graph6 (no header, no newline). Nonzero weights
/// are written as edges.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
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
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | (g.weight(i, j) != 0) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses lines of the form `i j [w]` (1-based vertices, weight defaulting
/// to 1). Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str, n: usize, d: u32) -> Result<Graph> {
    // validates n and d even for empty input
    Graph::edgeless(n, d)?;
    let mut edges = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("");
        let mut fields = Vec::new();
        let mut pos = 0;
        for token in content.split_whitespace() {
            let at = content[pos..].find(token).unwrap() + pos;
            pos = at + token.len();
            fields.push((line_start + at, token));
        }
        if fields.is_empty() {
            continue;
        }
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(
                fields[0].0,
                format!("expected `i j [w]`, found {} fields", fields.len()),
            ));
        }
        let number = |(at, tok): (usize, &str)| -> Result<u64> {
            tok.parse::<u64>()
                .map_err(|_| Error::parse(at, format!("`{tok}` is not a nonnegative integer")))
        };
        let i = number(fields[0])?;
        let j = number(fields[1])?;
        let w = match fields.get(2) {
            Some(&f) => number(f)?,
            None => 1,
        };
        for (v, &(at, _)) in [i, j].iter().zip(&fields) {
            if *v == 0 || *v > n as u64 {
                return Err(Error::parse(at, format!("vertex {v} outside 1..={n}")));
            }
        }
        if i == j {
            return Err(Error::parse(fields[0].0, format!("self-loop at vertex {i}")));
        }
        if w == 0 || w >= d as u64 {
            let at = fields.get(2).map_or(fields[0].0, |f| f.0);
            return Err(Error::parse(at, format!("weight {w} outside 1..={}", d - 1)));
        }
        edges.push((i as usize - 1, j as usize - 1, w as u32));
    }
    Graph::from_edges(n, d, &edges)
}

/// JSON form `{"n": .., "d": .., "edges": [[i, j, w], ..]}` with 1-based
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDump {
    pub n: usize,
    pub d: u32,
    pub edges: Vec<[u64; 3]>,
}

impl From<&Graph> for GraphDump {
    fn from(g: &Graph) -> Self {
        GraphDump {
            n: g.n(),
            d: g.d(),
            edges: g
                .edges()
                .into_iter()
                .map(|(i, j, w)| [i as u64 + 1, j as u64 + 1, w as u64])
                .collect(),
        }
    }
}

impl GraphDump {
    pub fn to_graph(&self) -> Result<Graph> {
        // guard against absurd allocations from untrusted dumps
        if self.n > 1 << 16 {
            return Err(Error::invalid(format!("n = {} too large for a dense graph", self.n)));
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[i, j, w] in &self.edges {
            if i == 0 || j == 0 || i > self.n as u64 || j > self.n as u64 {
                return Err(Error::invalid(format!("edge ({i}, {j}) out of range")));
            }
            if w == 0 || w > u32::MAX as u64 {
                return Err(Error::invalid(format!("edge weight {w} must be positive")));
            }
            edges.push((i as usize - 1, j as usize - 1, w as u32));
        }
        Graph::from_edges(self.n, self.d, &edges)
    }
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let dump: GraphDump = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            line_col_offset(text, e.line(), e.column()),
            e.to_string(),
        )
    })?;
    dump.to_graph()
}

/// Byte offset of a 1-based (line, column) position reported by serde_json.
pub(crate) fn line_col_offset(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (idx, l) in text.split_inclusive('\n').enumerate() {
        if idx + 1 == line {
            return (offset + column.saturating_sub(1)).min(text.len());
        }
        offset += l.len();
    }
    text.len()
}
