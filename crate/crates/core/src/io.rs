//! Text formats: graph6 and a plain edge list (`n m` header, then `u w` lines).

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Encodes a graph in graph6.
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

/// Decodes one graph6 string; the `>>graph6<<` header is optional.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err("empty graph6 string"));
    }
    if let Some(b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(parse_err(format!("invalid graph6 byte {b:#x}")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] < 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(parse_err("truncated graph6 size field"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(parse_err("truncated graph6 size field"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[4..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(parse_err(format!(
            "graph6 body has {} bytes, expected {} for n = {n}",
            body.len(),
            nbits.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let b = six(body[bit / 6]) >> (5 - bit % 6) & 1;
            if b == 1 {
                g.set_edge(i, j);
            }
            bit += 1;
        }
    }
    // padding must be zero, otherwise re-encoding would not be bit-exact
    if nbits % 6 != 0 {
        let last = six(body[body.len() - 1]);
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(parse_err("nonzero graph6 padding bits"));
        }
    }
    Ok(g)
}

/// Writes the edge-list format: `n m` then one `u w` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let edges: Vec<_> = g.edges().collect();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, w) in edges {
        s.push_str(&format!("{u} {w}\n"));
    }
    s
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| parse_err(format!("line {lineno}: expected two integers")))?
            .parse()
            .map_err(|e| parse_err(format!("line {lineno}: {e}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(parse_err(format!("line {lineno}: trailing tokens")));
    }
    Ok(pair)
}

/// Parses the edge-list format. Blank lines and `#` comments are skipped.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines.next().ok_or_else(|| parse_err("empty edge list"))?;
    let (n, m) = parse_pair(header, lineno)?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        edges.push(parse_pair(line, lineno)?);
    }
    if edges.len() != m {
        return Err(parse_err(format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edge_list(n, &edges)
}

/// Which text format a graph was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

/// Detects the format from the first non-blank line: two whitespace-separated
/// tokens mean an edge list, a single token means graph6.
pub fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.split_whitespace().count() >= 2 {
        Format::EdgeList
    } else {
        Format::Graph6
    }
}

pub fn parse_graph(text: &str) -> Result<(Graph, Format)> {
    match detect_format(text) {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| parse_err("empty input"))?;
            Ok((from_graph6(line)?, Format::Graph6))
        }
        Format::EdgeList => Ok((from_edge_list(text)?, Format::EdgeList)),
    }
}

/// Graphs serialize as graph6 strings.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_vector() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
        assert_eq!(from_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_small_cases() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(to_graph6(&k1), "@");
        assert_eq!(from_graph6("@").unwrap(), k1);
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(to_graph6(&k2), "A_");
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(to_graph6(&c4), "Cl");
    }

    #[test]
    fn graph6_long_size_field() {
        let n = 100;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edge_list(n, &edges).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D Qc").is_err());
        assert!(from_graph6("DQ").is_err());
        assert!(from_graph6("DQcc").is_err());
        // "A" with the padding bit set: edge bit then nonzero pad
        assert!(from_graph6("A`").is_err());
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(text, "4 2\n0 1\n2 3\n");
        assert_eq!(from_edge_list(&text).unwrap(), g);
        assert!(from_edge_list("4 3\n0 1\n").is_err());
        assert!(from_edge_list("4 1\n0 9\n").is_err());
        assert!(from_edge_list("4 1\n0 x\n").is_err());
        assert!(from_edge_list("").is_err());
    }

    #[test]
    fn autodetect() {
        assert_eq!(detect_format("4 2\n0 1\n2 3\n"), Format::EdgeList);
        assert_eq!(detect_format("DQc\n"), Format::Graph6);
        let (g, f) = parse_graph("# comment\n3 1\n0 2\n").unwrap();
        assert_eq!(f, Format::EdgeList);
        assert!(g.has_edge(0, 2));
        let (g, f) = parse_graph("\nCl\n").unwrap();
        assert_eq!(f, Format::Graph6);
        assert_eq!(g.edge_count(), 4);
    }
}
