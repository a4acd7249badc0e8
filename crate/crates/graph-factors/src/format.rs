//! graph6 and edge-list text formats.
//!
//! graph6 (single-byte header variant, `n <= 62`): first byte is `n + 63`;
//! the upper triangle of the adjacency matrix in column order `(0,1), (0,2),
//! (1,2), (0,3), ...` is packed big-endian six bits per byte, each byte
//! offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order encodable with the single-byte size header.
pub const GRAPH6_MAX: usize = 62;

pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX {
        return Err(Error::TooManyVertices { n, max: GRAPH6_MAX });
    }
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            acc <<= 1;
            if g.has_edge(row, col) {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push(63 + acc);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parse one graph6 line. Strict: the data must be exactly as long as the
/// header demands, every byte in the printable range, and padding bits zero.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\r', '\n']).as_bytes();
    let err = |offset: usize, reason: &str| Error::Graph6 {
        offset,
        reason: reason.to_string(),
    };
    let first = *bytes.first().ok_or_else(|| err(0, "empty input"))?;
    if first == 126 {
        return Err(err(0, "multi-byte size headers (n > 62) are not supported"));
    }
    if !(63..=63 + GRAPH6_MAX as u8).contains(&first) {
        return Err(err(0, "size header byte out of range"));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < 1 + nbytes {
        return Err(err(bytes.len(), "input truncated"));
    }
    if bytes.len() > 1 + nbytes {
        return Err(err(1 + nbytes, "trailing garbage after adjacency data"));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for col in 1..n {
        for row in 0..col {
            let byte = bytes[1 + k / 6];
            if !(63..=126).contains(&byte) {
                return Err(err(1 + k / 6, "adjacency byte out of range"));
            }
            if (byte - 63) & (0x20 >> (k % 6)) != 0 {
                edges.push((row, col));
            }
            k += 1;
        }
    }
    // padding bits of the last byte must be zero
    if nbits > 0 {
        let last = bytes[nbytes];
        if !(63..=126).contains(&last) {
            return Err(err(nbytes, "adjacency byte out of range"));
        }
        let pad = nbytes * 6 - nbits;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(err(nbytes, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListWarning {
    pub line: usize,
    pub message: String,
}

/// Parse the edge-list format: a header line `n m` followed by `m` lines
/// `u v` with `0 <= u, v < n` and `u != v`. Duplicate edges are collapsed
/// with a warning; self-loops are rejected.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<EdgeListWarning>)> {
    let err = |line: usize, reason: String| Error::EdgeList { line, reason };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing `n m` header line".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_no, "header must be `n m`".into()))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_no, "header must be `n m`".into()))?;
    if parts.next().is_some() {
        return Err(err(header_no, "header must be exactly `n m`".into()));
    }

    let mut warnings = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let mut last_line = header_no;
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| err(last_line, format!("expected {m} edge lines")))?;
        last_line = line_no;
        let mut parts = line.split_whitespace();
        let u: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "edge line must be `u v`".into()))?;
        let v: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "edge line must be `u v`".into()))?;
        if parts.next().is_some() {
            return Err(err(line_no, "edge line must be exactly `u v`".into()));
        }
        if u == v {
            return Err(err(line_no, format!("self-loop on vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(err(
                line_no,
                format!("vertex out of range for a graph on {n} vertices"),
            ));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            warnings.push(EdgeListWarning {
                line: line_no,
                message: format!("duplicate edge ({u}, {v}) collapsed"),
            });
        } else {
            edges.push(key);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(err(line_no, "unexpected content after the last edge".into()));
    }
    Ok((Graph::from_edges(n, &edges)?, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_named_graph, NamedGraph};

    #[test]
    fn graph6_hand_decoded_examples() {
        // 'A' = n 2; '_' = 63 + 32: the single pair bit set
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
        assert_eq!(write_graph6(&k2).unwrap(), "A_");

        let k1 = Graph::new(1).unwrap();
        assert_eq!(write_graph6(&k1).unwrap(), "@");
        assert_eq!(parse_graph6("@").unwrap().n(), 1);

        // C_5 labeled in traversal order: pair bits 101001 100100
        let c5 = make_named_graph(NamedGraph::Cycle(5)).unwrap();
        assert_eq!(write_graph6(&c5).unwrap(), "Dhc");
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);
    }

    #[test]
    fn graph6_round_trip_is_identity_up_to_five() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for mask in 0u64..(1 << pairs) {
                let mut edges = Vec::new();
                let mut k = 0;
                for col in 1..n {
                    for row in 0..col {
                        if mask & (1 << k) != 0 {
                            edges.push((row, col));
                        }
                        k += 1;
                    }
                }
                let g = Graph::from_edges(n, &edges).unwrap();
                let text = write_graph6(&g).unwrap();
                assert_eq!(parse_graph6(&text).unwrap(), g, "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn graph6_parse_errors_carry_offsets() {
        assert!(matches!(
            parse_graph6(""),
            Err(Error::Graph6 { offset: 0, .. })
        ));
        // header says n = 5 but no adjacency bytes follow
        assert!(matches!(
            parse_graph6("D"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        // K_2 followed by garbage
        assert!(matches!(
            parse_graph6("A_x"),
            Err(Error::Graph6 { offset: 2, .. })
        ));
        // byte below the printable offset
        assert!(matches!(
            parse_graph6("A\n@"),
            Err(Error::Graph6 { .. })
        ));
        // nonzero padding: n = 2 has one data bit, five padding bits
        assert!(matches!(
            parse_graph6("A~"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        // multi-byte header sentinel
        assert!(matches!(
            parse_graph6("~??"),
            Err(Error::Graph6 { offset: 0, .. })
        ));
    }

    #[test]
    fn edge_list_examples() {
        let (g, warnings) = parse_edge_list("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g, make_named_graph(NamedGraph::Complete(3)).unwrap());
        assert!(warnings.is_empty());

        let (g, _) = parse_edge_list("2 0\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));

        assert!(matches!(
            parse_edge_list("2 1\n0 0\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 1\n0 5\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 2\n0 1\n"),
            Err(Error::EdgeList { .. })
        ));

        let (g, warnings) = parse_edge_list("3 3\n0 1\n1 0\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].line, 3);
    }
}
