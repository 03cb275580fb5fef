//! Interchange formats: graph6 (bit-exact, canonical) and a plain edge list.
//!
//! graph6 layout: a size header (`63 + p` for `p <= 62`, otherwise `126`
//! followed by three 6-bit groups, or `126 126` followed by six for
//! `p > 258047`), then the upper triangle in column-major order
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte, each byte offset by 63
//! and the last one zero-padded.
//!
//! Edge lists are one `u v` pair per line, 0-based, `u < v`, sorted. The
//! writer emits a `# vertices <p>` comment first so isolated vertices
//! survive a round trip; readers without that line take `max index + 1`.

use crate::error::{EdgeListError, Graph6Error};
use crate::graph::SimpleGraph;

const BIAS: u8 = 63;
const LONG_MARK: u8 = 126;
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;

fn push_groups(out: &mut Vec<u8>, value: usize, groups: usize) {
    for i in (0..groups).rev() {
        out.push(BIAS + ((value >> (6 * i)) & 0x3f) as u8);
    }
}

/// Encodes `g` as graph6 bytes (no trailing newline).
pub fn to_graph6(g: &SimpleGraph) -> Vec<u8> {
    let p = g.order();
    let mut out = Vec::new();
    if p <= SHORT_MAX {
        out.push(BIAS + p as u8);
    } else if p <= MEDIUM_MAX {
        out.push(LONG_MARK);
        push_groups(&mut out, p, 3);
    } else {
        out.push(LONG_MARK);
        out.push(LONG_MARK);
        push_groups(&mut out, p, 6);
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..p {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    out
}

pub fn to_graph6_string(g: &SimpleGraph) -> String {
    // graph6 output is printable ASCII by construction.
    String::from_utf8(to_graph6(g)).expect("graph6 is ASCII")
}

fn read_groups(bytes: &[u8], start: usize, groups: usize) -> Result<usize, Graph6Error> {
    let slice = bytes
        .get(start..start + groups)
        .ok_or(Graph6Error::MalformedHeader)?;
    let mut value = 0usize;
    for (k, &b) in slice.iter().enumerate() {
        if !(BIAS..=LONG_MARK).contains(&b) {
            return Err(Graph6Error::ByteOutOfRange {
                byte: b,
                offset: start + k,
            });
        }
        value = (value << 6) | usize::from(b - BIAS);
    }
    Ok(value)
}

/// Decodes one graph6 record. The input must be exactly the record: no
/// `>>graph6<<` prefix and no line terminator.
pub fn from_graph6(bytes: &[u8]) -> Result<SimpleGraph, Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    let (p, body_start) = if first == LONG_MARK {
        if bytes.get(1) == Some(&LONG_MARK) {
            let p = read_groups(bytes, 2, 6)?;
            if p <= MEDIUM_MAX {
                return Err(Graph6Error::MalformedHeader);
            }
            (p, 8)
        } else {
            let p = read_groups(bytes, 1, 3)?;
            if p <= SHORT_MAX {
                return Err(Graph6Error::MalformedHeader);
            }
            (p, 4)
        }
    } else if (BIAS..LONG_MARK).contains(&first) {
        (usize::from(first - BIAS), 1)
    } else {
        return Err(Graph6Error::ByteOutOfRange { byte: first, offset: 0 });
    };

    let slots = p * p.saturating_sub(1) / 2;
    let expected = slots.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(body.len() - expected));
    }
    if let Some(k) = body.iter().position(|b| !(BIAS..=LONG_MARK).contains(b)) {
        return Err(Graph6Error::ByteOutOfRange {
            byte: body[k],
            offset: body_start + k,
        });
    }

    let mut g = SimpleGraph::empty(p);
    let mut slot = 0usize;
    for j in 1..p {
        for i in 0..j {
            let group = body[slot / 6] - BIAS;
            if group >> (5 - slot % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            slot += 1;
        }
    }
    Ok(g)
}

/// Edge-list text with a leading `# vertices <p>` line.
pub fn to_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("# vertices {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list format. Blank lines and `#` comments are ignored,
/// except `# vertices <p>` which fixes the order.
pub fn from_edge_list(text: &str) -> Result<SimpleGraph, EdgeListError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("vertices") {
                let value = parts.next().and_then(|s| s.parse::<usize>().ok()).ok_or_else(|| {
                    EdgeListError::Parse {
                        line: lineno,
                        message: "bad vertex count".into(),
                    }
                })?;
                declared = Some(value);
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize, EdgeListError> {
            parts
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| EdgeListError::Parse {
                    line: lineno,
                    message: format!("expected two vertex indices, got {line:?}"),
                })
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(EdgeListError::Parse {
                line: lineno,
                message: "trailing tokens".into(),
            });
        }
        edges.push((u, v));
    }
    let order = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(SimpleGraph::from_edges(order, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_known_encodings() {
        assert_eq!(to_graph6_string(&SimpleGraph::complete(3)), "Bw");
        assert_eq!(to_graph6_string(&SimpleGraph::empty(1)), "@");
        assert_eq!(to_graph6_string(&SimpleGraph::empty(0)), "?");
        // Same 5-vertex graph as petgraph's graph6 test: edges ac, ae, bd, de.
        let g = SimpleGraph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6_string(&g), "DQc");
    }

    #[test]
    fn long_header() {
        let g = SimpleGraph::complete(63);
        let bytes = to_graph6(&g);
        assert_eq!(&bytes[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(from_graph6(&bytes).unwrap(), g);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(from_graph6(b""), Err(Graph6Error::Empty));
        assert!(matches!(from_graph6(b"Bww"), Err(Graph6Error::TrailingGarbage(1))));
        assert!(matches!(from_graph6(b"D"), Err(Graph6Error::Truncated { expected: 2, found: 0 })));
        assert!(matches!(from_graph6(b"B "), Err(Graph6Error::ByteOutOfRange { byte: b' ', .. })));
        assert!(matches!(from_graph6(b"\x7f"), Err(Graph6Error::ByteOutOfRange { .. })));
        // 3-byte header encoding a size that fits the short form.
        assert_eq!(from_graph6(b"~??D"), Err(Graph6Error::MalformedHeader));
        assert_eq!(from_graph6(b"~?"), Err(Graph6Error::MalformedHeader));
    }

    #[test]
    fn edge_list_round_trip_keeps_isolated_vertices() {
        let g = SimpleGraph::from_edges(6, [(0, 1), (2, 4)]).unwrap();
        let text = to_edge_list(&g);
        assert_eq!(text, "# vertices 6\n0 1\n2 4\n");
        assert_eq!(from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_without_header() {
        let g = from_edge_list("0 1\n\n1 3 \n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 2);
        assert!(matches!(from_edge_list("0 x"), Err(EdgeListError::Parse { line: 1, .. })));
        assert!(from_edge_list("2 2").is_err());
        assert!(from_edge_list("0 1 2").is_err());
    }
}
