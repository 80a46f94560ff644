//! graph6 text codec.
//!
//! The format packs the upper triangle of the adjacency matrix, column by
//! column ((0,1),(0,2),(1,2),(0,3),...), six bits per printable byte offset
//! by 63. Vertex counts up to 62 use a single header byte; larger counts up
//! to 258047 use a 126 prefix and three data bytes.

use crate::error::Graph6Error;
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_N: u64 = 258_047;

/// Column-major upper-triangle pair order shared by encoder and decoder.
fn triangle_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |v| (0..v).map(move |u| (u, v)))
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + OFFSET);
    } else {
        assert!((n as u64) <= MAX_N, "graph too large for graph6");
        bytes.push(126);
        bytes.push(((n >> 12) & 0x3f) as u8 + OFFSET);
        bytes.push(((n >> 6) & 0x3f) as u8 + OFFSET);
        bytes.push((n & 0x3f) as u8 + OFFSET);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for (u, v) in triangle_pairs(n) {
        acc = (acc << 1) | g.adjacent(u, v) as u8;
        filled += 1;
        if filled == 6 {
            bytes.push(acc + OFFSET);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(bytes).unwrap()
}

pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let check = |offset: usize| -> Result<u64, Graph6Error> {
        let byte = bytes[offset];
        if !(OFFSET..=126).contains(&byte) {
            return Err(Graph6Error::ByteOutOfRange { byte, offset });
        }
        Ok((byte - OFFSET) as u64)
    };
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // The 8-byte huge-graph header encodes n > 258047, which is
            // beyond anything this crate works with.
            return Err(Graph6Error::TooLarge {
                n: u64::MAX,
                max: MAX_N,
            });
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = (check(1)? << 12) | (check(2)? << 6) | check(3)?;
        (n, 4usize)
    } else {
        (check(0)?, 1usize)
    };
    if n > MAX_N {
        return Err(Graph6Error::TooLarge { n, max: MAX_N });
    }
    let n = n as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < pos + nbytes {
        return Err(Graph6Error::Truncated {
            expected: nbytes,
            found: bytes.len() - pos,
        });
    }
    if bytes.len() > pos + nbytes {
        return Err(Graph6Error::Trailing {
            offset: pos + nbytes,
        });
    }

    let mut g = Graph::empty(n);
    let mut pairs = triangle_pairs(n);
    for _ in 0..nbytes {
        let word = check(pos)?;
        for k in (0..6).rev() {
            match pairs.next() {
                Some((u, v)) => {
                    if word >> k & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                None => {
                    if word >> k & 1 == 1 {
                        return Err(Graph6Error::DirtyPadding { offset: pos });
                    }
                }
            }
        }
        pos += 1;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_labeled;

    /// Reference decoder written against the format description alone:
    /// expands every data byte into bits, then walks the column-major pair
    /// list. Kept deliberately independent of the production decoder.
    fn decode_reference(text: &str) -> (usize, Vec<(usize, usize)>) {
        let b: Vec<u64> = text.bytes().map(|c| (c - 63) as u64).collect();
        let n = b[0] as usize;
        assert!(n <= 62, "reference decoder handles short form only");
        let mut bits = Vec::new();
        for &w in &b[1..] {
            for k in (0..6).rev() {
                bits.push(w >> k & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                if bits[idx] {
                    edges.push((u, v));
                }
                idx += 1;
            }
        }
        (n, edges)
    }

    #[test]
    fn decodes_known_strings() {
        // "D??" is the empty graph on 5 vertices.
        let g = from_graph6("D??").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 0);

        // "DQo" checked against the reference decoder.
        let (n, edges) = decode_reference("DQo");
        assert_eq!(n, 5);
        assert_eq!(edges, vec![(0, 2), (1, 3), (0, 4), (1, 4)]);
        let g = from_graph6("DQo").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges().len(), 4);
        for (u, v) in edges {
            assert!(g.adjacent(u, v));
        }
    }

    #[test]
    fn roundtrip_all_small_graphs() {
        for n in 0..=5 {
            for g in enumerate_labeled(n).unwrap() {
                let enc = to_graph6(&g);
                let back = from_graph6(&enc).unwrap();
                assert_eq!(g, back, "roundtrip failed for {}", enc);
                let (rn, redges) = decode_reference(&enc);
                assert_eq!(rn, n);
                assert_eq!(redges.len(), g.edge_count());
            }
        }
    }

    #[test]
    fn roundtrip_long_form() {
        let mut g = Graph::empty(100);
        g.add_edge(0, 99);
        g.add_edge(42, 43);
        let enc = to_graph6(&g);
        assert_eq!(enc.as_bytes()[0], 126);
        let back = from_graph6(&enc).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn error_offsets() {
        match from_graph6("D?\x1f") {
            Err(Graph6Error::ByteOutOfRange { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected byte error, got {:?}", other),
        }
        match from_graph6("D?") {
            Err(Graph6Error::Truncated { expected, found }) => {
                assert_eq!((expected, found), (2, 1));
            }
            other => panic!("expected truncation, got {:?}", other),
        }
        match from_graph6("D??extra") {
            Err(Graph6Error::Trailing { offset }) => assert_eq!(offset, 3),
            other => panic!("expected trailing error, got {:?}", other),
        }
        assert!(matches!(from_graph6(""), Err(Graph6Error::Empty)));
    }

    #[test]
    fn trailing_newline_accepted() {
        assert_eq!(from_graph6("D??\n").unwrap().n(), 5);
    }
}
