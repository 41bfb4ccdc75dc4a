//! Text formats: the edge-list format and graph6.
//!
//! Edge list: a header line `n <N> base <B>` followed by one `u v` pair per
//! line, 0-indexed. Blank lines and `#` comments are ignored, and `;` may be
//! used in place of a newline so that a graph fits on one command line:
//!
//! ```
//! let g = chroma::graph::io::parse_edge_list("n 3 base 0; 0 1; 1 2; 0 2")
//!     .unwrap()
//!     .simple()
//!     .unwrap();
//! assert_eq!(g.edge_count(), 3);
//! ```

use super::{normalize, Graph, Normalized};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse_edge_list(text: &str) -> Result<Normalized> {
    let mut lines = text
        .split(['\n', ';'])
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (n, base) = match words.as_slice() {
        ["n", n, "base", b] => (n, b),
        _ => return Err(parse_err(hline, "expected `n <N> base <B>`")),
    };
    let number = |w: &str, line: usize| {
        w.parse::<usize>()
            .map_err(|_| parse_err(line, format!("`{w}` is not a vertex count or index")))
    };
    let n = number(n, hline)?;
    let base = number(base, hline)?;

    let mut edges = Vec::new();
    for (line, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            [u, v] => edges.push((number(u, line)?, number(v, line)?)),
            _ => return Err(parse_err(line, "expected `u v`")),
        }
    }
    normalize(edges, n, base)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {} base {}\n", g.vertex_count(), g.base());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses one graph6 string. The base vertex is 0.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, "graph6 bytes must lie in 63..=126"));
    }
    let (n, rest) = match bytes {
        [126, 126, r @ ..] if r.len() >= 6 => (sixes(&r[..6]), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (sixes(&r[..3]), &r[3..]),
        [126, ..] => return Err(parse_err(1, "truncated graph6 size")),
        [b, r @ ..] => ((b - 63) as usize, r),
        [] => return Err(parse_err(1, "empty graph6 string")),
    };
    let needed = n * n.saturating_sub(1) / 2;
    if rest.len() * 6 < needed || rest.len() != needed.div_ceil(6) {
        return Err(parse_err(1, "graph6 edge data has the wrong length"));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
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
    Graph::new(n, edges, 0)
}

fn sixes(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| acc << 6 | (b - 63) as usize)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = if n <= 62 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        let mut v = vec![126];
        v.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        v
    } else {
        let mut v = vec![126, 126];
        v.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
        v
    };
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.edge_index(u, v).is_some() as u8;
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
    String::from_utf8(out).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, path};

    #[test]
    fn edge_list_round_trip() {
        let g = cycle(5).with_base(3).unwrap();
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        assert_eq!(back, Normalized::Simple(g));
    }

    #[test]
    fn edge_list_comments_and_inline() {
        let text = "# a triangle\nn 3 base 1\n0 1 # first\n\n2 1\n0 2\n";
        let g = parse_edge_list(text).unwrap().simple().unwrap();
        assert_eq!(g, cycle(3).with_base(1).unwrap());
        assert!(parse_edge_list("n 1 base 0; 0 0").unwrap().is_loop());
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_edge_list("n 3 base 0\n0 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_edge_list("n 2 base 0\n0 x"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_edge_list("n 2 base 0\n0 5"),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), complete(4));
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap(), complete(4));
        // P_3 bits in column order (0,1),(0,2),(1,2) are 1,0,1 -> 101000 = 40 -> 'g'
        assert_eq!(to_graph6(&path(3)), "Bg");
        assert_eq!(parse_graph6("@").unwrap(), Graph::single_vertex());
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("C\u{7}").is_err());
    }

    #[test]
    fn graph6_round_trip_on_large_n() {
        let g = path(70);
        assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }
}
