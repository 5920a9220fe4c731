use std::fmt::Write as _;

use super::{Graph, GraphError};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Reads a graph from edge-list text, or from a single graph6 line.
pub fn load_graph(text: &str) -> Result<Graph, GraphError> {
    let first = content_lines(text).next();
    match first {
        Some((_, l)) if !l.contains(char::is_whitespace) && !l.bytes().all(|b| b.is_ascii_digit()) => {
            parse_graph6(l)
        }
        _ => parse_edge_list(text),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("expected a non-negative integer, got {tok:?}"),
    })
}

/// Parses `n m` followed by `m` lines `u v`. Lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing header line \"n m\"".into(),
    })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(GraphError::Parse {
            line: hline,
            msg: "header must be \"n m\"".into(),
        });
    }
    let n = parse_usize(nums[0], hline)?;
    let m = parse_usize(nums[1], hline)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(GraphError::Parse {
                line,
                msg: format!("expected \"u v\", got {l:?}"),
            });
        }
        let u = parse_usize(toks[0], line)?;
        let v = parse_usize(toks[1], line)?;
        if u >= n || v >= n {
            return Err(GraphError::Parse {
                line,
                msg: format!("vertex out of range 0..{n}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Parses one graph6 string (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| GraphError::Parse {
        line: 1,
        msg: format!("graph6: {msg}"),
    };
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, rest) = match bytes {
        [126, 126, r @ ..] if r.len() >= 6 => {
            let n = r[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &r[6..])
        }
        [126, r @ ..] if r.len() >= 3 => {
            let n = r[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &r[3..])
        }
        [b, r @ ..] if *b < 126 => ((*b - 63) as usize, r),
        _ => return Err(bad("truncated size field")),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(bad("adjacency length does not match vertex count"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Edge-list text: `n m` then one `u v` line per edge in id order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * g.m() + 16);
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = load_graph("3 3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.girth(), Some(3));
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "# petersen\n10 15\n0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n";
        let g = load_graph(text).unwrap();
        assert!(g.is_cubic());
        assert_eq!(g.girth(), Some(5));
        assert_eq!(load_graph(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert_eq!(
            load_graph("2 2\n0 1\n0 1"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            load_graph("3 1\n0 x"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load_graph("3 2\n0 1"),
            Err(GraphError::EdgeCount { expected: 2, found: 1 })
        ));
        assert!(matches!(load_graph("3 1\n0 3"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(load_graph(""), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn graph6_examples() {
        // "DQc": edges 0-2, 0-4, 1-3, 3-4
        let g = load_graph("DQc").unwrap();
        assert_eq!(g.n(), 5);
        let mut e = g.edges().to_vec();
        e.sort();
        assert_eq!(e, vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        // Petersen
        let p = load_graph(">>graph6<<IheA@GUAo").unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.is_cubic());
        assert_eq!(p.girth(), Some(5));
        assert!(parse_graph6("D?").is_err());
    }
}
