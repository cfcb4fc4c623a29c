//! Plain-text edge lists: a line `N M`, then `M` lines `u v` with 0-based
//! vertex indices. Blank lines and lines starting with `#` are ignored on
//! input. Output lists edges sorted, so writing a parsed file reproduces it
//! byte for byte.

use std::io::{BufRead, Write};

use treesplit_core::Graph;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] treesplit_core::Error),
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let bad = |message: &str| FormatError::Parse {
        line,
        message: message.to_string(),
    };
    let mut fields = text.split_whitespace();
    let a = fields.next().ok_or_else(|| bad("expected two integers"))?;
    let b = fields.next().ok_or_else(|| bad("expected two integers"))?;
    if fields.next().is_some() {
        return Err(bad("trailing fields"));
    }
    let a = a.parse().map_err(|_| bad("not a nonnegative integer"))?;
    let b = b.parse().map_err(|_| bad("not a nonnegative integer"))?;
    Ok((a, b))
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, FormatError> {
    let mut header = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        last_line = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let pair = parse_pair(i + 1, text)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push(pair);
        }
    }
    let (n, m) = header.ok_or(FormatError::Parse {
        line: last_line,
        message: "missing header".into(),
    })?;
    if edges.len() != m {
        return Err(FormatError::Parse {
            line: last_line,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.num_vertices(), g.num_edges())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use treesplit_core::graph::make_grid;

    #[test]
    fn round_trip() {
        let g = make_grid(3, 2);
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back, g);
        let mut again = Vec::new();
        write_edge_list(&back, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn unsorted_input_is_normalized() {
        let g = read_edge_list("# triangle\n3 3\n2 1\n0 2\n\n1 0\n".as_bytes()).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_edge_list("3 2\n0 1\n".as_bytes()).is_err());
        assert!(read_edge_list("3 1\n0 x\n".as_bytes()).is_err());
        assert!(read_edge_list("3 1\n0 0\n".as_bytes()).is_err());
        assert!(read_edge_list("2 1\n0 5\n".as_bytes()).is_err());
        assert!(read_edge_list("".as_bytes()).is_err());
    }
}
