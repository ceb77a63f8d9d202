//! Plain-text edge lists and partitions.
//!
//! Edge list: a header `n m loops`, then `m` lines `u v` with `u < v` in
//! lexicographic order, then one `L v` line per loop. Partition: one
//! `vertex class` line per vertex. Both LF-terminated.

use super::{Graph, GraphError, Partition};
use std::io::{self, BufRead, Write};

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    writeln!(w, "{} {} {}", g.n(), g.edge_count(), g.loop_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    for &v in g.loops() {
        writeln!(w, "L {v}")?;
    }
    w.flush()
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn num(tok: Option<&str>, line: usize) -> Result<u64, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing field"))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("not a number: {tok:?}")))
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph, GraphError> {
    let mut lines = r.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(s) if s.trim().is_empty() => None,
        Ok(s) => Some(Ok((i + 1, s))),
        Err(e) => Some(Err(parse_err(i + 1, e.to_string()))),
    });
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header"))??;
    let mut it = header.split_whitespace();
    let n = num(it.next(), hline)? as usize;
    let m = num(it.next(), hline)? as usize;
    let l = num(it.next(), hline)? as usize;
    let mut edges = Vec::with_capacity(m);
    let mut loops = Vec::with_capacity(l);
    for item in lines {
        let (no, line) = item?;
        let mut it = line.split_whitespace();
        if line.trim_start().starts_with('L') {
            it.next();
            loops.push(num(it.next(), no)? as u32);
        } else {
            let u = num(it.next(), no)? as u32;
            let v = num(it.next(), no)? as u32;
            edges.push((u, v));
        }
    }
    if edges.len() != m || loops.len() != l {
        return Err(parse_err(
            hline,
            format!(
                "header announces {m} edges and {l} loops, found {} and {}",
                edges.len(),
                loops.len()
            ),
        ));
    }
    Graph::from_edges(n, edges, loops)
}

pub fn write_partition<W: Write>(p: &Partition, mut w: W) -> io::Result<()> {
    for (v, &c) in p.labels().iter().enumerate() {
        writeln!(w, "{v} {c}")?;
    }
    w.flush()
}

/// Reads `vertex class` lines; every vertex `0..n` must appear exactly once.
pub fn read_partition<R: BufRead>(r: R) -> Result<Partition, GraphError> {
    let mut pairs = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| parse_err(i + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let v = num(it.next(), i + 1)? as usize;
        let c = num(it.next(), i + 1)? as u32;
        pairs.push((v, c, i + 1));
    }
    let n = pairs.len();
    let mut labels = vec![u32::MAX; n];
    for (v, c, line) in pairs {
        if v >= n || labels[v] != u32::MAX {
            return Err(parse_err(
                line,
                format!("vertex {v} missing from or repeated in 0..{n}"),
            ));
        }
        labels[v] = c;
    }
    Partition::from_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_format() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (1, 0)], [2]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "4 3 1\n0 1\n0 3\n1 2\nL 2\n"
        );
        assert_eq!(read_edge_list(&buf[..]).unwrap(), g);
    }

    #[test]
    fn header_mismatch_is_an_error() {
        assert!(read_edge_list(&b"3 2 0\n0 1\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1 0\n0 x\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1 0\n0 5\n"[..]).is_err());
    }

    #[test]
    fn partition_format() {
        let p = Partition::new(vec![1, 0, 1], 2).unwrap();
        let mut buf = Vec::new();
        write_partition(&p, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 1\n1 0\n2 1\n");
        assert_eq!(read_partition(&buf[..]).unwrap(), p);
        assert!(read_partition(&b"0 0\n0 1\n"[..]).is_err());
    }
}
