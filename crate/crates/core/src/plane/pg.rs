//! The `.pg` rotation-table format.
//!
//! ```text
//! # comment
//! planar 3
//! 0: 1 2
//! 1: 2 0
//! 2: 0 1
//! ```

use super::PlaneGraph;
use crate::error::{parse_err, Result};

/// Parses a `.pg` document into a validated plane graph.
pub fn parse_pg(text: &str) -> Result<PlaneGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["planar", n] => n.parse().map_err(|_| parse_err(hline, format!("bad vertex count {n:?}")))?,
        _ => return Err(parse_err(hline, "expected `planar <n>`")),
    };

    let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, body) in lines {
        let (v, rest) = body
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `v: n1 n2 ...`"))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex {:?}", v.trim())))?;
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range")));
        }
        if rotations[v].is_some() {
            return Err(parse_err(line, format!("vertex {v} listed twice")));
        }
        let nbrs = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad neighbor {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rotations[v] = Some(nbrs);
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| parse_err(0, format!("vertex {v} has no rotation line"))))
        .collect::<Result<Vec<_>>>()?;
    PlaneGraph::new(rotations)
}

/// Canonical text for a plane graph; `parse_pg(write_pg(g))` reproduces `g`.
pub fn write_pg(g: &PlaneGraph) -> String {
    let mut out = format!("planar {}\n", g.n());
    for v in 0..g.n() {
        out.push_str(&format!("{v}:"));
        for u in g.rotation(v) {
            out.push_str(&format!(" {u}"));
        }
        out.push('\n');
    }
    out
}
