//! The `.cover` text format.
//!
//! ```text
//! sizes 0:2 1:2 2:3
//! match 0 1: 0-0 1-1
//! match 1 2: 0-2
//! ```
//!
//! `match u v: i-j` pairs color `i` of `u` with color `j` of `v`. Edges
//! without a `match` line carry the empty matching.

use super::{Cover, Matching};
use crate::error::{parse_err, Result};
use crate::graph::SimpleGraph;

pub fn parse_cover(text: &str, graph: &SimpleGraph) -> Result<Cover> {
    let mut sizes: Vec<Option<usize>> = vec![None; graph.n()];
    let mut matchings: Vec<((usize, usize), Matching)> = Vec::new();
    let num = |line: usize, t: &str| -> Result<usize> {
        t.trim().parse().map_err(|_| parse_err(line, format!("bad number {t:?}")))
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if let Some(rest) = body.strip_prefix("sizes") {
            for tok in rest.split_whitespace() {
                let (v, h) = tok
                    .split_once(':')
                    .ok_or_else(|| parse_err(line, format!("expected v:h, got {tok:?}")))?;
                let (v, h) = (num(line, v)?, num(line, h)?);
                let slot = sizes
                    .get_mut(v)
                    .ok_or_else(|| parse_err(line, format!("vertex {v} out of range")))?;
                if slot.replace(h).is_some() {
                    return Err(parse_err(line, format!("size of {v} given twice")));
                }
            }
        } else if let Some(rest) = body.strip_prefix("match") {
            let (ends, pairs) = rest
                .split_once(':')
                .ok_or_else(|| parse_err(line, "expected `match u v: i-j ...`"))?;
            let ends: Vec<&str> = ends.split_whitespace().collect();
            let [u, v] = ends[..] else {
                return Err(parse_err(line, "expected two endpoints"));
            };
            let pairs = pairs
                .split_whitespace()
                .map(|p| {
                    let (i, j) = p
                        .split_once('-')
                        .ok_or_else(|| parse_err(line, format!("expected i-j, got {p:?}")))?;
                    Ok((num(line, i)?, num(line, j)?))
                })
                .collect::<Result<Matching>>()?;
            matchings.push(((num(line, u)?, num(line, v)?), pairs));
        } else if !body.is_empty() {
            return Err(parse_err(line, "expected `sizes` or `match`"));
        }
    }
    let sizes = sizes
        .into_iter()
        .enumerate()
        .map(|(v, h)| h.ok_or_else(|| parse_err(0, format!("no size for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    Cover::new(graph, sizes, matchings)
}

/// Writes a cover. With `labels`, vertex `v` is printed as `labels[v]`.
pub fn write_cover(cover: &Cover, labels: Option<&[usize]>) -> String {
    let name = |v: usize| labels.map_or(v, |l| l[v]);
    let mut out = String::from("sizes");
    for (v, h) in cover.sizes().iter().enumerate() {
        out.push_str(&format!(" {}:{h}", name(v)));
    }
    out.push('\n');
    for (e, &(u, v)) in cover.edges().iter().enumerate() {
        let m = cover.matching(e);
        if m.is_empty() {
            continue;
        }
        out.push_str(&format!("match {} {}:", name(u), name(v)));
        for (i, j) in m {
            out.push_str(&format!(" {i}-{j}"));
        }
        out.push('\n');
    }
    out
}
