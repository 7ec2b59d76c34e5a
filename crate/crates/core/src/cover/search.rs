//! Backtracking over list colorings of a cover.

use super::{Cover, Matching};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

const NONE: u8 = u8::MAX;

/// Coloring search with per-edge conflict tables that can be swapped in place,
/// so one solver serves a whole family of covers on the same graph.
#[derive(Debug, Clone)]
pub(crate) struct Solver {
    order: Vec<usize>,
    // back[p]: (earlier vertex, edge, earlier vertex is the low endpoint)
    back: Vec<Vec<(usize, usize, bool)>>,
    lo2hi: Vec<Vec<u8>>,
    hi2lo: Vec<Vec<u8>>,
    n: usize,
}

impl Solver {
    pub fn new(cover: &Cover, order: Vec<usize>) -> Solver {
        let mut s = Solver::blank(cover.graph(), cover.sizes(), order);
        for e in 0..cover.edges().len() {
            s.set_matching(e, cover.matching(e));
        }
        s
    }

    /// A solver for `graph` whose edges all carry the empty matching.
    pub fn blank(graph: &SimpleGraph, sizes: &[usize], order: Vec<usize>) -> Solver {
        let n = graph.n();
        assert!(sizes.iter().all(|&h| h <= 64), "lists longer than 64 colors");
        let edges = graph.edges();
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut back = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if pos[u] < pos[v] {
                back[pos[v]].push((u, e, true));
            } else {
                back[pos[u]].push((v, e, false));
            }
        }
        Solver {
            order,
            back,
            lo2hi: edges.iter().map(|&(u, _)| vec![NONE; sizes[u]]).collect(),
            hi2lo: edges.iter().map(|&(_, v)| vec![NONE; sizes[v]]).collect(),
            n,
        }
    }

    pub fn set_matching(&mut self, e: usize, m: &Matching) {
        self.lo2hi[e].fill(NONE);
        self.hi2lo[e].fill(NONE);
        for &(i, j) in m {
            self.lo2hi[e][i] = j as u8;
            self.hi2lo[e][j] = i as u8;
        }
    }

    /// Calls `f` on every coloring inside `allowed` (bit `c` of `allowed[v]`
    /// permits color `c` at `v`) until `f` returns false. Returns whether the
    /// search ran to completion.
    pub fn for_each(
        &self,
        allowed: &[u64],
        budget: u64,
        f: &mut dyn FnMut(&[u8]) -> bool,
    ) -> Result<bool> {
        let mut cur = vec![0u8; self.n];
        let mut visits = 0u64;
        self.rec(0, &mut cur, allowed, &mut visits, budget, f)
    }

    pub fn colorable(&self, allowed: &[u64], budget: u64) -> Result<bool> {
        Ok(!self.for_each(allowed, budget, &mut |_| false)?)
    }

    fn rec(
        &self,
        p: usize,
        cur: &mut [u8],
        allowed: &[u64],
        visits: &mut u64,
        budget: u64,
        f: &mut dyn FnMut(&[u8]) -> bool,
    ) -> Result<bool> {
        if p == self.order.len() {
            return Ok(f(cur));
        }
        let v = self.order[p];
        let mut mask = allowed[v];
        for &(u, e, u_low) in &self.back[p] {
            let partner = if u_low {
                self.lo2hi[e][cur[u] as usize]
            } else {
                self.hi2lo[e][cur[u] as usize]
            };
            if partner != NONE {
                mask &= !(1u64 << partner);
            }
        }
        while mask != 0 {
            let c = mask.trailing_zeros();
            mask &= mask - 1;
            *visits += 1;
            if *visits > budget {
                return Err(Error::BudgetExceeded {
                    what: "coloring search",
                    needed: *visits as u128,
                    limit: budget as u128,
                });
            }
            cur[v] = c as u8;
            if !self.rec(p + 1, cur, allowed, visits, budget, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Breadth-first order, component by component, so each vertex after the
/// first of its component has an earlier neighbor.
pub(crate) fn search_order(graph: &SimpleGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(graph.n());
    let mut seen = vec![false; graph.n()];
    for s in 0..graph.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in graph.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}
