//! Families of covers with prescribed list sizes.
//!
//! `All` ranges every edge over every partial injection. `Canonical` is a
//! smaller family that is colorable exactly when `All` is:
//!
//! * Adding pairs to a matching only removes colorings, and every partial
//!   injection extends to one of size `min(a, b)`, so maximal matchings suffice.
//! * Renaming the colors inside one list does not change colorability. Walking
//!   a BFS spanning forest from the root, each child list can be renamed so the
//!   tree edge to its parent matches parent colors `x_0 < x_1 < ...` to child
//!   colors `0, 1, ...`. Only the subset `{x_t}` remains free.
//!
//! Non-tree edges keep every maximal matching. Roots are chosen per component
//! to make the family smallest.

use super::search::{search_order, Solver};
use super::{Cover, Matching};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    All,
    Canonical,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::All => "all",
            FamilyKind::Canonical => "canonical",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverFamily {
    kind: FamilyKind,
    graph: SimpleGraph,
    sizes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    options: Vec<Vec<Matching>>,
}

/// The covers of `graph` with list sizes `sizes`, refused if the family has
/// more than `budget` members.
pub fn enumerate_covers(
    graph: &SimpleGraph,
    sizes: &[usize],
    kind: FamilyKind,
    budget: u128,
) -> Result<CoverFamily> {
    let fam = CoverFamily::new(graph, sizes, kind)?;
    if fam.count() > budget {
        return Err(Error::BudgetExceeded { what: "cover family", needed: fam.count(), limit: budget });
    }
    Ok(fam)
}

impl CoverFamily {
    pub fn new(graph: &SimpleGraph, sizes: &[usize], kind: FamilyKind) -> Result<CoverFamily> {
        if sizes.len() != graph.n() {
            return Err(Error::InvalidCover("list sizes do not match the graph".into()));
        }
        if let Some(v) = sizes.iter().position(|&h| h == 0) {
            return Err(Error::InvalidCover(format!("vertex {v} has an empty list")));
        }
        let edges = graph.edges();
        let options = match kind {
            FamilyKind::All => edges
                .iter()
                .map(|&(u, v)| partial_injections(sizes[u], sizes[v]))
                .collect(),
            FamilyKind::Canonical => canonical_options(graph, sizes, &edges),
        };
        Ok(CoverFamily { kind, graph: graph.clone(), sizes: sizes.to_vec(), edges, options })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// Number of covers, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.options
            .iter()
            .fold(1u128, |acc, o| acc.saturating_mul(o.len() as u128))
    }

    pub fn iter(&self) -> impl Iterator<Item = Cover> + '_ {
        let mut digits = vec![0usize; self.edges.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cover = Cover::from_parts(
                self.graph.clone(),
                self.sizes.clone(),
                self.edges.clone(),
                digits.iter().enumerate().map(|(e, &d)| self.options[e][d].clone()).collect(),
            );
            done = !advance(&mut digits, &self.options, |_| {});
            Some(cover)
        })
    }

    /// Walks the family in order and returns the number of covers checked
    /// and the first one with no coloring, if any.
    pub fn first_uncolorable(&self, state_budget: u64) -> Result<(u128, Option<Cover>)> {
        let mut solver = Solver::blank(&self.graph, &self.sizes, search_order(&self.graph));
        let mut digits = vec![0usize; self.edges.len()];
        for e in 0..self.edges.len() {
            solver.set_matching(e, &self.options[e][0]);
        }
        let allowed = super::full_masks(&self.sizes);
        let mut checked = 0u128;
        loop {
            checked += 1;
            if !solver.colorable(&allowed, state_budget)? {
                let cover = Cover::from_parts(
                    self.graph.clone(),
                    self.sizes.clone(),
                    self.edges.clone(),
                    digits.iter().enumerate().map(|(e, &d)| self.options[e][d].clone()).collect(),
                );
                return Ok((checked, Some(cover)));
            }
            let options = &self.options;
            if !advance(&mut digits, options, |e| solver.set_matching(e, &options[e][0])) {
                return Ok((checked, None));
            }
            // advance leaves the changed digit last; refresh it
            if let Some(e) = digits.iter().rposition(|&d| d != 0) {
                solver.set_matching(e, &options[e][digits[e]]);
            }
        }
    }
}

// Odometer step, last edge fastest. `reset(e)` is called for digits that wrap.
fn advance(digits: &mut [usize], options: &[Vec<Matching>], mut reset: impl FnMut(usize)) -> bool {
    for e in (0..digits.len()).rev() {
        digits[e] += 1;
        if digits[e] < options[e].len() {
            return true;
        }
        digits[e] = 0;
        reset(e);
    }
    false
}

/// Every partial injection between `0..a` and `0..b`, empty first.
pub(crate) fn partial_injections(a: usize, b: usize) -> Vec<Matching> {
    fn rec(i: usize, a: usize, used: &mut Vec<bool>, cur: &mut Matching, out: &mut Vec<Matching>) {
        if i == a {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, a, used, cur, out);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                cur.push((i, j));
                rec(i + 1, a, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, a, &mut vec![false; b], &mut Vec::new(), &mut out);
    out
}

/// Partial injections of size `min(a, b)`.
pub(crate) fn maximal_injections(a: usize, b: usize) -> Vec<Matching> {
    if a > b {
        return maximal_injections(b, a)
            .into_iter()
            .map(|m| {
                let mut m: Matching = m.into_iter().map(|(i, j)| (j, i)).collect();
                m.sort_unstable();
                m
            })
            .collect();
    }
    partial_injections(a, b).into_iter().filter(|m| m.len() == a).collect()
}

/// `sum_j C(a, j) C(b, j) j!`
pub fn count_partial_injections(a: usize, b: usize) -> u128 {
    let mut total = 0u128;
    for j in 0..=a.min(b) {
        total += binom(a, j) * binom(b, j) * (1..=j as u128).product::<u128>();
    }
    total
}

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

// BFS tree of the component of `root`: parent of each reached vertex.
fn bfs_parents(graph: &SimpleGraph, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; graph.n()];
    let mut seen = vec![false; graph.n()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    parent
}

fn canonical_options(graph: &SimpleGraph, sizes: &[usize], edges: &[(usize, usize)]) -> Vec<Vec<Matching>> {
    let n_perm = |a: usize, b: usize| -> u128 {
        let (a, b) = (a.min(b), a.max(b));
        (0..a).fold(1u128, |acc, i| acc * (b - i) as u128)
    };
    // parent[v] in the chosen forest
    let mut parent: Vec<Option<usize>> = vec![None; graph.n()];
    for comp in graph.components() {
        let mut best: Option<(u128, Vec<Option<usize>>)> = None;
        for &root in &comp {
            let par = bfs_parents(graph, root);
            let mut cost = 1u128;
            for &(u, v) in edges {
                if !comp.contains(&u) {
                    continue;
                }
                let c = match (par[u], par[v]) {
                    (Some(p), _) if p == v => binom(sizes[v], sizes[u].min(sizes[v])),
                    (_, Some(p)) if p == u => binom(sizes[u], sizes[u].min(sizes[v])),
                    _ => n_perm(sizes[u], sizes[v]),
                };
                cost = cost.saturating_mul(c);
            }
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, par));
            }
        }
        let par = best.unwrap().1;
        for &v in &comp {
            parent[v] = par[v];
        }
    }
    edges
        .iter()
        .map(|&(u, v)| {
            let (p, c) = if parent[v] == Some(u) {
                (u, v)
            } else if parent[u] == Some(v) {
                (v, u)
            } else {
                return maximal_injections(sizes[u], sizes[v]);
            };
            let m = sizes[p].min(sizes[c]);
            subsets(sizes[p], m)
                .into_iter()
                .map(|xs| {
                    let mut pairs: Matching = xs
                        .into_iter()
                        .enumerate()
                        .map(|(t, x)| if p == u { (x, t) } else { (t, x) })
                        .collect();
                    pairs.sort_unstable();
                    pairs
                })
                .collect()
        })
        .collect()
}
