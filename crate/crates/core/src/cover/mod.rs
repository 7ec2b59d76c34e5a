//! DP-covers, colorings and weighted requests.
//!
//! Colors are positions `0..h(v)` in the list of `v`. For each edge `uv`
//! with `u < v` the cover stores a partial injection as pairs `(i, j)`
//! meaning color `i` of `u` conflicts with color `j` of `v`.

mod family;
mod request;
mod search;
mod text;

pub use family::{count_partial_injections, enumerate_covers, CoverFamily, FamilyKind};
pub use request::{parse_req, request_value, total_weight, write_req, WeightedRequest};
pub use text::{parse_cover, write_cover};

pub(crate) use search::{search_order, Solver};

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Pairs `(i, j)` of a partial injection, sorted.
pub type Matching = Vec<(usize, usize)>;

/// One color index per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn colors(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    graph: SimpleGraph,
    sizes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    matchings: Vec<Matching>,
}

impl Cover {
    /// A cover of `graph` with the given list sizes. Edges absent from
    /// `matchings` get the empty matching.
    pub fn new(
        graph: &SimpleGraph,
        sizes: Vec<usize>,
        matchings: impl IntoIterator<Item = ((usize, usize), Matching)>,
    ) -> Result<Cover> {
        if sizes.len() != graph.n() {
            return Err(Error::InvalidCover(format!(
                "{} list sizes for {} vertices",
                sizes.len(),
                graph.n()
            )));
        }
        if let Some(v) = sizes.iter().position(|&h| h == 0) {
            return Err(Error::InvalidCover(format!("vertex {v} has an empty list")));
        }
        let edges = graph.edges();
        let index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut slots: Vec<Option<Matching>> = vec![None; edges.len()];
        for ((u, v), pairs) in matchings {
            let (key, pairs) = if u < v {
                ((u, v), pairs)
            } else {
                ((v, u), pairs.into_iter().map(|(i, j)| (j, i)).collect())
            };
            let e = *index
                .get(&key)
                .ok_or_else(|| Error::InvalidCover(format!("{u} {v} is not an edge")))?;
            if slots[e].is_some() {
                return Err(Error::InvalidCover(format!("edge {u} {v} matched twice")));
            }
            slots[e] = Some(normalize_matching(pairs, sizes[key.0], sizes[key.1], key)?);
        }
        let matchings = slots.into_iter().map(Option::unwrap_or_default).collect();
        Ok(Cover { graph: graph.clone(), sizes, edges, matchings })
    }

    /// Every list has `k` colors and every edge matches `i` with `i`.
    pub fn identity(graph: &SimpleGraph, k: usize) -> Cover {
        let m: Matching = (0..k).map(|i| (i, i)).collect();
        let edges = graph.edges();
        Cover {
            graph: graph.clone(),
            sizes: vec![k; graph.n()],
            matchings: vec![m; edges.len()],
            edges,
        }
    }

    /// The cover of a list assignment: indices enumerate each list in the
    /// given order and equal names conflict across an edge.
    pub fn from_lists<T: Eq + Hash>(graph: &SimpleGraph, lists: &[Vec<T>]) -> Result<Cover> {
        if lists.len() != graph.n() {
            return Err(Error::InvalidCover(format!(
                "{} lists for {} vertices",
                lists.len(),
                graph.n()
            )));
        }
        let mut index: Vec<HashMap<&T, usize>> = Vec::with_capacity(lists.len());
        for (v, list) in lists.iter().enumerate() {
            let map: HashMap<&T, usize> = list.iter().enumerate().map(|(i, c)| (c, i)).collect();
            if map.len() != list.len() {
                return Err(Error::InvalidCover(format!("list of vertex {v} repeats a color")));
            }
            index.push(map);
        }
        let sizes = lists.iter().map(Vec::len).collect();
        let matchings = graph.edges().into_iter().map(|(u, v)| {
            let pairs = lists[u]
                .iter()
                .enumerate()
                .filter_map(|(i, c)| index[v].get(c).map(|&j| (i, j)))
                .collect();
            ((u, v), pairs)
        });
        Cover::new(graph, sizes, matchings)
    }

    pub(crate) fn from_parts(
        graph: SimpleGraph,
        sizes: Vec<usize>,
        edges: Vec<(usize, usize)>,
        matchings: Vec<Matching>,
    ) -> Cover {
        Cover { graph, sizes, edges, matchings }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, v: usize) -> usize {
        self.sizes[v]
    }

    /// Edges `(u, v)` with `u < v`, in the order used by [`Cover::matching`].
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn matching(&self, e: usize) -> &Matching {
        &self.matchings[e]
    }

    /// The matching of edge `uv` oriented so pairs read `(color of u, color of v)`.
    pub fn matching_between(&self, u: usize, v: usize) -> Option<Matching> {
        let (key, flip) = if u < v { ((u, v), false) } else { ((v, u), true) };
        let e = self.edges.binary_search(&key).ok()?;
        let m = &self.matchings[e];
        Some(if flip { m.iter().map(|&(i, j)| (j, i)).collect() } else { m.clone() })
    }

    /// Checks list ranges and every edge matching.
    pub fn is_valid_coloring(&self, phi: &Coloring) -> bool {
        phi.0.len() == self.n()
            && phi.0.iter().zip(&self.sizes).all(|(&c, &h)| c < h)
            && self
                .edges
                .iter()
                .zip(&self.matchings)
                .all(|(&(u, v), m)| !m.contains(&(phi.0[u], phi.0[v])))
    }

    /// All colorings in lexicographic order.
    pub fn enumerate_colorings(&self, state_budget: u64) -> Result<Vec<Coloring>> {
        let solver = Solver::new(self, (0..self.n()).collect());
        let mut out = Vec::new();
        solver.for_each(&full_masks(&self.sizes), state_budget, &mut |c| {
            out.push(Coloring(c.iter().map(|&x| x as usize).collect()));
            true
        })?;
        Ok(out)
    }

    pub fn count_colorings(&self, state_budget: u64) -> Result<u64> {
        let solver = Solver::new(self, (0..self.n()).collect());
        let mut count = 0u64;
        solver.for_each(&full_masks(&self.sizes), state_budget, &mut |_| {
            count += 1;
            true
        })?;
        Ok(count)
    }

    /// Some coloring, if one exists.
    pub fn find_coloring(&self, state_budget: u64) -> Result<Option<Coloring>> {
        let solver = Solver::new(self, search::search_order(&self.graph));
        let mut found = None;
        solver.for_each(&full_masks(&self.sizes), state_budget, &mut |c| {
            found = Some(Coloring(c.iter().map(|&x| x as usize).collect()));
            false
        })?;
        Ok(found)
    }

    pub fn is_colorable(&self, state_budget: u64) -> Result<bool> {
        Ok(self.find_coloring(state_budget)?.is_some())
    }

    /// The cover induced on `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn restrict(&self, vertices: &[usize]) -> Cover {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let graph = self.graph.induced(vertices);
        let sizes = vertices.iter().map(|&v| self.sizes[v]).collect();
        let matchings = self
            .edges
            .iter()
            .zip(&self.matchings)
            .filter(|(&(u, v), _)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|(&(u, v), m)| ((local[u], local[v]), m.clone()))
            .collect::<Vec<_>>();
        Cover::new(&graph, sizes, matchings).expect("restriction of a valid cover")
    }

    /// Matchings keyed by edge, for display and serialization.
    pub fn matching_map(&self) -> BTreeMap<(usize, usize), Matching> {
        self.edges.iter().copied().zip(self.matchings.iter().cloned()).collect()
    }
}

pub(crate) fn full_masks(sizes: &[usize]) -> Vec<u64> {
    sizes.iter().map(|&h| if h >= 64 { u64::MAX } else { (1u64 << h) - 1 }).collect()
}

fn normalize_matching(
    mut pairs: Matching,
    a: usize,
    b: usize,
    (u, v): (usize, usize),
) -> Result<Matching> {
    pairs.sort_unstable();
    pairs.dedup();
    let mut seen_j = vec![false; b];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if i >= a || j >= b {
            return Err(Error::InvalidCover(format!("pair {i}-{j} on edge {u} {v} is out of range")));
        }
        if (k > 0 && pairs[k - 1].0 == i) || seen_j[j] {
            return Err(Error::InvalidCover(format!(
                "matching on edge {u} {v} is not a partial injection"
            )));
        }
        seen_j[j] = true;
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> SimpleGraph {
        SimpleGraph::from_edges(2, [(0, 1)])
    }

    fn triangle() -> SimpleGraph {
        SimpleGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)])
    }

    const B: u64 = 10_000_000;

    #[test]
    fn lists_to_matchings() {
        let c = Cover::from_lists(&edge(), &[vec!["a", "b", "c", "d"], vec!["a", "b", "c", "d"]]).unwrap();
        assert_eq!(c.matching(0), &vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        let c = Cover::from_lists(&edge(), &[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        assert!(c.matching(0).is_empty());
        let c = Cover::from_lists(&edge(), &[vec!["a", "b"], vec!["b", "c"]]).unwrap();
        assert_eq!(c.matching(0), &vec![(1, 0)]);
    }

    #[test]
    fn small_enumerations() {
        let single = Cover::identity(&SimpleGraph::new(1), 4);
        assert_eq!(single.enumerate_colorings(B).unwrap().len(), 4);
        let e = Cover::identity(&edge(), 2);
        let all = e.enumerate_colorings(B).unwrap();
        assert_eq!(all, vec![Coloring(vec![0, 1]), Coloring(vec![1, 0])]);
        assert!(Cover::identity(&triangle(), 2).enumerate_colorings(B).unwrap().is_empty());
        assert!(Cover::identity(&triangle(), 3).is_colorable(B).unwrap());
        assert!(!Cover::identity(&triangle(), 2).is_colorable(B).unwrap());
    }

    #[test]
    fn rejects_bad_matchings() {
        let g = edge();
        assert!(Cover::new(&g, vec![2, 2], [((0, 1), vec![(0, 0), (0, 1)])]).is_err());
        assert!(Cover::new(&g, vec![2, 2], [((0, 1), vec![(0, 0), (1, 0)])]).is_err());
        assert!(Cover::new(&g, vec![2, 2], [((0, 1), vec![(2, 0)])]).is_err());
        assert!(Cover::new(&SimpleGraph::new(2), vec![2, 2], [((0, 1), vec![])]).is_err());
        assert!(Cover::new(&g, vec![0, 2], []).is_err());
    }

    #[test]
    fn reversed_edge_keys_flip_pairs() {
        let c = Cover::new(&edge(), vec![2, 3], [((1, 0), vec![(2, 1)])]).unwrap();
        assert_eq!(c.matching(0), &vec![(1, 2)]);
        assert_eq!(c.matching_between(1, 0), Some(vec![(2, 1)]));
    }

    #[test]
    fn budget_is_enforced() {
        let g = SimpleGraph::new(10);
        let c = Cover::identity(&g, 4);
        assert!(matches!(c.enumerate_colorings(1000), Err(Error::BudgetExceeded { .. })));
    }
}
