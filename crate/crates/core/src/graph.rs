//! Abstract simple graphs and the embedding-free class test.

use std::collections::VecDeque;

/// An undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.has_edge(u, v) {
            return;
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut g = SimpleGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                if local[u] != usize::MAX {
                    g.adj[i].push(local[u]);
                }
            }
            g.adj[i].sort_unstable();
        }
        g
    }

    /// A copy with one extra vertex adjacent to exactly `attach`.
    pub fn with_apex(&self, attach: &[usize]) -> SimpleGraph {
        let mut g = self.clone();
        let apex = g.add_vertex();
        for &v in attach {
            g.add_edge(apex, v);
        }
        g
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs(u)[v]
    }

    /// BFS distances from `s`.
    pub fn bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// All triangles `[a, b, c]` with `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n() {
            for (i, &b) in self.adj[a].iter().enumerate() {
                if b < a {
                    continue;
                }
                for &c in &self.adj[a][i + 1..] {
                    if self.has_edge(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Witnesses for the two excluded structures, or none.
    pub fn class_report(&self) -> ClassReport {
        ClassReport {
            four_cycle: self.find_four_cycle(),
            intersecting_triangles: self.find_intersecting_triangles(),
        }
    }

    fn find_four_cycle(&self) -> Option<[usize; 4]> {
        // A 4-cycle a-x-c-y exists iff two non-adjacent-in-the-cycle vertices share two neighbors.
        for a in 0..self.n() {
            for c in a + 1..self.n() {
                let mut common = intersect(&self.adj[a], &self.adj[c]);
                if let (Some(x), Some(y)) = (common.next(), common.next()) {
                    return Some([a, x, c, y]);
                }
            }
        }
        None
    }

    fn find_intersecting_triangles(&self) -> Option<([usize; 3], [usize; 3])> {
        let mut first_at: Vec<Option<[usize; 3]>> = vec![None; self.n()];
        let mut best: Option<([usize; 3], [usize; 3])> = None;
        for t in self.triangles() {
            for &v in &t {
                match first_at[v] {
                    None => first_at[v] = Some(t),
                    Some(s) => {
                        let cand = (s, t);
                        if best.is_none_or(|b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
            }
        }
        best
    }
}

fn intersect<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(a[i - 1]);
                }
            }
        }
        None
    })
}

impl AsRef<SimpleGraph> for SimpleGraph {
    fn as_ref(&self) -> &SimpleGraph {
        self
    }
}

/// Result of the class test: a graph is in the class iff both witnesses are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    /// Vertices of a 4-cycle in cyclic order.
    pub four_cycle: Option<[usize; 4]>,
    /// Two distinct triangles sharing a vertex.
    pub intersecting_triangles: Option<([usize; 3], [usize; 3])>,
}

impl ClassReport {
    pub fn in_class(&self) -> bool {
        self.four_cycle.is_none() && self.intersecting_triangles.is_none()
    }

    pub fn describe(&self) -> String {
        match (&self.four_cycle, &self.intersecting_triangles) {
            (None, None) => "in class".to_string(),
            (Some(c), _) => format!("4-cycle {} {} {} {}", c[0], c[1], c[2], c[3]),
            (None, Some((s, t))) => format!(
                "intersecting triangles {} {} {} and {} {} {}",
                s[0], s[1], s[2], t[0], t[1], t[2]
            ),
        }
    }
}
