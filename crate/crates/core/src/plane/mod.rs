//! Embedded plane graphs given by rotation systems.
//!
//! Rotations list neighbors counterclockwise. A face is traced by leaving
//! each vertex along the edge immediately clockwise from the edge we arrived
//! on: from the dart `u -> v`, the next dart is `v -> w` where `w` precedes
//! `u` in the rotation of `v`.

mod classify;
mod pg;

pub use classify::{FaceClass, FaceTag, Pendent, VertexClass, VertexTag};
pub use pg::{parse_pg, write_pg};

use crate::error::{Error, Result};
use crate::graph::{ClassReport, SimpleGraph};

/// A face as the cyclic sequence of vertices met along its boundary walk.
///
/// The length is the number of edge traversals, so a bridge counts twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    boundary: Vec<usize>,
}

impl Face {
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.boundary.contains(&v)
    }

    /// Darts `(boundary[i], boundary[i + 1])` in walk order.
    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.boundary.len();
        (0..n).map(move |i| (self.boundary[i], self.boundary[(i + 1) % n]))
    }
}

/// A simple graph together with a plane embedding.
///
/// Immutable once built; faces, components and the class report are
/// computed eagerly.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotations: Vec<Vec<usize>>,
    graph: SimpleGraph,
    faces: Vec<Face>,
    // dart_face[v][i] is the face containing the dart v -> rotations[v][i]
    dart_face: Vec<Vec<usize>>,
    components: usize,
    class: ClassReport,
}

impl PlaneGraph {
    /// Validates a rotation table, traces its faces and checks Euler's formula
    /// on every component.
    ///
    /// Disconnected tables are accepted; see [`PlaneGraph::is_connected`].
    pub fn new(rotations: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotations.len();
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(n);
        for (v, rot) in rotations.iter().enumerate() {
            let mut s = rot.clone();
            s.sort_unstable();
            for (i, &u) in s.iter().enumerate() {
                if u >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, neighbor: u, n });
                }
                if u == v || (i > 0 && s[i - 1] == u) {
                    return Err(Error::NotSimple { vertex: v, neighbor: u });
                }
            }
            sorted.push(s);
        }
        for (v, s) in sorted.iter().enumerate() {
            for &u in s {
                if sorted[u].binary_search(&v).is_err() {
                    return Err(Error::NotSymmetric { u: v, v: u });
                }
            }
        }
        let graph = SimpleGraph::from_edges(
            n,
            sorted.iter().enumerate().flat_map(|(v, s)| s.iter().map(move |&u| (v, u))),
        );

        // back[v][i] = position of v in the rotation of rotations[v][i]
        let back: Vec<Vec<usize>> = rotations
            .iter()
            .enumerate()
            .map(|(v, rot)| {
                rot.iter()
                    .map(|&u| rotations[u].iter().position(|&x| x == v).unwrap())
                    .collect()
            })
            .collect();

        let mut dart_face: Vec<Vec<usize>> =
            rotations.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..rotations[v].len() {
                if dart_face[v][i] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut x, mut j) = (v, i);
                while dart_face[x][j] == usize::MAX {
                    dart_face[x][j] = id;
                    boundary.push(x);
                    let y = rotations[x][j];
                    let d = rotations[y].len();
                    let k = (back[x][j] + d - 1) % d;
                    x = y;
                    j = k;
                }
                faces.push(Face { boundary });
            }
        }
        if n == 1 {
            faces.push(Face { boundary: Vec::new() });
        }

        let comps = graph.components();
        let mut comp_of = vec![0; n];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        for f in &faces {
            if let Some(&v) = f.boundary.first() {
                face_count[comp_of[v]] += 1;
            }
        }
        for (c, comp) in comps.iter().enumerate() {
            let e: usize = comp.iter().map(|&v| graph.degree(v)).sum::<usize>() / 2;
            if e == 0 {
                continue;
            }
            let euler = comp.len() as i64 - e as i64 + face_count[c];
            if euler != 2 {
                return Err(Error::EmbeddingInconsistent { vertex: comp[0], euler });
            }
        }

        let class = graph.class_report();
        Ok(PlaneGraph {
            rotations,
            graph,
            faces,
            dart_face,
            components: comps.len(),
            class,
        })
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Neighbors of `v` in counterclockwise order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    /// The underlying abstract graph.
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected { components: self.components })
        }
    }

    pub fn class_report(&self) -> &ClassReport {
        &self.class
    }

    pub fn in_class(&self) -> bool {
        self.class.in_class()
    }

    pub fn require_in_class(&self) -> Result<()> {
        if self.in_class() {
            Ok(())
        } else {
            Err(Error::OutOfClass(self.class.describe()))
        }
    }

    /// The face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        let i = self.rotations[u].iter().position(|&x| x == v)?;
        Some(self.dart_face[u][i])
    }

    /// Faces around `v`, one entry per outgoing dart, so a face met twice at
    /// a cut vertex appears twice.
    pub fn incident_faces(&self, v: usize) -> &[usize] {
        &self.dart_face[v]
    }

    /// Distinct 3-faces containing `v`.
    pub fn three_faces_at(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.dart_face[v]
            .iter()
            .copied()
            .filter(|&f| self.faces[f].len() == 3)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Length of a shortest `u`-`v` path, or `None` across components.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.graph.distance(u, v)
    }

    /// The plane graph left after deleting `removed`, with the map from new
    /// vertex indices to old ones.
    pub fn remove_vertices(&self, removed: &[usize]) -> (PlaneGraph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let kept: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in kept.iter().enumerate() {
            local[v] = i;
        }
        let rotations = kept
            .iter()
            .map(|&v| {
                self.rotations[v]
                    .iter()
                    .filter(|&&u| !gone[u])
                    .map(|&u| local[u])
                    .collect()
            })
            .collect();
        // deleting vertices from a plane embedding leaves a plane embedding
        let g = PlaneGraph::new(rotations).expect("vertex deletion preserves planarity");
        (g, kept)
    }
}

impl AsRef<SimpleGraph> for PlaneGraph {
    fn as_ref(&self) -> &SimpleGraph {
        &self.graph
    }
}
