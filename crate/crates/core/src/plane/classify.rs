//! Vertex and face classes used by the configurations and the discharging rules.

use std::collections::BTreeSet;

use super::PlaneGraph;
use crate::error::{Error, Result};

/// Pendent 3-faces of a vertex and the 3-vertices through which they hang.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pendent {
    pub faces: BTreeSet<usize>,
    pub neighbors: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexTag {
    Three,
    K1,
    K2,
    Four3,
    Heavy,
    Special,
    Other,
}

impl VertexTag {
    pub fn name(self) -> &'static str {
        match self {
            VertexTag::Three => "three-vertex",
            VertexTag::K1 => "k1",
            VertexTag::K2 => "k2",
            VertexTag::Four3 => "four3",
            VertexTag::Heavy => "heavy",
            VertexTag::Special => "special",
            VertexTag::Other => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexClass {
    pub tag: VertexTag,
    pub degree: usize,
    pub incident_3_faces: usize,
    pub pendent_3_faces: usize,
}

impl VertexClass {
    /// Special 5+-vertices and heavy 4+-vertices.
    pub fn is_rich(&self) -> bool {
        matches!(self.tag, VertexTag::Heavy | VertexTag::Special)
    }

    pub fn is_4_1(&self) -> bool {
        self.tag == VertexTag::K1 && self.degree == 4
    }

    pub fn is_4_2(&self) -> bool {
        self.tag == VertexTag::K2 && self.degree == 4
    }

    /// Short label such as `5_1`, `4_3`, `heavy`.
    pub fn label(&self) -> String {
        match self.tag {
            VertexTag::K1 => format!("{}_1", self.degree),
            VertexTag::K2 => format!("{}_2", self.degree),
            VertexTag::Four3 => "4_3".to_string(),
            VertexTag::Three => "3".to_string(),
            t => t.name().to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceTag {
    PoorI,
    PoorII,
    Plain,
}

impl FaceTag {
    pub fn name(self) -> &'static str {
        match self {
            FaceTag::PoorI => "poor-i",
            FaceTag::PoorII => "poor-ii",
            FaceTag::Plain => "plain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClass {
    pub tag: FaceTag,
    pub weakly_incident: BTreeSet<usize>,
}

impl PlaneGraph {
    /// Pendent 3-faces of `v`: 3-faces avoiding `v` that contain a 3-vertex
    /// adjacent to `v`.
    pub fn pendent_3_structure(&self, v: usize) -> Pendent {
        let mut out = Pendent::default();
        for &u in self.rotation(v) {
            if self.degree(u) != 3 {
                continue;
            }
            for f in self.three_faces_at(u) {
                if !self.face(f).contains(v) {
                    out.faces.insert(f);
                    out.neighbors.insert(u);
                }
            }
        }
        out
    }

    /// The class of `v` computed from the embedding, without checking
    /// preconditions. Vertices of degree at most 2 are `Other`.
    pub fn vertex_class(&self, v: usize) -> VertexClass {
        let d = self.degree(v);
        let t = self.three_faces_at(v).len();
        let p = if d >= 3 { self.pendent_3_structure(v).faces.len() } else { 0 };
        let tag = match d {
            0..=2 => VertexTag::Other,
            3 => VertexTag::Three,
            4 => match (p, t > 0) {
                (1, true) => VertexTag::K1,
                (1, false) => VertexTag::K2,
                (0, true) => VertexTag::Four3,
                (0, false) => VertexTag::Heavy,
                _ => VertexTag::Other,
            },
            _ => {
                if p == d - 3 {
                    if t > 0 {
                        VertexTag::K1
                    } else {
                        VertexTag::K2
                    }
                } else if p == d - 4 {
                    VertexTag::Heavy
                } else if p + 5 <= d {
                    VertexTag::Special
                } else {
                    VertexTag::Other
                }
            }
        };
        VertexClass { tag, degree: d, incident_3_faces: t, pendent_3_faces: p }
    }

    /// The class of `v`; the graph must be in the class and `d(v) >= 3`.
    pub fn classify_vertex(&self, v: usize) -> Result<VertexClass> {
        self.require_in_class()?;
        if self.degree(v) < 3 {
            return Err(Error::OutOfClass(format!(
                "vertex {v} has degree {}, classes need degree at least 3",
                self.degree(v)
            )));
        }
        Ok(self.vertex_class(v))
    }

    /// Vertices not on `f` lying on a 3-face that shares an edge with `f`.
    pub fn weakly_incident(&self, f: usize) -> BTreeSet<usize> {
        let face = self.face(f);
        let mut out = BTreeSet::new();
        for (a, b) in face.darts() {
            let g = self.face_of_dart(b, a).unwrap();
            if g == f || self.face(g).len() != 3 {
                continue;
            }
            for &w in self.face(g).boundary() {
                if w != a && w != b && !face.contains(w) {
                    out.insert(w);
                }
            }
        }
        out
    }

    /// 5-faces sharing an edge with a 3-face at `v` and avoiding `v`.
    pub fn pendent_5_faces(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for t in self.three_faces_at(v) {
            for (a, b) in self.face(t).darts() {
                let g = self.face_of_dart(b, a).unwrap();
                if g != t && self.face(g).len() == 5 && !self.face(g).contains(v) {
                    out.push(g);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Poor-face test for a 5-face, together with its weakly incident vertices.
    ///
    /// If both poor patterns match, the face is reported as `PoorI`.
    pub fn classify_5_face(&self, f: usize) -> Result<FaceClass> {
        let len = self.face(f).len();
        if len != 5 {
            return Err(Error::NotA5Face { face: f, length: len });
        }
        self.require_in_class()?;
        Ok(FaceClass { tag: self.poor_tag(f), weakly_incident: self.weakly_incident(f) })
    }

    fn poor_tag(&self, f: usize) -> FaceTag {
        let classes: Vec<VertexClass> =
            self.face(f).boundary().iter().map(|&v| self.vertex_class(v)).collect();
        if classes.iter().filter(|c| c.degree == 3).count() != 1 {
            return FaceTag::Plain;
        }
        let rest: Vec<&VertexClass> = classes.iter().filter(|c| c.degree != 3).collect();
        // one slot takes the free 4+-vertex, the other three must match exactly
        let fits = |free: &dyn Fn(&VertexClass) -> bool, n41: usize, n43: usize| {
            (0..4).any(|i| {
                free(rest[i])
                    && rest.iter().enumerate().filter(|&(j, c)| j != i && c.is_4_1()).count() == n41
                    && rest
                        .iter()
                        .enumerate()
                        .filter(|&(j, c)| j != i && c.tag == VertexTag::Four3)
                        .count()
                        == n43
            })
        };
        let minus4 = |c: &VertexClass| c.degree >= 4 && c.pendent_3_faces + 4 == c.degree;
        let minus3 = |c: &VertexClass| c.degree >= 4 && c.pendent_3_faces + 3 == c.degree;
        if fits(&minus4, 2, 1) {
            FaceTag::PoorI
        } else if fits(&minus3, 1, 2) {
            FaceTag::PoorII
        } else {
            FaceTag::Plain
        }
    }
}
