//! Structural predicates for RC1 to RC9.
//!
//! Each matcher lists every occurrence of its pattern with the block `S` and
//! boundary `B` of the corresponding lemma. Among occurrences of one kind the
//! smallest anchor tuple wins.

use std::collections::BTreeSet;

use super::{RcKind, ReducibleMatch};
use crate::error::Result;
use crate::plane::{FaceTag, Pendent, PlaneGraph, VertexTag};

/// What a search looked at before giving up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub vertices: usize,
    pub min_degree: Option<usize>,
    /// Kinds tried, in order, each with the number of occurrences found.
    pub scanned: Vec<(RcKind, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    Found(ReducibleMatch),
    NotFound(ScanReport),
}

impl Search {
    pub fn found(self) -> Option<ReducibleMatch> {
        match self {
            Search::Found(m) => Some(m),
            Search::NotFound(_) => None,
        }
    }
}

/// The first configuration in the order RC1, ..., RC9.
pub fn find_reducible(g: &PlaneGraph) -> Result<Search> {
    find_reducible_among(g, &RcKind::ALL)
}

/// Like [`find_reducible`] restricted to `kinds`, tried in increasing order.
pub fn find_reducible_among(g: &PlaneGraph, kinds: &[RcKind]) -> Result<Search> {
    g.require_in_class()?;
    let ctx = Ctx::new(g);
    let mut kinds = kinds.to_vec();
    kinds.sort_unstable();
    kinds.dedup();
    let mut scanned = Vec::new();
    for kind in kinds {
        let found = ctx.matches(kind);
        scanned.push((kind, found.len()));
        if let Some(m) = found.into_iter().next() {
            return Ok(Search::Found(m));
        }
    }
    Ok(Search::NotFound(ScanReport {
        vertices: g.n(),
        min_degree: (0..g.n()).map(|v| g.degree(v)).min(),
        scanned,
    }))
}

/// Every occurrence of `kind`, by increasing anchor.
pub fn all_matches(g: &PlaneGraph, kind: RcKind) -> Result<Vec<ReducibleMatch>> {
    g.require_in_class()?;
    Ok(Ctx::new(g).matches(kind))
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    pendent: Vec<Pendent>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a PlaneGraph) -> Ctx<'a> {
        let pendent = (0..g.n()).map(|v| g.pendent_3_structure(v)).collect();
        Ctx { g, pendent }
    }

    fn d(&self, v: usize) -> usize {
        self.g.degree(v)
    }

    fn nbrs(&self, v: usize) -> &[usize] {
        self.g.graph().neighbors(v)
    }

    fn on_3_face(&self, v: usize) -> bool {
        !self.g.three_faces_at(v).is_empty()
    }

    fn three_nbrs(&self, v: usize) -> usize {
        self.nbrs(v).iter().filter(|&&u| self.d(u) == 3).count()
    }

    // pendent 3-neighbors of v outside `path`
    fn pendent_nbrs_off(&self, v: usize, path: &[usize]) -> usize {
        self.pendent[v].neighbors.iter().filter(|u| !path.contains(u)).count()
    }

    // vertices of all pendent 3-faces of `centers`
    fn pendent_face_vertices(&self, centers: &[usize]) -> BTreeSet<usize> {
        let mut a = BTreeSet::new();
        for &v in centers {
            for &f in &self.pendent[v].faces {
                a.extend(self.g.face(f).boundary().iter().copied());
            }
        }
        a
    }

    fn matches(&self, kind: RcKind) -> Vec<ReducibleMatch> {
        let mut out = match kind {
            RcKind::Rc1 => self.rc1(),
            RcKind::Rc2 => self.rc2(),
            RcKind::Rc3 => self.rc3(),
            RcKind::Rc4 => self.star(RcKind::Rc4),
            RcKind::Rc5 => self.star(RcKind::Rc5),
            RcKind::Rc6 => self.rc6(),
            RcKind::Rc7 => self.rc7(),
            RcKind::Rc8 => self.rc8(),
            RcKind::Rc9 => self.rc9(),
        };
        out.sort_by(|a, b| a.anchor.cmp(&b.anchor));
        out
    }

    /// A 2⁻-vertex `v`: S = {v}, B = ∅.
    fn rc1(&self) -> Vec<ReducibleMatch> {
        (0..self.g.n())
            .filter(|&v| self.d(v) <= 2)
            .map(|v| ReducibleMatch::new(RcKind::Rc1, vec![v], [v], []))
            .collect()
    }

    /// A 3-face uvw with d(u) = d(v) = 3: S = {u, v, w}, B = {w}.
    fn rc2(&self) -> Vec<ReducibleMatch> {
        let mut out = Vec::new();
        for f in self.g.faces().iter().filter(|f| f.len() == 3) {
            let b = f.boundary();
            for i in 0..3 {
                let (u, v, w) = (b[i], b[(i + 1) % 3], b[(i + 2) % 3]);
                if u < v && self.d(u) == 3 && self.d(v) == 3 {
                    out.push(ReducibleMatch::new(RcKind::Rc2, vec![u, v, w], [u, v, w], [w]));
                }
                if v < u && self.d(u) == 3 && self.d(v) == 3 {
                    out.push(ReducibleMatch::new(RcKind::Rc2, vec![v, u, w], [u, v, w], [w]));
                }
            }
        }
        out
    }

    /// A 5-face v1..v5 with d(v1) = d(v4) = 3, d(v2) = d(v3) = 4, v2 on a
    /// 3-face f1 and v3 on a 3-face f2: S = V(f) ∪ V(f1) ∪ V(f2),
    /// B = {v5} ∪ ((V(f1) ∪ V(f2)) \ V(f)).
    fn rc3(&self) -> Vec<ReducibleMatch> {
        let mut out = Vec::new();
        for face in simple_5_faces(self.g) {
            for vs in orientations(&face) {
                let [v1, v2, v3, v4, v5] = vs;
                if self.d(v1) != 3 || self.d(v4) != 3 || self.d(v2) != 4 || self.d(v3) != 4 {
                    continue;
                }
                let mut tri = BTreeSet::new();
                for x in [v2, v3] {
                    let fs = self.g.three_faces_at(x);
                    if fs.is_empty() {
                        tri.clear();
                        break;
                    }
                    for t in fs {
                        tri.extend(self.g.face(t).boundary().iter().copied());
                    }
                }
                if tri.is_empty() {
                    continue;
                }
                let on_f: BTreeSet<usize> = vs.iter().copied().collect();
                let mut boundary: BTreeSet<usize> = tri.difference(&on_f).copied().collect();
                boundary.insert(v5);
                let block = on_f.union(&tri).copied();
                out.push(ReducibleMatch::new(RcKind::Rc3, vs.to_vec(), block, boundary));
            }
        }
        out
    }

    /// RC4: a 3⁺-vertex v with at least d(v) − 1 neighbors of degree 3.
    /// RC5: a 3⁺-vertex v on a 3-face with at least d(v) − 2 such neighbors.
    /// Both use S = N[v], B = N(v) \ A with A the 3-neighbors of v.
    fn star(&self, kind: RcKind) -> Vec<ReducibleMatch> {
        let slack = if kind == RcKind::Rc4 { 1 } else { 2 };
        (0..self.g.n())
            .filter(|&v| {
                let d = self.d(v);
                d >= 3
                    && self.three_nbrs(v) + slack >= d
                    && (kind == RcKind::Rc4 || self.on_3_face(v))
            })
            .map(|v| {
                let n = self.nbrs(v);
                let boundary = n.iter().copied().filter(|&u| self.d(u) != 3);
                let block = n.iter().copied().chain([v]);
                ReducibleMatch::new(kind, vec![v], block, boundary)
            })
            .collect()
    }

    /// A 3⁺-vertex v with at least d(v) − 2 pendent 3-faces. A is the vertex
    /// set of those faces and A1 its 3-vertices: S = N[v] ∪ A,
    /// B = (N(v) ∪ A) \ A1.
    fn rc6(&self) -> Vec<ReducibleMatch> {
        (0..self.g.n())
            .filter(|&v| self.d(v) >= 3 && self.pendent[v].faces.len() + 2 >= self.d(v))
            .map(|v| {
                let a = self.pendent_face_vertices(&[v]);
                let outer: BTreeSet<usize> = self.nbrs(v).iter().copied().chain(a.iter().copied()).collect();
                let boundary: Vec<usize> = outer.iter().copied().filter(|&x| !self.in_a1(&a, x)).collect();
                ReducibleMatch::new(RcKind::Rc6, vec![v], outer.into_iter().chain([v]), boundary)
            })
            .collect()
    }

    fn in_a1(&self, a: &BTreeSet<usize>, x: usize) -> bool {
        a.contains(&x) && self.d(x) == 3
    }

    // S = ⋃ N(v_i) ∪ A, B = S \ (A1 ∪ V(P)) with A the pendent 3-faces of
    // the vertices of `core`
    fn path_block(&self, kind: RcKind, anchor: Vec<usize>, core: &[usize]) -> ReducibleMatch {
        let a = self.pendent_face_vertices(core);
        let mut block: BTreeSet<usize> = a.clone();
        for &v in core {
            block.extend(self.nbrs(v).iter().copied());
        }
        block.extend(core.iter().copied());
        let boundary: Vec<usize> =
            block.iter().copied().filter(|&x| !core.contains(&x) && !self.in_a1(&a, x)).collect();
        ReducibleMatch::new(kind, anchor, block, boundary)
    }

    fn enough_pendent(&self, v: usize, path: &[usize]) -> bool {
        self.pendent_nbrs_off(v, path) + 3 >= self.d(v)
    }

    /// A path v1v2v3 with d(v1), d(v2) ≥ 3, d(v3) ≥ 4, each v_i with at least
    /// d(v_i) − 3 pendent 3-neighbors off the path. A is the vertex set of
    /// the pendent 3-faces of the path and A1 its 3-vertices:
    /// S = N(v1) ∪ N(v2) ∪ N(v3) ∪ A, B = S \ (A1 ∪ V(P)).
    fn rc7(&self) -> Vec<ReducibleMatch> {
        let mut out = Vec::new();
        for v2 in 0..self.g.n() {
            if self.d(v2) < 3 {
                continue;
            }
            for &v1 in self.nbrs(v2) {
                for &v3 in self.nbrs(v2) {
                    let p = [v1, v2, v3];
                    if v1 == v3 || self.d(v1) < 3 || self.d(v3) < 4 {
                        continue;
                    }
                    if p.iter().all(|&x| self.enough_pendent(x, &p)) {
                        out.push(self.path_block(RcKind::Rc7, p.to_vec(), &p));
                    }
                }
            }
        }
        out
    }

    /// A path v1v2v3v4 with d(v2) = 4 and v2 on a 3-face, and d(v_i) ≥ 3
    /// with at least d(v_i) − 3 pendent 3-neighbors off the path for
    /// i = 1, 3, 4. S and B as for RC7 over the four path vertices.
    fn rc8(&self) -> Vec<ReducibleMatch> {
        let mut out = Vec::new();
        for v2 in 0..self.g.n() {
            if self.d(v2) != 4 || !self.on_3_face(v2) {
                continue;
            }
            for &v1 in self.nbrs(v2) {
                for &v3 in self.nbrs(v2) {
                    if v1 == v3 {
                        continue;
                    }
                    for &v4 in self.nbrs(v3) {
                        let p = [v1, v2, v3, v4];
                        if v4 == v1 || v4 == v2 {
                            continue;
                        }
                        let ends = [v1, v3, v4];
                        if ends.iter().all(|&x| self.d(x) >= 3 && self.enough_pendent(x, &p)) {
                            out.push(self.path_block(RcKind::Rc8, p.to_vec(), &p));
                        }
                    }
                }
            }
        }
        out
    }

    /// A poor 5-face f = v1..v5 weakly incident to no special 5⁺-vertex,
    /// where v1 is its 3-vertex and v1v5u is a 3-face. A is the vertex set of
    /// the pendent 3-faces of V(f) ∪ {u} and A1 its 3-vertices:
    /// S = N(v1) ∪ ... ∪ N(v5) ∪ N(u) ∪ A, B = S \ (V(f) ∪ A1 ∪ {u}).
    fn rc9(&self) -> Vec<ReducibleMatch> {
        let mut out = Vec::new();
        for (fi, face) in self.g.faces().iter().enumerate() {
            if simple_5(face.boundary()).is_none() {
                continue;
            }
            let Ok(class) = self.g.classify_5_face(fi) else { continue };
            if class.tag == FaceTag::Plain
                || class.weakly_incident.iter().any(|&w| self.g.vertex_class(w).tag == VertexTag::Special)
            {
                continue;
            }
            for vs in orientations(face.boundary()) {
                let [v1, _, _, _, v5] = vs;
                if self.d(v1) != 3 {
                    continue;
                }
                let Some(t) = self.g.face_of_dart(v5, v1).filter(|&t| self.g.face(t).len() == 3)
                else {
                    continue;
                };
                let u = *self.g.face(t).boundary().iter().find(|&&x| x != v1 && x != v5).unwrap();
                if vs.contains(&u) {
                    continue;
                }
                let mut core = vs.to_vec();
                core.push(u);
                out.push(self.path_block(RcKind::Rc9, core.clone(), &core));
            }
        }
        out
    }
}

fn simple_5(b: &[usize]) -> Option<[usize; 5]> {
    let arr: [usize; 5] = b.try_into().ok()?;
    let distinct: BTreeSet<usize> = arr.iter().copied().collect();
    (distinct.len() == 5).then_some(arr)
}

fn simple_5_faces(g: &PlaneGraph) -> Vec<[usize; 5]> {
    g.faces().iter().filter_map(|f| simple_5(f.boundary())).collect()
}

/// The ten labelings of a 5-cycle: every start, both directions.
fn orientations(b: &[usize]) -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(10);
    for s in 0..5 {
        out.push(std::array::from_fn(|i| b[(s + i) % 5]));
        out.push(std::array::from_fn(|i| b[(s + 5 - i) % 5]));
    }
    out
}
