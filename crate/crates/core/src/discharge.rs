//! Initial charges, rules R1 to R4, and the final-charge audit.
//!
//! Vertices start at `d(v) - 2` and faces at `-2`. All rules move charge
//! from a vertex to a face and are evaluated on the classes of the input
//! graph, so they apply simultaneously.

use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::Result;
use crate::plane::{PlaneGraph, VertexClass, VertexTag};

pub type Charge = Rational64;

fn q(n: i64, d: i64) -> Charge {
    Charge::new(n, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Face(x) => write!(f, "face {x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", *self as usize + 1)
    }
}

/// Charge moved from a vertex to a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: Charge,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertex: Vec<Charge>,
    pub face: Vec<Charge>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn total(&self) -> Charge {
        self.vertex.iter().chain(&self.face).sum()
    }

    pub fn charge(&self, x: Element) -> Charge {
        match x {
            Element::Vertex(v) => self.vertex[v],
            Element::Face(f) => self.face[f],
        }
    }

    pub fn sent_by(&self, v: usize) -> Charge {
        self.transfers.iter().filter(|t| t.from == v).map(|t| t.amount).sum()
    }

    pub fn received_by(&self, f: usize) -> Charge {
        self.transfers.iter().filter(|t| t.to == f).map(|t| t.amount).sum()
    }
}

/// `d(v) - 2` on vertices, `-2` on faces.
pub fn initial_charges(g: &PlaneGraph) -> Result<ChargeLedger> {
    g.require_connected()?;
    let ledger = ChargeLedger {
        vertex: (0..g.n()).map(|v| Charge::from_integer(g.degree(v) as i64 - 2)).collect(),
        face: vec![Charge::from_integer(-2); g.faces().len()],
        transfers: Vec::new(),
    };
    assert_eq!(ledger.total(), Charge::from_integer(-4), "Euler's formula on a connected plane graph");
    Ok(ledger)
}

/// The amount a 5⁺-face gets from an incident vertex under R4.
pub fn r4_amount(c: &VertexClass) -> Option<Charge> {
    match c.tag {
        VertexTag::K1 if c.degree == 4 => Some(q(1, 3)),
        VertexTag::K1 => Some(q(5, 12)),
        VertexTag::K2 if c.degree == 4 => Some(q(5, 12)),
        VertexTag::K2 => Some(q(7, 15)),
        VertexTag::Four3 => Some(q(4, 9)),
        VertexTag::Heavy => Some(q(1, 2)),
        VertexTag::Special => Some(q(5, 9)),
        VertexTag::Three | VertexTag::Other => None,
    }
}

/// Applies R1 to R4 once to `start`, using the classes of `g`.
pub fn apply_rules(g: &PlaneGraph, start: &ChargeLedger) -> Result<ChargeLedger> {
    g.require_in_class()?;
    let classes: Vec<VertexClass> = (0..g.n()).map(|v| g.vertex_class(v)).collect();
    let mut transfers = Vec::new();
    for (v, c) in classes.iter().enumerate() {
        // R1
        if c.degree == 3 {
            for &f in g.incident_faces(v) {
                transfers.push(Transfer { from: v, to: f, amount: q(1, 3), rule: Rule::R1 });
            }
        }
        // R2
        if c.degree >= 4 {
            for f in g.three_faces_at(v) {
                transfers.push(Transfer { from: v, to: f, amount: q(2, 3), rule: Rule::R2 });
            }
            for &f in &g.pendent_3_structure(v).faces {
                transfers.push(Transfer { from: v, to: f, amount: q(1, 3), rule: Rule::R2 });
            }
        }
        // R3
        if c.tag == VertexTag::Special {
            for f in g.pendent_5_faces(v) {
                transfers.push(Transfer { from: v, to: f, amount: q(1, 9), rule: Rule::R3 });
            }
        }
    }
    // R4, once per occurrence on the boundary
    for (f, face) in g.faces().iter().enumerate() {
        if face.len() < 5 {
            continue;
        }
        for &v in face.boundary() {
            if let Some(amount) = r4_amount(&classes[v]) {
                transfers.push(Transfer { from: v, to: f, amount, rule: Rule::R4 });
            }
        }
    }
    let mut out = start.clone();
    for t in &transfers {
        out.vertex[t.from] -= t.amount;
        out.face[t.to] += t.amount;
    }
    out.transfers.extend(transfers);
    Ok(out)
}

/// Which branch of the face analysis covers a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceCase {
    ThreeFace,
    SixPlus,
    /// Two adjacent 3-vertices.
    Case1_1,
    /// 3-vertices v1, v3 and neither v1v2 nor v2v3 on a 3-face.
    Case1_2_1,
    /// 3-vertices v1, v3 and one of v1v2, v2v3 on a 3-face.
    Case1_2_2,
    /// One 3-vertex and at least two rich vertices.
    Case2Rich,
    Case2_1,
    Case2_2,
    Case2_3,
    /// No 3-vertex.
    Case3,
    /// Faces the analysis does not treat (4-faces, boundaries with repeats).
    Other,
}

impl FaceCase {
    pub fn name(self) -> &'static str {
        match self {
            FaceCase::ThreeFace => "3-face",
            FaceCase::SixPlus => "6+-face",
            FaceCase::Case1_1 => "5-face case 1.1",
            FaceCase::Case1_2_1 => "5-face case 1.2.1",
            FaceCase::Case1_2_2 => "5-face case 1.2.2",
            FaceCase::Case2Rich => "5-face case 2 (two rich)",
            FaceCase::Case2_1 => "5-face case 2.1",
            FaceCase::Case2_2 => "5-face case 2.2",
            FaceCase::Case2_3 => "5-face case 2.3",
            FaceCase::Case3 => "5-face case 3",
            FaceCase::Other => "other",
        }
    }
}

/// Places `f` in the case analysis.
pub fn face_case(g: &PlaneGraph, f: usize) -> FaceCase {
    let b = g.face(f).boundary();
    let distinct = b.iter().collect::<std::collections::BTreeSet<_>>().len() == b.len();
    match b.len() {
        3 if distinct => return FaceCase::ThreeFace,
        l if l >= 6 => return FaceCase::SixPlus,
        5 if distinct => {}
        _ => return FaceCase::Other,
    }
    let three: Vec<usize> = (0..5).filter(|&i| g.degree(b[i]) == 3).collect();
    match three.len() {
        0 => FaceCase::Case3,
        1 => {
            let others: Vec<usize> = (0..5).filter(|&i| i != three[0]).map(|i| b[i]).collect();
            let rich = others.iter().filter(|&&v| g.vertex_class(v).is_rich()).count();
            let big = others.iter().filter(|&&v| g.degree(v) >= 5).count();
            match (rich, big) {
                (2.., _) => FaceCase::Case2Rich,
                (_, 2..) => FaceCase::Case2_1,
                (_, 1) => FaceCase::Case2_2,
                _ => FaceCase::Case2_3,
            }
        }
        _ => {
            let adjacent = three.iter().any(|&i| three.contains(&((i + 1) % 5)));
            if adjacent {
                return FaceCase::Case1_1;
            }
            // v1 = b[i], v2 = b[i + 1], v3 = b[i + 2]
            let i = three[0];
            let i = if three.contains(&((i + 2) % 5)) { i } else { three[1] };
            let on_tri = |x: usize, y: usize| {
                g.face_of_dart(y, x).is_some_and(|t| t != f && g.face(t).len() == 3)
            };
            let (v1, v2, v3) = (b[i], b[(i + 1) % 5], b[(i + 2) % 5]);
            if on_tri(v1, v2) || on_tri(v2, v3) {
                FaceCase::Case1_2_2
            } else {
                FaceCase::Case1_2_1
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRow {
    pub vertex: usize,
    pub class: String,
    pub initial: Charge,
    pub sent: Charge,
    pub final_charge: Charge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRow {
    pub face: usize,
    pub boundary: Vec<usize>,
    pub case: FaceCase,
    pub initial: Charge,
    pub received: Charge,
    pub final_charge: Charge,
    /// Boundary vertices of degree at least 4 with at most `d - 4` pendent 3-faces.
    pub k_set: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Audit {
    pub initial: ChargeLedger,
    pub ledger: ChargeLedger,
    pub vertices: Vec<VertexRow>,
    pub faces: Vec<FaceRow>,
    pub negatives: Vec<Element>,
    pub warnings: Vec<String>,
}

impl Audit {
    /// Minimum degree at least 3, the setting of the face and vertex lemmas.
    pub fn lemma_grade(&self) -> bool {
        self.warnings.is_empty()
    }

    pub fn conserved(&self) -> bool {
        self.initial.total() == self.ledger.total()
    }
}

/// Initial charges, one application of the rules, and a per-element report.
pub fn audit(g: &PlaneGraph) -> Result<Audit> {
    g.require_in_class()?;
    let initial = initial_charges(g)?;
    let ledger = apply_rules(g, &initial)?;
    let mut warnings = Vec::new();
    let low: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) < 3).collect();
    if !low.is_empty() {
        warnings.push(format!(
            "{} vertices of degree below 3 (excluded by RC1), first {}",
            low.len(),
            low[0]
        ));
    }
    let vertices = (0..g.n())
        .map(|v| VertexRow {
            vertex: v,
            class: g.vertex_class(v).label(),
            initial: initial.vertex[v],
            sent: ledger.sent_by(v),
            final_charge: ledger.vertex[v],
        })
        .collect::<Vec<_>>();
    let faces = (0..g.faces().len())
        .map(|f| FaceRow {
            face: f,
            boundary: g.face(f).boundary().to_vec(),
            case: face_case(g, f),
            initial: initial.face[f],
            received: ledger.received_by(f),
            final_charge: ledger.face[f],
            k_set: k_set(g, f),
        })
        .collect::<Vec<_>>();
    let negatives = vertices
        .iter()
        .filter(|r| r.final_charge < Charge::zero())
        .map(|r| Element::Vertex(r.vertex))
        .chain(faces.iter().filter(|r| r.final_charge < Charge::zero()).map(|r| Element::Face(r.face)))
        .collect();
    assert_eq!(initial.total(), ledger.total(), "every transfer moves charge");
    Ok(Audit { initial, ledger, vertices, faces, negatives, warnings })
}

fn k_set(g: &PlaneGraph, f: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g
        .face(f)
        .boundary()
        .iter()
        .copied()
        .filter(|&v| {
            let c = g.vertex_class(v);
            c.degree >= 4 && c.pendent_3_faces + 4 <= c.degree
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
