//! Boundary-reducible blocks: forbidding sets, the FIX and FORB clauses, and
//! the nine configurations RC1 to RC9.
//!
//! A block is a vertex set `S` with a boundary `B`. After `B` is colored, a
//! vertex `v` of `S \ B` keeps `k - d_G(v) + d_{S-B}(v)` colors. FIX asks that
//! the block stays colorable with any one of its lists cut to a single color;
//! FORB asks the same after removing one color at each vertex of a forbidding
//! set of at most `k - 2` vertices. Both clauses are decided over a complete
//! family of covers (see [`crate::cover::CoverFamily`]).

mod matchers;

pub use matchers::{all_matches, find_reducible, find_reducible_among, ScanReport, Search};

use std::collections::BTreeSet;
use std::fmt;

use crate::cover::{write_cover, Cover, CoverFamily, FamilyKind, Matching};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RcKind {
    Rc1,
    Rc2,
    Rc3,
    Rc4,
    Rc5,
    Rc6,
    Rc7,
    Rc8,
    Rc9,
}

impl RcKind {
    pub const ALL: [RcKind; 9] = [
        RcKind::Rc1,
        RcKind::Rc2,
        RcKind::Rc3,
        RcKind::Rc4,
        RcKind::Rc5,
        RcKind::Rc6,
        RcKind::Rc7,
        RcKind::Rc8,
        RcKind::Rc9,
    ];

    pub fn parse(s: &str) -> Option<RcKind> {
        RcKind::ALL.into_iter().find(|k| k.to_string().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for RcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RC{}", *self as usize + 1)
    }
}

/// A located configuration with the block and boundary of its lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleMatch {
    pub kind: RcKind,
    /// The pattern's key vertices in the order used for tie-breaking
    /// (e.g. the path, or the face starting at its 3-vertex).
    pub anchor: Vec<usize>,
    pub block: BTreeSet<usize>,
    pub boundary: BTreeSet<usize>,
    /// Which graph of a resolution the match was found in; 0 is the input.
    pub context: usize,
}

impl ReducibleMatch {
    pub fn new(
        kind: RcKind,
        anchor: Vec<usize>,
        block: impl IntoIterator<Item = usize>,
        boundary: impl IntoIterator<Item = usize>,
    ) -> ReducibleMatch {
        ReducibleMatch {
            kind,
            anchor,
            block: block.into_iter().collect(),
            boundary: boundary.into_iter().collect(),
            context: 0,
        }
    }

    /// `S \ B` in increasing order.
    pub fn interior(&self) -> Vec<usize> {
        self.block.difference(&self.boundary).copied().collect()
    }

    /// `|S \ B|`
    pub fn block_size(&self) -> usize {
        self.block.len() - self.boundary.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Most covers examined for one (FIX vertex or FORB set) case.
    pub covers: u128,
    /// Most partial states of one coloring search.
    pub coloring_states: u64,
    /// Largest `|S \ B|` accepted.
    pub max_block: usize,
    /// Largest list size accepted.
    pub max_list: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { covers: 100_000_000, coloring_states: 10_000_000, max_block: 12, max_list: 4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub k: usize,
    pub family: FamilyKind,
    /// Drop vertices whose list is longer than their degree before
    /// enumerating; they can always be colored last.
    pub peel: bool,
    pub budgets: Budgets,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { k: 4, family: FamilyKind::Canonical, peel: true, budgets: Budgets::default() }
    }
}

/// `k - d_G(v) + d_{S-B}(v)` for each `v` of `S \ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeFunction {
    pub vertices: Vec<usize>,
    pub sizes: Vec<i64>,
}

pub fn size_function<G: AsRef<SimpleGraph>>(
    g: G,
    block: &BTreeSet<usize>,
    boundary: &BTreeSet<usize>,
    k: usize,
) -> SizeFunction {
    let g = g.as_ref();
    let vertices: Vec<usize> = block.difference(boundary).copied().collect();
    let inside: BTreeSet<usize> = vertices.iter().copied().collect();
    let sizes = vertices
        .iter()
        .map(|&v| {
            let d_in = g.neighbors(v).iter().filter(|u| inside.contains(u)).count();
            k as i64 - g.degree(v) as i64 + d_in as i64
        })
        .collect();
    SizeFunction { vertices, sizes }
}

/// Whether `g` plus a new vertex adjacent to exactly `set` still has no
/// 4-cycle and no two triangles sharing a vertex.
pub fn is_f_forbidding<G: AsRef<SimpleGraph>>(g: G, set: &[usize]) -> bool {
    g.as_ref().with_apex(set).class_report().in_class()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    /// FIX with the list of this vertex cut to one color.
    Fix(usize),
    /// FORB with one color removed at each vertex of the set.
    Forb(Vec<usize>),
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Fix(v) => write!(f, "FIX at {v}"),
            Clause::Forb(set) => {
                write!(f, "FORB with I = {{")?;
                for (i, v) in set.iter().enumerate() {
                    write!(f, "{}{v}", if i > 0 { " " } else { "" })?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// A failing case of FIX or FORB.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub clause: Clause,
    /// Graph vertex of each local index of the cover.
    pub vertices: Vec<usize>,
    pub sizes: Vec<i64>,
    /// A cover with no coloring, or `None` when some list is empty.
    pub cover: Option<Cover>,
}

impl Counterexample {
    /// The blocking cover in `.cover` format, in graph vertex numbering.
    pub fn cover_text(&self) -> Option<String> {
        self.cover.as_ref().map(|c| write_cover(c, Some(&self.vertices)))
    }

    pub fn describe(&self) -> String {
        match &self.cover {
            Some(_) => format!("{}: a cover with no coloring", self.clause),
            None => {
                let i = self.sizes.iter().position(|&s| s <= 0).unwrap();
                format!("{}: empty list at {}", self.clause, self.vertices[i])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Cases examined: vertices for FIX, forbidding sets for FORB.
    pub cases: usize,
    /// Sets of size at most `k - 2` skipped as not forbidding.
    pub skipped: usize,
    pub covers_checked: u128,
    pub counterexample: Option<Counterexample>,
}

/// FIX for the block `block` with boundary `boundary`.
pub fn check_fix<G: AsRef<SimpleGraph>>(
    g: G,
    block: &BTreeSet<usize>,
    boundary: &BTreeSet<usize>,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    let g = g.as_ref();
    let sf = prepare(g, block, boundary, opts)?;
    let h = g.induced(&sf.vertices);
    let mut verdict = Verdict { holds: true, cases: 0, skipped: 0, covers_checked: 0, counterexample: None };
    for i in 0..sf.vertices.len() {
        let mut sizes = sf.sizes.clone();
        sizes[i] = 1;
        verdict.cases += 1;
        let (checked, bad) = quantify(&h, &sizes, opts)?;
        verdict.covers_checked += checked;
        if let Some(cover) = bad {
            verdict.holds = false;
            verdict.counterexample = Some(Counterexample {
                clause: Clause::Fix(sf.vertices[i]),
                vertices: sf.vertices.clone(),
                sizes,
                cover,
            });
            break;
        }
    }
    Ok(verdict)
}

/// FORB with forbidding sets decided in `g`.
pub fn check_forb<G: AsRef<SimpleGraph>>(
    g: G,
    block: &BTreeSet<usize>,
    boundary: &BTreeSet<usize>,
    opts: &VerifyOptions,
) -> Result<Verdict> {
    let g = g.as_ref();
    check_forb_with(g, block, boundary, opts, &|set: &[usize]| is_f_forbidding(g, set))
}

/// FORB with a caller-supplied forbidding test, for deciding forbidding sets
/// in a graph other than the one holding the block.
pub fn check_forb_with<G: AsRef<SimpleGraph>>(
    g: G,
    block: &BTreeSet<usize>,
    boundary: &BTreeSet<usize>,
    opts: &VerifyOptions,
    forbidding: &dyn Fn(&[usize]) -> bool,
) -> Result<Verdict> {
    let g = g.as_ref();
    let sf = prepare(g, block, boundary, opts)?;
    let h = g.induced(&sf.vertices);
    let mut verdict = Verdict { holds: true, cases: 0, skipped: 0, covers_checked: 0, counterexample: None };
    for set in subsets_up_to(sf.vertices.len(), opts.k.saturating_sub(2)) {
        let named: Vec<usize> = set.iter().map(|&i| sf.vertices[i]).collect();
        if !forbidding(&named) {
            verdict.skipped += 1;
            continue;
        }
        verdict.cases += 1;
        let mut sizes = sf.sizes.clone();
        for &i in &set {
            sizes[i] -= 1;
        }
        let (checked, bad) = quantify(&h, &sizes, opts)?;
        verdict.covers_checked += checked;
        if let Some(cover) = bad {
            verdict.holds = false;
            verdict.counterexample = Some(Counterexample {
                clause: Clause::Forb(named),
                vertices: sf.vertices.clone(),
                sizes,
                cover,
            });
            break;
        }
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchVerdict {
    pub fix: Verdict,
    pub forb: Verdict,
}

impl MatchVerdict {
    pub fn holds(&self) -> bool {
        self.fix.holds && self.forb.holds
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.fix.counterexample.as_ref().or(self.forb.counterexample.as_ref())
    }
}

/// FIX and FORB for a match, with forbidding sets decided in `g`.
pub fn verify_match<G: AsRef<SimpleGraph>>(
    g: G,
    m: &ReducibleMatch,
    opts: &VerifyOptions,
) -> Result<MatchVerdict> {
    let g = g.as_ref();
    Ok(MatchVerdict {
        fix: check_fix(g, &m.block, &m.boundary, opts)?,
        forb: check_forb(g, &m.block, &m.boundary, opts)?,
    })
}

fn prepare(
    g: &SimpleGraph,
    block: &BTreeSet<usize>,
    boundary: &BTreeSet<usize>,
    opts: &VerifyOptions,
) -> Result<SizeFunction> {
    if let Some(&v) = block.iter().chain(boundary).find(|&&v| v >= g.n()) {
        return Err(Error::InvalidBlock(format!("vertex {v} is not in the graph")));
    }
    if !boundary.is_subset(block) || boundary.len() == block.len() {
        return Err(Error::InvalidBlock("the boundary must be a proper subset of the block".into()));
    }
    let sf = size_function(g, block, boundary, opts.k);
    let b = &opts.budgets;
    if sf.vertices.len() > b.max_block {
        return Err(Error::BudgetExceeded {
            what: "block size",
            needed: sf.vertices.len() as u128,
            limit: b.max_block as u128,
        });
    }
    if let Some(&s) = sf.sizes.iter().find(|&&s| s > b.max_list as i64) {
        return Err(Error::BudgetExceeded { what: "list size", needed: s as u128, limit: b.max_list as u128 });
    }
    Ok(sf)
}

// Number of covers examined and, on failure, the blocking cover (None when
// a list is empty).
fn quantify(h: &SimpleGraph, sizes: &[i64], opts: &VerifyOptions) -> Result<(u128, Option<Option<Cover>>)> {
    if sizes.iter().any(|&s| s <= 0) {
        return Ok((0, Some(None)));
    }
    let sizes: Vec<usize> = sizes.iter().map(|&s| s as usize).collect();
    let core: Vec<usize> = if opts.peel { peel(h, &sizes) } else { (0..h.n()).collect() };
    let core_graph = h.induced(&core);
    let core_sizes: Vec<usize> = core.iter().map(|&v| sizes[v]).collect();
    let family = CoverFamily::new(&core_graph, &core_sizes, opts.family)?;
    if family.count() > opts.budgets.covers {
        return Err(Error::BudgetExceeded {
            what: "cover family",
            needed: family.count(),
            limit: opts.budgets.covers,
        });
    }
    let (checked, bad) = family.first_uncolorable(opts.budgets.coloring_states)?;
    let Some(bad) = bad else {
        return Ok((checked, None));
    };
    // lift to the whole block; peeled edges carry no conflicts
    let matchings: Vec<((usize, usize), Matching)> = bad
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| ((core[u], core[v]), bad.matching(e).clone()))
        .collect();
    let cover = Cover::new(h, sizes, matchings)?;
    Ok((checked, Some(Some(cover))))
}

// Repeatedly drops vertices with more colors than remaining neighbors.
fn peel(h: &SimpleGraph, sizes: &[usize]) -> Vec<usize> {
    let mut alive = vec![true; h.n()];
    let mut deg: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..h.n() {
            if alive[v] && sizes[v] > deg[v] {
                alive[v] = false;
                changed = true;
                for &u in h.neighbors(v) {
                    deg[u] -= 1;
                }
            }
        }
    }
    (0..h.n()).filter(|&v| alive[v]).collect()
}

/// Index subsets of `0..n` of size at most `max`, by size then lexicographically.
fn subsets_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max.min(n) {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&x: &usize| x + 1);
            for x in start..n {
                let mut t = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
