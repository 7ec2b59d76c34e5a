//! Resolutions: peeling a graph by verified boundary-reducible blocks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::plane::PlaneGraph;
use crate::reducible::{
    check_fix, check_forb_with, find_reducible, is_f_forbidding, RcKind, ReducibleMatch, Verdict,
    VerifyOptions,
};

/// Where FORB decides whether a set is forbidding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ForbiddingScope {
    /// The residual graph holding the block.
    #[default]
    Residual,
    /// The input graph.
    Original,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResolveOptions {
    pub verify: VerifyOptions,
    pub scope: ForbiddingScope,
}

/// One block `S_i` with boundary `B_i`, in input vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    /// `None` for a terminal block taken as the whole residual.
    pub kind: Option<RcKind>,
    pub anchor: Vec<usize>,
    pub block: BTreeSet<usize>,
    pub boundary: BTreeSet<usize>,
    /// Vertices of the graph the block was found in.
    pub residual: Vec<usize>,
    pub fix_cases: usize,
    pub forb_cases: usize,
    pub forb_skipped: usize,
    pub covers_checked: u128,
}

impl Step {
    /// `S_i \ B_i`, the vertices this step deletes.
    pub fn removed(&self) -> Vec<usize> {
        self.block.difference(&self.boundary).copied().collect()
    }

    pub fn size(&self) -> usize {
        self.block.len() - self.boundary.len()
    }

    pub fn label(&self) -> String {
        self.kind.map_or_else(|| "terminal".to_string(), |k| k.to_string())
    }
}

/// Graphs `G_0 ⊇ G_1 ⊇ ... ⊇ G_M ⊇ ∅`, where `G_{i+1}` is `G_i` minus the
/// deleted part of step `i`. The last step has an empty boundary and
/// empties the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub n: usize,
    pub steps: Vec<Step>,
    /// Largest `|S_i \ B_i|`.
    pub b: usize,
}

impl Resolution {
    /// Number of non-terminal steps.
    pub fn m(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn terminal(&self) -> Option<&Step> {
        self.steps.last()
    }
}

/// Resolves `g` by repeatedly taking the first configuration in priority order.
pub fn build_resolution(g: &PlaneGraph, opts: &ResolveOptions) -> Result<Resolution> {
    resolve(g, None, opts)
}

/// Like [`build_resolution`] but with a given first block, found in `g`.
pub fn build_resolution_from(
    g: &PlaneGraph,
    first: &ReducibleMatch,
    opts: &ResolveOptions,
) -> Result<Resolution> {
    resolve(g, Some(first), opts)
}

fn resolve(g: &PlaneGraph, first: Option<&ReducibleMatch>, opts: &ResolveOptions) -> Result<Resolution> {
    g.require_in_class()?;
    let mut steps = Vec::new();
    let mut current = g.clone();
    let mut ids: Vec<usize> = (0..g.n()).collect();
    let mut seed = first.cloned();
    while current.n() > 0 {
        let step_no = steps.len();
        let found = match seed.take() {
            Some(m) => Some(m),
            None => find_reducible(&current)?.found(),
        };
        let (kind, m) = match found {
            Some(m) => (Some(m.kind), m),
            None => {
                let all: Vec<usize> = (0..current.n()).collect();
                (None, ReducibleMatch::new(RcKind::Rc1, all.clone(), all, []))
            }
        };
        let (fix, forb) = match (kind, verify_in(&current, &ids, g, &m, opts)) {
            (_, Ok((fix, forb))) if fix.holds && forb.holds => (fix, forb),
            (Some(k), Ok(_)) => {
                return Err(Error::VerificationFailed { step: step_no, kind: k.to_string() })
            }
            (None, Ok(_) | Err(Error::BudgetExceeded { .. })) => return Err(Error::Stuck { residual: ids }),
            (_, Err(e)) => return Err(e),
        };
        let removed_local: Vec<usize> = m.interior();
        steps.push(Step {
            kind,
            anchor: m.anchor.iter().map(|&v| ids[v]).collect(),
            block: m.block.iter().map(|&v| ids[v]).collect(),
            boundary: m.boundary.iter().map(|&v| ids[v]).collect(),
            residual: ids.clone(),
            fix_cases: fix.cases,
            forb_cases: forb.cases,
            forb_skipped: forb.skipped,
            covers_checked: fix.covers_checked + forb.covers_checked,
        });
        let (next, kept) = current.remove_vertices(&removed_local);
        ids = kept.iter().map(|&v| ids[v]).collect();
        current = next;
    }
    let b = steps.iter().map(Step::size).max().unwrap_or(0);
    Ok(Resolution { n: g.n(), steps, b })
}

fn verify_in(
    current: &PlaneGraph,
    ids: &[usize],
    original: &PlaneGraph,
    m: &ReducibleMatch,
    opts: &ResolveOptions,
) -> Result<(Verdict, Verdict)> {
    let fix = check_fix(current, &m.block, &m.boundary, &opts.verify)?;
    let forb = match opts.scope {
        ForbiddingScope::Residual => {
            check_forb_with(current, &m.block, &m.boundary, &opts.verify, &|set: &[usize]| {
                is_f_forbidding(current, set)
            })?
        }
        ForbiddingScope::Original => {
            check_forb_with(current, &m.block, &m.boundary, &opts.verify, &|set: &[usize]| {
                let named: Vec<usize> = set.iter().map(|&v| ids[v]).collect();
                is_f_forbidding(original, &named)
            })?
        }
    };
    Ok((fix, forb))
}
