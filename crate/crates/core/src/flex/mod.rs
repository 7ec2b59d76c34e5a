//! Resolutions, the recursive coloring distribution, and weighted requests.
//!
//! With `p = k^-b` every vertex takes every color of its list with
//! probability at least `epsilon(k, b) = p^(k-1)`, so the best coloring in
//! the support captures at least that share of any request.

mod distribution;
mod resolution;

pub use distribution::{
    exact_distribution, sample_coloring, ColoringDistribution, DistBudget, Fixation, Plan, UNCOLORED,
};
pub use resolution::{build_resolution, build_resolution_from, ForbiddingScope, ResolveOptions, Resolution, Step};

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::cover::{Coloring, Cover, WeightedRequest};
use crate::error::{Error, Result};
use crate::plane::PlaneGraph;
use crate::Rational;

/// `(k^-b)^(k-1)`.
pub fn epsilon(k: usize, b: usize) -> Rational {
    let den: BigInt = BigInt::from(k).pow((b * (k - 1)) as u32);
    Rational::new(BigInt::one(), den)
}

/// `(k^-b)^m`, the avoidance bound for a forbidding set of size `m`.
pub fn avoidance_bound(k: usize, b: usize, m: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(k).pow((b * m) as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatisfyMode {
    /// Argmax over the exact support.
    Exact,
    /// Best of this many seeded draws; the bound is then only statistical.
    Sampled { draws: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Satisfaction {
    pub coloring: Coloring,
    pub value: Rational,
    pub total: Rational,
    pub epsilon: Rational,
    /// Mean value under the exact distribution, when computed.
    pub expectation: Option<Rational>,
    pub mode: SatisfyMode,
}

impl Satisfaction {
    /// `value >= epsilon * total`.
    pub fn meets_bound(&self) -> bool {
        self.value >= &self.epsilon * &self.total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SatisfyOptions {
    pub k: usize,
    pub budget: DistBudget,
    /// Draws for the sampling fallback.
    pub draws: usize,
    pub seed: u64,
}

impl Default for SatisfyOptions {
    fn default() -> Self {
        SatisfyOptions { k: 4, budget: DistBudget::default(), draws: 1000, seed: 0 }
    }
}

/// A coloring worth at least `epsilon(k, b)` of the request's total weight.
///
/// The exact distribution is used when it fits the budget; its best outcome
/// is at least the mean, which is at least the bound. Otherwise the best of
/// `draws` samples is returned.
pub fn satisfy_request(
    g: &PlaneGraph,
    cover: &Cover,
    res: &Resolution,
    w: &WeightedRequest,
    opts: &SatisfyOptions,
) -> Result<Satisfaction> {
    if w.sizes() != cover.sizes() {
        return Err(Error::InvalidRequest("request lists do not match the cover".into()));
    }
    let plan = Plan::new(g, cover, res, opts.budget.states)?;
    let eps = epsilon(opts.k, res.b);
    match plan.exact(opts.budget.outcomes, &mut |_, _| Ok(())) {
        Ok(dist) => {
            let mut best: Option<(&Coloring, Rational)> = None;
            for (phi, _) in dist.outcomes() {
                let v = w.value(phi);
                if best.as_ref().is_none_or(|(_, b)| v > *b) {
                    best = Some((phi, v));
                }
            }
            let (phi, value) = best.expect("a distribution has at least one outcome");
            Ok(Satisfaction {
                coloring: phi.clone(),
                value,
                total: w.total(),
                epsilon: eps,
                expectation: Some(dist.expectation(w)),
                mode: SatisfyMode::Exact,
            })
        }
        Err(Error::BudgetExceeded { .. }) => {
            let mut best: Option<(Coloring, Rational)> = None;
            for i in 0..opts.draws.max(1) {
                let phi = plan.sample_seeded(opts.seed, i as u64)?;
                let v = w.value(&phi);
                if best.as_ref().is_none_or(|(_, b)| v > *b) {
                    best = Some((phi, v));
                }
            }
            let (coloring, value) = best.unwrap();
            Ok(Satisfaction {
                coloring,
                value,
                total: w.total(),
                epsilon: eps,
                expectation: None,
                mode: SatisfyMode::Sampled { draws: opts.draws.max(1) },
            })
        }
        Err(e) => Err(e),
    }
}
