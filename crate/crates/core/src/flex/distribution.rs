//! The recursive coloring distribution over a resolution, exactly and by sampling.
//!
//! Blocks are colored from the last step back to the first. Given the
//! coloring `psi` of `G_{i+1}`, block `Q_i = S_i \ B_i` keeps at each vertex
//! the colors not matched to a color of `psi` on a neighbor, and one valid
//! coloring of `Q_i` is chosen uniformly.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Resolution;
use crate::cover::{full_masks, search_order, Coloring, Cover, Solver, WeightedRequest};
use crate::error::{Error, Result};
use crate::plane::PlaneGraph;
use crate::Rational;

/// Color of a vertex outside the domain of a partial coloring.
pub const UNCOLORED: usize = usize::MAX;

const NONE: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistBudget {
    /// Most outcomes held at any level.
    pub outcomes: usize,
    /// Most search states per block extension.
    pub states: u64,
}

impl Default for DistBudget {
    fn default() -> Self {
        DistBudget { outcomes: 1_000_000, states: 10_000_000 }
    }
}

/// A finite distribution over colorings of a vertex subset (`domain`).
/// Colorings are indexed by input vertex and hold [`UNCOLORED`] off the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringDistribution {
    domain: Vec<usize>,
    sizes: Vec<usize>,
    outcomes: Vec<(Coloring, Rational)>,
}

/// The least `Prob[phi(v) = c]` and where it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixation {
    pub probability: Rational,
    pub vertex: usize,
    pub color: usize,
}

impl ColoringDistribution {
    fn new(domain: Vec<usize>, sizes: Vec<usize>, mut outcomes: Vec<(Coloring, Rational)>) -> Self {
        outcomes.sort_by(|a, b| a.0.cmp(&b.0));
        ColoringDistribution { domain, sizes, outcomes }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    /// Outcomes in increasing coloring order, each with positive probability.
    pub fn outcomes(&self) -> &[(Coloring, Rational)] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn probability(&self, phi: &Coloring) -> Rational {
        match self.outcomes.binary_search_by(|(c, _)| c.cmp(phi)) {
            Ok(i) => self.outcomes[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn total(&self) -> Rational {
        self.outcomes.iter().map(|(_, p)| p).sum()
    }

    /// `Prob[phi(v) = c]`.
    pub fn marginal(&self, v: usize, c: usize) -> Rational {
        self.outcomes.iter().filter(|(phi, _)| phi.0[v] == c).map(|(_, p)| p).sum()
    }

    /// All marginals of `v`, one per color of its list.
    pub fn marginals(&self, v: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.sizes[v]];
        for (phi, p) in &self.outcomes {
            out[phi.0[v]] += p;
        }
        out
    }

    /// Minimum of `Prob[phi(v) = c]` over the domain and every list color,
    /// first minimizer in (vertex, color) order.
    pub fn min_fixation_probability(&self) -> Option<Fixation> {
        let mut best: Option<Fixation> = None;
        for &v in &self.domain {
            for (c, p) in self.marginals(v).into_iter().enumerate() {
                if best.as_ref().is_none_or(|b| p < b.probability) {
                    best = Some(Fixation { probability: p, vertex: v, color: c });
                }
            }
        }
        best
    }

    /// `Prob[phi(v) != c for every (v, c) in avoid]`.
    pub fn avoidance_probability(&self, avoid: &[(usize, usize)]) -> Rational {
        self.outcomes
            .iter()
            .filter(|(phi, _)| avoid.iter().all(|&(v, c)| phi.0[v] != c))
            .map(|(_, p)| p)
            .sum()
    }

    /// Expected request value.
    pub fn expectation(&self, w: &WeightedRequest) -> Rational {
        self.outcomes.iter().map(|(phi, p)| p * w.value(phi)).sum()
    }
}

/// Precomputed per-block data shared by the exact recursion and the sampler.
#[derive(Debug, Clone)]
pub struct Plan {
    n: usize,
    sizes: Vec<usize>,
    blocks: Vec<BlockPlan>,
    states: u64,
}

#[derive(Debug, Clone)]
struct BlockPlan {
    q: Vec<usize>,
    solver: Solver,
    full: Vec<u64>,
    // per local vertex: (outside neighbor, color of neighbor -> blocked local color)
    external: Vec<Vec<(usize, Vec<u8>)>>,
    // vertices of G_i
    residual: Vec<usize>,
}

impl Plan {
    pub fn new(g: &PlaneGraph, cover: &Cover, res: &Resolution, states: u64) -> Result<Plan> {
        if cover.graph() != g.graph() || res.n != g.n() {
            return Err(Error::InvalidCover("cover, graph and resolution disagree".into()));
        }
        if cover.sizes().iter().any(|&h| h > 64) {
            return Err(Error::InvalidCover("lists longer than 64 colors".into()));
        }
        let n = g.n();
        let mut blocks = Vec::with_capacity(res.steps.len());
        for step in &res.steps {
            let q = step.removed();
            let mut inside = vec![false; n];
            let mut alive = vec![false; n];
            for &v in &q {
                inside[v] = true;
            }
            for &v in &step.residual {
                alive[v] = true;
            }
            let local = cover.restrict(&q);
            let external = q
                .iter()
                .map(|&y| {
                    g.graph()
                        .neighbors(y)
                        .iter()
                        .filter(|&&x| alive[x] && !inside[x])
                        .map(|&x| {
                            let mut table = vec![NONE; cover.size(x)];
                            for (cx, cy) in cover.matching_between(x, y).unwrap() {
                                table[cx] = cy as u8;
                            }
                            (x, table)
                        })
                        .collect()
                })
                .collect();
            blocks.push(BlockPlan {
                solver: Solver::new(&local, search_order(local.graph())),
                full: full_masks(local.sizes()),
                q,
                external,
                residual: step.residual.clone(),
            });
        }
        Ok(Plan { n, sizes: cover.sizes().to_vec(), blocks, states })
    }

    /// Colorings of block `i` compatible with `psi`, as local color vectors.
    fn extensions(&self, i: usize, psi: &[usize]) -> Result<Vec<Vec<u8>>> {
        let block = &self.blocks[i];
        let mut allowed = block.full.clone();
        for (j, ext) in block.external.iter().enumerate() {
            for (x, table) in ext {
                let blocked = table[psi[*x]];
                if blocked != NONE {
                    allowed[j] &= !(1u64 << blocked);
                }
            }
        }
        let mut out = Vec::new();
        block.solver.for_each(&allowed, self.states, &mut |c| {
            out.push(c.to_vec());
            true
        })?;
        if out.is_empty() {
            return Err(Error::NoExtension { step: i });
        }
        Ok(out)
    }

    /// One draw of the recursive procedure.
    pub fn sample(&self, rng: &mut impl Rng) -> Result<Coloring> {
        let mut phi = vec![UNCOLORED; self.n];
        for i in (0..self.blocks.len()).rev() {
            let mut ext = self.extensions(i, &phi)?;
            let pick = ext.swap_remove(rng.random_range(0..ext.len()));
            for (j, &v) in self.blocks[i].q.iter().enumerate() {
                phi[v] = pick[j] as usize;
            }
        }
        Ok(Coloring(phi))
    }

    /// Draw number `index` of the stream seeded by `seed`.
    pub fn sample_seeded(&self, seed: u64, index: u64) -> Result<Coloring> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        self.sample(&mut rng)
    }

    /// The exact law of [`Plan::sample`]. `on_level(i, d)` sees the law on
    /// `G_i` as soon as it is known, from the last step down to `i = 0`.
    pub fn exact(
        &self,
        outcomes_budget: usize,
        on_level: &mut dyn FnMut(usize, &ColoringDistribution) -> Result<()>,
    ) -> Result<ColoringDistribution> {
        let mut current: Vec<(Vec<usize>, Rational)> = vec![(vec![UNCOLORED; self.n], Rational::one())];
        let mut dist = ColoringDistribution::new(Vec::new(), self.sizes.clone(), Vec::new());
        for i in (0..self.blocks.len()).rev() {
            let mut next = Vec::new();
            for (psi, p) in &current {
                let ext = self.extensions(i, psi)?;
                let share = p / Rational::from_integer(ext.len().into());
                for c in ext {
                    let mut phi = psi.clone();
                    for (j, &v) in self.blocks[i].q.iter().enumerate() {
                        phi[v] = c[j] as usize;
                    }
                    next.push((phi, share.clone()));
                }
                if next.len() > outcomes_budget {
                    return Err(Error::BudgetExceeded {
                        what: "distribution support",
                        needed: next.len() as u128,
                        limit: outcomes_budget as u128,
                    });
                }
            }
            current = next;
            let mut domain = self.blocks[i].residual.clone();
            domain.sort_unstable();
            dist = ColoringDistribution::new(
                domain,
                self.sizes.clone(),
                current.iter().map(|(c, p)| (Coloring(c.clone()), p.clone())).collect(),
            );
            on_level(i, &dist)?;
        }
        if self.blocks.is_empty() {
            dist = ColoringDistribution::new(Vec::new(), self.sizes.clone(), vec![(Coloring(vec![]), Rational::one())]);
        }
        Ok(dist)
    }
}

/// The distribution of the recursive procedure on `g` with cover `cover`.
pub fn exact_distribution(
    g: &PlaneGraph,
    cover: &Cover,
    res: &Resolution,
    budget: &DistBudget,
) -> Result<ColoringDistribution> {
    Plan::new(g, cover, res, budget.states)?.exact(budget.outcomes, &mut |_, _| Ok(()))
}

/// One seeded draw of the recursive procedure.
pub fn sample_coloring(g: &PlaneGraph, cover: &Cover, res: &Resolution, seed: u64) -> Result<Coloring> {
    Plan::new(g, cover, res, DistBudget::default().states)?.sample_seeded(seed, 0)
}
