//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary so the lines show up under `cargo test` without
//! `--nocapture`. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::oracle::{brute_colorings, naive_in_class, random_drawn_graph, random_rotation_system, PairLaw};
use common::{all_fixture_names, fixture, labels};
use dpflex::cover::FamilyKind;
use dpflex::discharge::{apply_rules, audit, face_case, initial_charges, Charge, FaceCase};
use dpflex::flex::{
    avoidance_bound, build_resolution, build_resolution_from, epsilon, exact_distribution, satisfy_request,
    DistBudget, Plan, ResolveOptions, Resolution, SatisfyMode, SatisfyOptions,
};
use dpflex::reducible::{check_fix, check_forb, find_reducible_among, is_f_forbidding, Counterexample, Search};
use dpflex::{Cover, PlaneGraph, RcKind, Rational, ReducibleMatch, VerifyOptions, WeightedRequest};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("euler-charge-identity", euler_charge_identity),
        ("reducibility-suite", reducibility_suite),
        ("negative-controls", negative_controls),
        ("flexibility-guarantee", flexibility_guarantee),
        ("avoidance-guarantee", avoidance_guarantee),
        ("weighted-request-realization", weighted_requests),
        ("oracle-equivalence", oracle_equivalence),
        ("class-detector-vs-brute-force", class_detector),
        ("discharging-branch-arithmetic", discharging_branches),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn connected_fixtures(lo: usize, hi: usize) -> Vec<(String, PlaneGraph)> {
    all_fixture_names()
        .into_iter()
        .map(|n| {
            let g = fixture(&n);
            (n, g)
        })
        .filter(|(_, g)| g.is_connected() && (lo..=hi).contains(&g.n()))
        .collect()
}

fn euler_charge_identity() -> Outcome {
    let mut names = Vec::new();
    for (name, g) in connected_fixtures(4, 40) {
        let (v, e, f) = (g.n() as i64, g.edge_count() as i64, g.faces().len() as i64);
        ensure(v - e + f == 2, || format!("{name}: V - E + F = {}", v - e + f))?;
        let start = initial_charges(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure(start.total() == Charge::from_integer(-4), || format!("{name}: initial sum {}", start.total()))?;
        if g.in_class() {
            let end = apply_rules(&g, &start).map_err(|e| format!("{name}: {e}"))?;
            ensure(end.total() == Charge::from_integer(-4), || format!("{name}: final sum {}", end.total()))?;
        }
        names.push(name);
    }
    ensure(names.len() >= 10, || format!("only {} fixtures", names.len()))?;
    Ok(format!("{} fixtures, initial and final sums -4", names.len()))
}

fn locate(name: &str, kind: RcKind) -> Result<(PlaneGraph, ReducibleMatch), String> {
    let g = fixture(name);
    match find_reducible_among(&g, &[kind]).map_err(|e| format!("{name}: {e}"))? {
        Search::Found(m) => Ok((g, m)),
        Search::NotFound(_) => Err(format!("{name}: no {kind}")),
    }
}

fn reducibility_suite() -> Outcome {
    let cases = [
        ("c5", RcKind::Rc1),
        ("fig1_rc2", RcKind::Rc2),
        ("fig1_rc3", RcKind::Rc3),
        ("fig1_rc4", RcKind::Rc4),
        ("fig1_rc5", RcKind::Rc5),
        ("fig1_rc6", RcKind::Rc6),
        ("fig1_rc7", RcKind::Rc7),
        ("fig1_rc8", RcKind::Rc8),
        ("fig3_poor_i", RcKind::Rc9),
        ("fig3_poor_ii", RcKind::Rc9),
    ];
    let unpeeled = VerifyOptions { peel: false, ..VerifyOptions::default() };
    let mut sizes = Vec::new();
    let mut covers = 0u128;
    for (name, kind) in cases {
        let (g, m) = locate(name, kind)?;
        for opts in [VerifyOptions::default(), unpeeled] {
            let fix = check_fix(&g, &m.block, &m.boundary, &opts).map_err(|e| format!("{name}: {e}"))?;
            let forb = check_forb(&g, &m.block, &m.boundary, &opts).map_err(|e| format!("{name}: {e}"))?;
            let why = |c: &Option<Counterexample>| c.as_ref().map(|c| c.describe()).unwrap_or_default();
            ensure(fix.holds, || format!("{name} {kind}: {}", why(&fix.counterexample)))?;
            ensure(forb.holds, || format!("{name} {kind}: {}", why(&forb.counterexample)))?;
            covers += fix.covers_checked + forb.covers_checked;
        }
        sizes.push(format!("{kind}={}", m.block_size()));
    }
    // the smallest blocks also against every partial-injection cover
    for (name, kind) in [("c5", RcKind::Rc1), ("fig1_rc2", RcKind::Rc2)] {
        let (g, m) = locate(name, kind)?;
        let all = VerifyOptions { family: FamilyKind::All, peel: false, ..VerifyOptions::default() };
        let v = dpflex::verify_match(&g, &m, &all).map_err(|e| format!("{name}: {e}"))?;
        ensure(v.holds(), || format!("{name} {kind} fails over all covers"))?;
    }
    Ok(format!("all nine hold, |S\\B|: {}; {covers} covers", sizes.join(" ")))
}

/// Independent check that a counterexample cover admits no coloring.
fn blocking(c: &Counterexample) -> Result<(), String> {
    let cover = c.cover.as_ref().ok_or("counterexample without a cover")?;
    ensure(brute_colorings(cover).is_empty(), || "counterexample cover is colorable".into())
}

fn negative_controls() -> Outcome {
    let g = fixture("rc2_degree4");
    let l = labels("rc2_degree4");
    let (u, v, w) = (l["u"], l["v"], l["w"]);
    ensure(g.degree(u) == 4 && g.degree(v) == 4, || "rc2_degree4 degrees".into())?;
    let block: BTreeSet<usize> = [u, v, w].into();
    let boundary: BTreeSet<usize> = [w].into();
    let opts = VerifyOptions::default();
    let fix = check_fix(&g, &block, &boundary, &opts).map_err(|e| e.to_string())?;
    ensure(!fix.holds, || "RC2 with degree-4 triangle vertices passed FIX".into())?;
    let ce = fix.counterexample.unwrap();
    blocking(&ce)?;
    let first = ce.describe();

    // edge uv with three leaves at each end: both lists shrink to one color
    let mut rot = vec![vec![1, 2, 3, 4], vec![0, 5, 6, 7]];
    rot.extend([0, 0, 0, 1, 1, 1].map(|x| vec![x]));
    let h = PlaneGraph::new(rot).unwrap();
    let block: BTreeSet<usize> = [0, 1].into();
    let fix = check_fix(&h, &block, &BTreeSet::new(), &opts).map_err(|e| e.to_string())?;
    let forb = check_forb(&h, &block, &BTreeSet::new(), &opts).map_err(|e| e.to_string())?;
    ensure(!fix.holds && !forb.holds, || "forced-singleton edge passed".into())?;
    let ce = fix.counterexample.unwrap();
    ensure(ce.sizes == vec![1, 1], || format!("sizes {:?}", ce.sizes))?;
    blocking(&ce)?;
    blocking(forb.counterexample.as_ref().unwrap())?;
    Ok(format!("rc2_degree4 {first}; singleton edge {}", ce.describe()))
}

/// The resolutions the flexibility criteria run on.
fn flex_cases() -> Vec<(&'static str, PlaneGraph, Resolution)> {
    let mut out = Vec::new();
    for name in ["c5", "p4"] {
        let g = fixture(name);
        let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
        out.push((name, g, res));
    }
    let (g, m) = locate("fig1_rc2", RcKind::Rc2).unwrap();
    let res = build_resolution_from(&g, &m, &ResolveOptions::default()).unwrap();
    out.push(("fig1_rc2", g, res));
    out
}

fn flexibility_guarantee() -> Outcome {
    let mut parts = Vec::new();
    for (name, g, res) in flex_cases() {
        let cover = Cover::identity(g.graph(), 4);
        let d = exact_distribution(&g, &cover, &res, &DistBudget::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.total() == Rational::from_integer(1.into()), || format!("{name}: mass {}", d.total()))?;
        let fx = d.min_fixation_probability().ok_or(format!("{name}: empty"))?;
        let eps = epsilon(4, res.b);
        ensure(fx.probability >= eps, || format!("{name}: {} < {eps} at ({}, {})", fx.probability, fx.vertex, fx.color))?;
        parts.push(format!("{name} b={} min {} >= {eps}", res.b, fx.probability));
    }
    Ok(parts.join("; "))
}

fn avoidance_guarantee() -> Outcome {
    let mut parts = Vec::new();
    for (name, g, res) in flex_cases() {
        let cover = Cover::identity(g.graph(), 4);
        let plan = Plan::new(&g, &cover, &res, DistBudget::default().states).map_err(|e| e.to_string())?;
        let mut checked = 0usize;
        let mut worst: Option<(Rational, String)> = None;
        let mut fail: Option<String> = None;
        plan.exact(DistBudget::default().outcomes, &mut |i, d| {
            let dom = d.domain().to_vec();
            let h = g.graph().induced(&dom);
            let law = PairLaw::new(d);
            let mut sets: Vec<Vec<usize>> = vec![vec![]];
            for a in 0..dom.len() {
                sets.push(vec![a]);
                for b in a + 1..dom.len() {
                    sets.push(vec![a, b]);
                }
            }
            for set in sets.into_iter().filter(|s| is_f_forbidding(&h, s)) {
                let vs: Vec<usize> = set.iter().map(|&a| dom[a]).collect();
                let bound = avoidance_bound(4, res.b, vs.len());
                let colors: Vec<Vec<usize>> = match vs.len() {
                    0 => vec![vec![]],
                    1 => (0..4).map(|c| vec![c]).collect(),
                    _ => (0..16).map(|c| vec![c / 4, c % 4]).collect(),
                };
                for cs in colors {
                    let avoid: Vec<(usize, usize)> = vs.iter().copied().zip(cs).collect();
                    let p = Rational::new(law.avoid(&avoid).into(), law.denominator.into());
                    checked += 1;
                    if checked.is_multiple_of(97) && p != d.avoidance_probability(&avoid) {
                        fail = Some(format!("{name}: level {i} oracle disagrees at {avoid:?}"));
                    }
                    if p < bound {
                        fail = Some(format!("{name}: level {i} avoid {avoid:?} = {p} < {bound}"));
                    }
                    let ratio = &p / &bound;
                    if !vs.is_empty() && worst.as_ref().is_none_or(|(r, _)| ratio < *r) {
                        worst = Some((ratio, format!("{p} vs {bound}")));
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| format!("{name}: {e}"))?;
        if let Some(f) = fail {
            return Err(f);
        }
        parts.push(format!("{name} {checked} cases, tightest {}", worst.map(|w| w.1).unwrap_or_default()));
    }
    Ok(parts.join("; "))
}

fn random_request(rng: &mut ChaCha8Rng, sizes: &[usize]) -> WeightedRequest {
    let mut w = WeightedRequest::zero(sizes);
    let sparse = rng.random_bool(0.3);
    for (v, &h) in sizes.iter().enumerate() {
        for c in 0..h {
            if rng.random_bool(if sparse { 0.05 } else { 0.5 }) {
                let q = Rational::new(rng.random_range(0..20i64).into(), rng.random_range(1..10i64).into());
                w.set(v, c, q).unwrap();
            }
        }
    }
    if w.total() == Rational::from_integer(0.into()) {
        let v = rng.random_range(0..sizes.len());
        w.set(v, rng.random_range(0..sizes[v]), Rational::from_integer(1.into())).unwrap();
    }
    w
}

fn weighted_requests() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut parts = Vec::new();
    for (name, g, res) in flex_cases() {
        let cover = Cover::identity(g.graph(), 4);
        let mut tightest: Option<Rational> = None;
        for t in 0..100 {
            let w = random_request(&mut rng, cover.sizes());
            let s = satisfy_request(&g, &cover, &res, &w, &SatisfyOptions::default()).map_err(|e| format!("{name}: {e}"))?;
            ensure(s.mode == SatisfyMode::Exact, || format!("{name}: not exact"))?;
            ensure(cover.is_valid_coloring(&s.coloring), || format!("{name}: invalid coloring"))?;
            ensure(w.value(&s.coloring) == s.value, || format!("{name}: value mismatch"))?;
            ensure(s.meets_bound(), || format!("{name} request {t}: {} < {} x {}", s.value, s.epsilon, s.total))?;
            let mean = s.expectation.clone().unwrap();
            ensure(s.value >= mean, || format!("{name} request {t}: {} < mean {mean}", s.value))?;
            let r = &mean / &s.total;
            if tightest.as_ref().is_none_or(|x| r < *x) {
                tightest = Some(r);
            }
        }
        parts.push(format!("{name} min mean/total {}", tightest.unwrap()));
    }
    Ok(parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    const DRAWS: u64 = 100_000;
    let mut support_checked = Vec::new();
    let mut law_checked = Vec::new();
    for name in all_fixture_names() {
        let g = fixture(&name);
        if !g.in_class() {
            continue;
        }
        let cover = Cover::identity(g.graph(), 4);
        match cover.count_colorings(10_000_000) {
            Ok(c) if c <= 10_000 => {}
            _ => continue,
        }
        let all: BTreeSet<_> = cover.enumerate_colorings(10_000_000).unwrap().into_iter().collect();
        let Ok(res) = build_resolution(&g, &ResolveOptions::default()) else { continue };
        let d = exact_distribution(&g, &cover, &res, &DistBudget::default()).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.outcomes().iter().all(|(phi, _)| all.contains(phi)), || format!("{name}: support escapes"))?;
        let plan = Plan::new(&g, &cover, &res, DistBudget::default().states).unwrap();
        let small = d.len() <= 64;
        let draws = if small { DRAWS } else { 2_000 };
        let mut counts = std::collections::BTreeMap::new();
        for i in 0..draws {
            let phi = plan.sample_seeded(0, i).map_err(|e| format!("{name}: {e}"))?;
            ensure(all.contains(&phi), || format!("{name}: sample {i} is not a coloring"))?;
            *counts.entry(phi).or_insert(0u64) += 1;
        }
        support_checked.push(name.clone());
        if small {
            ensure(counts.keys().all(|phi| d.probability(phi) > Rational::from_integer(0.into())), || {
                format!("{name}: sampled outside the exact support")
            })?;
            for (phi, p) in d.outcomes() {
                let p = p.numer().to_string().parse::<f64>().unwrap() / p.denom().to_string().parse::<f64>().unwrap();
                let n = DRAWS as f64;
                let seen = counts.get(phi).copied().unwrap_or(0) as f64;
                let sigma = (n * p * (1.0 - p)).sqrt();
                ensure((seen - n * p).abs() <= 3.0 * sigma, || {
                    format!("{name}: {phi:?} seen {seen}, expected {:.1} +- {:.1}", n * p, 3.0 * sigma)
                })?;
            }
            law_checked.push(format!("{name}({})", d.len()));
        }
    }
    Ok(format!(
        "support within colorings on {} fixtures; 3-sigma law on {}",
        support_checked.len(),
        law_checked.join(" ")
    ))
}

fn class_detector() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut drawn, mut rotated, mut inside) = (0, 0, 0);
    let mut check = |g: &PlaneGraph| -> Result<(), String> {
        let naive = naive_in_class(g.graph());
        ensure(g.in_class() == naive, || format!("detector {} vs naive {naive} on {:?}", g.in_class(), g.rotations()))?;
        inside += naive as usize;
        Ok(())
    };
    for _ in 0..4000 {
        let n = rng.random_range(1..=8);
        check(&random_drawn_graph(&mut rng, n))?;
        drawn += 1;
    }
    while rotated < 2000 {
        let n = rng.random_range(1..=8);
        if let Some(g) = random_rotation_system(&mut rng, n) {
            check(&g)?;
            rotated += 1;
        }
    }
    Ok(format!("{drawn} drawn + {rotated} rotation-system graphs agree, {inside} in class"))
}

fn discharging_branches() -> Outcome {
    let face_on = |g: &PlaneGraph, vs: &[usize]| -> usize {
        let want: BTreeSet<usize> = vs.iter().copied().collect();
        (0..g.faces().len())
            .find(|&f| g.face(f).len() == vs.len() && g.face(f).boundary().iter().copied().collect::<BTreeSet<_>>() == want)
            .expect("labelled face")
    };
    let q = |n: i64, d: i64| Charge::new(n, d);
    let mut parts = Vec::new();

    let g = fixture("dis_triangle");
    let l = labels("dis_triangle");
    let f = face_on(&g, &[l["a"], l["b"], l["c"]]);
    let a = audit(&g).map_err(|e| e.to_string())?;
    // -2 + 2/3 * 3
    let want = q(-2, 1) + q(2, 3) * 3;
    ensure(a.ledger.face[f] == want && want == q(0, 1), || format!("3-face ends at {}", a.ledger.face[f]))?;
    parts.push(format!("3-face {}", a.ledger.face[f]));

    let five = |name: &str| {
        let g = fixture(name);
        let l = labels(name);
        let vs: Vec<usize> = ["v1", "v2", "v3", "v4", "v5"].iter().map(|k| l[*k]).collect();
        let f = face_on(&g, &vs);
        (g, f)
    };
    let expected = [
        // -2 + 1/3 + 5/12 * 2 + 4/9 * 2
        ("dis_case_2_1", FaceCase::Case2_1, q(-2, 1) + q(1, 3) + q(5, 12) * 2 + q(4, 9) * 2, q(1, 18)),
        // -2 + 5/12 + 1/3 * 2 + 7/15 * 2
        ("dis_case_1_2_1", FaceCase::Case1_2_1, q(-2, 1) + q(5, 12) + q(1, 3) * 2 + q(7, 15) * 2, q(1, 60)),
    ];
    for (name, case, expr, value) in expected {
        let (g, f) = five(name);
        let a = audit(&g).map_err(|e| e.to_string())?;
        ensure(face_case(&g, f) == case, || format!("{name}: case {}", face_case(&g, f).name()))?;
        ensure(expr == value, || format!("{name}: expression gives {expr}"))?;
        ensure(a.ledger.face[f] == value, || format!("{name}: {} != {value}", a.ledger.face[f]))?;
        parts.push(format!("{} {}", case.name(), a.ledger.face[f]));
    }
    Ok(parts.join("; "))
}
