mod common;

use std::collections::BTreeSet;

use common::fixture;
use common::oracle::{brute_colorings, PairLaw};
use dpflex::flex::{
    avoidance_bound, build_resolution, build_resolution_from, epsilon, exact_distribution, sample_coloring,
    satisfy_request, DistBudget, ForbiddingScope, Plan, ResolveOptions, SatisfyMode, SatisfyOptions,
};
use dpflex::reducible::{find_reducible_among, is_f_forbidding};
use dpflex::{Cover, Error, RcKind, Rational, WeightedRequest};

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[test]
fn resolution_examples() {
    let res = build_resolution(&fixture("c5"), &ResolveOptions::default()).unwrap();
    assert_eq!(res.b, 1);
    assert_eq!(res.steps.len(), 5);
    assert!(res.terminal().unwrap().boundary.is_empty());
    let res = build_resolution(&fixture("single"), &ResolveOptions::default()).unwrap();
    assert_eq!((res.m(), res.b), (0, 1));
}

#[test]
fn steps_partition_the_vertices() {
    for name in ["fig1_rc2", "truncated_tetrahedron", "fig3_poor_ii", "dodecahedron"] {
        let g = fixture(name);
        let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
        let mut seen = BTreeSet::new();
        let mut alive: BTreeSet<usize> = (0..g.n()).collect();
        for s in &res.steps {
            assert_eq!(s.residual.iter().copied().collect::<BTreeSet<_>>(), alive, "{name}");
            assert!(s.block.iter().all(|v| alive.contains(v)), "{name}");
            for v in s.removed() {
                assert!(seen.insert(v), "{name}: {v} removed twice");
                alive.remove(&v);
            }
        }
        assert_eq!(seen.len(), g.n(), "{name}");
        assert_eq!(res.b, res.steps.iter().map(|s| s.size()).max().unwrap());
    }
}

#[test]
fn forbidding_scopes_agree_on_fixtures() {
    for name in ["fig1_rc2", "truncated_tetrahedron", "c7"] {
        let g = fixture(name);
        let a = build_resolution(&g, &ResolveOptions::default()).unwrap();
        let opts = ResolveOptions { scope: ForbiddingScope::Original, ..ResolveOptions::default() };
        let b = build_resolution(&g, &opts).unwrap();
        let blocks = |r: &dpflex::flex::Resolution| r.steps.iter().map(|s| s.block.clone()).collect::<Vec<_>>();
        assert_eq!(blocks(&a), blocks(&b), "{name}");
    }
}

#[test]
fn out_of_class_input_is_rejected() {
    assert!(matches!(build_resolution(&fixture("k4"), &ResolveOptions::default()), Err(Error::OutOfClass(_))));
}

#[test]
fn fixation_bound_on_resolved_fixtures() {
    let g = fixture("fig1_rc2");
    let m = find_reducible_among(&g, &[RcKind::Rc2]).unwrap().found().unwrap();
    let seeded = build_resolution_from(&g, &m, &ResolveOptions::default()).unwrap();
    assert_eq!(seeded.steps[0].kind, Some(RcKind::Rc2));
    assert_eq!(seeded.b, 2);
    let cases = [
        ("c5", build_resolution(&fixture("c5"), &ResolveOptions::default()).unwrap()),
        ("p4", build_resolution(&fixture("p4"), &ResolveOptions::default()).unwrap()),
        ("fig1_rc2", seeded),
        ("truncated_tetrahedron", build_resolution(&fixture("truncated_tetrahedron"), &ResolveOptions::default()).unwrap()),
    ];
    for (name, res) in cases {
        let g = fixture(name);
        let cover = Cover::identity(g.graph(), 4);
        let d = exact_distribution(&g, &cover, &res, &DistBudget::default()).unwrap();
        assert_eq!(d.total(), q(1, 1), "{name}");
        let fx = d.min_fixation_probability().unwrap();
        assert!(fx.probability >= epsilon(4, res.b), "{name}: {}", fx.probability);
        for (phi, _) in d.outcomes() {
            assert!(cover.is_valid_coloring(phi), "{name}");
        }
    }
}

#[test]
fn avoidance_on_every_level() {
    let g = fixture("truncated_tetrahedron");
    let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
    let cover = Cover::identity(g.graph(), 4);
    let plan = Plan::new(&g, &cover, &res, DistBudget::default().states).unwrap();
    let mut levels = 0;
    plan.exact(DistBudget::default().outcomes, &mut |_, d| {
        levels += 1;
        let dom = d.domain().to_vec();
        let h = g.graph().induced(&dom);
        let law = PairLaw::new(d);
        for a in 0..dom.len() {
            for b in a..dom.len() {
                let set: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
                if !is_f_forbidding(&h, &set) {
                    continue;
                }
                let bound = avoidance_bound(4, res.b, set.len());
                for ca in 0..4 {
                    for cb in 0..4 {
                        let avoid: Vec<(usize, usize)> =
                            if a == b { vec![(dom[a], ca)] } else { vec![(dom[a], ca), (dom[b], cb)] };
                        let p = Rational::new(law.avoid(&avoid).into(), law.denominator.into());
                        assert!(p >= bound, "{avoid:?}: {p}");
                    }
                }
            }
        }
        Ok(())
    })
    .unwrap();
    assert_eq!(levels, res.steps.len());
}

#[test]
fn requests_on_a_non_identity_cover() {
    // shifted matchings instead of the identity
    let g = fixture("c5");
    let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
    let matchings = g
        .graph()
        .edges()
        .into_iter()
        .map(|(u, v)| ((u, v), (0..4).map(|c| (c, (c + u + 1) % 4)).collect::<Vec<_>>()));
    let cover = Cover::new(g.graph(), vec![4; 5], matchings).unwrap();
    let d = exact_distribution(&g, &cover, &res, &DistBudget::default()).unwrap();
    let all: BTreeSet<_> = brute_colorings(&cover).into_iter().collect();
    assert!(d.outcomes().iter().all(|(phi, _)| all.contains(phi)));
    assert!(d.min_fixation_probability().unwrap().probability >= epsilon(4, res.b));
    for v in 0..5 {
        for c in 0..4 {
            let w = WeightedRequest::indicator(cover.sizes(), v, c);
            let s = satisfy_request(&g, &cover, &res, &w, &SatisfyOptions::default()).unwrap();
            assert_eq!(s.value, q(1, 1));
            assert_eq!(s.coloring.0[v], c);
        }
    }
}

#[test]
fn sampling_fallback_when_the_support_is_too_large() {
    let g = fixture("c7");
    let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
    let cover = Cover::identity(g.graph(), 4);
    let opts = SatisfyOptions { budget: DistBudget { outcomes: 10, ..DistBudget::default() }, draws: 50, ..SatisfyOptions::default() };
    let w = WeightedRequest::indicator(cover.sizes(), 3, 1);
    let s = satisfy_request(&g, &cover, &res, &w, &opts).unwrap();
    assert_eq!(s.mode, SatisfyMode::Sampled { draws: 50 });
    assert!(s.expectation.is_none());
    assert!(cover.is_valid_coloring(&s.coloring));
    assert_eq!(s.value, w.value(&s.coloring));
}

#[test]
fn mismatched_request_is_rejected() {
    let g = fixture("c5");
    let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
    let cover = Cover::identity(g.graph(), 4);
    let w = WeightedRequest::zero(&[3; 5]);
    assert!(matches!(
        satisfy_request(&g, &cover, &res, &w, &SatisfyOptions::default()),
        Err(Error::InvalidRequest(_))
    ));
}

#[test]
fn samples_are_colorings_and_reproducible() {
    let g = fixture("c5");
    let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
    let cover = Cover::identity(g.graph(), 4);
    let all: BTreeSet<_> = brute_colorings(&cover).into_iter().collect();
    let plan = Plan::new(&g, &cover, &res, DistBudget::default().states).unwrap();
    for i in 0..100_000 {
        assert!(all.contains(&plan.sample_seeded(3, i).unwrap()));
    }
    assert_eq!(sample_coloring(&g, &cover, &res, 11).unwrap(), plan.sample_seeded(11, 0).unwrap());
}

#[test]
fn single_vertex_frequencies() {
    let g = fixture("single");
    let res = build_resolution(&g, &ResolveOptions::default()).unwrap();
    let cover = Cover::identity(g.graph(), 4);
    let plan = Plan::new(&g, &cover, &res, DistBudget::default().states).unwrap();
    let n = 100_000;
    let mut counts = [0f64; 4];
    for i in 0..n {
        counts[plan.sample_seeded(0, i).unwrap().0[0]] += 1.0;
    }
    let sigma = (n as f64 * 0.25 * 0.75).sqrt();
    for c in counts {
        assert!((c - n as f64 / 4.0).abs() <= 3.0 * sigma, "{counts:?}");
    }
}
