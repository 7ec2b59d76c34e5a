#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use dpflex::{parse_pg, PlaneGraph};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_text(name: &str) -> String {
    let path = fixture_dir().join(format!("{name}.pg"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture(name: &str) -> PlaneGraph {
    parse_pg(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Names from the `# labels: a=0 b=1` comment line.
pub fn labels(name: &str) -> BTreeMap<String, usize> {
    let text = fixture_text(name);
    let mut out = BTreeMap::new();
    for line in text.lines() {
        if let Some(rest) = line.trim_start_matches('#').trim().strip_prefix("labels:") {
            for pair in rest.split_whitespace() {
                let (k, v) = pair.split_once('=').unwrap();
                out.insert(k.to_string(), v.parse().unwrap());
            }
        }
    }
    out
}

pub fn all_fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "pg").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

pub mod oracle {
    use std::collections::BTreeMap;

    use dpflex::flex::ColoringDistribution;
    use dpflex::{Coloring, Cover, PlaneGraph, SimpleGraph};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, ToPrimitive};
    use rand::seq::SliceRandom;
    use rand::Rng;

    /// Every coloring of the cover, by running through the product of lists.
    pub fn brute_colorings(cover: &Cover) -> Vec<Coloring> {
        let n = cover.n();
        let mut out = Vec::new();
        let mut phi = vec![0usize; n];
        if cover.sizes().contains(&0) {
            return out;
        }
        loop {
            let c = Coloring(phi.clone());
            let ok = cover.edges().iter().enumerate().all(|(e, &(u, v))| {
                !cover.matching(e).iter().any(|&(a, b)| a == phi[u] && b == phi[v])
            });
            if ok {
                out.push(c);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                phi[i] += 1;
                if phi[i] < cover.size(i) {
                    break;
                }
                phi[i] = 0;
                i += 1;
            }
        }
    }

    /// Class membership from all 3-subsets and 4-subsets.
    pub fn naive_in_class(g: &SimpleGraph) -> bool {
        let n = g.n();
        let e = |a, b| g.has_edge(a, b);
        let mut triangles = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if e(a, b) && e(b, c) && e(a, c) {
                        triangles.push([a, b, c]);
                    }
                }
            }
        }
        for (i, s) in triangles.iter().enumerate() {
            for t in &triangles[i + 1..] {
                if s.iter().any(|x| t.contains(x)) {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let cyc = |w: usize, x: usize, y: usize, z: usize| e(w, x) && e(x, y) && e(y, z) && e(z, w);
                        if cyc(a, b, c, d) || cyc(a, b, d, c) || cyc(a, c, b, d) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn orient(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i64 {
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    }

    fn on_segment(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> bool {
        orient(p, q, r) == 0 && r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
    }

    // Whether segments pq and rs meet anywhere except at a shared endpoint.
    fn conflict(p: (i64, i64), q: (i64, i64), r: (i64, i64), s: (i64, i64)) -> bool {
        let shared = [p, q].iter().filter(|x| **x == r || **x == s).count();
        if shared > 0 {
            // collinear overlap through the shared end
            let (a, b, c) = if p == r { (p, q, s) } else if p == s { (p, q, r) } else if q == r { (q, p, s) } else { (q, p, r) };
            return orient(a, b, c) == 0 && (on_segment(a, b, c) || on_segment(a, c, b));
        }
        let (d1, d2) = (orient(p, q, r), orient(p, q, s));
        let (d3, d4) = (orient(r, s, p), orient(r, s, q));
        if d1 * d2 < 0 && d3 * d4 < 0 {
            return true;
        }
        on_segment(p, q, r) || on_segment(p, q, s) || on_segment(r, s, p) || on_segment(r, s, q)
    }

    /// A straight-line drawing on distinct integer points, with rotations by angle.
    pub fn random_drawn_graph(rng: &mut impl Rng, n: usize) -> PlaneGraph {
        let mut pts: Vec<(i64, i64)> = Vec::new();
        while pts.len() < n {
            let p = (rng.random_range(0..1000), rng.random_range(0..1000));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        pairs.shuffle(rng);
        let keep = rng.random_range(0.2..1.0);
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (a, b) in pairs {
            if !rng.random_bool(keep) {
                continue;
            }
            if pts.iter().enumerate().any(|(i, &x)| i != a && i != b && on_segment(pts[a], pts[b], x)) {
                continue;
            }
            if edges.iter().all(|&(c, d)| !conflict(pts[a], pts[b], pts[c], pts[d])) {
                edges.push((a, b));
            }
        }
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &edges {
            rot[a].push(b);
            rot[b].push(a);
        }
        for (v, r) in rot.iter_mut().enumerate() {
            let angle = |u: &usize| ((pts[*u].1 - pts[v].1) as f64).atan2((pts[*u].0 - pts[v].0) as f64);
            r.sort_by(|x, y| angle(x).partial_cmp(&angle(y)).unwrap());
        }
        PlaneGraph::new(rot).expect("a straight-line drawing is a plane embedding")
    }

    /// Random edges with random rotations; `None` when they are not a plane embedding.
    pub fn random_rotation_system(rng: &mut impl Rng, n: usize) -> Option<PlaneGraph> {
        let p = rng.random_range(0.1..0.6);
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(p) {
                    rot[a].push(b);
                    rot[b].push(a);
                }
            }
        }
        for r in rot.iter_mut() {
            r.shuffle(rng);
        }
        PlaneGraph::new(rot).ok()
    }

    /// Joint laws of one level scaled to integers over a common denominator.
    pub struct PairLaw {
        pub denominator: u128,
        pub single: BTreeMap<(usize, usize), u128>,
        pub pair: BTreeMap<(usize, usize, usize, usize), u128>,
    }

    impl PairLaw {
        pub fn new(d: &ColoringDistribution) -> PairLaw {
            let mut l = BigInt::one();
            for (_, p) in d.outcomes() {
                l = l.lcm(p.denom());
            }
            let denominator = l.to_u128().expect("common denominator fits in u128");
            let mut single = BTreeMap::new();
            let mut pair = BTreeMap::new();
            let dom = d.domain();
            for (phi, p) in d.outcomes() {
                let w = (p.numer() * (&l / p.denom())).to_u128().unwrap();
                for (i, &u) in dom.iter().enumerate() {
                    *single.entry((u, phi.0[u])).or_insert(0) += w;
                    for &v in &dom[i + 1..] {
                        *pair.entry((u, phi.0[u], v, phi.0[v])).or_insert(0) += w;
                    }
                }
            }
            PairLaw { denominator, single, pair }
        }

        /// Scaled `Prob[phi(v) != c for all (v, c)]` for one or two constraints, `u < v`.
        pub fn avoid(&self, constraints: &[(usize, usize)]) -> u128 {
            let s = |v: usize, c: usize| self.single.get(&(v, c)).copied().unwrap_or(0);
            match *constraints {
                [] => self.denominator,
                [(u, a)] => self.denominator - s(u, a),
                [(u, a), (v, b)] => {
                    let j = self.pair.get(&(u, a, v, b)).copied().unwrap_or(0);
                    self.denominator + j - s(u, a) - s(v, b)
                }
                _ => unimplemented!(),
            }
        }
    }
}
