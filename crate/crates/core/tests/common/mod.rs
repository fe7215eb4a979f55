//! Brute-force oracles that share no code with the library: every quantity
//! is recomputed from plain edge lists by repeated reachability searches.
#![allow(dead_code)]

use std::collections::BTreeSet;

use netform::{Edge, Graph, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Pair = (usize, usize);

pub fn pairs(n: usize) -> Vec<Pair> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn edges_of(g: &Graph) -> Vec<Pair> {
    g.edges().iter().map(|e| (e.lo(), e.hi())).collect()
}

pub fn graph(n: usize, edges: &[Pair]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

/// Vertices reachable from `from` when edge `skip` is removed.
pub fn reach(n: usize, edges: &[Pair], skip: Option<usize>, from: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for (i, &(a, b)) in edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

pub fn connected(n: usize, edges: &[Pair]) -> bool {
    n == 0 || reach(n, edges, None, 0).iter().all(|&r| r)
}

pub fn is_bridge(n: usize, edges: &[Pair], i: usize) -> bool {
    let (a, b) = edges[i];
    !reach(n, edges, Some(i), a)[b]
}

/// Vertices `v` reaches in the graph but not without edge `i`.
pub fn rel(n: usize, edges: &[Pair], i: usize, v: usize) -> usize {
    let with = reach(n, edges, None, v);
    let without = reach(n, edges, Some(i), v);
    (0..n).filter(|&x| with[x] && !without[x]).count()
}

pub fn nu(n: usize, edges: &[Pair], i: usize) -> usize {
    if !is_bridge(n, edges, i) {
        return 0;
    }
    let (a, b) = edges[i];
    let side = |x| reach(n, edges, Some(i), x).iter().filter(|&&r| r).count();
    side(a).min(side(b))
}

/// Ordered pairs connected before and separated after removing edge `i`.
pub fn sep(n: usize, edges: &[Pair], i: usize) -> usize {
    (0..n).map(|v| rel(n, edges, i, v)).sum()
}

/// Components after deleting every bridge, as sorted vertex sets.
pub fn bcc_partition(n: usize, edges: &[Pair]) -> BTreeSet<Vec<usize>> {
    let kept: Vec<Pair> = edges.iter().enumerate().filter(|&(i, _)| !is_bridge(n, edges, i)).map(|(_, &e)| e).collect();
    let mut parts = BTreeSet::new();
    for v in 0..n {
        let r = reach(n, &kept, None, v);
        parts.insert((0..n).filter(|&x| r[x]).collect::<Vec<_>>());
    }
    parts
}

/// Every simple cycle as its vertex set and edge set, found by extending
/// paths from their smallest vertex.
pub fn cycles(n: usize, edges: &[Pair]) -> Vec<(BTreeSet<usize>, BTreeSet<Pair>)> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut out = BTreeSet::new();
    fn extend(
        adj: &[Vec<usize>],
        start: usize,
        path: &mut Vec<usize>,
        out: &mut BTreeSet<(BTreeSet<usize>, BTreeSet<Pair>)>,
    ) {
        let last = *path.last().unwrap();
        for &y in &adj[last] {
            if y == start && path.len() >= 3 {
                let vs: BTreeSet<usize> = path.iter().copied().collect();
                let mut es: BTreeSet<Pair> = path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
                es.insert((start.min(last), start.max(last)));
                out.insert((vs, es));
            } else if y > start && !path.contains(&y) {
                path.push(y);
                extend(adj, start, path, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        extend(&adj, s, &mut vec![s], &mut out);
    }
    out.into_iter().collect()
}

/// Edge `{a, b}` joins two vertices of a cycle it is not part of.
pub fn is_chord(n: usize, edges: &[Pair], e: Pair) -> bool {
    cycles(n, edges).iter().any(|(vs, es)| vs.contains(&e.0) && vs.contains(&e.1) && !es.contains(&e))
}

pub fn girth(n: usize, edges: &[Pair]) -> Option<usize> {
    cycles(n, edges).iter().map(|(vs, _)| vs.len()).min()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adv {
    Simple,
    Smart,
}

/// Attack probability of each edge.
pub fn probs(n: usize, edges: &[Pair], adv: Adv) -> Vec<Rational> {
    let m = edges.len() as i128;
    match adv {
        Adv::Simple => vec![Rational::new(1, m); edges.len()],
        Adv::Smart => {
            let seps: Vec<usize> = (0..edges.len()).map(|i| sep(n, edges, i)).collect();
            let top = *seps.iter().max().unwrap();
            let count = seps.iter().filter(|&&s| s == top).count() as i128;
            seps.iter().map(|&s| if s == top { Rational::new(1, count) } else { Rational::zero() }).collect()
        }
    }
}

/// Expected number of vertices `v` loses; `None` if the graph is disconnected.
pub fn disconnection(n: usize, edges: &[Pair], adv: Adv, v: usize) -> Option<Rational> {
    if !connected(n, edges) {
        return None;
    }
    if edges.is_empty() {
        return Some(Rational::zero());
    }
    let p = probs(n, edges, adv);
    Some((0..edges.len()).map(|i| p[i] * Rational::from_integer(rel(n, edges, i, v) as i128)).sum())
}

/// Final ULF graph of a request list.
pub fn ulf_graph(requests: &BTreeSet<Pair>) -> Vec<Pair> {
    let set: BTreeSet<Pair> = requests.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    set.into_iter().collect()
}

/// Final BLF graph: mutual requests only.
pub fn blf_graph(requests: &BTreeSet<Pair>) -> Vec<Pair> {
    requests.iter().filter(|&&(a, b)| a < b && requests.contains(&(b, a))).copied().collect()
}

pub fn player_cost(
    n: usize,
    requests: &BTreeSet<Pair>,
    bilateral: bool,
    adv: Adv,
    alpha: Rational,
    v: usize,
) -> Option<Rational> {
    let edges = if bilateral { blf_graph(requests) } else { ulf_graph(requests) };
    let paid = requests.iter().filter(|&&(a, _)| a == v).count() as i128;
    disconnection(n, &edges, adv, v).map(|d| alpha * Rational::from_integer(paid) + d)
}

/// Costs compare with `None` as infinity.
pub fn lt(a: Option<Rational>, b: Option<Rational>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    }
}

pub fn le(a: Option<Rational>, b: Option<Rational>) -> bool {
    !lt(b, a)
}

/// ULF Nash by trying every request set of every player.
pub fn ulf_is_nash(n: usize, requests: &BTreeSet<Pair>, adv: Adv, alpha: Rational) -> bool {
    (0..n).all(|v| {
        let base = player_cost(n, requests, false, adv, alpha, v);
        let others: BTreeSet<Pair> = requests.iter().filter(|&&(a, _)| a != v).copied().collect();
        let free: Vec<usize> = (0..n).filter(|&w| w != v && !others.contains(&(w, v))).collect();
        (0..1usize << free.len()).all(|mask| {
            let mut s = others.clone();
            s.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &w)| (v, w)));
            !lt(player_cost(n, &s, false, adv, alpha, v), base)
        })
    })
}

/// BLF pairwise stability: no single drop helps, no absent pair is weakly
/// preferred by both endpoints.
pub fn blf_is_ps(n: usize, edges: &[Pair], adv: Adv, alpha: Rational) -> bool {
    let full = mutual(edges);
    let cost = |s: &BTreeSet<Pair>, v| player_cost(n, s, true, adv, alpha, v);
    for &(a, b) in edges {
        for (x, y) in [(a, b), (b, a)] {
            let mut s = full.clone();
            s.remove(&(x, y));
            if lt(cost(&s, x), cost(&full, x)) {
                return false;
            }
        }
    }
    for (a, b) in pairs(n) {
        if edges.contains(&(a, b)) {
            continue;
        }
        let mut s = full.clone();
        s.insert((a, b));
        s.insert((b, a));
        if le(cost(&s, a), cost(&full, a)) && le(cost(&s, b), cost(&full, b)) {
            return false;
        }
    }
    true
}

pub fn mutual(edges: &[Pair]) -> BTreeSet<Pair> {
    edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect()
}

/// All graphs on `n` vertices that are connected, as edge lists.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Vec<Pair>> {
    let ps = pairs(n);
    (0..1usize << ps.len()).filter_map(move |mask| {
        let es: Vec<Pair> = ps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        connected(n, &es).then_some(es)
    })
}

/// `count` connected graphs drawn by seeded edge coin flips, each with a
/// random spanning tree underneath so that sparse shapes are common.
pub fn sample_connected(n: usize, count: usize, seed: u64) -> Vec<Vec<Pair>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut es: BTreeSet<Pair> = BTreeSet::new();
            for v in 1..n {
                let u = rng.random_range(0..v);
                es.insert((u, v));
            }
            let density: f64 = rng.random_range(0.0..0.6);
            for (a, b) in pairs(n) {
                if rng.random_bool(density) {
                    es.insert((a, b));
                }
            }
            es.into_iter().collect()
        })
        .collect()
}

pub fn edge(p: Pair) -> Edge {
    Edge::new(p.0, p.1)
}
