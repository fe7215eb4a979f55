//! Generators for the named instances. Labeling is fixed: star center 0,
//! paths in vertex order, three stars hub first.

use std::collections::BTreeMap;

use crate::adversary::AdversarySpec;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rational::frac;
use crate::strategy::{FormationRule, StrategyProfile};

fn at_least(what: &'static str, min: usize, got: usize) -> Result<()> {
    if got < min {
        return Err(Error::TooSmall { what, min, got });
    }
    Ok(())
}

/// Owned pairs `(owner, target)`, doubled under BLF.
fn oriented(n: usize, owned: impl IntoIterator<Item = (usize, usize)>, rule: FormationRule) -> StrategyProfile {
    let pairs: Vec<(usize, usize)> = owned.into_iter().collect();
    let s = StrategyProfile::new(n, pairs).expect("generator pairs are valid");
    match rule {
        FormationRule::Unilateral => s,
        FormationRule::Bilateral => s.to_bilateral(),
    }
}

/// Center 0 owns every edge.
pub fn star_profile(n: usize, rule: FormationRule) -> Result<StrategyProfile> {
    at_least("star", 3, n)?;
    Ok(oriented(n, (1..n).map(|i| (0, i)), rule))
}

/// Player `i` owns `{i, i+1 mod n}`.
pub fn cycle_profile(n: usize, rule: FormationRule) -> Result<StrategyProfile> {
    at_least("cycle", 3, n)?;
    Ok(oriented(n, (0..n).map(|i| (i, (i + 1) % n)), rule))
}

/// Path `0..n` under ULF with every edge pointing outward: the endpoint
/// nearer the middle owns it, the lower id on the even middle edge.
pub fn path_nearest_end_profile(n: usize) -> Result<StrategyProfile> {
    at_least("path", 3, n)?;
    let depth = |x: usize| x.min(n - 1 - x);
    let owned = (0..n - 1).map(|i| if depth(i + 1) > depth(i) { (i + 1, i) } else { (i, i + 1) });
    Ok(oriented(n, owned, FormationRule::Unilateral))
}

/// Largest `n0` with `n >= 3 n0 - 2`.
pub fn three_stars_n0(n: usize) -> usize {
    n.div_ceil(3)
}

/// BLF profile: hub 0 joined to star centers 1, 2, 3 whose stars have
/// `n0`, `n0 - 1`, `n0 - 2` vertices; the 0 to 2 leftover vertices hang off
/// the hub with the highest ids.
pub fn three_stars_profile(n: usize) -> Result<StrategyProfile> {
    at_least("three stars", 9, n)?;
    let n0 = three_stars_n0(n);
    let mut owned = vec![(0, 1), (0, 2), (0, 3)];
    let mut next = 4;
    for (center, size) in [(1, n0), (2, n0 - 1), (3, n0 - 2)] {
        for _ in 1..size {
            owned.push((center, next));
            next += 1;
        }
    }
    for extra in next..n {
        owned.push((0, extra));
    }
    Ok(oriented(n, owned, FormationRule::Bilateral))
}

/// BLF profile: cycle on `0..n-l` and the path `n-l-1, n-l, .., n-1`.
pub fn cycle_with_path_profile(n: usize, l: usize) -> Result<StrategyProfile> {
    if l == 0 {
        return Err(Error::BadShape("path length must be at least 1".into()));
    }
    if n < 3 * l || n - l < 3 {
        return Err(Error::BadShape(format!("cycle with a path of length {l} needs n >= {}", (3 * l).max(l + 3))));
    }
    let c = n - l;
    let owned = (0..c).map(|i| (i, (i + 1) % c)).chain((c - 1..n - 1).map(|i| (i, i + 1)));
    Ok(oriented(n, owned, FormationRule::Bilateral))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonConvexGadget {
    pub profile: StrategyProfile,
    pub player: usize,
    pub e1: Edge,
    pub e2: Edge,
    pub f1: Edge,
    pub f2: Edge,
}

/// Smallest cycle length for which each drop of `e1`, `e2` or both leaves a
/// unique critical edge `f1` resp. `f2`.
pub const NON_CONVEX_K_MIN: usize = 5;

pub const NON_CONVEX_K_DEFAULT: usize = 12;

/// ULF gadget. Pendant `x = 0` on `w = 1`, triangle `w, u = 2, v = 3`,
/// triangle `v, u' = 4, y = 5`, and `y` on a `k`-cycle `5..5+k`. The player
/// `v` owns `e1 = {w, v}` and `e2 = {v, y}`; `f1 = {u, v}`, `f2 = {u', y}`.
pub fn non_convex_gadget(k: usize) -> Result<NonConvexGadget> {
    at_least("non-convex gadget cycle", NON_CONVEX_K_MIN, k)?;
    let (x, w, u, v, uu, y) = (0, 1, 2, 3, 4, 5);
    let n = 5 + k;
    let mut owned = vec![(x, w), (w, u), (u, v), (v, w), (uu, v), (uu, y), (v, y)];
    owned.extend((0..k).map(|i| (y + i, y + (i + 1) % k)));
    Ok(NonConvexGadget {
        profile: oriented(n, owned, FormationRule::Unilateral),
        player: v,
        e1: Edge::new(w, v),
        e2: Edge::new(v, y),
        f1: Edge::new(u, v),
        f2: Edge::new(uu, y),
    })
}

/// Five-cycle on `0..5`, the path `0 - 5 - 6`, and a bridgeless five-vertex
/// block on `6..11`; the adversary hits `{0, 5}` with probability 2/3 and
/// `{5, 6}` with 1/3.
pub fn fig_anonymous_nonsymmetric() -> (Graph, AdversarySpec) {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)];
    edges.extend([(6, 7), (7, 8), (8, 9), (9, 6), (7, 10), (10, 9)]);
    let g = Graph::new(11, edges).expect("fixed graph");
    let table: BTreeMap<Edge, _> = [(Edge::new(0, 5), frac(2, 3)), (Edge::new(5, 6), frac(1, 3))].into_iter().collect();
    (g, AdversarySpec::Custom(table))
}
