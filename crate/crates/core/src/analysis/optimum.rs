use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::adversary::AdversarySpec;
use crate::cost::graph_social_cost;
use crate::error::{Error, Result};
use crate::graph::{all_pairs, Edge, Graph};
use crate::par;
use crate::rational::{ExtendedRational, Rational};
use crate::strategy::FormationRule;

pub const DEFAULT_OPTIMUM_MAX_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimumShape {
    Cycle,
    Star,
    /// At the threshold where both have the same cost.
    Both,
}

impl fmt::Display for OptimumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimumShape::Cycle => "cycle",
            OptimumShape::Star => "star",
            OptimumShape::Both => "both",
        })
    }
}

/// The cheaper of cycle and star: `nα` vs `(n-1)(α+2)` under ULF and twice
/// `nα` vs `(n-1)(α+1)` under BLF.
pub fn optimum_closed_form(n: usize, alpha: Rational, rule: FormationRule) -> Result<(Rational, OptimumShape)> {
    if n < 3 {
        return Err(Error::TooSmall { what: "optimum closed form", min: 3, got: n });
    }
    if alpha <= Rational::zero() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let nn = Rational::from_integer(n as i128);
    let one = Rational::from_integer(1);
    let (cycle, star) = match rule {
        FormationRule::Unilateral => (nn * alpha, (nn - one) * (alpha + Rational::from_integer(2))),
        FormationRule::Bilateral => {
            let two = Rational::from_integer(2);
            (two * nn * alpha, two * (nn - one) * (alpha + one))
        }
    };
    Ok(match cycle.cmp(&star) {
        std::cmp::Ordering::Less => (cycle, OptimumShape::Cycle),
        std::cmp::Ordering::Greater => (star, OptimumShape::Star),
        std::cmp::Ordering::Equal => (cycle, OptimumShape::Both),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub value: ExtendedRational,
    /// Lexicographically smallest edge list among the minimizers.
    pub witness: Graph,
}

/// Graph number `mask` over the pair list: bit `i` selects `pairs[i]`.
pub(crate) fn graph_from_mask(n: usize, pairs: &[Edge], mask: usize) -> Graph {
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
    Graph::from_edges(n, edges)
}

/// Exact minimum social cost over all labeled graphs on `n` vertices.
pub fn brute_force_optimum(
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    max_n: usize,
) -> Result<Optimum> {
    if alpha <= Rational::zero() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let pairs = all_pairs(n);
    if n > max_n || pairs.len() >= usize::BITS as usize - 1 {
        let p = pairs.len() as u32;
        let cap = (max_n * max_n.saturating_sub(1) / 2) as u32;
        return Err(Error::SearchTooLarge {
            candidates: 1u128.checked_shl(p).unwrap_or(u128::MAX),
            budget: 1u128.checked_shl(cap).unwrap_or(u128::MAX),
        });
    }
    let best = par::min_by_key(0..1usize << pairs.len(), |mask| {
        let g = graph_from_mask(n, &pairs, mask);
        if !g.is_connected() {
            return Ok((ExtendedRational::Infinite, g.edges().to_vec()));
        }
        Ok((graph_social_cost(&g, rule, spec, alpha)?, g.edges().to_vec()))
    })?;
    let ((value, edges), _) = best.expect("at least the empty graph");
    Ok(Optimum { value, witness: Graph::from_edges(n, edges) })
}
