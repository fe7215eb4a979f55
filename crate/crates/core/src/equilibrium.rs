//! Exhaustive verifiers for the four stability concepts. A failing verdict
//! always carries a witness that can be replayed against the profile.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adversary::AdversarySpec;
use crate::cost::Disconnection;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::par;
use crate::rational::{ExtendedRational, Rational};
use crate::strategy::{FormationRule, StrategyProfile};

pub const DEFAULT_BUDGET: u128 = 1 << 24;
pub const DEFAULT_CONVEXITY_K: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConceptKind {
    #[serde(rename = "ne")]
    Nash,
    #[serde(rename = "maxne")]
    MaxNash,
    #[serde(rename = "pne")]
    PairwiseNash,
    #[serde(rename = "ps")]
    PairwiseStable,
}

impl ConceptKind {
    pub const ALL: [ConceptKind; 4] =
        [ConceptKind::Nash, ConceptKind::MaxNash, ConceptKind::PairwiseNash, ConceptKind::PairwiseStable];

    pub fn rule(&self) -> FormationRule {
        match self {
            ConceptKind::Nash | ConceptKind::MaxNash => FormationRule::Unilateral,
            ConceptKind::PairwiseNash | ConceptKind::PairwiseStable => FormationRule::Bilateral,
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            ConceptKind::Nash => "ne",
            ConceptKind::MaxNash => "maxne",
            ConceptKind::PairwiseNash => "pne",
            ConceptKind::PairwiseStable => "ps",
        }
    }

    /// `RuleMismatch` unless the concept is defined under `rule`.
    pub fn require_rule(&self, rule: FormationRule) -> Result<()> {
        if self.rule() != rule {
            return Err(Error::RuleMismatch { concept: self.short_name(), rule: self.rule().short_name() });
        }
        Ok(())
    }
}

impl fmt::Display for ConceptKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ConceptKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ne" => Ok(ConceptKind::Nash),
            "maxne" => Ok(ConceptKind::MaxNash),
            "pne" => Ok(ConceptKind::PairwiseNash),
            "ps" => Ok(ConceptKind::PairwiseStable),
            other => Err(Error::Parse(format!("unknown concept {other:?} (expected ne|maxne|pne|ps)"))),
        }
    }
}

/// `S + {player}×add − {player}×drop` with the player's cost before and
/// after.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deviation {
    pub player: usize,
    pub add: Vec<usize>,
    pub drop: Vec<usize>,
    pub old_cost: ExtendedRational,
    pub new_cost: ExtendedRational,
}

impl Deviation {
    pub fn is_improvement(&self) -> bool {
        self.new_cost < self.old_cost
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty() && self.drop.is_empty()
    }
}

/// The joint addition of `{v, w}` with both endpoints' costs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub v: usize,
    pub w: usize,
    pub old_cost_v: ExtendedRational,
    pub new_cost_v: ExtendedRational,
    pub old_cost_w: ExtendedRational,
    pub new_cost_w: ExtendedRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// A strict improvement, or for MaxNE a non-worsening addition.
    Deviation(Deviation),
    /// An absent edge both endpoints weakly prefer.
    Pair(PairWitness),
}

impl Witness {
    /// Recomputes both recorded costs from scratch. The deviated profile
    /// need not be essential, e.g. after a BLF drop.
    pub fn replay(
        &self,
        s: &StrategyProfile,
        rule: FormationRule,
        spec: &AdversarySpec,
        alpha: Rational,
    ) -> Result<bool> {
        check_alpha(alpha)?;
        s.require_essential(rule)?;
        let cost = |p: &StrategyProfile, v: usize| {
            crate::cost::player_cost(&p.final_graph(rule), spec, alpha, v, p.request_count(v))
        };
        match self {
            Witness::Deviation(d) => {
                let after = s.apply_deviation(d.player, &d.add, &d.drop)?;
                Ok(cost(s, d.player)? == d.old_cost && cost(&after, d.player)? == d.new_cost)
            }
            Witness::Pair(p) => {
                let after = s.apply_deviation(p.v, &[p.w], &[])?.apply_deviation(p.w, &[p.v], &[])?;
                Ok(cost(s, p.v)? == p.old_cost_v
                    && cost(s, p.w)? == p.old_cost_w
                    && cost(&after, p.v)? == p.new_cost_v
                    && cost(&after, p.w)? == p.new_cost_w)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub concept: ConceptKind,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_witness(concept: ConceptKind, witness: Option<Witness>) -> Verdict {
        Verdict { concept, holds: witness.is_none(), witness }
    }
}

/// Drop subset of one player's requests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityViolation {
    pub player: usize,
    pub dropped: Vec<usize>,
    #[serde(with = "crate::rational::serde_rational")]
    pub joint: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub sum_of_singles: Rational,
    /// `sum_of_singles − joint`, always positive.
    #[serde(with = "crate::rational::serde_rational")]
    pub slack: Rational,
}

/// One player's search space: a fixed edge set plus a subset of edges from
/// the player to `targets`. The player pays for `fixed_requests` plus the
/// chosen subset.
struct PlayerView<'a> {
    n: usize,
    player: usize,
    base: Vec<Edge>,
    targets: Vec<usize>,
    fixed_requests: usize,
    spec: &'a AdversarySpec,
    alpha: Rational,
}

impl PlayerView<'_> {
    fn graph(&self, mask: usize) -> Graph {
        let mut edges = self.base.clone();
        edges.extend(
            self.targets
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &w)| Edge::new(self.player, w)),
        );
        Graph::from_edges(self.n, edges)
    }

    fn cost(&self, mask: usize) -> Result<ExtendedRational> {
        let g = self.graph(mask);
        Ok(match Disconnection::of(&g, self.spec)? {
            None => ExtendedRational::Infinite,
            Some(d) => {
                let paid = self.fixed_requests + mask.count_ones() as usize;
                ExtendedRational::Finite(self.alpha * Rational::from_integer(paid as i128) + d.at(self.player))
            }
        })
    }

    fn chosen(&self, mask: usize) -> Vec<usize> {
        self.targets.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &w)| w).collect()
    }

    fn space(&self, budget: u128) -> Result<usize> {
        let k = self.targets.len();
        let candidates = if k >= 127 { u128::MAX } else { 1u128 << k };
        if candidates > budget || k >= usize::BITS as usize {
            return Err(Error::SearchTooLarge { candidates, budget });
        }
        Ok(1usize << k)
    }
}

/// Exhaustive verifier configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checker {
    /// Maximum number of candidate request sets per player search.
    pub budget: u128,
}

impl Default for Checker {
    fn default() -> Self {
        Checker { budget: DEFAULT_BUDGET }
    }
}

fn check_alpha(alpha: Rational) -> Result<()> {
    if alpha <= Rational::from_integer(0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    Ok(())
}

impl Checker {
    pub fn with_budget(budget: u128) -> Self {
        Checker { budget }
    }

    fn prepare(&self, s: &StrategyProfile, rule: FormationRule, alpha: Rational) -> Result<()> {
        check_alpha(alpha)?;
        s.require_essential(rule)
    }

    /// Under ULF every request set over `{w : (w, v) not requested}`; under
    /// BLF every subset of `v`'s requests to keep, since a one-sided request
    /// only adds cost. Ties keep the current strategy.
    pub fn best_unilateral_deviation(
        &self,
        s: &StrategyProfile,
        v: usize,
        rule: FormationRule,
        spec: &AdversarySpec,
        alpha: Rational,
    ) -> Result<Deviation> {
        self.prepare(s, rule, alpha)?;
        if v >= s.n() {
            return Err(Error::UnknownVertex { vertex: v, n: s.n() });
        }
        self.best_deviation_unchecked(s, v, rule, spec, alpha)
    }

    fn unilateral_view<'a>(
        &self,
        s: &StrategyProfile,
        v: usize,
        rule: FormationRule,
        spec: &'a AdversarySpec,
        alpha: Rational,
    ) -> PlayerView<'a> {
        match rule {
            FormationRule::Unilateral => PlayerView {
                n: s.n(),
                player: v,
                base: s.requests().iter().filter(|&&(a, _)| a != v).map(|&(a, b)| Edge::new(a, b)).collect(),
                targets: (0..s.n()).filter(|&w| w != v && !s.requested(w, v)).collect(),
                fixed_requests: 0,
                spec,
                alpha,
            },
            FormationRule::Bilateral => PlayerView {
                n: s.n(),
                player: v,
                base: s.final_graph(rule).edges().iter().copied().filter(|e| !e.contains(v)).collect(),
                targets: s.targets(v),
                fixed_requests: 0,
                spec,
                alpha,
            },
        }
    }

    fn best_deviation_unchecked(
        &self,
        s: &StrategyProfile,
        v: usize,
        rule: FormationRule,
        spec: &AdversarySpec,
        alpha: Rational,
    ) -> Result<Deviation> {
        let view = self.unilateral_view(s, v, rule, spec, alpha);
        let size = view.space(self.budget)?;
        let current: usize =
            view.targets.iter().enumerate().filter(|(_, &w)| s.requested(v, w)).map(|(j, _)| 1 << j).sum();
        let old_cost = view.cost(current)?;
        let (best_cost, best_mask) = match par::min_by_key(0..size, |mask| view.cost(mask))? {
            Some((cost, mask)) if cost < old_cost => (cost, mask),
            _ => (old_cost, current),
        };
        let chosen = view.chosen(best_mask);
        let held = s.targets(v);
        Ok(Deviation {
            player: v,
            add: chosen.iter().copied().filter(|w| !held.contains(w)).collect(),
            drop: held.iter().copied().filter(|w| !chosen.contains(w)).collect(),
            old_cost,
            new_cost: best_cost,
        })
    }

    /// First player (by id) with a strictly improving deviation.
    fn unilateral_witness(
        &self,
        s: &StrategyProfile,
        rule: FormationRule,
        spec: &AdversarySpec,
        alpha: Rational,
    ) -> Result<Option<Witness>> {
        par::find_first(0..s.n(), |v| {
            let d = self.best_deviation_unchecked(s, v, rule, spec, alpha)?;
            Ok(d.is_improvement().then_some(Witness::Deviation(d)))
        })
    }

    pub fn is_nash(&self, s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
        self.prepare(s, FormationRule::Unilateral, alpha)?;
        let w = self.unilateral_witness(s, FormationRule::Unilateral, spec, alpha)?;
        Ok(Verdict::from_witness(ConceptKind::Nash, w))
    }

    /// NE, and every nonempty set of additions to non-neighbours strictly
    /// hurts the adder.
    pub fn is_max_nash(&self, s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
        self.prepare(s, FormationRule::Unilateral, alpha)?;
        if let Some(w) = self.unilateral_witness(s, FormationRule::Unilateral, spec, alpha)? {
            return Ok(Verdict::from_witness(ConceptKind::MaxNash, Some(w)));
        }
        let g = s.final_graph(FormationRule::Unilateral);
        let w = par::find_first(0..s.n(), |v| {
            let view = PlayerView {
                n: s.n(),
                player: v,
                base: g.edges().to_vec(),
                targets: (0..s.n()).filter(|&w| w != v && !g.has_edge(Edge::new(v, w))).collect(),
                fixed_requests: s.request_count(v),
                spec,
                alpha,
            };
            let size = view.space(self.budget)?;
            let old_cost = view.cost(0)?;
            par::find_first(1..size, |mask| {
                let new_cost = view.cost(mask)?;
                Ok((new_cost <= old_cost).then(|| {
                    Witness::Deviation(Deviation {
                        player: v,
                        add: view.chosen(mask),
                        drop: Vec::new(),
                        old_cost,
                        new_cost,
                    })
                }))
            })
        })?;
        Ok(Verdict::from_witness(ConceptKind::MaxNash, w))
    }

    /// First absent edge `{v, w}`, `v < w`, whose joint addition leaves
    /// neither endpoint worse off.
    fn pair_witness(&self, s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Option<Witness>> {
        let g = s.final_graph(FormationRule::Bilateral);
        let before = Disconnection::of(&g, spec)?;
        let cost_in = |d: &Option<Disconnection>, v: usize, paid: usize| match d {
            None => ExtendedRational::Infinite,
            Some(d) => ExtendedRational::Finite(alpha * Rational::from_integer(paid as i128) + d.at(v)),
        };
        let absent = g.non_edges();
        par::find_first(0..absent.len(), |i| {
            let e = absent[i];
            let (v, w) = (e.lo(), e.hi());
            let after = Disconnection::of(&g.with_edge(e), spec)?;
            let (cv, cw) = (s.request_count(v), s.request_count(w));
            let pair = PairWitness {
                v,
                w,
                old_cost_v: cost_in(&before, v, cv),
                new_cost_v: cost_in(&after, v, cv + 1),
                old_cost_w: cost_in(&before, w, cw),
                new_cost_w: cost_in(&after, w, cw + 1),
            };
            let violated = pair.new_cost_v <= pair.old_cost_v && pair.new_cost_w <= pair.old_cost_w;
            Ok(violated.then_some(Witness::Pair(pair)))
        })
    }

    /// No player gains by dropping any subset of her links, and every absent
    /// edge passes the pairwise implication.
    pub fn is_pne(&self, s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
        self.prepare(s, FormationRule::Bilateral, alpha)?;
        let mut w = self.unilateral_witness(s, FormationRule::Bilateral, spec, alpha)?;
        if w.is_none() {
            w = self.pair_witness(s, spec, alpha)?;
        }
        Ok(Verdict::from_witness(ConceptKind::PairwiseNash, w))
    }

    /// Single-link drops and the pairwise implication only.
    pub fn is_pairwise_stable(&self, s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
        self.prepare(s, FormationRule::Bilateral, alpha)?;
        let g = s.final_graph(FormationRule::Bilateral);
        let base = player_costs(&g, spec, alpha, s)?;
        let edges = g.edges();
        let drop = par::find_first(0..edges.len() * 2, |i| {
            let e = edges[i / 2];
            let (v, w) = if i % 2 == 0 { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) };
            let after = g.without_edge(e);
            let new_cost = crate::cost::player_cost(&after, spec, alpha, v, s.request_count(v) - 1)?;
            let d = Deviation { player: v, add: Vec::new(), drop: vec![w], old_cost: base[v], new_cost };
            Ok(d.is_improvement().then_some(Witness::Deviation(d)))
        })?;
        let w = match drop {
            Some(w) => Some(w),
            None => self.pair_witness(s, spec, alpha)?,
        };
        Ok(Verdict::from_witness(ConceptKind::PairwiseStable, w))
    }

    pub fn verify(
        &self,
        concept: ConceptKind,
        s: &StrategyProfile,
        rule: FormationRule,
        spec: &AdversarySpec,
        alpha: Rational,
    ) -> Result<Verdict> {
        concept.require_rule(rule)?;
        match concept {
            ConceptKind::Nash => self.is_nash(s, spec, alpha),
            ConceptKind::MaxNash => self.is_max_nash(s, spec, alpha),
            ConceptKind::PairwiseNash => self.is_pne(s, spec, alpha),
            ConceptKind::PairwiseStable => self.is_pairwise_stable(s, spec, alpha),
        }
    }
}

fn player_costs(
    g: &Graph,
    spec: &AdversarySpec,
    alpha: Rational,
    s: &StrategyProfile,
) -> Result<Vec<ExtendedRational>> {
    let d = Disconnection::of(g, spec)?;
    Ok((0..g.n())
        .map(|v| match &d {
            None => ExtendedRational::Infinite,
            Some(d) => ExtendedRational::Finite(alpha * Rational::from_integer(s.request_count(v) as i128) + d.at(v)),
        })
        .collect())
}

pub fn best_unilateral_deviation(
    s: &StrategyProfile,
    v: usize,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
) -> Result<Deviation> {
    Checker::default().best_unilateral_deviation(s, v, rule, spec, alpha)
}

pub fn is_nash(s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
    Checker::default().is_nash(s, spec, alpha)
}

pub fn is_max_nash(s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
    Checker::default().is_max_nash(s, spec, alpha)
}

pub fn is_pne(s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
    Checker::default().is_pne(s, spec, alpha)
}

pub fn is_pairwise_stable(s: &StrategyProfile, spec: &AdversarySpec, alpha: Rational) -> Result<Verdict> {
    Checker::default().is_pairwise_stable(s, spec, alpha)
}

/// Every drop subset of `v`'s requests of size `2..=max_k` where the joint
/// change in disconnection cost falls short of the sum of single changes.
/// `α` cancels from both sides but is validated like everywhere else.
pub fn convexity_violations(
    s: &StrategyProfile,
    v: usize,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
    max_k: usize,
) -> Result<Vec<ConvexityViolation>> {
    check_alpha(alpha)?;
    s.require_essential(rule)?;
    if v >= s.n() {
        return Err(Error::UnknownVertex { vertex: v, n: s.n() });
    }
    let g = s.final_graph(rule);
    let held = s.targets(v);
    let max_k = max_k.min(held.len());
    let indirect = |dropped: &[usize]| -> Result<ExtendedRational> {
        let removed: Vec<Edge> = dropped.iter().map(|&w| Edge::new(v, w)).collect();
        Ok(match Disconnection::of(&g.without_edges(&removed), spec)? {
            None => ExtendedRational::Infinite,
            Some(d) => ExtendedRational::Finite(d.at(v)),
        })
    };
    let Some(base) = indirect(&[])?.finite() else {
        return Ok(Vec::new());
    };
    let singles: Vec<ExtendedRational> = held.iter().map(|&w| indirect(&[w])).collect::<Result<_>>()?;
    let mut out = Vec::new();
    if max_k < 2 {
        return Ok(out);
    }
    let h = held.len();
    for mask in 1usize..(1 << h) {
        let k = mask.count_ones() as usize;
        if k < 2 || k > max_k {
            continue;
        }
        let members: Vec<usize> = (0..h).filter(|j| mask >> j & 1 == 1).collect();
        let dropped: Vec<usize> = members.iter().map(|&j| held[j]).collect();
        let Some(joint) = indirect(&dropped)?.finite() else {
            continue;
        };
        // a finite joint removal means every single removal is finite too
        let sum: Rational = members.iter().map(|&j| singles[j].finite().expect("finite") - base).sum();
        let joint = joint - base;
        if sum > joint {
            out.push(ConvexityViolation { player: v, dropped, joint, sum_of_singles: sum, slack: sum - joint });
        }
    }
    Ok(out)
}
