//! Exact individual, disconnection and social cost.

use num_traits::Zero;
use serde::Serialize;

use crate::adversary::{probs_by_index, AdversarySpec, EdgeDistribution};
use crate::error::{Error, Result};
use crate::graph::{BridgeStructure, Graph};
use crate::rational::{ExtendedRational, Rational};
use crate::strategy::{FormationRule, StrategyProfile};

fn check_alpha(alpha: Rational) -> Result<()> {
    if alpha <= Rational::zero() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    Ok(())
}

/// `Σ_e rel(e, v)·P(e)`, or `Infinite` when `g` is disconnected.
pub fn disconnection_cost(g: &Graph, dist: &EdgeDistribution, v: usize) -> Result<ExtendedRational> {
    g.check_vertex(v)?;
    if let Some(e) = dist.support().into_iter().find(|&e| !g.has_edge(e)) {
        return Err(Error::DistributionMismatch(e));
    }
    let Ok(bs) = g.bridge_structure() else {
        return Ok(ExtendedRational::Infinite);
    };
    let total =
        bs.bridge_indices().map(|i| Rational::from_integer(bs.rel_at(i, v) as i128) * dist.prob(bs.edge_at(i))).sum();
    Ok(ExtendedRational::Finite(total))
}

/// Per-player disconnection cost of a connected graph, with the adversary's
/// probabilities looked up by edge index.
pub(crate) struct Disconnection {
    bs: BridgeStructure,
    probs: Vec<Rational>,
}

impl Disconnection {
    /// `None` when `g` is disconnected.
    pub(crate) fn of(g: &Graph, spec: &AdversarySpec) -> Result<Option<Disconnection>> {
        let Ok(bs) = g.bridge_structure() else {
            return Ok(None);
        };
        let probs = if g.m() == 0 { Vec::new() } else { probs_by_index(spec, &bs)? };
        Ok(Some(Disconnection { bs, probs }))
    }

    pub(crate) fn at(&self, v: usize) -> Rational {
        let mut total = Rational::zero();
        for i in self.bs.bridge_indices() {
            let p = self.probs[i];
            if !p.is_zero() {
                total += Rational::from_integer(self.bs.rel_at(i, v) as i128) * p;
            }
        }
        total
    }

    /// `Σ_e sep(e)·P(e)`, which equals `Σ_v I_v`.
    pub(crate) fn total(&self) -> Rational {
        self.bs.bridge_indices().map(|i| Rational::from_integer(self.bs.sep_at(i) as i128) * self.probs[i]).sum()
    }
}

/// Cost of `v` in the final graph `g` when `v` pays for `requests` links.
pub(crate) fn player_cost(
    g: &Graph,
    spec: &AdversarySpec,
    alpha: Rational,
    v: usize,
    requests: usize,
) -> Result<ExtendedRational> {
    Ok(match Disconnection::of(g, spec)? {
        None => ExtendedRational::Infinite,
        Some(d) => ExtendedRational::Finite(alpha * Rational::from_integer(requests as i128) + d.at(v)),
    })
}

/// `||S_v||·α + I_v(G(S))`.
pub fn individual_cost(
    s: &StrategyProfile,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
    v: usize,
) -> Result<ExtendedRational> {
    check_alpha(alpha)?;
    s.require_essential(rule)?;
    if v >= s.n() {
        return Err(Error::UnknownVertex { vertex: v, n: s.n() });
    }
    player_cost(&s.final_graph(rule), spec, alpha, v, s.request_count(v))
}

/// Social cost as the sum of individual costs, cross-checked against the
/// edge form `βmα + Σ_e sep(e)P(e)` with `β` 1 under ULF and 2 under BLF.
pub fn social_cost(
    s: &StrategyProfile,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
) -> Result<ExtendedRational> {
    check_alpha(alpha)?;
    s.require_essential(rule)?;
    let g = s.final_graph(rule);
    social_cost_of_graph(&g, rule, spec, alpha, |v| s.request_count(v))
}

pub(crate) fn social_cost_of_graph(
    g: &Graph,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
    requests: impl Fn(usize) -> usize,
) -> Result<ExtendedRational> {
    let Some(d) = Disconnection::of(g, spec)? else {
        return Ok(ExtendedRational::Infinite);
    };
    let per_player: Rational = (0..g.n()).map(|v| alpha * Rational::from_integer(requests(v) as i128) + d.at(v)).sum();
    let builders = match rule {
        FormationRule::Unilateral => 1,
        FormationRule::Bilateral => 2,
    };
    let edge_form = alpha * Rational::from_integer((builders * g.m()) as i128) + d.total();
    assert_eq!(per_player, edge_form, "social cost forms disagree");
    Ok(ExtendedRational::Finite(edge_form))
}

/// Social cost of an essential profile with final graph `g`; ownership does
/// not matter.
pub fn graph_social_cost(
    g: &Graph,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
) -> Result<ExtendedRational> {
    check_alpha(alpha)?;
    let s = StrategyProfile::from_graph(g, rule);
    social_cost_of_graph(g, rule, spec, alpha, |v| s.request_count(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayerCost {
    pub player: usize,
    pub requests: usize,
    pub building: ExtendedRational,
    pub disconnection: ExtendedRational,
    pub total: ExtendedRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub rule: FormationRule,
    pub adversary: String,
    #[serde(with = "crate::rational::serde_rational")]
    pub alpha: Rational,
    pub connected: bool,
    pub players: Vec<PlayerCost>,
    pub social: ExtendedRational,
}

pub fn cost_report(
    s: &StrategyProfile,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
) -> Result<CostReport> {
    check_alpha(alpha)?;
    s.require_essential(rule)?;
    let g = s.final_graph(rule);
    let d = Disconnection::of(&g, spec)?;
    let players: Vec<PlayerCost> = (0..s.n())
        .map(|v| {
            let requests = s.request_count(v);
            let building = ExtendedRational::Finite(alpha * Rational::from_integer(requests as i128));
            let disconnection = match &d {
                Some(d) => ExtendedRational::Finite(d.at(v)),
                None => ExtendedRational::Infinite,
            };
            PlayerCost { player: v, requests, building, disconnection, total: building + disconnection }
        })
        .collect();
    let social = social_cost_of_graph(&g, rule, spec, alpha, |v| s.request_count(v))?;
    debug_assert_eq!(social, players.iter().map(|p| p.total).sum());
    Ok(CostReport { rule, adversary: spec.short_name().to_string(), alpha, connected: d.is_some(), players, social })
}
