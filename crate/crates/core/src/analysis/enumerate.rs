use std::fmt;

use serde::{Serialize, Serializer};

use super::optimum::{brute_force_optimum, graph_from_mask, DEFAULT_OPTIMUM_MAX_N};
use crate::adversary::AdversarySpec;
use crate::cost::social_cost;
use crate::equilibrium::{Checker, ConceptKind};
use crate::error::{Error, Result};
use crate::graph::{all_pairs, Edge, Graph};
use crate::par;
use crate::rational::{format_rational, ExtendedRational, Rational};
use crate::strategy::{FormationRule, StrategyProfile};

/// Size caps for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub checker: Checker,
    pub ulf_max_n: usize,
    pub blf_max_n: usize,
    pub optimum_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { checker: Checker::default(), ulf_max_n: 5, blf_max_n: 6, optimum_max_n: DEFAULT_OPTIMUM_MAX_N }
    }
}

fn too_large(base: u128, pairs: usize, cap_n: usize) -> Error {
    let pow = |k: usize| base.checked_pow(k as u32).unwrap_or(u128::MAX);
    Error::SearchTooLarge { candidates: pow(pairs), budget: pow(cap_n * cap_n.saturating_sub(1) / 2) }
}

/// ULF profile number `index`: base-3 digit `i` says whether `pairs[i]` is
/// absent, owned by its lower or by its higher endpoint.
fn ulf_profile(n: usize, pairs: &[Edge], mut index: usize) -> StrategyProfile {
    let mut requests = Vec::new();
    for e in pairs {
        match index % 3 {
            1 => requests.push((e.lo(), e.hi())),
            2 => requests.push((e.hi(), e.lo())),
            _ => {}
        }
        index /= 3;
    }
    StrategyProfile::new(n, requests).expect("valid pairs")
}

/// Number of essential profiles under `rule`, checked against the caps.
fn profile_space(n: usize, rule: FormationRule, limits: &Limits) -> Result<(Vec<Edge>, usize)> {
    let pairs = all_pairs(n);
    let p = pairs.len();
    match rule {
        FormationRule::Unilateral => {
            if n > limits.ulf_max_n {
                return Err(too_large(3, p, limits.ulf_max_n));
            }
            Ok((pairs, 3usize.pow(p as u32)))
        }
        FormationRule::Bilateral => {
            if n > limits.blf_max_n {
                return Err(too_large(2, p, limits.blf_max_n));
            }
            Ok((pairs, 1usize << p))
        }
    }
}

fn profile_at(n: usize, rule: FormationRule, pairs: &[Edge], index: usize) -> StrategyProfile {
    match rule {
        FormationRule::Unilateral => ulf_profile(n, pairs, index),
        FormationRule::Bilateral => StrategyProfile::from_graph(&graph_from_mask(n, pairs, index), rule),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equilibrium {
    pub profile: StrategyProfile,
    pub social: ExtendedRational,
}

/// Every essential profile passing the concept's verifier, in enumeration
/// order.
pub fn enumerate_equilibria(
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    concept: ConceptKind,
    limits: &Limits,
) -> Result<Vec<Equilibrium>> {
    concept.require_rule(rule)?;
    let (pairs, count) = profile_space(n, rule, limits)?;
    par::filter_map(0..count, |index| {
        let s = profile_at(n, rule, &pairs, index);
        if !limits.checker.verify(concept, &s, rule, spec, alpha)?.holds {
            return Ok(None);
        }
        let social = social_cost(&s, rule, spec, alpha)?;
        Ok(Some(Equilibrium { profile: s, social }))
    })
}

/// A ratio, or the marker for parameter combinations without equilibria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Price {
    Ratio(ExtendedRational),
    NoEquilibrium,
}

impl Price {
    pub fn ratio(&self) -> Option<ExtendedRational> {
        match self {
            Price::Ratio(r) => Some(*r),
            Price::NoEquilibrium => None,
        }
    }
}

impl fmt::Display for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Price::Ratio(ExtendedRational::Finite(r)) => f.write_str(&format_rational(r)),
            Price::Ratio(r) => write!(f, "{r}"),
            Price::NoEquilibrium => f.write_str("NoEquilibrium"),
        }
    }
}

impl Serialize for Price {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisResult {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub alpha: Rational,
    pub rule: FormationRule,
    pub adversary: String,
    pub concept: ConceptKind,
    pub optimum: ExtendedRational,
    pub optimum_graph: Graph,
    pub equilibria: Vec<Equilibrium>,
    pub poa: Price,
    pub pos: Price,
}

pub const CSV_HEADER: [&str; 9] =
    ["n", "alpha", "rule", "adversary", "concept", "optimum", "poa", "pos", "equilibrium_count"];

impl AnalysisResult {
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.n.to_string(),
            format_rational(&self.alpha),
            self.rule.to_string(),
            self.adversary.clone(),
            self.concept.to_string(),
            self.optimum.to_string(),
            self.poa.to_string(),
            self.pos.to_string(),
            self.equilibria.len().to_string(),
        ]
    }
}

/// Optimum, equilibria, and both prices. Ratios share the brute-force
/// optimum as denominator.
pub fn analyze(
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    concept: ConceptKind,
    limits: &Limits,
) -> Result<AnalysisResult> {
    let equilibria = enumerate_equilibria(n, alpha, rule, spec, concept, limits)?;
    let opt = brute_force_optimum(n, alpha, rule, spec, limits.optimum_max_n)?;
    let ratio = |e: &Equilibrium| e.social.ratio(&opt.value);
    let poa = equilibria.iter().map(ratio).max().map_or(Price::NoEquilibrium, Price::Ratio);
    let pos = equilibria.iter().map(ratio).min().map_or(Price::NoEquilibrium, Price::Ratio);
    Ok(AnalysisResult {
        n,
        alpha,
        rule,
        adversary: spec.short_name().to_string(),
        concept,
        optimum: opt.value,
        optimum_graph: opt.witness,
        equilibria,
        poa,
        pos,
    })
}

pub fn price_of_anarchy(
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    concept: ConceptKind,
) -> Result<Price> {
    Ok(analyze(n, alpha, rule, spec, concept, &Limits::default())?.poa)
}

pub fn price_of_stability(
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    concept: ConceptKind,
) -> Result<Price> {
    Ok(analyze(n, alpha, rule, spec, concept, &Limits::default())?.pos)
}

/// A BLF profile that is pairwise stable but not a pairwise Nash
/// equilibrium, if one exists at these parameters. First in enumeration
/// order.
pub fn find_ps_not_pne(
    n: usize,
    alpha: Rational,
    spec: &AdversarySpec,
    limits: &Limits,
) -> Result<Option<StrategyProfile>> {
    let rule = FormationRule::Bilateral;
    let (pairs, count) = profile_space(n, rule, limits)?;
    par::find_first(0..count, |index| {
        let s = profile_at(n, rule, &pairs, index);
        let ps = limits.checker.is_pairwise_stable(&s, spec, alpha)?.holds;
        Ok((ps && !limits.checker.is_pne(&s, spec, alpha)?.holds).then_some(s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use FormationRule::*;

    #[test]
    fn ulf_decoding_covers_every_essential_profile() {
        let pairs = all_pairs(3);
        let all: std::collections::BTreeSet<_> = (0..27).map(|i| ulf_profile(3, &pairs, i)).collect();
        assert_eq!(all.len(), 27);
        assert!(all.iter().all(|s| s.is_essential(Unilateral)));
    }

    #[test]
    fn expensive_links_give_stars() {
        let eq = enumerate_equilibria(
            4,
            int(10),
            Unilateral,
            &AdversarySpec::SimpleMinded,
            ConceptKind::Nash,
            &Limits::default(),
        )
        .unwrap();
        for center in 0..4 {
            let star: Vec<(usize, usize)> = (0..4).filter(|&i| i != center).map(|i| (center, i)).collect();
            let s = StrategyProfile::new(4, star).unwrap();
            assert!(eq.iter().any(|e| e.profile == s), "outward star at {center}");
        }
    }

    #[test]
    fn cheap_links_give_cycles() {
        let eq = enumerate_equilibria(
            4,
            frac(1, 2),
            Unilateral,
            &AdversarySpec::SimpleMinded,
            ConceptKind::Nash,
            &Limits::default(),
        )
        .unwrap();
        let cycle = StrategyProfile::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(eq.iter().any(|e| e.profile == cycle));
    }

    #[test]
    fn caps_and_rules() {
        let limits = Limits::default();
        let spec = AdversarySpec::SimpleMinded;
        assert!(matches!(
            enumerate_equilibria(6, int(1), Unilateral, &spec, ConceptKind::Nash, &limits),
            Err(Error::SearchTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_equilibria(4, int(1), Unilateral, &spec, ConceptKind::PairwiseStable, &limits),
            Err(Error::RuleMismatch { .. })
        ));
    }

    #[test]
    fn prices_are_ordered() {
        let r = analyze(4, int(3), Unilateral, &AdversarySpec::SimpleMinded, ConceptKind::Nash, &Limits::default())
            .unwrap();
        assert!(!r.equilibria.is_empty());
        let (poa, pos) = (r.poa.ratio().unwrap(), r.pos.ratio().unwrap());
        assert!(poa >= pos && pos >= ExtendedRational::Finite(int(1)));
        assert_eq!(r.csv_record()[0], "4");
        assert_eq!(Price::NoEquilibrium.to_string(), "NoEquilibrium");
    }
}
