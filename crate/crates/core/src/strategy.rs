//! Strategy profiles as directed request relations and the two final-graph
//! maps.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormationRule {
    /// One endpoint's request builds the edge.
    #[serde(rename = "ulf")]
    Unilateral,
    /// Both endpoints must request it.
    #[serde(rename = "blf")]
    Bilateral,
}

impl FormationRule {
    pub fn short_name(&self) -> &'static str {
        match self {
            FormationRule::Unilateral => "ulf",
            FormationRule::Bilateral => "blf",
        }
    }
}

impl fmt::Display for FormationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for FormationRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ulf" | "unilateral" => Ok(FormationRule::Unilateral),
            "blf" | "bilateral" => Ok(FormationRule::Bilateral),
            other => Err(Error::Parse(format!("unknown rule {other:?} (expected ulf|blf)"))),
        }
    }
}

/// `requests` holds `(v, w)` whenever player `v` asks for the edge `{v, w}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyProfile {
    n: usize,
    requests: BTreeSet<(usize, usize)>,
}

impl StrategyProfile {
    pub fn new(n: usize, requests: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (v, w) in requests {
            if v >= n || w >= n {
                return Err(Error::UnknownVertex { vertex: v.max(w), n });
            }
            if v == w {
                return Err(Error::SelfRequest(v));
            }
            set.insert((v, w));
        }
        Ok(StrategyProfile { n, requests: set })
    }

    pub fn empty(n: usize) -> Self {
        StrategyProfile { n, requests: BTreeSet::new() }
    }

    /// The essential profile with final graph `g`: under ULF the lower id
    /// owns each edge, under BLF both endpoints request it.
    pub fn from_graph(g: &Graph, rule: FormationRule) -> Self {
        let mut requests = BTreeSet::new();
        for e in g.edges() {
            requests.insert((e.lo(), e.hi()));
            if rule == FormationRule::Bilateral {
                requests.insert((e.hi(), e.lo()));
            }
        }
        StrategyProfile { n: g.n(), requests }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn requests(&self) -> &BTreeSet<(usize, usize)> {
        &self.requests
    }

    pub fn requested(&self, v: usize, w: usize) -> bool {
        self.requests.contains(&(v, w))
    }

    /// Targets requested by `v`, ascending.
    pub fn targets(&self, v: usize) -> Vec<usize> {
        self.requests.range((v, 0)..(v + 1, 0)).map(|&(_, w)| w).collect()
    }

    /// `||S_v||`, the number of requests `v` pays for.
    pub fn request_count(&self, v: usize) -> usize {
        self.requests.range((v, 0)..(v + 1, 0)).count()
    }

    pub fn final_graph(&self, rule: FormationRule) -> Graph {
        let edges = match rule {
            FormationRule::Unilateral => self.requests.iter().map(|&(v, w)| Edge::new(v, w)).collect(),
            FormationRule::Bilateral => self
                .requests
                .iter()
                .filter(|&&(v, w)| v < w && self.requested(w, v))
                .map(|&(v, w)| Edge::new(v, w))
                .collect(),
        };
        Graph::from_edges(self.n, edges)
    }

    /// First request violating essentiality, if any.
    pub fn essentiality_violation(&self, rule: FormationRule) -> Option<(usize, usize)> {
        self.requests.iter().copied().find(|&(v, w)| match rule {
            FormationRule::Unilateral => self.requested(w, v),
            FormationRule::Bilateral => !self.requested(w, v),
        })
    }

    pub fn is_essential(&self, rule: FormationRule) -> bool {
        self.essentiality_violation(rule).is_none()
    }

    pub fn require_essential(&self, rule: FormationRule) -> Result<()> {
        match self.essentiality_violation(rule) {
            Some(pair) => Err(Error::NotEssential(pair)),
            None => Ok(()),
        }
    }

    /// Drops redundant (ULF) or useless (BLF) requests. Under ULF a doubly
    /// requested edge keeps the request of the smaller id.
    pub fn essentialize(&self, rule: FormationRule) -> Self {
        let requests = self
            .requests
            .iter()
            .copied()
            .filter(|&(v, w)| match rule {
                FormationRule::Unilateral => !(self.requested(w, v) && w < v),
                FormationRule::Bilateral => self.requested(w, v),
            })
            .collect();
        StrategyProfile { n: self.n, requests }
    }

    /// `S + {v}×add − {v}×drop`.
    pub fn apply_deviation(&self, v: usize, add: &[usize], drop: &[usize]) -> Result<Self> {
        if v >= self.n {
            return Err(Error::UnknownVertex { vertex: v, n: self.n });
        }
        if add.contains(&v) || drop.contains(&v) {
            return Err(Error::SelfRequest(v));
        }
        if let Some(w) = add.iter().find(|w| drop.contains(w)) {
            return Err(Error::InvalidProfile(format!("target {w} both added and dropped")));
        }
        if let Some(&w) = add.iter().chain(drop).find(|&&w| w >= self.n) {
            return Err(Error::UnknownVertex { vertex: w, n: self.n });
        }
        let mut out = self.clone();
        for &w in add {
            out.requests.insert((v, w));
        }
        for &w in drop {
            out.requests.remove(&(v, w));
        }
        Ok(out)
    }

    /// `S^B_vw = min(1, S_vw + S_wv)`.
    pub fn to_bilateral(&self) -> Self {
        let requests = self.requests.iter().flat_map(|&(v, w)| [(v, w), (w, v)]).collect();
        StrategyProfile { n: self.n, requests }
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    n: usize,
    requests: Vec<[usize; 2]>,
}

impl Serialize for StrategyProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileJson { n: self.n, requests: self.requests.iter().map(|&(v, w)| [v, w]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StrategyProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ProfileJson::deserialize(d)?;
        StrategyProfile::new(raw.n, raw.requests.into_iter().map(|[v, w]| (v, w))).map_err(serde::de::Error::custom)
    }
}
