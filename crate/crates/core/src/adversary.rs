//! Adversaries: maps from a connected graph to an exact distribution over
//! its edges, one of which is then deleted.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BridgeStructure, Edge, Graph};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// Probability per edge. Edges of the graph missing from `probs` carry zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDistribution {
    probs: BTreeMap<Edge, Rational>,
}

impl EdgeDistribution {
    /// Validates against `g`: support inside the edge set, no negative
    /// entry, exact total 1.
    pub fn new(g: &Graph, probs: BTreeMap<Edge, Rational>) -> Result<Self> {
        let mut total = Rational::zero();
        for (&e, p) in &probs {
            if !g.has_edge(e) {
                return Err(Error::TableEdgeOutside(e));
            }
            if p.is_negative() {
                return Err(Error::TableNegative(e));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::TableTotal(total));
        }
        Ok(EdgeDistribution { probs })
    }

    pub fn prob(&self, e: Edge) -> Rational {
        self.probs.get(&e).copied().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Rational)> + '_ {
        self.probs.iter().map(|(&e, &p)| (e, p))
    }

    /// Edges with positive probability.
    pub fn support(&self) -> Vec<Edge> {
        self.probs.iter().filter(|(_, p)| p.is_positive()).map(|(&e, _)| e).collect()
    }

    pub fn total(&self) -> Rational {
        self.probs.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversarySpec {
    /// Uniform over all edges.
    SimpleMinded,
    /// Uniform over the edges of maximum separation.
    Smart,
    /// A fixed table, validated against the graph it is evaluated on.
    Custom(BTreeMap<Edge, Rational>),
}

impl AdversarySpec {
    pub fn short_name(&self) -> &'static str {
        match self {
            AdversarySpec::SimpleMinded => "simple",
            AdversarySpec::Smart => "smart",
            AdversarySpec::Custom(_) => "custom",
        }
    }

    /// `simple`, `smart`, or a custom table given as JSON text.
    pub fn custom_from_json(text: &str) -> Result<Self> {
        let raw: TableJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("custom table: {e}")))?;
        let mut table = BTreeMap::new();
        for (u, v, p) in raw.probs {
            let e = Edge::try_new(u, v)?;
            if table.insert(e, parse_rational(&p)?).is_some() {
                return Err(Error::Parse(format!("custom table lists {e} twice")));
            }
        }
        Ok(AdversarySpec::Custom(table))
    }

    pub fn custom_to_json(table: &BTreeMap<Edge, Rational>) -> String {
        let raw = TableJson { probs: table.iter().map(|(e, p)| (e.lo(), e.hi(), format_rational(p))).collect() };
        serde_json::to_string(&raw).expect("table serializes")
    }
}

impl fmt::Display for AdversarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    probs: Vec<(usize, usize, String)>,
}

/// The edges of maximum separation together with `sep_max` and their count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalEdges {
    pub edges: Vec<Edge>,
    pub sep_max: usize,
    pub m_max: usize,
}

pub fn critical_edges(g: &Graph) -> Result<CriticalEdges> {
    let bs = g.bridge_structure()?;
    Ok(critical_from(&bs))
}

pub(crate) fn critical_indices(bs: &BridgeStructure) -> (Vec<usize>, usize) {
    let m = bs.edge_count();
    let sep_max = (0..m).map(|i| bs.sep_at(i)).max().unwrap_or(0);
    let idx = (0..m).filter(|&i| bs.sep_at(i) == sep_max).collect();
    (idx, sep_max)
}

pub(crate) fn critical_from(bs: &BridgeStructure) -> CriticalEdges {
    let (idx, sep_max) = critical_indices(bs);
    let edges: Vec<Edge> = idx.iter().map(|&i| bs.edge_at(i)).collect();
    CriticalEdges { m_max: edges.len(), edges, sep_max }
}

pub fn distribution(spec: &AdversarySpec, g: &Graph) -> Result<EdgeDistribution> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    match spec {
        AdversarySpec::SimpleMinded => {
            let p = Rational::new(1, g.m() as i128);
            Ok(EdgeDistribution { probs: g.edges().iter().map(|&e| (e, p)).collect() })
        }
        AdversarySpec::Smart => {
            let crit = critical_edges(g)?;
            let p = Rational::new(1, crit.m_max as i128);
            let probs =
                g.edges().iter().map(|&e| (e, if crit.edges.contains(&e) { p } else { Rational::zero() })).collect();
            Ok(EdgeDistribution { probs })
        }
        AdversarySpec::Custom(table) => EdgeDistribution::new(g, table.clone()),
    }
}

/// Whether equal separation always means equal probability.
pub fn is_symmetric_on(spec: &AdversarySpec, g: &Graph) -> Result<bool> {
    let dist = distribution(spec, g)?;
    let bs = g.bridge_structure()?;
    let mut by_sep: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, &e) in g.edges().iter().enumerate() {
        let p = dist.prob(e);
        if *by_sep.entry(bs.sep_at(i)).or_insert(p) != p {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Probability the adversary puts on each edge index of `bs`, without
/// building a map. The caller guarantees `m >= 1`.
pub(crate) fn probs_by_index(spec: &AdversarySpec, bs: &BridgeStructure) -> Result<Vec<Rational>> {
    let m = bs.edge_count();
    match spec {
        AdversarySpec::SimpleMinded => Ok(vec![Rational::new(1, m as i128); m]),
        AdversarySpec::Smart => {
            let (idx, _) = critical_indices(bs);
            let p = Rational::new(1, idx.len() as i128);
            let mut out = vec![Rational::zero(); m];
            for i in idx {
                out[i] = p;
            }
            Ok(out)
        }
        AdversarySpec::Custom(table) => {
            let mut out = vec![Rational::zero(); m];
            let mut total = Rational::zero();
            for (&e, &p) in table {
                let i = bs.index_of(e).ok_or(Error::TableEdgeOutside(e))?;
                if p.is_negative() {
                    return Err(Error::TableNegative(e));
                }
                out[i] = p;
                total += p;
            }
            if total != int(1) {
                return Err(Error::TableTotal(total));
            }
            Ok(out)
        }
    }
}
