//! Adversarial network formation: exact costs, equilibrium verification and
//! exhaustive analysis for small networks.

pub mod adversary;
pub mod analysis;
pub mod constructions;
pub mod cost;
pub mod equilibrium;
pub mod error;
pub mod graph;
pub mod par;
pub mod rational;
pub mod strategy;

pub use adversary::{critical_edges, distribution, is_symmetric_on, AdversarySpec, CriticalEdges, EdgeDistribution};
pub use cost::{cost_report, disconnection_cost, graph_social_cost, individual_cost, social_cost, CostReport};
pub use equilibrium::{
    best_unilateral_deviation, convexity_violations, is_max_nash, is_nash, is_pairwise_stable, is_pne, Checker,
    ConceptKind, ConvexityViolation, Deviation, PairWitness, Verdict, Witness,
};
pub use error::{Error, Result};
pub use graph::{all_pairs, bridge_tree_diameter, BridgeStructure, BridgeTree, Edge, Graph};
pub use rational::{format_rational, parse_alpha, parse_rational, ExtendedRational, Rational};
pub use strategy::{FormationRule, StrategyProfile};
