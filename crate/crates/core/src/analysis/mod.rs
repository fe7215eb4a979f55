//! Exhaustive optima and equilibria, prices of anarchy and stability,
//! best-response dynamics and the structural audit.

pub mod audit;
pub mod dynamics;
pub mod enumerate;
pub mod optimum;

pub use audit::{theorem_audit, AuditEntry, AuditReport};
pub use dynamics::{better_response_dynamics, DynamicsResult, Step};
pub use enumerate::{
    analyze, enumerate_equilibria, find_ps_not_pne, price_of_anarchy, price_of_stability, AnalysisResult, Equilibrium,
    Limits, Price, CSV_HEADER,
};
pub use optimum::{brute_force_optimum, optimum_closed_form, Optimum, OptimumShape};
