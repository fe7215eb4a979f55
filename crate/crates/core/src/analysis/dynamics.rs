use serde::Serialize;

use crate::adversary::AdversarySpec;
use crate::equilibrium::{Checker, PairWitness, Witness};
use crate::error::Result;
use crate::rational::{ExtendedRational, Rational};
use crate::strategy::{FormationRule, StrategyProfile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub round: usize,
    pub change: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynamicsResult {
    pub profile: StrategyProfile,
    pub rounds: usize,
    pub moves: usize,
    pub converged: bool,
    pub trajectory: Vec<Step>,
}

/// Round-robin best response. Each player in id order moves to her best
/// strict improvement; under BLF a drop also withdraws the partner's now
/// one-sided request, and after the players move every absent pair that
/// both endpoints weakly prefer is added in lexicographic order. Stops after
/// a round without change or after `max_rounds` rounds.
pub fn better_response_dynamics(
    s0: &StrategyProfile,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
    max_rounds: usize,
    checker: &Checker,
) -> Result<DynamicsResult> {
    s0.require_essential(rule)?;
    let mut s = s0.clone();
    let mut trajectory = Vec::new();
    let mut rounds = 0;
    let mut converged = false;
    while rounds < max_rounds {
        rounds += 1;
        let before = trajectory.len();
        for v in 0..s.n() {
            let d = checker.best_unilateral_deviation(&s, v, rule, spec, alpha)?;
            if d.is_improvement() {
                s = s.apply_deviation(v, &d.add, &d.drop)?.essentialize(rule);
                trajectory.push(Step { round: rounds, change: Witness::Deviation(d) });
            }
        }
        if rule == FormationRule::Bilateral {
            add_weakly_preferred_pairs(&mut s, spec, alpha, rounds, &mut trajectory)?;
        }
        if trajectory.len() == before {
            converged = true;
            break;
        }
    }
    if max_rounds == 0 {
        converged = stable(&s, rule, spec, alpha, checker)?;
    }
    Ok(DynamicsResult { profile: s, rounds, moves: trajectory.len(), converged, trajectory })
}

fn stable(
    s: &StrategyProfile,
    rule: FormationRule,
    spec: &AdversarySpec,
    alpha: Rational,
    checker: &Checker,
) -> Result<bool> {
    Ok(match rule {
        FormationRule::Unilateral => checker.is_nash(s, spec, alpha)?.holds,
        FormationRule::Bilateral => checker.is_pairwise_stable(s, spec, alpha)?.holds,
    })
}

fn add_weakly_preferred_pairs(
    s: &mut StrategyProfile,
    spec: &AdversarySpec,
    alpha: Rational,
    round: usize,
    trajectory: &mut Vec<Step>,
) -> Result<()> {
    let rule = FormationRule::Bilateral;
    for e in s.final_graph(rule).non_edges() {
        let (v, w) = (e.lo(), e.hi());
        let after = s.apply_deviation(v, &[w], &[])?.apply_deviation(w, &[v], &[])?;
        let cost = |p: &StrategyProfile, x: usize| -> Result<ExtendedRational> {
            crate::cost::individual_cost(p, rule, spec, alpha, x)
        };
        let pair = PairWitness {
            v,
            w,
            old_cost_v: cost(s, v)?,
            new_cost_v: cost(&after, v)?,
            old_cost_w: cost(s, w)?,
            new_cost_w: cost(&after, w)?,
        };
        if pair.new_cost_v <= pair.old_cost_v && pair.new_cost_w <= pair.old_cost_w {
            *s = after;
            trajectory.push(Step { round, change: Witness::Pair(pair) });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::star_profile;
    use crate::graph::Graph;
    use crate::rational::{frac, int};
    use FormationRule::*;

    #[test]
    fn equilibrium_start_does_not_move() {
        let s = star_profile(9, Unilateral).unwrap();
        let r = better_response_dynamics(&s, Unilateral, &AdversarySpec::SimpleMinded, int(2), 10, &Checker::default())
            .unwrap();
        assert_eq!((r.moves, r.rounds, r.converged), (0, 1, true));
        assert_eq!(r.profile, s);
    }

    #[test]
    fn path_closes_into_a_bridgeless_equilibrium() {
        let s = StrategyProfile::from_graph(&Graph::path(5), Unilateral);
        let spec = AdversarySpec::SimpleMinded;
        let r = better_response_dynamics(&s, Unilateral, &spec, frac(1, 2), 50, &Checker::default()).unwrap();
        assert!(r.converged);
        assert!(r.moves > 0);
        let g = r.profile.final_graph(Unilateral);
        assert!(g.bridges().unwrap().is_empty());
        assert!(Checker::default().is_nash(&r.profile, &spec, frac(1, 2)).unwrap().holds);
    }

    #[test]
    fn zero_rounds() {
        let spec = AdversarySpec::SimpleMinded;
        let path = StrategyProfile::from_graph(&Graph::path(5), Unilateral);
        let r = better_response_dynamics(&path, Unilateral, &spec, frac(1, 2), 0, &Checker::default()).unwrap();
        assert_eq!((r.profile, r.rounds, r.converged), (path, 0, false));
        let star = star_profile(9, Unilateral).unwrap();
        assert!(better_response_dynamics(&star, Unilateral, &spec, int(2), 0, &Checker::default()).unwrap().converged);
    }

    #[test]
    fn bilateral_start_from_nothing() {
        let spec = AdversarySpec::SimpleMinded;
        let r = better_response_dynamics(&StrategyProfile::empty(5), Bilateral, &spec, int(1), 50, &Checker::default())
            .unwrap();
        assert!(r.converged);
        assert!(r.profile.final_graph(Bilateral).is_connected());
        assert!(Checker::default().is_pairwise_stable(&r.profile, &spec, int(1)).unwrap().holds);
    }
}
