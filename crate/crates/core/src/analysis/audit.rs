use num_traits::Zero;
use serde::Serialize;

use super::optimum::optimum_closed_form;
use crate::adversary::{critical_edges, AdversarySpec};
use crate::cost::social_cost;
use crate::equilibrium::{Checker, ConceptKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, frac, int, ExtendedRational, Rational};
use crate::strategy::{FormationRule, StrategyProfile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub claim: &'static str,
    pub instance: String,
    pub holds: bool,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    #[serde(with = "crate::rational::serde_rational")]
    pub alpha: Rational,
    pub rule: FormationRule,
    pub adversary: String,
    pub concept: ConceptKind,
    pub profiles: usize,
    /// Largest social cost over the closed-form optimum among the audited
    /// profiles; recorded, never asserted.
    pub max_ratio: Option<ExtendedRational>,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    pub fn claims(&self) -> Vec<&'static str> {
        let mut ids: Vec<&'static str> = self.entries.iter().map(|e| e.claim).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

fn q(x: usize) -> Rational {
    Rational::from_integer(x as i128)
}

struct Ctx<'a> {
    instance: String,
    entries: &'a mut Vec<AuditEntry>,
}

impl Ctx<'_> {
    fn record(&mut self, claim: &'static str, holds: bool, details: String) {
        self.entries.push(AuditEntry { claim, instance: self.instance.clone(), holds, details });
    }
}

fn describe(index: usize, g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|e| e.to_string()).collect();
    format!("profile {index}: [{}]", edges.join(" "))
}

fn fmt(x: &Rational) -> String {
    format_rational(x)
}

/// Re-verifies every profile, then evaluates each structural claim that
/// applies to the concept, rule and adversary. A failing entry contradicts a
/// proven statement.
pub fn theorem_audit(
    profiles: &[StrategyProfile],
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    concept: ConceptKind,
    checker: &Checker,
) -> Result<AuditReport> {
    concept.require_rule(rule)?;
    let opt = if n >= 3 { Some(optimum_closed_form(n, alpha, rule)?.0) } else { None };
    let mut entries = Vec::new();
    let mut max_ratio: Option<ExtendedRational> = None;
    for (index, s) in profiles.iter().enumerate() {
        if s.n() != n {
            return Err(Error::ConceptMismatch(format!("profile {index} has {} players, expected {n}", s.n())));
        }
        if !checker.verify(concept, s, rule, spec, alpha)?.holds {
            return Err(Error::ConceptMismatch(format!("profile {index} is not a {concept}")));
        }
        let g = s.final_graph(rule);
        let social = social_cost(s, rule, spec, alpha)?;
        if let Some(opt) = opt {
            let r = social.ratio(&ExtendedRational::Finite(opt));
            max_ratio = Some(max_ratio.map_or(r, |m| m.max(r)));
        }
        let mut ctx = Ctx { instance: describe(index, &g), entries: &mut entries };
        audit_one(&mut ctx, s, &g, social, opt, n, alpha, rule, spec, concept, checker)?;
    }
    Ok(AuditReport {
        n,
        alpha,
        rule,
        adversary: spec.short_name().to_string(),
        concept,
        profiles: profiles.len(),
        max_ratio,
        entries,
    })
}

#[allow(clippy::too_many_arguments)]
fn audit_one(
    ctx: &mut Ctx<'_>,
    s: &StrategyProfile,
    g: &Graph,
    social: ExtendedRational,
    opt: Option<Rational>,
    n: usize,
    alpha: Rational,
    rule: FormationRule,
    spec: &AdversarySpec,
    concept: ConceptKind,
    checker: &Checker,
) -> Result<()> {
    let connected = g.is_connected();
    ctx.record("connected", connected, format!("{} components", g.components().1));
    let Some(social) = social.finite() else {
        return Ok(());
    };
    let m = g.m();
    let n_alpha = q(n) * alpha;
    let bs = g.bridge_structure()?;
    let bt = bs.bridge_tree(g);
    let diam = bt.diameter();
    let disconnection = social - q(if rule == FormationRule::Bilateral { 2 * m } else { m }) * alpha;

    // Any sparse profile: social ≤ βmα + n², optimum ≥ β(n-1)α.
    if m < 2 * n && n >= 2 {
        let beta = if rule == FormationRule::Bilateral { 2 } else { 1 };
        let bound = (q(beta * m) * alpha + q(n * n)) / (q(beta * (n - 1)) * alpha);
        if let Some(opt) = opt {
            let ratio = social / opt;
            ctx.record("sparse-ratio-bound", ratio <= bound, format!("ratio {} <= {}", fmt(&ratio), fmt(&bound)));
        }
    }

    let unilateral = concept == ConceptKind::Nash || concept == ConceptKind::MaxNash;
    match (unilateral, spec) {
        (true, AdversarySpec::SimpleMinded) => {
            ctx.record("chord-free", g.is_chord_free(), String::new());
            ctx.record("edge-count", m < 2 * n, format!("m = {m}"));
            let girth = g.girth();
            let short_ok = girth.is_none_or(|len| q(len) >= alpha + frac(1, 2));
            ctx.record("no-short-cycles", short_ok, format!("girth {girth:?}"));
            let diam_ok = q(diam) <= int(8) * alpha;
            ctx.record("bridge-tree-diameter", diam_ok, format!("diameter {diam} <= 8α = {}", fmt(&(int(8) * alpha))));
            let by_diam = disconnection <= q(n * diam);
            ctx.record(
                "disconnection-by-diameter",
                by_diam,
                format!("{} <= n·diam = {}", fmt(&disconnection), n * diam),
            );
            let social_ok = social <= int(10) * n_alpha;
            ctx.record("social-10n-alpha", social_ok, format!("{} <= {}", fmt(&social), fmt(&(int(10) * n_alpha))));
            if let Some(opt) = opt {
                let bound = int(10) + frac(10, (n - 1) as i128);
                let ratio = social / opt;
                ctx.record("poa-constant", ratio <= bound, format!("{} <= {}", fmt(&ratio), fmt(&bound)));
            }
        }
        (true, AdversarySpec::Smart) => {
            ctx.record("chord-free", g.is_chord_free(), String::new());
            ctx.record("edge-count", m < 2 * n, format!("m = {m}"));
            let crit = critical_edges(g)?;
            let sep_max = q(crit.sep_max);
            let sixth = q(n) / int(6);
            if crit.m_max >= 3 && alpha <= sixth {
                let ok = sep_max <= int(5) * n_alpha;
                ctx.record(
                    "smart-sep-many-critical",
                    ok,
                    format!("sep_max {} with m_max {}", crit.sep_max, crit.m_max),
                );
            }
            if crit.m_max <= 2 {
                let ok = sep_max <= int(4) * n_alpha || alpha >= sixth;
                ctx.record("smart-sep-few-critical", ok, format!("sep_max {} with m_max {}", crit.sep_max, crit.m_max));
            }
            let dis_ok = disconnection <= int(6) * n_alpha
                && disconnection == if crit.sep_max > 0 { sep_max } else { Rational::zero() };
            ctx.record("smart-disconnection", dis_ok, format!("{} <= 6nα", fmt(&disconnection)));
            let social_ok = social <= int(8) * n_alpha;
            ctx.record("smart-social-8n-alpha", social_ok, format!("{} <= {}", fmt(&social), fmt(&(int(8) * n_alpha))));
            if let Some(opt) = opt {
                let bound = int(8) + frac(8, (n - 1) as i128);
                let ratio = social / opt;
                ctx.record("poa-constant", ratio <= bound, format!("{} <= {}", fmt(&ratio), fmt(&bound)));
            }
        }
        (false, AdversarySpec::SimpleMinded) => {
            let chord_free = g.is_chord_free();
            if alpha > frac(1, 2) {
                ctx.record("bilateral-chord-free", chord_free, String::new());
                let ok = q(diam * diam) <= int(4) * n_alpha;
                ctx.record(
                    "bilateral-bridge-tree-diameter",
                    ok,
                    format!("diameter {diam}, 4nα = {}", fmt(&(int(4) * n_alpha))),
                );
            } else {
                let few = m == 0 || int(2) * alpha * q((m - 1) * (m - 1)) <= q(n * n);
                ctx.record("bilateral-chord-or-sparse", chord_free || few, format!("m = {m}"));
            }
        }
        _ => {}
    }
    if concept == ConceptKind::PairwiseNash {
        let ps = checker.is_pairwise_stable(s, spec, alpha)?.holds;
        ctx.record("pne-implies-ps", ps, String::new());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::enumerate::{enumerate_equilibria, Limits};
    use crate::constructions::{cycle_profile, star_profile};

    #[test]
    fn small_nash_sets_pass() {
        for spec in [AdversarySpec::SimpleMinded, AdversarySpec::Smart] {
            let eq = enumerate_equilibria(
                4,
                int(3),
                FormationRule::Unilateral,
                &spec,
                ConceptKind::Nash,
                &Limits::default(),
            )
            .unwrap();
            let profiles: Vec<_> = eq.into_iter().map(|e| e.profile).collect();
            let report = theorem_audit(
                &profiles,
                4,
                int(3),
                FormationRule::Unilateral,
                &spec,
                ConceptKind::Nash,
                &Checker::default(),
            )
            .unwrap();
            assert!(report.all_hold(), "{:?}", report.failures().collect::<Vec<_>>());
            assert!(report.claims().contains(&"poa-constant"));
        }
    }

    #[test]
    fn non_equilibria_are_rejected() {
        let star = star_profile(5, FormationRule::Unilateral).unwrap();
        let res = theorem_audit(
            &[star],
            5,
            frac(1, 2),
            FormationRule::Unilateral,
            &AdversarySpec::SimpleMinded,
            ConceptKind::Nash,
            &Checker::default(),
        );
        assert!(matches!(res, Err(Error::ConceptMismatch(_))));
    }

    #[test]
    fn bilateral_claims_present() {
        let cycle = cycle_profile(6, FormationRule::Bilateral).unwrap();
        let report = theorem_audit(
            &[cycle],
            6,
            int(1),
            FormationRule::Bilateral,
            &AdversarySpec::SimpleMinded,
            ConceptKind::PairwiseNash,
            &Checker::default(),
        )
        .unwrap();
        assert!(report.all_hold());
        assert_eq!(
            report.claims(),
            vec![
                "bilateral-bridge-tree-diameter",
                "bilateral-chord-free",
                "connected",
                "pne-implies-ps",
                "sparse-ratio-bound"
            ]
        );
    }
}
