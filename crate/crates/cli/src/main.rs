use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use netform::analysis::{
    analyze, brute_force_optimum, enumerate_equilibria, optimum_closed_form, theorem_audit, Limits, CSV_HEADER,
};
use netform::constructions::{
    cycle_profile, cycle_with_path_profile, non_convex_gadget, path_nearest_end_profile, star_profile,
    three_stars_profile, NON_CONVEX_K_DEFAULT,
};
use netform::equilibrium::DEFAULT_BUDGET;
use netform::{
    cost_report, format_rational, parse_alpha, AdversarySpec, Checker, ConceptKind, FormationRule, Graph, Rational,
    StrategyProfile,
};
use serde_json::{json, Value};

/// Network formation games under an edge-deleting adversary.
#[derive(Parser)]
#[command(name = "netform", version)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for the exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Game {
    #[arg(long, default_value = "ulf")]
    rule: FormationRule,
    /// simple, smart, or custom:PATH to a probability table.
    #[arg(long, default_value = "simple")]
    adversary: String,
    /// Link cost, an integer or p/q.
    #[arg(long)]
    alpha: String,
}

#[derive(Args)]
struct Input {
    /// Strategy profile JSON: {"n": .., "requests": [[v, w], ..]}.
    #[arg(long, conflicts_with = "graph")]
    profile: Option<PathBuf>,
    /// Graph (JSON or text form), turned into the essential profile with
    /// lower-id owners under ulf and mutual requests under blf.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct Search {
    /// Largest number of candidate strategies tried per player.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    Star,
    Cycle,
    Path,
    ThreeStars,
    CycleWithPath,
    Gadget,
}

#[derive(Subcommand)]
enum Command {
    /// Per-player and social cost of a profile.
    Cost {
        #[command(flatten)]
        game: Game,
        #[command(flatten)]
        input: Input,
    },
    /// Verify an equilibrium concept; exit status 2 when it fails.
    Check {
        #[command(flatten)]
        game: Game,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        concept: ConceptKind,
        #[command(flatten)]
        search: Search,
    },
    /// Closed-form optimum, optionally confirmed by exhaustive search.
    Optimum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "ulf")]
        rule: FormationRule,
        #[arg(long)]
        brute_force: bool,
        #[arg(long, default_value = "simple")]
        adversary: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Price of anarchy over a comma-separated alpha grid.
    Poa(Sweep),
    /// Price of stability over a comma-separated alpha grid.
    Pos(Sweep),
    /// Round-robin best response from a starting profile.
    Dynamics {
        #[command(flatten)]
        game: Game,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100)]
        max_rounds: usize,
        #[command(flatten)]
        search: Search,
    },
    /// Structural claims on given or enumerated equilibria.
    Audit {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        game: Game,
        /// Defaults to ne under ulf and pne under blf.
        #[arg(long)]
        concept: Option<ConceptKind>,
        /// JSON array of profiles; all equilibria are enumerated if absent.
        #[arg(long)]
        profiles: Option<PathBuf>,
        #[command(flatten)]
        search: Search,
    },
    /// Profile JSON of a named construction.
    Construct {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long)]
        n: Option<usize>,
        /// Only for star and cycle; the other shapes fix their rule.
        #[arg(long)]
        rule: Option<FormationRule>,
        /// Path length for cycle-with-path.
        #[arg(long)]
        l: Option<usize>,
        /// Cycle length for the gadget.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Args)]
struct Sweep {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    game: Game,
    #[arg(long)]
    concept: Option<ConceptKind>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    search: Search,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
}

fn adversary(text: &str) -> Result<AdversarySpec> {
    match text {
        "simple" => Ok(AdversarySpec::SimpleMinded),
        "smart" => Ok(AdversarySpec::Smart),
        _ => {
            let Some(path) = text.strip_prefix("custom:") else {
                bail!("--adversary: expected simple, smart or custom:PATH, got {text:?}");
            };
            Ok(AdversarySpec::custom_from_json(&read(Path::new(path))?)?)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn alpha(text: &str) -> Result<Rational> {
    parse_alpha(text).with_context(|| format!("--alpha {text:?}"))
}

fn alphas(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|a| alpha(a.trim())).collect()
}

fn load(input: &Input, rule: FormationRule) -> Result<StrategyProfile> {
    match (&input.profile, &input.graph) {
        (Some(p), _) => {
            serde_json::from_str(&read(p)?).map_err(|e| anyhow::anyhow!("Parse: profile {}: {e}", p.display()))
        }
        (None, Some(g)) => Ok(StrategyProfile::from_graph(&Graph::parse_any(&read(g)?)?, rule)),
        (None, None) => bail!("one of --profile or --graph is required"),
    }
}

fn default_concept(rule: FormationRule) -> ConceptKind {
    match rule {
        FormationRule::Unilateral => ConceptKind::Nash,
        FormationRule::Bilateral => ConceptKind::PairwiseNash,
    }
}

fn limits(search: &Search, max_n: usize) -> Limits {
    Limits { checker: Checker::with_budget(search.budget), optimum_max_n: max_n, ..Limits::default() }
}

fn sweep(s: &Sweep) -> Result<String> {
    let spec = adversary(&s.game.adversary)?;
    let concept = s.concept.unwrap_or_else(|| default_concept(s.game.rule));
    let grid = alphas(&s.game.alpha)?;
    let limits = limits(&s.search, s.max_n);
    let results = grid
        .into_iter()
        .map(|a| analyze(s.n, a, s.game.rule, &spec, concept, &limits))
        .collect::<netform::Result<Vec<_>>>()?;
    Ok(match s.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &results {
                w.write_record(r.csv_record())?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json if results.len() == 1 => pretty(&results[0])?,
        Format::Json => pretty(&results)?,
    })
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn construct(
    shape: Shape,
    n: Option<usize>,
    rule: Option<FormationRule>,
    l: Option<usize>,
    k: Option<usize>,
) -> Result<Value> {
    let need_n = || n.context("--n is required for this shape");
    let fixed = |own: FormationRule| -> Result<()> {
        match rule {
            Some(r) if r != own => bail!("--rule {r} does not apply, this shape is {own}"),
            _ => Ok(()),
        }
    };
    let profile = match shape {
        Shape::Star => star_profile(need_n()?, rule.unwrap_or(FormationRule::Unilateral))?,
        Shape::Cycle => cycle_profile(need_n()?, rule.unwrap_or(FormationRule::Unilateral))?,
        Shape::Path => {
            fixed(FormationRule::Unilateral)?;
            path_nearest_end_profile(need_n()?)?
        }
        Shape::ThreeStars => {
            fixed(FormationRule::Bilateral)?;
            three_stars_profile(need_n()?)?
        }
        Shape::CycleWithPath => {
            fixed(FormationRule::Bilateral)?;
            cycle_with_path_profile(need_n()?, l.context("--l is required for cycle-with-path")?)?
        }
        Shape::Gadget => {
            fixed(FormationRule::Unilateral)?;
            let g = non_convex_gadget(k.unwrap_or(NON_CONVEX_K_DEFAULT))?;
            if n.is_some_and(|n| n != g.profile.n()) {
                bail!("--n {} does not match the gadget size {}", n.unwrap(), g.profile.n());
            }
            return Ok(json!({
                "profile": g.profile,
                "player": g.player,
                "e1": g.e1,
                "e2": g.e2,
                "f1": g.f1,
                "f2": g.f2,
            }));
        }
    };
    Ok(serde_json::to_value(profile)?)
}

/// The report text and whether a `check` verdict failed.
fn run(command: &Command) -> Result<(String, bool)> {
    match command {
        Command::Cost { game, input } => {
            let s = load(input, game.rule)?;
            let report = cost_report(&s, game.rule, &adversary(&game.adversary)?, alpha(&game.alpha)?)?;
            Ok((pretty(&report)?, false))
        }
        Command::Check { game, input, concept, search } => {
            let s = load(input, game.rule)?;
            let verdict = Checker::with_budget(search.budget).verify(
                *concept,
                &s,
                game.rule,
                &adversary(&game.adversary)?,
                alpha(&game.alpha)?,
            )?;
            Ok((pretty(&verdict)?, !verdict.holds))
        }
        Command::Optimum { n, alpha: a, rule, brute_force, adversary: adv, max_n } => {
            let a = alpha(a)?;
            let (value, shape) = optimum_closed_form(*n, a, *rule)?;
            let brute = if *brute_force {
                let spec = adversary(adv)?;
                let opt = brute_force_optimum(*n, a, *rule, &spec, *max_n)?;
                json!({ "adversary": spec.short_name(), "value": opt.value, "witness": opt.witness })
            } else {
                Value::Null
            };
            let report = json!({
                "n": n,
                "alpha": format_rational(&a),
                "rule": rule,
                "closed_form": { "value": format_rational(&value), "shape": shape },
                "brute_force": brute,
            });
            Ok((pretty(&report)?, false))
        }
        Command::Poa(s) | Command::Pos(s) => Ok((sweep(s)?, false)),
        Command::Dynamics { game, input, max_rounds, search } => {
            let s = load(input, game.rule)?;
            let spec = adversary(&game.adversary)?;
            let a = alpha(&game.alpha)?;
            let checker = Checker::with_budget(search.budget);
            let result = netform::analysis::better_response_dynamics(&s, game.rule, &spec, a, *max_rounds, &checker)?;
            let concept = match game.rule {
                FormationRule::Unilateral => ConceptKind::Nash,
                FormationRule::Bilateral => ConceptKind::PairwiseStable,
            };
            let verdict = checker.verify(concept, &result.profile, game.rule, &spec, a)?;
            Ok((pretty(&json!({ "result": result, "verdict": verdict }))?, false))
        }
        Command::Audit { n, game, concept, profiles, search } => {
            let spec = adversary(&game.adversary)?;
            let a = alpha(&game.alpha)?;
            let concept = concept.unwrap_or_else(|| default_concept(game.rule));
            let limits = limits(search, 7);
            let list: Vec<StrategyProfile> = match profiles {
                Some(p) => serde_json::from_str(&read(p)?)
                    .map_err(|e| anyhow::anyhow!("Parse: profiles {}: {e}", p.display()))?,
                None => enumerate_equilibria(*n, a, game.rule, &spec, concept, &limits)?
                    .into_iter()
                    .map(|e| e.profile)
                    .collect(),
            };
            let report = theorem_audit(&list, *n, a, game.rule, &spec, concept, &limits.checker)?;
            Ok((pretty(&report)?, false))
        }
        Command::Construct { shape, n, rule, l, k } => Ok((pretty(&construct(*shape, *n, *rule, *l, *k)?)?, false)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(1);
        }
    }
    let (text, failed) = match run(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
