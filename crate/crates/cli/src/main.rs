use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use choice_revision::postulates::{run_suite, GeneratorConfig, SuiteSummary, Theorem};
use choice_revision::{
    BeliefBase, Error, Limits, PriorityOrder, Reasoner, RevisionTrace, Strategy, StrategyKind, StrategyPair,
    SubsetFamily,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "choicerev",
    version,
    about = "Choice revision on finite propositional belief bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a contraction, expansion or revision operator to a base.
    Revise(ReviseArgs),
    /// Print a remainder family, the partial sums or a negation set.
    Remainders(RemaindersArgs),
    /// Run a postulate suite on generated instances.
    Check(CheckArgs),
}

#[derive(Args)]
struct Common {
    /// Belief-base file: one formula per line, `#` comments.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Input formulas, comma separated.
    #[arg(long, conflicts_with = "input_file")]
    input: Option<String>,
    /// Input formulas, one per line.
    #[arg(long)]
    input_file: Option<PathBuf>,
    /// Maximum number of atoms in one truth table.
    #[arg(long)]
    atom_cap: Option<usize>,
    /// Maximum base size for remainder enumeration.
    #[arg(long)]
    enum_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    ContractPackage,
    ContractChoice,
    Expand,
    ExpandConsistent,
    ReviseInternal,
    ReviseExternal,
    MumInternal,
    MumExternal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Package,
    Choice,
    PartialSum,
    Negation,
    ChoiceNegation,
    PackageNegation,
}

#[derive(Args)]
struct ReviseArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[command(flatten)]
    common: Common,
    /// full, maxichoice or top-K.
    #[arg(long, default_value = "full")]
    strategy: StrategyKind,
    /// Strategy for the expansion step of a revision; defaults to --strategy.
    #[arg(long)]
    expansion_strategy: Option<StrategyKind>,
    /// Priority file: `rank formula` per line, lower ranks preferred.
    #[arg(long)]
    priority: Option<PathBuf>,
}

#[derive(Args)]
struct RemaindersArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CheckArgs {
    /// T1..T7, L1 or OBS.
    #[arg(required_unless_present = "theorem_flag", conflicts_with = "theorem_flag")]
    theorem: Option<Theorem>,
    #[arg(long = "theorem", value_name = "THEOREM")]
    theorem_flag: Option<Theorem>,
    /// Restrict the suite to one postulate (name, id or label).
    #[arg(long)]
    postulate: Option<String>,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "full")]
    strategy: StrategyKind,
    #[arg(long)]
    atom_cap: Option<usize>,
    #[arg(long)]
    enum_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

/// Failure carrying the process exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.chain().find_map(|e| e.downcast_ref::<Error>()) {
            Some(e) if e.is_capacity() => 3,
            _ => 2,
        };
        Failure { code, error }
    }
}

fn reasoner(atom_cap: Option<usize>, enum_cap: Option<usize>) -> Reasoner {
    let mut limits = Limits::default();
    if let Some(cap) = atom_cap {
        limits.atoms = cap;
    }
    if let Some(cap) = enum_cap {
        limits.enumeration = cap;
    }
    Reasoner::new(limits)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_base(path: Option<&Path>) -> anyhow::Result<BeliefBase> {
    let Some(path) = path else {
        return Ok(BeliefBase::new());
    };
    BeliefBase::parse_lines(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_input(common: &Common) -> anyhow::Result<BeliefBase> {
    if let Some(path) = &common.input_file {
        return load_base(Some(path));
    }
    let text = common.input.as_deref().unwrap_or("");
    BeliefBase::parse_inline(text).context("in --input")
}

fn load_strategies(args: &ReviseArgs) -> anyhow::Result<StrategyPair> {
    let expansion = args.expansion_strategy.unwrap_or(args.strategy);
    let needs_priority = [args.strategy, expansion].iter().any(|k| *k != StrategyKind::Full);
    let priority = match &args.priority {
        Some(path) => PriorityOrder::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?,
        None if needs_priority => bail!("--priority is required for maxichoice and top-K strategies"),
        None => PriorityOrder::default(),
    };
    Ok(StrategyPair::new(
        Strategy::new(args.strategy, priority.clone()),
        Strategy::new(expansion, priority),
    ))
}

#[derive(Serialize)]
struct Applied<'a> {
    mode: &'a str,
    result: BeliefBase,
    #[serde(skip_serializing_if = "Option::is_none")]
    stage1: Option<BeliefBase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aux: Option<BeliefBase>,
}

impl<'a> Applied<'a> {
    fn plain(mode: &'a str, result: BeliefBase) -> Self {
        Applied {
            mode,
            result,
            stage1: None,
            aux: None,
        }
    }

    fn traced(mode: &'a str, trace: RevisionTrace) -> Self {
        Applied {
            mode,
            result: trace.result,
            stage1: Some(trace.stage1),
            aux: Some(trace.aux),
        }
    }
}

fn base_lines(base: &BeliefBase) -> String {
    base.iter().map(|f| format!("{f}\n")).collect()
}

fn render_applied(applied: &Applied, output: Output) -> String {
    if output == Output::Json {
        return serde_json::to_string_pretty(applied).expect("serializable") + "\n";
    }
    let mut out = format!("# mode: {}\n", applied.mode);
    if let Some(stage1) = &applied.stage1 {
        out += &format!("# stage1: {stage1}\n");
    }
    if let Some(aux) = &applied.aux {
        out += &format!("# aux: {aux}\n");
    }
    out + &base_lines(&applied.result)
}

fn single_formula(input: &BeliefBase) -> anyhow::Result<Option<choice_revision::Formula>> {
    match input.len() {
        0 => Ok(None),
        1 => Ok(input.iter().next().cloned()),
        n => Err(anyhow!("making up one's mind takes one formula, got {n}")),
    }
}

fn cmd_revise(args: &ReviseArgs) -> anyhow::Result<String> {
    let r = reasoner(args.common.atom_cap, args.common.enum_cap);
    let k = load_base(args.common.base.as_deref())?;
    let a = load_input(&args.common)?;
    let pair = load_strategies(args)?;
    let name = args.mode.to_possible_value().expect("named mode").get_name().to_owned();
    let applied = match args.mode {
        Mode::ContractPackage => Applied::plain(&name, r.package_contract(&k, &a, &pair.contraction)?),
        Mode::ContractChoice => Applied::plain(&name, r.choice_contract(&k, &a, &pair.contraction)?),
        Mode::Expand => Applied::plain(&name, r.partial_expand(&k, &a, &pair.expansion)?),
        Mode::ExpandConsistent => Applied::plain(&name, r.consistent_expand(&k, &a, &pair.expansion)?),
        Mode::ReviseInternal => Applied::traced(&name, r.internal_choice_revise(&k, &a, &pair)?),
        Mode::ReviseExternal => Applied::traced(&name, r.external_choice_revise(&k, &a, &pair)?),
        Mode::MumInternal | Mode::MumExternal => match single_formula(&a)? {
            None => Applied::plain(&name, k.clone()),
            Some(phi) => {
                let input = choice_revision::mum_input(&phi);
                let trace = if args.mode == Mode::MumInternal {
                    r.internal_choice_revise(&k, &input, &pair)?
                } else {
                    r.external_choice_revise(&k, &input, &pair)?
                };
                Applied::traced(&name, trace)
            }
        },
    };
    Ok(render_applied(&applied, args.common.output))
}

fn render_family(family: &SubsetFamily, output: Output) -> String {
    if output == Output::Json {
        return serde_json::to_string(&family.to_texts()).expect("serializable") + "\n";
    }
    let mut out = format!("# {} members\n", family.len());
    for (i, member) in family.members().enumerate() {
        out += &format!("# member {}\n{}", i + 1, base_lines(member));
    }
    out
}

fn cmd_remainders(args: &RemaindersArgs) -> anyhow::Result<String> {
    let r = reasoner(args.common.atom_cap, args.common.enum_cap);
    let k = load_base(args.common.base.as_deref())?;
    let a = load_input(&args.common)?;
    let family = match args.kind {
        Kind::Package => r.package_remainders(&k, &a)?,
        Kind::Choice => r.choice_remainders(&k, &a)?,
        Kind::PartialSum => r.partial_sums(&k, &a)?,
        Kind::ChoiceNegation => r.choice_remainders_vs_negation(&k, &a)?,
        Kind::PackageNegation => r.package_remainders_vs_negation(&k, &a)?,
        Kind::Negation => {
            let n = r.negation_set(&a)?;
            return Ok(match args.common.output {
                Output::Json => serde_json::to_string(&n.clauses().texts()).expect("serializable") + "\n",
                Output::Text => base_lines(n.clauses()),
            });
        }
    };
    Ok(render_family(&family, args.common.output))
}

fn render_summary(summary: &SuiteSummary) -> String {
    let mut out = format!(
        "{} {}: {} instances, holds {}, violated {}, inapplicable {}, known discrepancies {}\n",
        summary.theorem,
        summary.strategy,
        summary.instances,
        summary.holds,
        summary.violated,
        summary.inapplicable,
        summary.known_discrepancies
    );
    for t in &summary.postulates {
        let target = t.operator.map(|o| format!(" [{o}]")).unwrap_or_default();
        let flag = if t.known_discrepancy && t.violated > 0 {
            " (known discrepancy)"
        } else {
            ""
        };
        out += &format!(
            "  {}{target}: holds {}, violated {}, inapplicable {}{flag}\n",
            t.postulate, t.holds, t.violated, t.inapplicable
        );
    }
    for w in &summary.witnesses {
        out += &format!(
            "  witness {} on instance {}: {}\n",
            w.postulate, w.instance.index, w.witness.note
        );
    }
    out
}

fn cmd_check(args: &CheckArgs) -> anyhow::Result<(String, bool)> {
    let theorem = args.theorem.or(args.theorem_flag).expect("clap requires a theorem");
    let r = reasoner(args.atom_cap, args.enum_cap);
    let config = GeneratorConfig {
        num: args.samples,
        seed: args.seed,
        strategy: args.strategy,
        ..GeneratorConfig::default()
    };
    let summary = run_suite(&r, theorem, &config, args.postulate.as_deref())?;
    let text = match args.output {
        Output::Json => summary.to_json() + "\n",
        Output::Text => render_summary(&summary),
    };
    Ok((text, summary.passed()))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let (text, passed) = match &cli.command {
        Command::Revise(args) => (cmd_revise(args)?, true),
        Command::Remainders(args) => (cmd_remainders(args)?, true),
        Command::Check(args) => cmd_check(args)?,
    };
    print!("{text}");
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_errors_map_to_three() {
        let err = anyhow::Error::new(Error::Capacity {
            what: "atoms",
            size: 20,
            limit: 16,
        });
        assert_eq!(Failure::from(err.context("while revising")).code, 3);
    }

    #[test]
    fn parse_errors_map_to_two() {
        let err = choice_revision::parse_formula("p &").unwrap_err();
        assert_eq!(Failure::from(anyhow::Error::new(err)).code, 2);
    }

    #[test]
    fn text_output_reparses() {
        let applied = Applied::plain("expand", choice_revision::base!["p -> ~q", "q | r"]);
        let text = render_applied(&applied, Output::Text);
        assert_eq!(BeliefBase::parse_lines(&text).unwrap(), applied.result);
    }
}
