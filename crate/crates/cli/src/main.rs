//! `seqdec` command-line front end.

mod load;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use seqdec::analysis::{Analyzer, Suite};
use seqdec::automaton::{Decidedness, DecisionAutomaton, StopVerdict};
use seqdec::heuristics::RuleSpec;
use seqdec::machines::{automaton_to_tm, TwoTapeTm};
use seqdec::seq::{SeqSpec, Symbol};
use serde_json::{json, Value};

use load::{write_output, CliError, CliResult, Limits, Loaded, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "seqdec", version, about = "Decision rules over infinite sequences")]
struct Cli {
    /// Prefix length explored for machine-backed rules.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Step budget per machine run.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decision, stop position and minimal sufficient prefix on one sequence.
    Eval {
        rule: PathBuf,
        /// Sequence in `prefix|cycle` notation.
        seq: String,
        #[arg(long)]
        json: bool,
    },
    /// Compile a rule (or synthesize from a machine) to a decision automaton.
    Compile {
        rule: PathBuf,
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize an automaton or compiled rule.
    Minimize {
        rule: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render an automaton or compiled rule as DOT.
    Dot {
        rule: PathBuf,
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform bound, stopping times and minimal sufficient segments.
    Analyze {
        rule: PathBuf,
        /// Sequences whose stopping time to report.
        #[arg(long = "seq")]
        seqs: Vec<String>,
        /// Include every minimal sufficient segment.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an axiom suite; exits 1 if any axiom fails.
    Axioms {
        rule: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover CSR or OSR parameters from observed decisions.
    Identify {
        rule: PathBuf,
        #[arg(long = "as", value_enum)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a two-tape machine; automata and rules are embedded first.
    TmRun {
        machine: PathBuf,
        seq: String,
        #[arg(long)]
        json: bool,
        /// Write the machine that was run.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Csr,
    Osr,
    Config,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Csr => Suite::Csr,
            SuiteArg::Osr => Suite::Osr,
            SuiteArg::Config => Suite::Config,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Csr,
    Osr,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(text) = std::env::var("SEQDEC_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input(format!("SEQDEC_THREADS must be a positive integer, got `{text}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::input(e.to_string()))
}

fn run(cli: Cli) -> CliResult<u8> {
    let limits = Limits { horizon: cli.horizon, budget: cli.budget };
    match cli.command {
        Command::Eval { rule, seq, json } => eval(&Loaded::read(&rule)?, &seq, json, limits),
        Command::Compile { rule, minimize, dot, out } => {
            let loaded = Loaded::read(&rule)?;
            if let Loaded::Automaton(_) = loaded {
                return Err(CliError::input("compile takes a csr, osr, config or tm rule"));
            }
            let aut = loaded.automaton(limits)?;
            emit_automaton(if minimize { aut.minimize()? } else { aut }, dot.as_deref(), out.as_deref())
        }
        Command::Minimize { rule, dot, out } => {
            let aut = Loaded::read(&rule)?.automaton(limits)?.minimize()?;
            emit_automaton(aut, dot.as_deref(), out.as_deref())
        }
        Command::Dot { rule, minimize, out } => {
            let aut = Loaded::read(&rule)?.automaton(limits)?;
            let aut = if minimize { aut.minimize()? } else { aut };
            write_output(out.as_deref(), &aut.to_dot())?;
            Ok(0)
        }
        Command::Analyze { rule, seqs, list, out } => analyze(&Loaded::read(&rule)?, &seqs, list, out.as_deref(), limits),
        Command::Axioms { rule, suite, out } => {
            let analyzer = Analyzer::new(Loaded::read(&rule)?.handle(limits)?)?;
            let reports = analyzer.run_suite(suite.into())?;
            let body = Value::Array(reports.iter().map(|r| r.to_value()).collect());
            write_output(out.as_deref(), &pretty(&body))?;
            if out.is_some() {
                for r in &reports {
                    println!("{}: {}", r.axiom, if r.passed() { "pass" } else { "fail" });
                }
            }
            Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
        Command::Identify { rule, family, out } => {
            let analyzer = Analyzer::new(Loaded::read(&rule)?.handle(limits)?)?;
            let (spec, checked) = match family {
                Family::Csr => {
                    let id = analyzer.identify_csr()?;
                    (RuleSpec::Csr(id.spec), id.checked)
                }
                Family::Osr => {
                    let id = analyzer.identify_osr()?;
                    (RuleSpec::Osr(id.spec), id.checked)
                }
            };
            write_output(out.as_deref(), &spec.to_json())?;
            let note = format!("verified on {checked} sequences");
            if out.is_some() {
                println!("{note}");
            } else {
                eprintln!("{note}");
            }
            Ok(0)
        }
        Command::TmRun { machine, seq, json, out } => tm_run(&Loaded::read(&machine)?, &seq, json, out.as_deref(), limits),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn summary(aut: &DecisionAutomaton) -> String {
    match aut.verify_stopping() {
        StopVerdict::UniformBound(k) => format!("{} states, bound {k}", aut.num_states()),
        StopVerdict::NonStopping { reaching, .. } => {
            format!("{} states, no uniform bound (cycle reached by `{reaching}`)", aut.num_states())
        }
    }
}

/// The automaton JSON goes to `out` or stdout; the summary line goes to
/// whichever stream is not carrying the JSON.
fn emit_automaton(aut: DecisionAutomaton, dot: Option<&Path>, out: Option<&Path>) -> CliResult<u8> {
    if let Some(path) = dot {
        write_output(Some(path), &aut.to_dot())?;
    }
    write_output(out, &aut.to_json())?;
    if out.is_some() {
        println!("{}", summary(&aut));
    } else {
        eprintln!("{}", summary(&aut));
    }
    Ok(0)
}

/// Smallest `k` whose prefix already fixes the decision, read off the
/// decidedness of the states along the run.
fn stop_and_decision(aut: &DecisionAutomaton, seq: &SeqSpec) -> CliResult<(usize, Symbol)> {
    let eval = aut.evaluate(seq)?;
    let decided = aut.decidedness();
    let mut q = aut.initial();
    for (i, s) in seq.positions().take(eval.stop).enumerate() {
        q = aut.next(q, s);
        if let Decidedness::Decided(y) = decided[q] {
            return Ok((i + 1, y));
        }
    }
    Ok((eval.stop, eval.decision))
}

fn eval(loaded: &Loaded, text: &str, as_json: bool, limits: Limits) -> CliResult<u8> {
    let seq = SeqSpec::parse(loaded.alphabet(), text)?;
    let (decision, stop, steps) = match loaded {
        Loaded::Tm(tm) if limits.horizon.is_none() => {
            let run = tm.run(&seq, limits.budget.unwrap_or(DEFAULT_BUDGET))?;
            (tm.decisions().name(run.decision).to_string(), None, Some(run.steps))
        }
        Loaded::Tm(_) => {
            let analyzer = Analyzer::new(loaded.handle(limits)?)?;
            let name = analyzer.decisions().name(analyzer.decide(&seq)?).to_string();
            (name, Some(analyzer.stopping_time(&seq)?), None)
        }
        _ => {
            let aut = loaded.automaton(limits)?;
            let (stop, d) = stop_and_decision(&aut, &seq)?;
            (aut.decisions().name(d).to_string(), Some(stop), None)
        }
    };
    let prefix = stop.map(|k| seq.prefix_of(k).to_string());
    if as_json {
        let mut body = json!({ "sequence": seq.to_string(), "decision": decision });
        if let (Some(k), Some(p)) = (stop, &prefix) {
            body["stop"] = json!(k);
            body["prefix"] = json!(p);
        }
        if let Some(n) = steps {
            body["steps"] = json!(n);
        }
        println!("{}", pretty(&body));
    } else {
        println!("decision: {decision}");
        if let (Some(k), Some(p)) = (stop, prefix) {
            println!("stop: {k}");
            println!("minimal sufficient prefix: {p}");
        }
        if let Some(n) = steps {
            println!("steps: {n}");
        }
    }
    Ok(0)
}

fn analyze(loaded: &Loaded, seqs: &[String], list: bool, out: Option<&Path>, limits: Limits) -> CliResult<u8> {
    let analyzer = Analyzer::new(loaded.handle(limits)?)?;
    let names = analyzer.decisions();
    let mut stops = Vec::new();
    for text in seqs {
        let seq = SeqSpec::parse(analyzer.alphabet(), text)?;
        let k = analyzer.stopping_time(&seq)?;
        stops.push(json!({
            "sequence": seq.to_string(),
            "decision": names.name(analyzer.decide(&seq)?),
            "stop": k,
            "prefix": seq.prefix_of(k).to_string(),
        }));
    }
    let mut body = json!({
        "uniform_bound": analyzer.uniform_bound(),
        "minimal_sufficient_count": analyzer.minimal_sufficient().len(),
        "stopping_times": stops,
    });
    if list {
        body["minimal_sufficient"] = analyzer
            .minimal_sufficient()
            .iter()
            .map(|m| json!({ "segment": m.segment.to_string(), "decision": names.name(m.decision) }))
            .collect();
    }
    write_output(out, &pretty(&body))?;
    Ok(0)
}

fn tm_run(loaded: &Loaded, text: &str, as_json: bool, out: Option<&Path>, limits: Limits) -> CliResult<u8> {
    let embedded;
    let tm: &TwoTapeTm = match loaded {
        Loaded::Tm(tm) => tm,
        _ => {
            embedded = automaton_to_tm(&loaded.automaton(limits)?)?;
            &embedded
        }
    };
    if let Some(path) = out {
        write_output(Some(path), &tm.to_json())?;
    }
    let seq = SeqSpec::parse(tm.input_alphabet(), text)?;
    let run = tm.run(&seq, limits.budget.unwrap_or(DEFAULT_BUDGET))?;
    let decision = tm.decisions().name(run.decision);
    if as_json {
        println!("{}", pretty(&json!({ "sequence": seq.to_string(), "decision": decision, "steps": run.steps })));
    } else {
        println!("decision: {decision}");
        println!("steps: {}", run.steps);
    }
    Ok(0)
}
