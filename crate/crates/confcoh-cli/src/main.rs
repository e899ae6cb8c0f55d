//! Command-line interface for exact Lie conformal algebra cohomology.

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use confcoh::algebra::{load_algebra, LieConformalAlgebra};
use confcoh::cochain::Cochain;
use confcoh::coeff::{check_module_axioms, CoeffSpec};
use confcoh::engine::{
    self, cohomology, solution_table, verify_reduced_representatives, verify_representative,
    CohomologyReport, EngineOptions, Mode, RepKind,
};
use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "confcoh",
    version,
    about = "Exact cohomology of finite Lie conformal algebras",
    long_about = "Computes basic and reduced cohomology dimensions and explicit \
representative cocycles for finite Lie conformal algebras with one-dimensional \
coefficient modules, entirely over exact rational arithmetic."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolically verify the skew-symmetry and Jacobi axioms.
    Axioms(AlgebraOpts),
    /// Compute cohomology dimensions and representatives.
    Cohomology(ComputeOpts),
    /// List the signatures that can carry nonzero cohomology.
    Table(TableOpts),
    /// Compute and dump only the representative cocycles.
    Representatives(ComputeOpts),
    /// Symbolically verify the module axioms for a coefficient choice.
    CheckModule(CheckModuleOpts),
}

#[derive(Args)]
struct AlgebraOpts {
    /// Builtin algebra name (vir, hv, sv) or path to an algebra file.
    #[arg(long, env = "CONFCOH_ALGEBRA")]
    algebra: String,
    /// Skip the symbolic axiom verification when loading the algebra.
    #[arg(long, env = "CONFCOH_SKIP_AXIOMS", action = ArgAction::SetTrue)]
    skip_axioms: bool,
}

#[derive(Args)]
struct TableOpts {
    #[command(flatten)]
    algebra: AlgebraOpts,
    /// Output format.
    #[arg(long, env = "CONFCOH_FORMAT", value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args)]
struct CheckModuleOpts {
    #[command(flatten)]
    algebra: AlgebraOpts,
    /// Coefficient module: `trivial:a=<rational>` or
    /// `rank1:alpha=<rational>,beta=<rational>`.
    #[arg(long, env = "CONFCOH_COEFF", default_value = "trivial:a=0")]
    coeff: String,
}

#[derive(Args)]
struct ComputeOpts {
    #[command(flatten)]
    algebra: AlgebraOpts,
    /// Coefficient module: `trivial:a=<rational>` or
    /// `rank1:alpha=<rational>,beta=<rational>`.
    #[arg(long, env = "CONFCOH_COEFF", default_value = "trivial:a=0")]
    coeff: String,
    /// Largest cohomology degree to compute.
    #[arg(long, env = "CONFCOH_QMAX", default_value_t = 8)]
    qmax: usize,
    /// Computation strategy.
    #[arg(long, env = "CONFCOH_MODE", value_enum, default_value_t = ModeArg::Filtered)]
    mode: ModeArg,
    /// Degree cap for oracle mode and for the vanishing verification
    /// (default: q+1 at each arity).
    #[arg(long, env = "CONFCOH_CAP")]
    cap: Option<usize>,
    /// Extra cap on the power of D in rank-one cochain values
    /// (default: bounded only by the degree cap).
    #[arg(long, env = "CONFCOH_DCAP")]
    dcap: Option<usize>,
    /// Output format.
    #[arg(long, env = "CONFCOH_FORMAT", value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Allow truncated oracle computation for coefficient families whose
    /// reduced cohomology has no proven closed form.
    #[arg(long, env = "CONFCOH_FORCE_ORACLE", action = ArgAction::SetTrue)]
    force_oracle: bool,
    /// Re-check every emitted representative before exiting.
    #[arg(long, env = "CONFCOH_VERIFY", action = ArgAction::SetTrue)]
    verify: bool,
    /// Which representative family to emit.
    #[arg(long, env = "CONFCOH_WHICH", value_enum, default_value_t = WhichArg::Auto)]
    which: WhichArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Filtered,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichArg {
    Auto,
    Basic,
    Reduced,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Axioms(opts) => cmd_axioms(&opts),
        Command::Cohomology(opts) => cmd_cohomology(&opts, false),
        Command::Table(opts) => cmd_table(&opts),
        Command::Representatives(opts) => cmd_cohomology(&opts, true),
        Command::CheckModule(opts) => cmd_check_module(&opts),
    }
}

/// Loads a builtin algebra by name or parses an algebra description file.
fn load(opts: &AlgebraOpts) -> Result<LieConformalAlgebra> {
    let name = opts.algebra.as_str();
    match name {
        "vir" | "hv" | "sv" => {
            let algebra = LieConformalAlgebra::builtin(name)?;
            if !opts.skip_axioms {
                let report = algebra.check_axioms();
                if !report.ok() {
                    bail!("builtin algebra `{name}` failed axiom verification");
                }
            }
            Ok(algebra)
        }
        path => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read algebra file `{path}`"))?;
            Ok(load_algebra(&text, opts.skip_axioms)?)
        }
    }
}

/// Loads without the axiom gate so that failures can be reported in full.
fn load_unchecked(opts: &AlgebraOpts) -> Result<LieConformalAlgebra> {
    let relaxed = AlgebraOpts {
        algebra: opts.algebra.clone(),
        skip_axioms: true,
    };
    load(&relaxed)
}

fn cmd_axioms(opts: &AlgebraOpts) -> Result<ExitCode> {
    let algebra = load_unchecked(opts)?;
    println!(
        "algebra: {} ({} generators)",
        algebra.name(),
        algebra.generator_count()
    );
    let report = algebra.check_axioms();
    if report.ok() {
        println!("skew-symmetry: PASS");
        println!("jacobi: PASS");
        println!("axioms: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        for failure in &report.failures {
            println!("{failure}");
        }
        println!("axioms: FAIL ({} residual(s))", report.failures.len());
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_table(opts: &TableOpts) -> Result<ExitCode> {
    let algebra = load(&opts.algebra)?;
    let rows = solution_table(&algebra)?;
    match opts.format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        FormatArg::Table => {
            println!("algebra: {}", algebra.name());
            let names: Vec<&str> = (0..algebra.generator_count())
                .map(|g| algebra.gen_name(g))
                .collect();
            println!("q | ({}) | vandermonde degree | weight degree", names.join(","));
            for row in &rows {
                let counts: Vec<String> = row.counts.iter().map(ToString::to_string).collect();
                println!(
                    "{} | ({}) | {} | {}",
                    row.arity,
                    counts.join(","),
                    row.vandermonde_degree,
                    row.weight_degree
                );
            }
            println!("{} rows", rows.len());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_module(opts: &CheckModuleOpts) -> Result<ExitCode> {
    let algebra = load(&opts.algebra)?;
    let spec: CoeffSpec = opts.coeff.parse()?;
    let module = spec.instantiate(&algebra)?;
    println!("algebra: {}", algebra.name());
    println!("coefficients: {}", module.describe());
    let report = check_module_axioms(&algebra, &module);
    if report.ok() {
        println!("module axioms: PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        for failure in &report.failures {
            println!("{failure}");
        }
        println!("module axioms: FAIL ({} residual(s))", report.failures.len());
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_cohomology(opts: &ComputeOpts, dump_representatives_only: bool) -> Result<ExitCode> {
    let algebra = load(&opts.algebra)?;
    let spec: CoeffSpec = opts.coeff.parse()?;
    let module = spec.instantiate(&algebra)?;
    let engine_opts = EngineOptions {
        qmax: opts.qmax,
        mode: match opts.mode {
            ModeArg::Filtered => Mode::Filtered,
            ModeArg::Oracle => Mode::Oracle,
        },
        cap: opts.cap,
        dcap: opts.dcap,
        which: match opts.which {
            WhichArg::Auto => RepKind::Auto,
            WhichArg::Basic => RepKind::Basic,
            WhichArg::Reduced => RepKind::Reduced,
        },
        force_oracle: opts.force_oracle,
    };
    let report = cohomology(&algebra, &module, &engine_opts)?;
    if opts.verify {
        let checked = verify_report(&algebra, &module, &report)?;
        eprintln!("verification: PASS ({checked} class(es) re-checked)");
    }
    match (dump_representatives_only, opts.format) {
        (true, FormatArg::Json) => {
            println!("{}", serde_json::to_string_pretty(&report.representatives)?)
        }
        (true, FormatArg::Table) => print_representatives(&report),
        (false, FormatArg::Json) => println!("{}", report.to_json()),
        (false, FormatArg::Table) => print_report(&report, opts.qmax),
    }
    Ok(ExitCode::SUCCESS)
}

/// Re-checks every emitted representative with the family-appropriate test.
fn verify_report(
    algebra: &LieConformalAlgebra,
    module: &confcoh::coeff::CoeffModule,
    report: &CohomologyReport,
) -> Result<usize> {
    let reduced_family = report
        .notes
        .iter()
        .any(|n| n == engine::NOTE_REDUCED_REPS);
    let mut checked = 0usize;
    for (q, datas) in &report.representatives {
        let reps: Vec<Cochain> = datas
            .iter()
            .map(|d| Cochain::from_data(d, algebra))
            .collect::<confcoh::Result<_>>()?;
        if reduced_family {
            verify_reduced_representatives(algebra, module, *q, &reps)?;
        } else {
            for rep in &reps {
                let check = verify_representative(algebra, module, rep)?;
                if !check.is_cocycle {
                    bail!("emitted representative at arity {q} is not a cocycle");
                }
                if check.is_coboundary {
                    bail!("emitted representative at arity {q} is a coboundary");
                }
            }
        }
        checked += reps.len();
    }
    Ok(checked)
}

fn dims_row(map: &BTreeMap<usize, usize>, qmax: usize) -> String {
    (0..=qmax)
        .map(|q| map.get(&q).copied().unwrap_or(0).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A closed-form style summary: nonzero values grouped by first occurrence,
/// e.g. `1 if q=0,3; 2 if q=5,6; 0 otherwise`.
fn piecewise(map: &BTreeMap<usize, usize>, qmax: usize) -> String {
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut any_zero = false;
    for q in 0..=qmax {
        let v = map.get(&q).copied().unwrap_or(0);
        if v == 0 {
            any_zero = true;
            continue;
        }
        match groups.iter_mut().find(|(value, _)| *value == v) {
            Some(group) => group.1.push(q),
            None => groups.push((v, vec![q])),
        }
    }
    if groups.is_empty() {
        return format!("0 for every q <= {qmax}");
    }
    let mut parts: Vec<String> = groups
        .iter()
        .map(|(value, qs)| {
            let list: Vec<String> = qs.iter().map(ToString::to_string).collect();
            format!("{value} if q={}", list.join(","))
        })
        .collect();
    if any_zero {
        parts.push("0 otherwise".to_string());
    }
    parts.join("; ")
}

fn print_report(report: &CohomologyReport, qmax: usize) {
    println!("algebra: {}", report.algebra);
    println!("coefficients: {}", report.coefficients);
    println!("mode: {}", report.mode);
    let qs: Vec<String> = (0..=qmax).map(|q| q.to_string()).collect();
    println!("q:       {}", qs.join(","));
    match &report.dims_basic {
        Some(map) => {
            println!("basic:   {}", dims_row(map, qmax));
            println!("basic dimensions: {}", piecewise(map, qmax));
        }
        None => println!("basic:   not computed (see notes)"),
    }
    match &report.dims_reduced {
        Some(map) => {
            println!("reduced: {}", dims_row(map, qmax));
            println!("reduced dimensions: {}", piecewise(map, qmax));
        }
        None => println!("reduced: not computed (see notes)"),
    }
    if !report.representatives.is_empty() {
        println!("representatives:");
        for (q, reps) in &report.representatives {
            println!("  q={q}: {} class(es)", reps.len());
        }
    }
    for (name, value) in &report.caps {
        println!("cap[{name}]: {value}");
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}

fn print_representatives(report: &CohomologyReport) {
    if report.representatives.is_empty() {
        println!("no representatives emitted");
    }
    for (q, reps) in &report.representatives {
        for (i, rep) in reps.iter().enumerate() {
            println!("q={q} representative {}:", i + 1);
            for component in &rep.components {
                println!("  ({}): {}", component.tuple.join(","), component.value);
            }
        }
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}
