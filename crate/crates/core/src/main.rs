//! Command-line front end: catalog listing, axiom/coaction checks with
//! machine-readable reports, and the coefficient-ansatz solver.
//!
//! Exit codes: 0 success, 1 mathematical failure (a check fails or an
//! expected solution is missing), 2 usage/configuration error, 3 budget
//! exhaustion.

use braidkit::ansatz::{
    self, assignment_satisfies, branch_matches, build_ansatz, generate_equations,
    reference_assignments, solve, verify_branch,
};
use braidkit::coaction::{check_comodule_algebra, coaction, CoactionMap, COACTIONS, TABLES};
use braidkit::files::{parse_document, Document, FileError, Resolver};
use braidkit::hopf::{applicable_axioms, HopfOps, StructureMap, AXIOMS};
use braidkit::presentations::Builtin;
use braidkit::report::{bindings_config, parse_bindings, Config, Report};
use braidkit::structures::{structure, STRUCTURES};
use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

/// Default directory for structured reports when `--output` is not given.
const OUTPUT_DIR_VAR: &str = "BRAIDKIT_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "braidkit", version, about = "Exact checks for braided Hopf structures")]
struct Cli {
    /// Directory with additional `<name>.alg` documents, searched after the
    /// compiled-in catalog
    #[arg(long, global = true)]
    dir: Option<PathBuf>,
    /// Write the structured report to this file
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Recorded in the report config; reserved for randomized probes
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Presentation,
    Structure,
    Coaction,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the shipped catalog
    List {
        #[arg(long)]
        kind: Option<Kind>,
    },
    /// Check Hopf axioms of a structure, or a coaction against an algebra
    Check {
        /// Structure name, or coaction name with `--comodule-algebra`
        name: String,
        /// Comma-separated axiom names, or `all`
        #[arg(long, default_value = "all")]
        axioms: String,
        /// Basis-word length bound for the checks
        #[arg(long, default_value_t = 3)]
        max_word_len: usize,
        /// Parameter bindings such as `r=q` or `q=3`; repeatable
        #[arg(long)]
        specialize: Vec<String>,
        /// Check that the named coaction is an algebra homomorphism into the
        /// coacted algebra chosen by `--coacted`
        #[arg(long, requires = "coacted")]
        comodule_algebra: bool,
        /// Presentation supplying the coacted copy's multiplication
        #[arg(long)]
        coacted: Option<String>,
    },
    /// Regenerate and solve the coefficient ansatz for the braided structure
    Solve {
        /// Branch-step budget for the elimination tree
        #[arg(long, default_value_t = ansatz::DEFAULT_BUDGET)]
        budget: u64,
        /// Drop the star-compatibility axioms from the generated system
        #[arg(long)]
        no_star: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let resolver = match &cli.dir {
        Some(d) => Resolver::with_dir(d),
        None => Resolver::new(),
    };
    let run = match &cli.cmd {
        Cmd::List { kind } => return cmd_list(*kind),
        Cmd::Check {
            name,
            axioms,
            max_word_len,
            specialize,
            comodule_algebra,
            coacted,
        } => cmd_check(
            &cli,
            &resolver,
            name,
            axioms,
            *max_word_len,
            specialize,
            *comodule_algebra,
            coacted.as_deref(),
        ),
        Cmd::Solve { budget, no_star } => cmd_solve(&cli, *budget, *no_star),
    };
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_list(kind: Option<Kind>) -> ExitCode {
    let presentations: Vec<String> = Builtin::all().iter().map(|b| b.name().to_string()).collect();
    let sections: [(Kind, &str, Vec<String>); 4] = [
        (Kind::Presentation, "presentations", presentations),
        (
            Kind::Structure,
            "structures",
            STRUCTURES.iter().map(|s| s.to_string()).collect(),
        ),
        (
            Kind::Coaction,
            "coactions",
            COACTIONS.iter().map(|s| s.to_string()).collect(),
        ),
        (
            Kind::Table,
            "tables",
            TABLES.iter().map(|s| s.to_string()).collect(),
        ),
    ];
    for (k, title, names) in sections {
        match kind {
            Some(want) if want != k => continue,
            Some(_) => {
                for n in names {
                    println!("{n}");
                }
            }
            None => println!("{title}: {}", names.join(" ")),
        }
    }
    ExitCode::SUCCESS
}

/// Catalog first, then `<name>.alg` in the document directory.
fn load_structure(name: &str, resolver: &Resolver) -> Result<Arc<StructureMap>, String> {
    if STRUCTURES.contains(&name) {
        return structure(name).map_err(|e| e.to_string());
    }
    match load_document(name, resolver)? {
        Some(Document::Structure(sm)) => Ok(sm),
        Some(_) => Err(format!("`{name}` is not a structure document")),
        None => Err(format!("unknown structure `{name}`")),
    }
}

fn load_coaction(name: &str, resolver: &Resolver) -> Result<CoactionMap, String> {
    if COACTIONS.contains(&name) {
        return coaction(name).map_err(|e| e.to_string());
    }
    match load_document(name, resolver)? {
        Some(Document::Coaction(c)) => Ok(c),
        Some(_) => Err(format!("`{name}` is not a coaction document")),
        None => Err(format!("unknown coaction `{name}`")),
    }
}

fn load_document(name: &str, resolver: &Resolver) -> Result<Option<Document>, String> {
    let Some(dir) = &resolver.dir else {
        return Ok(None);
    };
    let path = dir.join(format!("{name}.alg"));
    if !path.is_file() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    parse_document(&text, resolver)
        .map(Some)
        .map_err(|e| e.to_string())
}

fn finish(cli: &Cli, report: &Report, code: u8) -> Result<ExitCode, String> {
    print!("{}", report.render_text());
    let path = cli.output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_VAR)
            .map(|d| PathBuf::from(d).join(format!("{}.json", report.config.command)))
    });
    if let Some(path) = path {
        std::fs::write(&path, report.to_json())
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ExitCode::from(code))
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    cli: &Cli,
    resolver: &Resolver,
    name: &str,
    axioms: &str,
    max_word_len: usize,
    specialize: &[String],
    comodule_algebra: bool,
    coacted: Option<&str>,
) -> Result<ExitCode, String> {
    if max_word_len == 0 {
        return Err("--max-word-len must be at least 1".into());
    }
    let bindings = parse_bindings(specialize).map_err(|e| e.to_string())?;
    let mut report = Report::new(Config {
        command: if comodule_algebra {
            format!("check_comodule_{name}")
        } else {
            format!("check_{name}")
        },
        structure: Some(name.to_string()),
        axioms: if comodule_algebra {
            vec!["comodule-algebra".into()]
        } else {
            axioms.split(',').map(|s| s.trim().to_string()).collect()
        },
        max_word_len: Some(max_word_len),
        specialize: bindings_config(&bindings),
        seed: cli.seed,
        budget: None,
        include_star: None,
    });

    if comodule_algebra {
        let coacted = coacted.expect("clap requires --coacted");
        let mut beta = load_coaction(name, resolver)?;
        let mut mult = resolver
            .presentation(coacted)
            .map_err(|e: FileError| e.to_string())?;
        if !bindings.is_empty() {
            beta = beta
                .substitute(&format!("{name}_sub"), &bindings)
                .map_err(|e| e.to_string())?;
            mult = Arc::new(
                mult.specialize(&format!("{}_sub", mult.name), &bindings)
                    .map_err(|e| e.to_string())?,
            );
        }
        let rep = check_comodule_algebra(&beta, &mult, max_word_len).map_err(|e| e.to_string())?;
        report.push_check(&rep);
    } else {
        let mut sm = load_structure(name, resolver)?;
        if !bindings.is_empty() {
            sm = Arc::new(
                sm.substitute(&format!("{name}_sub"), &bindings)
                    .map_err(|e| e.to_string())?,
            );
        }
        let selected: Vec<&'static str> = if axioms == "all" {
            applicable_axioms(&sm)
        } else {
            axioms
                .split(',')
                .map(|a| {
                    let a = a.trim();
                    AXIOMS
                        .iter()
                        .copied()
                        .find(|x| *x == a)
                        .ok_or_else(|| format!("unknown axiom `{a}`"))
                })
                .collect::<Result<_, _>>()?
        };
        let ops = HopfOps::new(sm);
        report.push_check(&ops.check_well_defined().map_err(|e| e.to_string())?);
        for ax in selected {
            let rep = ops.check_axiom(ax, max_word_len).map_err(|e| e.to_string())?;
            report.push_check(&rep);
        }
    }
    let code = if report.verdict.status == "pass" { 0 } else { 1 };
    finish(cli, &report, code)
}

fn cmd_solve(cli: &Cli, budget: u64, no_star: bool) -> Result<ExitCode, String> {
    let axioms: Vec<&'static str> = AXIOMS
        .iter()
        .copied()
        .filter(|a| !(no_star && matches!(*a, "star-delta" | "star-S")))
        .collect();
    let mut report = Report::new(Config {
        command: "solve".into(),
        structure: None,
        axioms: axioms.iter().map(|s| s.to_string()).collect(),
        max_word_len: None,
        specialize: BTreeMap::new(),
        seed: cli.seed,
        budget: Some(budget),
        include_star: Some(!no_star),
    });

    let spec = build_ansatz().map_err(|e| e.to_string())?;
    let refs = reference_assignments(&spec).map_err(|e| e.to_string())?;
    let system = generate_equations(&spec, &axioms).map_err(|e| e.to_string())?;
    report.system = system
        .equations
        .iter()
        .map(|e| braidkit::report::SystemEntry {
            axiom: e.axiom.clone(),
            input: e.input.clone(),
            component: e.component.clone(),
            equation: e.scalar.to_string(),
        })
        .collect();
    report
        .verdict
        .detail
        .push(format!("generated system: {} equations", system.equations.len()));
    for (label, assignment) in &refs {
        if !assignment_satisfies(&system, assignment) {
            report.verdict.status = "fail".into();
            report
                .verdict
                .detail
                .push(format!("{label} does not satisfy the generated system"));
        }
    }

    let out = solve(&system, budget);
    let matcher = |b: &ansatz::SolutionBranch| -> Vec<String> {
        refs.iter()
            .filter(|(_, a)| branch_matches(b, a))
            .map(|(l, _)| l.clone())
            .collect()
    };
    report.push_outcome(&out, matcher);
    if out.budget_exhausted {
        report.verdict.status = "fail".into();
        report
            .verdict
            .detail
            .push(format!("budget of {budget} steps exhausted"));
        return finish(cli, &report, 3);
    }

    // verify every matched branch through the full axiom suite
    let mut matched: BTreeMap<String, usize> = refs.iter().map(|(l, _)| (l.clone(), 0)).collect();
    for b in &out.solved {
        let labels = matcher(b);
        for label in &labels {
            *matched.get_mut(label).expect("known label") += 1;
        }
        if let Some(label) = labels.first() {
            let reps =
                verify_branch(&spec, &b.assignment, label, 2).map_err(|e| e.to_string())?;
            for rep in &reps {
                report.push_check(rep);
            }
        }
    }
    for (label, count) in &matched {
        report
            .verdict
            .detail
            .push(format!("{label} matched by {count} terminal branch(es)"));
        if *count == 0 {
            report.verdict.status = "fail".into();
        }
    }
    if !out.stuck.is_empty() {
        report
            .verdict
            .detail
            .push(format!("{} stuck branch(es) reported", out.stuck.len()));
    }
    let code = if report.verdict.status == "pass" { 0 } else { 1 };
    finish(cli, &report, code)
}
