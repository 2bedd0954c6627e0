// SPDX-License-Identifier: Apache-2.0

//! `exactq`: analyze Boolean functions, synthesize and verify exact quantum
//! query certificates, simulate programs, and run the replay suites.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or parse error.

mod analyze;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use exactq::boolfun::{parse_function, TruthTable};
use exactq::qprogram::{eq_nand_program, nae_program, parity_program, simulate, QueryProgram, SimulationReport};
use exactq::synth::{synthesize, verify_certificate, Certificate};
use exactq::verify::{run_suite, SuiteConfig, SuiteId};
use serde_json::{json, Value};
use thiserror::Error;

const SYNTH_SCHEMA: &str = "exactq.synth/1";
const SIMULATE_SCHEMA: &str = "exactq.simulate/1";
const VERIFY_SCHEMA: &str = "exactq.verify/1";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "exactq", version, about = "Exact quantum query algorithms for Boolean functions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural report: profile, monotonicity, read-once form, degree, D(f),
    /// NPN class.
    Analyze {
        /// Function as `bin:`, `hex:`, `profile:` or `formula:` text.
        #[arg(long = "fn")]
        function: String,
    },
    /// Synthesize a certificate, verify it, and optionally write it.
    Synth {
        #[arg(long = "fn")]
        function: String,
        /// Certificate output path (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a certificate or a bare program file.
    Simulate {
        /// Certificate or program JSON.
        path: PathBuf,
        /// Target function; required for bare programs, overrides a
        /// certificate's own function.
        #[arg(long = "fn")]
        function: Option<String>,
    },
    /// Run replay suites.
    Verify {
        /// Comma-separated suite ids; defaults to all non-stretch suites.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Upper arity for suites that take one.
        #[arg(long, env = "EXACTQ_MAX_N")]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; reports do not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
        /// Override sampled population sizes (quick runs only).
        #[arg(long, env = "EXACTQ_SAMPLES")]
        samples: Option<usize>,
        /// Also write the JSON reports here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a simulatable program for a named family.
    Program {
        #[arg(value_enum)]
        family: Family,
        /// Number of variables (ignored for eq-nand, which has 3).
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Parity,
    Nae,
    EqNand,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("exactq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { function } => {
            let f = parse_fn(&function)?;
            let v = analyze::analyze(&f);
            emit(format, &v, || analyze::render_human(&v));
            Ok(())
        }
        Command::Synth { function, out } => cmd_synth(format, &parse_fn(&function)?, out.as_deref()),
        Command::Simulate { path, function } => cmd_simulate(format, &path, function.as_deref()),
        Command::Verify {
            suite,
            max_n,
            seed,
            jobs,
            samples,
            out,
        } => {
            let config = SuiteConfig { max_n, seed, samples };
            cmd_verify(format, &suite, &config, jobs, out.as_deref())
        }
        Command::Program { family, n, out } => {
            let p = match family {
                Family::Parity if n >= 1 => parity_program(n),
                Family::Nae if n >= 2 => nae_program(n),
                Family::EqNand => eq_nand_program(),
                _ => return Err(usage(format!("{family:?} needs more variables than {n}"))),
            };
            let text = to_json(&p);
            match out {
                Some(path) => write(&path, &text),
                None => {
                    println!("{text}");
                    Ok(())
                }
            }
        }
    }
}

fn parse_fn(text: &str) -> Result<TruthTable, CliError> {
    parse_function(text).map_err(|e| usage(format!("--fn: {e}")))
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit(format: Format, v: &Value, human: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", to_json(v)),
        Format::Human => print!("{}", human()),
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, format!("{text}\n")).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_synth(format: Format, f: &TruthTable, out: Option<&Path>) -> Result<(), CliError> {
    let c = synthesize(f);
    let report = verify_certificate(&c)
        .map_err(|e| CliError::Verification(format!("certificate not written, verification failed: {e}")))?;
    if let Some(path) = out {
        write(path, &to_json(&c))?;
    }
    let rules: Vec<String> = c.rules_used.iter().map(|r| r.id.to_string()).collect();
    let v = json!({
        "schema": SYNTH_SCHEMA,
        "function": f.to_string(),
        "claimed_queries": c.claimed_queries,
        "level": c.level,
        "optimal": c.optimal,
        "rules_used": rules,
        "axioms": report.axioms,
        "worst_wrong_amplitude": report.simulation.worst_wrong_amplitude,
        "written_to": out.map(|p| p.display().to_string()),
        "certificate": c,
    });
    emit(format, &v, || {
        let mut s = format!(
            "{}: {} queries, {}, rules {}{}\n",
            f,
            c.claimed_queries,
            c.level,
            rules.join(","),
            if c.optimal { ", optimal" } else { "" }
        );
        for a in &report.axioms {
            s += &format!("  axiom {} at {} on {:?}: {} queries\n", a.class, a.path, a.vars, a.queries);
        }
        if let Some(p) = out {
            s += &format!("  certificate written to {}\n", p.display());
        }
        s
    });
    Ok(())
}

fn cmd_simulate(format: Format, path: &Path, function: Option<&str>) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (program, own) = if raw.get("schema").is_some() {
        let c: Certificate = serde_json::from_value(raw).map_err(|e| usage(format!("certificate: {e}")))?;
        (c.program, Some(c.function))
    } else {
        let p: QueryProgram = serde_json::from_value(raw).map_err(|e| usage(format!("program: {e}")))?;
        (p, None)
    };
    let f = match (function, own) {
        (Some(text), _) => parse_fn(text)?,
        (None, Some(f)) => f,
        (None, None) => return Err(usage("a bare program needs --fn")),
    };
    let report = simulate(&program, &f).map_err(|e| CliError::Verification(e.to_string()))?;
    let v = simulation_json(&f, &report);
    emit(format, &v, || {
        let mut s = format!(
            "{}: {}, {} queries, worst wrong amplitude {:.3e}\n",
            f,
            if report.exact { "exact" } else { "NOT exact" },
            report.queries_used_worst_case,
            report.worst_wrong_amplitude
        );
        s += &format!("  outcomes {}\n", report.outcomes);
        if !report.exact {
            s += &format!("  failing inputs {:?}\n", report.failing_inputs);
        }
        s
    });
    if report.exact {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "program is not exact on inputs {:?}",
            report.failing_inputs
        )))
    }
}

fn simulation_json(f: &TruthTable, r: &SimulationReport) -> Value {
    json!({
        "schema": SIMULATE_SCHEMA,
        "function": f.to_string(),
        "report": r,
    })
}

fn cmd_verify(
    format: Format,
    selectors: &[String],
    config: &SuiteConfig,
    jobs: Option<usize>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let ids: Vec<SuiteId> = if selectors.is_empty() {
        SuiteId::DEFAULT.to_vec()
    } else {
        selectors
            .iter()
            .map(|s| s.parse::<SuiteId>())
            .collect::<Result<_, _>>()
            .map_err(usage)?
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(usage)?;
    let mut reports = Vec::new();
    for id in ids {
        let r = pool.install(|| run_suite(id, config)).map_err(usage)?;
        if format == Format::Human {
            print!("{}", r.render_human());
        }
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.ok());
    let v = json!({
        "schema": VERIFY_SCHEMA,
        "seed": config.seed,
        "ok": ok,
        "suites": reports,
    });
    if format == Format::Json {
        println!("{}", to_json(&v));
    } else {
        let failed: u64 = reports.iter().filter(|r| !r.findings_only).map(|r| r.failed).sum();
        println!("{} suites, {} failed checks: {}", reports.len(), failed, if ok { "OK" } else { "FAILED" });
    }
    if let Some(path) = out {
        write(path, &to_json(&v))?;
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Verification("suite failures recorded".into()))
    }
}
