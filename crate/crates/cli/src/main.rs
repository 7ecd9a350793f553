// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use coble_core::abelian::{smith_normal_form, IntMatrix, PresentedGroup, SnfSummary};
use coble_core::enriques::{
    check_root_basis, coble_mukai_lattice, exact_sequence_report, verify_cm_pic_identification, Check,
    CheckStatus, CobleSurfaceData, VerificationReport,
};
use coble_core::qlattice::{is_enriques_lattice, signature};
use coble_core::scenarios::{self, ScenarioId};
use coble_core::singular::{hj_evaluate, hj_expand, is_t_chain, is_wahl, t_chain_from_s, HJChain};
use coble_core::surface::{contract, parse_surface, SurfaceModel};

#[derive(Parser, Debug)]
#[command(name = "coble", version, about = "Exact checks for Coble surfaces and their degenerations")]
#[command(arg_required_else_help = true, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Run every built-in scenario.
    #[arg(long)]
    check_all: bool,

    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Accept the failures listed in the known-discrepancy table.
    #[arg(long, global = true)]
    allow_known_discrepancies: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a built-in scenario: section4, section5, wahl-family, degenerations, t-chains.
    Run { scenario: ScenarioId },
    /// Continued fraction expansion of n/a.
    Hj { n: u64, a: u64 },
    /// Evaluate a chain and test whether it is a Wahl or T chain.
    Wahl { chain: String },
    /// The chain of 1/4s(1, 2s-1).
    Tchain { s: u64 },
    /// Degenerations of 1/4s(1, 2s-1), 1 <= s <= 10.
    Degenerations { s: u64 },
    /// Smith normal form of an integer matrix file.
    Snf { file: PathBuf },
    /// Surface-file commands.
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceAction {
    /// Contract the boundary and run the lattice checks that apply.
    Verify { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<ExitCode> {
    if cli.check_all {
        let reports = scenarios::run_all(cli.allow_known_discrepancies);
        return Ok(emit_reports(cli.format, &reports));
    }
    let Some(command) = &cli.command else {
        bail!("nothing to do; see --help");
    };
    match command {
        Command::Run { scenario } => {
            let report = scenarios::run(*scenario, cli.allow_known_discrepancies);
            Ok(emit_report(cli.format, &report))
        }
        Command::Hj { n, a } => {
            let chain = hj_expand(*n, *a)?;
            let entries = chain.entries();
            emit(cli.format, &format!("{n}/{a} = {chain}"), &json!({ "n": n, "a": a, "chain": entries }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Wahl { chain } => {
            let chain = HJChain::parse(chain).context("chain must be comma-separated integers >= 2")?;
            let value = hj_evaluate(&chain)?;
            let wahl = is_wahl(&chain);
            let t = is_t_chain(&chain);
            let mut text = format!("{chain} = {value}\n");
            text.push_str(&match wahl {
                Some(w) => format!("Wahl: (n, a) = ({}, {}), {}", w.n, w.a, w.quotient()),
                None => "not a Wahl chain".to_string(),
            });
            if let Some(t) = t.filter(|t| t.d > 1) {
                text.push_str(&format!("\nT: (d, n, a) = ({}, {}, {}), {}", t.d, t.n, t.a, t.quotient()));
            }
            let machine = json!({
                "chain": chain.entries(),
                "value": value.to_string(),
                "wahl": wahl.map(|w| json!({ "n": w.n, "a": w.a })),
                "t": t.map(|t| json!({ "d": t.d, "n": t.n, "a": t.a })),
            });
            emit(cli.format, &text, &machine);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tchain { s } => {
            let chain = t_chain_from_s(*s)?;
            emit(
                cli.format,
                &format!("1/{}(1,{}): {chain}", 4 * s, 2 * s - 1),
                &json!({ "s": s, "chain": chain.entries() }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Degenerations { s } => {
            let mut report = scenarios::run_degenerations(*s)?;
            if cli.allow_known_discrepancies {
                scenarios::apply_known_discrepancies(&mut report);
            }
            Ok(emit_report(cli.format, &report))
        }
        Command::Snf { file } => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let m = IntMatrix::parse(&text)?;
            let snf = smith_normal_form(&m);
            let summary = SnfSummary::from(&snf);
            let gens: Vec<String> = (0..m.cols()).map(|i| format!("g{i}")).collect();
            let group = PresentedGroup::new(gens, m.clone())?;
            let human = format!(
                "{}x{} matrix, rank {}\nelementary divisors: [{}]\ncokernel: {}",
                summary.rows,
                summary.cols,
                summary.rank,
                summary.elementary_divisors.join(", "),
                group.structure()
            );
            let machine = json!({
                "rows": summary.rows,
                "cols": summary.cols,
                "rank": summary.rank,
                "elementary_divisors": summary.elementary_divisors,
                "cokernel": group.structure().to_string(),
            });
            emit(cli.format, &human, &machine);
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface {
            action: SurfaceAction::Verify { file },
        } => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let surface = parse_surface(&text).with_context(|| format!("parsing {}", file.display()))?;
            let mut report = verify_surface(&surface)?;
            if cli.allow_known_discrepancies {
                scenarios::apply_known_discrepancies(&mut report);
            }
            Ok(emit_report(cli.format, &report))
        }
    }
}

fn verify_surface(surface: &SurfaceModel) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("surface {}", surface.name()));
    let k = surface.canonical();
    let gram: Vec<Vec<_>> = surface
        .gram()
        .iter()
        .map(|r| r.iter().cloned().map(coble_core::Rational::from_integer).collect())
        .collect();
    report.push(
        Check::new("surface.summary", CheckStatus::Info, "input surface")
            .with("rank", surface.rank())
            .with("signature", signature(&gram))
            .with("K^2", surface.pairing(k, k)?)
            .with("boundary curves", surface.boundary().len()),
    );
    if surface.boundary().is_empty() {
        return Ok(report);
    }
    let c = contract(surface)?;
    report.push(
        Check::new("surface.class-group", CheckStatus::Info, "class group of the contraction")
            .with("structure", c.class_group().structure()),
    );
    report.absorb("", exact_sequence_report(&c));

    let data = match CobleSurfaceData::new(surface.clone()) {
        Ok(d) => d,
        Err(e) => {
            report.push(
                Check::new("coble-mukai", CheckStatus::NotApplicable, "boundary of (-4)-curves").with("reason", e),
            );
            return Ok(report);
        }
    };
    let cm = coble_mukai_lattice(&data)?;
    let rec = is_enriques_lattice(cm.lattice())?;
    let is_coble = data.anticanonical_residual().is_zero();
    let status = if is_coble { CheckStatus::from_bool(rec.is_enriques) } else { CheckStatus::Info };
    report.push(
        Check::new("coble-mukai.enriques", status, "Coble-Mukai lattice is the Enriques lattice")
            .with("rank", rec.profile.rank)
            .with("signature", rec.profile.signature)
            .with("discriminant", &rec.profile.discriminant)
            .with("index over Pic", &cm.extended.index),
    );
    if let Some(kx) = surface.class_named("K") {
        report.absorb("", verify_cm_pic_identification(&c, &data, kx));
    }
    let alphas: Option<Vec<_>> = (0..10).map(|i| surface.class_named(&format!("alpha{i}")).cloned()).collect();
    if let Some(alphas) = alphas {
        report.absorb("", check_root_basis(&c, &alphas));
    }
    Ok(report)
}

fn emit(format: Format, human: &str, machine: &serde_json::Value) {
    match format {
        Format::Human => println!("{human}"),
        Format::Machine => println!("{}", serde_json::to_string_pretty(machine).expect("JSON values serialize")),
    }
}

fn exit_for(passed: bool) -> ExitCode {
    if passed { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn emit_report(format: Format, report: &VerificationReport) -> ExitCode {
    match format {
        Format::Human => println!("{report}"),
        Format::Machine => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
    }
    exit_for(report.passed())
}

fn emit_reports(format: Format, reports: &[VerificationReport]) -> ExitCode {
    let passed = reports.iter().all(VerificationReport::passed);
    match format {
        Format::Human => {
            for r in reports {
                println!("{r}\n");
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            println!("{} scenarios, {failed} with failures", reports.len());
        }
        Format::Machine => {
            let doc = json!({ "passed": passed, "reports": reports });
            println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
        }
    }
    exit_for(passed)
}
