use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_braid::appendix::verify_appendix;
use graph_braid::exec::Exec;
use graph_braid::fixtures;
use graph_braid::geometric::{dictionary, geometric_presentation};
use graph_braid::graph::GraphFile;
use graph_braid::morse::{generator_weights, morse_presentation_with, MorseComplex};
use graph_braid::presentation::{quotient_and_identify, tietze_simplify_with, Presentation, QuotientSpec, TietzeOptions};
use graph_braid::theta::{check_witnesses, theta_classes, verify_planar_quotient};
use graph_braid::tree::{build_rooted_spanning_tree, RootedSpanningTree};
use graph_braid::yang_baxter::{
    braid_rep_check, mixed_yb_residual, phase_swap_scan, scan_csv, theta4_quotient_relators, yb_residual, RMatrix,
};
use serde_json::json;

/// Graph braid groups through discrete Morse theory.
#[derive(Parser)]
#[command(name = "gbg", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Run the data-parallel kernels on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A graph file, or the name of a bundled fixture.
#[derive(Args)]
struct GraphArg {
    graph: String,
}

#[derive(Args)]
struct Particles {
    #[arg(short, long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Topological connectivity of the graph.
    Connectivity(GraphArg),
    /// Morse presentation of the braid group.
    Presentation {
        #[command(flatten)]
        input: GraphArg,
        #[command(flatten)]
        particles: Particles,
        /// Rewrite over Y-exchanges, loops and the circular move.
        #[arg(long)]
        geometric: bool,
        /// Apply Tietze simplification.
        #[arg(long)]
        simplify: bool,
    },
    /// Kill and identify generators given by a JSON spec file.
    Quotient {
        #[command(flatten)]
        input: GraphArg,
        #[command(flatten)]
        particles: Particles,
        #[arg(long)]
        spec: PathBuf,
        /// Names refer to geometric generators rather than critical cells.
        #[arg(long)]
        geometric: bool,
    },
    /// Equivalence classes of exchange triples.
    ThetaClasses {
        #[command(flatten)]
        input: GraphArg,
        #[command(flatten)]
        particles: Particles,
    },
    /// Compare the one-particle quotient with the Artin braid group.
    VerifyPlanar {
        #[command(flatten)]
        input: GraphArg,
        #[command(flatten)]
        particles: Particles,
    },
    /// Yang-Baxter residuals, scans and representation checks.
    Yb {
        #[command(subcommand)]
        action: YbAction,
    },
    /// Reproduce the bundled three-particle presentation of the four-edge theta graph.
    VerifyAppendix,
}

#[derive(Subcommand)]
enum YbAction {
    /// Residual of one matrix, or of the mixed equation for three.
    Residual {
        #[arg(required = true, num_args = 1..=3)]
        matrices: Vec<PathBuf>,
        /// Exit with status 1 when the residual exceeds this.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Mixed residuals of phase-twisted swaps over a grid of angles (CSV in text mode).
    Scan {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// Evaluate the quotient relators on a tensor representation.
    Rep {
        #[command(flatten)]
        particles: Particles,
        /// Three matrix files; swaps of `--dim` when omitted.
        #[arg(num_args = 0..=3)]
        matrices: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// A seeded random unitary in matrix file form.
    Random {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Outcome of a command that did not fail on input.
struct Report {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

enum Failure {
    Input(anyhow::Error),
    Budget(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e = e.into();
        match e.downcast_ref::<graph_braid::Error>() {
            Some(graph_braid::Error::Budget(_)) => Failure::Budget(e),
            _ => Failure::Input(e),
        }
    }
}

fn read_graph(arg: &GraphArg) -> anyhow::Result<GraphFile> {
    let path = Path::new(&arg.graph);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(GraphFile::parse(&text)?);
    }
    fixtures::load(&arg.graph).with_context(|| format!("`{}` is neither a file nor a bundled graph", arg.graph))
}

fn tree_for(file: &GraphFile, n: usize) -> graph_braid::Result<RootedSpanningTree> {
    build_rooted_spanning_tree(&file.graph, &fixtures::tree_options(file).particles(n))
}

fn read_matrix(path: &Path) -> anyhow::Result<RMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(RMatrix::from_json_str(&text)?)
}

fn summary(p: &Presentation) -> String {
    if p.relator_count() == 0 {
        format!("free, rank {}", p.generator_count())
    } else {
        format!("{} generators, {} relators", p.generator_count(), p.relator_count())
    }
}

fn presentation_report(p: &Presentation) -> Report {
    Report {
        text: format!("{}\n{}", summary(p), p.to_text()),
        json: json!({ "summary": summary(p), "presentation": p.to_json(), "abelianization": p.abelianization() }),
        ok: true,
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    Ok(match &cli.command {
        Command::Connectivity(input) => {
            let c = read_graph(input)?.graph.topological_connectivity();
            Report { text: c.value.to_string(), json: json!(c), ok: true }
        }
        Command::Presentation { input, particles, geometric, simplify } => {
            let file = read_graph(input)?;
            let n = particles.n as usize;
            let t = tree_for(&file, n)?;
            let mut mc = MorseComplex::with(&t, n, exec)?;
            let mut p = if *geometric {
                geometric_presentation(&mut mc)?.presentation
            } else {
                morse_presentation_with(&t, n, exec)?.presentation()
            };
            if *simplify {
                let keep = (!*geometric).then(|| generator_weights(&t, mc.critical_1_cells()));
                p = tietze_simplify_with(&p, &TietzeOptions { keep, ..Default::default() }).presentation;
            }
            let mut r = presentation_report(&p);
            if *geometric {
                let rows = dictionary(&mut mc)?;
                let mut text = String::from("dictionary:\n");
                for row in &rows {
                    text.push_str(&format!("  {} {} = {}\n", row.name, row.cell, row.word));
                }
                r.text.push_str(&text);
                r.json["dictionary"] = json!(rows);
                r.ok = rows.iter().all(|row| row.round_trip);
            }
            r
        }
        Command::Quotient { input, particles, spec, geometric } => {
            let file = read_graph(input)?;
            let spec: QuotientSpec = serde_json::from_str(
                &std::fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?,
            )?;
            let n = particles.n as usize;
            let t = tree_for(&file, n)?;
            let p = if *geometric {
                let mut mc = MorseComplex::with(&t, n, exec)?;
                geometric_presentation(&mut mc)?.presentation
            } else {
                morse_presentation_with(&t, n, exec)?.presentation()
            };
            let q = quotient_and_identify(&p, &spec, &TietzeOptions::default())?;
            let mut r = presentation_report(&q.presentation);
            r.text = format!("{}abelianization: {}\n", r.text, q.presentation.abelianization());
            r
        }
        Command::ThetaClasses { input, particles } => {
            let file = read_graph(input)?;
            let n = particles.n as usize;
            let t = tree_for(&file, n)?;
            let classes = theta_classes(&t, exec);
            let mut mc = MorseComplex::with(&t, n, exec)?;
            let checks = check_witnesses(&mut mc, &classes.witnesses)?;
            let mut text = format!("{} classes\n", classes.classes.len());
            for c in &classes.classes {
                text.push_str(&c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
                text.push('\n');
            }
            for c in &checks {
                let w = &c.witness;
                text.push_str(&format!("{} ~ {} via {:?}: {:?}\n", w.near, w.far, w.template, c.identified));
            }
            Report {
                ok: checks.iter().all(|c| c.holds()) && classes.inconclusive == 0,
                json: json!({ "classes": classes.classes, "witnesses": checks, "inconclusive": classes.inconclusive }),
                text,
            }
        }
        Command::VerifyPlanar { input, particles } => {
            let file = read_graph(input)?;
            let n = particles.n as usize;
            let t = tree_for(&file, n)?;
            let report = verify_planar_quotient(&t, n, exec)?;
            let ok = report.all_trivial() && report.abelianization_is_z();
            let text = format!(
                "{} classes\n{} relators, {} with trivial braid image\nabelianization: {}\n{}",
                report.classes.len(),
                report.relators.len(),
                report.relators.iter().filter(|r| r.trivial).count(),
                report.abelianization,
                report.simplified
            );
            Report { json: json!(report), text, ok }
        }
        Command::Yb { action } => yb(action, exec)?,
        Command::VerifyAppendix => {
            let r = verify_appendix(exec)?;
            let mut text = r.summary();
            text.push_str(&format!("\nrelator: {}\n", r.relator));
            for (what, list) in [
                ("unmatched generator", &r.unmatched_generators),
                ("unmatched relator", &r.unmatched_relators),
                ("differing word", &r.differing_words),
                ("dictionary mismatch", &r.dictionary_mismatches),
            ] {
                for item in list {
                    text.push_str(&format!("{what}: {item}\n"));
                }
            }
            Report { ok: r.passes(), json: json!(r), text }
        }
    })
}

fn yb(action: &YbAction, exec: Exec) -> Result<Report, Failure> {
    Ok(match action {
        YbAction::Residual { matrices, tol } => {
            let ms = matrices.iter().map(|p| read_matrix(p)).collect::<anyhow::Result<Vec<_>>>()?;
            let residual = match &ms[..] {
                [r] => yb_residual(r),
                [r, r1, r2] => mixed_yb_residual(r, r1, r2)?,
                _ => return Err(Failure::Input(anyhow::anyhow!("give one matrix or three"))),
            };
            Report {
                text: format!("{residual:e}"),
                json: json!({ "residual": residual }),
                ok: tol.is_none_or(|t| residual <= t),
            }
        }
        YbAction::Scan { dim, steps } => {
            let rows = phase_swap_scan(*dim, *steps, exec);
            Report { text: scan_csv(&rows), json: json!(rows), ok: true }
        }
        YbAction::Rep { particles, matrices, dim, tol } => {
            let ms = if matrices.is_empty() {
                vec![RMatrix::swap(*dim); 3]
            } else if matrices.len() == 3 {
                matrices.iter().map(|p| read_matrix(p)).collect::<anyhow::Result<Vec<_>>>()?
            } else {
                return Err(Failure::Input(anyhow::anyhow!("give three matrices or none")));
            };
            let n = particles.n as usize;
            let report = braid_rep_check(n, [&ms[0], &ms[1], &ms[2]], &theta4_quotient_relators(n), exec)?;
            let worst = report.max_distance();
            Report { text: format!("max distance {worst:e}"), json: json!(report), ok: worst <= *tol }
        }
        YbAction::Random { dim, seed } => {
            let m = RMatrix::random_unitary(*dim, *seed);
            Report { text: serde_json::to_string(&m.to_json())?, json: m.to_json(), ok: true }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
                Format::Text => report.text.trim_end().to_string(),
            };
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
