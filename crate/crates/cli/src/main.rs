//! `qsigma`: exact reports on quantum tangent spaces of cominuscule flag
//! manifolds and the dual braiding map on `T ⊗ T`.

mod cache;
mod config;
mod error;
mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use qsigma_core::claims::{verify_claims, Analysis};
use qsigma_core::tangent::build_tangent;
use qsigma_core::uqg::Generator;

use cache::{sigma_cached, CacheStatus};
use config::{CaseArgs, Format, RunConfig};
use error::CliError;
use report::{relation_vector, sparse_entries, ActionEntry, BlockEntry, LowestWeightEntry, RelationsEntry, Report, SigmaEntry};

#[derive(Debug, Parser)]
#[command(name = "qsigma", version, about = "Exact computations on quantum tangent spaces over Q(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basis and Levi action of the tangent space T.
    Tangent(CaseArgs),
    /// Nonzero entries of the sigma matrix on T ⊗ T.
    Sigma(CaseArgs),
    /// Eigenvalues, lowest weight vectors and torsion-freeness.
    Spectrum(CaseArgs),
    /// Basis of ker(sigma + 1), the quadratic relations.
    Relations(CaseArgs),
    /// Runs every check and exits 1 if any fails.
    VerifyPaper(CaseArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tangent(_) => "tangent",
            Command::Sigma(_) => "sigma",
            Command::Spectrum(_) => "spectrum",
            Command::Relations(_) => "relations",
            Command::VerifyPaper(_) => "verify-paper",
        }
    }

    fn args(&self) -> &CaseArgs {
        match self {
            Command::Tangent(a)
            | Command::Sigma(a)
            | Command::Spectrum(a)
            | Command::Relations(a)
            | Command::VerifyPaper(a) => a,
        }
    }
}

struct Timer {
    enabled: bool,
    phases: BTreeMap<String, u128>,
    last: Instant,
    start: Instant,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        let now = Instant::now();
        Self { enabled, phases: BTreeMap::new(), last: now, start: now }
    }

    fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        self.phases.insert(phase.to_string(), now.duration_since(self.last).as_millis());
        self.last = now;
    }

    fn finish(mut self) -> Option<BTreeMap<String, u128>> {
        if !self.enabled {
            return None;
        }
        self.phases.insert("total".to_string(), self.start.elapsed().as_millis());
        Some(self.phases)
    }
}

fn run(cmd: &Command) -> Result<(Report, bool), CliError> {
    let cfg = RunConfig::from_args(cmd.args())?;
    let mut timer = Timer::new(cfg.timing);
    let tangent = Arc::new(build_tangent(cfg.cartan.clone(), cfg.node)?);
    timer.lap("tangent");
    let mut report = Report::new(cmd.name(), &cfg, &tangent);
    let mut ok = true;

    if let Command::Tangent(_) = cmd {
        let mut actions = Vec::new();
        for &j in tangent.levi() {
            for g in [Generator::E(j), Generator::F(j)] {
                let m = tangent.action_matrix(g)?;
                actions.push(ActionEntry { generator: g.to_string(), entries: sparse_entries(&m) });
            }
        }
        report.actions = Some(actions);
        report.timing_ms = timer.finish();
        return Ok((report, ok));
    }

    let (sigma, status) = sigma_cached(tangent.clone(), cfg.cache_dir.as_deref())?;
    timer.lap("sigma");
    match status {
        CacheStatus::Hit => eprintln!("qsigma: sigma matrix loaded from cache"),
        CacheStatus::Miss => eprintln!("qsigma: sigma matrix computed and cached"),
        CacheStatus::Disabled => {}
    }

    match cmd {
        Command::Sigma(_) => {
            let blocks = sigma
                .block_sizes()
                .into_iter()
                .map(|(weight, size)| BlockEntry { weight, size })
                .collect();
            report.sigma = Some(SigmaEntry { dim: sigma.dim(), blocks, entries: sparse_entries(sigma.matrix()) });
        }
        Command::Relations(_) => {
            let rel = sigma.relation_space_dual();
            timer.lap("relations");
            report.relations = Some(RelationsEntry {
                dim: rel.len(),
                classical_dim: tangent.dim() * (tangent.dim() - 1) / 2,
                vectors: rel.iter().map(|v| relation_vector(&tangent, v)).collect(),
            });
        }
        Command::Spectrum(_) | Command::VerifyPaper(_) => {
            let an = Analysis::from_sigma(sigma, &cfg.points)?;
            timer.lap("spectrum");
            report.lowest_weight_vectors = Some(
                an.lowest
                    .iter()
                    .zip(&an.spectrum.lowest_weight_summary)
                    .map(|(v, s)| LowestWeightEntry::new(&tangent, v, s))
                    .collect(),
            );
            report.spectrum = Some(an.spectrum.eigenvalues.clone());
            report.minus_one_dim = Some(an.spectrum.minus_one_dim);
            report.classical_dim = Some(an.spectrum.classical_lambda2_dim);
            report.strongly_torsion_free = Some(an.spectrum.strongly_torsion_free);
            if let Command::VerifyPaper(_) = cmd {
                let claims = verify_claims(&an)?;
                timer.lap("claims");
                ok = claims.all_passed();
                report.ex_ex_sign = claims.ex_ex_sign;
                report.nu = claims.nu.clone();
                for note in &claims.discrepancy_notes {
                    if !report.discrepancy_notes.contains(note) {
                        report.discrepancy_notes.push(note.clone());
                    }
                }
                report.claims = Some(claims.claims);
            }
        }
        Command::Tangent(_) => unreachable!(),
    }
    report.timing_ms = timer.finish();
    Ok((report, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.command.args().format;
    match run(&cli.command) {
        Ok((report, ok)) => {
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                for c in report.claims.iter().flatten().filter(|c| !c.passed) {
                    eprintln!("qsigma: FAILED {}: {} ({})", c.id, c.statement, c.detail);
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qsigma: {e}");
            e.exit_code()
        }
    }
}
