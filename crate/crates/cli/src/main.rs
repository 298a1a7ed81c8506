mod analyses;
mod job;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use absectors_core::NetKind;
use job::{Analysis, Format, InputError, Job, NetSpec, PotentialSpec};

#[derive(Parser, Debug)]
#[command(name = "absectors", version)]
#[command(about = "Verify nets of diamonds, flat potentials and their charged sectors")]
struct Cli {
    /// Fixture net: line:N, circle:N or wedge:N1,N2
    #[arg(long, conflicts_with_all = ["complex", "cover"])]
    net: Option<NetKind>,

    /// Base complex JSON (requires --cover)
    #[arg(long, requires = "cover")]
    complex: Option<PathBuf>,

    /// Diamond cover JSON (requires --complex)
    #[arg(long, requires = "complex")]
    cover: Option<PathBuf>,

    /// Edge weights JSON of a flat potential
    #[arg(long, conflicts_with = "character")]
    potential: Option<PathBuf>,

    /// Periods on the independent cycles, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    character: Option<Vec<f64>>,

    /// Curve JSON added to the holonomy loop table
    #[arg(long)]
    curve: Option<PathBuf>,

    /// Analyses to run, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    analyses: Vec<Analysis>,

    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,

    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Numerical tolerance for report checks
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

impl Cli {
    fn into_job(self) -> Result<Job, InputError> {
        let net = match (self.net, self.complex, self.cover) {
            (Some(kind), _, _) => NetSpec::Fixture(kind),
            (None, Some(complex), Some(cover)) => NetSpec::Files { complex, cover },
            _ => return Err(InputError::new("arguments", "either --net or --complex with --cover is required")),
        };
        let potential = match (self.potential, self.character) {
            (Some(path), _) => PotentialSpec::Weights(path),
            (None, Some(periods)) => PotentialSpec::Character(periods),
            (None, None) => PotentialSpec::Zero,
        };
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(InputError::new("--tolerance", "must be a positive number"));
        }
        let mut analyses = self.analyses;
        analyses.sort();
        analyses.dedup();
        Ok(Job {
            net,
            potential,
            curve: self.curve,
            analyses,
            format: self.format,
            out: self.out,
            tolerance: self.tolerance,
        })
    }
}

fn run(job: &Job) -> Result<bool, InputError> {
    let loaded = job.load()?;
    let mut ctx = analyses::Context::new(&loaded, job.tolerance);
    let mut failed = false;
    for &analysis in &job.analyses {
        let outcome = ctx.run(analysis);
        failed |= outcome.failed;
        let paths = output::write_report(&job.out, analysis.name(), &outcome.report, job.format)
            .map_err(|e| InputError::new(job.out.display().to_string(), e))?;
        for path in paths {
            let status = if outcome.failed { "FAIL" } else { "ok" };
            println!("{status:4} {}", path.display());
        }
    }
    Ok(failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.into_job().and_then(|job| run(&job)) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
