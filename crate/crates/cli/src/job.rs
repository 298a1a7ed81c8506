use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use absectors_core::io::{self, CurveJson};
use absectors_core::{build_net, CausalPoset, FlatPotential, NetKind};

/// Bad or unreadable input, reported with exit code 2.
#[derive(Debug)]
pub struct InputError {
    pub source: String,
    pub message: String,
}

impl InputError {
    pub fn new(source: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError { source: source.into(), message: message.to_string() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.source, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Analysis {
    Validate,
    Pi1,
    Holonomy,
    Statistics,
    Sector,
    Roundtrip,
}

impl Analysis {
    pub fn name(self) -> &'static str {
        match self {
            Analysis::Validate => "validate",
            Analysis::Pi1 => "pi1",
            Analysis::Holonomy => "holonomy",
            Analysis::Statistics => "statistics",
            Analysis::Sector => "sector",
            Analysis::Roundtrip => "roundtrip",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub enum NetSpec {
    Fixture(NetKind),
    Files { complex: PathBuf, cover: PathBuf },
}

#[derive(Debug, Clone)]
pub enum PotentialSpec {
    Zero,
    Weights(PathBuf),
    Character(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct Job {
    pub net: NetSpec,
    pub potential: PotentialSpec,
    pub curve: Option<PathBuf>,
    /// Sorted and deduplicated, which is also dependency order.
    pub analyses: Vec<Analysis>,
    pub format: Format,
    pub out: PathBuf,
    pub tolerance: f64,
}

/// Parsed inputs of a job.
pub struct Loaded {
    pub poset: CausalPoset,
    pub potential: Result<FlatPotential, String>,
    pub curve: Option<CurveJson>,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError::new(path.display().to_string(), e))
}

impl Job {
    pub fn load(&self) -> Result<Loaded, InputError> {
        let poset = match &self.net {
            NetSpec::Fixture(kind) => build_net(*kind).map_err(|e| InputError::new("--net", e))?,
            NetSpec::Files { complex, cover } => {
                let base = io::parse_complex(&read(complex)?)
                    .map_err(|e| InputError::new(complex.display().to_string(), e))?;
                io::parse_cover(&read(cover)?, base).map_err(|e| InputError::new(cover.display().to_string(), e))?
            }
        };
        if let PotentialSpec::Character(periods) = &self.potential {
            let expected = absectors_core::homotopy::base_cycles(poset.base()).len();
            if periods.len() != expected {
                return Err(InputError::new(
                    "--character",
                    format!("{} values given, the net has {expected} independent cycles", periods.len()),
                ));
            }
        }
        let potential = match &self.potential {
            PotentialSpec::Zero => Ok(FlatPotential::zero(poset.base())),
            PotentialSpec::Weights(path) => {
                let name = path.display().to_string();
                Ok(io::parse_potential(&read(path)?, poset.base()).map_err(|e| InputError::new(name, e))?)
            }
            PotentialSpec::Character(periods) => {
                absectors_core::flatpot::potential_from_character(&poset, periods).map_err(|e| e.to_string())
            }
        };
        let curve = match &self.curve {
            None => None,
            Some(path) => {
                Some(io::parse_curve(&read(path)?).map_err(|e| InputError::new(path.display().to_string(), e))?)
            }
        };
        Ok(Loaded { poset, potential, curve })
    }
}
