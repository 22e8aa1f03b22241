use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use qsigma_core::cartan::{CartanData, Series};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CaseArgs {
    /// Series: A, B, C, D, E6 or E7.
    #[arg(long)]
    pub series: String,
    /// Rank; optional for E6 and E7.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Cominuscule node, 1-based (Bourbaki labels).
    #[arg(long)]
    pub node: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Directory for cached sigma matrices; QSIGMA_CACHE takes precedence.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Rational points used to cross-check kernel dimensions.
    #[arg(long, value_delimiter = ',', default_value = "2,7/3")]
    pub specialize: Vec<String>,
    /// Include wall-clock timing in the report (breaks byte-for-byte
    /// reproducibility).
    #[arg(long)]
    pub timing: bool,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cartan: Arc<CartanData>,
    /// 0-based node.
    pub node: usize,
    pub cache_dir: Option<PathBuf>,
    pub points: Vec<BigRational>,
    pub timing: bool,
}

impl RunConfig {
    pub fn from_args(args: &CaseArgs) -> Result<Self, CliError> {
        let series: Series = args.series.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        let rank = match (args.rank, series.fixed_rank()) {
            (Some(r), _) => r,
            (None, Some(r)) => r,
            (None, None) => return Err(CliError::Usage(format!("--rank is required for series {series}"))),
        };
        let cartan = CartanData::build(series, rank).map_err(|e| CliError::Usage(e.to_string()))?;
        if args.node == 0 || args.node > rank {
            return Err(CliError::Usage(format!("node {} is out of range 1..={rank}", args.node)));
        }
        let node = args.node - 1;
        cartan.check_cominuscule(node).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut points = Vec::new();
        for s in &args.specialize {
            let q0: BigRational = s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("cannot parse specialization point {s:?}")))?;
            if q0.is_zero() || q0.is_one() || (-&q0).is_one() {
                return Err(CliError::Usage(format!("specialization point {s} must avoid 0 and ±1")));
            }
            points.push(q0);
        }
        if points.is_empty() {
            return Err(CliError::Usage("at least one specialization point is required".into()));
        }
        Ok(Self {
            cartan: Arc::new(cartan),
            node,
            cache_dir: std::env::var_os("QSIGMA_CACHE")
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
                .or_else(|| args.cache_dir.clone()),
            points,
            timing: args.timing,
        })
    }
}
