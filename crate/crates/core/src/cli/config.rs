use crate::radial::Dimension;
use crate::{Error, Result};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    VerifyBubble,
    VerifyPohozaev,
    MassLimit,
    GreenCheck,
    PolyIdentities,
    GiraudSweep,
    SphereSolve,
    BlowupDemo,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::VerifyBubble,
        Suite::VerifyPohozaev,
        Suite::MassLimit,
        Suite::GreenCheck,
        Suite::PolyIdentities,
        Suite::GiraudSweep,
        Suite::SphereSolve,
        Suite::BlowupDemo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::VerifyBubble => "verify-bubble",
            Suite::VerifyPohozaev => "verify-pohozaev",
            Suite::MassLimit => "mass-limit",
            Suite::GreenCheck => "green-check",
            Suite::PolyIdentities => "poly-identities",
            Suite::GiraudSweep => "giraud-sweep",
            Suite::SphereSolve => "sphere-solve",
            Suite::BlowupDemo => "blowup-demo",
            Suite::All => "all",
        }
    }

    pub fn default_pairs(self) -> Vec<(u32, u32)> {
        match self {
            Suite::VerifyBubble => vec![(3, 1), (5, 1), (5, 2), (7, 2), (7, 3), (9, 3), (9, 4)],
            Suite::VerifyPohozaev | Suite::GreenCheck => vec![(5, 2), (7, 3)],
            Suite::MassLimit => vec![(8, 2)],
            Suite::PolyIdentities => {
                let mut v = Vec::new();
                for n in 3..=9u32 {
                    for k in 1..=4u32 {
                        if 2 * k < n {
                            v.push((n, k));
                        }
                    }
                }
                v
            }
            Suite::SphereSolve | Suite::BlowupDemo => vec![(3, 1), (5, 2)],
            Suite::GiraudSweep | Suite::All => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub rho: Vec<f64>,
    pub xi: Vec<f64>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid { rho: vec![10.0, 100.0, 1000.0], xi: vec![0.0, 0.3, 0.9] }
    }
}

impl SweepGrid {
    /// Parses `rho=10,100;xi=0,0.5`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut grid = SweepGrid::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, vals) = part
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("sweep entry `{part}` must look like key=v1,v2")))?;
            let vals = vals
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad number `{v}` in sweep"))))
                .collect::<Result<Vec<_>>>()?;
            match key.trim() {
                "rho" => grid.rho = vals,
                "xi" => grid.xi = vals,
                other => return Err(Error::Config(format!("unknown sweep key `{other}` (expected rho or xi)"))),
            }
        }
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if self.rho.is_empty() || self.xi.is_empty() {
            return Err(Error::Config("sweep grids must be non-empty".into()));
        }
        if let Some(r) = self.rho.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::Config(format!("sweep rho = {r} must be positive")));
        }
        if let Some(x) = self.xi.iter().find(|x| !(**x >= 0.0 && **x < 1.0)) {
            return Err(Error::Config(format!("sweep xi = {x} must lie in [0, 1)")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Suite,
    /// Empty means each suite's default pairs.
    pub nk: Vec<(u32, u32)>,
    /// Overrides the tolerance of every relative-defect check.
    pub tol: Option<f64>,
    pub sweep: SweepGrid,
    #[serde(skip)]
    pub out: PathBuf,
    pub seed: u64,
    pub csv: bool,
    pub svg: bool,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(command: Suite) -> Self {
        RunConfig {
            command,
            nk: vec![],
            tol: None,
            sweep: SweepGrid::default(),
            out: PathBuf::from("."),
            seed: 0,
            csv: false,
            svg: false,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &(n, k) in &self.nk {
            validate_pair(n, k)?;
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("--tol {t}: every tolerance must be positive and finite")));
            }
        }
        if matches!(self.command, Suite::MassLimit) {
            if let Some(&(n, k)) = self.nk.iter().find(|(n, k)| *n < 2 * k + 4) {
                return Err(Error::Config(format!(
                    "mass-limit needs n >= 2k + 4 for the degree-4 correction, got (n, k) = ({n}, {k})"
                )));
            }
        }
        self.sweep.validate()
    }

    /// Pairs a suite runs on; `all` drops pairs a suite cannot use.
    pub fn pairs_for(&self, suite: Suite) -> Vec<Dimension> {
        let raw = if self.nk.is_empty() { suite.default_pairs() } else { self.nk.clone() };
        raw.into_iter()
            .filter(|&(n, k)| suite != Suite::MassLimit || n >= 2 * k + 4)
            .filter_map(|(n, k)| Dimension::new(n, k).ok())
            .collect()
    }
}

fn validate_pair(n: u32, k: u32) -> Result<()> {
    if k == 0 || 2 * k >= n {
        return Err(Error::Config(format!(
            "invalid --nk {n},{k}: the pair must satisfy k >= 1 and 2k < n (here 2k = {}, n = {n})",
            2 * k
        )));
    }
    Ok(())
}

pub fn parse_nk(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Config(format!("invalid --nk `{s}`: expected N,K")))?;
    let parse = |v: &str| v.trim().parse::<u32>().map_err(|_| Error::Config(format!("invalid --nk `{s}`: expected N,K")));
    let (n, k) = (parse(a)?, parse(b)?);
    validate_pair(n, k)?;
    Ok((n, k))
}

#[derive(Debug, Parser)]
#[command(name = "polylab", version, about = "Polyharmonic verification suites")]
pub struct Args {
    /// Suite to run; may instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<Suite>,
    /// Dimension pair, repeatable.
    #[arg(long = "nk", value_name = "N,K")]
    pub nk: Vec<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Giraud sweep grid, e.g. `rho=10,100;xi=0,0.3`.
    #[arg(long)]
    pub sweep: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub svg: bool,
    /// Record wall-clock times; reports are then no longer reproducible.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    command: Option<Suite>,
    nk: Option<Vec<(u32, u32)>>,
    tol: Option<f64>,
    sweep: Option<SweepGrid>,
    out: Option<PathBuf>,
    seed: Option<u64>,
    csv: Option<bool>,
    svg: Option<bool>,
    timings: Option<bool>,
}

/// File values first, then flags on top.
pub fn resolve(args: &Args) -> Result<RunConfig> {
    let file = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str::<FileConfig>(&text).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let command = args
        .command
        .or(file.command)
        .ok_or_else(|| Error::Config("no command given on the command line or in the config file".into()))?;
    let mut cfg = RunConfig::new(command);
    cfg.nk = if !args.nk.is_empty() {
        args.nk.iter().map(|s| parse_nk(s)).collect::<Result<_>>()?
    } else {
        file.nk.unwrap_or_default()
    };
    cfg.tol = args.tol.or(file.tol);
    cfg.sweep = match &args.sweep {
        Some(s) => SweepGrid::parse(s)?,
        None => file.sweep.unwrap_or_default(),
    };
    cfg.out = args.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("."));
    cfg.seed = args.seed.or(file.seed).unwrap_or(0);
    cfg.csv = args.csv || file.csv.unwrap_or(false);
    cfg.svg = args.svg || file.svg.unwrap_or(false);
    cfg.timings = args.timings || file.timings.unwrap_or(false);
    cfg.validate()?;
    Ok(cfg)
}
