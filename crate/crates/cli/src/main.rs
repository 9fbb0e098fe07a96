//! `regrisk`: batch front end for set-valued portfolio risk computations.
//!
//! Exit status: 0 success, 1 unreadable or malformed input, 2 validation
//! failure, 3 property violation found by `axioms` or `dual-check`.

mod config;
mod dataset;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use regrisk::duality::{dual_check, sample_dual_pairs};
use regrisk::risk::{evaluate_flattened, AvarLoss};
use regrisk::{
    check_axioms, check_cash_subadditivity, HarnessOptions, PolyhedralCone, RiskConfig, RiskEvaluator,
    SearchBox,
};
use serde_json::json;

use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Validation(String),
    Property(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Property(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Property(m) => write!(f, "property violated: {m}"),
        }
    }
}

impl From<regrisk::Error> for CliError {
    fn from(e: regrisk::Error) -> Self {
        match e {
            regrisk::Error::Parse(m) => CliError::Input(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "regrisk", version, about = "Set-valued risk statistics for scenario data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Io {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// CSV data file: header `d,l,n_1,...,n_l`, then d rows.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Output path; overrides the configuration, defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the configured cone and print it with its dual.
    Cone(Io),
    /// Evaluate the AV@R risk set of the data.
    Avar(Io),
    /// Run the randomized axiom harness.
    Axioms(Io),
    /// Sample dual pairs, compute penalties and check duality.
    DualCheck(Io),
    /// Evaluate AV@R on the data stacked into one long observation.
    FlattenAvar(Io),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("regrisk: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Cone(io) => cone(&io),
        Command::Avar(io) => avar(&io),
        Command::Axioms(io) => axioms(&io),
        Command::DualCheck(io) => dual(&io),
        Command::FlattenAvar(io) => flatten(&io),
    }
}

struct Loaded {
    cfg: RunConfig,
    data: Option<regrisk::DataMatrix>,
    out: Option<PathBuf>,
}

fn load(io: &Io, needs_data: bool) -> Result<Loaded, CliError> {
    let cfg = RunConfig::load(&io.config)?;
    let data = match &io.data {
        Some(p) => Some(dataset::read_data(p)?),
        None if needs_data => return Err(CliError::Input("--data is required for this command".into())),
        None => None,
    };
    let out = io.out.clone().or_else(|| cfg.output.clone());
    Ok(Loaded { cfg, data, out })
}

fn risk_config(loaded: &Loaded) -> Result<RiskConfig, CliError> {
    let d = loaded.data.as_ref().map(|x| x.d());
    let cone = loaded.cfg.cone(d)?;
    loaded.cfg.risk_config(cone, loaded.cfg.m)
}

fn cone(io: &Io) -> Result<(), CliError> {
    let loaded = load(io, false)?;
    let cone = loaded.cfg.cone(loaded.data.as_ref().map(|x| x.d()))?;
    let report = cone.validate_regulator()?;
    if !report.passed() {
        eprintln!("regrisk: note: cone is not a regulator cone ({report:?})");
    }
    let dual: PolyhedralCone = cone.dual();
    let value = json!({
        "cone": cone.to_json(),
        "dual": dual.to_json(),
        "regulator": report,
    });
    output::write_json(loaded.out.as_deref(), &value)
}

fn avar(io: &Io) -> Result<(), CliError> {
    let loaded = load(io, true)?;
    let cfg = risk_config(&loaded)?;
    let x = loaded.data.as_ref().expect("data loaded");
    let set = AvarLoss::new(cfg.clone()).evaluate(x)?;
    output::write_json(loaded.out.as_deref(), &set.to_json())?;
    if cfg.m() == 2 {
        if let Some(out) = &loaded.out {
            output::write_boundary(out, &set)?;
        }
    }
    Ok(())
}

fn axioms(io: &Io) -> Result<(), CliError> {
    let loaded = load(io, false)?;
    let cfg = risk_config(&loaded)?;
    let options = HarnessOptions::new(loaded.cfg.trials, loaded.cfg.seed);
    let avar = AvarLoss::new(cfg);
    let axioms = check_axioms(&avar, &options)?;
    let cash = check_cash_subadditivity(&avar, &options)?;
    let passed = axioms.passed() && cash.passed();
    let value = json!({
        "passed": passed,
        "axioms": axioms,
        "cash_subadditivity": cash,
    });
    output::write_json(loaded.out.as_deref(), &value)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Property("axiom harness reported unexpected verdicts".into()))
    }
}

fn dual(io: &Io) -> Result<(), CliError> {
    let loaded = load(io, true)?;
    let cfg = risk_config(&loaded)?;
    let x = loaded.data.as_ref().expect("data loaded");
    let avar = AvarLoss::new(cfg.clone());
    let pairs = sample_dual_pairs(&cfg, x, loaded.cfg.dual_samples, loaded.cfg.seed)?;
    let report = dual_check(&avar, x, &pairs, &SearchBox::around(x), 1e-6)?;
    output::write_json(loaded.out.as_deref(), &report)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Property("weak duality or the biconjugate outer bound failed".into()))
    }
}

fn flatten(io: &Io) -> Result<(), CliError> {
    let loaded = load(io, true)?;
    let x = loaded.data.as_ref().expect("data loaded");
    let len = x.d() * x.n();
    let cone = match &loaded.cfg.cone {
        config::ConeSpec::Preset(_) => loaded.cfg.cone(Some(len))?,
        config::ConeSpec::Explicit(_) => {
            let cone = loaded.cfg.cone(None)?;
            if cone.dim() != len {
                return Err(CliError::Validation(format!(
                    "flattened data has {len} entries but the cone lives in ℝ^{}",
                    cone.dim()
                )));
            }
            cone
        }
    };
    let m_flat = loaded.cfg.m_flat.unwrap_or(loaded.cfg.m * x.n());
    let mut flat_cfg = loaded.cfg.clone();
    flat_cfg.scenario_weights = None;
    let cfg = flat_cfg.risk_config(cone, m_flat)?;
    let set = evaluate_flattened(&x.flatten(), &cfg)?;
    output::write_json(loaded.out.as_deref(), &set.to_json())
}
