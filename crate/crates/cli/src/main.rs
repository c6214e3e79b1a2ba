mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lifshitz::figures_data::{sweep_forces, sweep_material_response, SweepTable};
use lifshitz::units::PhysicalConstants;
use lifshitz::validation::{self, CheckKind, Relation, ValidationPlan};
use lifshitz::{MaterialSpec, Model};

use config::{Format, ModelChoice, RunConfig, Scenario, Spacing};
use error::CliError;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "lifshitz", version, about = "Casimir pressure between metal plates from the Lifshitz theory")]
struct Cli {
    /// JSON run configuration; command-line flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pressure at a single separation.
    Force(ForceArgs),
    /// Pressures over a grid of separations.
    Sweep(SweepArgs),
    /// Permittivity and permeability of one material over frequency.
    Response(ResponseArgs),
    /// Run the oracle suite.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    #[arg(long, value_enum)]
    model: Option<ModelChoice>,
    /// Kelvin.
    #[arg(long, allow_negative_numbers = true)]
    temperature: Option<f64>,
    /// Also compute the evanescent and propagating fractions.
    #[arg(long)]
    breakdown: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    numerics: NumericsArgs,
}

#[derive(Args)]
struct NumericsArgs {
    #[arg(long, allow_negative_numbers = true)]
    rel_tol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    matsubara_tail_tol: Option<f64>,
    #[arg(long)]
    l_max_cap: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    t_min_cutoff: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    plasma_cutoff: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    w_max: Option<f64>,
    #[arg(long)]
    max_panels: Option<usize>,
}

#[derive(Args)]
struct GridArgs {
    /// Separations in µm, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    a_um: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a_max: Option<f64>,
    #[arg(long)]
    a_count: Option<usize>,
    #[arg(long, value_enum)]
    spacing: Option<Spacing>,
}

#[derive(Args)]
struct ForceArgs {
    #[command(flatten)]
    common: Common,
    /// Separation in µm.
    #[arg(long, allow_negative_numbers = true)]
    a_um: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum MaterialChoice {
    Au,
    Ni,
    Plate1,
    Plate2,
}

#[derive(Args)]
struct ResponseArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "ni")]
    material: MaterialChoice,
    #[arg(long)]
    omega_min: Option<f64>,
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    omega_count: Option<usize>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    grid: GridArgs,
    /// Run only these checks (repeatable).
    #[arg(long, value_parser = parse_check)]
    check: Vec<CheckKind>,
    /// Scale a physical constant used by the oracles, e.g. k_b=1.05.
    #[arg(long, hide = true)]
    tamper_constant: Vec<String>,
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("lifshitz: {err}");
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let base = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Force(args) => cmd_force(base, args),
        Command::Sweep(args) => cmd_sweep(base, args),
        Command::Response(args) => cmd_response(base, args),
        Command::Validate(args) => cmd_validate(base, args),
    }
}

fn apply_common(cfg: &mut RunConfig, c: &Common) {
    if let Some(s) = c.scenario {
        cfg.scenario = Some(s);
    }
    if let Some(m) = c.model {
        cfg.model = m;
    }
    if let Some(t) = c.temperature {
        cfg.temperature = t;
    }
    cfg.breakdown |= c.breakdown;
    if let Some(p) = &c.output {
        cfg.output.path = Some(p.clone());
    }
    if let Some(f) = c.format {
        cfg.output.format = f;
    }
    let n = &c.numerics;
    let num = &mut cfg.numerics;
    macro_rules! set {
        ($($field:ident),*) => { $( if let Some(v) = n.$field { num.$field = v; } )* };
    }
    set!(rel_tol, matsubara_tail_tol, l_max_cap, t_min_cutoff, t_max, plasma_cutoff, w_max, max_panels);
}

fn apply_grid(cfg: &mut RunConfig, g: &GridArgs) {
    let s = &mut cfg.separations;
    if !g.a_um.is_empty() {
        *s = config::Separations {
            list: Some(g.a_um.clone()),
            ..Default::default()
        };
    }
    if g.a_min.is_some() || g.a_max.is_some() || g.a_count.is_some() || g.spacing.is_some() {
        s.list = None;
        s.min = g.a_min.or(s.min);
        s.max = g.a_max.or(s.max);
        s.count = g.a_count.or(s.count);
        s.spacing = g.spacing.or(s.spacing);
    }
}

fn sweep_all(cfg: &RunConfig, grid: &[f64]) -> Result<(Scenario, Vec<SweepTable>), CliError> {
    let scenario = cfg.scenario_or_default();
    let sys = cfg.system(scenario)?;
    let tables = cfg
        .model
        .models()
        .into_iter()
        .map(|m| sweep_forces(&sys, m, grid, &cfg.numerics, cfg.breakdown).map_err(CliError::engine))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((scenario, tables))
}

fn force_document(cfg: &RunConfig, command: &str, scenario: Scenario, tables: Vec<SweepTable>) -> String {
    match cfg.output.format {
        Format::Csv => {
            let mut it = tables.into_iter();
            let mut all = it.next().expect("at least one model");
            for t in it {
                all.extend(t);
            }
            all.to_csv()
        }
        Format::Json => output::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "scenario": scenario.label(),
            "constants_version": PhysicalConstants::VERSION,
            "config": cfg,
            "tables": tables,
        })),
    }
}

fn cmd_force(mut cfg: RunConfig, args: ForceArgs) -> Result<ExitCode, CliError> {
    apply_common(&mut cfg, &args.common);
    if let Some(a) = args.a_um {
        cfg.separations = config::Separations {
            list: Some(vec![a]),
            ..Default::default()
        };
    }
    cfg.validate_common()?;
    if cfg.separations.is_unset() {
        return Err(CliError::config("a_um", "force needs a separation (--a-um)"));
    }
    let grid = cfg.separations.resolve().map_err(|e| match e {
        CliError::Config { message, .. } => CliError::config("a_um", message),
        other => other,
    })?;
    if grid.len() != 1 {
        return Err(CliError::config("a_um", format!("force needs exactly one separation, got {}", grid.len())));
    }
    let (scenario, tables) = sweep_all(&cfg, &grid)?;
    output::emit(cfg.output.path.as_deref(), &force_document(&cfg, "force", scenario, tables))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(mut cfg: RunConfig, args: SweepArgs) -> Result<ExitCode, CliError> {
    apply_common(&mut cfg, &args.common);
    apply_grid(&mut cfg, &args.grid);
    cfg.validate_common()?;
    let grid = cfg.separations.resolve()?;
    let (scenario, tables) = sweep_all(&cfg, &grid)?;
    output::emit(cfg.output.path.as_deref(), &force_document(&cfg, "sweep", scenario, tables))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_response(mut cfg: RunConfig, args: ResponseArgs) -> Result<ExitCode, CliError> {
    apply_common(&mut cfg, &args.common);
    let f = &mut cfg.frequencies;
    f.min = args.omega_min.unwrap_or(f.min);
    f.max = args.omega_max.unwrap_or(f.max);
    f.count = args.omega_count.unwrap_or(f.count);
    cfg.validate_common()?;
    let grid = cfg.frequencies.resolve()?;
    let spec = match args.material {
        MaterialChoice::Au => MaterialSpec::gold(Model::Drude),
        MaterialChoice::Ni => MaterialSpec::nickel(Model::Drude),
        MaterialChoice::Plate1 => cfg.system(cfg.scenario_or_default())?.plate1,
        MaterialChoice::Plate2 => cfg.system(cfg.scenario_or_default())?.plate2,
    };
    let table = sweep_material_response(&spec, &grid).map_err(CliError::engine)?;
    let doc = match cfg.output.format {
        Format::Csv => table.to_csv(),
        Format::Json => output::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "response",
            "table": table,
        })),
    };
    output::emit(cfg.output.path.as_deref(), &doc)?;
    Ok(ExitCode::SUCCESS)
}

fn tampered_constants(specs: &[String]) -> Result<PhysicalConstants, CliError> {
    let mut k = PhysicalConstants::CODATA_2018;
    for spec in specs {
        let (name, factor) = spec
            .split_once('=')
            .ok_or_else(|| CliError::config("tamper_constant", format!("expected NAME=FACTOR, got `{spec}`")))?;
        let factor: f64 = factor
            .parse()
            .map_err(|_| CliError::config("tamper_constant", format!("bad factor in `{spec}`")))?;
        let slot = match name {
            "hbar" => &mut k.hbar,
            "k_b" => &mut k.k_b,
            "c" => &mut k.c,
            "ev" => &mut k.ev,
            _ => return Err(CliError::config("tamper_constant", format!("unknown constant `{name}`"))),
        };
        *slot *= factor;
    }
    Ok(k)
}

fn cmd_validate(mut cfg: RunConfig, args: ValidateArgs) -> Result<ExitCode, CliError> {
    apply_common(&mut cfg, &args.common);
    apply_grid(&mut cfg, &args.grid);
    cfg.validate_common()?;
    let mut plan = ValidationPlan {
        numerics: cfg.numerics.clone(),
        constants: tampered_constants(&args.tamper_constant)?,
        ..ValidationPlan::default()
    };
    if !args.check.is_empty() {
        plan.kinds = args.check.clone();
    }
    let scenarios = match cfg.scenario {
        Some(s) => vec![s],
        None => Scenario::PRESETS.to_vec(),
    };
    plan.scenarios = scenarios
        .into_iter()
        .map(|s| Ok((s.label().to_string(), cfg.system(s)?)))
        .collect::<Result<_, CliError>>()?;
    if !cfg.separations.is_unset() {
        plan.grid_um = cfg.separations.resolve()?;
    }
    let report = validation::run(&plan).map_err(CliError::engine)?;
    for c in &report.checks {
        let rel = match c.relation {
            Relation::Below => "<",
            Relation::Above => ">",
        };
        eprintln!(
            "{} {:32} {:6} {:.3e} {rel} {:e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.scenario,
            c.measured,
            c.bound
        );
    }
    let doc = output::json(&json!({
        "schema_version": SCHEMA_VERSION,
        "command": "validate",
        "constants_version": PhysicalConstants::VERSION,
        "pass": report.pass,
        "checks": report.checks,
    }));
    output::emit(cfg.output.path.as_deref(), &doc)?;
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
