//! Command-line front end: scenario validation, axiom and theorem checks,
//! collision resolution, demo reproductions and spacetime diagrams.
//!
//! Exit codes: 0 success / claim confirmed, 1 check failed, 2 parse or
//! usage error.

mod demos;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reldyn::axioms;
use reldyn::dynamics::{float_backend, resolve_collision, BodyState};
use reldyn::quantity::Quantity;
use reldyn::scenario::{self, BodyId, Scenario, ScenarioError};

#[derive(Parser)]
#[command(
    name = "reldyn",
    about = "Exact special-relativistic kinematics and dynamics on finite scenario models",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Summary,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a scenario file against the structural frame axioms.
    Validate { file: PathBuf },
    /// Run named checks (or all of them) on a scenario file.
    Check {
        file: PathBuf,
        /// Check names such as AxSelf, ConsMass; defaults to all.
        checks: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Checks always run on the exact backend; passing float here only
        /// affects nothing and is reported.
        #[arg(long, value_enum, default_value = "exact")]
        backend: Backend,
    },
    /// Resolve an inelastic collision of two bodies given as rest mass and
    /// 1-dimensional velocity, all exact quantity literals.
    Resolve {
        rest_mass1: String,
        velocity1: String,
        rest_mass2: String,
        velocity2: String,
        #[arg(long, value_enum, default_value = "exact")]
        backend: Backend,
    },
    /// Reproduce one of the built-in demonstrations.
    Demo {
        /// One of: thm1, thm1-construction, thm2-batch, emc2, massdepend,
        /// counterexample.
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Batch size for batched demos.
        #[arg(long)]
        batch: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Draw a spacetime diagram of a scenario as SVG.
    Plot {
        file: PathBuf,
        /// Observer whose frame to draw; defaults to the first observer.
        #[arg(long)]
        observer: Option<String>,
        /// Projection axes, time first: e.g. t,x or t,y.
        #[arg(long, default_value = "t,x")]
        axes: String,
        /// Output path; defaults to the scenario name with .svg.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a generated scenario to a file.
    Generate {
        /// standard, cons-mass-counterexample or cons-moment-counterexample.
        #[arg(long, default_value = "standard")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dimension: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<Scenario, String> {
    scenario::load_scenario(file).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Check {
            file,
            checks,
            format,
            backend,
        } => cmd_check(&file, &checks, format, backend),
        Command::Resolve {
            rest_mass1,
            velocity1,
            rest_mass2,
            velocity2,
            backend,
        } => cmd_resolve(&rest_mass1, &velocity1, &rest_mass2, &velocity2, backend),
        Command::Demo {
            name,
            seed,
            batch,
            format,
        } => demos::run(&name, seed, batch, format == Format::Summary),
        Command::Plot {
            file,
            observer,
            axes,
            output,
        } => cmd_plot(&file, observer.as_deref(), &axes, output),
        Command::Generate {
            kind,
            seed,
            dimension,
            output,
        } => cmd_generate(&kind, seed, dimension, &output),
    }
}

fn cmd_generate(
    kind: &str,
    seed: u64,
    dimension: usize,
    output: &PathBuf,
) -> Result<ExitCode, String> {
    let scenario = match kind {
        "standard" => axioms::generators::random_standard_model(seed, dimension),
        "cons-mass-counterexample" => axioms::generators::generate_cons_mass_counterexample(),
        "cons-moment-counterexample" => axioms::generators::generate_cons_moment_counterexample(),
        other => return Err(format!("unknown kind `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    scenario::save_scenario(&scenario, output).map_err(|e| e.to_string())?;
    println!("wrote {}", output.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(file: &PathBuf) -> Result<ExitCode, String> {
    match scenario::load_scenario(file) {
        Ok(s) => {
            println!(
                "ok: {} bodies, {} observers, {} collisions, dimension {}",
                s.bodies.len(),
                s.observers().count(),
                s.collisions.len(),
                s.dimension
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(ScenarioError::Validation(violations)) => {
            for v in &violations {
                println!("violation: {v}");
            }
            Ok(ExitCode::FAILURE)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_check(
    file: &PathBuf,
    checks: &[String],
    format: Format,
    backend: Backend,
) -> Result<ExitCode, String> {
    let names: Vec<String> = if checks.is_empty() || checks.iter().any(|c| c == "all") {
        axioms::CHECK_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        checks.to_vec()
    };
    for name in &names {
        if !axioms::CHECK_NAMES.contains(&name.as_str()) {
            return Err(format!(
                "unknown check name `{name}`; known: {}",
                axioms::CHECK_NAMES.join(", ")
            ));
        }
    }
    if backend == Backend::Float && format == Format::Text {
        println!("note: checks always run on the exact backend");
    }
    let s = load(file)?;
    let mut all_ok = true;
    for name in &names {
        let report = axioms::run_check(&s, name)
            .expect("names were validated")
            .map_err(|e| e.to_string())?;
        all_ok &= report.passed();
        match format {
            Format::Summary => println!("{}", report.summary_line()),
            _ => print!("{}", report.render_text()),
        }
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn parse_quantity(text: &str, what: &str) -> Result<Quantity, String> {
    text.parse::<Quantity>()
        .map_err(|e| format!("{what}: {e}"))
}

fn cmd_resolve(
    m1: &str,
    v1: &str,
    m2: &str,
    v2: &str,
    backend: Backend,
) -> Result<ExitCode, String> {
    let rest_mass1 = parse_quantity(m1, "rest mass 1")?;
    let velocity1 = parse_quantity(v1, "velocity 1")?;
    let rest_mass2 = parse_quantity(m2, "rest mass 2")?;
    let velocity2 = parse_quantity(v2, "velocity 2")?;
    if backend == Backend::Float {
        let out = float_backend::resolve_collision(
            rest_mass1.to_f64(),
            &[velocity1.to_f64()],
            rest_mass2.to_f64(),
            &[velocity2.to_f64()],
        )
        .ok_or("collision inputs must be subluminal with positive masses")?;
        println!("backend: float (tolerance {:e})", float_backend::TOLERANCE);
        println!("mass      = {:.9}", out.mass);
        println!("velocity  = {:.9}", out.velocity[0]);
        println!("rest mass = {:.9}", out.rest_mass);
        return Ok(ExitCode::SUCCESS);
    }
    let b = BodyState::new(rest_mass1, vec![velocity1]);
    let c = BodyState::new(rest_mass2, vec![velocity2]);
    match resolve_collision(&b, &c) {
        Ok(out) => {
            println!("mass      = {} (~{})", out.mass, out.mass.approx(5));
            println!(
                "velocity  = {} (~{})",
                out.velocity[0],
                out.velocity[0].approx(5)
            );
            println!(
                "rest mass = {} (~{})",
                out.rest_mass,
                out.rest_mass.approx(5)
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn cmd_plot(
    file: &PathBuf,
    observer: Option<&str>,
    axes: &str,
    output: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let s = load(file)?;
    let observer = match observer {
        Some(o) => BodyId::new(o),
        None => s
            .observers()
            .next()
            .cloned()
            .ok_or("the scenario has no observers")?,
    };
    if !s.observers().any(|k| k == &observer) {
        return Err(format!("unknown observer `{observer}`"));
    }
    let spatial_axis = plot::parse_axes(axes, s.dimension)?;
    let svg = plot::render(&s, &observer, spatial_axis).map_err(|e| e.to_string())?;
    let out_path = output.unwrap_or_else(|| file.with_extension("svg"));
    std::fs::write(&out_path, svg).map_err(|e| e.to_string())?;
    println!("wrote {}", out_path.display());
    Ok(ExitCode::SUCCESS)
}
