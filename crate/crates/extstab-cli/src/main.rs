//! Command-line front end: parse circuit files, run the decomposition
//! simulator with an optional dense cross-check, and emit text or JSON
//! reports.
//!
//! Exit codes: 0 success, 1 error, 2 post-selection rejection.

use clap::{Args, Parser, Subcommand};
use extstab::circuit::{Angle, Circuit};
use extstab::oracle::RunOptions;
use extstab::protocols::{
    self, build_surface_injection, frame_target, SweepOptions,
};
use extstab::report::{oracle_cross_check, RunReport};
use extstab::run::{run_extended, RunOutput};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "extstab", version, about = "Stabilizer-decomposition simulator for Clifford + one-T circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file.
    Simulate(SimulateArgs),
    /// Build and run a surface-code magic state injection.
    Inject(InjectArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Seed for sampled measurements.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cross-check against the dense reference simulator.
    #[arg(long)]
    oracle: bool,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timing in the report (breaks bit-identical JSON).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Circuit file path.
    file: String,
    /// Explore every outcome path (default).
    #[arg(long, conflicts_with = "sample")]
    enumerate: bool,
    /// Sample one outcome path with the seed.
    #[arg(long)]
    sample: bool,
    /// Honor `postselect=` fields in the circuit.
    #[arg(long)]
    postselect: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct InjectArgs {
    /// Code distance (2 reproduces the four-qubit toy code).
    #[arg(long)]
    distance: usize,
    /// Rotation angle of the injected state (for example `pi/4` or `-pi/4`).
    #[arg(long, default_value = "pi/4", allow_hyphen_values = true)]
    theta: String,
    /// Sweep single-qubit Pauli errors over every post-rotation position.
    #[arg(long)]
    sweep_errors: bool,
    /// Include the layout description in the report.
    #[arg(long)]
    export_layout: bool,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems are plain errors for exit-code purposes.
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Inject(args) => cmd_inject(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn finish(report: RunReport, common: &CommonArgs, started: Instant) -> ExitCode {
    let mut report = report;
    if common.timings {
        report.timing_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    if common.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    if report.rejected {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, extstab::Error> {
    let started = Instant::now();
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| extstab::Error::Invalid(format!("cannot read {}: {e}", args.file)))?;
    let circuit = Circuit::parse(&text)?;
    let opts = RunOptions {
        enumerate: !args.sample,
        honor_postselect: args.postselect,
        seed: args.common.seed,
        ..RunOptions::default()
    };
    let out = run_extended(&circuit, &opts)?;
    let mut report = RunReport::new("simulate", circuit.n, &opts);
    report.set_branches(&out);
    if args.common.oracle {
        report.oracle = Some(oracle_cross_check(&circuit, &opts, &out)?);
    }
    Ok(finish(report, &args.common, started))
}

fn cmd_inject(args: InjectArgs) -> Result<ExitCode, extstab::Error> {
    let started = Instant::now();
    let theta = parse_theta(&args.theta)?;
    let (circuit, layout) = build_surface_injection(args.distance, theta)?;
    let (out, enumerated): (RunOutput, bool) =
        protocols::run_injection(&circuit, args.common.seed)?;

    let opts = RunOptions {
        enumerate: enumerated,
        honor_postselect: true,
        seed: args.common.seed,
        ..RunOptions::default()
    };
    let mut report = RunReport::new("inject", circuit.n, &opts);
    report.set_branches(&out);
    report.fidelity_target = Some(format!(
        "encoded phase state (theta = {}) in each outcome frame",
        theta
    ));

    // Per-branch logical fidelity where the projector expansion is tractable.
    let theta_val = theta.radians();
    if layout.n <= 17 {
        for (branch, rep) in out.branches.iter().zip(&mut report.branches) {
            let target = frame_target(&layout, branch.state.outcomes(), theta_val)?;
            rep.fidelity = Some(branch.state.fidelity_by_expectation(&target)?);
        }
    }
    // Symbolic logical-form check on every surviving branch.
    if let Some(first_fail) = out
        .branches
        .iter()
        .map(|b| protocols::check_logical_form(&b.state, &layout, theta_val))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .reduce(|acc, r| if acc.passed() { r } else { acc })
    {
        report.logical_form = Some(first_fail);
    }
    if args.common.oracle {
        report.oracle = Some(oracle_cross_check(&circuit, &opts, &out)?);
    }
    if args.sweep_errors {
        let sweep_opts = SweepOptions {
            seed: args.common.seed,
            ..SweepOptions::default()
        };
        report.sweep = Some(protocols::insert_error_sweep(
            &circuit, &layout, theta_val, &sweep_opts,
        )?);
    }
    if args.export_layout {
        report.layout = Some(layout.export());
    }
    Ok(finish(report, &args.common, started))
}

fn parse_theta(text: &str) -> Result<Angle, extstab::Error> {
    // Reuse the circuit grammar for angles.
    let probe = format!("qubits 1\ninit 0 +\nrz {text} 0\n");
    let c = Circuit::parse(&probe)
        .map_err(|_| extstab::Error::Invalid(format!("bad angle `{text}`")))?;
    match &c.instructions[1] {
        extstab::Instruction::NonClifford { theta, .. } => Ok(*theta),
        _ => unreachable!("rz line parses to a rotation"),
    }
}
