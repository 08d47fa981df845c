use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use xygp::adiabatic::DEFAULT_KAPPA;
use xygp::geom_phase::{CycleSpec, Path};
use xygp::harness::{
    load_table1, parse_lambda_list, run_error_model, run_sweep, run_table1, schedule_for,
    write_schedule_csv, write_sweep_csv, ErrorModelConfig, LambdaSpec, SweepConfig,
    DEFAULT_CYCLE_TIME, DEFAULT_SEGMENTS,
};
use xygp::interferometer::run_interferometry;
use xygp::pulse::{compile_gate, GateSpec, SpinSystem};
use xygp::xy_model::XyParams;

const EXIT_VALIDATION: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "xygp", version, about = "Ground-state geometric phase of the two-spin XY model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the measured phase table against the closed form.
    Table1 {
        /// Fixture CSV; the bundled table is used when omitted.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Geometric phase over a range of λ at fixed γ.
    #[command(group(ArgGroup::new("lambdas").required(true).args(["lambda_list", "lambda_min"])))]
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        /// Comma-separated λ values.
        #[arg(long, allow_hyphen_values = true)]
        lambda_list: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires_all = ["lambda_max", "steps"])]
        lambda_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "lambda_min")]
        lambda_max: Option<f64>,
        #[arg(long, requires = "lambda_min")]
        steps: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
        segments: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLE_TIME)]
        cycle_time: f64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Constant-adiabaticity preparation schedule s(t).
    Schedule {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// One interferometric run along C or C̄.
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_enum)]
        path: PathArg,
        #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
        segments: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLE_TIME)]
        cycle_time: f64,
    },
    /// Compile one gate to a verified pulse sequence.
    Compile {
        #[arg(long, value_enum)]
        gate: GateArg,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
        /// Trotter parameter of an ASP step.
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long, value_enum, default_value = "C")]
        path: PathArg,
        /// SWAP spins, by label (`a`, `1`, `2`).
        #[arg(long, default_value = "a")]
        spin_i: String,
        #[arg(long, default_value = "1")]
        spin_j: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Phase error from an imperfect input state (random ensemble).
    Errors {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = 0.98)]
        fidelity: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
        segments: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLE_TIME)]
        cycle_time: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PathArg {
    #[value(name = "C")]
    C,
    #[value(name = "Cbar")]
    Cbar,
}

impl From<PathArg> for Path {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::C => Path::C,
            PathArg::Cbar => Path::Cbar,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GateArg {
    Uz,
    Vd,
    Swap,
    AspStep,
    ControlledStep,
}

fn required(name: &str, v: Option<f64>) -> xygp::Result<f64> {
    v.ok_or_else(|| xygp::Error::Validation(format!("--{name} is required for this gate")))
}

fn create(path: &PathBuf) -> xygp::Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cli: Cli) -> xygp::Result<u8> {
    match cli.command {
        Command::Table1 { fixture } => {
            let rows = load_table1(fixture.as_deref())?;
            let report = run_table1(&rows)?;
            print!("{}", report.render());
            Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
        }
        Command::Sweep {
            gamma,
            lambda_list,
            lambda_min,
            lambda_max,
            steps,
            segments,
            cycle_time,
            kappa,
            seed,
            out,
        } => {
            let lambdas = match (lambda_list, lambda_min, lambda_max, steps) {
                (Some(list), ..) => LambdaSpec::List(parse_lambda_list(&list)?),
                (None, Some(min), Some(max), Some(steps)) => LambdaSpec::Grid { min, max, steps },
                _ => unreachable!("clap enforces one lambda source"),
            };
            let cfg = SweepConfig {
                gamma,
                lambdas,
                segments,
                cycle_time,
                kappa,
                seed,
            };
            let result = run_sweep(&cfg)?;
            let mut w = create(&out)?;
            write_sweep_csv(&result.rows, &mut w)?;
            w.flush()?;
            Ok(0)
        }
        Command::Schedule {
            lambda,
            gamma,
            kappa,
            out,
        } => {
            let sched = schedule_for(&XyParams::new(lambda, gamma), kappa)?;
            let mut w = create(&out)?;
            write_schedule_csv(&sched, &mut w)?;
            w.flush()?;
            Ok(0)
        }
        Command::Simulate {
            lambda,
            gamma,
            path,
            segments,
            cycle_time,
        } => {
            let spec = CycleSpec::new(path.into(), XyParams::new(lambda, gamma), segments, cycle_time)?;
            let res = run_interferometry(&spec)?;
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "path={}", spec.path.label())?;
            writeln!(stdout, "beta_t_deg={:.6}", res.beta_t.to_degrees())?;
            writeln!(stdout, "coherence_abs={:.9}", res.ancilla_coherence.norm())?;
            writeln!(stdout, "system_return_fidelity={:.9}", res.system_return_fidelity)?;
            Ok(0)
        }
        Command::Compile {
            gate,
            phi,
            theta,
            lambda,
            gamma,
            s,
            delta,
            tau,
            path,
            spin_i,
            spin_j,
            out,
        } => {
            let sys = SpinSystem::three_spin_default();
            let spec = match gate {
                GateArg::Uz => GateSpec::Uz {
                    phi: required("phi", phi)?,
                },
                GateArg::Vd => GateSpec::Vd {
                    theta: match theta {
                        Some(t) => t,
                        None => XyParams::new(required("lambda", lambda)?, required("gamma", gamma)?).theta(),
                    },
                },
                GateArg::Swap => GateSpec::Swap {
                    i: sys.index_of(&spin_i)?,
                    j: sys.index_of(&spin_j)?,
                },
                GateArg::AspStep => GateSpec::AspStep {
                    s: required("s", s)?,
                    delta: required("delta", delta)?,
                    lambda: required("lambda", lambda)?,
                    gamma: required("gamma", gamma)?,
                },
                GateArg::ControlledStep => GateSpec::ControlledStep {
                    phi: required("phi", phi)?,
                    tau: required("tau", tau)?,
                    lambda: required("lambda", lambda)?,
                    gamma: required("gamma", gamma)?,
                    path: path.into(),
                },
            };
            let seq = compile_gate(&spec, &sys)?;
            let mut w = create(&out)?;
            w.write_all(seq.to_json(&sys)?.as_bytes())?;
            w.write_all(b"\n")?;
            w.flush()?;
            Ok(0)
        }
        Command::Errors {
            lambda,
            gamma,
            fidelity,
            samples,
            seed,
            segments,
            cycle_time,
        } => {
            let stats = run_error_model(&ErrorModelConfig {
                params: XyParams::new(lambda, gamma),
                segments,
                cycle_time,
                fidelity,
                samples,
                seed,
            })?;
            print!("{}", stats.render());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_VALIDATION } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
