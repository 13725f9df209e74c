//! `cfree`: enumeration dumps, conversions, identity suites and unitary
//! checks over JSON.
//!
//! Exit codes: 0 success, 1 an identity or check failed, 2 a size limit was
//! exceeded, 3 the input was outside the domain (including unreadable or
//! malformed input).

mod schema;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use cfree::cumulants::{Coordinates, Distribution};
use cfree::divisibility::{
    haar_property, haar_specs, levy_hincin_eval, sqrt_counterexample, toeplitz_psd, DiscreteCircleMeasure,
    UnitaryDistribution, PSD_TOLERANCE,
};
use cfree::model::PairJson;
use cfree::partitions::{for_each_nc, for_each_ncl, DEFAULT_MAX_N, HARD_MAX_N};
use cfree::random::rng;
use cfree::transforms::cfree_multiply;
use cfree::trees::{for_each_bicolor, for_each_tree};
use cfree::verify::{self, Suite, SuiteConfig};
use cfree::Error;

#[derive(Parser)]
#[command(name = "cfree", version, about = "Exact c-free probability at desk scale")]
struct Cli {
    /// Print the JSON input and output formats and exit.
    #[arg(long)]
    schema: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the objects of one size as JSON lines, then a count record.
    Enumerate {
        kind: Kind,
        n: usize,
        /// Refuse sizes above this bound.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Re-express a distribution in other coordinates.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        /// Distribution JSON; stdin if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// T-transforms of the product of a c-free pair, checked against the
    /// products of the factors' transforms.
    Multiply {
        /// Pair JSON `{"X": spec, "Y": spec, "order": N}`; stdin if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run a seeded identity suite.
    Verify {
        suite: SuiteArg,
        /// Order of the random data; 8, or `2n` for `trees`, if omitted.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest tree size for the `trees` suite.
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Checks on distributions of unitaries.
    Divisibility {
        check: Check,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Toeplitz depth for `psd`; the data's order if omitted.
        #[arg(long)]
        depth: Option<usize>,
        /// Eigenvalue cut-off for `psd`.
        #[arg(long, default_value_t = PSD_TOLERANCE, allow_negative_numbers = true)]
        tolerance: f64,
        /// `re,im` for `counterexample`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Generated data for `haar` when no input is given.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest `n` in `Φ((u_1 u_2)^n)`; half the order if omitted.
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Nc,
    Ncl,
    Trees,
    Bicolor,
}

#[derive(Copy, Clone, ValueEnum)]
enum Target {
    Moments,
    Cumulants,
    T,
}

#[derive(Copy, Clone, ValueEnum)]
enum SuiteArg {
    Lemma22,
    Prop23,
    Prop24,
    Prop25,
    Theorem31,
    Trees,
}

#[derive(Copy, Clone, ValueEnum)]
enum Check {
    Psd,
    Haar,
    Counterexample,
    Levy,
}

enum Failure {
    Check,
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(format!("invalid JSON: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match (cli.schema, cli.command) {
        (true, _) => emit(&mut out, &schema::schema()),
        (false, Some(command)) => run(command, &mut out),
        (false, None) => Err(Failure::Input("no command given; see --help".into())),
    };
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(3),
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeLimit { .. } => 2,
                _ => 3,
            })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn emit<W: Write, T: Serialize + ?Sized>(out: &mut W, value: &T) -> Outcome {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn read_json<T: DeserializeOwned>(input: Option<&PathBuf>) -> std::result::Result<T, Failure> {
    let text = match input {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn run<W: Write>(command: Command, out: &mut W) -> Outcome {
    match command {
        Command::Enumerate { kind, n, max_n } => enumerate(out, kind, n, max_n),
        Command::Convert { to, input } => {
            let d: Distribution = read_json(input.as_ref())?;
            let to = match to {
                Target::Moments => Coordinates::Moments,
                Target::Cumulants => Coordinates::Cumulants,
                Target::T => Coordinates::TCoefficients,
            };
            emit(out, &d.convert(to)?)
        }
        Command::Multiply { input } => {
            let (x, y) = read_json::<PairJson>(input.as_ref())?.into_specs()?;
            let report = cfree_multiply(&x, &y)?;
            let passed = report.passed();
            emit(
                out,
                &json!({
                    "order": report.order,
                    "product": report.product.to_json(),
                    "t_failures": report.t_failures,
                    "ct_failures": report.ct_failures,
                    "passed": passed,
                }),
            )?;
            if passed { Ok(()) } else { Err(Failure::Check) }
        }
        Command::Verify { suite, order, dim, trials, seed, n } => {
            let order = order.unwrap_or(match suite {
                SuiteArg::Trees => 2 * n,
                _ => 8,
            });
            if order > DEFAULT_MAX_N {
                return Err(Error::SizeLimit { n: order, max: DEFAULT_MAX_N }.into());
            }
            let suite = match suite {
                SuiteArg::Lemma22 => Suite::Lemma22,
                SuiteArg::Prop23 => Suite::Prop23,
                SuiteArg::Prop24 => Suite::Prop24,
                SuiteArg::Prop25 => Suite::Prop25,
                SuiteArg::Theorem31 => Suite::Theorem31,
                SuiteArg::Trees => Suite::Trees,
            };
            let report = verify::run(suite, &SuiteConfig { order, dim, trials, seed, n })?;
            emit(out, &report)?;
            if report.passed() { Ok(()) } else { Err(Failure::Check) }
        }
        Command::Divisibility { check, input, depth, tolerance, lambda, dim, order, seed, n_max } => match check {
            Check::Psd => {
                let d: UnitaryDistribution = read_json(input.as_ref())?;
                let report = toeplitz_psd(&d, depth.unwrap_or(d.order()), tolerance)?;
                emit(out, &report)?;
                if report.psd { Ok(()) } else { Err(Failure::Check) }
            }
            Check::Haar => {
                let (u1, u2) = match input {
                    Some(path) => read_json::<PairJson>(Some(&path))?.into_specs()?,
                    None => haar_specs(&mut rng(seed), dim, order, false),
                };
                let report = haar_property(&u1, &u2, n_max.unwrap_or(u1.order().min(u2.order()) / 2))?;
                emit(out, &report)?;
                if report.passed() { Ok(()) } else { Err(Failure::Check) }
            }
            Check::Counterexample => {
                let lambda = match (lambda, input) {
                    (Some(text), _) => parse_complex(&text)?,
                    (None, Some(path)) => read_json::<CounterexampleInput>(Some(&path))?.lambda.into(),
                    (None, None) => Complex64::new(0.1, 0.0),
                };
                emit(out, &sqrt_counterexample(lambda))
            }
            Check::Levy => {
                let input: LevyInput = read_json(input.as_ref())?;
                levy(out, &input)
            }
        },
    }
}

fn enumerate<W: Write>(out: &mut W, kind: Kind, n: usize, max_n: usize) -> Outcome {
    let max_n = max_n.min(HARD_MAX_N);
    let mut count = 0u64;
    let mut status = Ok(());
    let mut write = |value: &dyn erased::Json| match value.write_line(out) {
        Ok(()) => {
            count += 1;
            ControlFlow::Continue(())
        }
        Err(e) => {
            status = Err(e);
            ControlFlow::Break(())
        }
    };
    match kind {
        Kind::Nc => for_each_nc(n, max_n, |p| write(&p))?,
        Kind::Ncl => for_each_ncl(n, max_n, |p| write(&p))?,
        Kind::Trees => for_each_tree(n, max_n, |t| write(&t))?,
        Kind::Bicolor => for_each_bicolor(n, max_n, |t| write(&t))?,
    }
    status?;
    emit(out, &json!({ "count": count }))
}

/// Lets one closure stream items of different serialisable types.
mod erased {
    use std::io::{self, Write};

    pub trait Json {
        fn write_line(&self, out: &mut dyn Write) -> io::Result<()>;
    }

    impl<T: serde::Serialize> Json for T {
        fn write_line(&self, out: &mut dyn Write) -> io::Result<()> {
            serde_json::to_writer(&mut *out, self)?;
            writeln!(out)
        }
    }
}

fn parse_complex(text: &str) -> std::result::Result<Complex64, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| s.parse::<f64>().map_err(|e| Failure::Input(format!("'{s}' in '{text}': {e}")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Failure::Input(format!("expected re,im, got '{text}'"))),
    }
}

#[derive(Deserialize)]
struct CounterexampleInput {
    lambda: Pair,
}

#[derive(Clone, Copy, Deserialize, Serialize)]
struct Pair(f64, f64);

impl From<Pair> for Complex64 {
    fn from(p: Pair) -> Self {
        Complex64::new(p.0, p.1)
    }
}

/// `γ_x` and `σ_x` at each point `x` of a finite grid.
#[derive(Deserialize)]
struct LevyInput {
    family: BTreeMap<String, LevyPoint>,
    z: Vec<Pair>,
}

#[derive(Deserialize)]
struct LevyPoint {
    gamma: Pair,
    sigma: DiscreteCircleMeasure,
}

fn levy<W: Write>(out: &mut W, input: &LevyInput) -> Outcome {
    let mut values = Vec::new();
    for (x, point) in &input.family {
        for &z in &input.z {
            let v = levy_hincin_eval(point.gamma.into(), &point.sigma, z.into())?;
            values.push(json!({ "x": x, "z": z, "value": v }));
        }
    }
    emit(out, &values)
}
