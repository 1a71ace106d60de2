//! Command-line front end: validate and measure state documents, sweep
//! one-parameter families, run the paired atom-cavity dynamics, and
//! report triangle geometry for plotting.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use xtangle::state::subsystem_balance;
use xtangle::{dynamics, geometry, measures, tol};
use xtangle::{
    Bell, CavityParams, CoherenceBounds, CoherencePoint, Error, Factorization, RegionClass,
    ResolvedState, StateDoc, TimeGrid, XState,
};

#[derive(Parser)]
#[command(name = "xtangle", version, about = "Two-qubit X-state entanglement toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a state document and print its sanity profile.
    Validate(InputArgs),
    /// Print every available measure of a state as JSON.
    Measure(InputArgs),
    /// Tabulate measures along a one-parameter family into a CSV file.
    Sweep(SweepArgs),
    /// Evolve two atoms in separate cavities and tabulate the trace.
    Dynamics(DynamicsArgs),
    /// Print the triangle geometry of an X state as JSON.
    Region(RegionArgs),
}

#[derive(Args)]
struct InputArgs {
    /// State document to read.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Family to sweep: werner, two_bell, bell_mixture, or generalized_werner.
    #[arg(long)]
    family: String,
    /// Fixed family parameter as key=value; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    /// First swept value.
    #[arg(long)]
    from: f64,
    /// Last swept value.
    #[arg(long)]
    to: f64,
    /// Grid spacing.
    #[arg(long)]
    step: f64,
    /// CSV file to write.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct DynamicsArgs {
    /// Atom-cavity coupling strength.
    #[arg(long)]
    gamma: f64,
    /// Photons initially in each cavity.
    #[arg(long)]
    photons: u32,
    /// Initial Bell state, 1 through 4.
    #[arg(long)]
    bell: u64,
    /// Start time.
    #[arg(long, default_value_t = 0.0)]
    from: f64,
    /// End time.
    #[arg(long)]
    to: f64,
    /// Time step.
    #[arg(long)]
    step: f64,
    /// CSV file to write.
    #[arg(long)]
    output: PathBuf,
    /// Slack allowed when checking the envelope against the measures.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct RegionArgs {
    /// State document to read; must describe an X state.
    #[arg(long)]
    input: PathBuf,
    /// Classification tolerance.
    #[arg(long, default_value_t = tol::GEOMETRY)]
    tol: f64,
}

enum CliError {
    /// The state or parameters fail a physical requirement.
    Domain(Error),
    /// The input cannot be read or understood.
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// Splits resolution failures into malformed documents and well-formed
/// documents that describe an impossible state.
fn doc_error(e: Error) -> CliError {
    match e {
        Error::UnsupportedSchema(_)
        | Error::UnknownFamily(_)
        | Error::AmbiguousStateDoc
        | Error::MissingParam { .. } => CliError::Input(e.to_string()),
        other => CliError::Domain(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate(args) => cmd_validate(&args),
        Command::Measure(args) => cmd_measure(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Dynamics(args) => cmd_dynamics(&args),
        Command::Region(args) => cmd_region(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_param(raw: &str) -> Result<(String, f64), String> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got \"{raw}\""))?;
    let parsed: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("\"{value}\" is not a number"))?;
    Ok((key.trim().to_string(), parsed))
}

fn read_doc(path: &Path) -> Result<StateDoc, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ResolvedState, CliError> {
    read_doc(path)?.resolve().map_err(doc_error)
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn cmd_validate(args: &InputArgs) -> Result<(), CliError> {
    let doc = read_doc(&args.input)?;
    let resolved = match doc.resolve() {
        Ok(resolved) => resolved,
        Err(e) => {
            return Err(match doc_error(e) {
                CliError::Domain(e) => {
                    println!("valid: false");
                    println!("reason: {e}");
                    CliError::Domain(e)
                }
                input => input,
            });
        }
    };
    let density = resolved.density();
    let balance = subsystem_balance(&density);
    println!("valid: true");
    println!("purity: {}", fmt(density.purity()));
    println!("rank: {}", density.rank());
    println!("subsystem_asymmetry: {}", fmt(balance.asymmetry));
    println!("subsystem_entropies_equal: {}", balance.entropies_equal);
    println!("x_shaped: {}", XState::from_density(&density).is_ok());
    match density.factorize() {
        Factorization::Pure(p) => println!("factorization: pure (residual {})", fmt(p.residual)),
        Factorization::Mixed { purity } => {
            println!("factorization: mixed (purity {})", fmt(purity));
        }
    }
    Ok(())
}

fn cmd_measure(args: &InputArgs) -> Result<(), CliError> {
    let density = load(&args.input)?.density();
    let report = measures::full_report(&density)?;
    let json = serde_json::to_string_pretty(&report).expect("measure reports always serialize");
    println!("{json}");
    Ok(())
}

/// Geometry bundle serialized for plotting: the point, its bounds, the
/// classification, the closest separable point, and the corner lists of
/// the separable square and the entanglement rectangle.
#[derive(Serialize)]
struct RegionReport {
    point: CoherencePoint,
    bounds: CoherenceBounds,
    class: RegionClass,
    l: f64,
    l_max: f64,
    closest_separable: CoherencePoint,
    separable_square: [CoherencePoint; 4],
    entanglement_rectangle: Option<[CoherencePoint; 4]>,
}

fn cmd_region(args: &RegionArgs) -> Result<(), CliError> {
    let state = load(&args.input)?.as_x()?;
    let (point, bounds) = geometry::to_point(&state)?;
    let report = RegionReport {
        point,
        bounds,
        class: geometry::classify(point, bounds, args.tol)?,
        l: geometry::l_measure(point, bounds),
        l_max: geometry::l_max(bounds),
        closest_separable: geometry::closest_separable(point, bounds),
        separable_square: geometry::separable_square(bounds),
        entanglement_rectangle: geometry::entanglement_rectangle(bounds, args.tol),
    };
    let json = serde_json::to_string_pretty(&report).expect("region reports always serialize");
    println!("{json}");
    Ok(())
}

const SWEEP_HEADER: &str = "q,L,C,eof,ppt_entangled,rank,x,y,x0,y0,region,S_sub";
const DYNAMICS_HEADER: &str = "t,L,C,eof,ppt_entangled,rank,x,y,x0,y0,region,S_sub,S_envelope";

/// One CSV row shared by sweeps and dynamics, keyed by the swept value.
struct Row {
    key: f64,
    l: f64,
    c: f64,
    eof: f64,
    ppt_entangled: bool,
    rank: usize,
    x: f64,
    y: f64,
    x0: f64,
    y0: f64,
    region: RegionClass,
    s_sub: f64,
}

impl Row {
    fn from_state(key: f64, state: &XState) -> Result<Row, CliError> {
        let density = state.to_density();
        let (point, bounds) = geometry::to_point(state)?;
        let l = geometry::l_measure(point, bounds);
        Ok(Row {
            key,
            l,
            c: measures::concurrence(&density),
            eof: measures::entanglement_of_formation(l)?,
            ppt_entangled: measures::ppt_verdict(&density, tol::PSD_FLOOR).entangled,
            rank: density.rank(),
            x: point.x,
            y: point.y,
            x0: bounds.x0,
            y0: bounds.y0,
            region: geometry::classify(point, bounds, tol::GEOMETRY)?,
            s_sub: dynamics::subsystem_entropy(state),
        })
    }

    fn write_csv(&self, out: &mut String, envelope: Option<f64>) {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}/{},{}",
            fmt(self.key),
            fmt(self.l),
            fmt(self.c),
            fmt(self.eof),
            self.ppt_entangled,
            self.rank,
            fmt(self.x),
            fmt(self.y),
            fmt(self.x0),
            fmt(self.y0),
            self.region.region,
            self.region.subregion,
            fmt(self.s_sub),
        );
        if let Some(value) = envelope {
            let _ = write!(out, ",{}", fmt(value));
        }
        out.push('\n');
    }
}

fn sweep_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !from.is_finite() || !to.is_finite() || !step.is_finite() || step <= 0.0 || to < from {
        return Err(CliError::Input(format!(
            "sweep range needs finite bounds with to >= from and step > 0 (got {from}, {to}, {step})"
        )));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| from + i as f64 * step).collect())
}

fn lookup(params: &[(String, f64)], key: &str) -> Option<f64> {
    params.iter().rev().find(|(k, _)| k == key).map(|&(_, v)| v)
}

fn bell_slot(params: &[(String, f64)], key: &str, default: u64) -> Result<usize, CliError> {
    let index = match lookup(params, key) {
        None => default,
        Some(v) if v.fract() == 0.0 && (1.0..=4.0).contains(&v) => v as u64,
        Some(v) => {
            return Err(CliError::Input(format!(
                "parameter {key} must be a Bell index in 1..=4, got {v}"
            )));
        }
    };
    Ok(index as usize - 1)
}

type FamilyFn = Box<dyn Fn(f64) -> xtangle::Result<XState>>;

fn family_builder(family: &str, params: &[(String, f64)]) -> Result<FamilyFn, CliError> {
    match family {
        "werner" => {
            let bell = Bell::from_index(bell_slot(params, "k", 1)? as u64 + 1)?;
            Ok(Box::new(move |q| XState::werner(bell, q)))
        }
        "two_bell" => {
            let k = bell_slot(params, "k", 1)?;
            let j = bell_slot(params, "j", 2)?;
            if k == j {
                return Err(CliError::Input("two_bell needs distinct k and j".into()));
            }
            Ok(Box::new(move |q| {
                let mut weights = [0.0; 4];
                weights[k] = q;
                weights[j] = 1.0 - q;
                XState::from_bell_mixture(weights)
            }))
        }
        "bell_mixture" => {
            let kappa = lookup(params, "kappa").ok_or_else(|| {
                doc_error(Error::MissingParam { family: "bell_mixture", param: "kappa" })
            })?;
            Ok(Box::new(move |q| {
                XState::from_bell_mixture([q, 1.0 - 2.0 * kappa - q, kappa, kappa])
            }))
        }
        "generalized_werner" => {
            let s = lookup(params, "s").ok_or_else(|| {
                doc_error(Error::MissingParam { family: "generalized_werner", param: "s" })
            })?;
            let k = bell_slot(params, "k", 1)?;
            let j = bell_slot(params, "j", 2)?;
            if k == j {
                return Err(CliError::Input(
                    "generalized_werner needs distinct k and j".into(),
                ));
            }
            Ok(Box::new(move |q| {
                let mut coefficients = [0.0; 4];
                coefficients[k] = q;
                coefficients[j] = s - q;
                XState::generalized_werner(coefficients)
            }))
        }
        other => Err(CliError::Input(format!("unknown sweep family \"{other}\""))),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let build = family_builder(&args.family, &args.params)?;
    let values = sweep_grid(args.from, args.to, args.step)?;
    let mut out = String::with_capacity(64 + values.len() * 256);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for q in values {
        let state = build(q)?;
        Row::from_state(q, &state)?.write_csv(&mut out, None);
    }
    write_output(&args.output, &out)
}

fn cmd_dynamics(args: &DynamicsArgs) -> Result<(), CliError> {
    let bell = Bell::from_index(args.bell)?;
    let params = CavityParams::new(args.gamma, args.photons, bell)?;
    let grid = TimeGrid::new(args.from, args.to, args.step)?;
    let mut trace = dynamics::sweep(&params, &grid)?;
    let check = match dynamics::attach_min_envelope(&mut trace) {
        Ok(()) => Some(dynamics::check_envelope_bound(&trace, args.tol)?),
        Err(e @ Error::EnvelopeDegenerate { .. }) => {
            eprintln!("warning: {e}; S_envelope column left empty");
            None
        }
        Err(other) => return Err(other.into()),
    };
    let mut out = String::with_capacity(64 + trace.samples.len() * 288);
    out.push_str(DYNAMICS_HEADER);
    out.push('\n');
    for (i, sample) in trace.samples.iter().enumerate() {
        let row = Row {
            key: sample.t,
            l: sample.l,
            c: sample.concurrence,
            eof: sample.entanglement_of_formation,
            ppt_entangled: sample.ppt_entangled,
            rank: sample.rank,
            x: sample.x,
            y: sample.y,
            x0: sample.x0,
            y0: sample.y0,
            region: sample.region,
            s_sub: sample.entropy,
        };
        match trace.envelope.as_ref() {
            Some(envelope) => row.write_csv(&mut out, Some(envelope[i].1)),
            None => {
                row.write_csv(&mut out, None);
                // Keep the column count fixed even without an envelope.
                out.pop();
                out.push_str(",\n");
            }
        }
    }
    write_output(&args.output, &out)?;
    match check {
        Some(c) => println!(
            "envelope check: holds = {}, worst violation = {} at t = {}",
            c.holds,
            fmt(c.worst_violation),
            fmt(c.at_t)
        ),
        None => println!("envelope check: skipped (degenerate trace)"),
    }
    Ok(())
}
