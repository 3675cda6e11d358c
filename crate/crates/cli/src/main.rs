//! Command-line interface for gain-tuned continuous-variable teleportation:
//! closed-form fidelities, gain sweeps, optimal-gain tables, the data behind
//! the built-in figures, and the verification suites.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use cvteleport::fidelity::{fidelity_for, fidelity_joint, fidelity_single_photon, fidelity_vacuum, sample_curve, InputSpec};
use cvteleport::gainopt::{improvement_table, optimal_gain_coherent, InputFamily};
use cvteleport::verify::{run_suite, Suite, VerifyConfig};

use table::{emit, write_bytes, Format, Table};

#[derive(Parser)]
#[command(
    name = "cvteleport",
    version,
    about = "Gain-tuned continuous-variable teleportation: fidelities, optimal gains, figure data",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage or parameter error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form teleportation fidelity for one (input, q, gain)
    Fidelity(FidelityArgs),
    /// Fidelity-vs-gain table for one input class
    Curve(CurveArgs),
    /// Optimal gain, fidelities, and improvement per entanglement value
    OptimalGain(OptimalGainArgs),
    /// Data behind a built-in figure (2a, 2b, 2c, 3, 4, 5, 6, 7, 8)
    Figure(FigureArgs),
    /// Run verification suites and report per-check deviations
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Coherent,
    Vacuum,
    Photon,
    Qubit,
}

impl InputKind {
    fn label(self) -> &'static str {
        match self {
            Self::Coherent => "coherent",
            Self::Vacuum => "vacuum",
            Self::Photon => "photon",
            Self::Qubit => "qubit",
        }
    }
}

#[derive(Args)]
struct InputOpts {
    /// Input state class
    #[arg(long, value_enum)]
    input: InputKind,
    /// Coherent amplitude as `re[,im]`
    #[arg(long, value_parser = parse_complex, value_name = "RE[,IM]", allow_hyphen_values = true)]
    alpha: Option<Complex64>,
    /// Coherent intensity |alpha|^2, a phase-free alternative to --alpha
    #[arg(long, value_name = "X")]
    alpha_sq: Option<f64>,
}

impl InputOpts {
    fn to_spec(&self) -> Result<InputSpec> {
        match self.input {
            InputKind::Coherent => {
                let alpha = match (self.alpha, self.alpha_sq) {
                    (Some(_), Some(_)) => bail!("--alpha and --alpha-sq are mutually exclusive"),
                    (Some(alpha), None) => alpha,
                    (None, Some(sq)) if sq >= 0.0 && sq.is_finite() => {
                        Complex64::new(sq.sqrt(), 0.0)
                    }
                    (None, Some(sq)) => bail!("--alpha-sq must be finite and nonnegative, got {sq}"),
                    (None, None) => bail!("--input coherent needs --alpha or --alpha-sq"),
                };
                Ok(InputSpec::Coherent(alpha))
            }
            kind => {
                if self.alpha.is_some() || self.alpha_sq.is_some() {
                    bail!("--alpha/--alpha-sq only apply to --input coherent");
                }
                Ok(match kind {
                    InputKind::Vacuum => InputSpec::Vacuum,
                    InputKind::Photon => InputSpec::SinglePhoton,
                    // the joint fidelity is polarization independent, so any
                    // normalized qubit stands for the class
                    InputKind::Qubit => {
                        InputSpec::polarization_qubit(Complex64::ONE, Complex64::ZERO)?
                    }
                    InputKind::Coherent => unreachable!(),
                })
            }
        }
    }

    fn config_json(&self) -> serde_json::Value {
        json!({
            "input": self.input.label(),
            "alpha": self.alpha.map(|a| vec![a.re, a.im]),
            "alpha_sq": self.alpha_sq,
        })
    }
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Decimal digits in emitted numbers
    #[arg(long, default_value_t = 12)]
    precision: usize,
}

#[derive(Args)]
struct FidelityArgs {
    #[command(flatten)]
    input: InputOpts,
    /// Entanglement parameter, 0 <= q < 1
    #[arg(long)]
    q: f64,
    /// Gain factor
    #[arg(long, allow_hyphen_values = true)]
    gain: f64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    input: InputOpts,
    /// Entanglement parameter, 0 <= q < 1
    #[arg(long)]
    q: Option<f64>,
    /// Entanglement grid `lo:hi:step` (one row block per q)
    #[arg(long, value_parser = parse_grid, conflicts_with = "q", value_name = "LO:HI:STEP")]
    q_grid: Option<Grid>,
    /// Gain range `lo:hi`
    #[arg(
        long,
        value_parser = parse_range,
        default_value = "0:2",
        value_name = "LO:HI",
        allow_hyphen_values = true
    )]
    gain_range: (f64, f64),
    /// Samples across the gain range, endpoints included
    #[arg(long, default_value_t = 201)]
    steps: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Coherent,
    Qubit,
}

#[derive(Args)]
struct OptimalGainArgs {
    /// Input family to optimize for
    #[arg(long, value_enum)]
    family: Family,
    /// Intensity |alpha|^2 (coherent family)
    #[arg(long, value_name = "X")]
    alpha_sq: Option<f64>,
    /// Entanglement parameter, 0 <= q < 1
    #[arg(long)]
    q: Option<f64>,
    /// Entanglement grid `lo:hi:step`
    #[arg(long, value_parser = parse_grid, conflicts_with = "q", value_name = "LO:HI:STEP")]
    q_grid: Option<Grid>,
    /// Sweep the intensity at fixed q instead of sweeping q (coherent family)
    #[arg(long, value_parser = parse_grid, conflicts_with = "q_grid", value_name = "LO:HI:STEP")]
    alpha_sq_grid: Option<Grid>,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureId {
    #[value(name = "2a")]
    F2a,
    #[value(name = "2b")]
    F2b,
    #[value(name = "2c")]
    F2c,
    #[value(name = "3")]
    F3,
    #[value(name = "4")]
    F4,
    #[value(name = "5")]
    F5,
    #[value(name = "6")]
    F6,
    #[value(name = "7")]
    F7,
    #[value(name = "8")]
    F8,
}

impl FigureId {
    fn label(self) -> &'static str {
        match self {
            Self::F2a => "2a",
            Self::F2b => "2b",
            Self::F2c => "2c",
            Self::F3 => "3",
            Self::F4 => "4",
            Self::F5 => "5",
            Self::F6 => "6",
            Self::F7 => "7",
            Self::F8 => "8",
        }
    }
}

#[derive(Args)]
struct FigureArgs {
    /// Which figure's data to emit
    #[arg(value_enum)]
    id: FigureId,
    /// Samples across the gain range for curve figures
    #[arg(long, default_value_t = 201)]
    steps: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Oracle,
    Gradient,
    Normalization,
    Polarization,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Gradient => Suite::Gradient,
            SuiteArg::Normalization => Suite::Normalization,
            SuiteArg::Polarization => Suite::Polarization,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Truncation dimension for matrix-path checks
    #[arg(long, default_value_t = 80)]
    dim: usize,
    /// Points per axis for quadrature checks (two-mode integrals use half)
    #[arg(long, default_value_t = 48)]
    quad_points: usize,
    /// Seed for randomized draws (ChaCha8)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Fidelity(args) => cmd_fidelity(args),
        Command::Curve(args) => cmd_curve(args),
        Command::OptimalGain(args) => cmd_optimal_gain(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn formula_label(input: &InputSpec) -> &'static str {
    match input {
        InputSpec::Coherent(_) => {
            "coherent closed form (1-q^2)/W exp(-(1-q^2)(1-g)^2 |alpha|^2/W), W = 1-2qg+g^2"
        }
        InputSpec::Vacuum => "vacuum closed form (1-q^2)/W, W = 1-2qg+g^2",
        InputSpec::SinglePhoton => {
            "one-photon closed form (1-q^2)/W^3 ((g-q)^2 (1-qg)^2 + g^2 (1-q^2)^2)"
        }
        InputSpec::PolarizationQubit { .. } => {
            "joint closed form F0*F1 = (1-q^2)^2/W^4 ((g-q)^2 (1-qg)^2 + g^2 (1-q^2)^2)"
        }
    }
}

fn cmd_fidelity(args: FidelityArgs) -> Result<ExitCode> {
    let input = args.input.to_spec()?;
    let fidelity = fidelity_for(&input, args.q, args.gain)?;
    let precision = args.output.precision;
    let rendered = match args.output.format {
        Format::Csv => format!(
            "# formula: {}\n{fidelity:.precision$}\n",
            formula_label(&input)
        ),
        Format::Json => {
            let scale = 10f64.powi(precision as i32);
            let value = json!({
                "config": {
                    "command": "fidelity",
                    "input": args.input.config_json(),
                    "q": args.q,
                    "gain": args.gain,
                },
                "formula": formula_label(&input),
                "fidelity": (fidelity * scale).round() / scale,
            });
            let mut s = serde_json::to_string_pretty(&value)?;
            s.push('\n');
            s
        }
    };
    write_bytes(rendered.as_bytes(), args.output.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_curve(args: CurveArgs) -> Result<ExitCode> {
    let input = args.input.to_spec()?;
    let qs: Vec<f64> = match (args.q, &args.q_grid) {
        (Some(q), None) => vec![q],
        (None, Some(grid)) => grid.values(),
        (None, None) => bail!("curve needs --q or --q-grid"),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let sweeping = qs.len() > 1;
    let mut table = Table::new(if sweeping {
        vec!["q", "g", "F"]
    } else {
        vec!["g", "F"]
    });
    table.comment("cvteleport curve");
    table.comment(format!(
        "input = {}, gain = {}:{}, steps = {}",
        args.input.input.label(),
        args.gain_range.0,
        args.gain_range.1,
        args.steps
    ));
    if !sweeping {
        table.comment(format!("q = {}", qs[0]));
    }
    for &q in &qs {
        let curve = sample_curve(&input, q, args.gain_range, args.steps)?;
        for &(g, f) in curve.samples() {
            table.push_row(if sweeping { vec![q, g, f] } else { vec![g, f] });
        }
    }
    let config = json!({
        "command": "curve",
        "input": args.input.config_json(),
        "q": if sweeping { json!(qs) } else { json!(qs[0]) },
        "gain_range": [args.gain_range.0, args.gain_range.1],
        "steps": args.steps,
    });
    emit(
        &table,
        args.output.format,
        args.output.out.as_deref(),
        args.output.precision,
        config,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_optimal_gain(args: OptimalGainArgs) -> Result<ExitCode> {
    let mut config = json!({
        "command": "optimal-gain",
        "family": match args.family { Family::Coherent => "coherent", Family::Qubit => "qubit" },
    });
    let table = match args.family {
        Family::Qubit => {
            if args.alpha_sq.is_some() || args.alpha_sq_grid.is_some() {
                bail!("--alpha-sq/--alpha-sq-grid only apply to --family coherent");
            }
            let qs = q_values(args.q, &args.q_grid)?;
            config["q"] = json!(qs);
            improvement_rows(InputFamily::PhotonicQubit, &qs)?
        }
        Family::Coherent => {
            if let Some(grid) = &args.alpha_sq_grid {
                let q = args
                    .q
                    .ok_or_else(|| anyhow::anyhow!("--alpha-sq-grid needs a single --q"))?;
                if args.alpha_sq.is_some() {
                    bail!("--alpha-sq and --alpha-sq-grid are mutually exclusive");
                }
                config["q"] = json!(q);
                config["alpha_sq"] = json!(grid.values());
                let mut table = Table::new(vec![
                    "alpha_sq", "g_opt", "F_opt", "F_unit", "delta_F", "residual",
                ]);
                table.comment("cvteleport optimal-gain (intensity sweep)");
                table.comment(format!("family = coherent, q = {q}"));
                for alpha_sq in grid.values() {
                    let r = optimal_gain_coherent(q, alpha_sq)?;
                    table.push_row(vec![alpha_sq, r.g_opt, r.f_opt, r.f_unit, r.delta_f, r.residual]);
                }
                table
            } else {
                let alpha_sq = args
                    .alpha_sq
                    .ok_or_else(|| anyhow::anyhow!("--family coherent needs --alpha-sq"))?;
                let qs = q_values(args.q, &args.q_grid)?;
                config["q"] = json!(qs);
                config["alpha_sq"] = json!(alpha_sq);
                improvement_rows(InputFamily::CoherentFixedAmp { alpha_sq }, &qs)?
            }
        }
    };
    emit(
        &table,
        args.output.format,
        args.output.out.as_deref(),
        args.output.precision,
        config,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn q_values(q: Option<f64>, grid: &Option<Grid>) -> Result<Vec<f64>> {
    match (q, grid) {
        (Some(q), None) => Ok(vec![q]),
        (None, Some(grid)) => Ok(grid.values()),
        (None, None) => bail!("need --q or --q-grid"),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    }
}

fn improvement_rows(family: InputFamily, qs: &[f64]) -> Result<Table> {
    let rows = improvement_table(family, qs)?;
    let mut table = Table::new(vec!["q", "g_opt", "F_opt", "F_unit", "delta_F", "residual"]);
    table.comment("cvteleport optimal-gain");
    table.comment(match family {
        InputFamily::CoherentFixedAmp { alpha_sq } => {
            format!("family = coherent, alpha_sq = {alpha_sq}")
        }
        InputFamily::PhotonicQubit => "family = qubit".to_string(),
    });
    for r in rows {
        table.push_row(vec![r.q, r.g_opt, r.f_opt, r.f_unit, r.delta_f, r.residual]);
    }
    Ok(table)
}

const FIG2_Q_SET: [f64; 5] = [0.99, 0.75, 0.5, 0.25, 0.0];
const FIG3_INTENSITIES: [f64; 4] = [0.0, 1.0, 10.0, 100.0];

fn fine_q_grid() -> Vec<f64> {
    (0..100).map(|i| i as f64 / 100.0).collect()
}

fn cmd_figure(args: FigureArgs) -> Result<ExitCode> {
    let steps = args.steps;
    let mut config = json!({
        "command": "figure",
        "id": args.id.label(),
    });
    let table = match args.id {
        FigureId::F2a | FigureId::F2b | FigureId::F2c => {
            let (input, label) = match args.id {
                FigureId::F2a => (InputSpec::Coherent(Complex64::ONE), "coherent |alpha| = 1"),
                FigureId::F2b => (InputSpec::Vacuum, "vacuum"),
                _ => (InputSpec::SinglePhoton, "one photon"),
            };
            config["q"] = json!(FIG2_Q_SET);
            config["steps"] = json!(steps);
            let mut table = Table::new(vec!["q", "g", "F"]);
            table.comment(format!("cvteleport figure {}", args.id.label()));
            table.comment(format!(
                "fidelity vs gain for {label}; one block per entanglement value"
            ));
            for q in FIG2_Q_SET {
                let curve = sample_curve(&input, q, (0.0, 2.0), steps)?;
                for &(g, f) in curve.samples() {
                    table.push_row(vec![q, g, f]);
                }
            }
            table
        }
        FigureId::F3 => {
            config["q"] = json!(0.5);
            config["alpha_sq"] = json!(FIG3_INTENSITIES);
            config["steps"] = json!(steps);
            let mut table = Table::new(vec!["alpha_sq", "g", "F"]);
            table.comment("cvteleport figure 3");
            table.comment("coherent fidelity vs gain at q = 0.5; one block per intensity");
            for alpha_sq in FIG3_INTENSITIES {
                let input = InputSpec::Coherent(Complex64::new(alpha_sq.sqrt(), 0.0));
                let curve = sample_curve(&input, 0.5, (0.0, 2.0), steps)?;
                for &(g, f) in curve.samples() {
                    table.push_row(vec![alpha_sq, g, f]);
                }
            }
            table
        }
        FigureId::F4 => {
            let grid = Grid {
                lo: 0.0,
                hi: 12.0,
                step: 0.05,
            };
            config["q"] = json!(0.5);
            config["alpha_sq"] = json!({"lo": grid.lo, "hi": grid.hi, "step": grid.step});
            let mut table = Table::new(vec!["alpha_sq", "g_opt"]);
            table.comment("cvteleport figure 4");
            table.comment("optimal gain vs input intensity at q = 0.5");
            for alpha_sq in grid.values() {
                let r = optimal_gain_coherent(0.5, alpha_sq)?;
                table.push_row(vec![alpha_sq, r.g_opt]);
            }
            table
        }
        FigureId::F5 => {
            let qs = fine_q_grid();
            config["alpha_sq"] = json!(1.0);
            config["q"] = json!({"lo": 0.0, "hi": 0.99, "step": 0.01});
            let rows =
                improvement_table(InputFamily::CoherentFixedAmp { alpha_sq: 1.0 }, &qs)?;
            let mut table = Table::new(vec!["q", "g_opt", "F_opt", "F_unit", "delta_F"]);
            table.comment("cvteleport figure 5");
            table.comment("optimized vs unit-gain coherent fidelity, |alpha|^2 = 1");
            for r in rows {
                table.push_row(vec![r.q, r.g_opt, r.f_opt, r.f_unit, r.delta_f]);
            }
            table
        }
        FigureId::F6 => {
            config["q"] = json!(0.5);
            config["steps"] = json!(steps);
            let mut table = Table::new(vec!["g", "F_vacuum", "F_single_photon", "F_joint"]);
            table.comment("cvteleport figure 6");
            table.comment("vacuum, one-photon, and joint fidelities vs gain at q = 0.5");
            let dg = 2.0 / (steps - 1).max(1) as f64;
            for i in 0..steps {
                let g = if i == steps - 1 { 2.0 } else { i as f64 * dg };
                table.push_row(vec![
                    g,
                    fidelity_vacuum(0.5, g)?,
                    fidelity_single_photon(0.5, g)?,
                    fidelity_joint(0.5, g)?,
                ]);
            }
            table
        }
        FigureId::F7 => {
            let qs = fine_q_grid();
            config["q"] = json!({"lo": 0.0, "hi": 0.99, "step": 0.01});
            let qubit_rows = improvement_table(InputFamily::PhotonicQubit, &qs)?;
            let coherent_rows =
                improvement_table(InputFamily::CoherentFixedAmp { alpha_sq: 1.0 }, &qs)?;
            let mut table = Table::new(vec!["q", "g_opt_qubit", "g_opt_coherent"]);
            table.comment("cvteleport figure 7");
            table.comment("optimal gain vs entanglement: qubit and coherent |alpha|^2 = 1");
            for (qr, cr) in qubit_rows.iter().zip(&coherent_rows) {
                table.push_row(vec![qr.q, qr.g_opt, cr.g_opt]);
            }
            table
        }
        FigureId::F8 => {
            let qs = fine_q_grid();
            config["q"] = json!({"lo": 0.0, "hi": 0.99, "step": 0.01});
            let rows = improvement_table(InputFamily::PhotonicQubit, &qs)?;
            let mut table = Table::new(vec!["q", "g_opt", "F_opt", "F_unit", "delta_F"]);
            table.comment("cvteleport figure 8");
            table.comment("optimized vs unit-gain joint qubit fidelity");
            for r in rows {
                table.push_row(vec![r.q, r.g_opt, r.f_opt, r.f_unit, r.delta_f]);
            }
            table
        }
    };
    emit(
        &table,
        args.output.format,
        args.output.out.as_deref(),
        args.output.precision,
        config,
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    if args.quad_points < 8 {
        bail!("--quad-points must be at least 8");
    }
    let cfg = VerifyConfig {
        dim: args.dim,
        quad_points: args.quad_points,
        two_mode_points: (args.quad_points / 2).max(8),
        seed: args.seed,
    };
    let report = run_suite(args.suite.into(), &cfg)?;
    let mut rendered = String::new();
    for check in &report.checks {
        rendered.push_str(&format!(
            "{}: deviation {:.3e} (tolerance {:.1e})  {}\n",
            check.name,
            check.deviation,
            check.tolerance,
            if check.passed() { "PASS" } else { "FAIL" }
        ));
    }
    for info in &report.infos {
        rendered.push_str(info);
        rendered.push('\n');
    }
    let passed = report.checks.iter().filter(|c| c.passed()).count();
    rendered.push_str(&format!(
        "verify: {passed}/{} checks passed\n",
        report.checks.len()
    ));
    write_bytes(rendered.as_bytes(), args.out.as_deref())?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// An inclusive numeric grid `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Grid {
    lo: f64,
    hi: f64,
    step: f64,
}

impl Grid {
    fn values(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1.0 + 1e-9).floor() as usize;
        (0..count)
            .map(|i| {
                let x = self.lo + i as f64 * self.step;
                if x > self.hi {
                    self.hi
                } else {
                    x
                }
            })
            .collect()
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected LO:HI:STEP".into());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !lo.is_finite() || !hi.is_finite() || !step.is_finite() {
        return Err("grid bounds must be finite".into());
    }
    if step <= 0.0 || hi < lo {
        return Err("need hi >= lo and step > 0".into());
    }
    if (hi - lo) / step > 1e6 {
        return Err("grid has more than a million points".into());
    }
    Ok(Grid { lo, hi, step })
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err("expected LO:HI".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e: std::num::ParseFloatError| e.to_string())?;
    let hi: f64 = parts[1].trim().parse().map_err(|e: std::num::ParseFloatError| e.to_string())?;
    Ok((lo, hi))
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.len() {
        1 => {
            let re: f64 = parts[0].trim().parse().map_err(|_| "expected RE[,IM]".to_string())?;
            Ok(Complex64::new(re, 0.0))
        }
        2 => {
            let re: f64 = parts[0].trim().parse().map_err(|_| "expected RE[,IM]".to_string())?;
            let im: f64 = parts[1].trim().parse().map_err(|_| "expected RE[,IM]".to_string())?;
            Ok(Complex64::new(re, im))
        }
        _ => Err("expected RE[,IM]".to_string()),
    }
}
