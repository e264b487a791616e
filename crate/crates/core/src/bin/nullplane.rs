use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use nullplane::momentum::PositionChoice;
use nullplane::report::{expand, run, RepairMode, Source, Suite};
use nullplane::wavepacket::{
    evolution_table, uncertainty_report, write_csv, GaussianParams, QuadratureGrid, WavePacket, EXPECTATION_TOL,
};

#[derive(Parser)]
#[command(name = "nullplane", version, about = "Null-plane quantum Poincare algebra: exact checks and packet numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify {
        /// jacobi, hopf, casimir, appendix, bialgebra, realization, subalgebras or all
        /// (comma-separated lists are accepted).
        suite: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "report")]
        repair: RepairMode,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<String>,
        /// Print the JSON report instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form of an expression, e.g. "[F1,F2]", "Delta(K3)", "antipode(P+)".
    Expand {
        expr: String,
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
    /// Evolve a Gaussian packet freely and write the expectation table as CSV.
    Evolve {
        #[command(flatten)]
        packet: PacketArgs,
        #[arg(long, default_value = "sinh")]
        f: String,
        #[arg(long = "tau-max", default_value = "10", value_parser = number)]
        tau_max: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Uncertainty product of Q1 and P1 over a sweep of z.
    Uncertainty {
        #[command(flatten)]
        packet: PacketArgs,
        /// sinh, tanh or both
        #[arg(long, default_value = "both")]
        f: String,
        /// Comma-separated z values.
        #[arg(long, default_value = "0,1/20,1/10,1/5,3/10,1/2")]
        zs: String,
        #[arg(long, default_value_t = EXPECTATION_TOL, value_parser = number)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct AlgebraArgs {
    /// Bundled name or path to an .algdef file.
    #[arg(long, default_value = "poincare-quantum")]
    algebra: String,
    /// Truncation order in z.
    #[arg(long = "K", default_value_t = 6)]
    k: usize,
}

#[derive(Args)]
struct PacketArgs {
    #[arg(long, default_value = "1/10", value_parser = number)]
    z: f64,
    #[arg(long, default_value = "1", value_parser = number)]
    m: f64,
    /// Quadrature nodes along p+, p1, p2.
    #[arg(long, default_value = "32,40,40")]
    grid: String,
    #[arg(long, value_parser = number, allow_negative_numbers = true)]
    pmin: Option<f64>,
    #[arg(long, value_parser = number, allow_negative_numbers = true)]
    pmax: Option<f64>,
    /// Packet centre in (p+, p1, p2).
    #[arg(long, default_value = "5,1/2,0", allow_hyphen_values = true)]
    mean: String,
    /// Momentum spreads in (p+, p1, p2).
    #[arg(long, default_value = "1/2,1,1")]
    width: String,
}

/// Accepts decimals and rationals such as `1/10`.
fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (f64, f64) = (n.trim().parse().map_err(|_| bad(s))?, d.trim().parse().map_err(|_| bad(s))?);
            if d == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            n / d
        }
        None => s.parse().map_err(|_| bad(s))?,
    };
    Ok(parsed)
}

fn bad(s: &str) -> String {
    format!("'{s}' is not a number")
}

fn triple<T>(s: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<[T; 3], String> {
    let parts: Vec<T> = s.split(',').map(parse).collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| format!("expected three comma-separated values in '{s}'"))
}

fn choices(f: &str) -> Result<Vec<PositionChoice>, String> {
    match f {
        "both" => Ok(vec![PositionChoice::SinhOverZ, PositionChoice::TanhOverZ]),
        other => PositionChoice::from_name(other)
            .map(|c| vec![c])
            .ok_or_else(|| format!("unknown position choice '{other}' (expected sinh or tanh)")),
    }
}

impl PacketArgs {
    fn build(&self) -> Result<(Arc<QuadratureGrid>, GaussianParams), String> {
        let params = GaussianParams {
            mean: triple(&self.mean, number)?,
            width: triple(&self.width, number)?,
            offset: [0.0, 0.0],
            helicity: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        };
        let n = triple(&self.grid, |s| s.trim().parse::<usize>().map_err(|_| bad(s)))?;
        let span = 9.0;
        let lo = self.pmin.unwrap_or(params.mean[0] - span * params.width[0]);
        let hi = self.pmax.unwrap_or(params.mean[0] + span * params.width[0]);
        let grid = params.grid_with_plus((lo, hi), span, n).map_err(|e| e.to_string())?;
        Ok((Arc::new(grid), params))
    }
}

fn write_out(path: &Option<String>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{p}: {e}")),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    // exit code 2 is reserved for repaired reports
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Verify { suite, algebra, repair, out, json } => {
            let suites = Suite::parse_list(&suite).map_err(|e| e.to_string())?;
            let source = Source::resolve(&algebra.algebra).map_err(|e| e.to_string())?;
            let result = run(&source, &suites, algebra.k, repair, suite == "all").map_err(|e| e.to_string())?;
            let report = &result.report;
            write_out(&out, &report.to_json())?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            for (s, secs) in &result.timing {
                eprintln!("{s}: {secs:.2} s");
            }
            Ok(report.exit_code() as u8)
        }
        Command::Expand { expr, algebra } => {
            let source = Source::resolve(&algebra.algebra).map_err(|e| e.to_string())?;
            let inst = source.presentation.instantiate(algebra.k).map_err(|e| e.to_string())?;
            println!("{}", expand(&inst, &expr).map_err(|e| e.to_string())?);
            Ok(0)
        }
        Command::Evolve { packet, f, tau_max, steps, out } => {
            let choice = PositionChoice::from_name(&f).ok_or_else(|| format!("unknown position choice '{f}'"))?;
            let (grid, params) = packet.build()?;
            let psi = WavePacket::gaussian(grid, &params, packet.z).map_err(|e| e.to_string())?;
            let taus: Vec<f64> = (0..=steps).map(|k| tau_max * k as f64 / steps.max(1) as f64).collect();
            let rows = evolution_table(&psi, &choice, packet.z, packet.m, &taus).map_err(|e| e.to_string())?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
            let text = String::from_utf8(buf).map_err(|e| e.to_string())?;
            match out {
                Some(_) => write_out(&out, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Uncertainty { packet, f, zs, tol, out } => {
            let zs: Vec<f64> = zs.split(',').map(number).collect::<Result<_, _>>()?;
            let (grid, params) = packet.build()?;
            let mut rows = Vec::new();
            for choice in choices(&f)? {
                for &z in &zs {
                    let psi = WavePacket::gaussian(grid.clone(), &params, z).map_err(|e| e.to_string())?;
                    rows.push(uncertainty_report(&choice, &psi, z, packet.m, tol).map_err(|e| e.to_string())?);
                }
            }
            println!(
                "{:<6} {:>6} {:>12} {:>12} {:>12} {:>14} {:>12}  ok",
                "f", "z", "dQ1", "dP1", "product", "robertson", "var. read."
            );
            for r in &rows {
                println!(
                    "{:<6} {:>6.3} {:>12.8} {:>12.8} {:>12.8} {:>14.8} {:>12.8}  {}",
                    r.choice, r.z, r.dq, r.dp, r.product, r.robertson, r.variance_reading, r.satisfied
                );
            }
            if out.is_some() {
                let mut buf = Vec::new();
                write_csv(&rows, &mut buf).map_err(|e| e.to_string())?;
                write_out(&out, &String::from_utf8(buf).map_err(|e| e.to_string())?)?;
            }
            Ok(if rows.iter().all(|r| r.satisfied) { 0 } else { 1 })
        }
    }
}
