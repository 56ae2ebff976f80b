use std::path::PathBuf;
use std::process::ExitCode;

use angle_spectrum::{run_spectrum, GroupSource, RunConfig, Viewport};
use angle_spectrum_core::{DegreeBound, Orientation, SpectrumBounds};
use clap::{ArgGroup, Parser};

/// Truncated angle spectrum of a hyperbolic surface H²/Γ.
///
/// Exit status: 0 on success, 1 on bad input or a failed computation,
/// 2 when a rational angle breaks the totient bound.
#[derive(Debug, Parser)]
#[command(name = "angle-spectrum", version)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "group_file"])))]
struct Args {
    /// Named generator set: modular or symmetric-schottky.
    #[arg(long)]
    preset: Option<String>,
    /// Generator file, one `a b c d` row per generator.
    #[arg(long, value_name = "PATH")]
    group_file: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    max_word_len: usize,
    #[arg(long, default_value_t = 50.0)]
    max_trace: f64,
    /// Word length of the conjugators used to reach other lifts.
    #[arg(long, default_value_t = 4)]
    conj_len: usize,
    /// Largest denominator tried when recognising θ/π.
    #[arg(long, default_value_t = 200)]
    qmax: u64,
    #[arg(long, default_value_t = 1e-9)]
    eps_rat: f64,
    #[arg(long, default_value_t = 1e-9)]
    eps_cluster: f64,
    /// Field degree bound d in φ(q) ≤ 2d. Presets carry their own.
    #[arg(long)]
    degree_bound: Option<u64>,
    /// Keep γ and γ⁻¹ as separate classes.
    #[arg(long)]
    oriented: bool,
    /// JSON report path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    view_x_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    view_x_max: f64,
    #[arg(long, default_value_t = 5.0)]
    view_y_max: f64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
}

fn config(args: Args) -> Result<RunConfig, String> {
    let source = match (args.preset, args.group_file) {
        (Some(p), None) => GroupSource::Preset(p),
        (None, Some(f)) => GroupSource::File(f),
        _ => return Err("exactly one of --preset and --group-file is required".into()),
    };
    let degree_bound = match args.degree_bound {
        Some(d) => Some(DegreeBound::new(d).ok_or("--degree-bound must be positive")?),
        None => None,
    };
    if !(args.view_x_min < args.view_x_max) || !(args.view_y_max > 0.0) {
        return Err("empty viewport".into());
    }
    Ok(RunConfig {
        source,
        bounds: SpectrumBounds {
            max_word_len: args.max_word_len,
            max_trace: args.max_trace,
            conj_len: args.conj_len,
            qmax: args.qmax,
            eps_rat: args.eps_rat,
            eps_cluster: args.eps_cluster,
            degree_bound,
            orientation: if args.oriented {
                Orientation::Oriented
            } else {
                Orientation::Unoriented
            },
        },
        out: args.out,
        csv: args.csv,
        svg: args.svg,
        threads: args.threads,
        viewport: Viewport {
            x_min: args.view_x_min,
            x_max: args.view_x_max,
            y_max: args.view_y_max,
            ..Viewport::default()
        },
    })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match config(args) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match run_spectrum(&cfg) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", outcome.summary);
            let code = outcome.exit_code();
            if code == 2 {
                eprintln!("error: a rational angle violates φ(q) ≤ 2d; check tolerances and the degree bound");
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
