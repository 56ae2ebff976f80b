//! A complete spectrum run: load the group, compute, write the artifacts.

use std::fmt::Write as _;
use std::path::PathBuf;

use angle_spectrum_core::{
    build_spectrum, preset, GeneratorSet, GroupError, SpectrumBounds, SpectrumError, SpectrumReport, Tolerances,
};
use thiserror::Error;

use crate::groupfile::{parse_group_file, GroupFileError};
use crate::report::{records_csv, report_json};
use crate::svg::{pi_label, render_svg, SvgError, Viewport};

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSource {
    Preset(String),
    File(PathBuf),
}

impl GroupSource {
    pub fn describe(&self) -> String {
        match self {
            GroupSource::Preset(name) => format!("preset:{name}"),
            GroupSource::File(p) => format!("file:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: GroupSource,
    pub bounds: SpectrumBounds,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    /// `None` uses the available parallelism.
    pub threads: Option<usize>,
    pub viewport: Viewport,
}

impl RunConfig {
    pub fn new(source: GroupSource) -> Self {
        RunConfig {
            source,
            bounds: SpectrumBounds::default(),
            out: None,
            csv: None,
            svg: None,
            threads: None,
            viewport: Viewport::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    GroupFile(#[from] GroupFileError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Svg(#[from] SvgError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
    #[error("{0}")]
    Config(String),
}

pub struct RunOutcome {
    pub group: GeneratorSet,
    pub report: SpectrumReport,
    pub json: String,
    pub summary: String,
    pub warnings: Vec<String>,
}

impl RunOutcome {
    /// 0, or 2 when some rational angle breaks the totient bound.
    pub fn exit_code(&self) -> i32 {
        if self.report.has_totient_violation() {
            2
        } else {
            0
        }
    }
}

pub fn load_group(source: &GroupSource) -> Result<GeneratorSet, CliError> {
    Ok(match source {
        GroupSource::Preset(name) => preset(name)?,
        GroupSource::File(path) => parse_group_file(path)?,
    })
}

/// Angle, multiplicity and the rational verdict, one line per distinct angle.
pub fn summary_table(report: &SpectrumReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{} classes, {} intersection records, {} distinct angles",
        report.classes.len(),
        report.records.len(),
        report.angle_set.len()
    )
    .unwrap();
    writeln!(
        s,
        "{:>20}  {:>12}  {:>8}  {:>10}",
        "theta", "multiplicity", "p/q", "totient"
    )
    .unwrap();
    for c in &report.angle_set {
        let hit = report
            .rational_hits
            .iter()
            .find(|h| (h.theta - c.theta).abs() <= report.bounds.eps_rat.max(1e-15));
        let (frac, verdict) = match hit {
            Some(h) => (
                pi_label(h.p, h.q),
                format!("{} {}≤{}", if h.ok { "ok" } else { "VIOLATION" }, h.phi_q, h.bound),
            ),
            None => ("-".into(), "-".into()),
        };
        writeln!(
            s,
            "{:>20.16}  {:>12}  {:>8}  {:>10}",
            c.theta, c.multiplicity, frac, verdict
        )
        .unwrap();
    }
    s
}

fn write(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })
}

/// Runs the spectrum on a dedicated pool and writes the requested outputs.
pub fn run_spectrum(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let group = load_group(&config.source)?;
    let mut warnings = Vec::new();
    if let GroupSource::File(_) = config.source {
        warnings.push("group file carries no ping-pong certificate; discreteness is assumed, not checked".into());
    }
    if config.threads == Some(0) {
        return Err(CliError::Config("thread count must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()?;
    let tol = Tolerances::default();
    let report = pool.install(|| build_spectrum(&group, &config.bounds, &tol))?;
    let json = report_json(&report, &group, &config.source.describe());
    if let Some(p) = &config.out {
        write(p, &json)?;
    }
    if let Some(p) = &config.csv {
        write(p, &records_csv(&report, &group))?;
    }
    if let Some(p) = &config.svg {
        render_svg(&report, &report.classes, p, &config.viewport)?;
    }
    let summary = summary_table(&report);
    Ok(RunOutcome {
        group,
        report,
        json,
        summary,
        warnings,
    })
}
