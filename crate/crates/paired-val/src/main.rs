//! Thin command-line front end over the library pipeline.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use paired_val::{
    build_report, calibrate, counts_from_dataset, counts_from_fixture, curve_to_csv, curves_to_svg,
    parse_counts_csv, report_to_csv, report_to_latex, report_to_markdown, reproduce_paper,
    validate_dataset, write_counts_csv, Arm, ConfidenceLabel, CorrelationMode, Error, PaperFixture,
    SimScenario, StudyDataset, TestConfig, DEFAULT_MIN_DICE,
};

#[derive(Parser)]
#[command(
    name = "paired-val",
    about = "Tooth-level validation of paired reader studies: tallies, marginal tests, LROC/AUC statistics and Monte Carlo calibration",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct StatFlags {
    /// Type-I error threshold of the marginal tests.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Type-II error threshold used to judge power.
    #[arg(long = "beta-error", default_value_t = 0.10)]
    beta_error: f64,
    /// Confidence level of the reported intervals.
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,
    /// Substitute r = (r_P + r_N)/2 for the embedded-table lookup in the
    /// AUC-difference test (sensitivity analysis).
    #[arg(long = "direct-r", default_value_t = false)]
    direct_r: bool,
}

impl StatFlags {
    fn config(&self) -> Result<TestConfig, Error> {
        TestConfig::new(self.alpha, self.beta_error, self.confidence)
    }

    fn mode(&self) -> CorrelationMode {
        if self.direct_r {
            CorrelationMode::DirectAverage
        } else {
            CorrelationMode::Table
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a dataset and write decision-matrix + matched-sample counts as CSV.
    Tally {
        /// Dataset JSON document.
        dataset: PathBuf,
        /// Confidence threshold of the operating point.
        #[arg(long, default_value_t = 50)]
        threshold: u8,
        /// Dice threshold for instance correspondence.
        #[arg(long = "min-dice", default_value_t = DEFAULT_MIN_DICE)]
        min_dice: f64,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the statistical battery from a dataset, a counts CSV, or the embedded fixture.
    Report {
        /// Dataset JSON or counts CSV (omit with --fixture).
        input: Option<PathBuf>,
        /// Use an embedded fixture instead of an input file (`paper`).
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, default_value_t = 50)]
        threshold: u8,
        #[arg(long = "min-dice", default_value_t = DEFAULT_MIN_DICE)]
        min_dice: f64,
        #[command(flatten)]
        stats: StatFlags,
        /// Directory for report.md and report.csv (stdout when omitted).
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
        /// Emit LaTeX tables instead of Markdown.
        #[arg(long = "emit-latex", default_value_t = false)]
        emit_latex: bool,
    },
    /// Export per-anomaly LROC curves as CSV and SVG.
    Roc {
        dataset: PathBuf,
        #[arg(long = "min-dice", default_value_t = DEFAULT_MIN_DICE)]
        min_dice: f64,
        /// Output directory for the curve files.
        #[arg(long = "out-dir", default_value = "roc")]
        out_dir: PathBuf,
    },
    /// Run a Monte Carlo calibration scenario (TOML or JSON).
    Calibrate {
        scenario: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output JSON path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        stats: StatFlags,
    },
    /// Regenerate every published results table from the embedded counts and
    /// diff the values against the printed ones.
    ReproducePaper {
        #[command(flatten)]
        stats: StatFlags,
        /// Emit LaTeX tables instead of Markdown.
        #[arg(long = "emit-latex", default_value_t = false)]
        emit_latex: bool,
        /// Directory for the regenerated tables (stdout when omitted).
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
    },
}

fn write_or_print(path: Option<&Path>, name: &str, content: &str) -> Result<(), Error> {
    match path {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let file = dir.join(name);
            atomic_write(&file, content)?;
            eprintln!("wrote {}", file.display());
            Ok(())
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn atomic_write(path: &Path, content: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn load_dataset(path: &Path) -> Result<StudyDataset, Error> {
    let dataset =
        StudyDataset::load(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    let violations = validate_dataset(&dataset);
    if !violations.is_empty() {
        let listing: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(Error::Schema(format!(
            "{}: {} invariant violation(s)\n{}",
            path.display(),
            violations.len(),
            listing.join("\n")
        )));
    }
    Ok(dataset)
}

fn threshold_label(threshold: u8) -> Result<ConfidenceLabel, Error> {
    let label = ConfidenceLabel::new(threshold)?;
    if label == ConfidenceLabel::ZERO {
        return Err(Error::Domain("threshold must be one of 10..100".into()));
    }
    Ok(label)
}

fn run() -> Result<ExitCode, Error> {
    match Cli::parse().command {
        Command::Tally {
            dataset,
            threshold,
            min_dice,
            out,
        } => {
            let ds = load_dataset(&dataset)?;
            let (counts, warnings) =
                counts_from_dataset(&ds, threshold_label(threshold)?, min_dice)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let csv = write_counts_csv(&counts);
            match out {
                Some(path) => {
                    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir)?;
                    }
                    atomic_write(&path, &csv)?;
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            input,
            fixture,
            threshold,
            min_dice,
            stats,
            out_dir,
            emit_latex,
        } => {
            let cfg = stats.config()?;
            let (counts, warnings) = match (&fixture, &input) {
                (Some(name), _) if name == "paper" => {
                    (counts_from_fixture(&PaperFixture::embedded()), vec![])
                }
                (Some(name), _) => {
                    return Err(Error::Schema(format!(
                        "unknown fixture `{name}` (expected `paper`)"
                    )))
                }
                (None, Some(path)) if path.extension().is_some_and(|e| e == "csv") => {
                    (parse_counts_csv(&std::fs::read_to_string(path)?)?, vec![])
                }
                (None, Some(path)) => {
                    let ds = load_dataset(path)?;
                    counts_from_dataset(&ds, threshold_label(threshold)?, min_dice)?
                }
                (None, None) => {
                    return Err(Error::Schema(
                        "report needs an input file or --fixture paper".into(),
                    ))
                }
            };
            let mut report = build_report(&counts, &cfg, stats.mode())?;
            report.warnings.extend(warnings);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let rendered = if emit_latex {
                report_to_latex(&report)
            } else {
                report_to_markdown(&report)
            };
            let name = if emit_latex {
                "report.tex"
            } else {
                "report.md"
            };
            write_or_print(out_dir.as_deref(), name, &rendered)?;
            if let Some(dir) = &out_dir {
                atomic_write(&dir.join("report.csv"), &report_to_csv(&report))?;
                eprintln!("wrote {}", dir.join("report.csv").display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Roc {
            dataset,
            min_dice,
            out_dir,
        } => {
            let ds = load_dataset(&dataset)?;
            std::fs::create_dir_all(&out_dir)?;
            let mut written = 0;
            for anomaly in paired_val::AnomalyType::ALL {
                let mut curves = Vec::new();
                for arm in [Arm::Control, Arm::Study] {
                    match paired_val::build_lroc(&ds, arm, anomaly, min_dice) {
                        Ok(curve) => curves.push(curve),
                        Err(Error::UndefinedEndpoint(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
                if curves.is_empty() {
                    eprintln!("warning: {anomaly}: no defined operating points; skipped");
                    continue;
                }
                for curve in &curves {
                    let stem = format!("{}_{}", anomaly.key(), curve.arm);
                    atomic_write(&out_dir.join(format!("{stem}.csv")), &curve_to_csv(curve))?;
                }
                let refs: Vec<&paired_val::LrocCurve> = curves.iter().collect();
                atomic_write(
                    &out_dir.join(format!("{}.svg", anomaly.key())),
                    &curves_to_svg(&refs),
                )?;
                written += 1;
            }
            eprintln!(
                "wrote curves for {written} anomaly type(s) under {}",
                out_dir.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Calibrate {
            scenario,
            seed,
            out,
            stats,
        } => {
            let cfg = stats.config()?;
            let text = std::fs::read_to_string(&scenario)
                .map_err(|e| Error::Schema(format!("{}: {e}", scenario.display())))?;
            let mut sc = if scenario.extension().is_some_and(|e| e == "json") {
                SimScenario::from_json_str(&text)
            } else {
                SimScenario::from_toml_str(&text)
            }
            .map_err(|e| Error::Schema(format!("{}: {e}", scenario.display())))?;
            if let Some(seed) = seed {
                sc.seed = seed;
            }
            let summary = calibrate(&sc, &cfg)?;
            let json = serde_json::to_string_pretty(&summary)?;
            match out {
                Some(path) => {
                    atomic_write(&path, &json)?;
                    eprintln!("wrote {}", path.display());
                }
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproducePaper {
            stats,
            emit_latex,
            out_dir,
        } => {
            let cfg = stats.config()?;
            let rep = reproduce_paper(&cfg, stats.mode())?;
            let rendered = if emit_latex {
                report_to_latex(&rep.report)
            } else {
                report_to_markdown(&rep.report)
            };
            let name = if emit_latex {
                "reproduction.tex"
            } else {
                "reproduction.md"
            };
            write_or_print(out_dir.as_deref(), name, &rendered)?;
            if rep.mismatches.is_empty() {
                eprintln!("all regenerated values match the printed tables");
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "{} cell(s) deviate from the printed tables:",
                    rep.mismatches.len()
                );
                for m in &rep.mismatches {
                    eprintln!("  {m}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e @ (Error::Schema(_) | Error::Json(_) | Error::Toml(_) | Error::Io(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
