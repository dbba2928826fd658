//! Report assembly and rendering: ingestion of raw datasets or pre-tallied
//! counts, the full results battery in the published table layout
//! (Markdown, CSV, LaTeX), and the one-shot reproduction diff against the
//! embedded fixture.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fixture::{
    PaperFixture, PrintedP, PRINTED_AUC, PRINTED_AUC_AVERAGE, PRINTED_AUC_DIFF,
    PRINTED_AUC_DIFF_AVERAGE_CI, PRINTED_ENDPOINT, PRINTED_ENDPOINT_AVERAGE, PRINTED_STATS_SENS,
    PRINTED_STATS_SPEC,
};
use crate::lroc::{
    auc_stats, build_lroc, compare_aucs, AucComparison, AucStats, CorrelationMode, LrocCurve,
};
use crate::matching::{matched_samples, tally, DecisionMatrix, Endpoint, MatchedSampleTable};
use crate::model::{AnomalyType, Arm, ConfidenceLabel, StudyDataset};
use crate::stats::{
    binomial_test, endpoint_table, mcnemar_test, BinomialTestResult, EndpointTable, McNemarResult,
    TestConfig,
};

/// Everything known about one anomaly type at one operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct AnomalyCounts {
    pub anomaly: AnomalyType,
    pub control: DecisionMatrix,
    pub study: DecisionMatrix,
    pub mst_sens: MatchedSampleTable,
    pub mst_spec: MatchedSampleTable,
    /// LROC areas (control, study) when known: computed from curves for
    /// dataset input, or the published values in fixture mode.
    pub auc: Option<(f64, f64)>,
    /// The curves themselves when built from a dataset.
    pub curves: Option<(LrocCurve, LrocCurve)>,
}

/// Tally a dataset into per-anomaly counts; anomaly types whose endpoints
/// are undefined (no positives or no negatives) are skipped with a warning.
pub fn counts_from_dataset(
    dataset: &StudyDataset,
    threshold: ConfidenceLabel,
    min_dice: f64,
) -> Result<(Vec<AnomalyCounts>, Vec<String>)> {
    let mut out = Vec::new();
    let mut warnings = Vec::new();
    for anomaly in AnomalyType::ALL {
        let control = tally(dataset, Arm::Control, anomaly, threshold, min_dice)?;
        let study = tally(dataset, Arm::Study, anomaly, threshold, min_dice)?;
        if control.positives() == 0 || control.negatives() == 0 {
            warnings.push(format!(
                "{anomaly}: no {} teeth at threshold {threshold}; row omitted",
                if control.positives() == 0 {
                    "ground-truth-positive"
                } else {
                    "ground-truth-negative"
                }
            ));
            continue;
        }
        let mst_sens =
            matched_samples(dataset, anomaly, Endpoint::Sensitivity, threshold, min_dice)?;
        let mst_spec =
            matched_samples(dataset, anomaly, Endpoint::Specificity, threshold, min_dice)?;
        let curve_c = build_lroc(dataset, Arm::Control, anomaly, min_dice)?;
        let curve_s = build_lroc(dataset, Arm::Study, anomaly, min_dice)?;
        out.push(AnomalyCounts {
            anomaly,
            control,
            study,
            mst_sens,
            mst_spec,
            auc: Some((curve_c.auc, curve_s.auc)),
            curves: Some((curve_c, curve_s)),
        });
    }
    Ok((out, warnings))
}

/// The embedded fixture as per-anomaly counts (published AUC values, no
/// curves: the per-threshold counts behind the figure were not published).
pub fn counts_from_fixture(fixture: &PaperFixture) -> Vec<AnomalyCounts> {
    fixture
        .anomalies
        .iter()
        .map(|f| AnomalyCounts {
            anomaly: f.anomaly,
            control: f.control,
            study: f.study,
            mst_sens: f.mst_sens,
            mst_spec: f.mst_spec,
            auc: Some((f.auc_control, f.auc_study)),
            curves: None,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Counts CSV
// ---------------------------------------------------------------------------

pub const COUNTS_CSV_HEADER: &str =
    "anomaly,arm,tp,fp,tn,fn,sens_g,sens_rho,sens_lambda,sens_b,spec_g,spec_rho,spec_lambda,spec_b";

/// Render counts in the documented CSV layout: one row per (anomaly, arm),
/// with the endpoint-level matched-sample cells repeated on both rows.
pub fn write_counts_csv(counts: &[AnomalyCounts]) -> String {
    let mut out = String::from(COUNTS_CSV_HEADER);
    out.push('\n');
    for c in counts {
        for dm in [&c.control, &c.study] {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                c.anomaly.key(),
                dm.arm,
                dm.tp,
                dm.fp,
                dm.tn,
                dm.fn_,
                c.mst_sens.good,
                c.mst_sens.profit,
                c.mst_sens.loss,
                c.mst_sens.bad,
                c.mst_spec.good,
                c.mst_spec.profit,
                c.mst_spec.loss,
                c.mst_spec.bad,
            )
            .expect("string write");
        }
    }
    out
}

/// Parse the counts CSV written by [`write_counts_csv`].
pub fn parse_counts_csv(text: &str) -> Result<Vec<AnomalyCounts>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Schema("counts csv: empty document".into()))?;
    if header.trim() != COUNTS_CSV_HEADER {
        return Err(Error::Schema(format!(
            "counts csv: unexpected header `{}`",
            header.trim()
        )));
    }
    struct Partial {
        control: Option<DecisionMatrix>,
        study: Option<DecisionMatrix>,
        sens: (u64, u64, u64, u64),
        spec: (u64, u64, u64, u64),
    }
    let mut order: Vec<AnomalyType> = Vec::new();
    let mut partial: std::collections::BTreeMap<AnomalyType, Partial> = Default::default();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 14 {
            return Err(Error::Schema(format!(
                "counts csv line {}: expected 14 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let anomaly: AnomalyType = fields[0]
            .parse()
            .map_err(|e| Error::Schema(format!("counts csv line {}: {e}", lineno + 1)))?;
        let arm = match fields[1] {
            "control" => Arm::Control,
            "study" => Arm::Study,
            other => {
                return Err(Error::Schema(format!(
                    "counts csv line {}: unknown arm `{other}`",
                    lineno + 1
                )))
            }
        };
        let num = |i: usize| -> Result<u64> {
            fields[i].trim().parse().map_err(|_| {
                Error::Schema(format!(
                    "counts csv line {}: field `{}` is not a count",
                    lineno + 1,
                    fields[i]
                ))
            })
        };
        let dm = DecisionMatrix::new(anomaly, arm, num(2)?, num(3)?, num(4)?, num(5)?);
        let sens = (num(6)?, num(7)?, num(8)?, num(9)?);
        let spec = (num(10)?, num(11)?, num(12)?, num(13)?);
        let entry = partial.entry(anomaly).or_insert_with(|| {
            order.push(anomaly);
            Partial {
                control: None,
                study: None,
                sens,
                spec,
            }
        });
        if entry.sens != sens || entry.spec != spec {
            return Err(Error::Schema(format!(
                "counts csv line {}: matched-sample cells disagree between the arms of {anomaly}",
                lineno + 1
            )));
        }
        match arm {
            Arm::Control => entry.control = Some(dm),
            Arm::Study => entry.study = Some(dm),
        }
    }
    let mut out = Vec::with_capacity(order.len());
    for anomaly in order {
        let p = &partial[&anomaly];
        let (control, study) = match (p.control, p.study) {
            (Some(c), Some(s)) => (c, s),
            _ => {
                return Err(Error::Schema(format!(
                    "counts csv: {anomaly} is missing one arm"
                )))
            }
        };
        out.push(AnomalyCounts {
            anomaly,
            control,
            study,
            mst_sens: MatchedSampleTable::new(
                anomaly,
                Endpoint::Sensitivity,
                p.sens.0,
                p.sens.1,
                p.sens.2,
                p.sens.3,
            ),
            mst_spec: MatchedSampleTable::new(
                anomaly,
                Endpoint::Specificity,
                p.spec.0,
                p.spec.1,
                p.spec.2,
                p.spec.3,
            ),
            auc: None,
            curves: None,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

/// One anomaly row of the AUC table.
#[derive(Debug, Clone, PartialEq)]
pub struct AucRow {
    pub label: String,
    pub control: AucStats,
    pub study: AucStats,
    pub comparison: AucComparison,
}

/// The assembled results battery.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub cfg: TestConfig,
    pub endpoint: EndpointTable,
    pub stats_sens: Vec<(String, McNemarResult, BinomialTestResult)>,
    pub stats_spec: Vec<(String, McNemarResult, BinomialTestResult)>,
    pub auc_rows: Vec<AucRow>,
    /// Unweighted means across the AUC rows.
    pub auc_average: Option<AucAverages>,
    pub warnings: Vec<String>,
}

/// Column means of the AUC tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AucAverages {
    pub a_control: f64,
    pub a_study: f64,
    pub ci_control: (f64, f64),
    pub ci_study: (f64, f64),
    pub diff_ci: (f64, f64),
}

/// Build the whole battery from per-anomaly counts.
pub fn build_report(
    counts: &[AnomalyCounts],
    cfg: &TestConfig,
    mode: CorrelationMode,
) -> Result<Report> {
    if counts.is_empty() {
        return Err(Error::Schema("no anomaly counts to report on".into()));
    }
    let matrices: Vec<(DecisionMatrix, DecisionMatrix)> =
        counts.iter().map(|c| (c.control, c.study)).collect();
    let endpoint = endpoint_table(&matrices, cfg)?;

    let mut warnings = Vec::new();
    let mut stats_sens = Vec::new();
    let mut stats_spec = Vec::new();
    for c in counts {
        for (mst, rows) in [
            (&c.mst_sens, &mut stats_sens),
            (&c.mst_spec, &mut stats_spec),
        ] {
            if mst.discordant() == 0 {
                warnings.push(format!(
                    "{} {}: no discordant pairs; test row omitted",
                    c.anomaly, mst.endpoint
                ));
                continue;
            }
            rows.push((
                c.anomaly.label().to_string(),
                mcnemar_test(mst, cfg)?,
                binomial_test(mst, cfg)?,
            ));
        }
    }

    let mut auc_rows = Vec::new();
    for c in counts {
        let Some((a_c, a_s)) = c.auc else { continue };
        let control = auc_stats(
            a_c,
            c.control.positives(),
            c.control.negatives(),
            cfg.confidence,
        )?;
        let study = auc_stats(
            a_s,
            c.study.positives(),
            c.study.negatives(),
            cfg.confidence,
        )?;
        let comparison = compare_aucs(
            a_c,
            a_s,
            c.control.positives(),
            c.control.negatives(),
            &c.mst_sens,
            &c.mst_spec,
            cfg,
            mode,
        )?;
        auc_rows.push(AucRow {
            label: c.anomaly.label().to_string(),
            control,
            study,
            comparison,
        });
    }
    let auc_average = (auc_rows.len() > 1).then(|| {
        let n = auc_rows.len() as f64;
        let mut acc = AucAverages {
            a_control: 0.0,
            a_study: 0.0,
            ci_control: (0.0, 0.0),
            ci_study: (0.0, 0.0),
            diff_ci: (0.0, 0.0),
        };
        for r in &auc_rows {
            acc.a_control += r.control.a / n;
            acc.a_study += r.study.a / n;
            acc.ci_control.0 += r.control.lo / n;
            acc.ci_control.1 += r.control.hi / n;
            acc.ci_study.0 += r.study.lo / n;
            acc.ci_study.1 += r.study.hi / n;
            acc.diff_ci.0 += r.comparison.diff_lo / n;
            acc.diff_ci.1 += r.comparison.diff_hi / n;
        }
        acc
    });

    Ok(Report {
        cfg: *cfg,
        endpoint,
        stats_sens,
        stats_spec,
        auc_rows,
        auc_average,
        warnings,
    })
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

/// Percent with one decimal (estimates and interval bounds).
pub fn fmt_pct(fraction: f64) -> String {
    format!("{:.1}", fraction * 100.0)
}

/// Significance in percent, matching the published precision: clamped to
/// "0.0" below 1e-6, three decimals below 0.01%, two otherwise.
pub fn fmt_sig_pct(p: f64) -> String {
    if p < 1e-6 {
        return "0.0".into();
    }
    let pct = p * 100.0;
    if pct < 0.01 {
        format!("{pct:.3}")
    } else {
        format!("{pct:.2}")
    }
}

/// Raw probability: clamped to "0.0" below 1e-6, scientific below 1e-4.
pub fn fmt_prob(p: f64) -> String {
    if p < 1e-6 {
        "0.0".into()
    } else if p < 1e-4 {
        format!("{p:.1e}")
    } else {
        format!("{p:.4}")
    }
}

fn fmt_ci_pct(ci: (f64, f64)) -> String {
    format!("[{}, {}]", fmt_pct(ci.0), fmt_pct(ci.1))
}

fn fmt_ci_auc(ci: (f64, f64)) -> String {
    format!("[{:.2}, {:.2}]", ci.0, ci.1)
}

enum Style {
    Markdown,
    Latex,
}

fn render_table(out: &mut String, style: &Style, header: &[&str], rows: &[Vec<String>]) {
    match style {
        Style::Markdown => {
            writeln!(out, "| {} |", header.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
            for row in rows {
                writeln!(out, "| {} |", row.join(" | ")).unwrap();
            }
        }
        Style::Latex => {
            writeln!(
                out,
                "\\begin{{tabular}}{{r{}}}",
                " c".repeat(header.len() - 1)
            )
            .unwrap();
            writeln!(out, "\\toprule").unwrap();
            writeln!(out, "{} \\\\ \\midrule", header.join(" & ")).unwrap();
            for row in rows {
                writeln!(out, "{} \\\\", row.join(" & ")).unwrap();
            }
            writeln!(out, "\\bottomrule\n\\end{{tabular}}").unwrap();
        }
    }
}

fn render_report(report: &Report, style: Style) -> String {
    let mut out = String::new();
    let section = |out: &mut String, title: &str| match style {
        Style::Markdown => writeln!(out, "\n## {title}\n").unwrap(),
        Style::Latex => writeln!(out, "\n% {title}").unwrap(),
    };

    match style {
        Style::Markdown => writeln!(
            out,
            "# Paired validation report\n\nalpha = {}, beta-error threshold = {}, confidence = {}",
            report.cfg.alpha_type_i, report.cfg.alpha_type_ii, report.cfg.confidence
        )
        .unwrap(),
        Style::Latex => writeln!(out, "% paired validation report").unwrap(),
    }
    for w in &report.warnings {
        writeln!(out, "> warning: {w}").unwrap();
    }

    section(
        &mut out,
        "Sensitivity and specificity (%, with confidence intervals)",
    );
    let mut rows = Vec::new();
    let endpoint_row = |r: &crate::stats::EndpointRow| -> Vec<String> {
        vec![
            r.label.clone(),
            format!(
                "{} -> {}",
                fmt_pct(r.sens_control.estimate),
                fmt_pct(r.sens_study.estimate)
            ),
            format!(
                "{} -> {}",
                fmt_ci_pct((r.sens_control.lo, r.sens_control.hi)),
                fmt_ci_pct((r.sens_study.lo, r.sens_study.hi))
            ),
            format!(
                "{} -> {}",
                fmt_pct(r.spec_control.estimate),
                fmt_pct(r.spec_study.estimate)
            ),
            format!(
                "{} -> {}",
                fmt_ci_pct((r.spec_control.lo, r.spec_control.hi)),
                fmt_ci_pct((r.spec_study.lo, r.spec_study.hi))
            ),
        ]
    };
    for r in &report.endpoint.rows {
        rows.push(endpoint_row(r));
    }
    // a single-row table would just repeat itself as its own average
    if report.endpoint.rows.len() > 1 {
        if let Some(avg) = &report.endpoint.average {
            rows.push(endpoint_row(avg));
        }
    }
    render_table(
        &mut out,
        &style,
        &[
            "Clinical performance",
            "sens c -> s",
            "95% CI",
            "spec c -> s",
            "95% CI",
        ],
        &rows,
    );

    for (title, stats) in [
        ("Sensitivity statistics", &report.stats_sens),
        ("Specificity statistics", &report.stats_spec),
    ] {
        section(&mut out, title);
        let rows: Vec<Vec<String>> = stats
            .iter()
            .map(|(label, mc, bi)| {
                vec![
                    label.clone(),
                    format!("{:.1}", mc.chi2),
                    fmt_sig_pct(mc.p_one_sided),
                    fmt_sig_pct(bi.p_one_sided),
                    bi.x_alpha.to_string(),
                    fmt_sig_pct(bi.e_type_ii),
                    fmt_pct(bi.power),
                    (if bi.reject_h0 { "yes" } else { "no" }).to_string(),
                ]
            })
            .collect();
        render_table(
            &mut out,
            &style,
            &[
                "",
                "chi2",
                "s(chi2)",
                "s(x)",
                "x_alpha",
                "e_II",
                "power",
                "reject H0",
            ],
            &rows,
        );
    }

    if !report.auc_rows.is_empty() {
        section(&mut out, "AUC statistics");
        let mut rows: Vec<Vec<String>> = report
            .auc_rows
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    format!("{:.2} -> {:.2}", r.control.a, r.study.a),
                    format!(
                        "{} -> {}",
                        fmt_ci_auc((r.control.lo, r.control.hi)),
                        fmt_ci_auc((r.study.lo, r.study.hi))
                    ),
                ]
            })
            .collect();
        if let Some(avg) = &report.auc_average {
            rows.push(vec![
                "Average".into(),
                format!("{:.2} -> {:.2}", avg.a_control, avg.a_study),
                format!(
                    "{} -> {}",
                    fmt_ci_auc(avg.ci_control),
                    fmt_ci_auc(avg.ci_study)
                ),
            ]);
        }
        render_table(&mut out, &style, &["AUC", "a c -> s", "95% CI"], &rows);

        section(&mut out, "AUC difference");
        let mut rows: Vec<Vec<String>> = report
            .auc_rows
            .iter()
            .map(|r| {
                vec![
                    r.label.clone(),
                    fmt_ci_auc((r.comparison.diff_lo, r.comparison.diff_hi)),
                    format!("{:.1}", r.comparison.z_hat),
                    fmt_prob(r.comparison.p_one_sided),
                    format!(
                        "r_P {:.3}, r_N {:.3}, r {:.3}",
                        r.comparison.r_p, r.comparison.r_n, r.comparison.r
                    ),
                ]
            })
            .collect();
        if let Some(avg) = &report.auc_average {
            rows.push(vec![
                "Average".into(),
                fmt_ci_auc(avg.diff_ci),
                "-".into(),
                "-".into(),
                "".into(),
            ]);
        }
        render_table(
            &mut out,
            &style,
            &["AUC difference", "95% CI", "z", "s(z)", "correlations"],
            &rows,
        );
    }
    out
}

/// Markdown rendering of the battery in the published table layout.
pub fn report_to_markdown(report: &Report) -> String {
    render_report(report, Style::Markdown)
}

/// LaTeX tabular rendering of the same layout.
pub fn report_to_latex(report: &Report) -> String {
    render_report(report, Style::Latex)
}

/// Flat machine-readable rendering: `table,row,cell,value` lines.
pub fn report_to_csv(report: &Report) -> String {
    let mut out = String::from("table,row,cell,value\n");
    let mut push = |table: &str, row: &str, cell: &str, value: String| {
        writeln!(out, "{table},{row},{cell},{value}").unwrap();
    };
    let endpoint_cells = |push: &mut dyn FnMut(&str, &str, &str, String),
                          r: &crate::stats::EndpointRow| {
        for (cell, w) in [
            ("sens_control", &r.sens_control),
            ("sens_study", &r.sens_study),
            ("spec_control", &r.spec_control),
            ("spec_study", &r.spec_study),
        ] {
            push("endpoint", &r.label, cell, format!("{:.6}", w.estimate));
            push(
                "endpoint",
                &r.label,
                &format!("{cell}_lo"),
                format!("{:.6}", w.lo),
            );
            push(
                "endpoint",
                &r.label,
                &format!("{cell}_hi"),
                format!("{:.6}", w.hi),
            );
        }
    };
    for r in &report.endpoint.rows {
        endpoint_cells(&mut push, r);
    }
    if let Some(avg) = &report.endpoint.average {
        endpoint_cells(&mut push, avg);
    }
    for (table, stats) in [
        ("sens_stats", &report.stats_sens),
        ("spec_stats", &report.stats_spec),
    ] {
        for (label, mc, bi) in stats {
            push(table, label, "chi2", format!("{:.6}", mc.chi2));
            push(table, label, "s_chi2", format!("{:.8e}", mc.p_one_sided));
            push(table, label, "s_x", format!("{:.8e}", bi.p_one_sided));
            push(table, label, "x_alpha", bi.x_alpha.to_string());
            push(table, label, "e_type_ii", format!("{:.8e}", bi.e_type_ii));
            push(table, label, "power", format!("{:.6}", bi.power));
        }
    }
    for r in &report.auc_rows {
        push("auc", &r.label, "a_control", format!("{:.6}", r.control.a));
        push("auc", &r.label, "a_study", format!("{:.6}", r.study.a));
        push(
            "auc",
            &r.label,
            "ci_control_lo",
            format!("{:.6}", r.control.lo),
        );
        push(
            "auc",
            &r.label,
            "ci_control_hi",
            format!("{:.6}", r.control.hi),
        );
        push("auc", &r.label, "ci_study_lo", format!("{:.6}", r.study.lo));
        push("auc", &r.label, "ci_study_hi", format!("{:.6}", r.study.hi));
        push(
            "auc_diff",
            &r.label,
            "z_hat",
            format!("{:.6}", r.comparison.z_hat),
        );
        push(
            "auc_diff",
            &r.label,
            "p",
            format!("{:.8e}", r.comparison.p_one_sided),
        );
        push(
            "auc_diff",
            &r.label,
            "diff_lo",
            format!("{:.6}", r.comparison.diff_lo),
        );
        push(
            "auc_diff",
            &r.label,
            "diff_hi",
            format!("{:.6}", r.comparison.diff_hi),
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Paper reproduction
// ---------------------------------------------------------------------------

/// Comparison tolerances of the reproduction diff.
pub mod tolerance {
    /// Sensitivity/specificity estimates, percentage points.
    pub const ENDPOINT_PP: f64 = 0.05;
    /// Wald interval bounds, percentage points.
    pub const ENDPOINT_CI_PP: f64 = 0.1;
    /// McNemar chi-squared statistic.
    pub const CHI2: f64 = 0.05;
    /// Test significances, percentage points.
    pub const SIGNIFICANCE_PP: f64 = 0.02;
    /// Type-II error and power, percentage points.
    pub const POWER_PP: f64 = 0.1;
    /// AUC interval bounds and averaged areas.
    pub const AUC_CI: f64 = 0.005;
    /// AUC-difference z statistic.
    pub const Z_HAT: f64 = 0.5;
    /// Nonzero printed p-values must agree within one order of magnitude.
    pub const P_RATIO: f64 = 10.0;
    /// Values the tables print as 0.0 must fall below this.
    pub const DISPLAY_ZERO: f64 = 1e-4;
}

/// One cell whose regenerated value does not match the printed one.
#[derive(Debug, Clone, PartialEq)]
pub struct CellMismatch {
    pub table: String,
    pub row: String,
    pub cell: String,
    pub got: f64,
    pub want: f64,
    pub tolerance: f64,
}

impl std::fmt::Display for CellMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}/{}/{}: regenerated {:.6} vs printed {:.6} (tolerance {})",
            self.table, self.row, self.cell, self.got, self.want, self.tolerance
        )
    }
}

/// A regenerated report plus its diff against the printed tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Reproduction {
    pub report: Report,
    pub mismatches: Vec<CellMismatch>,
}

/// Regenerate every results table from the embedded fixture and diff it
/// against the printed values.
pub fn reproduce_paper(cfg: &TestConfig, mode: CorrelationMode) -> Result<Reproduction> {
    reproduce_with(&PaperFixture::embedded(), cfg, mode)
}

/// Reproduction against an explicit (possibly perturbed) fixture.
pub fn reproduce_with(
    fixture: &PaperFixture,
    cfg: &TestConfig,
    mode: CorrelationMode,
) -> Result<Reproduction> {
    let counts = counts_from_fixture(fixture);
    let report = build_report(&counts, cfg, mode)?;
    let mut mismatches = Vec::new();
    fn push_if_off(
        mismatches: &mut Vec<CellMismatch>,
        table: &str,
        row: &str,
        cell: &str,
        got: f64,
        want: f64,
        tol: f64,
    ) {
        if (got - want).abs() > tol + 1e-12 {
            mismatches.push(CellMismatch {
                table: table.into(),
                row: row.into(),
                cell: cell.into(),
                got,
                want,
                tolerance: tol,
            });
        }
    }
    macro_rules! check {
        ($table:expr, $row:expr, $cell:expr, $got:expr, $want:expr, $tol:expr) => {
            push_if_off(&mut mismatches, $table, $row, $cell, $got, $want, $tol)
        };
    }

    // endpoint table
    let rows_with_avg: Vec<(
        &crate::stats::EndpointRow,
        &crate::fixture::PrintedEndpointRow,
    )> = report
        .endpoint
        .rows
        .iter()
        .zip(PRINTED_ENDPOINT.iter())
        .chain(
            report
                .endpoint
                .average
                .iter()
                .zip(std::iter::once(&PRINTED_ENDPOINT_AVERAGE)),
        )
        .collect();
    for (row, printed) in rows_with_avg {
        let label = row.label.as_str();
        for (cell, got, want) in [
            (
                "sens_control",
                row.sens_control.estimate,
                printed.sens_control,
            ),
            ("sens_study", row.sens_study.estimate, printed.sens_study),
            (
                "spec_control",
                row.spec_control.estimate,
                printed.spec_control,
            ),
            ("spec_study", row.spec_study.estimate, printed.spec_study),
        ] {
            check!(
                "endpoint",
                label,
                cell,
                got * 100.0,
                want,
                tolerance::ENDPOINT_PP
            );
        }
        for (cell, w, want) in [
            (
                "sens_ci_control",
                &row.sens_control,
                printed.sens_ci_control,
            ),
            ("sens_ci_study", &row.sens_study, printed.sens_ci_study),
            (
                "spec_ci_control",
                &row.spec_control,
                printed.spec_ci_control,
            ),
            ("spec_ci_study", &row.spec_study, printed.spec_ci_study),
        ] {
            check!(
                "endpoint",
                label,
                &format!("{cell}_lo"),
                w.lo * 100.0,
                want.0,
                tolerance::ENDPOINT_CI_PP
            );
            check!(
                "endpoint",
                label,
                &format!("{cell}_hi"),
                w.hi * 100.0,
                want.1,
                tolerance::ENDPOINT_CI_PP
            );
        }
    }

    // marginal statistics tables
    for (table, stats, printed) in [
        ("sens_stats", &report.stats_sens, &PRINTED_STATS_SENS),
        ("spec_stats", &report.stats_spec, &PRINTED_STATS_SPEC),
    ] {
        for ((label, mc, bi), p) in stats.iter().zip(printed.iter()) {
            check!(table, label, "chi2", mc.chi2, p.chi2, tolerance::CHI2);
            check!(
                table,
                label,
                "s_chi2",
                mc.p_one_sided * 100.0,
                p.s_chi2_pct,
                tolerance::SIGNIFICANCE_PP
            );
            check!(
                table,
                label,
                "s_x",
                bi.p_one_sided * 100.0,
                p.s_x_pct,
                tolerance::SIGNIFICANCE_PP
            );
            check!(
                table,
                label,
                "x_alpha",
                bi.x_alpha as f64,
                p.x_alpha as f64,
                0.0
            );
            check!(
                table,
                label,
                "e_type_ii",
                bi.e_type_ii * 100.0,
                p.e_type_ii_pct,
                tolerance::POWER_PP
            );
            check!(
                table,
                label,
                "power",
                bi.power * 100.0,
                p.power_pct,
                tolerance::POWER_PP
            );
        }
    }

    // AUC tables
    for (row, printed) in report.auc_rows.iter().zip(PRINTED_AUC.iter()) {
        let label = row.label.as_str();
        check!(
            "auc",
            label,
            "ci_control_lo",
            row.control.lo,
            printed.ci_control.0,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            label,
            "ci_control_hi",
            row.control.hi,
            printed.ci_control.1,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            label,
            "ci_study_lo",
            row.study.lo,
            printed.ci_study.0,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            label,
            "ci_study_hi",
            row.study.hi,
            printed.ci_study.1,
            tolerance::AUC_CI
        );
    }
    if let Some(avg) = &report.auc_average {
        check!(
            "auc",
            "Average",
            "a_control",
            avg.a_control,
            PRINTED_AUC_AVERAGE.a_control,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            "Average",
            "a_study",
            avg.a_study,
            PRINTED_AUC_AVERAGE.a_study,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            "Average",
            "ci_control_lo",
            avg.ci_control.0,
            PRINTED_AUC_AVERAGE.ci_control.0,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            "Average",
            "ci_control_hi",
            avg.ci_control.1,
            PRINTED_AUC_AVERAGE.ci_control.1,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            "Average",
            "ci_study_lo",
            avg.ci_study.0,
            PRINTED_AUC_AVERAGE.ci_study.0,
            tolerance::AUC_CI
        );
        check!(
            "auc",
            "Average",
            "ci_study_hi",
            avg.ci_study.1,
            PRINTED_AUC_AVERAGE.ci_study.1,
            tolerance::AUC_CI
        );
        check!(
            "auc_diff",
            "Average",
            "ci_lo",
            avg.diff_ci.0,
            PRINTED_AUC_DIFF_AVERAGE_CI.0,
            tolerance::AUC_CI * 2.0
        );
        check!(
            "auc_diff",
            "Average",
            "ci_hi",
            avg.diff_ci.1,
            PRINTED_AUC_DIFF_AVERAGE_CI.1,
            tolerance::AUC_CI * 2.0
        );
    }
    for (row, printed) in report.auc_rows.iter().zip(PRINTED_AUC_DIFF.iter()) {
        let label = row.label.as_str();
        check!(
            "auc_diff",
            label,
            "z_hat",
            row.comparison.z_hat,
            printed.z_hat,
            tolerance::Z_HAT
        );
        match printed.p {
            PrintedP::DisplayZero => {
                if row.comparison.p_one_sided >= tolerance::DISPLAY_ZERO {
                    mismatches.push(CellMismatch {
                        table: "auc_diff".into(),
                        row: label.into(),
                        cell: "p".into(),
                        got: row.comparison.p_one_sided,
                        want: 0.0,
                        tolerance: tolerance::DISPLAY_ZERO,
                    });
                }
            }
            PrintedP::Value(want) => {
                let ratio = row.comparison.p_one_sided / want;
                if !(1.0 / tolerance::P_RATIO..=tolerance::P_RATIO).contains(&ratio) {
                    mismatches.push(CellMismatch {
                        table: "auc_diff".into(),
                        row: label.into(),
                        cell: "p".into(),
                        got: row.comparison.p_one_sided,
                        want,
                        tolerance: tolerance::P_RATIO,
                    });
                }
            }
        }
    }
    Ok(Reproduction { report, mismatches })
}
