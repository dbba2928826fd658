//! Localization-ROC curves from confidence-threshold operating points,
//! trapezoidal AUC, the Hanley–McNeil variance and confidence intervals,
//! Kendall correlations from matched sample tables and the correlated
//! paired AUC-difference z-test.

use serde::{Deserialize, Serialize};

use crate::dist::{normal_quantile, normal_sf};
use crate::error::{Error, Result};
use crate::hm_grid_data::{AREA_MIN, AREA_STEP, AUC_CORR_GRID, CORR_STEP, N_AREA, N_CORR};
use crate::matching::{tally, DecisionMatrix, Endpoint, MatchedSampleTable};
use crate::model::{AnomalyType, Arm, ConfidenceLabel, StudyDataset};
use crate::stats::TestConfig;

/// One discrete operating point: counts at a confidence threshold and the
/// (false positive rate, sensitivity) pair they induce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub threshold: ConfidenceLabel,
    pub fpr: f64,
    pub sens: f64,
    pub counts: DecisionMatrix,
}

impl OperatingPoint {
    pub fn from_matrix(threshold: ConfidenceLabel, counts: DecisionMatrix) -> Result<Self> {
        if counts.positives() == 0 || counts.negatives() == 0 {
            return Err(Error::UndefinedEndpoint(format!(
                "operating point at {threshold}: |P| = {}, |N| = {}",
                counts.positives(),
                counts.negatives()
            )));
        }
        Ok(Self {
            threshold,
            fpr: counts.fp as f64 / counts.negatives() as f64,
            sens: counts.tp as f64 / counts.positives() as f64,
            counts,
        })
    }
}

/// LROC curve: ten operating points ordered from the strictest threshold
/// (100%) to the loosest (10%), plus the trapezoidal area under the closed
/// polyline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LrocCurve {
    pub anomaly: AnomalyType,
    pub arm: Arm,
    pub points: Vec<OperatingPoint>,
    pub auc: f64,
}

impl LrocCurve {
    /// The closed polyline over fpr in [0, 1]: anchored at (0, 0), through
    /// the operating points in threshold-descending order, then flattened
    /// horizontally to fpr = 1 (the localization feature keeps the curve
    /// from ever reaching (1, 1)).
    pub fn polyline(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.points.len() + 2);
        pts.push((0.0, 0.0));
        for p in &self.points {
            pts.push((p.fpr, p.sens));
        }
        let last_sens = self.points.last().map_or(0.0, |p| p.sens);
        pts.push((1.0, last_sens));
        pts
    }
}

/// Build the LROC curve of one (arm, anomaly) by tallying the dataset at
/// each of the ten confidence thresholds.
pub fn build_lroc(
    dataset: &StudyDataset,
    arm: Arm,
    anomaly: AnomalyType,
    min_dice: f64,
) -> Result<LrocCurve> {
    let mut points = Vec::with_capacity(10);
    for threshold in ConfidenceLabel::thresholds_descending() {
        let counts = tally(dataset, arm, anomaly, threshold, min_dice)?;
        points.push(OperatingPoint::from_matrix(threshold, counts)?);
    }
    let mut curve = LrocCurve {
        anomaly,
        arm,
        points,
        auc: 0.0,
    };
    curve.auc = trapezoid_auc(&curve)?;
    Ok(curve)
}

/// Piecewise-linear area under a polyline with non-decreasing x.
pub fn trapezoid_area(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidCurve("need at least two points".into()));
    }
    let mut area = 0.0;
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x1 < x0 - 1e-12 {
            return Err(Error::InvalidCurve(format!(
                "fpr decreases from {x0} to {x1}"
            )));
        }
        area += (x1 - x0) * (y0 + y1) / 2.0;
    }
    Ok(area)
}

/// Area under the closed LROC polyline over fpr in [0, 1].
pub fn trapezoid_auc(curve: &LrocCurve) -> Result<f64> {
    trapezoid_area(&curve.polyline())
}

/// Hanley–McNeil statistics of one AUC estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AucStats {
    pub a: f64,
    pub q1: f64,
    pub q2: f64,
    pub sigma: f64,
    pub lo: f64,
    pub hi: f64,
}

/// sigma(a) = sqrt([a(1−a) + (P−1)(q1−a²) + (N−1)(q2−a²)] / (P N)) with
/// q1 = a/(2−a), q2 = 2a²/(1+a); the interval is a ± z_{(1+c)/2} sigma
/// clipped to [0, 1].
pub fn auc_stats(a: f64, positives: u64, negatives: u64, confidence: f64) -> Result<AucStats> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Domain(format!("auc_stats: a = {a} not in [0,1]")));
    }
    if positives < 2 || negatives < 2 {
        return Err(Error::Domain(format!(
            "auc_stats: need P, N >= 2, got P = {positives}, N = {negatives}"
        )));
    }
    let q1 = a / (2.0 - a);
    let q2 = 2.0 * a * a / (1.0 + a);
    let p = positives as f64;
    let n = negatives as f64;
    let var = (a * (1.0 - a) + (p - 1.0) * (q1 - a * a) + (n - 1.0) * (q2 - a * a)) / (p * n);
    let sigma = var.max(0.0).sqrt();
    let z = normal_quantile((1.0 + confidence) / 2.0)?;
    Ok(AucStats {
        a,
        q1,
        q2,
        sigma,
        lo: (a - z * sigma).max(0.0),
        hi: (a + z * sigma).min(1.0),
    })
}

/// Kendall rank coefficients from the concordant and discordant cells:
/// r = (good + bad − profit − loss) / total, for the positive findings from
/// the sensitivity table and the negative findings from the specificity
/// table.
pub fn kendall_correlations(
    mst_sens: &MatchedSampleTable,
    mst_spec: &MatchedSampleTable,
) -> Result<(f64, f64)> {
    debug_assert_eq!(mst_sens.endpoint, Endpoint::Sensitivity);
    debug_assert_eq!(mst_spec.endpoint, Endpoint::Specificity);
    let coeff = |t: &MatchedSampleTable| -> Result<f64> {
        if t.total() == 0 {
            return Err(Error::Domain(format!(
                "kendall_correlations: empty {} table",
                t.endpoint
            )));
        }
        Ok((t.good as f64 + t.bad as f64 - t.profit as f64 - t.loss as f64) / t.total() as f64)
    };
    Ok((coeff(mst_sens)?, coeff(mst_spec)?))
}

/// Correlation between the two paired AUC estimates: the average correlation
/// (r_P + r_N)/2 and the average area (a_c + a_s)/2 index the embedded grid;
/// bilinear interpolation between grid cells, clipped to [0, max(r_P, r_N)].
pub fn lookup_r(r_p: f64, r_n: f64, a_control: f64, a_study: f64) -> f64 {
    let rbar = (r_p + r_n) / 2.0;
    let abar = (a_control + a_study) / 2.0;
    let r = grid_bilinear(rbar, abar);
    r.clamp(0.0, r_p.max(r_n).max(0.0))
}

fn grid_bilinear(corr: f64, area: f64) -> f64 {
    let corr_max = CORR_STEP * (N_CORR - 1) as f64;
    let area_max = AREA_MIN + AREA_STEP * (N_AREA - 1) as f64;
    let c = corr.clamp(0.0, corr_max);
    let a = area.clamp(AREA_MIN, area_max);
    let i = ((c / CORR_STEP) as usize).min(N_CORR - 2);
    let j = (((a - AREA_MIN) / AREA_STEP) as usize).min(N_AREA - 2);
    let tc = (c - CORR_STEP * i as f64) / CORR_STEP;
    let ta = (a - (AREA_MIN + AREA_STEP * j as f64)) / AREA_STEP;
    (1.0 - tc) * (1.0 - ta) * AUC_CORR_GRID[i][j]
        + tc * (1.0 - ta) * AUC_CORR_GRID[i + 1][j]
        + (1.0 - tc) * ta * AUC_CORR_GRID[i][j + 1]
        + tc * ta * AUC_CORR_GRID[i + 1][j + 1]
}

/// How the between-arm AUC correlation is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CorrelationMode {
    /// Embedded grid lookup (the published-table procedure).
    #[default]
    Table,
    /// Substitute r = (r_P + r_N)/2 directly, for sensitivity analysis.
    DirectAverage,
}

/// Outcome of the correlated paired AUC-difference test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AucComparison {
    pub a_control: f64,
    pub a_study: f64,
    pub r_p: f64,
    pub r_n: f64,
    pub r: f64,
    pub sigma_diff: f64,
    pub z_hat: f64,
    pub p_one_sided: f64,
    pub diff_lo: f64,
    pub diff_hi: f64,
    pub reject_h0: bool,
}

/// Core comparison on explicit areas and sample sizes (the curves are not
/// needed once their areas are known).
#[allow(clippy::too_many_arguments)]
pub fn compare_aucs(
    a_control: f64,
    a_study: f64,
    positives: u64,
    negatives: u64,
    mst_sens: &MatchedSampleTable,
    mst_spec: &MatchedSampleTable,
    cfg: &TestConfig,
    mode: CorrelationMode,
) -> Result<AucComparison> {
    let stats_c = auc_stats(a_control, positives, negatives, cfg.confidence)?;
    let stats_s = auc_stats(a_study, positives, negatives, cfg.confidence)?;
    let (r_p, r_n) = kendall_correlations(mst_sens, mst_spec)?;
    let r = match mode {
        CorrelationMode::Table => lookup_r(r_p, r_n, a_control, a_study),
        CorrelationMode::DirectAverage => (r_p + r_n) / 2.0,
    };
    let var_diff =
        stats_c.sigma.powi(2) + stats_s.sigma.powi(2) - 2.0 * r * stats_c.sigma * stats_s.sigma;
    if var_diff <= 0.0 {
        return Err(Error::DegenerateComparison);
    }
    let sigma_diff = var_diff.sqrt();
    let diff = a_study - a_control;
    let z_hat = diff / sigma_diff;
    let z_ci = normal_quantile((1.0 + cfg.confidence) / 2.0)?;
    Ok(AucComparison {
        a_control,
        a_study,
        r_p,
        r_n,
        r,
        sigma_diff,
        z_hat,
        p_one_sided: normal_sf(z_hat),
        diff_lo: (diff - z_ci * sigma_diff).max(-1.0),
        diff_hi: (diff + z_ci * sigma_diff).min(1.0),
        reject_h0: z_hat > cfg.z_one_sided(),
    })
}

/// Paired AUC-difference test between the control and study curves of one
/// anomaly type.
pub fn auc_difference_test(
    curve_control: &LrocCurve,
    curve_study: &LrocCurve,
    mst_sens: &MatchedSampleTable,
    mst_spec: &MatchedSampleTable,
    cfg: &TestConfig,
    mode: CorrelationMode,
) -> Result<AucComparison> {
    let counts = &curve_control.points[0].counts;
    compare_aucs(
        curve_control.auc,
        curve_study.auc,
        counts.positives(),
        counts.negatives(),
        mst_sens,
        mst_spec,
        cfg,
        mode,
    )
}

/// CSV of (threshold, fpr, sens) triples for one curve.
pub fn curve_to_csv(curve: &LrocCurve) -> String {
    let mut out = String::from("threshold,fpr,sens\n");
    for p in &curve.points {
        out.push_str(&format!(
            "{},{:.6},{:.6}\n",
            p.threshold.value(),
            p.fpr,
            p.sens
        ));
    }
    out
}

/// A minimal SVG rendering of one or more curves on the unit square, with
/// axes and labeled operating points.
pub fn curves_to_svg(curves: &[&LrocCurve]) -> String {
    const W: f64 = 480.0;
    const H: f64 = 480.0;
    const M: f64 = 50.0;
    let sx = |x: f64| M + x * (W - 2.0 * M);
    let sy = |y: f64| H - M - y * (H - 2.0 * M);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\"/>\n",
        sx(0.0),
        sy(1.0),
        W - 2.0 * M,
        H - 2.0 * M
    ));
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\">{t}</text>\n",
            sx(t),
            H - M + 14.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\">{t}</text>\n",
            M - 6.0,
            sy(t) + 3.0
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">1 - specificity</text>\n",
        W / 2.0,
        H - 10.0
    ));
    svg.push_str(&format!(
        "  <text x=\"12\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\" \
         transform=\"rotate(-90 12 {:.1})\">sensitivity</text>\n",
        H / 2.0,
        H / 2.0
    ));
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    for (k, curve) in curves.iter().enumerate() {
        let color = colors[k % colors.len()];
        let path: Vec<String> = curve
            .polyline()
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            path.join(" ")
        ));
        for p in &curve.points {
            svg.push_str(&format!(
                "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>\n",
                sx(p.fpr),
                sy(p.sens)
            ));
        }
        // label the strictest and loosest operating points
        if let (Some(first), Some(last)) = (curve.points.first(), curve.points.last()) {
            for (p, anchor) in [(first, "end"), (last, "start")] {
                svg.push_str(&format!(
                    "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\" fill=\"{color}\" \
                     text-anchor=\"{anchor}\">{}%</text>\n",
                    sx(p.fpr) + if anchor == "end" { -4.0 } else { 4.0 },
                    sy(p.sens) - 4.0,
                    p.threshold.value()
                ));
            }
        }
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"{color}\">{} {} (AUC {:.2})</text>\n",
            M + 8.0,
            M + 16.0 + 14.0 * k as f64,
            curve.anomaly,
            curve.arm,
            curve.auc
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
