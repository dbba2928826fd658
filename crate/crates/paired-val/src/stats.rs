//! Endpoint statistics and hypothesis tests on matched sample tables:
//! sensitivity/specificity with Wald intervals, the one-sided McNemar test,
//! the one-sided exact binomial test with critical region, Type-II error and
//! power, and the F_beta score.

use serde::{Deserialize, Serialize};

use crate::dist::{binomial_cdf, binomial_sf, chi2_1_survival, normal_quantile};
use crate::error::{Error, Result};
use crate::matching::{DecisionMatrix, MatchedSampleTable};

/// Error thresholds and confidence level for the whole battery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestConfig {
    /// Significance level (Type-I error threshold) for both marginal tests.
    pub alpha_type_i: f64,
    /// Type-II error threshold used to judge power.
    pub alpha_type_ii: f64,
    /// Confidence level of the reported intervals.
    pub confidence: f64,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            alpha_type_i: 0.05,
            alpha_type_ii: 0.10,
            confidence: 0.95,
        }
    }
}

impl TestConfig {
    pub fn new(alpha_type_i: f64, alpha_type_ii: f64, confidence: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha", alpha_type_i),
            ("beta-error", alpha_type_ii),
            ("confidence", confidence),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Domain(format!("{name} = {v} not in (0,1)")));
            }
        }
        Ok(Self {
            alpha_type_i,
            alpha_type_ii,
            confidence,
        })
    }

    /// z_{(1+c)/2}, the two-sided quantile of the interval level.
    pub fn z_two_sided(&self) -> f64 {
        normal_quantile((1.0 + self.confidence) / 2.0).expect("confidence validated")
    }

    /// z_{1-alpha}, the one-sided rejection quantile.
    pub fn z_one_sided(&self) -> f64 {
        normal_quantile(1.0 - self.alpha_type_i).expect("alpha validated")
    }
}

/// Direction of the tested one-sided alternative, taken from the observed
/// sign of profit − loss (ties default to `Right`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// profit > loss: performance improved from control to study.
    Right,
    /// profit < loss: performance deteriorated.
    Left,
}

/// sens = |TP| / |P| and spec = |TN| / |N| from one decision matrix.
pub fn sens_spec(dm: &DecisionMatrix) -> Result<(f64, f64)> {
    if dm.positives() == 0 || dm.negatives() == 0 {
        return Err(Error::UndefinedEndpoint(format!(
            "{} {}: |P| = {}, |N| = {}",
            dm.anomaly,
            dm.arm,
            dm.positives(),
            dm.negatives()
        )));
    }
    Ok((
        dm.tp as f64 / dm.positives() as f64,
        dm.tn as f64 / dm.negatives() as f64,
    ))
}

/// A Wald interval for a binomial success probability, clipped to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaldInterval {
    pub estimate: f64,
    pub half_width: f64,
    pub lo: f64,
    pub hi: f64,
}

/// estimate ± z_{(1+c)/2} · sqrt(estimate(1−estimate)/denom), clipped to the
/// unit interval.
pub fn wald_ci(estimate: f64, denom: u64, confidence: f64) -> Result<WaldInterval> {
    if denom == 0 {
        return Err(Error::Domain("wald_ci: denominator must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&estimate) {
        return Err(Error::Domain(format!(
            "wald_ci: estimate {estimate} not in [0,1]"
        )));
    }
    let z = normal_quantile((1.0 + confidence) / 2.0)?;
    let half_width = z * (estimate * (1.0 - estimate) / denom as f64).sqrt();
    Ok(WaldInterval {
        estimate,
        half_width,
        lo: (estimate - half_width).max(0.0),
        hi: (estimate + half_width).min(1.0),
    })
}

/// One-sided McNemar test outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McNemarResult {
    pub chi2: f64,
    pub p_one_sided: f64,
    pub direction: Direction,
    pub reject_h0: bool,
}

/// Continuity-corrected McNemar statistic on the discordant cells:
/// chi2 = (||rho| − |lambda|| − 1)^2 / (|rho| + |lambda|), with one-sided
/// significance chi2_1_survival(chi2) / 2.
pub fn mcnemar_test(mst: &MatchedSampleTable, cfg: &TestConfig) -> Result<McNemarResult> {
    let n = mst.discordant();
    if n == 0 {
        return Err(Error::NoDiscordantPairs);
    }
    let diff = (mst.profit as f64 - mst.loss as f64).abs();
    let chi2 = (diff - 1.0).powi(2) / n as f64;
    let p_one_sided = chi2_1_survival(chi2) / 2.0;
    Ok(McNemarResult {
        chi2,
        p_one_sided,
        direction: if mst.profit >= mst.loss {
            Direction::Right
        } else {
            Direction::Left
        },
        reject_h0: p_one_sided < cfg.alpha_type_i,
    })
}

/// One-sided exact binomial test outcome, with the normal-approximated
/// critical region and the Type-II error / power computed at p1 = x/n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinomialTestResult {
    /// Discordant sample size |rho| + |lambda|.
    pub n: u64,
    /// Observation: the larger of |rho| and |lambda|.
    pub x: u64,
    pub direction: Direction,
    pub p_one_sided: f64,
    /// Lower edge of the critical region [x_alpha, n].
    pub x_alpha: u64,
    pub e_type_ii: f64,
    pub power: f64,
    pub reject_h0: bool,
}

/// Lower edge of the critical region: n p0 + z_{1-alpha} sqrt(n p0 (1-p0)) + 0.5,
/// rounded half-up to an integer and clamped into [0, n].
pub fn critical_value(n: u64, alpha: f64) -> Result<u64> {
    let z = normal_quantile(1.0 - alpha)?;
    let raw = n as f64 * 0.5 + z * (n as f64 * 0.25).sqrt() + 0.5;
    Ok((raw.round().max(0.0) as u64).min(n))
}

pub fn binomial_test(mst: &MatchedSampleTable, cfg: &TestConfig) -> Result<BinomialTestResult> {
    let n = mst.discordant();
    if n == 0 {
        return Err(Error::NoDiscordantPairs);
    }
    let x = mst.profit.max(mst.loss);
    let p_one_sided = binomial_sf(x, n, 0.5)?;
    let x_alpha = critical_value(n, cfg.alpha_type_i)?;
    let p1 = x as f64 / n as f64;
    let e_type_ii = binomial_cdf(x_alpha, n, p1)?;
    Ok(BinomialTestResult {
        n,
        x,
        direction: if mst.profit >= mst.loss {
            Direction::Right
        } else {
            Direction::Left
        },
        p_one_sided,
        x_alpha,
        e_type_ii,
        power: 1.0 - e_type_ii,
        reject_h0: p_one_sided < cfg.alpha_type_i,
    })
}

/// Weighted harmonic mean of precision and sensitivity:
/// (1 + beta^2) P R / (beta^2 P + R).
pub fn f_beta(precision: f64, sensitivity: f64, beta: f64) -> Result<f64> {
    if beta <= 0.0 {
        return Err(Error::Domain(format!("f_beta: beta = {beta} must be > 0")));
    }
    let denom = beta * beta * precision + sensitivity;
    if denom <= 0.0 {
        return Err(Error::Domain(
            "f_beta: precision + sensitivity must be > 0".into(),
        ));
    }
    Ok((1.0 + beta * beta) * precision * sensitivity / denom)
}

/// One anomaly row of the endpoint table: estimates and intervals per arm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndpointRow {
    pub label: String,
    pub sens_control: WaldInterval,
    pub sens_study: WaldInterval,
    pub spec_control: WaldInterval,
    pub spec_study: WaldInterval,
}

/// Endpoint table over several anomaly types plus the unweighted average row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndpointTable {
    pub rows: Vec<EndpointRow>,
    /// Unweighted mean of every column across the rows, with CI bounds
    /// averaged after clipping. For a single-row table this equals the row.
    pub average: Option<EndpointRow>,
}

/// Build the endpoint table from per-anomaly (control, study) matrices.
pub fn endpoint_table(
    matrices: &[(DecisionMatrix, DecisionMatrix)],
    cfg: &TestConfig,
) -> Result<EndpointTable> {
    let mut rows = Vec::with_capacity(matrices.len());
    for (control, study) in matrices {
        let (sens_c, spec_c) = sens_spec(control)?;
        let (sens_s, spec_s) = sens_spec(study)?;
        rows.push(EndpointRow {
            label: control.anomaly.label().to_string(),
            sens_control: wald_ci(sens_c, control.positives(), cfg.confidence)?,
            sens_study: wald_ci(sens_s, study.positives(), cfg.confidence)?,
            spec_control: wald_ci(spec_c, control.negatives(), cfg.confidence)?,
            spec_study: wald_ci(spec_s, study.negatives(), cfg.confidence)?,
        });
    }
    let average = if !rows.is_empty() {
        let n = rows.len() as f64;
        let mean = |f: &dyn Fn(&EndpointRow) -> WaldInterval| {
            let (mut est, mut hw, mut lo, mut hi) = (0.0, 0.0, 0.0, 0.0);
            for r in &rows {
                let w = f(r);
                est += w.estimate / n;
                hw += w.half_width / n;
                lo += w.lo / n;
                hi += w.hi / n;
            }
            WaldInterval {
                estimate: est,
                half_width: hw,
                lo,
                hi,
            }
        };
        Some(EndpointRow {
            label: "Average".to_string(),
            sens_control: mean(&|r| r.sens_control),
            sens_study: mean(&|r| r.sens_study),
            spec_control: mean(&|r| r.spec_control),
            spec_study: mean(&|r| r.spec_study),
        })
    } else {
        None
    };
    Ok(EndpointTable { rows, average })
}
