//! Monte Carlo harness for verifying empirical Type-I error, power and
//! confidence-interval coverage of the marginal test implementations on
//! synthetic paired studies.
//!
//! Replicates run on independent ChaCha streams keyed by the replicate index,
//! so summaries are bit-identical for a given seed regardless of thread
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{binomial_sf, chi2_1_survival};
use crate::error::{Error, Result};
use crate::matching::{Endpoint, MatchedSampleTable};
use crate::model::AnomalyType;
use crate::stats::{critical_value, wald_ci, TestConfig};

/// A synthetic paired-study scenario.
///
/// Ground-truth-positive teeth are drawn as `round(n_teeth * prevalence)`;
/// each lands in the profit cell with probability `p_profit`, the loss cell
/// with `p_loss`, and otherwise splits evenly between the two concordant
/// cells. The true control-arm sensitivity is therefore
/// `(1 - p_profit - p_loss)/2 + p_loss`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimScenario {
    pub n_teeth: u64,
    pub prevalence: f64,
    pub p_profit: f64,
    pub p_loss: f64,
    pub replications: u64,
    pub seed: u64,
}

impl SimScenario {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("prevalence", self.prevalence),
            ("p_profit", self.p_profit),
            ("p_loss", self.p_loss),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name} = {v} not in [0,1]")));
            }
        }
        if self.p_profit + self.p_loss > 1.0 {
            return Err(Error::Domain("p_profit + p_loss exceeds 1".into()));
        }
        if self.replications == 0 {
            return Err(Error::Domain("replications must be >= 1".into()));
        }
        Ok(())
    }

    pub fn positives(&self) -> u64 {
        (self.n_teeth as f64 * self.prevalence).round() as u64
    }

    /// True control-arm sensitivity under the scenario's joint distribution.
    pub fn true_control_sensitivity(&self) -> f64 {
        (1.0 - self.p_profit - self.p_loss) / 2.0 + self.p_loss
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let s: SimScenario = toml::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let s: SimScenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }
}

/// Draw one synthetic sensitivity matched-sample table.
pub fn simulate_mst(scenario: &SimScenario, rng: &mut impl Rng) -> MatchedSampleTable {
    let mut t = MatchedSampleTable::new(AnomalyType::Caries, Endpoint::Sensitivity, 0, 0, 0, 0);
    let p_discordant = scenario.p_profit + scenario.p_loss;
    for _ in 0..scenario.positives() {
        let u: f64 = rng.random();
        if u < scenario.p_profit {
            t.profit += 1;
        } else if u < p_discordant {
            t.loss += 1;
        } else if rng.random_bool(0.5) {
            t.good += 1;
        } else {
            t.bad += 1;
        }
    }
    t
}

/// Aggregated calibration results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSummary {
    pub replications: u64,
    pub seed: u64,
    pub positives: u64,
    pub mean_discordant: f64,
    /// Fraction of replicates where the observation fell in the critical
    /// region [x_alpha, n] in the improvement direction. Under a symmetric
    /// null this is the empirical Type-I rate; under an alternative it is
    /// the empirical power.
    pub binomial_rejection_rate: f64,
    /// Fraction rejecting by the exact one-sided p-value s(x) < alpha in the
    /// improvement direction.
    pub binomial_pvalue_rejection_rate: f64,
    /// Fraction where the one-sided McNemar test rejects in the improvement
    /// direction.
    pub mcnemar_rejection_rate: f64,
    /// Critical-region power computed from the same equations the test
    /// reports, mixed over the binomial distribution of the discordant count.
    pub analytic_power: f64,
    /// Fraction of replicates whose Wald interval covers the true
    /// control-arm sensitivity.
    pub ci_coverage: f64,
}

/// Run the scenario and aggregate rejection rates and coverage.
pub fn calibrate(scenario: &SimScenario, cfg: &TestConfig) -> Result<CalibrationSummary> {
    scenario.validate()?;
    let positives = scenario.positives();
    let true_sens = scenario.true_control_sensitivity();

    struct Tally {
        crit: u64,
        pval: u64,
        mcnemar: u64,
        cover: u64,
        discordant: u64,
    }

    let tally = (0..scenario.replications)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
            rng.set_stream(rep);
            let t = simulate_mst(scenario, &mut rng);
            let n = t.discordant();
            let mut out = Tally {
                crit: 0,
                pval: 0,
                mcnemar: 0,
                cover: 0,
                discordant: n,
            };
            if n >= 1 {
                let right = t.profit >= t.loss;
                let x = t.profit.max(t.loss);
                if right {
                    if x >= critical_value(n, cfg.alpha_type_i).expect("alpha validated") {
                        out.crit = 1;
                    }
                    if binomial_sf(x, n, 0.5).expect("domain checked") < cfg.alpha_type_i {
                        out.pval = 1;
                    }
                    let chi2 = (t.profit as f64 - t.loss as f64).abs() - 1.0;
                    let chi2 = chi2.powi(2) / n as f64;
                    if chi2_1_survival(chi2) / 2.0 < cfg.alpha_type_i {
                        out.mcnemar = 1;
                    }
                }
            }
            let est = (t.good + t.loss) as f64 / positives.max(1) as f64;
            let w = wald_ci(est, positives.max(1), cfg.confidence).expect("estimate in range");
            if w.lo <= true_sens && true_sens <= w.hi {
                out.cover = 1;
            }
            out
        })
        .reduce(
            || Tally {
                crit: 0,
                pval: 0,
                mcnemar: 0,
                cover: 0,
                discordant: 0,
            },
            |a, b| Tally {
                crit: a.crit + b.crit,
                pval: a.pval + b.pval,
                mcnemar: a.mcnemar + b.mcnemar,
                cover: a.cover + b.cover,
                discordant: a.discordant + b.discordant,
            },
        );

    let reps = scenario.replications as f64;
    Ok(CalibrationSummary {
        replications: scenario.replications,
        seed: scenario.seed,
        positives,
        mean_discordant: tally.discordant as f64 / reps,
        binomial_rejection_rate: tally.crit as f64 / reps,
        binomial_pvalue_rejection_rate: tally.pval as f64 / reps,
        mcnemar_rejection_rate: tally.mcnemar as f64 / reps,
        analytic_power: analytic_critical_region_power(
            positives,
            scenario.p_profit,
            scenario.p_loss,
            cfg,
        )?,
        ci_coverage: tally.cover as f64 / reps,
    })
}

/// Power of the critical-region rule under the scenario: the discordant
/// count n is Binomial(positives, p_profit + p_loss); given n, the profit
/// count is Binomial(n, p1) and the rule rejects when it reaches
/// max(x_alpha(n), floor(n/2) + 1).
pub fn analytic_critical_region_power(
    positives: u64,
    p_profit: f64,
    p_loss: f64,
    cfg: &TestConfig,
) -> Result<f64> {
    let p_discordant = p_profit + p_loss;
    if p_discordant <= 0.0 {
        return Ok(0.0);
    }
    let p1 = p_profit / p_discordant;
    let mut total = 0.0;
    let ln_pd = p_discordant.ln();
    let ln_qd = (1.0 - p_discordant).ln();
    for n in 1..=positives {
        // P(discordant = n)
        let ln_pn = crate::dist::ln_choose(positives, n)
            + n as f64 * ln_pd
            + (positives - n) as f64 * ln_qd;
        let pn = ln_pn.exp();
        if pn < 1e-14 {
            continue;
        }
        let x_crit = critical_value(n, cfg.alpha_type_i)?.max(n / 2 + 1);
        if x_crit > n {
            continue;
        }
        total += pn * binomial_sf(x_crit, n, p1)?;
    }
    Ok(total)
}
