//! Sensitivity/specificity with Wald confidence intervals, the averaged
//! table row, and the F-beta score.
//!
//! ```bash
//! cargo run --example endpoints_ci
//! ```

use paired_val::{endpoint_table, f_beta, sens_spec, wald_ci, PaperFixture, TestConfig};

fn main() -> paired_val::Result<()> {
    let fixture = PaperFixture::embedded();
    let cfg = TestConfig::default();

    // single-matrix endpoints
    let caries = &fixture.anomalies[0];
    let (sens, spec) = sens_spec(&caries.control)?;
    let ci = wald_ci(sens, caries.control.positives(), cfg.confidence)?;
    println!(
        "caries, unassisted: sens {:.1}% [{:.1}, {:.1}], spec {:.1}%",
        sens * 100.0,
        ci.lo * 100.0,
        ci.hi * 100.0,
        spec * 100.0
    );

    // the full table with its unweighted average row
    let table = endpoint_table(&fixture.matrices(), &cfg)?;
    println!(
        "\n{:18} {:>14} {:>16} {:>14} {:>16}",
        "anomaly", "sens c -> s", "95% CI (study)", "spec c -> s", "95% CI (study)"
    );
    for row in table.rows.iter().chain(table.average.as_ref()) {
        println!(
            "{:18} {:>5.1} -> {:>5.1} [{:>5.1}, {:>5.1}] {:>6.1} -> {:>5.1} [{:>5.1}, {:>5.1}]",
            row.label,
            row.sens_control.estimate * 100.0,
            row.sens_study.estimate * 100.0,
            row.sens_study.lo * 100.0,
            row.sens_study.hi * 100.0,
            row.spec_control.estimate * 100.0,
            row.spec_study.estimate * 100.0,
            row.spec_study.lo * 100.0,
            row.spec_study.hi * 100.0,
        );
    }

    // interval bounds clip: a 93.5% sensitivity on 31 teeth reaches 100%
    let rc = &fixture.anomalies[2];
    let (sens, _) = sens_spec(&rc.study)?;
    let ci = wald_ci(sens, rc.study.positives(), cfg.confidence)?;
    println!(
        "\nroot canal study upper bound clips at {:.0}%",
        ci.hi * 100.0
    );

    // the detector's own tuning metric, sensitivity weighted double
    let f2 = f_beta(0.467, 0.816, 2.0)?;
    println!(
        "F2(precision 46.7%, sensitivity 81.6%) = {:.1}%",
        f2 * 100.0
    );
    Ok(())
}
