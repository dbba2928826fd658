//! Acceptance suite: every criterion of the validation battery runs at its
//! stated tolerance and prints one pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use paired_val::fixture::{
    PrintedP, PRINTED_AUC, PRINTED_AUC_DIFF, PRINTED_ENDPOINT, PRINTED_ENDPOINT_AVERAGE,
    PRINTED_STATS_SENS, PRINTED_STATS_SPEC,
};
use paired_val::{
    binomial_test, build_lroc, calibrate, compare_aucs, counts_from_fixture, f_beta, mcnemar_test,
    reproduce_paper, trapezoid_area, Annotation, AnomalyType, Arm, BoundingBox, ConfidenceLabel,
    CorrelationMode, GroundTruthInstance, ImageRecord, PaperFixture, SimScenario, StudyDataset,
    TestConfig, ToothRegion,
};

fn conclude(criterion: u32, description: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS - {description}");
    } else {
        println!("criterion {criterion}: FAIL - {description}");
        panic!(
            "criterion {criterion}: {} deviation(s)\n{}",
            failures.len(),
            failures.join("\n")
        );
    }
}

fn check(failures: &mut Vec<String>, label: String, got: f64, want: f64, tol: f64) {
    if (got - want).abs() > tol + 1e-12 {
        failures.push(format!(
            "  {label}: got {got:.6} want {want:.6} (tol {tol})"
        ));
    }
}

#[test]
fn acceptance_01_endpoint_table_reproduction() {
    let fixture = PaperFixture::embedded();
    let table = paired_val::endpoint_table(&fixture.matrices(), &TestConfig::default()).unwrap();
    let mut failures = Vec::new();
    for (row, printed) in table.rows.iter().zip(PRINTED_ENDPOINT.iter()) {
        for (cell, got, want) in [
            ("sens_c", row.sens_control.estimate, printed.sens_control),
            ("sens_s", row.sens_study.estimate, printed.sens_study),
            ("spec_c", row.spec_control.estimate, printed.spec_control),
            ("spec_s", row.spec_study.estimate, printed.spec_study),
        ] {
            check(
                &mut failures,
                format!("{} {cell}", row.label),
                got * 100.0,
                want,
                0.05,
            );
        }
    }
    let avg = table.average.as_ref().expect("average row");
    for (cell, got, want) in [
        (
            "sens_c",
            avg.sens_control.estimate,
            PRINTED_ENDPOINT_AVERAGE.sens_control,
        ),
        (
            "sens_s",
            avg.sens_study.estimate,
            PRINTED_ENDPOINT_AVERAGE.sens_study,
        ),
        (
            "spec_c",
            avg.spec_control.estimate,
            PRINTED_ENDPOINT_AVERAGE.spec_control,
        ),
        (
            "spec_s",
            avg.spec_study.estimate,
            PRINTED_ENDPOINT_AVERAGE.spec_study,
        ),
    ] {
        check(
            &mut failures,
            format!("Average {cell}"),
            got * 100.0,
            want,
            0.05,
        );
    }
    conclude(
        1,
        "endpoint table: 6 anomalies x 2 arms + average within 0.05 pp",
        failures,
    );
}

#[test]
fn acceptance_02_wald_ci_reproduction() {
    let fixture = PaperFixture::embedded();
    let table = paired_val::endpoint_table(&fixture.matrices(), &TestConfig::default()).unwrap();
    let mut failures = Vec::new();
    let rows = table.rows.iter().zip(PRINTED_ENDPOINT.iter()).chain(
        table
            .average
            .iter()
            .zip(std::iter::once(&PRINTED_ENDPOINT_AVERAGE)),
    );
    for (row, printed) in rows {
        for (cell, w, want) in [
            ("sens ci c", &row.sens_control, printed.sens_ci_control),
            ("sens ci s", &row.sens_study, printed.sens_ci_study),
            ("spec ci c", &row.spec_control, printed.spec_ci_control),
            ("spec ci s", &row.spec_study, printed.spec_ci_study),
        ] {
            check(
                &mut failures,
                format!("{} {cell} lo", row.label),
                w.lo * 100.0,
                want.0,
                0.1,
            );
            check(
                &mut failures,
                format!("{} {cell} hi", row.label),
                w.hi * 100.0,
                want.1,
                0.1,
            );
        }
    }
    // the clipped root-canal study upper bound is printed as exactly 100
    let rc = &table.rows[2];
    assert_eq!(
        rc.sens_study.hi, 1.0,
        "root canal upper bound must clip to 100%"
    );
    conclude(
        2,
        "all 24 printed sensitivity/specificity 95% CIs within 0.1 pp",
        failures,
    );
}

#[test]
fn acceptance_03_mcnemar_reproduction() {
    let fixture = PaperFixture::embedded();
    let cfg = TestConfig::default();
    let mut failures = Vec::new();
    for (f, printed_sens, printed_spec) in fixture
        .anomalies
        .iter()
        .zip(PRINTED_STATS_SENS.iter())
        .map(|(f, s)| {
            (
                f,
                s,
                &PRINTED_STATS_SPEC[fixture
                    .anomalies
                    .iter()
                    .position(|x| x.anomaly == f.anomaly)
                    .unwrap()],
            )
        })
    {
        let sens = mcnemar_test(&f.mst_sens, &cfg).unwrap();
        let spec = mcnemar_test(&f.mst_spec, &cfg).unwrap();
        check(
            &mut failures,
            format!("{} sens chi2", f.anomaly),
            sens.chi2,
            printed_sens.chi2,
            0.05,
        );
        check(
            &mut failures,
            format!("{} spec chi2", f.anomaly),
            spec.chi2,
            printed_spec.chi2,
            0.05,
        );
        check(
            &mut failures,
            format!("{} sens s(chi2)", f.anomaly),
            sens.p_one_sided * 100.0,
            printed_sens.s_chi2_pct,
            0.02,
        );
        check(
            &mut failures,
            format!("{} spec s(chi2)", f.anomaly),
            spec.p_one_sided * 100.0,
            printed_spec.s_chi2_pct,
            0.02,
        );
    }
    conclude(
        3,
        "all 12 chi-squared values within 0.05 and significances within 0.02 pp",
        failures,
    );
}

#[test]
fn acceptance_04_binomial_test_reproduction() {
    let fixture = PaperFixture::embedded();
    let cfg = TestConfig::default();
    let mut failures = Vec::new();
    for (i, f) in fixture.anomalies.iter().enumerate() {
        for (endpoint, mst, printed) in [
            ("sens", &f.mst_sens, &PRINTED_STATS_SENS[i]),
            ("spec", &f.mst_spec, &PRINTED_STATS_SPEC[i]),
        ] {
            let r = binomial_test(mst, &cfg).unwrap();
            check(
                &mut failures,
                format!("{} {endpoint} s(x)", f.anomaly),
                r.p_one_sided * 100.0,
                printed.s_x_pct,
                0.02,
            );
            check(
                &mut failures,
                format!("{} {endpoint} x_alpha", f.anomaly),
                r.x_alpha as f64,
                printed.x_alpha as f64,
                0.0,
            );
            check(
                &mut failures,
                format!("{} {endpoint} e_II", f.anomaly),
                r.e_type_ii * 100.0,
                printed.e_type_ii_pct,
                0.1,
            );
            check(
                &mut failures,
                format!("{} {endpoint} power", f.anomaly),
                r.power * 100.0,
                printed.power_pct,
                0.1,
            );
        }
    }
    conclude(
        4,
        "all 12 binomial significances, critical values, Type-II errors and powers",
        failures,
    );
}

#[test]
fn acceptance_05_auc_machinery() {
    let fixture = PaperFixture::embedded();
    let cfg = TestConfig::default();
    let mut failures = Vec::new();
    // 12 intervals from the printed areas with P, N
    for (f, printed) in fixture.anomalies.iter().zip(PRINTED_AUC.iter()) {
        let p = f.control.positives();
        let n = f.control.negatives();
        for (arm, a, want) in [
            ("control", f.auc_control, printed.ci_control),
            ("study", f.auc_study, printed.ci_study),
        ] {
            let s = paired_val::auc_stats(a, p, n, cfg.confidence).unwrap();
            check(
                &mut failures,
                format!("{} {arm} ci lo", f.anomaly),
                s.lo,
                want.0,
                0.005,
            );
            check(
                &mut failures,
                format!("{} {arm} ci hi", f.anomaly),
                s.hi,
                want.1,
                0.005,
            );
        }
    }
    // 6 z-hat values through the embedded correlation grid
    for (f, printed) in fixture.anomalies.iter().zip(PRINTED_AUC_DIFF.iter()) {
        let cmp = compare_aucs(
            f.auc_control,
            f.auc_study,
            f.control.positives(),
            f.control.negatives(),
            &f.mst_sens,
            &f.mst_spec,
            &cfg,
            CorrelationMode::Table,
        )
        .unwrap();
        check(
            &mut failures,
            format!("{} z_hat", f.anomaly),
            cmp.z_hat,
            printed.z_hat,
            0.5,
        );
        if let PrintedP::Value(want) = printed.p {
            let ratio = cmp.p_one_sided / want;
            if !(0.1..=10.0).contains(&ratio) {
                failures.push(format!(
                    "  {} p: got {:.3e} want {want:.3e} (one order of magnitude)",
                    f.anomaly, cmp.p_one_sided
                ));
            }
        }
    }
    conclude(
        5,
        "AUC machinery: 12 intervals within 0.005, 6 z-hat within 0.5, nonzero p within one order",
        failures,
    );
}

#[test]
fn acceptance_06_mcnemar_binomial_agreement() {
    let fixture = PaperFixture::embedded();
    let cfg = TestConfig::default();
    let mut failures = Vec::new();
    for f in &fixture.anomalies {
        for (endpoint, mst) in [("sens", &f.mst_sens), ("spec", &f.mst_spec)] {
            let mc = mcnemar_test(mst, &cfg).unwrap();
            let bi = binomial_test(mst, &cfg).unwrap();
            let gap = (mc.p_one_sided - bi.p_one_sided).abs() * 100.0;
            if gap > 0.5 {
                failures.push(format!(
                    "  {} {endpoint}: |s(chi2) - s(x)| = {gap:.3} pp",
                    f.anomaly
                ));
            }
        }
    }
    conclude(
        6,
        "McNemar and binomial p-values agree within 0.5 pp on all 12 tables",
        failures,
    );
}

/// Direct-summation oracle, written independently of the log-space kernels.
fn binomial_sf_oracle(x: u64, n: u64, p: f64) -> f64 {
    let mut sum = 0.0;
    for k in x..=n {
        let mut c = 1.0f64;
        for i in 0..k.min(n - k) {
            c = c * (n - i) as f64 / (i + 1) as f64;
        }
        sum += c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
    }
    sum
}

/// Deterministic micro-dataset generator for the classification oracle.
fn micro_dataset(rng: &mut impl rand::Rng) -> ImageRecord {
    let teeth = vec![
        ToothRegion {
            tooth_id: "t1".into(),
            polygon: vec![(0, 0), (33, 0), (33, 100), (0, 100)],
        },
        ToothRegion {
            tooth_id: "t2".into(),
            polygon: vec![(33, 0), (66, 0), (66, 100), (33, 100)],
        },
        ToothRegion {
            tooth_id: "t3".into(),
            polygon: vec![(66, 0), (100, 0), (100, 100), (66, 100)],
        },
    ];
    let random_box = |rng: &mut dyn rand::RngCore| {
        let x = rng.next_u64() as i64 % 85;
        let y = rng.next_u64() as i64 % 60;
        let w = 8 + (rng.next_u64() % 15) as i64;
        let h = 8 + (rng.next_u64() % 30) as i64;
        BoundingBox::new(x, y, (x + w).min(100), (y + h).min(100))
    };
    let n_gt = rng.random_range(0..3);
    let n_ann = rng.random_range(0..5);
    let ground_truth = (0..n_gt)
        .map(|_| GroundTruthInstance {
            anomaly: AnomalyType::ALL[rng.random_range(0..3)],
            bbox: random_box(rng),
        })
        .collect();
    let control_annotations = (0..n_ann)
        .map(|_| Annotation {
            anomaly: AnomalyType::ALL[rng.random_range(0..3)],
            bbox: random_box(rng),
            confidence: ConfidenceLabel::new(rng.random_range(1..=10) * 10).unwrap(),
            arm: Arm::Control,
            reader_id: "r".into(),
        })
        .collect();
    ImageRecord {
        image_id: "micro".into(),
        width: 100,
        height: 100,
        teeth,
        ground_truth: Some(ground_truth),
        expert_sets: None,
        control_annotations,
        study_annotations: vec![],
    }
}

/// Rule-by-rule evaluation of the strict class order, independent of
/// classify_teeth's bookkeeping.
fn classify_rule_oracle(
    image: &ImageRecord,
    anomaly: AnomalyType,
    threshold: ConfidenceLabel,
) -> Vec<paired_val::ClassLabel> {
    use paired_val::ClassLabel::*;
    let gts: Vec<GroundTruthInstance> = image
        .ground_truth
        .clone()
        .unwrap()
        .into_iter()
        .filter(|g| g.anomaly == anomaly)
        .collect();
    let kept: Vec<Annotation> = image
        .control_annotations
        .iter()
        .filter(|a| a.anomaly == anomaly && a.confidence >= threshold)
        .cloned()
        .collect();
    let matching = paired_val::match_instances(&kept, &gts, 0.25);
    image
        .teeth
        .iter()
        .map(|tooth| {
            let on_tooth = |b: &BoundingBox| {
                paired_val::assign_to_teeth(b, &image.teeth)
                    .unwrap()
                    .contains(&tooth.tooth_id)
            };
            if matching
                .unmatched_references
                .iter()
                .any(|&ri| on_tooth(&gts[ri].bbox))
            {
                FalseNegative
            } else if matching
                .pairs
                .iter()
                .any(|&(_, ri, _)| on_tooth(&gts[ri].bbox))
            {
                TruePositive
            } else if matching
                .unmatched_candidates
                .iter()
                .any(|&ci| on_tooth(&kept[ci].bbox))
            {
                FalsePositive
            } else {
                TrueNegative
            }
        })
        .collect()
}

#[test]
fn acceptance_07_oracle_equivalence() {
    use rand::SeedableRng;
    let mut failures = Vec::new();
    // binomial tails against direct summation, every (x, n) with n <= 100
    for n in 1u64..=100 {
        for x in 0..=n {
            for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let want = binomial_sf_oracle(x, n, p);
                if want < 1e-280 {
                    continue;
                }
                let got = paired_val::dist::binomial_sf(x, n, p).unwrap();
                if (got - want).abs() > want * 1e-9 {
                    failures.push(format!(
                        "  binomial_sf({x}, {n}, {p}): got {got:.12e} want {want:.12e}"
                    ));
                }
            }
        }
    }
    // classification against the exhaustive rule oracle on 1000 random
    // micro datasets
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    use rand::Rng;
    for case in 0..1000 {
        let image = micro_dataset(&mut rng);
        let anomaly = AnomalyType::ALL[rng.random_range(0..3)];
        let threshold = ConfidenceLabel::new(rng.random_range(1..=10) * 10).unwrap();
        let got: Vec<_> =
            paired_val::classify_teeth(&image, Arm::Control, anomaly, threshold, 0.25)
                .unwrap()
                .into_iter()
                .map(|c| c.label)
                .collect();
        let want = classify_rule_oracle(&image, anomaly, threshold);
        if got != want {
            failures.push(format!("  micro case {case}: {got:?} vs oracle {want:?}"));
        }
    }
    conclude(7, "binomial tails at 1e-9 relative for n <= 100; classification matches the rule oracle on 1000 micro datasets", failures);
}

#[test]
fn acceptance_08_monte_carlo_calibration() {
    let cfg = TestConfig::default();
    let mut failures = Vec::new();
    let null = SimScenario {
        n_teeth: 1346,
        prevalence: 0.25,
        p_profit: 0.12,
        p_loss: 0.12,
        replications: 10_000,
        seed: 20_240_001,
    };
    let s = calibrate(&null, &cfg).unwrap();
    for (label, rate) in [
        ("critical-region", s.binomial_rejection_rate),
        ("p-value", s.binomial_pvalue_rejection_rate),
    ] {
        if !(0.035..=0.065).contains(&rate) {
            failures.push(format!(
                "  null {label} Type-I rate {rate:.4} outside [0.035, 0.065]"
            ));
        }
    }
    // the continuity correction keeps McNemar conservative
    let band = 0.05 + 2.576 * (0.05f64 * 0.95 / 10_000.0).sqrt();
    if s.mcnemar_rejection_rate > band {
        failures.push(format!(
            "  null McNemar rate {:.4} above alpha + 99% band {band:.4}",
            s.mcnemar_rejection_rate
        ));
    }
    if !(0.93..=0.97).contains(&s.ci_coverage) {
        failures.push(format!(
            "  null CI coverage {:.4} outside 0.95 +/- 0.02",
            s.ci_coverage
        ));
    }
    // three alternative scenarios: empirical power within 3 pp of analytic
    let alternatives = [
        SimScenario {
            n_teeth: 1346,
            prevalence: 0.10,
            p_profit: 0.0867,
            p_loss: 0.0096,
            replications: 10_000,
            seed: 20_240_002,
        },
        SimScenario {
            n_teeth: 1346,
            prevalence: 0.25,
            p_profit: 0.10,
            p_loss: 0.05,
            replications: 10_000,
            seed: 20_240_003,
        },
        SimScenario {
            n_teeth: 1346,
            prevalence: 0.50,
            p_profit: 0.06,
            p_loss: 0.04,
            replications: 10_000,
            seed: 20_240_004,
        },
    ];
    for (i, alt) in alternatives.iter().enumerate() {
        let s = calibrate(alt, &cfg).unwrap();
        let gap = (s.binomial_rejection_rate - s.analytic_power).abs();
        if gap > 0.03 {
            failures.push(format!(
                "  alternative {i}: empirical {:.4} vs analytic {:.4} (gap {gap:.4})",
                s.binomial_rejection_rate, s.analytic_power
            ));
        }
        if !(0.93..=0.97).contains(&s.ci_coverage) {
            failures.push(format!("  alternative {i}: coverage {:.4}", s.ci_coverage));
        }
    }
    conclude(8, "Type-I in [0.035, 0.065], power within 3 pp of analytic on 3 scenarios, coverage 0.95 +/- 0.02", failures);
}

#[test]
fn acceptance_09_out_of_scope_checks() {
    let mut failures = Vec::new();
    // the network's own metrics are out of scope except the F-score arithmetic
    let f2 = f_beta(0.467, 0.816, 2.0).unwrap();
    check(&mut failures, "F2(0.467, 0.816)".into(), f2, 0.706, 0.005);

    // curve-construction properties stand in for the unpublished per-threshold
    // counts: monotone operating points, flat extension, trapezoid oracle
    let confidences: Vec<u8> = vec![100, 90, 80, 70, 60, 50, 40, 30, 20, 10, 70, 50, 90];
    let images: Vec<ImageRecord> = confidences
        .iter()
        .enumerate()
        .map(|(i, &conf)| {
            let gt_box = BoundingBox::new(5, 5, 25, 25);
            ImageRecord {
                image_id: format!("img{i}"),
                width: 100,
                height: 100,
                teeth: vec![
                    ToothRegion {
                        tooth_id: "p".into(),
                        polygon: vec![(0, 0), (50, 0), (50, 100), (0, 100)],
                    },
                    ToothRegion {
                        tooth_id: "n".into(),
                        polygon: vec![(50, 0), (100, 0), (100, 100), (50, 100)],
                    },
                ],
                ground_truth: Some(vec![GroundTruthInstance {
                    anomaly: AnomalyType::Caries,
                    bbox: gt_box,
                }]),
                expert_sets: None,
                control_annotations: vec![
                    Annotation {
                        anomaly: AnomalyType::Caries,
                        bbox: gt_box,
                        confidence: ConfidenceLabel::new(conf).unwrap(),
                        arm: Arm::Control,
                        reader_id: "r".into(),
                    },
                    Annotation {
                        anomaly: AnomalyType::Caries,
                        bbox: BoundingBox::new(60, 60, 80, 80),
                        confidence: ConfidenceLabel::new(conf).unwrap(),
                        arm: Arm::Control,
                        reader_id: "r".into(),
                    },
                ],
                study_annotations: vec![],
            }
        })
        .collect();
    let ds = StudyDataset::new(images);
    let curve = build_lroc(&ds, Arm::Control, AnomalyType::Caries, 0.25).unwrap();
    for w in curve.points.windows(2) {
        if w[1].fpr < w[0].fpr - 1e-12 || w[1].sens < w[0].sens - 1e-12 {
            failures.push(format!(
                "  operating points not monotone: ({}, {}) -> ({}, {})",
                w[0].fpr, w[0].sens, w[1].fpr, w[1].sens
            ));
        }
    }
    let polyline = curve.polyline();
    let last_point = *polyline.last().unwrap();
    let last_sens = curve.points.last().unwrap().sens;
    if last_point != (1.0, last_sens) {
        failures.push(format!(
            "  flat extension missing: polyline ends at {last_point:?}"
        ));
    }
    if curve.auc > last_sens + 1e-12 {
        failures.push(format!(
            "  auc {} exceeds flat-extension bound {last_sens}",
            curve.auc
        ));
    }
    // independent trapezoid re-derivation
    let mut hand = 0.0;
    for w in polyline.windows(2) {
        hand += (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0;
    }
    check(
        &mut failures,
        "trapezoid vs hand sum".into(),
        trapezoid_area(&polyline).unwrap(),
        hand,
        1e-12,
    );
    check(
        &mut failures,
        "curve auc vs hand sum".into(),
        curve.auc,
        hand,
        1e-12,
    );
    conclude(
        9,
        "F2 arithmetic check and curve-construction properties",
        failures,
    );
}

/// Round trip: counts CSV written by the tally path and re-ingested must
/// produce the identical statistical battery.
#[test]
fn counts_round_trip_preserves_report() {
    let counts = counts_from_fixture(&PaperFixture::embedded());
    let csv = paired_val::write_counts_csv(&counts);
    let reparsed = paired_val::parse_counts_csv(&csv).unwrap();
    let cfg = TestConfig::default();
    let direct = paired_val::build_report(&counts, &cfg, CorrelationMode::Table).unwrap();
    let roundtrip = paired_val::build_report(&reparsed, &cfg, CorrelationMode::Table).unwrap();
    // AUC sections differ (counts CSV carries no areas); the shared tables
    // must agree exactly
    assert_eq!(direct.endpoint, roundtrip.endpoint);
    assert_eq!(direct.stats_sens, roundtrip.stats_sens);
    assert_eq!(direct.stats_spec, roundtrip.stats_spec);
}

/// The reproduction diff is expected to flag exactly the cells whose printed
/// counterparts were computed from unrounded areas: four interval bounds,
/// one averaged bound and the marginal-defect z statistic. Everything else
/// must match. The two-decimal quantization of the published areas moves
/// those bounds by up to 0.008 and the marginal-defect difference (printed
/// 0.47 vs unrounded 0.48) shifts its z by ~0.5 on its own, which no
/// correlation table can compensate.
#[test]
fn reproduce_paper_deviations_are_the_known_quantization_cells() {
    let rep = reproduce_paper(&TestConfig::default(), CorrelationMode::Table).unwrap();
    let got: Vec<String> = rep
        .mismatches
        .iter()
        .map(|m| format!("{}/{}/{}", m.table, m.row, m.cell))
        .collect();
    let expected = [
        "auc/Root canal defect/ci_control_lo",
        "auc/Marginal defect/ci_study_hi",
        "auc/Bone loss/ci_control_lo",
        "auc/Calculus/ci_study_hi",
        "auc/Average/ci_study_lo",
        "auc_diff/Marginal defect/z_hat",
    ];
    for e in expected {
        assert!(
            got.iter().any(|g| g == e),
            "expected known mismatch {e}, got {got:?}"
        );
    }
    assert_eq!(
        got.len(),
        expected.len(),
        "unexpected extra mismatches: {got:?}"
    );
}
