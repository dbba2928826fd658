//! End-to-end pipeline tests on a small hand-tallied dataset: JSON ingestion,
//! majority voting, classification, matched samples, report assembly and the
//! counts round trip.

use paired_val::{
    build_report, counts_from_dataset, matched_samples, parse_counts_csv, tally, validate_dataset,
    write_counts_csv, AnomalyType, Arm, ConfidenceLabel, CorrelationMode, Endpoint, StudyDataset,
    TestConfig,
};

/// Two images, four teeth. Image one carries explicit ground truth that the
/// control reader misses and the study reader finds (plus a study-arm
/// calculus false alarm); image two resolves its ground truth by majority
/// vote, which the control reader finds and the study reader misses.
pub fn small_dataset_json() -> &'static str {
    r##"{
      "images": [
        {
          "imageId": "img-1", "width": 100, "height": 100,
          "teeth": [
            {"toothId": "t1", "polygon": [[0,0],[50,0],[50,100],[0,100]]},
            {"toothId": "t2", "polygon": [[50,0],[100,0],[100,100],[50,100]]}
          ],
          "groundTruth": [{"anomaly": "caries", "box": [10, 10, 30, 30]}],
          "control": [],
          "study": [
            {"anomaly": "caries", "box": [10, 10, 30, 30], "confidence": 60, "reader": "d1"},
            {"anomaly": "calculus", "box": [60, 10, 80, 30], "confidence": 50, "reader": "d1"}
          ]
        },
        {
          "imageId": "img-2", "width": 100, "height": 100,
          "teeth": [
            {"toothId": "u1", "polygon": [[0,0],[50,0],[50,100],[0,100]]},
            {"toothId": "u2", "polygon": [[50,0],[100,0],[100,100],[50,100]]}
          ],
          "expertSets": [
            [{"anomaly": "caries", "box": [5, 5, 25, 25], "reader": "e1"}],
            [{"anomaly": "caries", "box": [7, 5, 27, 25], "reader": "e2"}],
            []
          ],
          "control": [{"anomaly": "caries", "box": [6, 5, 26, 25], "confidence": 100, "reader": "d2"}],
          "study": []
        }
      ]
    }"##
}

fn dataset() -> StudyDataset {
    let ds = StudyDataset::from_json_str(small_dataset_json()).unwrap();
    assert!(validate_dataset(&ds).is_empty());
    ds
}

#[test]
fn hand_tallied_counts() {
    let ds = dataset();
    let t50 = ConfidenceLabel::new(50).unwrap();
    let control = tally(&ds, Arm::Control, AnomalyType::Caries, t50, 0.25).unwrap();
    assert_eq!(
        (control.tp, control.fp, control.tn, control.fn_),
        (1, 0, 2, 1)
    );
    let study = tally(&ds, Arm::Study, AnomalyType::Caries, t50, 0.25).unwrap();
    assert_eq!((study.tp, study.fp, study.tn, study.fn_), (1, 0, 2, 1));
    // the study-arm calculus false alarm lands on t2 only
    let calculus = tally(&ds, Arm::Study, AnomalyType::Calculus, t50, 0.25).unwrap();
    assert_eq!(
        (calculus.tp, calculus.fp, calculus.tn, calculus.fn_),
        (0, 1, 3, 0)
    );
}

#[test]
fn majority_vote_box_flows_into_classification() {
    let ds = dataset();
    let gt = paired_val::resolve_ground_truth(&ds.images[1], 0.25).unwrap();
    assert_eq!(gt.len(), 1);
    // coordinate-wise mean of the two expert boxes
    assert_eq!(
        (
            gt[0].bbox.x_min,
            gt[0].bbox.y_min,
            gt[0].bbox.x_max,
            gt[0].bbox.y_max
        ),
        (6, 5, 26, 25)
    );
}

#[test]
fn matched_samples_discordance() {
    let ds = dataset();
    let t50 = ConfidenceLabel::new(50).unwrap();
    let sens = matched_samples(&ds, AnomalyType::Caries, Endpoint::Sensitivity, t50, 0.25).unwrap();
    assert_eq!((sens.good, sens.profit, sens.loss, sens.bad), (0, 1, 1, 0));
    let spec = matched_samples(&ds, AnomalyType::Caries, Endpoint::Specificity, t50, 0.25).unwrap();
    assert_eq!((spec.good, spec.profit, spec.loss, spec.bad), (2, 0, 0, 0));
}

#[test]
fn raising_threshold_drops_the_study_detection() {
    let ds = dataset();
    let t70 = ConfidenceLabel::new(70).unwrap();
    // at 70% the study-arm caries annotation (confidence 60) disappears
    let study = tally(&ds, Arm::Study, AnomalyType::Caries, t70, 0.25).unwrap();
    assert_eq!((study.tp, study.fn_), (0, 2));
}

#[test]
fn dataset_report_with_warnings_and_round_trip() {
    let ds = dataset();
    let t50 = ConfidenceLabel::new(50).unwrap();
    let (counts, warnings) = counts_from_dataset(&ds, t50, 0.25).unwrap();
    // only caries has both positive and negative teeth
    assert_eq!(counts.len(), 1);
    assert_eq!(warnings.len(), 5);
    let cfg = TestConfig::default();
    let report = build_report(&counts, &cfg, CorrelationMode::Table).unwrap();
    // caries specificity has no discordant pairs: the stats row is omitted
    assert_eq!(report.stats_sens.len(), 1);
    assert!(report.stats_spec.is_empty());
    assert!(report.warnings.iter().any(|w| w.contains("specificity")));
    // symmetric sens discordance: chi2 = (|1-1|-1)^2 / 2 = 0.5
    assert!((report.stats_sens[0].1.chi2 - 0.5).abs() < 1e-12);
    assert!(!report.stats_sens[0].1.reject_h0);
    // LROC curves were built from the dataset
    assert_eq!(report.auc_rows.len(), 1);

    // counts CSV round trip reproduces the shared tables
    let csv = write_counts_csv(&counts);
    let reparsed = parse_counts_csv(&csv).unwrap();
    let roundtrip = build_report(&reparsed, &cfg, CorrelationMode::Table).unwrap();
    assert_eq!(report.endpoint, roundtrip.endpoint);
    assert_eq!(report.stats_sens, roundtrip.stats_sens);
    assert_eq!(report.stats_spec, roundtrip.stats_spec);
}

#[test]
fn curves_reflect_threshold_structure() {
    let ds = dataset();
    let study = paired_val::build_lroc(&ds, Arm::Study, AnomalyType::Caries, 0.25).unwrap();
    // thresholds 100..70 miss the confidence-60 detection, 60..10 catch it
    assert_eq!(study.points[0].sens, 0.0);
    assert_eq!(study.points.last().unwrap().sens, 0.5);
    for w in study.points.windows(2) {
        assert!(w[1].sens >= w[0].sens);
        assert!(w[1].fpr >= w[0].fpr);
    }
}

#[test]
fn confidence_zero_study_annotation_equals_absence() {
    // the same dataset with an extra confidence-0 study annotation must
    // produce identical counts
    let with_zero = small_dataset_json().replace(
        r#"{"anomaly": "calculus", "box": [60, 10, 80, 30], "confidence": 50, "reader": "d1"}"#,
        r#"{"anomaly": "calculus", "box": [60, 10, 80, 30], "confidence": 50, "reader": "d1"},
           {"anomaly": "bone_loss", "box": [40, 40, 60, 60], "confidence": 0, "reader": "d1"}"#,
    );
    let a = dataset();
    let b = StudyDataset::from_json_str(&with_zero).unwrap();
    let t = ConfidenceLabel::new(10).unwrap();
    for anomaly in AnomalyType::ALL {
        assert_eq!(
            tally(&a, Arm::Study, anomaly, t, 0.25).unwrap(),
            tally(&b, Arm::Study, anomaly, t, 0.25).unwrap()
        );
    }
}
