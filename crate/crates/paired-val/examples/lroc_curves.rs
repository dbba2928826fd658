//! Build localization-ROC curves from confidence-threshold operating points
//! and export them as CSV and SVG.
//!
//! ```bash
//! cargo run --example lroc_curves
//! ```

use paired_val::{
    build_lroc, curve_to_csv, curves_to_svg, trapezoid_area, AnomalyType, Arm, StudyDataset,
};

/// A synthetic study where the helper clearly boosts detection: study-arm
/// confidences are shifted upward and misses recovered.
fn synthetic_dataset() -> StudyDataset {
    let mut images = String::from(r#"{"images": ["#);
    // (control confidence or 0 = missed, study confidence)
    let readings: [(u8, u8); 12] = [
        (100, 100),
        (90, 100),
        (70, 90),
        (0, 80),
        (50, 90),
        (0, 70),
        (30, 60),
        (60, 80),
        (0, 50),
        (20, 40),
        (80, 90),
        (0, 30),
    ];
    for (i, (c, s)) in readings.iter().enumerate() {
        if i > 0 {
            images.push(',');
        }
        let control = if *c == 0 {
            String::new()
        } else {
            format!(
                r#"{{"anomaly": "caries", "box": [10, 10, 40, 40], "confidence": {c}, "reader": "d"}}"#
            )
        };
        // every image also carries one low-grade study-arm false alarm
        let study = format!(
            r#"{{"anomaly": "caries", "box": [10, 10, 40, 40], "confidence": {s}, "reader": "d"}},
               {{"anomaly": "caries", "box": [60, 60, 80, 80], "confidence": 20, "reader": "d"}}"#
        );
        images.push_str(&format!(
            r#"{{
              "imageId": "img-{i}", "width": 100, "height": 100,
              "teeth": [
                {{"toothId": "p{i}", "polygon": [[0,0],[50,0],[50,100],[0,100]]}},
                {{"toothId": "n{i}", "polygon": [[50,0],[100,0],[100,100],[50,100]]}}
              ],
              "groundTruth": [{{"anomaly": "caries", "box": [10, 10, 40, 40]}}],
              "control": [{control}],
              "study": [{study}]
            }}"#
        ));
    }
    images.push_str("]}");
    StudyDataset::from_json_str(&images).expect("synthetic dataset parses")
}

fn main() -> paired_val::Result<()> {
    let dataset = synthetic_dataset();
    let control = build_lroc(&dataset, Arm::Control, AnomalyType::Caries, 0.25)?;
    let study = build_lroc(&dataset, Arm::Study, AnomalyType::Caries, 0.25)?;

    for curve in [&control, &study] {
        println!("{} arm: AUC = {:.3}", curve.arm, curve.auc);
        println!("  threshold   fpr    sens");
        for p in &curve.points {
            println!(
                "  {:>8}  {:.3}  {:.3}",
                p.threshold.to_string(),
                p.fpr,
                p.sens
            );
        }
        // the polyline is anchored at (0,0) and flattened out to fpr = 1
        let polyline = curve.polyline();
        assert_eq!(polyline.first(), Some(&(0.0, 0.0)));
        assert_eq!(polyline.last().map(|p| p.0), Some(1.0));
        assert!((trapezoid_area(&polyline)? - curve.auc).abs() < 1e-12);
    }

    let out = std::env::temp_dir().join("paired_val_lroc_demo");
    std::fs::create_dir_all(&out)?;
    std::fs::write(out.join("caries_control.csv"), curve_to_csv(&control))?;
    std::fs::write(out.join("caries_study.csv"), curve_to_csv(&study))?;
    std::fs::write(out.join("caries.svg"), curves_to_svg(&[&control, &study]))?;
    println!("\nwrote CSV + SVG under {}", out.display());
    Ok(())
}
