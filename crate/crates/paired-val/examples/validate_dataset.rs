//! Parse a dataset document, check every type invariant and measure box
//! overlap with the Dice score.
//!
//! ```bash
//! cargo run --example validate_dataset
//! ```

use paired_val::{dice, validate_dataset, BoundingBox, StudyDataset};

fn main() -> paired_val::Result<()> {
    let json = r##"{
      "images": [{
        "imageId": "demo", "width": 200, "height": 100,
        "teeth": [
          {"toothId": "t1", "polygon": [[0,0],[100,0],[100,100],[0,100]]},
          {"toothId": "t2", "polygon": [[100,0],[200,0],[200,100],[100,100]]}
        ],
        "groundTruth": [{"anomaly": "caries", "box": [20, 20, 60, 60]}],
        "control": [{"anomaly": "caries", "box": [22, 20, 62, 60], "confidence": 80, "reader": "d1"}],
        "study": [
          {"anomaly": "caries", "box": [20, 20, 60, 60], "confidence": 90, "reader": "d1"},
          {"anomaly": "calculus", "box": [150, 10, 170, 30], "confidence": 35, "reader": "d1"}
        ]
      }]
    }"##;

    // confidence 35 is not on the rating scale: parsing reports the path
    match StudyDataset::from_json_str(json) {
        Err(e) => println!("rejected as expected:\n  {e}\n"),
        Ok(_) => unreachable!("confidence 35 must not parse"),
    }

    let dataset =
        StudyDataset::from_json_str(&json.replace("\"confidence\": 35", "\"confidence\": 40"))?;
    println!(
        "parsed {} image(s), {} teeth",
        dataset.image_count(),
        dataset.tooth_count()
    );
    let violations = validate_dataset(&dataset);
    println!("violations: {}", violations.len());

    // a degenerate box is data, not a parse failure
    let mut broken = dataset.clone();
    broken.images[0].control_annotations[0].bbox = BoundingBox::new(5, 5, 5, 40);
    for v in validate_dataset(&broken) {
        println!("found: {v}");
    }

    let a = BoundingBox::new(0, 0, 10, 10);
    let b = BoundingBox::new(5, 0, 15, 10);
    println!("\ndice(identical)  = {}", dice(&a, &a));
    println!("dice(half shift) = {}", dice(&a, &b));
    println!(
        "dice(disjoint)   = {}",
        dice(&a, &BoundingBox::new(40, 40, 50, 50))
    );
    Ok(())
}
