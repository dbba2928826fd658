//! Resolve ground truth from three expert annotation sets by two-out-of-three
//! majority voting.
//!
//! ```bash
//! cargo run --example majority_vote
//! ```

use paired_val::{
    majority_vote_ground_truth, Annotation, AnomalyType, Arm, BoundingBox, ConfidenceLabel,
};

fn expert_box(anomaly: AnomalyType, bbox: BoundingBox, reader: &str) -> Annotation {
    Annotation {
        anomaly,
        bbox,
        confidence: ConfidenceLabel::FULL,
        arm: Arm::Control,
        reader_id: reader.into(),
    }
}

fn main() -> paired_val::Result<()> {
    let expert_sets = vec![
        vec![
            expert_box(AnomalyType::Caries, BoundingBox::new(10, 10, 40, 40), "e1"),
            expert_box(
                AnomalyType::BoneLoss,
                BoundingBox::new(100, 10, 160, 60),
                "e1",
            ),
        ],
        vec![
            expert_box(AnomalyType::Caries, BoundingBox::new(12, 10, 42, 40), "e2"),
            // e2 sees calculus where nobody else does
            expert_box(
                AnomalyType::Calculus,
                BoundingBox::new(200, 200, 230, 230),
                "e2",
            ),
        ],
        vec![expert_box(
            AnomalyType::BoneLoss,
            BoundingBox::new(104, 12, 164, 62),
            "e3",
        )],
    ];

    let ground_truth = majority_vote_ground_truth(&expert_sets, 0.25)?;
    println!("{} instance(s) win the vote:", ground_truth.len());
    for inst in &ground_truth {
        println!(
            "  {:18} box [{}, {}, {}, {}]  (coordinate-wise mean of the supporters)",
            inst.anomaly.to_string(),
            inst.bbox.x_min,
            inst.bbox.y_min,
            inst.bbox.x_max,
            inst.bbox.y_max
        );
    }
    println!("\nthe single-expert calculus annotation is dropped: one vote is not a majority");
    Ok(())
}
