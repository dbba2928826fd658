//! Instance correspondence, majority-vote ground truth, tooth assignment and
//! the strict per-tooth classification feeding all statistics.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    dice, Annotation, AnomalyType, Arm, BoundingBox, ConfidenceLabel, GroundTruthInstance,
    ImageRecord, StudyDataset, ToothRegion,
};

/// Default Dice threshold for instance correspondence. CLI-configurable.
pub const DEFAULT_MIN_DICE: f64 = 0.25;

/// Tooth-level class. Strict priority when several instance kinds land on the
/// same tooth: FalseNegative > TruePositive > FalsePositive > TrueNegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassLabel {
    TruePositive,
    FalsePositive,
    TrueNegative,
    FalseNegative,
}

/// Per-tooth, per-anomaly-type, per-arm label at one operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToothClassification {
    pub image_id: String,
    pub tooth_id: String,
    pub anomaly: AnomalyType,
    pub arm: Arm,
    pub label: ClassLabel,
    pub threshold: ConfidenceLabel,
}

/// 2x2 confusion counts over all teeth, for one anomaly type and one arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionMatrix {
    pub anomaly: AnomalyType,
    pub arm: Arm,
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    pub fn_: u64,
}

impl DecisionMatrix {
    pub fn new(anomaly: AnomalyType, arm: Arm, tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        Self {
            anomaly,
            arm,
            tp,
            fp,
            tn,
            fn_,
        }
    }

    /// |P| = |TP| + |FN|: teeth carrying a ground-truth anomaly of this type.
    pub fn positives(&self) -> u64 {
        self.tp + self.fn_
    }

    /// |N| = |TN| + |FP|.
    pub fn negatives(&self) -> u64 {
        self.tn + self.fp
    }

    pub fn total(&self) -> u64 {
        self.positives() + self.negatives()
    }
}

/// Which margin of the decision matrix a matched sample table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Sensitivity,
    Specificity,
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Endpoint::Sensitivity => "sensitivity",
            Endpoint::Specificity => "specificity",
        })
    }
}

/// Joint (control, study) outcome counts on the same teeth.
///
/// For sensitivity the table is restricted to ground-truth-positive teeth:
/// `good` = detected in both arms, `profit` = gained detections (control FN,
/// study TP), `loss` = lost detections, `bad` = missed in both. For
/// specificity the same roles apply to the ground-truth-negative teeth with
/// TN/FP in place of TP/FN.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedSampleTable {
    pub anomaly: AnomalyType,
    pub endpoint: Endpoint,
    pub good: u64,
    pub profit: u64,
    pub loss: u64,
    pub bad: u64,
}

impl MatchedSampleTable {
    pub fn new(
        anomaly: AnomalyType,
        endpoint: Endpoint,
        good: u64,
        profit: u64,
        loss: u64,
        bad: u64,
    ) -> Self {
        Self {
            anomaly,
            endpoint,
            good,
            profit,
            loss,
            bad,
        }
    }

    /// n = |rho| + |lambda|, the discordant sample size of the marginal tests.
    pub fn discordant(&self) -> u64 {
        self.profit + self.loss
    }

    pub fn total(&self) -> u64 {
        self.good + self.profit + self.loss + self.bad
    }
}

/// Result of greedy one-to-one instance correspondence.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    /// (candidate index, reference index, dice) of matched pairs.
    pub pairs: Vec<(usize, usize, f64)>,
    /// Candidate indices left unmatched (false-positive instances).
    pub unmatched_candidates: Vec<usize>,
    /// Reference indices left unmatched (false-negative instances).
    pub unmatched_references: Vec<usize>,
}

/// Greedy one-to-one pairing in descending Dice order among same-type pairs
/// with dice >= `min_dice`. Ties break on (candidate index, reference index),
/// which makes the result order-independent.
pub fn match_instances(
    candidates: &[Annotation],
    references: &[GroundTruthInstance],
    min_dice: f64,
) -> Matching {
    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for (ci, cand) in candidates.iter().enumerate() {
        for (ri, reference) in references.iter().enumerate() {
            if cand.anomaly != reference.anomaly {
                continue;
            }
            let d = dice(&cand.bbox, &reference.bbox);
            if d >= min_dice {
                edges.push((d, ci, ri));
            }
        }
    }
    edges.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut cand_used = vec![false; candidates.len()];
    let mut ref_used = vec![false; references.len()];
    let mut pairs = Vec::new();
    for (d, ci, ri) in edges {
        if !cand_used[ci] && !ref_used[ri] {
            cand_used[ci] = true;
            ref_used[ri] = true;
            pairs.push((ci, ri, d));
        }
    }
    Matching {
        pairs,
        unmatched_candidates: (0..candidates.len()).filter(|&i| !cand_used[i]).collect(),
        unmatched_references: (0..references.len()).filter(|&i| !ref_used[i]).collect(),
    }
}

/// Two-out-of-three majority voting over expert annotation sets.
///
/// Same-type annotations are clustered across experts by pairwise dice >=
/// `min_dice` (transitively); every cluster supported by at least two
/// distinct experts yields one ground-truth instance whose box is the
/// coordinate-wise mean of the supporting boxes, rounded to integers.
pub fn majority_vote_ground_truth(
    expert_sets: &[Vec<Annotation>],
    min_dice: f64,
) -> Result<Vec<GroundTruthInstance>> {
    if expert_sets.len() != 3 {
        return Err(Error::Schema(format!(
            "majority voting requires exactly 3 expert sets, found {}",
            expert_sets.len()
        )));
    }
    // flatten to (expert, annotation) preserving order
    let mut items: Vec<(usize, &Annotation)> = Vec::new();
    for (e, set) in expert_sets.iter().enumerate() {
        for ann in set {
            items.push((e, ann));
        }
    }
    // union-find over same-type overlapping annotations
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            if items[i].1.anomaly != items[j].1.anomaly {
                continue;
            }
            if dice(&items[i].1.bbox, &items[j].1.bbox) >= min_dice {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[rj.max(ri)] = rj.min(ri);
                }
            }
        }
    }
    let mut clusters: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..items.len() {
        let root = find(&mut parent, i);
        clusters.entry(root).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in clusters.values() {
        let experts: BTreeSet<usize> = members.iter().map(|&i| items[i].0).collect();
        if experts.len() < 2 {
            continue;
        }
        let n = members.len() as f64;
        let sum = members.iter().fold((0i64, 0i64, 0i64, 0i64), |acc, &i| {
            let b = items[i].1.bbox;
            (
                acc.0 + b.x_min,
                acc.1 + b.y_min,
                acc.2 + b.x_max,
                acc.3 + b.y_max,
            )
        });
        let round = |v: i64| (v as f64 / n).round() as i64;
        out.push(GroundTruthInstance {
            anomaly: items[members[0]].1.anomaly,
            bbox: BoundingBox::new(round(sum.0), round(sum.1), round(sum.2), round(sum.3)),
        });
    }
    Ok(out)
}

/// All teeth whose polygon overlaps the box with positive area; when none
/// overlaps, the single tooth with minimum centroid distance (ties break on
/// the smaller tooth id).
pub fn assign_to_teeth(bbox: &BoundingBox, teeth: &[ToothRegion]) -> Result<Vec<String>> {
    if teeth.is_empty() {
        return Err(Error::NoRegions(
            "tooth assignment on empty region list".into(),
        ));
    }
    let mut hits: Vec<String> = teeth
        .iter()
        .filter(|t| t.overlap_area(bbox) > 0.0)
        .map(|t| t.tooth_id.clone())
        .collect();
    if hits.is_empty() {
        let (cx, cy) = bbox.center();
        let nearest = teeth
            .iter()
            .min_by(|a, b| {
                let da = {
                    let (x, y) = a.centroid();
                    (x - cx).powi(2) + (y - cy).powi(2)
                };
                let db = {
                    let (x, y) = b.centroid();
                    (x - cx).powi(2) + (y - cy).powi(2)
                };
                da.total_cmp(&db).then(a.tooth_id.cmp(&b.tooth_id))
            })
            .expect("teeth is non-empty");
        hits.push(nearest.tooth_id.clone());
    }
    Ok(hits)
}

/// Resolve the ground truth of an image: either the given instance list or
/// the majority vote over the three expert sets.
pub fn resolve_ground_truth(
    image: &ImageRecord,
    min_dice: f64,
) -> Result<Vec<GroundTruthInstance>> {
    match (&image.ground_truth, &image.expert_sets) {
        (Some(gt), _) => Ok(gt.clone()),
        (None, Some(sets)) => majority_vote_ground_truth(sets, min_dice),
        (None, None) => Err(Error::Schema(format!(
            "image `{}` has neither groundTruth nor expertSets",
            image.image_id
        ))),
    }
}

/// Classify every tooth of an image for one (arm, anomaly) at one operating
/// point.
///
/// Annotations of the arm with this anomaly type and confidence >= threshold
/// are matched one-to-one against the resolved ground-truth instances.
/// Matched ground truth marks its teeth with a true-positive instance,
/// unmatched ground truth with a false-negative instance, and unmatched
/// annotations mark their own teeth with a false-positive instance. Each
/// tooth then takes the worst instance present, in the strict order
/// FN > TP > FP > TN.
pub fn classify_teeth(
    image: &ImageRecord,
    arm: Arm,
    anomaly: AnomalyType,
    threshold: ConfidenceLabel,
    min_dice: f64,
) -> Result<Vec<ToothClassification>> {
    if image.teeth.is_empty() {
        // an image without segmented teeth contributes nothing
        return Ok(Vec::new());
    }
    let ground_truth: Vec<GroundTruthInstance> = resolve_ground_truth(image, min_dice)?
        .into_iter()
        .filter(|g| g.anomaly == anomaly)
        .collect();
    let kept: Vec<Annotation> = image
        .annotations(arm)
        .iter()
        .filter(|a| a.anomaly == anomaly && a.confidence >= threshold)
        .cloned()
        .collect();
    let matching = match_instances(&kept, &ground_truth, min_dice);

    #[derive(Clone, Copy, PartialEq, PartialOrd)]
    enum Mark {
        None,
        FalsePositive,
        TruePositive,
        FalseNegative,
    }
    let mut marks: BTreeMap<&str, Mark> = image
        .teeth
        .iter()
        .map(|t| (t.tooth_id.as_str(), Mark::None))
        .collect();
    let mut apply = |tooth_ids: Vec<String>, mark: Mark| {
        for id in tooth_ids {
            if let Some(slot) = marks.get_mut(id.as_str()) {
                if mark > *slot {
                    *slot = mark;
                }
            }
        }
    };
    for &(_, ri, _) in &matching.pairs {
        apply(
            assign_to_teeth(&ground_truth[ri].bbox, &image.teeth)?,
            Mark::TruePositive,
        );
    }
    for &ri in &matching.unmatched_references {
        apply(
            assign_to_teeth(&ground_truth[ri].bbox, &image.teeth)?,
            Mark::FalseNegative,
        );
    }
    for &ci in &matching.unmatched_candidates {
        apply(
            assign_to_teeth(&kept[ci].bbox, &image.teeth)?,
            Mark::FalsePositive,
        );
    }

    Ok(image
        .teeth
        .iter()
        .map(|t| ToothClassification {
            image_id: image.image_id.clone(),
            tooth_id: t.tooth_id.clone(),
            anomaly,
            arm,
            label: match marks[t.tooth_id.as_str()] {
                Mark::FalseNegative => ClassLabel::FalseNegative,
                Mark::TruePositive => ClassLabel::TruePositive,
                Mark::FalsePositive => ClassLabel::FalsePositive,
                Mark::None => ClassLabel::TrueNegative,
            },
            threshold,
        })
        .collect())
}

/// Tooth-based categorized counts over the whole dataset.
pub fn tally(
    dataset: &StudyDataset,
    arm: Arm,
    anomaly: AnomalyType,
    threshold: ConfidenceLabel,
    min_dice: f64,
) -> Result<DecisionMatrix> {
    let mut dm = DecisionMatrix::new(anomaly, arm, 0, 0, 0, 0);
    for image in &dataset.images {
        for c in classify_teeth(image, arm, anomaly, threshold, min_dice)? {
            match c.label {
                ClassLabel::TruePositive => dm.tp += 1,
                ClassLabel::FalsePositive => dm.fp += 1,
                ClassLabel::TrueNegative => dm.tn += 1,
                ClassLabel::FalseNegative => dm.fn_ += 1,
            }
        }
    }
    Ok(dm)
}

/// Joint (control, study) counts on identical (image, tooth) keys, restricted
/// to ground-truth-positive teeth for sensitivity and ground-truth-negative
/// teeth for specificity.
pub fn matched_samples(
    dataset: &StudyDataset,
    anomaly: AnomalyType,
    endpoint: Endpoint,
    threshold: ConfidenceLabel,
    min_dice: f64,
) -> Result<MatchedSampleTable> {
    let mut table = MatchedSampleTable::new(anomaly, endpoint, 0, 0, 0, 0);
    for image in &dataset.images {
        let control = classify_teeth(image, Arm::Control, anomaly, threshold, min_dice)?;
        let study = classify_teeth(image, Arm::Study, anomaly, threshold, min_dice)?;
        if control.len() != study.len() {
            return Err(Error::UnpairedData(format!(
                "image `{}`: {} control teeth vs {} study teeth",
                image.image_id,
                control.len(),
                study.len()
            )));
        }
        for (c, s) in control.iter().zip(study.iter()) {
            if c.tooth_id != s.tooth_id {
                return Err(Error::UnpairedData(format!(
                    "image `{}`: tooth keys diverge at `{}` vs `{}`",
                    image.image_id, c.tooth_id, s.tooth_id
                )));
            }
            // ground-truth membership is arm-independent, so positive teeth
            // carry TP/FN labels in both arms and negative teeth TN/FP
            use ClassLabel::*;
            let c_pos = matches!(c.label, TruePositive | FalseNegative);
            let s_pos = matches!(s.label, TruePositive | FalseNegative);
            if c_pos != s_pos {
                return Err(Error::UnpairedData(format!(
                    "image `{}` tooth `{}`: arms disagree on ground truth",
                    image.image_id, c.tooth_id
                )));
            }
            match endpoint {
                Endpoint::Sensitivity => {
                    if c_pos {
                        match (c.label, s.label) {
                            (TruePositive, TruePositive) => table.good += 1,
                            (FalseNegative, TruePositive) => table.profit += 1,
                            (TruePositive, FalseNegative) => table.loss += 1,
                            (FalseNegative, FalseNegative) => table.bad += 1,
                            _ => unreachable!(),
                        }
                    }
                }
                Endpoint::Specificity => {
                    if !c_pos {
                        match (c.label, s.label) {
                            (TrueNegative, TrueNegative) => table.good += 1,
                            (FalsePositive, TrueNegative) => table.profit += 1,
                            (TrueNegative, FalsePositive) => table.loss += 1,
                            (FalsePositive, FalsePositive) => table.bad += 1,
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bb(x0: i64, y0: i64, x1: i64, y1: i64) -> BoundingBox {
        BoundingBox::new(x0, y0, x1, y1)
    }

    fn ann(anomaly: AnomalyType, bbox: BoundingBox, confidence: u8, arm: Arm) -> Annotation {
        Annotation {
            anomaly,
            bbox,
            confidence: ConfidenceLabel::new(confidence).unwrap(),
            arm,
            reader_id: "r".into(),
        }
    }

    fn gt(anomaly: AnomalyType, bbox: BoundingBox) -> GroundTruthInstance {
        GroundTruthInstance { anomaly, bbox }
    }

    #[test]
    fn match_identity() {
        let cands = vec![ann(AnomalyType::Caries, bb(0, 0, 10, 10), 80, Arm::Control)];
        let refs = vec![gt(AnomalyType::Caries, bb(0, 0, 10, 10))];
        let m = match_instances(&cands, &refs, 0.25);
        assert_eq!(m.pairs, vec![(0, 0, 1.0)]);
        assert!(m.unmatched_candidates.is_empty());
        assert!(m.unmatched_references.is_empty());
    }

    #[test]
    fn match_requires_same_type() {
        let cands = vec![ann(
            AnomalyType::Calculus,
            bb(0, 0, 10, 10),
            80,
            Arm::Control,
        )];
        let refs = vec![gt(AnomalyType::Caries, bb(0, 0, 10, 10))];
        let m = match_instances(&cands, &refs, 0.25);
        assert!(m.pairs.is_empty());
        assert_eq!(m.unmatched_candidates, vec![0]);
        assert_eq!(m.unmatched_references, vec![0]);
    }

    #[test]
    fn match_prefers_higher_dice() {
        // dice 0.8: |A|=|B|=10x10, inter = 80 -> boxes offset by 2 columns
        // dice 0.6: offset by 4 columns
        let refs = vec![gt(AnomalyType::Caries, bb(0, 0, 10, 10))];
        let cands = vec![
            ann(AnomalyType::Caries, bb(4, 0, 14, 10), 80, Arm::Control), // dice 0.6
            ann(AnomalyType::Caries, bb(2, 0, 12, 10), 80, Arm::Control), // dice 0.8
        ];
        let m = match_instances(&cands, &refs, 0.25);
        assert_eq!(m.pairs.len(), 1);
        assert_eq!(m.pairs[0].0, 1);
        assert!((m.pairs[0].2 - 0.8).abs() < 1e-12);
        assert_eq!(m.unmatched_candidates, vec![0]);
    }

    /// Brute force over all one-to-one pairings maximizing total dice.
    fn best_total_dice(cands: &[Annotation], refs: &[GroundTruthInstance], min_dice: f64) -> f64 {
        fn rec(
            cands: &[Annotation],
            refs: &[GroundTruthInstance],
            min_dice: f64,
            ci: usize,
            used: &mut Vec<bool>,
        ) -> f64 {
            if ci == cands.len() {
                return 0.0;
            }
            // skip this candidate
            let mut best = rec(cands, refs, min_dice, ci + 1, used);
            for ri in 0..refs.len() {
                if used[ri] || cands[ci].anomaly != refs[ri].anomaly {
                    continue;
                }
                let d = dice(&cands[ci].bbox, &refs[ri].bbox);
                if d < min_dice {
                    continue;
                }
                used[ri] = true;
                best = best.max(d + rec(cands, refs, min_dice, ci + 1, used));
                used[ri] = false;
            }
            best
        }
        rec(cands, refs, min_dice, 0, &mut vec![false; refs.len()])
    }

    #[test]
    fn greedy_agrees_with_bruteforce_on_two_over_one() {
        let refs = vec![gt(AnomalyType::Caries, bb(0, 0, 10, 10))];
        let cands = vec![
            ann(AnomalyType::Caries, bb(2, 0, 12, 10), 80, Arm::Control),
            ann(AnomalyType::Caries, bb(4, 0, 14, 10), 80, Arm::Control),
        ];
        let m = match_instances(&cands, &refs, 0.25);
        let total: f64 = m.pairs.iter().map(|p| p.2).sum();
        assert!((total - best_total_dice(&cands, &refs, 0.25)).abs() < 1e-12);
    }

    #[test]
    fn majority_vote_unanimous() {
        let b = bb(10, 10, 30, 30);
        let sets = vec![
            vec![ann(AnomalyType::Caries, b, 100, Arm::Control)],
            vec![ann(AnomalyType::Caries, b, 100, Arm::Control)],
            vec![ann(AnomalyType::Caries, b, 100, Arm::Control)],
        ];
        let gt = majority_vote_ground_truth(&sets, 0.25).unwrap();
        assert_eq!(gt.len(), 1);
        assert_eq!(gt[0].bbox, b);
    }

    #[test]
    fn majority_vote_single_expert_is_dropped() {
        let sets = vec![
            vec![ann(
                AnomalyType::Caries,
                bb(10, 10, 30, 30),
                100,
                Arm::Control,
            )],
            vec![],
            vec![],
        ];
        assert!(majority_vote_ground_truth(&sets, 0.25).unwrap().is_empty());
    }

    #[test]
    fn majority_vote_two_of_three_mean_box() {
        // A and B draw overlapping boxes (dice 0.9), C nothing
        let a = bb(0, 0, 20, 10);
        let b = bb(1, 0, 21, 10); // inter 19x10=190, dice = 2*190/400 = 0.95
        let sets = vec![
            vec![ann(AnomalyType::BoneLoss, a, 100, Arm::Control)],
            vec![ann(AnomalyType::BoneLoss, b, 100, Arm::Control)],
            vec![],
        ];
        let gt = majority_vote_ground_truth(&sets, 0.25).unwrap();
        assert_eq!(gt.len(), 1);
        // coordinate-wise mean, rounded half-up: x_min (0+1)/2 = 0.5 -> 1
        assert_eq!(gt[0].bbox, bb(1, 0, 21, 10));
    }

    #[test]
    fn majority_vote_requires_three_sets() {
        assert!(majority_vote_ground_truth(&[vec![], vec![]], 0.25).is_err());
    }

    /// Exhaustive cluster enumeration oracle for up to 3 single-annotation
    /// experts of one type: any pair with dice >= t forms/extends a cluster.
    #[test]
    fn majority_vote_matches_exhaustive_enumeration() {
        let boxes = [bb(0, 0, 10, 10), bb(2, 0, 12, 10), bb(30, 30, 40, 40)];
        // pairwise dice: (0,1) = 0.8, others 0 -> clusters {0,1}, {2}
        let sets: Vec<Vec<Annotation>> = boxes
            .iter()
            .map(|b| vec![ann(AnomalyType::Caries, *b, 100, Arm::Control)])
            .collect();
        let gt = majority_vote_ground_truth(&sets, 0.25).unwrap();
        // only the {0,1} cluster has 2 experts
        assert_eq!(gt.len(), 1);
        assert_eq!(gt[0].bbox, bb(1, 0, 11, 10));
    }

    fn two_teeth() -> Vec<ToothRegion> {
        vec![
            ToothRegion {
                tooth_id: "t1".into(),
                polygon: vec![(0, 0), (10, 0), (10, 20), (0, 20)],
            },
            ToothRegion {
                tooth_id: "t2".into(),
                polygon: vec![(10, 0), (20, 0), (20, 20), (10, 20)],
            },
        ]
    }

    #[test]
    fn assign_inside_single_tooth() {
        let ids = assign_to_teeth(&bb(2, 2, 8, 8), &two_teeth()).unwrap();
        assert_eq!(ids, vec!["t1"]);
    }

    #[test]
    fn assign_straddling_box_hits_both() {
        // polygon-clipping oracle: overlap with t1 = 6x10 = 60, t2 = 6x10 = 60
        let teeth = two_teeth();
        let b = bb(4, 5, 16, 15);
        assert_eq!(teeth[0].overlap_area(&b), 60.0);
        assert_eq!(teeth[1].overlap_area(&b), 60.0);
        let ids = assign_to_teeth(&b, &teeth).unwrap();
        assert_eq!(ids, vec!["t1", "t2"]);
    }

    #[test]
    fn assign_gap_falls_back_to_nearest_centroid() {
        let teeth = vec![
            ToothRegion {
                tooth_id: "a".into(),
                polygon: vec![(0, 0), (10, 0), (10, 20), (0, 20)],
            },
            ToothRegion {
                tooth_id: "b".into(),
                polygon: vec![(20, 0), (30, 0), (30, 20), (20, 20)],
            },
        ];
        // centroids a = (5, 10), b = (25, 10); box center (14, 5):
        // d^2(a) = 81 + 25 = 106, d^2(b) = 121 + 25 = 146 -> a
        let ids = assign_to_teeth(&bb(11, 0, 17, 10), &teeth).unwrap();
        assert_eq!(ids, vec!["a"]);
    }

    #[test]
    fn assign_empty_regions_errors() {
        assert!(matches!(
            assign_to_teeth(&bb(0, 0, 1, 1), &[]),
            Err(Error::NoRegions(_))
        ));
    }

    fn image_with(
        gt_boxes: Vec<(AnomalyType, BoundingBox)>,
        control: Vec<Annotation>,
        study: Vec<Annotation>,
    ) -> ImageRecord {
        ImageRecord {
            image_id: "img".into(),
            width: 100,
            height: 100,
            teeth: vec![
                ToothRegion {
                    tooth_id: "t1".into(),
                    polygon: vec![(0, 0), (50, 0), (50, 100), (0, 100)],
                },
                ToothRegion {
                    tooth_id: "t2".into(),
                    polygon: vec![(50, 0), (100, 0), (100, 100), (50, 100)],
                },
            ],
            ground_truth: Some(gt_boxes.into_iter().map(|(a, b)| gt(a, b)).collect()),
            expert_sets: None,
            control_annotations: control,
            study_annotations: study,
        }
    }

    #[test]
    fn tooth_with_tp_and_extra_fp_is_tp() {
        let image = image_with(
            vec![(AnomalyType::Caries, bb(5, 5, 15, 15))],
            vec![
                ann(AnomalyType::Caries, bb(5, 5, 15, 15), 80, Arm::Control),
                ann(AnomalyType::Caries, bb(30, 30, 40, 40), 80, Arm::Control),
            ],
            vec![],
        );
        let labels = classify_teeth(
            &image,
            Arm::Control,
            AnomalyType::Caries,
            ConfidenceLabel::new(50).unwrap(),
            0.25,
        )
        .unwrap();
        assert_eq!(labels[0].label, ClassLabel::TruePositive);
        assert_eq!(labels[1].label, ClassLabel::TrueNegative);
    }

    #[test]
    fn missed_instance_dominates_matched_one() {
        let image = image_with(
            vec![
                (AnomalyType::Caries, bb(5, 5, 15, 15)),
                (AnomalyType::Caries, bb(20, 60, 30, 70)),
            ],
            vec![ann(AnomalyType::Caries, bb(5, 5, 15, 15), 80, Arm::Control)],
            vec![],
        );
        let labels = classify_teeth(
            &image,
            Arm::Control,
            AnomalyType::Caries,
            ConfidenceLabel::new(50).unwrap(),
            0.25,
        )
        .unwrap();
        assert_eq!(labels[0].label, ClassLabel::FalseNegative);
    }

    #[test]
    fn empty_tooth_is_tn() {
        let image = image_with(vec![], vec![], vec![]);
        let labels = classify_teeth(
            &image,
            Arm::Control,
            AnomalyType::Caries,
            ConfidenceLabel::new(50).unwrap(),
            0.25,
        )
        .unwrap();
        assert!(labels.iter().all(|c| c.label == ClassLabel::TrueNegative));
    }

    #[test]
    fn tally_empty_dataset_is_all_zeros() {
        let ds = StudyDataset::new(vec![]);
        let dm = tally(
            &ds,
            Arm::Control,
            AnomalyType::Caries,
            ConfidenceLabel::new(50).unwrap(),
            0.25,
        )
        .unwrap();
        assert_eq!((dm.tp, dm.fp, dm.tn, dm.fn_), (0, 0, 0, 0));
    }

    #[test]
    fn matched_samples_small_dataset() {
        // t1 positive: control misses (FN), study detects (TP) -> profit
        // t2 negative: control clean (TN), study false alarm (FP) -> loss
        let image = image_with(
            vec![(AnomalyType::Caries, bb(5, 5, 15, 15))],
            vec![],
            vec![
                ann(AnomalyType::Caries, bb(5, 5, 15, 15), 90, Arm::Study),
                ann(AnomalyType::Caries, bb(60, 60, 80, 80), 60, Arm::Study),
            ],
        );
        let ds = StudyDataset::new(vec![image]);
        let t = ConfidenceLabel::new(50).unwrap();
        let sens =
            matched_samples(&ds, AnomalyType::Caries, Endpoint::Sensitivity, t, 0.25).unwrap();
        assert_eq!((sens.good, sens.profit, sens.loss, sens.bad), (0, 1, 0, 0));
        let spec =
            matched_samples(&ds, AnomalyType::Caries, Endpoint::Specificity, t, 0.25).unwrap();
        assert_eq!((spec.good, spec.profit, spec.loss, spec.bad), (0, 0, 1, 0));
        // margins against the per-arm tallies
        let dmc = tally(&ds, Arm::Control, AnomalyType::Caries, t, 0.25).unwrap();
        let dms = tally(&ds, Arm::Study, AnomalyType::Caries, t, 0.25).unwrap();
        assert_eq!(sens.good + sens.loss, dmc.tp);
        assert_eq!(sens.good + sens.profit, dms.tp);
        assert_eq!(spec.good + spec.loss, dmc.tn);
        assert_eq!(spec.good + spec.profit, dms.tn);
    }

    // ---- randomized micro-dataset machinery -------------------------------

    fn micro_annotation(seedless: (u8, u8, u8, u8), arm: Arm) -> Annotation {
        let (kind, pos, size, conf) = seedless;
        let anomaly = AnomalyType::ALL[kind as usize % 3];
        let x = (pos as i64 % 5) * 18;
        let w = 8 + (size as i64 % 3) * 6;
        ann(
            anomaly,
            bb(x, 10, (x + w).min(99), 40),
            (conf % 10 + 1) * 10,
            arm,
        )
    }

    fn micro_image(
        gt_spec: Vec<(u8, u8, u8)>,
        control_spec: Vec<(u8, u8, u8, u8)>,
        study_spec: Vec<(u8, u8, u8, u8)>,
    ) -> ImageRecord {
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
        let gts = gt_spec
            .into_iter()
            .map(|(kind, pos, size)| {
                let anomaly = AnomalyType::ALL[kind as usize % 3];
                let x = (pos as i64 % 5) * 18;
                let w = 8 + (size as i64 % 3) * 6;
                gt(anomaly, bb(x, 10, (x + w).min(99), 40))
            })
            .collect();
        ImageRecord {
            image_id: "m".into(),
            width: 100,
            height: 100,
            teeth,
            ground_truth: Some(gts),
            expert_sets: None,
            control_annotations: control_spec
                .into_iter()
                .map(|s| micro_annotation(s, Arm::Control))
                .collect(),
            study_annotations: study_spec
                .into_iter()
                .map(|s| micro_annotation(s, Arm::Study))
                .collect(),
        }
    }

    /// Rule-by-rule oracle: evaluate the strict class order for one tooth
    /// directly from the instance sets, independent of classify_teeth's
    /// bookkeeping.
    fn classify_oracle(
        image: &ImageRecord,
        arm: Arm,
        anomaly: AnomalyType,
        threshold: ConfidenceLabel,
        min_dice: f64,
    ) -> Vec<ClassLabel> {
        let gts: Vec<GroundTruthInstance> = image
            .ground_truth
            .clone()
            .unwrap()
            .into_iter()
            .filter(|g| g.anomaly == anomaly)
            .collect();
        let kept: Vec<Annotation> = image
            .annotations(arm)
            .iter()
            .filter(|a| a.anomaly == anomaly && a.confidence >= threshold)
            .cloned()
            .collect();
        let m = match_instances(&kept, &gts, min_dice);
        image
            .teeth
            .iter()
            .map(|tooth| {
                let on_tooth = |b: &BoundingBox| {
                    assign_to_teeth(b, &image.teeth)
                        .unwrap()
                        .contains(&tooth.tooth_id)
                };
                let any_fn = m
                    .unmatched_references
                    .iter()
                    .any(|&ri| on_tooth(&gts[ri].bbox));
                let any_tp = m.pairs.iter().any(|&(_, ri, _)| on_tooth(&gts[ri].bbox));
                let any_fp = m
                    .unmatched_candidates
                    .iter()
                    .any(|&ci| on_tooth(&kept[ci].bbox));
                if any_fn {
                    ClassLabel::FalseNegative
                } else if any_tp {
                    ClassLabel::TruePositive
                } else if any_fp {
                    ClassLabel::FalsePositive
                } else {
                    ClassLabel::TrueNegative
                }
            })
            .collect()
    }

    proptest! {
        /// classify_teeth agrees with the exhaustive rule oracle on random
        /// micro datasets (<= 3 teeth, <= 4 annotations).
        #[test]
        fn classification_matches_rule_oracle(
            gt_spec in proptest::collection::vec((0u8..6, 0u8..6, 0u8..4), 0..3),
            control_spec in proptest::collection::vec((0u8..6, 0u8..6, 0u8..4, 0u8..10), 0..5),
            kind in 0u8..3,
            thr in 1u8..10,
        ) {
            let image = micro_image(gt_spec, control_spec, vec![]);
            let anomaly = AnomalyType::ALL[kind as usize];
            let threshold = ConfidenceLabel::new(thr * 10).unwrap();
            let got: Vec<ClassLabel> =
                classify_teeth(&image, Arm::Control, anomaly, threshold, 0.25)
                    .unwrap().into_iter().map(|c| c.label).collect();
            let want = classify_oracle(&image, Arm::Control, anomaly, threshold, 0.25);
            prop_assert_eq!(got, want);
        }

        /// Raising the threshold never increases |TP| or |FP|.
        #[test]
        fn threshold_monotonicity(
            gt_spec in proptest::collection::vec((0u8..6, 0u8..6, 0u8..4), 0..3),
            control_spec in proptest::collection::vec((0u8..6, 0u8..6, 0u8..4, 0u8..10), 0..5),
            kind in 0u8..3,
            lo in 1u8..9,
        ) {
            let image = micro_image(gt_spec, control_spec, vec![]);
            let ds = StudyDataset::new(vec![image]);
            let anomaly = AnomalyType::ALL[kind as usize];
            let t_lo = ConfidenceLabel::new(lo * 10).unwrap();
            let t_hi = ConfidenceLabel::new((lo + 1) * 10).unwrap();
            let dm_lo = tally(&ds, Arm::Control, anomaly, t_lo, 0.25).unwrap();
            let dm_hi = tally(&ds, Arm::Control, anomaly, t_hi, 0.25).unwrap();
            prop_assert!(dm_hi.tp <= dm_lo.tp, "tp {} -> {}", dm_lo.tp, dm_hi.tp);
            prop_assert!(dm_hi.fp <= dm_lo.fp, "fp {} -> {}", dm_lo.fp, dm_hi.fp);
        }

        /// Adding a false-negative instance to a tooth can only drive its
        /// label to FalseNegative, never away from it.
        #[test]
        fn fn_priority_is_absorbing(
            gt_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4), 0..3),
            control_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4, 0u8..10), 0..4),
            kind in 0u8..3,
            pos in 0u8..6,
        ) {
            let anomaly = AnomalyType::ALL[kind as usize];
            let threshold = ConfidenceLabel::new(50).unwrap();
            let base = micro_image(gt_spec.clone(), control_spec.clone(), vec![]);
            let before: Vec<ClassLabel> =
                classify_teeth(&base, Arm::Control, anomaly, threshold, 0.25)
                    .unwrap().into_iter().map(|c| c.label).collect();
            // drop a fresh unmatched ground-truth instance far from every annotation row
            let mut gt_spec2 = gt_spec;
            gt_spec2.push((kind, pos, 0));
            let mut with_fn = micro_image(gt_spec2, control_spec, vec![]);
            if let Some(gt_list) = with_fn.ground_truth.as_mut() {
                let last = gt_list.last_mut().unwrap();
                last.bbox = bb((pos as i64 % 5) * 18, 60, (pos as i64 % 5) * 18 + 8, 90);
            }
            let after: Vec<ClassLabel> =
                classify_teeth(&with_fn, Arm::Control, anomaly, threshold, 0.25)
                    .unwrap().into_iter().map(|c| c.label).collect();
            for (b, a) in before.iter().zip(after.iter()) {
                if *b == ClassLabel::FalseNegative {
                    prop_assert_eq!(*a, ClassLabel::FalseNegative);
                }
                if a != b {
                    prop_assert_eq!(*a, ClassLabel::FalseNegative);
                }
            }
        }

        /// Every tooth gets exactly one label and the four counts sum to n_t.
        #[test]
        fn counts_partition_teeth(
            gt_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4), 0..3),
            control_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4, 0u8..10), 0..5),
            kind in 0u8..3,
        ) {
            let image = micro_image(gt_spec, control_spec, vec![]);
            let ds = StudyDataset::new(vec![image]);
            let anomaly = AnomalyType::ALL[kind as usize];
            let dm = tally(&ds, Arm::Control, anomaly, ConfidenceLabel::new(50).unwrap(), 0.25).unwrap();
            prop_assert_eq!(dm.total() as usize, ds.tooth_count());
        }

        /// Matched-sample margins reproduce both arms' decision matrices.
        #[test]
        fn mst_margins_match_decision_matrices(
            gt_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4), 0..3),
            control_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4, 0u8..10), 0..4),
            study_spec in proptest::collection::vec((0u8..3, 0u8..6, 0u8..4, 0u8..10), 0..4),
            kind in 0u8..3,
        ) {
            let image = micro_image(gt_spec, control_spec, study_spec);
            let ds = StudyDataset::new(vec![image]);
            let anomaly = AnomalyType::ALL[kind as usize];
            let t = ConfidenceLabel::new(50).unwrap();
            let dmc = tally(&ds, Arm::Control, anomaly, t, 0.25).unwrap();
            let dms = tally(&ds, Arm::Study, anomaly, t, 0.25).unwrap();
            let sens = matched_samples(&ds, anomaly, Endpoint::Sensitivity, t, 0.25).unwrap();
            let spec = matched_samples(&ds, anomaly, Endpoint::Specificity, t, 0.25).unwrap();
            prop_assert_eq!(sens.good + sens.loss, dmc.tp);
            prop_assert_eq!(sens.bad + sens.profit, dmc.fn_);
            prop_assert_eq!(sens.good + sens.profit, dms.tp);
            prop_assert_eq!(sens.bad + sens.loss, dms.fn_);
            prop_assert_eq!(sens.total(), dmc.positives());
            prop_assert_eq!(spec.good + spec.loss, dmc.tn);
            prop_assert_eq!(spec.bad + spec.profit, dmc.fp);
            prop_assert_eq!(spec.good + spec.profit, dms.tn);
            prop_assert_eq!(spec.bad + spec.loss, dms.fp);
            prop_assert_eq!(spec.total(), dmc.negatives());
        }
    }
}
