//! Domain types for images, tooth regions, annotations, ground truth and
//! study configuration, plus the JSON interchange schema.
//!
//! Boxes are half-open integer-pixel rectangles: a box covers the pixel grid
//! `[x_min, x_max) x [y_min, y_max)`, so `area = (x_max - x_min) * (y_max - y_min)`
//! and a brute-force pixel count reproduces every overlap quantity exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six anomaly categories of the study. Closed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnomalyType {
    Caries,
    ApicalLesion,
    RootCanalDefect,
    MarginalDefect,
    BoneLoss,
    Calculus,
}

impl AnomalyType {
    pub const ALL: [AnomalyType; 6] = [
        AnomalyType::Caries,
        AnomalyType::ApicalLesion,
        AnomalyType::RootCanalDefect,
        AnomalyType::MarginalDefect,
        AnomalyType::BoneLoss,
        AnomalyType::Calculus,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            AnomalyType::Caries => "Caries",
            AnomalyType::ApicalLesion => "Apical lesion",
            AnomalyType::RootCanalDefect => "Root canal defect",
            AnomalyType::MarginalDefect => "Marginal defect",
            AnomalyType::BoneLoss => "Bone loss",
            AnomalyType::Calculus => "Calculus",
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            AnomalyType::Caries => "caries",
            AnomalyType::ApicalLesion => "apical_lesion",
            AnomalyType::RootCanalDefect => "root_canal_defect",
            AnomalyType::MarginalDefect => "marginal_defect",
            AnomalyType::BoneLoss => "bone_loss",
            AnomalyType::Calculus => "calculus",
        }
    }
}

impl std::fmt::Display for AnomalyType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for AnomalyType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AnomalyType::ALL
            .iter()
            .copied()
            .find(|a| a.key() == s)
            .ok_or_else(|| Error::Schema(format!("unknown anomaly type `{s}`")))
    }
}

/// Which reading of the image an annotation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arm {
    /// Unassisted reading.
    Control,
    /// AI-assisted reading.
    Study,
}

impl std::fmt::Display for Arm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Arm::Control => "control",
            Arm::Study => "study",
        })
    }
}

/// Axis-aligned half-open rectangle in image pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x_min: i64,
    pub y_min: i64,
    pub x_max: i64,
    pub y_max: i64,
}

impl BoundingBox {
    pub fn new(x_min: i64, y_min: i64, x_max: i64, y_max: i64) -> Self {
        Self {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.x_min < self.x_max && self.y_min < self.y_max
    }

    pub fn area(&self) -> i64 {
        (self.x_max - self.x_min).max(0) * (self.y_max - self.y_min).max(0)
    }

    pub fn intersection_area(&self, other: &BoundingBox) -> i64 {
        let w = self.x_max.min(other.x_max) - self.x_min.max(other.x_min);
        let h = self.y_max.min(other.y_max) - self.y_min.max(other.y_min);
        if w <= 0 || h <= 0 {
            0
        } else {
            w * h
        }
    }

    pub fn center(&self) -> (f64, f64) {
        (
            (self.x_min + self.x_max) as f64 / 2.0,
            (self.y_min + self.y_max) as f64 / 2.0,
        )
    }

    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        Self::new(
            self.x_min + dx,
            self.y_min + dy,
            self.x_max + dx,
            self.y_max + dy,
        )
    }

    fn within(&self, width: u32, height: u32) -> bool {
        self.x_min >= 0
            && self.y_min >= 0
            && self.x_max <= width as i64
            && self.y_max <= height as i64
    }
}

/// Dice overlap of two boxes: 2·|A∩B| / (|A| + |B|).
pub fn dice(a: &BoundingBox, b: &BoundingBox) -> f64 {
    let denom = a.area() + b.area();
    if denom == 0 {
        return 0.0;
    }
    2.0 * a.intersection_area(b) as f64 / denom as f64
}

/// Confidence rating in percent; multiples of 10 within [0, 100].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct ConfidenceLabel(u8);

impl ConfidenceLabel {
    pub const ZERO: ConfidenceLabel = ConfidenceLabel(0);
    pub const FULL: ConfidenceLabel = ConfidenceLabel(100);

    pub fn new(percent: u8) -> Result<Self> {
        if percent > 100 || !percent.is_multiple_of(10) {
            return Err(Error::Schema(format!(
                "confidence {percent} is not a multiple of 10 in [0, 100]"
            )));
        }
        Ok(ConfidenceLabel(percent))
    }

    pub fn value(&self) -> u8 {
        self.0
    }

    /// The ten ROC operating thresholds, descending: 100, 90, ..., 10.
    pub fn thresholds_descending() -> impl Iterator<Item = ConfidenceLabel> {
        (1..=10).rev().map(|k| ConfidenceLabel(k * 10))
    }
}

impl TryFrom<u8> for ConfidenceLabel {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        ConfidenceLabel::new(v)
    }
}

impl From<ConfidenceLabel> for u8 {
    fn from(c: ConfidenceLabel) -> u8 {
        c.0
    }
}

impl std::fmt::Display for ConfidenceLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}%", self.0)
    }
}

/// One drawn or predicted anomaly box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub anomaly: AnomalyType,
    #[serde(rename = "box")]
    pub bbox: BoundingBox,
    pub confidence: ConfidenceLabel,
    pub arm: Arm,
    pub reader_id: String,
}

/// A resolved ground-truth anomaly instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthInstance {
    pub anomaly: AnomalyType,
    #[serde(rename = "box")]
    pub bbox: BoundingBox,
}

/// A segmented tooth region: simple polygon in pixel coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToothRegion {
    pub tooth_id: String,
    pub polygon: Vec<(i64, i64)>,
}

impl ToothRegion {
    /// Signed doubled area of the polygon (shoelace).
    fn signed_area_2(&self) -> f64 {
        let n = self.polygon.len();
        let mut s = 0.0;
        for i in 0..n {
            let (x0, y0) = self.polygon[i];
            let (x1, y1) = self.polygon[(i + 1) % n];
            s += (x0 * y1 - x1 * y0) as f64;
        }
        s
    }

    pub fn area(&self) -> f64 {
        self.signed_area_2().abs() / 2.0
    }

    pub fn centroid(&self) -> (f64, f64) {
        let n = self.polygon.len();
        let a2 = self.signed_area_2();
        if a2.abs() < f64::EPSILON {
            // degenerate: fall back to vertex mean
            let (sx, sy) = self.polygon.iter().fold((0.0, 0.0), |(sx, sy), &(x, y)| {
                (sx + x as f64, sy + y as f64)
            });
            return (sx / n as f64, sy / n as f64);
        }
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let (x0, y0) = self.polygon[i];
            let (x1, y1) = self.polygon[(i + 1) % n];
            let cross = (x0 * y1 - x1 * y0) as f64;
            cx += (x0 + x1) as f64 * cross;
            cy += (y0 + y1) as f64 * cross;
        }
        (cx / (3.0 * a2), cy / (3.0 * a2))
    }

    /// Area of polygon ∩ box via Sutherland–Hodgman clipping against the four
    /// box half-planes.
    pub fn overlap_area(&self, bbox: &BoundingBox) -> f64 {
        let mut poly: Vec<(f64, f64)> = self
            .polygon
            .iter()
            .map(|&(x, y)| (x as f64, y as f64))
            .collect();
        // inside predicates for the four edges, counter-clockwise
        let edges: [Box<dyn Fn(f64, f64) -> f64>; 4] = [
            Box::new(|x, _| x - bbox.x_min as f64),
            Box::new(|_, y| y - bbox.y_min as f64),
            Box::new(|x, _| bbox.x_max as f64 - x),
            Box::new(|_, y| bbox.y_max as f64 - y),
        ];
        for inside in edges.iter() {
            if poly.is_empty() {
                return 0.0;
            }
            let mut out = Vec::with_capacity(poly.len() + 4);
            for i in 0..poly.len() {
                let (x0, y0) = poly[i];
                let (x1, y1) = poly[(i + 1) % poly.len()];
                let d0 = inside(x0, y0);
                let d1 = inside(x1, y1);
                if d0 >= 0.0 {
                    out.push((x0, y0));
                }
                if (d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0) {
                    let t = d0 / (d0 - d1);
                    out.push((x0 + t * (x1 - x0), y0 + t * (y1 - y0)));
                }
            }
            poly = out;
        }
        if poly.len() < 3 {
            return 0.0;
        }
        let mut s = 0.0;
        for i in 0..poly.len() {
            let (x0, y0) = poly[i];
            let (x1, y1) = poly[(i + 1) % poly.len()];
            s += x0 * y1 - x1 * y0;
        }
        s.abs() / 2.0
    }

    /// True when no two non-adjacent edges intersect.
    pub fn is_simple(&self) -> bool {
        let n = self.polygon.len();
        if n < 3 {
            return false;
        }
        let seg = |i: usize| (self.polygon[i], self.polygon[(i + 1) % n]);
        for i in 0..n {
            for j in (i + 1)..n {
                // skip adjacent edges (shared vertex)
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                if segments_intersect(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

fn segments_intersect(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// One radiograph with its segmented teeth, ground truth (given directly or
/// as three expert sets for majority voting) and the two arms' annotations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub image_id: String,
    pub width: u32,
    pub height: u32,
    pub teeth: Vec<ToothRegion>,
    pub ground_truth: Option<Vec<GroundTruthInstance>>,
    pub expert_sets: Option<Vec<Vec<Annotation>>>,
    pub control_annotations: Vec<Annotation>,
    pub study_annotations: Vec<Annotation>,
}

impl ImageRecord {
    pub fn annotations(&self, arm: Arm) -> &[Annotation] {
        match arm {
            Arm::Control => &self.control_annotations,
            Arm::Study => &self.study_annotations,
        }
    }
}

/// The full study: every image plus the derived size counts.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StudyDataset {
    pub images: Vec<ImageRecord>,
    /// Image count declared by the document, when present.
    pub declared_images: Option<usize>,
    /// Tooth count declared by the document, when present.
    pub declared_teeth: Option<usize>,
}

impl StudyDataset {
    pub fn new(images: Vec<ImageRecord>) -> Self {
        Self {
            images,
            declared_images: None,
            declared_teeth: None,
        }
    }

    pub fn image_count(&self) -> usize {
        self.images.len()
    }

    pub fn tooth_count(&self) -> usize {
        self.images.iter().map(|im| im.teeth.len()).sum()
    }
}

/// A single invariant violation found by [`validate_dataset`]. Violations are
/// data, not faults: validation itself never errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub image_id: String,
    pub field: String,
    pub rule: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}: {}", self.image_id, self.field, self.rule)
    }
}

fn check_annotation(out: &mut Vec<Violation>, image: &ImageRecord, ann: &Annotation, field: &str) {
    let mut push = |rule: String| {
        out.push(Violation {
            image_id: image.image_id.clone(),
            field: field.to_string(),
            rule,
        })
    };
    if !ann.bbox.is_valid() {
        push(format!("degenerate box {:?}", ann.bbox));
    } else if !ann.bbox.within(image.width, image.height) {
        push(format!("box {:?} outside image bounds", ann.bbox));
    }
    if ann.confidence == ConfidenceLabel::ZERO && ann.arm != Arm::Study {
        push("confidence 0 is only permitted on study-arm annotations".into());
    }
}

/// Check every type invariant of the dataset; empty iff all hold.
pub fn validate_dataset(dataset: &StudyDataset) -> Vec<Violation> {
    let mut out = Vec::new();
    for image in &dataset.images {
        let mut push = |field: &str, rule: String| {
            out.push(Violation {
                image_id: image.image_id.clone(),
                field: field.into(),
                rule,
            })
        };
        match (&image.ground_truth, &image.expert_sets) {
            (Some(_), Some(_)) => push(
                "ground_truth",
                "both groundTruth and expertSets populated".into(),
            ),
            (None, None) => push(
                "ground_truth",
                "neither groundTruth nor expertSets populated".into(),
            ),
            (None, Some(sets)) if sets.len() != 3 => push(
                "expert_sets",
                format!("expected 3 expert sets, found {}", sets.len()),
            ),
            _ => {}
        }
        let mut seen = std::collections::HashSet::new();
        for tooth in &image.teeth {
            if !seen.insert(&tooth.tooth_id) {
                push("teeth", format!("duplicate tooth_id `{}`", tooth.tooth_id));
            }
            if tooth.polygon.len() < 3 {
                push(
                    "teeth",
                    format!("tooth `{}` polygon has < 3 vertices", tooth.tooth_id),
                );
            } else if !tooth.is_simple() {
                push(
                    "teeth",
                    format!("tooth `{}` polygon self-intersects", tooth.tooth_id),
                );
            }
        }
        if let Some(gt) = &image.ground_truth {
            for inst in gt {
                if !inst.bbox.is_valid() {
                    push("ground_truth", format!("degenerate box {:?}", inst.bbox));
                } else if !inst.bbox.within(image.width, image.height) {
                    push(
                        "ground_truth",
                        format!("box {:?} outside image bounds", inst.bbox),
                    );
                }
            }
        }
        if let Some(sets) = &image.expert_sets {
            for (k, set) in sets.iter().enumerate() {
                for ann in set {
                    check_annotation(&mut out, image, ann, &format!("expert_sets[{k}]"));
                }
            }
        }
        for ann in &image.control_annotations {
            check_annotation(&mut out, image, ann, "control");
        }
        for ann in &image.study_annotations {
            check_annotation(&mut out, image, ann, "study");
        }
    }
    if let Some(n) = dataset.declared_images {
        if n != dataset.image_count() {
            out.push(Violation {
                image_id: "<dataset>".into(),
                field: "imageCount".into(),
                rule: format!("declared {n} but found {}", dataset.image_count()),
            });
        }
    }
    if let Some(n) = dataset.declared_teeth {
        if n != dataset.tooth_count() {
            out.push(Violation {
                image_id: "<dataset>".into(),
                field: "toothCount".into(),
                rule: format!("declared {n} but found {}", dataset.tooth_count()),
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// JSON interchange schema
// ---------------------------------------------------------------------------
//
// One UTF-8 JSON document per StudyDataset:
//
// {
//   "images": [{
//     "imageId": "...", "width": 1000, "height": 800,
//     "teeth": [{"toothId": "...", "polygon": [[x, y], ...]}],
//     "groundTruth": [{"anomaly": "caries", "box": [x0, y0, x1, y1]}],
//     "expertSets": [[<annotation>, ...], [...], [...]],
//     "control": [<annotation>, ...],
//     "study": [<annotation>, ...]
//   }],
//   "imageCount": 218,   // optional
//   "toothCount": 1346   // optional
// }
//
// <annotation> = {"anomaly": "...", "box": [x0, y0, x1, y1],
//                 "confidence": 80, "reader": "r1"}
// (confidence defaults to 100, reader to ""). Exactly one of groundTruth /
// expertSets must be present. Coordinates are integers.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnnotation {
    anomaly: String,
    #[serde(rename = "box")]
    bbox: [i64; 4],
    #[serde(default = "default_confidence")]
    confidence: u8,
    #[serde(default)]
    reader: String,
}

fn default_confidence() -> u8 {
    100
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawTooth {
    tooth_id: String,
    polygon: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawGroundTruth {
    anomaly: String,
    #[serde(rename = "box")]
    bbox: [i64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawImage {
    image_id: String,
    width: u32,
    height: u32,
    #[serde(default)]
    teeth: Vec<RawTooth>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ground_truth: Option<Vec<RawGroundTruth>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expert_sets: Option<Vec<Vec<RawAnnotation>>>,
    #[serde(default)]
    control: Vec<RawAnnotation>,
    #[serde(default)]
    study: Vec<RawAnnotation>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawDataset {
    images: Vec<RawImage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    image_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tooth_count: Option<usize>,
}

fn to_bbox(raw: [i64; 4]) -> BoundingBox {
    BoundingBox::new(raw[0], raw[1], raw[2], raw[3])
}

fn at_path(ctx: &str, e: Error) -> Error {
    let msg = match e {
        Error::Schema(m) => m,
        other => other.to_string(),
    };
    Error::Schema(format!("{ctx}: {msg}"))
}

fn convert_annotation(raw: RawAnnotation, arm: Arm, ctx: &str) -> Result<Annotation> {
    Ok(Annotation {
        anomaly: raw.anomaly.parse().map_err(|e| at_path(ctx, e))?,
        bbox: to_bbox(raw.bbox),
        confidence: ConfidenceLabel::new(raw.confidence).map_err(|e| at_path(ctx, e))?,
        arm,
        reader_id: raw.reader,
    })
}

impl StudyDataset {
    /// Parse the JSON interchange document.
    ///
    /// Confidence-0 study annotations are dropped at ingestion: rating an AI
    /// proposal 0% and physically deleting it are the same record state.
    pub fn from_json_str(text: &str) -> Result<StudyDataset> {
        let raw: RawDataset = serde_json::from_str(text)?;
        let mut images = Vec::with_capacity(raw.images.len());
        for im in raw.images {
            let ctx_img = format!("images[{}]", im.image_id);
            let teeth = im
                .teeth
                .into_iter()
                .map(|t| ToothRegion {
                    tooth_id: t.tooth_id,
                    polygon: t.polygon,
                })
                .collect();
            let ground_truth = match im.ground_truth {
                Some(gt) => Some(
                    gt.into_iter()
                        .map(|g| {
                            Ok(GroundTruthInstance {
                                anomaly: g
                                    .anomaly
                                    .parse()
                                    .map_err(|e| at_path(&format!("{ctx_img}.groundTruth"), e))?,
                                bbox: to_bbox(g.bbox),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let expert_sets = match im.expert_sets {
                Some(sets) => Some(
                    sets.into_iter()
                        .enumerate()
                        .map(|(k, set)| {
                            set.into_iter()
                                .map(|a| {
                                    convert_annotation(
                                        a,
                                        Arm::Control,
                                        &format!("{ctx_img}.expertSets[{k}]"),
                                    )
                                })
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            let control_annotations = im
                .control
                .into_iter()
                .map(|a| convert_annotation(a, Arm::Control, &format!("{ctx_img}.control")))
                .collect::<Result<Vec<_>>>()?;
            let study_annotations = im
                .study
                .into_iter()
                .map(|a| convert_annotation(a, Arm::Study, &format!("{ctx_img}.study")))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|a| a.confidence != ConfidenceLabel::ZERO)
                .collect();
            images.push(ImageRecord {
                image_id: im.image_id,
                width: im.width,
                height: im.height,
                teeth,
                ground_truth,
                expert_sets,
                control_annotations,
                study_annotations,
            });
        }
        Ok(StudyDataset {
            images,
            declared_images: raw.image_count,
            declared_teeth: raw.tooth_count,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<StudyDataset> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// Serialize back to the interchange schema.
    pub fn to_json_string(&self) -> Result<String> {
        fn raw_ann(a: &Annotation) -> RawAnnotation {
            RawAnnotation {
                anomaly: a.anomaly.key().to_string(),
                bbox: [a.bbox.x_min, a.bbox.y_min, a.bbox.x_max, a.bbox.y_max],
                confidence: a.confidence.value(),
                reader: a.reader_id.clone(),
            }
        }
        let raw = RawDataset {
            images: self
                .images
                .iter()
                .map(|im| RawImage {
                    image_id: im.image_id.clone(),
                    width: im.width,
                    height: im.height,
                    teeth: im
                        .teeth
                        .iter()
                        .map(|t| RawTooth {
                            tooth_id: t.tooth_id.clone(),
                            polygon: t.polygon.clone(),
                        })
                        .collect(),
                    ground_truth: im.ground_truth.as_ref().map(|gt| {
                        gt.iter()
                            .map(|g| RawGroundTruth {
                                anomaly: g.anomaly.key().to_string(),
                                bbox: [g.bbox.x_min, g.bbox.y_min, g.bbox.x_max, g.bbox.y_max],
                            })
                            .collect()
                    }),
                    expert_sets: im.expert_sets.as_ref().map(|sets| {
                        sets.iter()
                            .map(|s| s.iter().map(raw_ann).collect())
                            .collect()
                    }),
                    control: im.control_annotations.iter().map(raw_ann).collect(),
                    study: im.study_annotations.iter().map(raw_ann).collect(),
                })
                .collect(),
            image_count: self.declared_images,
            tooth_count: self.declared_teeth,
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}
