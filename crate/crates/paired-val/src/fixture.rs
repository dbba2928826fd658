//! Embedded study fixture: the published tooth-level counts at the 50%
//! operating point, the printed AUC values, and every printed results-table
//! cell used by the reproduction command to diff its regenerated output.

use crate::matching::{DecisionMatrix, Endpoint, MatchedSampleTable};
use crate::model::{AnomalyType, Arm};

/// Counts and printed AUCs of one anomaly type.
#[derive(Debug, Clone, PartialEq)]
pub struct AnomalyFixture {
    pub anomaly: AnomalyType,
    pub control: DecisionMatrix,
    pub study: DecisionMatrix,
    pub mst_sens: MatchedSampleTable,
    pub mst_spec: MatchedSampleTable,
    /// Published LROC areas (control, study), two decimals.
    pub auc_control: f64,
    pub auc_study: f64,
}

/// The embedded fixture: six anomaly types over 1346 teeth in 218 images.
#[derive(Debug, Clone, PartialEq)]
pub struct PaperFixture {
    pub anomalies: Vec<AnomalyFixture>,
    pub image_count: u64,
    pub tooth_count: u64,
}

// per anomaly: tn_c, tn_s, fn_c, fn_s, fp_c, fp_s, tp_c, tp_s,
//              sens (g, rho, lambda, b), spec (g, rho, lambda, b), a_c, a_s
type RawRow = (AnomalyType, [u64; 8], [u64; 4], [u64; 4], f64, f64);

#[rustfmt::skip]
const RAW: [RawRow; 6] = [
    (AnomalyType::Caries,          [1123, 1106,  54, 24,  64,  81, 105, 135], [102, 33,  3, 21], [1066, 40,  57,  24], 0.65, 0.84),
    (AnomalyType::ApicalLesion,    [1275, 1256,  16,  5,  17,  36,  38,  49], [ 37, 12,  1,  4], [1247,  9,  28,   8], 0.70, 0.92),
    (AnomalyType::RootCanalDefect, [1304, 1297,   9,  2,  11,  18,  22,  29], [ 22,  7,  0,  2], [1295,  2,   9,   9], 0.71, 0.93),
    (AnomalyType::MarginalDefect,  [1153, 1147, 109, 44,  30,  36,  54, 119], [ 51, 68,  3, 41], [1125, 22,  28,   8], 0.33, 0.80),
    (AnomalyType::BoneLoss,        [ 791,  725, 114, 30, 219, 285, 222, 306], [212, 94, 10, 20], [ 627, 98, 164, 121], 0.60, 0.84),
    (AnomalyType::Calculus,        [1181, 1179,  62, 26,  18,  20,  85, 121], [ 72, 49, 13, 13], [1167, 12,  14,   6], 0.58, 0.82),
];

impl PaperFixture {
    pub fn embedded() -> Self {
        let anomalies = RAW
            .iter()
            .map(|&(anomaly, dm, s, p, a_c, a_s)| {
                let [tn_c, tn_s, fn_c, fn_s, fp_c, fp_s, tp_c, tp_s] = dm;
                AnomalyFixture {
                    anomaly,
                    control: DecisionMatrix::new(anomaly, Arm::Control, tp_c, fp_c, tn_c, fn_c),
                    study: DecisionMatrix::new(anomaly, Arm::Study, tp_s, fp_s, tn_s, fn_s),
                    mst_sens: MatchedSampleTable::new(
                        anomaly,
                        Endpoint::Sensitivity,
                        s[0],
                        s[1],
                        s[2],
                        s[3],
                    ),
                    mst_spec: MatchedSampleTable::new(
                        anomaly,
                        Endpoint::Specificity,
                        p[0],
                        p[1],
                        p[2],
                        p[3],
                    ),
                    auc_control: a_c,
                    auc_study: a_s,
                }
            })
            .collect();
        PaperFixture {
            anomalies,
            image_count: 218,
            tooth_count: 1346,
        }
    }

    pub fn get(&self, anomaly: AnomalyType) -> &AnomalyFixture {
        self.anomalies
            .iter()
            .find(|f| f.anomaly == anomaly)
            .expect("all six anomaly types are embedded")
    }

    /// (control, study) decision matrices in table order.
    pub fn matrices(&self) -> Vec<(DecisionMatrix, DecisionMatrix)> {
        self.anomalies
            .iter()
            .map(|f| (f.control, f.study))
            .collect()
    }
}

/// Printed endpoint-table row in percent: estimates and interval bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedEndpointRow {
    pub sens_control: f64,
    pub sens_study: f64,
    pub sens_ci_control: (f64, f64),
    pub sens_ci_study: (f64, f64),
    pub spec_control: f64,
    pub spec_study: f64,
    pub spec_ci_control: (f64, f64),
    pub spec_ci_study: (f64, f64),
}

#[rustfmt::skip]
pub const PRINTED_ENDPOINT: [PrintedEndpointRow; 6] = [
    PrintedEndpointRow { sens_control: 66.0, sens_study: 84.9, sens_ci_control: (58.7, 73.4), sens_ci_study: (79.3, 90.5), spec_control: 94.6, spec_study: 93.2, spec_ci_control: (93.3, 95.9), spec_ci_study: (91.7, 94.6) },
    PrintedEndpointRow { sens_control: 70.4, sens_study: 90.7, sens_ci_control: (58.2, 82.5), sens_ci_study: (83.0, 98.5), spec_control: 98.7, spec_study: 97.2, spec_ci_control: (98.1, 99.3), spec_ci_study: (96.3, 98.1) },
    PrintedEndpointRow { sens_control: 71.0, sens_study: 93.5, sens_ci_control: (55.0, 86.9), sens_ci_study: (84.9, 100.0), spec_control: 99.2, spec_study: 98.6, spec_ci_control: (98.7, 99.7), spec_ci_study: (98.0, 99.3) },
    PrintedEndpointRow { sens_control: 33.1, sens_study: 73.0, sens_ci_control: (25.9, 40.4), sens_ci_study: (66.2, 79.8), spec_control: 97.5, spec_study: 97.0, spec_ci_control: (96.6, 98.4), spec_ci_study: (96.0, 97.9) },
    PrintedEndpointRow { sens_control: 66.1, sens_study: 91.1, sens_ci_control: (61.0, 71.1), sens_ci_study: (88.0, 94.1), spec_control: 78.3, spec_study: 71.8, spec_ci_control: (75.8, 80.9), spec_ci_study: (69.0, 74.6) },
    PrintedEndpointRow { sens_control: 57.8, sens_study: 82.3, sens_ci_control: (49.8, 65.8), sens_ci_study: (76.1, 88.5), spec_control: 98.5, spec_study: 98.3, spec_ci_control: (97.8, 99.2), spec_ci_study: (97.6, 99.1) },
];

pub const PRINTED_ENDPOINT_AVERAGE: PrintedEndpointRow = PrintedEndpointRow {
    sens_control: 60.7,
    sens_study: 85.9,
    sens_ci_control: (51.4, 70.0),
    sens_ci_study: (79.6, 91.9),
    spec_control: 94.5,
    spec_study: 92.7,
    spec_ci_control: (93.4, 95.5),
    spec_ci_study: (91.4, 93.9),
};

/// Printed marginal-test row: significances, Type-II error and power are in
/// percent; chi2 and the critical value are plain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedStatsRow {
    pub chi2: f64,
    pub s_chi2_pct: f64,
    pub s_x_pct: f64,
    pub x_alpha: u64,
    pub e_type_ii_pct: f64,
    pub power_pct: f64,
}

#[rustfmt::skip]
pub const PRINTED_STATS_SENS: [PrintedStatsRow; 6] = [
    PrintedStatsRow { chi2: 23.4, s_chi2_pct: 0.0,  s_x_pct: 0.0,  x_alpha: 23, e_type_ii_pct: 0.0, power_pct: 100.0 },
    PrintedStatsRow { chi2: 7.7,  s_chi2_pct: 0.28, s_x_pct: 0.17, x_alpha: 10, e_type_ii_pct: 1.4, power_pct: 98.6 },
    PrintedStatsRow { chi2: 5.1,  s_chi2_pct: 1.17, s_x_pct: 0.78, x_alpha: 6,  e_type_ii_pct: 0.0, power_pct: 100.0 },
    PrintedStatsRow { chi2: 57.7, s_chi2_pct: 0.0,  s_x_pct: 0.0,  x_alpha: 43, e_type_ii_pct: 0.0, power_pct: 100.0 },
    PrintedStatsRow { chi2: 66.2, s_chi2_pct: 0.0,  s_x_pct: 0.0,  x_alpha: 61, e_type_ii_pct: 0.0, power_pct: 100.0 },
    PrintedStatsRow { chi2: 19.8, s_chi2_pct: 0.0,  s_x_pct: 0.0,  x_alpha: 38, e_type_ii_pct: 0.0, power_pct: 100.0 },
];

#[rustfmt::skip]
pub const PRINTED_STATS_SPEC: [PrintedStatsRow; 6] = [
    PrintedStatsRow { chi2: 2.6,  s_chi2_pct: 5.21,  s_x_pct: 5.19,  x_alpha: 57,  e_type_ii_pct: 45.7, power_pct: 54.3 },
    PrintedStatsRow { chi2: 8.8,  s_chi2_pct: 0.15,  s_x_pct: 0.13,  x_alpha: 24,  e_type_ii_pct: 4.7,  power_pct: 95.3 },
    PrintedStatsRow { chi2: 3.3,  s_chi2_pct: 3.52,  s_x_pct: 3.27,  x_alpha: 9,   e_type_ii_pct: 32.2, power_pct: 67.8 },
    PrintedStatsRow { chi2: 0.5,  s_chi2_pct: 23.98, s_x_pct: 23.99, x_alpha: 31,  e_type_ii_pct: 76.1, power_pct: 23.9 },
    PrintedStatsRow { chi2: 16.1, s_chi2_pct: 0.003, s_x_pct: 0.003, x_alpha: 145, e_type_ii_pct: 0.7,  power_pct: 99.3 },
    PrintedStatsRow { chi2: 0.04, s_chi2_pct: 42.23, s_x_pct: 42.25, x_alpha: 18,  e_type_ii_pct: 91.7, power_pct: 8.3 },
];

/// Printed AUC row: areas and their 95% intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedAucRow {
    pub a_control: f64,
    pub a_study: f64,
    pub ci_control: (f64, f64),
    pub ci_study: (f64, f64),
}

#[rustfmt::skip]
pub const PRINTED_AUC: [PrintedAucRow; 6] = [
    PrintedAucRow { a_control: 0.65, a_study: 0.84, ci_control: (0.60, 0.70), ci_study: (0.80, 0.88) },
    PrintedAucRow { a_control: 0.70, a_study: 0.92, ci_control: (0.62, 0.78), ci_study: (0.87, 0.97) },
    PrintedAucRow { a_control: 0.71, a_study: 0.93, ci_control: (0.60, 0.81), ci_study: (0.87, 0.99) },
    PrintedAucRow { a_control: 0.33, a_study: 0.80, ci_control: (0.29, 0.37), ci_study: (0.76, 0.85) },
    PrintedAucRow { a_control: 0.60, a_study: 0.84, ci_control: (0.57, 0.64), ci_study: (0.81, 0.87) },
    PrintedAucRow { a_control: 0.58, a_study: 0.82, ci_control: (0.53, 0.63), ci_study: (0.78, 0.87) },
];

pub const PRINTED_AUC_AVERAGE: PrintedAucRow = PrintedAucRow {
    a_control: 0.60,
    a_study: 0.86,
    ci_control: (0.54, 0.65),
    ci_study: (0.82, 0.90),
};

/// Printed significance of the AUC-difference test. Values below the paper's
/// display precision are printed as 0.0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrintedP {
    DisplayZero,
    Value(f64),
}

/// Printed AUC-difference row: 95% interval of the difference, z-hat, p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedAucDiffRow {
    pub diff_ci: (f64, f64),
    pub z_hat: f64,
    pub p: PrintedP,
}

#[rustfmt::skip]
pub const PRINTED_AUC_DIFF: [PrintedAucDiffRow; 6] = [
    PrintedAucDiffRow { diff_ci: (0.15, 0.22), z_hat: 9.6,  p: PrintedP::DisplayZero },
    PrintedAucDiffRow { diff_ci: (0.16, 0.28), z_hat: 7.3,  p: PrintedP::Value(1.4e-13) },
    PrintedAucDiffRow { diff_ci: (0.15, 0.30), z_hat: 6.0,  p: PrintedP::Value(1.1e-9) },
    PrintedAucDiffRow { diff_ci: (0.44, 0.52), z_hat: 23.1, p: PrintedP::DisplayZero },
    PrintedAucDiffRow { diff_ci: (0.20, 0.27), z_hat: 12.9, p: PrintedP::DisplayZero },
    PrintedAucDiffRow { diff_ci: (0.20, 0.30), z_hat: 10.7, p: PrintedP::DisplayZero },
];

pub const PRINTED_AUC_DIFF_AVERAGE_CI: (f64, f64) = (0.22, 0.31);

/// Stand-alone network performance quoted for context: instance-based
/// sensitivity, precision, and the resulting F2 score.
pub const NETWORK_SENSITIVITY: f64 = 0.816;
pub const NETWORK_PRECISION: f64 = 0.467;
pub const NETWORK_F2: f64 = 0.706;
