//! Self-contained numeric kernels: standard normal CDF/quantile, chi-squared
//! (1 dof) survival and exact binomial tails in log space.
//!
//! Everything here is implemented in-repo and pinned by golden tests so that
//! results are bit-stable across platforms.

// approximation coefficients and golden values keep their published digits
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Lanczos approximation (g = 7, 9 terms) of the log-gamma function.
pub fn ln_gamma(z: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z < 0.5 {
        // reflection formula
        let s = (std::f64::consts::PI * z).sin();
        return std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + 7.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// log of the binomial coefficient C(n, k).
pub fn ln_choose(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    if k == 0 || k == n {
        return 0.0;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Regularized lower incomplete gamma P(a, x) by its power series (x < a + 1).
fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    for n in 1..500 {
        term *= x / (a + n as f64);
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Regularized upper incomplete gamma Q(a, x) by Lentz' continued fraction (x >= a + 1).
fn gamma_q_cf(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Complementary error function, accurate to ~1e-14 relative on the real line.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x == 0.0 {
        return 1.0;
    }
    let x2 = x * x;
    if x2 < 1.5 {
        1.0 - gamma_p_series(0.5, x2)
    } else {
        gamma_q_cf(0.5, x2)
    }
}

/// Standard normal CDF Φ(z).
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Standard normal survival function 1 − Φ(z), accurate in the right tail.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / SQRT_2)
}

/// Standard normal density φ(z).
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() * (1.0 / (2.0 * std::f64::consts::PI).sqrt())
}

/// Quantile of the standard normal distribution.
///
/// Rational approximation (Acklam) refined with one Halley step against
/// [`normal_cdf`]; |Φ(z) − p| stays below 1e-9 over the open unit interval.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "normal_quantile: p = {p} not in (0,1)"
        )));
    }
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    let mut z = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if z.abs() < 37.0 {
        // one Halley step
        let e = normal_cdf(z) - p;
        let u = e * (2.0 * std::f64::consts::PI).sqrt() * (z * z / 2.0).exp();
        z -= u / (1.0 + z * u / 2.0);
    }
    Ok(z)
}

/// Survival function of the chi-squared distribution with one degree of
/// freedom: P(X ≥ x) = 2(1 − Φ(√x)) = erfc(√(x/2)).
pub fn chi2_1_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    erfc((x / 2.0).sqrt())
}

fn check_binomial_args(n: u64, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("binomial: n must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("binomial: p = {p} not in [0,1]")));
    }
    Ok(())
}

/// Log-space sum of binomial PMF terms for k in [lo, hi].
fn binomial_tail(lo: u64, hi: u64, n: u64, p: f64) -> f64 {
    if lo > hi {
        return 0.0;
    }
    if lo == 0 && hi == n {
        return 1.0;
    }
    if p == 0.0 {
        return if lo == 0 { 1.0 } else { 0.0 };
    }
    if p == 1.0 {
        return if hi == n { 1.0 } else { 0.0 };
    }
    let lp = p.ln();
    let lq = (1.0 - p).ln();
    let ln_term = |k: u64| ln_choose(n, k) + k as f64 * lp + (n - k) as f64 * lq;
    // peak of the summed terms sits at the mode clamped into [lo, hi]
    let mode = (((n + 1) as f64) * p).floor().min(n as f64) as u64;
    let peak = mode.clamp(lo, hi);
    let t_max = ln_term(peak);
    if t_max == f64::NEG_INFINITY {
        return 0.0;
    }
    let mut sum = 0.0;
    for k in lo..=hi {
        sum += (ln_term(k) - t_max).exp();
    }
    (sum.ln() + t_max).exp()
}

/// Exact binomial upper tail P(X ≥ x) for X ~ B(n, p).
pub fn binomial_sf(x: u64, n: u64, p: f64) -> Result<f64> {
    check_binomial_args(n, p)?;
    if x > n {
        return Err(Error::Domain(format!("binomial_sf: x = {x} > n = {n}")));
    }
    Ok(binomial_tail(x, n, n, p))
}

/// Strict lower tail P(X < x) for X ~ B(n, p); x may reach n + 1 (capped at 1).
pub fn binomial_cdf(x: u64, n: u64, p: f64) -> Result<f64> {
    check_binomial_args(n, p)?;
    if x > n + 1 {
        return Err(Error::Domain(format!("binomial_cdf: x = {x} > n + 1")));
    }
    if x == 0 {
        return Ok(0.0);
    }
    Ok(binomial_tail(0, (x - 1).min(n), n, p))
}
