//! Degree distributions and power-law exponent fits.
//!
//! Two estimators are provided for `P(k) ∝ k^-γ`:
//!
//! * [`fit_power_law_ls`]: ordinary least squares of `ln P(k)` on `ln k`
//!   over non-empty bins with `k >= k_min`; goodness is `R²`.
//! * [`fit_power_law_mle`]: discrete maximum likelihood, maximizing
//!   `-n ln ζ(γ, k_min) - γ Σ ln k_i` numerically; goodness is the
//!   Kolmogorov–Smirnov distance to the fitted distribution.
//!
//! The closed-form approximation `1 + n / Σ ln(k_i / (k_min - ½))` is
//! available as [`approximate_mle_exponent`]; it is biased for small `k_min`
//! and is not used by the fit itself.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LayerGraph;

pub const MIN_MLE_SAMPLES: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDistribution {
    pub histogram: BTreeMap<usize, usize>,
    pub normalized: BTreeMap<usize, f64>,
    pub n: usize,
}

impl DegreeDistribution {
    pub fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut histogram = BTreeMap::new();
        let mut n = 0;
        for k in degrees {
            *histogram.entry(k).or_insert(0) += 1;
            n += 1;
        }
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let normalized = histogram
            .iter()
            .map(|(&k, &c)| (k, c as f64 / n as f64))
            .collect();
        Ok(DegreeDistribution {
            histogram,
            normalized,
            n,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.histogram.keys().next_back().copied().unwrap_or(0)
    }

    pub fn mean_degree(&self) -> f64 {
        let total: usize = self.histogram.iter().map(|(&k, &c)| k * c).sum();
        total as f64 / self.n as f64
    }

    /// `(k, P(k))` for non-empty bins with `k >= k_min`.
    pub fn points(&self, k_min: usize) -> Vec<(f64, f64)> {
        self.normalized
            .range(k_min.max(1)..)
            .filter(|(_, &p)| p > 0.0)
            .map(|(&k, &p)| (k as f64, p))
            .collect()
    }

    /// Logarithmic bins `[k_min·b^j, k_min·b^(j+1))`, each reported at its
    /// geometric centre with probability mass divided by the bin's integer
    /// width.
    pub fn log_binned_points(&self, k_min: usize, base: f64) -> Result<Vec<(f64, f64)>> {
        if !(base > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "bin base must exceed 1, got {base}"
            )));
        }
        let k_min = k_min.max(1);
        let mut points = Vec::new();
        let mut lower = k_min as f64;
        let max = self.max_degree() as f64;
        while lower <= max {
            let upper = lower * base;
            let lo = lower.ceil() as usize;
            let hi = (upper.ceil() as usize).max(lo + 1);
            let mass: f64 = self.normalized.range(lo..hi).map(|(_, &p)| p).sum();
            if mass > 0.0 {
                let width = (hi - lo) as f64;
                let centre = (lo as f64 * (hi - 1) as f64).sqrt();
                points.push((centre, mass / width));
            }
            lower = hi as f64;
        }
        Ok(points)
    }
}

pub fn degree_distribution(g: &LayerGraph) -> Result<DegreeDistribution> {
    DegreeDistribution::from_degrees((0..g.node_count()).map(|i| g.degree_of(i)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMethod {
    #[serde(alias = "ls")]
    LogLogLeastSquares,
    #[serde(alias = "mle")]
    MaximumLikelihood,
}

impl FitMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            FitMethod::LogLogLeastSquares => "ls",
            FitMethod::MaximumLikelihood => "mle",
        }
    }
}

impl fmt::Display for FitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitMethod::LogLogLeastSquares => "log-log-least-squares",
            FitMethod::MaximumLikelihood => "maximum-likelihood",
        })
    }
}

impl FromStr for FitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ls" | "log-log-least-squares" => Ok(FitMethod::LogLogLeastSquares),
            "mle" | "maximum-likelihood" => Ok(FitMethod::MaximumLikelihood),
            other => Err(Error::InvalidParameter(format!(
                "unknown fit method {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub method: FitMethod,
    pub k_min: usize,
    /// `R²` for least squares, KS distance for maximum likelihood.
    pub goodness: f64,
    /// Bins (least squares) or samples (maximum likelihood) used.
    pub support: usize,
}

/// Least squares on explicit `(k, P(k))` points; points outside `k >= k_min`
/// or with non-positive frequency are ignored.
pub fn fit_power_law_ls_points(points: &[(f64, f64)], k_min: usize) -> Result<PowerLawFit> {
    let k_min = k_min.max(1);
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(k, p)| k >= k_min as f64 && p > 0.0)
        .map(|&(k, p)| (k.ln(), p.ln()))
        .collect();
    let mut distinct: Vec<f64> = logs.iter().map(|&(x, _)| x).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InsufficientSupport(format!(
            "{} distinct degrees at k >= {k_min}, need 3",
            distinct.len()
        )));
    }
    let m = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let syy: f64 = logs.iter().map(|&(_, y)| (y - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r2 = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(PowerLawFit {
        gamma: -slope,
        method: FitMethod::LogLogLeastSquares,
        k_min,
        goodness: r2,
        support: logs.len(),
    })
}

pub fn fit_power_law_ls(dist: &DegreeDistribution, k_min: usize) -> Result<PowerLawFit> {
    fit_power_law_ls_points(&dist.points(k_min), k_min)
}

/// Closed-form discrete approximation `1 + n / Σ ln(k_i / (k_min - ½))`.
pub fn approximate_mle_exponent(degrees: &[usize], k_min: usize) -> Option<f64> {
    let k_min = k_min.max(1);
    let anchor = k_min as f64 - 0.5;
    let (n, sum) = degrees
        .iter()
        .filter(|&&k| k >= k_min)
        .fold((0usize, 0.0), |(n, s), &k| {
            (n + 1, s + (k as f64 / anchor).ln())
        });
    (n > 0).then(|| 1.0 + n as f64 / sum)
}

const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 12.0,                   // B2 / 2!
    -1.0 / 720.0,                 // B4 / 4!
    1.0 / 30_240.0,               // B6 / 6!
    -1.0 / 1_209_600.0,           // B8 / 8!
    1.0 / 47_900_160.0,           // B10 / 10!
    -691.0 / 1_307_674_368_000.0, // B12 / 12!
    1.0 / 74_724_249_600.0,       // B14 / 14!
];

/// `ln ζ(s, q)` for `s > 1`, `q > 0`, by Euler–Maclaurin summation with the
/// factor `q^-s` pulled out so large `s` does not underflow.
pub fn ln_hurwitz_zeta(s: f64, q: f64) -> f64 {
    const TERMS: usize = 12;
    let mut scaled = 0.0;
    for k in 0..TERMS {
        scaled += (1.0 + k as f64 / q).powf(-s);
    }
    let tail_base = q + TERMS as f64;
    let ratio = tail_base / q;
    let ratio_pow = ratio.powf(-s);
    scaled += tail_base * ratio_pow / (s - 1.0);
    scaled += 0.5 * ratio_pow;
    // Rising factorial s (s+1) ... (s+2j-2) times tail_base^(-2j+1).
    let mut rising = s;
    let mut inv_pow = 1.0 / tail_base;
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        scaled += coef * rising * inv_pow * ratio_pow;
        let next = 2.0 * (j as f64 + 1.0);
        rising *= (s + next - 1.0) * (s + next);
        inv_pow /= tail_base * tail_base;
    }
    -s * q.ln() + scaled.ln()
}

/// Discrete power-law CDF `P(K <= k)` for support `k >= k_min`.
fn discrete_cdf(gamma: f64, k_min: usize, k: usize, ln_norm: f64) -> f64 {
    if k < k_min {
        return 0.0;
    }
    1.0 - (ln_hurwitz_zeta(gamma, (k + 1) as f64) - ln_norm).exp()
}

/// Maximizes a concave function on `[lo, hi]` by golden-section search.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a);
        }
    }
    (lo + hi) / 2.0
}

const GAMMA_LOWER: f64 = 1.0 + 1e-9;
const GAMMA_UPPER: f64 = 50.0;

/// Discrete maximum-likelihood exponent for samples `k >= k_min`.
pub fn fit_power_law_mle(degrees: &[usize], k_min: usize) -> Result<PowerLawFit> {
    if k_min == 0 {
        return Err(Error::InvalidParameter("k_min must be at least 1".into()));
    }
    let mut tail: Vec<usize> = degrees.iter().copied().filter(|&k| k >= k_min).collect();
    if tail.len() < MIN_MLE_SAMPLES {
        return Err(Error::InsufficientSupport(format!(
            "{} samples at k >= {k_min}, need {MIN_MLE_SAMPLES}",
            tail.len()
        )));
    }
    tail.sort_unstable();
    let n = tail.len() as f64;
    let sum_ln: f64 = tail.iter().map(|&k| (k as f64).ln()).sum();
    if tail.iter().all(|&k| k == k_min) {
        // The likelihood increases without bound in gamma.
        return Err(Error::InvalidExponent(f64::INFINITY));
    }
    let q = k_min as f64;
    let log_likelihood = |gamma: f64| -n * ln_hurwitz_zeta(gamma, q) - gamma * sum_ln;
    let gamma = golden_max(log_likelihood, GAMMA_LOWER, GAMMA_UPPER, 1e-10);
    if gamma <= 1.0 + 1e-6 || gamma >= GAMMA_UPPER - 1e-6 {
        return Err(Error::InvalidExponent(gamma));
    }

    let ln_norm = ln_hurwitz_zeta(gamma, q);
    let mut ks: f64 = 0.0;
    let mut below = 0usize;
    let mut i = 0;
    while i < tail.len() {
        let k = tail[i];
        let mut j = i;
        while j < tail.len() && tail[j] == k {
            j += 1;
        }
        let emp_before = below as f64 / n;
        let emp_at = j as f64 / n;
        let fit_before = discrete_cdf(gamma, k_min, k - 1, ln_norm);
        let fit_at = discrete_cdf(gamma, k_min, k, ln_norm);
        ks = ks
            .max((emp_before - fit_before).abs())
            .max((emp_at - fit_at).abs());
        below = j;
        i = j;
    }
    Ok(PowerLawFit {
        gamma,
        method: FitMethod::MaximumLikelihood,
        k_min,
        goodness: ks.clamp(0.0, 1.0),
        support: tail.len(),
    })
}

/// One row of the exported `k,p_k,fitted` table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitRow {
    pub k: usize,
    pub p_k: f64,
    pub fitted: f64,
}

/// Empirical frequencies for `k >= 1` alongside the fitted curve, anchored so
/// it equals the empirical frequency at the smallest fitted degree.
pub fn fit_table(dist: &DegreeDistribution, fit: &PowerLawFit) -> Vec<FitRow> {
    let anchor = dist
        .normalized
        .range(fit.k_min.max(1)..)
        .find(|(_, &p)| p > 0.0)
        .map(|(&k, &p)| (k as f64, p));
    dist.normalized
        .range(1..)
        .map(|(&k, &p)| FitRow {
            k,
            p_k: p,
            fitted: anchor.map_or(0.0, |(k0, p0)| p0 * (k as f64 / k0).powf(-fit.gamma)),
        })
        .collect()
}
