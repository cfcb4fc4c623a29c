//! Binomial confidence intervals, goodness-of-fit measures and log-log
//! slope fits.

use std::collections::BTreeMap;

use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};
use treesplit_core::Tally;

/// A binomial proportion with its exact (Clopper-Pearson) 95% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    pub fn new(successes: u64, trials: u64) -> Self {
        Self::with_level(successes, trials, 0.95)
    }

    pub fn with_level(successes: u64, trials: u64, level: f64) -> Self {
        assert!(trials > 0 && successes <= trials, "invalid binomial counts");
        let alpha = 1.0 - level;
        let (s, n) = (successes as f64, trials as f64);
        let point = s / n;
        let ci_low = if successes == 0 {
            0.0
        } else {
            Beta::new(s, n - s + 1.0).unwrap().inverse_cdf(alpha / 2.0)
        };
        let ci_high = if successes == trials {
            1.0
        } else {
            Beta::new(s + 1.0, n - s)
                .unwrap()
                .inverse_cdf(1.0 - alpha / 2.0)
        };
        Estimate {
            successes,
            trials,
            point,
            ci_low: ci_low.min(point),
            ci_high: ci_high.max(point),
        }
    }

    /// Standard error of the point estimate under the binomial model with
    /// success probability `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

impl From<Tally> for Estimate {
    fn from(t: Tally) -> Self {
        Estimate::new(t.successes, t.trials)
    }
}

/// Upper-tail p-value of Pearson's chi-square statistic for `observed`
/// counts against cell probabilities `expected`.
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    assert!(observed.len() >= 2, "chi-square needs at least two cells");
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

/// Total variation distance between the empirical distribution of `counts`
/// and the probabilities `target`. Keys missing from `target` have
/// probability zero.
pub fn total_variation<K: Ord>(counts: &BTreeMap<K, u64>, target: &BTreeMap<K, f64>) -> f64 {
    let total: u64 = counts.values().sum();
    if total == 0 {
        return 1.0;
    }
    let total = total as f64;
    let outside: f64 = counts
        .iter()
        .filter(|(k, _)| !target.contains_key(k))
        .map(|(_, &c)| c as f64 / total)
        .sum();
    let inside: f64 = target
        .iter()
        .map(|(k, &p)| (p - counts.get(k).copied().unwrap_or(0) as f64 / total).abs())
        .sum();
    (outside + inside) / 2.0
}

/// Least-squares line through `(x, y)` points, usually `(ln n, ln p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the vertical residuals.
    pub residual: f64,
}

impl ScalingFit {
    /// `None` with fewer than three points or no spread in `x`.
    pub fn fit(points: Vec<(f64, f64)>) -> Option<Self> {
        if points.len() < 3 {
            return None;
        }
        let m = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
        let my = points.iter().map(|p| p.1).sum::<f64>() / m;
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx == 0.0 {
            return None;
        }
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let residual = (points
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum::<f64>()
            / m)
            .sqrt();
        Some(ScalingFit {
            points,
            slope,
            intercept,
            residual,
        })
    }

    /// Fit of `ln y` against `ln x`, skipping points with `y == 0`.
    pub fn log_log(points: impl IntoIterator<Item = (f64, f64)>) -> Option<Self> {
        Self::fit(
            points
                .into_iter()
                .filter(|&(x, y)| x > 0.0 && y > 0.0)
                .map(|(x, y)| (x.ln(), y.ln()))
                .collect(),
        )
    }
}
