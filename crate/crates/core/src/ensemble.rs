//! Erdős–Rényi graph-state ensembles: exact expectations, Monte-Carlo
//! sampling, and total-variation distances to binomial distributions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, binom};
use crate::closed_forms::{binomial_distribution, binomial_distribution_f64, BinomialDistribution};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::sample_erdos_renyi_stream;
use crate::json::{floats, Float17};
use crate::sld::{brute_force_sld, moments_from_sld, Sld};

fn check_probability(q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::invalid(format!("probability {q} outside [0, 1]")));
    }
    Ok(())
}

fn ln_binom(n: usize, k: usize) -> f64 {
    (1..=k).map(|i| ((n - k + i) as f64).ln() - (i as f64).ln()).sum()
}

/// `base^exp` in log space with `0^0 = 1`; `None` stands for zero.
fn ln_pow(base: f64, exp: usize) -> Option<f64> {
    if exp == 0 {
        Some(0.0)
    } else if base <= 0.0 {
        None
    } else {
        Some(exp as f64 * base.ln())
    }
}

/// `<A_k> = C(n,k) 2^{-n} Σ_b C(k,b) 2^b (1 + x^b)^{n-k} (1 - x^b)^{k-b}`
/// with `x = 1 - 2q`, averaged over graphs with independent edges of
/// probability `q`. Every term is non-negative, so it is summed in log space.
pub fn expected_sld_er(n: usize, q: f64) -> Result<Vec<f64>> {
    check_probability(q)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let x = 1.0 - 2.0 * q;
    let ln2 = std::f64::consts::LN_2;
    Ok((0..=n)
        .map(|k| {
            let prefix = ln_binom(n, k) - n as f64 * ln2;
            (0..=k)
                .filter_map(|b| {
                    let xb = x.powi(b as i32);
                    let plus = ln_pow(1.0 + xb, n - k)?;
                    let minus = ln_pow(1.0 - xb, k - b)?;
                    Some((prefix + ln_binom(k, b) + b as f64 * ln2 + plus + minus).exp())
                })
                .sum()
        })
        .collect())
}

/// `n (1-q)^{n-1}`, the expected number of isolated vertices.
pub fn expected_isolated(n: usize, q: f64) -> Result<f64> {
    check_probability(q)?;
    Ok(n as f64 * (1.0 - q).powi(n as i32 - 1))
}

/// `3n/4 - n (1-q)^{n-1} / 4`.
pub fn expected_mean_er(n: usize, q: f64) -> Result<f64> {
    Ok(0.75 * n as f64 - expected_isolated(n, q)? / 4.0)
}

/// `½ Σ |a_k - b_k|` for two probability vectors.
pub fn tvd(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "distributions have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    for v in [a, b] {
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!("distribution sums to {total}, not 1")));
        }
    }
    Ok(0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>())
}

/// Exact [`tvd`] for rational distributions.
pub fn tvd_exact(a: &[BigRational], b: &[BigRational]) -> Result<BigRational> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "distributions have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    for v in [a, b] {
        let total: BigRational = v.iter().sum();
        if total != arith::int(1) {
            return Err(Error::invalid(format!(
                "distribution sums to {}, not 1",
                arith::format_rational(&total)
            )));
        }
    }
    let sum: BigRational = a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
    Ok(sum / arith::int(2))
}

/// Distance between the normalized W-state distribution and the symmetric
/// binomial: `C(n, n/2) / 2^n` for even `n`, and
/// `(n² - 1) / (2^n n²) C(n, (n-1)/2)` for odd `n`.
pub fn tvd_w_binomial_closed(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::invalid(format!("W state needs n >= 2, got {n}")));
    }
    let ni = n as i64;
    let two_n = arith::pow(2, n as u32);
    Ok(if n.is_multiple_of(2) {
        BigRational::new(binom(ni, ni / 2), two_n)
    } else {
        let num = BigInt::from(ni * ni - 1) * binom(ni, (ni - 1) / 2);
        BigRational::new(num, two_n * BigInt::from(ni * ni))
    })
}

/// Binomial with the same mean as the normalized distribution, `p = <k>/n`.
pub fn mean_matched_binomial(sld: &Sld) -> Result<BinomialDistribution> {
    let mean = moments_from_sld(sld)?.mean;
    let p = mean / arith::int(sld.n() as u64);
    binomial_distribution(sld.n(), &p)
}

/// Sampling statistics for one `(n, q)` point.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleReport {
    pub n: usize,
    pub q: f64,
    pub samples: usize,
    pub seed: u64,
    /// Binomial success probability used for every sample, if fixed.
    pub fixed_p: Option<f64>,
    pub mean_sld: Vec<f64>,
    /// Standard error of each entry of `mean_sld`.
    pub sld_standard_error: Vec<f64>,
    pub expected_sld: Vec<f64>,
    pub mean_tvd: f64,
    /// Unbiased sample standard deviation of the per-sample distances.
    pub tvd_std: f64,
    /// 16th and 84th percentiles of the per-sample distances.
    pub tvd_band: (f64, f64),
    pub tvds: Vec<f64>,
}

impl Serialize for EnsembleReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            n: usize,
            q: Float17,
            samples: usize,
            seed: u64,
            fixed_p: Option<Float17>,
            mean_sld: Vec<Float17>,
            sld_standard_error: Vec<Float17>,
            expected_sld: Vec<Float17>,
            mean_tvd: Float17,
            tvd_std: Float17,
            tvd_band: [Float17; 2],
        }
        Doc {
            n: self.n,
            q: Float17(self.q),
            samples: self.samples,
            seed: self.seed,
            fixed_p: self.fixed_p.map(Float17),
            mean_sld: floats(&self.mean_sld),
            sld_standard_error: floats(&self.sld_standard_error),
            expected_sld: floats(&self.expected_sld),
            mean_tvd: Float17(self.mean_tvd),
            tvd_std: Float17(self.tvd_std),
            tvd_band: [Float17(self.tvd_band.0), Float17(self.tvd_band.1)],
        }
        .serialize(serializer)
    }
}

/// Samples `samples` graphs (sample `i` draws from RNG stream `i` of
/// `seed`), enumerates each distribution, and compares it with a binomial of
/// matched mean (or of fixed `p`).
pub fn monte_carlo_sld(
    n: usize,
    q: f64,
    samples: usize,
    seed: u64,
    fixed_p: Option<f64>,
    limits: &Limits,
) -> Result<EnsembleReport> {
    check_probability(q)?;
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    if let Some(p) = fixed_p {
        check_probability(p)?;
    }
    if n > limits.max_qubits {
        return Err(Error::ResourceCap {
            what: "qubit enumeration",
            requested: format!("n = {n}"),
            limit: format!("n <= {}", limits.max_qubits),
        });
    }
    let fixed = fixed_p.map(|p| binomial_distribution_f64(n, p)).transpose()?;
    let per_sample: Vec<(Vec<f64>, f64)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let g = sample_erdos_renyi_stream(n, q, seed, i)?;
            let sld = brute_force_sld(&g, limits)?;
            let a = sld.normalized_f64();
            let mean: f64 = a.iter().enumerate().map(|(k, x)| k as f64 * x).sum();
            let b = match &fixed {
                Some(b) => b.clone(),
                None => binomial_distribution_f64(n, (mean / n as f64).clamp(0.0, 1.0))?,
            };
            Ok((sld.to_f64(), tvd(&a, &b)?))
        })
        .collect::<Result<_>>()?;

    let count = samples as f64;
    let mut mean_sld = vec![0.0; n + 1];
    for (a, _) in &per_sample {
        mean_sld.iter_mut().zip(a).for_each(|(m, x)| *m += x / count);
    }
    let sld_standard_error = (0..=n)
        .map(|k| {
            let var = sample_variance(per_sample.iter().map(|(a, _)| a[k]), mean_sld[k], samples);
            (var / count).sqrt()
        })
        .collect();
    let tvds: Vec<f64> = per_sample.iter().map(|(_, t)| *t).collect();
    let mean_tvd = tvds.iter().sum::<f64>() / count;
    let tvd_std = sample_variance(tvds.iter().copied(), mean_tvd, samples).sqrt();
    let mut sorted = tvds.clone();
    sorted.sort_by(f64::total_cmp);
    Ok(EnsembleReport {
        n,
        q,
        samples,
        seed,
        fixed_p,
        mean_sld,
        sld_standard_error,
        expected_sld: expected_sld_er(n, q)?,
        mean_tvd,
        tvd_std,
        tvd_band: (percentile(&sorted, 0.16), percentile(&sorted, 0.84)),
        tvds,
    })
}

fn sample_variance(values: impl Iterator<Item = f64>, mean: f64, count: usize) -> f64 {
    if count < 2 {
        return 0.0;
    }
    values.map(|x| (x - mean) * (x - mean)).sum::<f64>() / (count - 1) as f64
}

/// Linear interpolation between order statistics of a sorted sample.
fn percentile(sorted: &[f64], fraction: f64) -> f64 {
    let pos = fraction * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}
