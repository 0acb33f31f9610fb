//! White-noise channels acting on sector-length distributions, the
//! distribution-based entanglement criteria, and their noise thresholds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{self, BinomialTable};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::json::Float17;
use crate::sld::{Sld, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    /// `ρ -> (1-p) ρ + p 1/d^n`.
    Global,
    /// Single-site depolarizing channel of strength `p` on every site.
    Local,
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "global" => Ok(NoiseKind::Global),
            "local" => Ok(NoiseKind::Local),
            other => Err(Error::invalid(format!("unknown noise kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoiseSpec {
    kind: NoiseKind,
    p: BigRational,
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, p: BigRational) -> Result<Self> {
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::invalid(format!(
                "noise strength {} outside [0, 1]",
                arith::format_rational(&p)
            )));
        }
        Ok(NoiseSpec { kind, p })
    }

    pub fn from_f64(kind: NoiseKind, p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::invalid(format!("noise strength {p} is not finite")));
        }
        Self::new(kind, arith::from_f64(p))
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }
}

/// Local noise scales `A_k` by `(1-p)^{2k}`; global noise scales every
/// `A_k` with `k >= 1` by `(1-p)^2` and leaves `A_0 = 1`.
pub fn apply_noise(sld: &Sld, noise: &NoiseSpec) -> Result<Sld> {
    let keep = BigRational::one() - &noise.p;
    let keep2 = &keep * &keep;
    let mut factor = BigRational::one();
    let values = sld
        .values()
        .iter()
        .enumerate()
        .map(|(k, a)| match noise.kind {
            NoiseKind::Local => {
                let v = a * &factor;
                factor *= &keep2;
                v
            }
            NoiseKind::Global if k == 0 => a.clone(),
            NoiseKind::Global => a * &keep2,
        })
        .collect();
    Sld::new(sld.n(), sld.d(), values, Source::Noisy)
}

/// Probability that the channel applies one particular Pauli of the given
/// weight: global `1 - p + p/d^{2n}` (identity) or `p/d^{2n}`; local
/// `(p/d²)^w (1 - p + p/d²)^{n-w}`.
pub fn pauli_error_probability(noise: &NoiseSpec, d: u32, n: usize, weight: usize) -> Result<BigRational> {
    if weight > n {
        return Err(Error::invalid(format!("weight {weight} exceeds n = {n}")));
    }
    let p = &noise.p;
    let d2 = arith::int(u64::from(d) * u64::from(d));
    Ok(match noise.kind {
        NoiseKind::Global => {
            let uniform = p / num_traits::pow(d2, n);
            if weight == 0 {
                BigRational::one() - p + uniform
            } else {
                uniform
            }
        }
        NoiseKind::Local => {
            let hit = p / &d2;
            let miss = BigRational::one() - p + &hit;
            num_traits::pow(hit, weight) * num_traits::pow(miss, n - weight)
        }
    })
}

/// Outcome of a criterion: `value` is the quantity whose sign decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub entangled: bool,
    pub value: BigRational,
}

/// Entangled iff `A_k > C(n, k) (d-1)^k`; `value` is `A_k` minus that bound.
pub fn ksl_criterion(sld: &Sld, k: usize) -> Result<Verdict> {
    let n = sld.n();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("k = {k} outside 1..={n}")));
    }
    let bound = arith::binom(n as i64, k as i64) * arith::pow(u64::from(sld.d()) - 1, k as u32);
    let value = sld.get(k) - arith::int(bound);
    Ok(Verdict {
        entangled: value.is_positive(),
        value,
    })
}

fn purity_coefficients(n: usize, d: u32) -> Vec<BigInt> {
    let (n, d) = (n as i64, i64::from(d));
    (0..=n).map(|k| BigInt::from((d - 1) * n - d * k)).collect()
}

/// `m`-marginal coefficients `d^m C(n-k, m) - C(n, m)`, sign-aligned with
/// [`purity_coefficients`] so that a negative sum signals entanglement.
fn marginal_coefficients(n: usize, d: u32, m: usize) -> Vec<BigInt> {
    let table = BinomialTable::new(n);
    let dm = arith::pow(u64::from(d), m as u32);
    let cnm = table.get(n as i64, m as i64);
    (0..=n)
        .map(|k| &dm * table.get((n - k) as i64, m as i64) - &cnm)
        .collect()
}

fn weighted_sum(coefficients: &[BigInt], sld: &Sld) -> BigRational {
    coefficients
        .iter()
        .zip(sld.values())
        .map(|(c, a)| arith::int(c.clone()) * a)
        .sum()
}

/// `lhs = Σ_k ((d-1)n - dk) A_k`; entangled iff `lhs < 0`.
pub fn purity_criterion(sld: &Sld) -> Verdict {
    let value = weighted_sum(&purity_coefficients(sld.n(), sld.d()), sld);
    Verdict {
        entangled: value.is_negative(),
        value,
    }
}

/// `value = Σ_k (C(n, m) - d^m C(n-k, m)) A_k`; entangled iff `value > 0`.
/// At `m = 1` the value is exactly minus the [`purity_criterion`] lhs.
pub fn purity_criterion_general(sld: &Sld, m: usize) -> Result<Verdict> {
    let n = sld.n();
    if m == 0 || m >= n {
        return Err(Error::invalid(format!("marginal size m = {m} outside 1..{n}")));
    }
    let value = -weighted_sum(&marginal_coefficients(n, sld.d(), m), sld);
    Ok(Verdict {
        entangled: value.is_positive(),
        value,
    })
}

/// Result of a threshold computation. `p_lower_bound` is `None` when the
/// criterion does not detect the noiseless state at all.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub criterion: String,
    pub p_lower_bound: Option<f64>,
    pub bracket: Option<(f64, f64)>,
    pub evaluations: usize,
    /// Exact sign check of the final bracket, when one was performed.
    pub verified: Option<bool>,
}

impl ThresholdReport {
    /// Report for a closed-form threshold (no root search).
    pub fn value(criterion: &str, p: Option<f64>) -> Self {
        ThresholdReport {
            criterion: criterion.into(),
            p_lower_bound: p,
            bracket: None,
            evaluations: 0,
            verified: None,
        }
    }
}

impl Serialize for ThresholdReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            criterion: &'a str,
            p_lower_bound: Option<Float17>,
            bracket: Option<[Float17; 2]>,
            evaluations: usize,
            verified: Option<bool>,
        }
        Doc {
            criterion: &self.criterion,
            p_lower_bound: self.p_lower_bound.map(Float17),
            bracket: self.bracket.map(|(a, b)| [Float17(a), Float17(b)]),
            evaluations: self.evaluations,
            verified: self.verified,
        }
        .serialize(serializer)
    }
}

/// Grid and tolerance for the root search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub grid: usize,
    pub tolerance: f64,
    /// Largest `n` for which the final bracket is re-checked exactly.
    pub exact_check_max_n: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            grid: 2048,
            tolerance: 1e-12,
            exact_check_max_n: 64,
        }
    }
}

/// Largest root of `f(p) = Σ_k ((d-1)n - dk) (1-p)^{2k} a_k` where `f`
/// turns from negative to non-negative: below it the locally depolarized
/// state is certified entangled by the purity criterion.
pub fn threshold_purity(sld: &Sld, options: &SolverOptions) -> Result<ThresholdReport> {
    let coefficients = purity_coefficients(sld.n(), sld.d());
    solve("purity", &coefficients, sld, options)
}

/// As [`threshold_purity`] for the `m`-marginal criterion; `m = 1`
/// reproduces it exactly.
pub fn threshold_purity_general(sld: &Sld, m: usize, options: &SolverOptions) -> Result<ThresholdReport> {
    let n = sld.n();
    if m == 0 || m >= n {
        return Err(Error::invalid(format!("marginal size m = {m} outside 1..{n}")));
    }
    let coefficients = marginal_coefficients(n, sld.d(), m);
    solve(&format!("purity_m{m}"), &coefficients, sld, options)
}

fn solve(name: &str, coefficients: &[BigInt], sld: &Sld, options: &SolverOptions) -> Result<ThresholdReport> {
    if options.grid == 0 || !(options.tolerance > 0.0) {
        return Err(Error::invalid("grid must be positive and tolerance > 0"));
    }
    let total = arith::int(sld.pure_total());
    let weights: Vec<f64> = coefficients
        .iter()
        .zip(sld.values())
        .map(|(c, a)| arith::to_f64(&(arith::int(c.clone()) * a / &total)))
        .collect();
    let mut evaluations = 0;
    let mut f = |p: f64| {
        evaluations += 1;
        let x = (1.0 - p) * (1.0 - p);
        weights.iter().rev().fold(0.0, |acc, &w| acc * x + w)
    };
    if f(0.0) >= 0.0 {
        return Ok(ThresholdReport {
            evaluations,
            ..ThresholdReport::value(name, None)
        });
    }
    let grid = options.grid;
    let values: Vec<f64> = (0..=grid).map(|i| f(i as f64 / grid as f64)).collect();
    let Some(cell) = (0..grid).rev().find(|&i| values[i] < 0.0 && values[i + 1] >= 0.0) else {
        return Ok(ThresholdReport {
            evaluations,
            ..ThresholdReport::value(name, None)
        });
    };
    let mut lo = cell as f64 / grid as f64;
    let mut hi = (cell + 1) as f64 / grid as f64;
    while hi - lo > options.tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let verified = (sld.n() <= options.exact_check_max_n).then(|| {
        let exact = |p: f64| {
            let keep = BigRational::one() - arith::from_f64(p);
            let x = &keep * &keep;
            coefficients
                .iter()
                .zip(sld.values())
                .rev()
                .fold(BigRational::zero(), |acc, (c, a)| acc * &x + arith::int(c.clone()) * a)
        };
        exact(lo).is_negative() && !exact(hi).is_negative()
    });
    Ok(ThresholdReport {
        criterion: name.into(),
        p_lower_bound: Some(0.5 * (lo + hi)),
        bracket: Some((lo, hi)),
        evaluations,
        verified,
    })
}

/// `1 - ((d-1)^n / A_n)^{1/(2n)}` when `A_n > (d-1)^n`.
pub fn threshold_nsl(sld: &Sld) -> ThresholdReport {
    let n = sld.n();
    let floor = arith::int(arith::pow(u64::from(sld.d()) - 1, n as u32));
    let an = sld.get(n);
    if *an <= floor {
        return ThresholdReport::value("nsl", None);
    }
    let log_ratio = arith::ln_positive(&floor) - arith::ln_positive(an);
    let p = -(log_ratio / (2.0 * n as f64)).exp_m1();
    ThresholdReport::value("nsl", Some(p))
}

/// `1 - 1/(d^{n-1} + 1)` for any stabilizer state under global noise.
pub fn threshold_ppt_global_stabilizer(n: usize, d: u32) -> Result<f64> {
    if n < 2 || d < 2 {
        return Err(Error::invalid("needs n >= 2 and d >= 2"));
    }
    let exact = BigRational::one()
        - BigRational::new(BigInt::one(), arith::pow(u64::from(d), n as u32 - 1) + 1);
    Ok(arith::to_f64(&exact))
}

/// Local-noise PPT threshold of the GHZ state for even `n`; qubits use
/// `1 - 1/√(2^{2-2/n} + 1)`, other `d` use
/// `2d / (2^{2/n} + 2^{1/n} √(4 + (2d)^{1/n}) + 2d)`.
pub fn threshold_ppt_ghz_local(n: usize, d: u32) -> Result<f64> {
    if d < 2 || n < 2 {
        return Err(Error::invalid("needs n >= 2 and d >= 2"));
    }
    if n % 2 == 1 {
        return Err(Error::unsupported(format!(
            "GHZ local PPT threshold has no closed form for odd n = {n}"
        )));
    }
    Ok(if d == 2 {
        ppt_ghz_qubit(n)
    } else {
        ppt_ghz_qudit(n, d)
    })
}

pub fn ppt_ghz_qubit(n: usize) -> f64 {
    1.0 - 1.0 / (2f64.powf(2.0 - 2.0 / n as f64) + 1.0).sqrt()
}

pub fn ppt_ghz_qudit(n: usize, d: u32) -> f64 {
    let inv = 1.0 / n as f64;
    let two_d = 2.0 * d as f64;
    two_d / (4f64.powf(inv) + 2f64.powf(inv) * (4.0 + two_d.powf(inv)).sqrt() + two_d)
}

/// `1 - 2^{-2/(2 + max_{ij ∈ E} deg(i) + deg(j))}` for qubit graph states.
pub fn threshold_distillation(g: &Graph) -> Result<f64> {
    if g.d() != 2 {
        return Err(Error::unsupported("distillation bound is stated for qubits"));
    }
    let Some(max_sum) = g.properties().max_adjacent_degree_sum else {
        return Err(Error::invalid("distillation bound needs at least one edge"));
    };
    Ok(1.0 - 2f64.powf(-2.0 / (2.0 + max_sum as f64)))
}
